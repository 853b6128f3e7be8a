#pragma once

// Average-linkage (UPGMA) hierarchical clustering over a symmetric distance
// matrix, with exact rational arithmetic throughout and deterministic
// tie-breaking: among equally close pairs the one whose clusters carry the
// lexicographically least labels merges first. Node heights are half the
// merge distance, so leaf-to-root path lengths read as distances.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "infodist/errors.hpp"
#include "infodist/ncd.hpp"

namespace infodist {

struct ClusterNode {
    std::string label;        // nonempty for leaves only
    int left = -1;            // child node indices, -1 for leaves
    int right = -1;
    Rational height{0};       // merge distance / 2; leaves sit at 0
    std::string least_label;  // least leaf label underneath, tie-break key
};

struct Dendrogram {
    std::vector<ClusterNode> nodes;  // leaves first, then merges; root last
    std::size_t root = 0;

    std::vector<std::string> leaf_labels(std::size_t at) const {
        std::vector<std::string> out;
        collect(at, out);
        std::sort(out.begin(), out.end());
        return out;
    }

    // Newick with six-decimal branch lengths; children ordered by least
    // leaf label; root carries no length.
    std::string newick() const {
        std::ostringstream out;
        write(out, root, std::nullopt);
        out << ';';
        return out.str();
    }

    // The classic dendrogram cut: repeatedly split the highest surviving
    // subtree until k parts remain. Returns each part's sorted leaf labels,
    // parts ordered by their least label.
    std::vector<std::vector<std::string>> cut(std::size_t k) const {
        std::size_t leaves = 0;
        for (const auto& nd : nodes)
            if (nd.left < 0) ++leaves;
        if (k == 0 || k > leaves)
            throw std::invalid_argument("cut: k out of range");
        std::vector<std::size_t> roots = {root};
        while (roots.size() < k) {
            std::size_t pick = roots.size();
            for (std::size_t r = 0; r < roots.size(); ++r) {
                const auto& nd = nodes[roots[r]];
                if (nd.left < 0) continue;  // leaves cannot split
                if (pick == roots.size() ||
                    nd.height > nodes[roots[pick]].height ||
                    (nd.height == nodes[roots[pick]].height &&
                     nd.least_label < nodes[roots[pick]].least_label))
                    pick = r;
            }
            const auto& chosen = nodes[roots[pick]];
            std::size_t a = std::size_t(chosen.left);
            std::size_t b = std::size_t(chosen.right);
            roots.erase(roots.begin() + std::ptrdiff_t(pick));
            roots.push_back(a);
            roots.push_back(b);
        }
        std::vector<std::vector<std::string>> parts;
        for (std::size_t r : roots) parts.push_back(leaf_labels(r));
        std::sort(parts.begin(), parts.end(),
                  [](const auto& x, const auto& y) { return x[0] < y[0]; });
        return parts;
    }

private:
    void collect(std::size_t at, std::vector<std::string>& out) const {
        const auto& nd = nodes[at];
        if (nd.left < 0) {
            out.push_back(nd.label);
            return;
        }
        collect(std::size_t(nd.left), out);
        collect(std::size_t(nd.right), out);
    }

    void write(std::ostringstream& out, std::size_t at,
               std::optional<Rational> parent_height) const {
        const auto& nd = nodes[at];
        if (nd.left < 0) {
            out << nd.label;
        } else {
            std::size_t a = std::size_t(nd.left);
            std::size_t b = std::size_t(nd.right);
            if (nodes[b].least_label < nodes[a].least_label) std::swap(a, b);
            out << '(';
            write(out, a, nd.height);
            out << ',';
            write(out, b, nd.height);
            out << ')';
        }
        if (parent_height)
            out << ':' << format_decimal(*parent_height - nd.height);
    }
};

inline Dendrogram upgma(const DistanceMatrix& matrix) {
    const std::size_t n = matrix.size();
    if (n < 2) throw std::invalid_argument("upgma: need at least two items");
    if (matrix.values.size() != n)
        throw std::invalid_argument("upgma: matrix is not square");
    for (std::size_t i = 0; i < n; ++i) {
        if (matrix.values[i].size() != n)
            throw std::invalid_argument("upgma: matrix is not square");
        for (std::size_t j = 0; j < n; ++j) {
            if (matrix.values[i][j] < 0)
                throw std::invalid_argument("upgma: negative distance");
            if (matrix.values[i][j] != matrix.values[j][i])
                throw std::invalid_argument("upgma: matrix is not symmetric");
        }
    }
    {
        std::map<std::string, int> seen;
        for (const auto& l : matrix.labels) {
            if (!valid_label(l))
                throw std::invalid_argument("upgma: label unusable: '" + l +
                                            "'");
            if (++seen[l] > 1)
                throw DuplicateLabelError("upgma: label repeated: " + l);
        }
    }

    Dendrogram tree;
    struct Active {
        std::size_t node;
        std::size_t count;  // leaves underneath
    };
    std::vector<Active> active;
    std::vector<std::vector<Rational>> dist = matrix.values;

    for (std::size_t i = 0; i < n; ++i) {
        ClusterNode leaf;
        leaf.label = matrix.labels[i];
        leaf.least_label = matrix.labels[i];
        tree.nodes.push_back(leaf);
        active.push_back({i, 1});
    }

    while (active.size() > 1) {
        // Closest active pair; ties resolved by the sorted label pair.
        std::size_t bi = 0, bj = 1;
        for (std::size_t i = 0; i < active.size(); ++i)
            for (std::size_t j = i + 1; j < active.size(); ++j) {
                const Rational& d = dist[i][j];
                const Rational& best = dist[bi][bj];
                if (d > best) continue;
                if (d < best) {
                    bi = i;
                    bj = j;
                    continue;
                }
                auto key = [&](std::size_t a, std::size_t b) {
                    const auto& la = tree.nodes[active[a].node].least_label;
                    const auto& lb = tree.nodes[active[b].node].least_label;
                    return std::minmax(la, lb);
                };
                if (key(i, j) < key(bi, bj)) {
                    bi = i;
                    bj = j;
                }
            }

        ClusterNode merged;
        merged.left = int(active[bi].node);
        merged.right = int(active[bj].node);
        merged.height = dist[bi][bj] / 2;
        merged.least_label =
            std::min(tree.nodes[active[bi].node].least_label,
                     tree.nodes[active[bj].node].least_label);
        tree.nodes.push_back(merged);

        const std::size_t ca = active[bi].count;
        const std::size_t cb = active[bj].count;

        // Average linkage: distances to the merged cluster are the
        // leaf-count-weighted means, computed exactly.
        std::vector<Rational> fresh;
        for (std::size_t k = 0; k < active.size(); ++k) {
            if (k == bi || k == bj) continue;
            fresh.push_back((dist[bi][k] * ca + dist[bj][k] * cb) / (ca + cb));
        }

        // Rebuild the active set with the merged cluster appended.
        std::vector<Active> next_active;
        std::vector<std::vector<Rational>> next_dist;
        std::vector<std::size_t> keep;
        for (std::size_t k = 0; k < active.size(); ++k)
            if (k != bi && k != bj) keep.push_back(k);
        for (std::size_t a = 0; a < keep.size(); ++a) {
            next_active.push_back(active[keep[a]]);
            std::vector<Rational> row;
            for (std::size_t b = 0; b < keep.size(); ++b)
                row.push_back(dist[keep[a]][keep[b]]);
            row.push_back(fresh[a]);
            next_dist.push_back(std::move(row));
        }
        next_active.push_back({tree.nodes.size() - 1, ca + cb});
        std::vector<Rational> last = fresh;
        last.push_back(Rational(0));
        next_dist.push_back(std::move(last));

        active = std::move(next_active);
        dist = std::move(next_dist);
    }

    tree.root = active.front().node;
    return tree;
}

}  // namespace infodist
