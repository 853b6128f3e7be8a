#pragma once

// Normalized compression distance over a byte compressor:
//
//   ncd(x, y) = (C12 - min(Cx, Cy)) / max(Cx, Cy)
//   C12 = min(C(x || y), C(y || x))
//
// with sizes in bytes. Values are exact rationals built from the measured
// sizes. A slightly negative numerator (a quirk of real compressors) is
// clamped to zero and flagged; anything past 1.2 means the compressor is
// not behaving like one and is reported as an error rather than a distance.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "infodist/complexity.hpp"
#include "infodist/compressor.hpp"
#include "infodist/errors.hpp"

namespace infodist {

struct LabeledItem {
    std::string label;
    Bytes data;
};

inline bool valid_label(const std::string& label) {
    if (label.empty()) return false;
    for (char ch : label)
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' ||
              ch == '-' || ch == '.'))
            return false;
    return true;
}

struct LabeledCorpus {
    std::vector<LabeledItem> items;

    void validate() const {
        std::map<std::string, int> seen;
        for (const auto& item : items) {
            if (!valid_label(item.label))
                throw std::invalid_argument("corpus label unusable: '" +
                                            item.label + "'");
            if (++seen[item.label] > 1)
                throw DuplicateLabelError("corpus label repeated: " +
                                          item.label);
        }
    }
};

struct NcdValue {
    Rational value{0};
    bool clamped_low = false;  // numerator was negative and pulled up to 0
};

inline NcdValue ncd_from_sizes(std::size_t cx, std::size_t cy, std::size_t cxy,
                               std::size_t cyx) {
    std::size_t c12 = std::min(cxy, cyx);
    std::size_t den = std::max(cx, cy);
    if (den == 0)
        throw CompressorInsaneError("compressor reported size 0 for an input");
    NcdValue out;
    if (c12 < std::min(cx, cy)) {
        out.value = 0;
        out.clamped_low = true;
    } else {
        out.value = Rational(c12 - std::min(cx, cy)) / Rational(den);
    }
    if (out.value > Rational(6, 5)) {
        std::ostringstream msg;
        msg << "ncd of " << out.value.convert_to<double>()
            << " is past 1.2; the compressor is not usable";
        throw CompressorInsaneError(msg.str());
    }
    return out;
}

inline NcdValue ncd_pair(Compressor& comp, const Bytes& x, const Bytes& y) {
    return ncd_from_sizes(comp.compressed_size(x), comp.compressed_size(y),
                          comp.compressed_size(concat(x, y)),
                          comp.compressed_size(concat(y, x)));
}

struct DistanceMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<Rational>> values;  // symmetric, [i][j]
    std::size_t clamped_cells = 0;              // cells clamped up to zero

    std::size_t size() const { return labels.size(); }
};

// Fills the full symmetric matrix, measuring each unordered pair once.
// With jobs > 1 the pair computations run on a thread pool; the compressor
// must tolerate concurrent calls (both shipped compressors do).
inline DistanceMatrix ncd_matrix(Compressor& comp, const LabeledCorpus& corpus,
                                 unsigned jobs = 1) {
    corpus.validate();
    const std::size_t n = corpus.items.size();
    DistanceMatrix m;
    m.labels.reserve(n);
    for (const auto& item : corpus.items) m.labels.push_back(item.label);
    m.values.assign(n, std::vector<Rational>(n, Rational(0)));

    std::vector<std::size_t> singles(n);
    for (std::size_t i = 0; i < n; ++i)
        singles[i] = comp.compressed_size(corpus.items[i].data);

    struct Task {
        std::size_t i, j;
    };
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) tasks.push_back({i, j});

    std::vector<NcdValue> results(tasks.size());
    auto work = [&](std::size_t from, std::size_t to) {
        for (std::size_t t = from; t < to; ++t) {
            auto [i, j] = tasks[t];
            const Bytes& x = corpus.items[i].data;
            const Bytes& y = corpus.items[j].data;
            results[t] = ncd_from_sizes(singles[i], singles[j],
                                        comp.compressed_size(concat(x, y)),
                                        comp.compressed_size(concat(y, x)));
        }
    };
    if (jobs <= 1) {
        work(0, tasks.size());
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (tasks.size() + jobs - 1) / jobs;
        for (unsigned w = 0; w < jobs; ++w) {
            std::size_t from = chunk * w;
            std::size_t to = std::min(tasks.size(), from + chunk);
            if (from >= to) break;
            pool.emplace_back(work, from, to);
        }
        for (auto& th : pool) th.join();
    }

    for (std::size_t t = 0; t < tasks.size(); ++t) {
        auto [i, j] = tasks[t];
        m.values[i][j] = results[t].value;
        m.values[j][i] = results[t].value;
        if (results[t].clamped_low) ++m.clamped_cells;
    }
    return m;
}

// ---- serialization ----------------------------------------------------

// Nonnegative rational as a fixed-point decimal, round half up.
inline std::string format_decimal(const Rational& value, unsigned digits = 6) {
    Nat num = boost::multiprecision::numerator(value);
    Nat den = boost::multiprecision::denominator(value);
    if (num < 0) throw std::invalid_argument("format_decimal: negative value");
    Nat scale = 1;
    for (unsigned i = 0; i < digits; ++i) scale *= 10;
    Nat scaled = num * scale;
    Nat q = scaled / den;
    Nat r = scaled % den;
    if (r * 2 >= den) ++q;
    Nat whole = q / scale;
    Nat frac = q % scale;
    std::ostringstream out;
    out << whole;
    if (digits > 0) {
        std::string f = frac.str();
        out << '.' << std::string(digits - f.size(), '0') << f;
    }
    return out.str();
}

// Parses "12", "0.25", ".5" exactly.
inline Rational parse_decimal(const std::string& text) {
    auto dot = text.find('.');
    std::string whole = dot == std::string::npos ? text : text.substr(0, dot);
    std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
    if (whole.empty() && frac.empty())
        throw std::invalid_argument("parse_decimal: empty");
    for (const auto& part : {whole, frac})
        for (char ch : part)
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                throw std::invalid_argument("parse_decimal: bad character in '" +
                                            text + "'");
    Nat num = whole.empty() ? Nat(0) : Nat(whole);
    Nat den = 1;
    for (char ch : frac) {
        num = num * 10 + (ch - '0');
        den *= 10;
    }
    return Rational(num) / Rational(den);
}

// Tab-separated matrix with six-decimal entries; the top-left corner cell
// is the literal word "label".
inline std::string render_tsv(const DistanceMatrix& m) {
    std::ostringstream out;
    out << "label";
    for (const auto& l : m.labels) out << '\t' << l;
    out << '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
        out << m.labels[i];
        for (std::size_t j = 0; j < m.size(); ++j)
            out << '\t' << format_decimal(m.values[i][j]);
        out << '\n';
    }
    return out.str();
}

// Exact rationals, one unordered pair per line: labelA labelB num/den.
inline std::string render_rational_report(const DistanceMatrix& m) {
    std::ostringstream out;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i; j < m.size(); ++j) {
            const auto& v = m.values[i][j];
            out << m.labels[i] << '\t' << m.labels[j] << '\t'
                << boost::multiprecision::numerator(v) << '/'
                << boost::multiprecision::denominator(v) << '\n';
        }
    return out.str();
}

inline DistanceMatrix parse_tsv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    DistanceMatrix m;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream cells(line);
        std::string cell;
        std::vector<std::string> row;
        while (std::getline(cells, cell, '\t')) row.push_back(cell);
        if (header) {
            if (row.empty() || row[0] != "label")
                throw std::invalid_argument(
                    "matrix tsv: header must start with 'label'");
            m.labels.assign(row.begin() + 1, row.end());
            header = false;
            continue;
        }
        if (row.size() != m.labels.size() + 1)
            throw std::invalid_argument("matrix tsv: ragged row");
        std::vector<Rational> values;
        for (std::size_t j = 1; j < row.size(); ++j)
            values.push_back(parse_decimal(row[j]));
        m.values.push_back(std::move(values));
    }
    if (header) throw std::invalid_argument("matrix tsv: missing header");
    if (m.values.size() != m.labels.size())
        throw std::invalid_argument("matrix tsv: row count mismatch");
    std::map<std::string, int> seen;
    for (const auto& l : m.labels)
        if (++seen[l] > 1)
            throw DuplicateLabelError("matrix tsv: label repeated: " + l);
    return m;
}

// ---- sanity helpers ---------------------------------------------------

inline bool matrix_in_range(const DistanceMatrix& m, const Rational& low,
                            const Rational& high) {
    for (const auto& row : m.values)
        for (const auto& v : row)
            if (v < low || v > high) return false;
    return true;
}

// Worst triangle violation: max over triples of d(i,k) - d(i,j) - d(j,k).
inline Rational max_triangle_excess(const DistanceMatrix& m) {
    Rational worst(0);
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                Rational excess =
                    m.values[i][k] - m.values[i][j] - m.values[j][k];
                if (excess > worst) worst = excess;
            }
    return worst;
}

}  // namespace infodist
