#pragma once

// Deterministic synthetic corpus: a few families of order-2 Markov streams
// over a 32-symbol alphabet. Each family draws its own sparse transition
// table (three candidate successors per symbol pair) from the seed, and the
// items of a family are independent walks on that shared table. Streams
// from one family therefore share heavy n-gram structure, while streams
// from different families overlap only by accident; compressors separate
// them cleanly. std::mt19937_64 keeps byte output identical everywhere,
// since the standard pins down its sequence.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "infodist/ncd.hpp"

namespace infodist {

inline constexpr std::uint64_t kDefaultCorpusSeed = 2718281828ull;

struct CorpusSpec {
    std::size_t families = 3;
    std::size_t items_per_family = 4;
    std::size_t item_bytes = 4096;
    std::uint64_t seed = kDefaultCorpusSeed;
};

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a,
                              std::uint64_t b) {
    std::uint64_t z = seed ^ (0x9E3779B97F4A7C15ull * (a + 1)) ^
                      (0xBF58476D1CE4E5B9ull * (b + 1));
    z ^= z >> 30;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

}  // namespace detail

inline LabeledCorpus synthetic_corpus(const CorpusSpec& spec = {}) {
    if (spec.families == 0 || spec.families > 26)
        throw std::invalid_argument("synthetic_corpus: 1..26 families");
    if (spec.items_per_family == 0)
        throw std::invalid_argument("synthetic_corpus: need items");

    static constexpr char kAlphabet[] =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdef";
    constexpr std::size_t kSymbols = 32;
    constexpr std::size_t kChoices = 3;

    LabeledCorpus corpus;
    for (std::size_t fam = 0; fam < spec.families; ++fam) {
        // The family's transition table: for every ordered symbol pair,
        // three candidate successors.
        std::mt19937_64 table_rng(detail::mix_seed(spec.seed, fam, 0));
        std::vector<std::uint8_t> table(kSymbols * kSymbols * kChoices);
        for (auto& cell : table)
            cell = std::uint8_t(table_rng() % kSymbols);

        for (std::size_t item = 0; item < spec.items_per_family; ++item) {
            std::mt19937_64 walk_rng(
                detail::mix_seed(spec.seed, fam, item + 1));
            Bytes stream;
            stream.reserve(spec.item_bytes);
            std::size_t p2 = 0, p1 = 0;
            for (std::size_t i = 0; i < spec.item_bytes; ++i) {
                std::size_t pick = std::size_t(walk_rng() % kChoices);
                std::size_t next =
                    table[(p2 * kSymbols + p1) * kChoices + pick];
                stream.push_back(std::uint8_t(kAlphabet[next]));
                p2 = p1;
                p1 = next;
            }
            corpus.items.push_back(
                {std::string(1, char('A' + fam)) + std::to_string(item),
                 std::move(stream)});
        }
    }
    corpus.validate();
    return corpus;
}

}  // namespace infodist
