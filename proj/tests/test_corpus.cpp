#include <catch2/catch_amalgamated.hpp>

#include "infodist/corpus.hpp"

using infodist::CorpusSpec;

TEST_CASE("default corpus shape and labels", "[corpus]") {
    auto corpus = infodist::synthetic_corpus({});
    REQUIRE(corpus.items.size() == 12);
    CHECK(corpus.items.front().label == "A0");
    CHECK(corpus.items[4].label == "B0");
    CHECK(corpus.items.back().label == "C3");
    for (const auto& item : corpus.items)
        CHECK(item.data.size() == 4096);
    CHECK_NOTHROW(corpus.validate());
}

TEST_CASE("streams are deterministic for a seed", "[corpus]") {
    auto one = infodist::synthetic_corpus({});
    auto two = infodist::synthetic_corpus({});
    REQUIRE(one.items.size() == two.items.size());
    for (std::size_t i = 0; i < one.items.size(); ++i)
        CHECK(one.items[i].data == two.items[i].data);

    CorpusSpec other;
    other.seed = 99;
    auto three = infodist::synthetic_corpus(other);
    CHECK(three.items[0].data != one.items[0].data);
}

TEST_CASE("frozen fingerprint of the default corpus", "[corpus]") {
    auto corpus = infodist::synthetic_corpus({});
    const auto& a0 = corpus.items[0].data;
    CHECK(std::string(a0.begin(), a0.begin() + 24) ==
          "bOcdVcCFRCRIYcGJPZPbMIMP");
    std::uint64_t h = 1469598103934665603ull;
    for (auto b : a0) {
        h ^= b;
        h *= 1099511628211ull;
    }
    CHECK(h == 11682312198859761454ull);
}

TEST_CASE("streams stay inside the declared alphabet", "[corpus]") {
    auto corpus = infodist::synthetic_corpus({3, 1, 2000});
    const std::string alphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdef";
    for (const auto& item : corpus.items)
        for (auto b : item.data)
            CHECK(alphabet.find(char(b)) != std::string::npos);
}

TEST_CASE("items differ inside a family but share its texture", "[corpus]") {
    auto corpus = infodist::synthetic_corpus({1, 3, 1024});
    CHECK(corpus.items[0].data != corpus.items[1].data);
    CHECK(corpus.items[1].data != corpus.items[2].data);
}

TEST_CASE("corpus spec validation", "[corpus]") {
    CHECK_THROWS_AS(infodist::synthetic_corpus({0, 4, 64}),
                    std::invalid_argument);
    CHECK_THROWS_AS(infodist::synthetic_corpus({27, 1, 64}),
                    std::invalid_argument);
    CHECK_THROWS_AS(infodist::synthetic_corpus({2, 0, 64}),
                    std::invalid_argument);
    auto tiny = infodist::synthetic_corpus({26, 1, 8});
    CHECK(tiny.items.size() == 26);
    CHECK(tiny.items.back().label == "Z0");
}
