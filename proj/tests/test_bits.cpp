#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <vector>

#include "infodist/bits.hpp"

using infodist::BitString;
using infodist::Nat;

TEST_CASE("index_of counts the first seven strings", "[bits]") {
    CHECK(infodist::index_of(BitString::parse("")) == 0);
    CHECK(infodist::index_of(BitString::parse("0")) == 1);
    CHECK(infodist::index_of(BitString::parse("1")) == 2);
    CHECK(infodist::index_of(BitString::parse("00")) == 3);
    CHECK(infodist::index_of(BitString::parse("01")) == 4);
    CHECK(infodist::index_of(BitString::parse("10")) == 5);
    CHECK(infodist::index_of(BitString::parse("11")) == 6);
}

TEST_CASE("string_of inverts index_of on small values", "[bits]") {
    CHECK(infodist::string_of(0) == BitString::parse(""));
    CHECK(infodist::string_of(3) == BitString::parse("00"));
    CHECK(infodist::string_of(4) == BitString::parse("01"));
    CHECK(infodist::string_of(6) == BitString::parse("11"));
    CHECK(infodist::string_of(7) == BitString::parse("000"));
}

TEST_CASE("bijection round trips, both directions", "[bits]") {
    for (std::uint64_t i = 0; i < 2000; ++i)
        CHECK(infodist::index_of(infodist::string_of(i)) == Nat(i));

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Nat i = 0;
        for (int limb = 0; limb < 3; ++limb) i = (i << 64) | rng();
        CHECK(infodist::index_of(infodist::string_of(i)) == i);
    }
}

TEST_CASE("comparison agrees with index order", "[bits]") {
    std::vector<BitString> all;
    for (std::uint64_t i = 0; i < 127; ++i) all.push_back(infodist::string_of(i));
    for (std::size_t a = 0; a < all.size(); ++a)
        for (std::size_t b = 0; b < all.size(); ++b)
            CHECK((all[a] < all[b]) == (a < b));
    CHECK(std::is_sorted(all.begin(), all.end()));
}

TEST_CASE("pairing matches hand-computed values", "[bits]") {
    CHECK(infodist::pair_nat(0, 0) == 0);
    CHECK(infodist::pair_nat(1, 0) == 1);
    CHECK(infodist::pair_nat(0, 1) == 2);
    CHECK(infodist::pair_nat(2, 0) == 3);
    CHECK(infodist::pair_nat(1, 1) == 4);
    CHECK(infodist::pair_nat(0, 2) == 5);
    CHECK(infodist::pair_nat(1, 2) == 8);
}

TEST_CASE("unpair inverts pair", "[bits]") {
    for (std::uint64_t x = 0; x < 40; ++x)
        for (std::uint64_t y = 0; y < 40; ++y) {
            auto [px, py] = infodist::unpair_nat(infodist::pair_nat(x, y));
            CHECK(px == Nat(x));
            CHECK(py == Nat(y));
        }
    // pair is a bijection: unpair then pair is the identity on 0..N.
    for (std::uint64_t z = 0; z < 500; ++z) {
        auto [x, y] = infodist::unpair_nat(Nat(z));
        CHECK(infodist::pair_nat(x, y) == Nat(z));
    }
}

TEST_CASE("xor works bitwise on equal lengths only", "[bits]") {
    CHECK((BitString::parse("1010") ^ BitString::parse("0110")) ==
          BitString::parse("1100"));
    CHECK((BitString::parse("") ^ BitString::parse("")) == BitString::parse(""));
    auto v = BitString::parse("10110");
    CHECK((v ^ v) == BitString::parse("00000"));
    CHECK_THROWS_AS(BitString::parse("10") ^ BitString::parse("100"),
                    infodist::LengthMismatchError);
    // involution: (a ^ b) ^ b == a
    auto a = BitString::parse("110010111");
    auto b = BitString::parse("101101100");
    CHECK(((a ^ b) ^ b) == a);
}

TEST_CASE("of_value and parse agree", "[bits]") {
    CHECK(BitString::of_value(5, 3) == BitString::parse("101"));
    CHECK(BitString::of_value(0, 4) == BitString::parse("0000"));
    CHECK(BitString::of_value(0, 0) == BitString::parse(""));
    CHECK_THROWS_AS(BitString::of_value(8, 3), std::invalid_argument);
    CHECK_THROWS_AS(BitString::parse("10x"), std::invalid_argument);
}

TEST_CASE("append and append_zeros preserve contents", "[bits]") {
    auto s = BitString::parse("101");
    s.append(BitString::parse("01"));
    CHECK(s == BitString::parse("10101"));
    s.append_zeros(3);
    CHECK(s == BitString::parse("10101000"));
    CHECK(s.text() == "10101000");
}
