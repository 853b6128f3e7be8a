#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>

#include "infodist/compressor.hpp"

using infodist::Bytes;
using infodist::BuiltinCompressor;

namespace {
Bytes random_bytes(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Bytes out(n);
    for (auto& b : out) b = std::uint8_t(rng());
    return out;
}
}  // namespace

TEST_CASE("frozen sizes: empty, runs, noise", "[compressor]") {
    BuiltinCompressor comp;
    CHECK(comp.compressed_size({}) == 2);  // tag byte + zero varint

    Bytes run(1000, 'a');
    CHECK(comp.compressed_size(run) == 17);
    CHECK(comp.compressed_size(run) * 100 <= run.size() * 5);  // under 5%

    Bytes noise = random_bytes(1000, 42);
    CHECK(comp.compressed_size(noise) == 1128);
    CHECK(comp.compressed_size(noise) * 100 >= noise.size() * 95);  // near raw
}

TEST_CASE("compression round-trips exactly", "[compressor]") {
    auto check = [](const Bytes& data) {
        auto packed = BuiltinCompressor::compress(data);
        REQUIRE(BuiltinCompressor::decompress(packed) == data);
    };
    check({});
    check({0x00});
    check({0xFF});
    check(infodist::bytes_of("a"));
    check(infodist::bytes_of("abcabcabcabcabc"));
    check(Bytes(5000, 'x'));             // self-overlapping matches
    check(random_bytes(1000, 7));
    check(random_bytes(65536, 9));       // multiple windows of noise
    Bytes all_bytes(512);
    for (std::size_t i = 0; i < all_bytes.size(); ++i)
        all_bytes[i] = std::uint8_t(i);
    check(all_bytes);
    // Low-entropy structured data with long matches.
    Bytes structured;
    for (int i = 0; i < 2000; ++i) {
        auto piece = infodist::bytes_of(i % 3 ? "lorem ipsum " : "dolor sit ");
        structured.insert(structured.end(), piece.begin(), piece.end());
    }
    check(structured);
}

TEST_CASE("compressed_size is deterministic and matches compress",
          "[compressor]") {
    BuiltinCompressor comp;
    auto data = random_bytes(4096, 12345);
    auto first = comp.compressed_size(data);
    CHECK(first == comp.compressed_size(data));
    CHECK(first == BuiltinCompressor::compress(data).size());
}

TEST_CASE("decoder rejects broken streams", "[compressor]") {
    CHECK_THROWS_AS(BuiltinCompressor::decompress({}), std::runtime_error);
    CHECK_THROWS_AS(BuiltinCompressor::decompress({0x00, 0x00}),
                    std::runtime_error);  // wrong tag
    auto packed = BuiltinCompressor::compress(infodist::bytes_of("hello hello"));
    packed.pop_back();
    CHECK_THROWS_AS(BuiltinCompressor::decompress(packed), std::runtime_error);
}

TEST_CASE("external compressor measures stdout bytes", "[cli][compressor]") {
    infodist::ExternalCompressor cat("cat");
    Bytes data = random_bytes(10000, 3);
    CHECK(cat.compressed_size(data) == data.size());
    CHECK(cat.compressed_size({}) == 0);

    infodist::ExternalCompressor head("head -c 5");
    CHECK(head.compressed_size(data) == 5);

    infodist::ExternalCompressor false_cmd("false");
    CHECK_THROWS_AS(false_cmd.compressed_size(data), std::runtime_error);
}
