#pragma once

// Finite binary strings and the standard correspondence with natural numbers.
//
// Strings are ordered length-lexicographically: shorter strings first, and
// strings of equal length in lexicographic (= numeric) order. index() and
// string_of() realise the bijection with {0, 1, 2, ...} induced by that
// order, so index(eps) = 0, index("0") = 1, index("1") = 2, index("00") = 3
// and so on. pair_nat()/unpair_nat() give the classic diagonal pairing of
// two naturals into one.

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "infodist/errors.hpp"

namespace infodist {

using Nat = boost::multiprecision::cpp_int;

// Packed bit string. Bit 0 is the leftmost (most significant) bit; unused
// bits in the final byte are kept zero so equality can compare bytes.
class BitString {
public:
    BitString() = default;

    // Parse from text consisting only of '0' and '1'; "" gives the empty
    // string.
    static BitString parse(std::string_view text) {
        BitString out;
        out.reserve_bits(text.size());
        for (char ch : text) {
            if (ch != '0' && ch != '1')
                throw std::invalid_argument("BitString::parse: bad character");
            out.push_back(ch == '1');
        }
        return out;
    }

    // The low `len` bits of `value`, most significant first.
    static BitString of_value(std::uint64_t value, std::size_t len) {
        if (len < 64 && len > 0 && (value >> len) != 0)
            throw std::invalid_argument("BitString::of_value: value too wide");
        if (len == 0 && value != 0)
            throw std::invalid_argument("BitString::of_value: value too wide");
        BitString out;
        out.reserve_bits(len);
        for (std::size_t i = 0; i < len; ++i)
            out.push_back(((value >> (len - 1 - i)) & 1u) != 0);
        return out;
    }

    std::size_t size() const { return nbits_; }
    bool empty() const { return nbits_ == 0; }

    bool bit(std::size_t i) const {
        return (bytes_[i >> 3] & mask(i)) != 0;
    }

    void push_back(bool b) {
        if ((nbits_ & 7u) == 0) bytes_.push_back(0);
        if (b) bytes_.back() |= mask(nbits_);
        ++nbits_;
    }

    void append(const BitString& other) {
        for (std::size_t i = 0; i < other.nbits_; ++i)
            push_back(other.bit(i));
    }

    void append_zeros(std::size_t count) {
        nbits_ += count;
        bytes_.resize((nbits_ + 7) >> 3, 0);
    }

    void reserve_bits(std::size_t count) { bytes_.reserve((count + 7) >> 3); }

    BitString operator^(const BitString& other) const {
        if (nbits_ != other.nbits_)
            throw LengthMismatchError("xor over strings of different length");
        BitString out = *this;
        for (std::size_t i = 0; i < out.bytes_.size(); ++i)
            out.bytes_[i] ^= other.bytes_[i];
        return out;
    }

    bool operator==(const BitString& other) const {
        return nbits_ == other.nbits_ && bytes_ == other.bytes_;
    }

    // Length-lexicographic order, the same order index() counts in.
    std::strong_ordering operator<=>(const BitString& other) const {
        if (nbits_ != other.nbits_)
            return nbits_ <=> other.nbits_;
        if (bytes_ < other.bytes_) return std::strong_ordering::less;
        if (bytes_ == other.bytes_) return std::strong_ordering::equal;
        return std::strong_ordering::greater;
    }

    std::string text() const {
        std::string out;
        out.reserve(nbits_);
        for (std::size_t i = 0; i < nbits_; ++i)
            out.push_back(bit(i) ? '1' : '0');
        return out;
    }

private:
    static std::uint8_t mask(std::size_t i) {
        return static_cast<std::uint8_t>(0x80u >> (i & 7u));
    }

    std::vector<std::uint8_t> bytes_;
    std::size_t nbits_ = 0;
};

// Prints "eps" for the empty string so diagnostics stay readable.
inline std::ostream& operator<<(std::ostream& os, const BitString& s) {
    return os << (s.empty() ? std::string("eps") : s.text());
}

// Position of x in length-lexicographic order: (2^|x| - 1) + value(x).
inline Nat index_of(const BitString& x) {
    Nat value = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        value <<= 1;
        if (x.bit(i)) value |= 1;
    }
    return (Nat(1) << x.size()) - 1 + value;
}

// Inverse of index_of.
inline BitString string_of(const Nat& i) {
    if (i < 0) throw std::invalid_argument("string_of: negative index");
    Nat n = i + 1;
    std::size_t len = boost::multiprecision::msb(n);  // 2^len <= i+1 < 2^(len+1)
    Nat offset = n - (Nat(1) << len);
    BitString out;
    out.reserve_bits(len);
    for (std::size_t j = 0; j < len; ++j)
        out.push_back(boost::multiprecision::bit_test(offset, unsigned(len - 1 - j)));
    return out;
}

inline BitString string_of(std::uint64_t i) { return string_of(Nat(i)); }

// Diagonal pairing y + (x+y+1)(x+y)/2 and its inverse.
inline Nat pair_nat(const Nat& x, const Nat& y) {
    if (x < 0 || y < 0) throw std::invalid_argument("pair_nat: negative input");
    Nat w = x + y;
    return y + (w + 1) * w / 2;
}

inline std::pair<Nat, Nat> unpair_nat(const Nat& z) {
    if (z < 0) throw std::invalid_argument("unpair_nat: negative input");
    Nat disc = 8 * z + 1;
    Nat w = (boost::multiprecision::sqrt(disc) - 1) / 2;
    // sqrt truncates; settle w so that w(w+1)/2 <= z < (w+1)(w+2)/2.
    while ((w + 1) * (w + 2) / 2 <= z) ++w;
    while (w * (w + 1) / 2 > z) --w;
    Nat y = z - w * (w + 1) / 2;
    return {w - y, y};
}

}  // namespace infodist
