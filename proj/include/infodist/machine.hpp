#pragma once

// A tiny prefix-free machine over bit strings, table version v1.
//
// A program is a bit string read strictly left to right, on demand. The
// machine also sees a read-only conditional string and an append-only output.
// Opcodes are 3 bits wide:
//
//   000 HALT      stop
//   001 WRITE0    append 0
//   010 WRITE1    append 1
//   011 COPYCOND  append the whole conditional
//   100 LITERAL   header L, then L raw bits; append them (block kept for REPEAT)
//   101 REPEAT    header k; append k further copies of the last LITERAL block
//   110 XORCOND   read |conditional| program bits b; append conditional xor b
//   111 NZEROS    append index(conditional) zeros
//
// Headers store a value v >= 0 as the Elias gamma code of v + 1. A run is
// *accepted* when it reaches HALT having consumed every program bit; because
// execution never looks past the bits it consumes, the set of accepted
// programs (for a fixed conditional) is prefix-free. Every opcode consumes at
// least 3 bits and REPEAT's expansion is finite, so every run terminates.
//
// Costs: 1 step per opcode dispatch, plus 1 step per appended bit for
// REPEAT, XORCOND and NZEROS. Time bounds are enforced by callers on the
// finished run (steps are monotone, so post-checking equals in-run checking).

#include <cstdint>
#include <string>

#include "infodist/bits.hpp"
#include "infodist/errors.hpp"

namespace infodist {

inline constexpr const char* kMachineTableVersion = "v1";

// COPYCOND + HALT.
inline constexpr std::size_t kCopyCost = 6;

// Every x is output by LITERAL + gamma(|x|+1) + x + HALT, whose length is
// |x| + 2*floor(log2(|x|+1)) + 7 <= |x| + 2*ceil(log2(|x|+2)) + kOverhead.
inline constexpr std::size_t kOverhead = 7;

enum class Opcode : unsigned {
    Halt = 0,
    Write0 = 1,
    Write1 = 2,
    CopyCond = 3,
    Literal = 4,
    Repeat = 5,
    XorCond = 6,
    NZeros = 7,
};

enum class StopReason {
    Halted,              // reached HALT
    OutOfProgram,        // needed more program bits than exist
    RepeatWithoutBlock,  // REPEAT before any LITERAL
    HeaderOverflow,      // gamma header wider than 63 bits
    OutputGuard,         // output would exceed the configured guard
};

struct RunLimits {
    // Hard cap on output length; a run that would exceed it stops unaccepted.
    // Generous enough that no in-range workload ever hits it.
    std::size_t output_guard = std::size_t(1) << 20;
};

struct ExecutionResult {
    bool halted = false;
    StopReason reason = StopReason::OutOfProgram;
    BitString output;
    std::uint64_t steps = 0;
    std::size_t bits_read = 0;
};

// A run is accepted when it halts with exactly the whole code consumed.
inline bool accepted(const ExecutionResult& r, std::size_t code_len) {
    return r.halted && r.bits_read == code_len;
}

// Lightweight code view for enumeration: the low `len` bits of `value`,
// most significant first. Anything with size() and bit(i) works as a code.
struct U64Code {
    std::uint64_t value = 0;
    std::size_t len = 0;
    std::size_t size() const { return len; }
    bool bit(std::size_t i) const {
        return ((value >> (len - 1 - i)) & 1u) != 0;
    }
};

// Elias gamma code of v + 1: floor(log2(v+1)) zeros, then v + 1 in binary.
inline BitString gamma_bits(std::uint64_t v) {
    if (v == ~std::uint64_t(0))
        throw std::invalid_argument("gamma_bits: value too large");
    std::uint64_t n = v + 1;
    int width = 64 - __builtin_clzll(n);
    BitString out;
    out.append_zeros(std::size_t(width - 1));
    for (int i = width - 1; i >= 0; --i)
        out.push_back(((n >> i) & 1u) != 0);
    return out;
}

inline BitString opcode_bits(Opcode op) {
    return BitString::of_value(static_cast<std::uint64_t>(op), 3);
}

// LITERAL + gamma(|x|+1) + x + HALT: outputs x under any conditional.
inline BitString literal_program(const BitString& x) {
    BitString p = opcode_bits(Opcode::Literal);
    p.append(gamma_bits(x.size()));
    p.append(x);
    p.append(opcode_bits(Opcode::Halt));
    return p;
}

inline std::size_t literal_program_length(std::size_t n) {
    std::size_t bits = 0;
    for (std::size_t m = n + 1; m > 1; m >>= 1) ++bits;  // floor(log2(n+1))
    return n + 2 * bits + kOverhead;
}

// COPYCOND + HALT: outputs the conditional.
inline BitString copy_program() {
    BitString p = opcode_bits(Opcode::CopyCond);
    p.append(opcode_bits(Opcode::Halt));
    return p;
}

// XORCOND + u + HALT: under a conditional of length |u|, outputs cond xor u.
// Because xor is an involution the same program maps v to w and w back to v.
inline BitString xor_witness_program(const BitString& u) {
    BitString p = opcode_bits(Opcode::XorCond);
    p.append(u);
    p.append(opcode_bits(Opcode::Halt));
    return p;
}

namespace detail {

template <class Code>
class BitReader {
public:
    BitReader(const Code& code, std::size_t len) : code_(code), len_(len) {}

    bool read(bool& b) {
        if (pos_ >= len_) return false;
        b = code_.bit(pos_++);
        return true;
    }

    // Gamma-coded header; false on out-of-bits, overflow reported separately.
    bool read_header(std::uint64_t& v, bool& overflow) {
        overflow = false;
        int zeros = 0;
        bool b = false;
        for (;;) {
            if (!read(b)) return false;
            if (b) break;
            if (++zeros > 62) { overflow = true; return true; }
        }
        std::uint64_t n = 1;
        for (int i = 0; i < zeros; ++i) {
            if (!read(b)) return false;
            n = (n << 1) | (b ? 1u : 0u);
        }
        v = n - 1;
        return true;
    }

    std::size_t consumed() const { return pos_; }

private:
    const Code& code_;
    std::size_t len_;
    std::size_t pos_ = 0;
};

}  // namespace detail

template <class Code>
ExecutionResult run_code(const Code& code, const BitString& cond,
                         const RunLimits& limits = {}) {
    ExecutionResult res;
    detail::BitReader<Code> in(code, code.size());

    BitString block;        // most recent LITERAL payload
    bool have_block = false;

    auto finish = [&](StopReason why) {
        res.reason = why;
        res.halted = (why == StopReason::Halted);
        res.bits_read = in.consumed();
        return res;
    };
    auto room_for = [&](const Nat& extra) {
        return Nat(res.output.size()) + extra <= limits.output_guard;
    };

    for (;;) {
        bool b0 = false, b1 = false, b2 = false;
        if (!in.read(b0) || !in.read(b1) || !in.read(b2))
            return finish(StopReason::OutOfProgram);
        auto op = static_cast<Opcode>((b0 ? 4u : 0u) | (b1 ? 2u : 0u) |
                                      (b2 ? 1u : 0u));
        ++res.steps;

        switch (op) {
            case Opcode::Halt:
                return finish(StopReason::Halted);

            case Opcode::Write0:
            case Opcode::Write1:
                if (!room_for(1)) return finish(StopReason::OutputGuard);
                res.output.push_back(op == Opcode::Write1);
                break;

            case Opcode::CopyCond:
                if (!room_for(cond.size()))
                    return finish(StopReason::OutputGuard);
                res.output.append(cond);
                break;

            case Opcode::Literal: {
                std::uint64_t len = 0;
                bool overflow = false;
                if (!in.read_header(len, overflow))
                    return finish(StopReason::OutOfProgram);
                if (overflow) return finish(StopReason::HeaderOverflow);
                BitString payload;
                for (std::uint64_t i = 0; i < len; ++i) {
                    bool b = false;
                    if (!in.read(b)) return finish(StopReason::OutOfProgram);
                    payload.push_back(b);
                }
                if (!room_for(payload.size()))
                    return finish(StopReason::OutputGuard);
                res.output.append(payload);
                block = std::move(payload);
                have_block = true;
                break;
            }

            case Opcode::Repeat: {
                std::uint64_t count = 0;
                bool overflow = false;
                if (!in.read_header(count, overflow))
                    return finish(StopReason::OutOfProgram);
                if (overflow) return finish(StopReason::HeaderOverflow);
                if (!have_block)
                    return finish(StopReason::RepeatWithoutBlock);
                if (!room_for(Nat(count) * block.size()))
                    return finish(StopReason::OutputGuard);
                for (std::uint64_t rep = 0; rep < count; ++rep)
                    for (std::size_t i = 0; i < block.size(); ++i) {
                        ++res.steps;
                        res.output.push_back(block.bit(i));
                    }
                break;
            }

            case Opcode::XorCond: {
                if (!room_for(cond.size()))
                    return finish(StopReason::OutputGuard);
                for (std::size_t i = 0; i < cond.size(); ++i) {
                    bool b = false;
                    if (!in.read(b)) return finish(StopReason::OutOfProgram);
                    ++res.steps;
                    res.output.push_back(cond.bit(i) != b);
                }
                break;
            }

            case Opcode::NZeros: {
                Nat count = index_of(cond);
                if (!room_for(count))
                    return finish(StopReason::OutputGuard);
                auto n = count.convert_to<std::uint64_t>();
                res.steps += n;
                res.output.append_zeros(std::size_t(n));
                break;
            }
        }
    }
}

inline ExecutionResult run_program(const BitString& program,
                                   const BitString& cond,
                                   const RunLimits& limits = {}) {
    return run_code(program, cond, limits);
}

// Human-readable description of the frozen machine, for the CLI and for
// output file provenance.
inline std::string machine_spec_text() {
    return std::string("infodist machine, table version ") +
        kMachineTableVersion + "\n"
        "\n"
        "Tapes: program (bits, read once, left to right, on demand),\n"
        "conditional (read-only bit string), output (append-only bits).\n"
        "\n"
        "Opcodes, 3 bits each, most significant bit first:\n"
        "  000 HALT      stop\n"
        "  001 WRITE0    append 0\n"
        "  010 WRITE1    append 1\n"
        "  011 COPYCOND  append the whole conditional\n"
        "  100 LITERAL   header L, then L raw program bits; append them;\n"
        "                the block is remembered for REPEAT\n"
        "  101 REPEAT    header k; append k further copies of the most recent\n"
        "                LITERAL block; fails if no LITERAL has run\n"
        "  110 XORCOND   read exactly |conditional| program bits b; append\n"
        "                conditional xor b\n"
        "  111 NZEROS    append N zeros, N = length-lex index of the conditional\n"
        "\n"
        "Headers: a value v >= 0 is stored as the Elias gamma code of v + 1\n"
        "(floor(log2(v+1)) zeros, then v + 1 in binary). Examples: 0 -> 1,\n"
        "1 -> 010, 3 -> 00100, 7 -> 0001000.\n"
        "\n"
        "Costs: one step per opcode dispatch; REPEAT, XORCOND and NZEROS add\n"
        "one step per appended bit.\n"
        "\n"
        "Acceptance: a run is accepted when it reaches HALT having consumed\n"
        "every program bit; where a time bound t applies, additionally\n"
        "steps <= t(|output|) (t measured on the produced output). Reading\n"
        "on demand makes the accepted program set prefix-free. Every opcode\n"
        "consumes at least 3 bits, so every run terminates.\n"
        "\n"
        "Constants: COPYCOND+HALT is 6 bits; LITERAL+gamma(|x|+1)+x+HALT\n"
        "outputs x and has length |x| + 2*floor(log2(|x|+1)) + 7, so the\n"
        "completeness overhead constant is 7.\n";
}

}  // namespace infodist
