#pragma once

// Desk-scale diagonal constructions over the v1 machine.
//
// diagonal_u(n) finds the least n-bit string no short program produces;
// random_v(n) finds the least n-bit string whose conditional complexity is
// at least n; xor_pair(n) glues them into a pair (v, w = v xor u) whose
// distance witness is the explicit program XORCOND + u + HALT. On top of
// that sit the threshold scan over approximation-trace pairs, its maximum
// s(n) over all pairs of n-bit strings, and trace builders used to feed it.

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "infodist/approx.hpp"
#include "infodist/bits.hpp"
#include "infodist/complexity.hpp"
#include "infodist/errors.hpp"
#include "infodist/machine.hpp"

namespace infodist {

inline std::size_t ceil_log2(std::size_t n) {
    if (n == 0) throw std::invalid_argument("ceil_log2: zero");
    std::size_t bits = 0;
    for (std::size_t m = n - 1; m > 0; m >>= 1) ++bits;
    return bits;
}

// A search cap large enough that every n-bit string has a witness:
// covers the literal program with room to spare.
inline std::size_t completeness_cap(std::size_t n) {
    return n + 2 * ceil_log2(n + 2) + kOverhead;
}

// Double a step bound's scale and offset; the diagonal construction runs
// under this loosened budget so that everything the base bound accepts is
// still in scope.
inline StepBound doubled(const StepBound& bound) {
    return StepBound{sat_mul(bound.a, 2), bound.b, sat_mul(bound.c, 2)};
}

struct DiagonalResult {
    std::size_t n = 0;
    BitString u;                          // least absent n-bit string
    std::size_t accepted_programs = 0;    // programs of length < n accepted
    std::size_t outputs_of_length_n = 0;  // distinct n-bit outputs among them
};

// The least n-bit string that no program of length < n outputs under the
// conditional string_of(n) within the flat step budget bound_prime.t(n).
// There are fewer than 2^n such programs, so the string always exists.
inline DiagonalResult diagonal_u(std::size_t n,
                                 const StepBound& bound_prime = kDefaultBoundPrime) {
    if (n == 0)
        throw std::invalid_argument("diagonal_u: n must be at least 1");
    if (n > kMaxSearchCap + 1) {
        std::ostringstream msg;
        msg << "diagonal_u: n = " << n << " needs a scan past cap "
            << kMaxSearchCap;
        throw InfeasibleError(msg.str());
    }

    const BitString cond = string_of(Nat(n));
    const std::uint64_t budget = bound_prime.t(n);
    DiagonalResult res;
    res.n = n;

    std::set<BitString> seen;  // n-bit outputs only
    for (std::size_t len = 0; len < n; ++len)
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << len); ++v) {
            auto r = run_code(U64Code{v, len}, cond);
            if (!accepted(r, len) || r.steps > budget) continue;
            ++res.accepted_programs;
            if (r.output.size() == n) seen.insert(std::move(r.output));
        }
    res.outputs_of_length_n = seen.size();

    for (std::uint64_t v = 0; v < (std::uint64_t(1) << n); ++v) {
        BitString candidate = BitString::of_value(v, n);
        if (!seen.contains(candidate)) {
            res.u = std::move(candidate);
            return res;
        }
    }
    // Unreachable: there are fewer than 2^n programs shorter than n bits.
    throw NoWitnessError("diagonal_u: every n-bit string was produced");
}

struct RandomResult {
    std::size_t n = 0;
    BitString v;              // least n-bit string with k_time >= n
    std::size_t k_value = 0;  // its conditional complexity, if a witness fit
    bool k_known = false;     // false when even the cap found no program
};

// The least n-bit string v with k_time(v | string_of(n)) >= n. Fewer than
// 2^n programs are shorter than n, so such a v exists.
inline RandomResult random_v(std::size_t n,
                             const StepBound& bound = kDefaultBound,
                             std::size_t cap = 0, unsigned jobs = 1) {
    if (n == 0)
        throw std::invalid_argument("random_v: n must be at least 1");
    if (cap == 0) cap = completeness_cap(n);
    if (cap < n)
        throw std::invalid_argument(
            "random_v: cap below n cannot certify k_time >= n");
    const BitString cond = string_of(Nat(n));

    for (std::uint64_t val = 0; val < (std::uint64_t(1) << n); ++val) {
        BitString candidate = BitString::of_value(val, n);
        auto k = try_k_time(candidate, cond, bound, cap, jobs);
        if (k && k->value < n) continue;
        RandomResult res;
        res.n = n;
        res.v = std::move(candidate);
        if (k) {
            res.k_value = k->value;
            res.k_known = true;
        }
        return res;
    }
    throw NoWitnessError("random_v: every n-bit string had a short program");
}

struct GapReport {
    std::size_t n = 0;
    BitString u, v, w;                    // w = v xor u
    std::size_t e_upper_witness_len = 0;  // |XORCOND + u + HALT| = n + 6
    std::size_t e_t_value = 0;            // e_time(v, w) under the bound
    bool witness_ok_both_ways = false;    // replayed v->w and w->v in budget
};

// Pairs far apart in complexity yet joined by one explicit short witness:
// u from the diagonal under the doubled bound, v from random_v, w = v xor u.
// The witness XORCOND + u + HALT maps v to w and w to v (xor involution).
inline GapReport xor_pair(std::size_t n, const StepBound& bound = kDefaultBound,
                          std::size_t cap = 0, unsigned jobs = 1,
                          std::optional<StepBound> bound_prime = std::nullopt) {
    if (cap == 0) cap = completeness_cap(n) + 1;
    GapReport rep;
    rep.n = n;
    rep.u = diagonal_u(n, bound_prime ? *bound_prime : doubled(bound)).u;
    rep.v = random_v(n, bound, cap, jobs).v;
    rep.w = rep.v ^ rep.u;

    BitString witness = xor_witness_program(rep.u);
    rep.e_upper_witness_len = witness.size();

    auto forward = run_program(witness, rep.v);
    auto backward = run_program(witness, rep.w);
    const std::uint64_t budget = bound.t(n);
    rep.witness_ok_both_ways =
        accepted(forward, witness.size()) && forward.output == rep.w &&
        forward.steps <= budget && accepted(backward, witness.size()) &&
        backward.output == rep.v && backward.steps <= budget;

    rep.e_t_value = e_time(rep.v, rep.w, bound, cap, jobs);
    return rep;
}

struct SweepResult {
    std::vector<GapReport> reports;
    // Least n where the explicit witness is already optimal, i.e. its
    // length equals e_t; beyond it the witness carries no slack.
    std::optional<std::size_t> first_equal_n;
};

inline SweepResult gap_sweep(std::size_t n_min, std::size_t n_max,
                             const StepBound& bound = kDefaultBound,
                             std::size_t cap = 0, unsigned jobs = 1,
                             std::optional<StepBound> bound_prime = std::nullopt) {
    if (n_min == 0 || n_min > n_max)
        throw std::invalid_argument("gap_sweep: bad range");
    SweepResult sweep;
    for (std::size_t n = n_min; n <= n_max; ++n) {
        sweep.reports.push_back(xor_pair(n, bound, cap, jobs, bound_prime));
        const auto& rep = sweep.reports.back();
        if (!sweep.first_equal_n && rep.e_upper_witness_len == rep.e_t_value)
            sweep.first_equal_n = n;
    }
    return sweep;
}

// Least index i with e[i] >= E[i] / (n + 2 ceil(log2 n) + c). The e trace
// must be nondecreasing, the E trace nonincreasing; the scan visits indices
// 0..step_cap that both traces cover and reports nullopt when exhausted.
inline std::optional<std::size_t> threshold_search(
    const std::vector<Rational>& e_trace, const std::vector<Rational>& E_trace,
    std::size_t n, std::size_t c,
    std::size_t step_cap = ~std::size_t(0)) {
    if (n == 0) throw std::invalid_argument("threshold_search: n >= 1");
    if (e_trace.empty() || E_trace.empty())
        throw MalformedTraceError("threshold_search: empty trace");
    for (std::size_t i = 0; i + 1 < e_trace.size(); ++i)
        if (e_trace[i + 1] < e_trace[i])
            throw MalformedTraceError("threshold_search: e trace decreases");
    for (std::size_t i = 0; i + 1 < E_trace.size(); ++i)
        if (E_trace[i + 1] > E_trace[i])
            throw MalformedTraceError("threshold_search: E trace increases");

    const Rational denom(n + 2 * ceil_log2(n) + c);
    if (denom <= 0)
        throw std::invalid_argument("threshold_search: zero denominator");
    std::size_t last = std::min(e_trace.size(), E_trace.size());
    for (std::size_t i = 0; i < last; ++i) {
        if (i > step_cap) break;
        if (e_trace[i] >= E_trace[i] / denom) return i;
    }
    return std::nullopt;
}

inline std::optional<std::size_t> threshold_search(
    const ApproximationTrace& e_trace, const ApproximationTrace& E_trace,
    std::size_t n, std::size_t c, std::size_t step_cap = ~std::size_t(0)) {
    return threshold_search(e_trace.values, E_trace.values, n, c, step_cap);
}

// Produces the (e, E) trace pair for one pair of strings.
using TracePairSupplier =
    std::function<std::pair<ApproximationTrace, ApproximationTrace>(
        const BitString&, const BitString&)>;

struct SOfNResult {
    std::optional<std::size_t> value;  // max threshold index over all pairs
    std::size_t pairs_scanned = 0;
    bool exhausted = false;  // some pair ran out of trace before crossing
};

// Max of threshold_search over every ordered pair of n-bit strings.
inline SOfNResult s_of_n(std::size_t n, std::size_t c,
                         const TracePairSupplier& supplier,
                         std::size_t step_cap = ~std::size_t(0)) {
    if (n == 0 || n > 4)
        throw InfeasibleError("s_of_n: n must be between 1 and 4");
    SOfNResult res;
    std::size_t best = 0;
    bool any = false;
    for (std::uint64_t xv = 0; xv < (std::uint64_t(1) << n); ++xv)
        for (std::uint64_t yv = 0; yv < (std::uint64_t(1) << n); ++yv) {
            auto x = BitString::of_value(xv, n);
            auto y = BitString::of_value(yv, n);
            auto [e_tr, E_tr] = supplier(x, y);
            ++res.pairs_scanned;
            auto hit = threshold_search(e_tr, E_tr, n, c, step_cap);
            if (!hit) {
                res.exhausted = true;
                return res;
            }
            best = std::max(best, *hit);
            any = true;
        }
    if (any) res.value = best;
    return res;
}

// Self-distance trace: values 1 / k_time(x | eps) along a widening schedule.
// k_time can only shrink as the schedule widens, so the trace is
// nondecreasing; the machine's exact self-distance is kCopyCost times it.
inline ApproximationTrace diagonal_nid(const BitString& x,
                                       const Schedule& schedule,
                                       unsigned jobs = 1) {
    auto ks = k_upper_trace(x, BitString(), schedule, jobs);
    ApproximationTrace tr;
    tr.label = "1/k_time(" + (x.empty() ? std::string("eps") : x.text()) +
               ") along the schedule";
    for (std::size_t k : ks) tr.values.emplace_back(Rational(1) / Rational(k));
    return tr;
}

// Demo supplier for s_of_n: the E trace is the pointwise max of the two
// conditional k_upper_traces (nonincreasing), and the e trace is the running
// max of nid_time along the schedule (nondecreasing by construction). The
// true normalized distance has no trace that approximates it from below;
// this running max is an honest surrogate that converges to the final
// schedule point's value.
inline TracePairSupplier demo_trace_supplier(const Schedule& schedule,
                                             unsigned jobs = 1) {
    validate_schedule(schedule);
    return [schedule, jobs](const BitString& x, const BitString& y) {
        auto kxy = k_upper_trace(x, y, schedule, jobs);
        auto kyx = k_upper_trace(y, x, schedule, jobs);
        ApproximationTrace big;
        big.label = "max conditional program length";
        for (std::size_t i = 0; i < kxy.size(); ++i)
            big.values.emplace_back(std::max(kxy[i], kyx[i]));

        ApproximationTrace small;
        small.label = "running max of nid_time";
        Rational best(0);
        for (const auto& point : schedule) {
            Rational d = nid_time(x, y, point.bound, point.cap, jobs);
            if (d > best) best = d;
            small.values.push_back(best);
        }
        return std::make_pair(std::move(small), std::move(big));
    };
}

}  // namespace infodist
