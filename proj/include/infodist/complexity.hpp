#pragma once

// Time-bounded program-length complexity on the v1 machine.
//
// k_time(x | cond) under a step bound t and a search cap scans every program
// of length <= cap in length-lex order and returns the length of the first
// accepted one that outputs x within t(|x|) steps; the bound is always
// measured on the length of the produced output. Scans are memoised: a table
// built once for (conditional, bound) at some cap answers every later query
// at the same or smaller cap exactly, because shrinking the cap only filters
// witnesses by length.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <utility>
#include <vector>

#include "infodist/bits.hpp"
#include "infodist/errors.hpp"
#include "infodist/machine.hpp"

namespace infodist {

using Rational = boost::multiprecision::cpp_rational;

// Builds beyond this cap are refused outright; 2^(cap+1) program runs is
// past what a desk-scale call should attempt.
inline constexpr std::size_t kMaxSearchCap = 26;

inline std::uint64_t sat_add(std::uint64_t x, std::uint64_t y) {
    std::uint64_t r = 0;
    return __builtin_add_overflow(x, y, &r) ? ~std::uint64_t(0) : r;
}

inline std::uint64_t sat_mul(std::uint64_t x, std::uint64_t y) {
    std::uint64_t r = 0;
    return __builtin_mul_overflow(x, y, &r) ? ~std::uint64_t(0) : r;
}

// Step budget t(n) = a * n^b + c with saturating 64-bit arithmetic.
// n^0 is 1 for every n, so {a,0,c} is the constant bound a + c and
// {0,b,c} the constant bound c.
struct StepBound {
    std::uint64_t a = 8;
    std::uint64_t b = 1;
    std::uint64_t c = 16;

    std::uint64_t t(std::uint64_t n) const {
        std::uint64_t p = 1;
        for (std::uint64_t i = 0; i < b; ++i) p = sat_mul(p, n);
        return sat_add(sat_mul(a, p), c);
    }

    auto operator<=>(const StepBound&) const = default;
};

inline constexpr StepBound kDefaultBound{8, 1, 16};
// Componentwise double of the default; used by the diagonal construction.
inline constexpr StepBound kDefaultBoundPrime{16, 1, 32};

// One point of a widening search schedule.
struct SearchPoint {
    StepBound bound;
    std::size_t cap = 0;
    auto operator<=>(const SearchPoint&) const = default;
};
using Schedule = std::vector<SearchPoint>;

// A schedule must widen monotonically: caps nondecreasing and bounds
// componentwise nondecreasing (which implies pointwise t1(n) <= t2(n)).
inline void validate_schedule(const Schedule& schedule) {
    if (schedule.empty())
        throw std::invalid_argument("schedule: empty");
    for (std::size_t i = 0; i + 1 < schedule.size(); ++i) {
        const auto& p = schedule[i];
        const auto& q = schedule[i + 1];
        if (p.cap > q.cap || p.bound.a > q.bound.a || p.bound.b > q.bound.b ||
            p.bound.c > q.bound.c)
            throw std::invalid_argument("schedule: not nondecreasing");
    }
}

// Least-program witness for one output.
struct Witness {
    std::size_t length = 0;
    std::uint64_t code_value = 0;

    BitString program() const {
        return BitString::of_value(code_value, length);
    }
};

struct TableData {
    std::size_t cap = 0;
    // Keyed in length-lex order; each value is the least accepted program
    // producing that output within the bound.
    std::map<BitString, Witness> best;
};

namespace detail {

struct TableKey {
    std::string cond;
    StepBound bound;
    auto operator<=>(const TableKey&) const = default;
};

inline void scan_range(std::size_t len, std::uint64_t from, std::uint64_t to,
                       const BitString& cond, const StepBound& bound,
                       std::map<BitString, Witness>& into) {
    for (std::uint64_t v = from; v < to; ++v) {
        U64Code code{v, len};
        auto r = run_code(code, cond);
        if (accepted(r, len) && r.steps <= bound.t(r.output.size()))
            into.emplace(std::move(r.output), Witness{len, v});
    }
}

inline std::shared_ptr<const TableData> build_table(const BitString& cond,
                                                    const StepBound& bound,
                                                    std::size_t cap,
                                                    unsigned jobs) {
    auto data = std::make_shared<TableData>();
    data->cap = cap;
    for (std::size_t len = 0; len <= cap; ++len) {
        const std::uint64_t total = std::uint64_t(1) << len;
        if (jobs <= 1 || total < 4096) {
            scan_range(len, 0, total, cond, bound, data->best);
            continue;
        }
        // Split the value range into chunks; merging in chunk order keeps
        // the least-code-wins rule exact.
        std::vector<std::map<BitString, Witness>> parts(jobs);
        std::vector<std::thread> workers;
        const std::uint64_t chunk = (total + jobs - 1) / jobs;
        for (unsigned j = 0; j < jobs; ++j) {
            std::uint64_t from = chunk * j;
            std::uint64_t to = std::min(total, chunk * (j + 1));
            if (from >= to) break;
            workers.emplace_back([=, &parts, &cond, &bound] {
                scan_range(len, from, to, cond, bound, parts[j]);
            });
        }
        for (auto& w : workers) w.join();
        for (auto& part : parts)
            for (auto& entry : part)
                data->best.emplace(entry.first, entry.second);
    }
    return data;
}

}  // namespace detail

// Process-wide memo of enumeration tables. Observationally equivalent to
// recomputing every call; it only skips repeated scans.
class SearchCache {
public:
    static SearchCache& instance() {
        static SearchCache cache;
        return cache;
    }

    std::shared_ptr<const TableData> get(const BitString& cond,
                                         const StepBound& bound,
                                         std::size_t cap, unsigned jobs = 1) {
        if (cap > kMaxSearchCap) {
            std::ostringstream msg;
            msg << "search cap " << cap << " exceeds the feasibility limit "
                << kMaxSearchCap;
            throw InfeasibleError(msg.str());
        }
        detail::TableKey key{cond.text(), bound};
        std::lock_guard<std::mutex> hold(lock_);
        auto it = tables_.find(key);
        if (it == tables_.end() || it->second->cap < cap) {
            auto built = detail::build_table(cond, bound, cap, jobs);
            it = tables_.insert_or_assign(key, std::move(built)).first;
        }
        return it->second;
    }

    void clear() {
        std::lock_guard<std::mutex> hold(lock_);
        tables_.clear();
    }

private:
    std::mutex lock_;
    std::map<detail::TableKey, std::shared_ptr<const TableData>> tables_;
};

inline std::shared_ptr<const TableData> enumeration_table(
    const BitString& cond, const StepBound& bound, std::size_t cap,
    unsigned jobs = 1) {
    return SearchCache::instance().get(cond, bound, cap, jobs);
}

struct KResult {
    std::size_t value = 0;  // length of the least accepted program
    BitString program;      // the witness itself
};

inline std::optional<KResult> try_k_time(const BitString& x,
                                         const BitString& cond,
                                         const StepBound& bound,
                                         std::size_t cap, unsigned jobs = 1) {
    auto table = enumeration_table(cond, bound, cap, jobs);
    auto it = table->best.find(x);
    if (it == table->best.end() || it->second.length > cap)
        return std::nullopt;
    return KResult{it->second.length, it->second.program()};
}

inline KResult k_time(const BitString& x, const BitString& cond,
                      const StepBound& bound, std::size_t cap,
                      unsigned jobs = 1) {
    auto found = try_k_time(x, cond, bound, cap, jobs);
    if (!found) {
        std::ostringstream msg;
        msg << "no program of length <= " << cap << " outputs "
            << (x.empty() ? std::string("eps") : x.text())
            << " given " << (cond.empty() ? std::string("eps") : cond.text())
            << " within t(n) = " << bound.a << "*n^" << bound.b << " + "
            << bound.c;
        throw NoWitnessError(msg.str());
    }
    return *found;
}

// k_time at every point of a widening schedule. Values can only shrink as
// the schedule widens; the first point must already admit a witness.
inline std::vector<std::size_t> k_upper_trace(const BitString& x,
                                              const BitString& cond,
                                              const Schedule& schedule,
                                              unsigned jobs = 1) {
    validate_schedule(schedule);
    std::vector<std::size_t> values;
    values.reserve(schedule.size());
    for (const auto& point : schedule)
        values.push_back(
            k_time(x, cond, point.bound, point.cap, jobs).value);
    return values;
}

// max of the two conditional complexities, the (time-bounded) information
// distance numerator.
inline std::size_t e_time(const BitString& x, const BitString& y,
                          const StepBound& bound, std::size_t cap,
                          unsigned jobs = 1) {
    std::size_t xy = k_time(x, y, bound, cap, jobs).value;
    std::size_t yx = k_time(y, x, bound, cap, jobs).value;
    return std::max(xy, yx);
}

// e_time normalised by max of the unconditional complexities; exact.
inline Rational nid_time(const BitString& x, const BitString& y,
                         const StepBound& bound, std::size_t cap,
                         unsigned jobs = 1) {
    const BitString eps;
    std::size_t kx = k_time(x, eps, bound, cap, jobs).value;
    std::size_t ky = k_time(y, eps, bound, cap, jobs).value;
    std::size_t num = e_time(x, y, bound, cap, jobs);
    return Rational(num) / Rational(std::max(kx, ky));
}

}  // namespace infodist
