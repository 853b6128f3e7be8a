#pragma once

// Approximation traces: finite prefixes of a sequence of rational estimates
// converging to some quantity. The shape of such a trace says how hard the
// quantity is to approximate: nondecreasing traces approximate from below,
// nonincreasing ones from above, and the number of strict drops (the
// fluctuation count) grades everything in between. A trace with at most
// n - 1 drops is n-approximable; 1-approximable means nondecreasing.

#include <cstddef>
#include <string>
#include <vector>

#include "infodist/complexity.hpp"
#include "infodist/errors.hpp"

namespace infodist {

struct ApproximationTrace {
    std::vector<Rational> values;
    std::string label;  // what the trace approximates, for reports
};

enum class TraceShape { Upper, Lower, Mixed };

struct TraceClass {
    TraceShape shape = TraceShape::Upper;
    std::size_t fluctuations = 0;
};

// Number of strict drops between consecutive values.
inline std::size_t fluctuation_count(const std::vector<Rational>& values) {
    if (values.empty())
        throw MalformedTraceError("fluctuation_count: empty trace");
    std::size_t drops = 0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        if (values[i + 1] < values[i]) ++drops;
    return drops;
}

inline std::size_t fluctuation_count(const ApproximationTrace& trace) {
    return fluctuation_count(trace.values);
}

// At most n - 1 fluctuations; n >= 1.
inline bool is_n_approx(const std::vector<Rational>& values, std::size_t n) {
    if (n == 0)
        throw std::invalid_argument("is_n_approx: n must be at least 1");
    return fluctuation_count(values) <= n - 1;
}

inline bool is_n_approx(const ApproximationTrace& trace, std::size_t n) {
    return is_n_approx(trace.values, n);
}

// Upper when nonincreasing (constant counts as upper), lower when
// nondecreasing, otherwise mixed with its fluctuation count.
inline TraceClass classify_trace(const std::vector<Rational>& values) {
    std::size_t drops = fluctuation_count(values);  // also rejects empty
    bool nonincreasing = true;
    bool nondecreasing = true;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        if (values[i + 1] > values[i]) nonincreasing = false;
        if (values[i + 1] < values[i]) nondecreasing = false;
    }
    if (nonincreasing) return {TraceShape::Upper, drops};
    if (nondecreasing) return {TraceShape::Lower, 0};
    return {TraceShape::Mixed, drops};
}

inline TraceClass classify_trace(const ApproximationTrace& trace) {
    return classify_trace(trace.values);
}

}  // namespace infodist
