#include <catch2/catch_amalgamated.hpp>

#include "infodist/approx.hpp"

using infodist::ApproximationTrace;
using infodist::Rational;
using infodist::TraceShape;

namespace {
std::vector<Rational> vals(std::initializer_list<int> xs) {
    return std::vector<Rational>(xs.begin(), xs.end());
}
}  // namespace

TEST_CASE("fluctuations are strict drops", "[approx]") {
    CHECK(infodist::fluctuation_count(vals({5})) == 0);
    CHECK(infodist::fluctuation_count(vals({1, 2, 3})) == 0);
    CHECK(infodist::fluctuation_count(vals({3, 2, 2, 1})) == 2);
    CHECK(infodist::fluctuation_count(vals({1, 2, 1, 2})) == 1);
    CHECK(infodist::fluctuation_count(vals({2, 1, 2, 1})) == 2);
    CHECK(infodist::fluctuation_count(vals({7, 7, 7})) == 0);
    CHECK_THROWS_AS(infodist::fluctuation_count(std::vector<Rational>{}),
                    infodist::MalformedTraceError);
}

TEST_CASE("hand-enumerated drop counts for 3-step traces", "[approx]") {
    // All 0/1 sequences of length 3, in numeric order.
    const std::size_t expected[8] = {0, 0, 1, 0, 1, 1, 1, 0};
    for (unsigned m = 0; m < 8; ++m) {
        std::vector<Rational> t = {Rational((m >> 2) & 1), Rational((m >> 1) & 1),
                                   Rational(m & 1)};
        CHECK(infodist::fluctuation_count(t) == expected[m]);
    }
}

TEST_CASE("exact rational comparison drives the count", "[approx]") {
    std::vector<Rational> t = {Rational(1, 3), Rational(2, 6), Rational(3, 9)};
    CHECK(infodist::fluctuation_count(t) == 0);
    CHECK(infodist::classify_trace(t).shape == TraceShape::Upper);

    std::vector<Rational> u = {Rational(2, 3), Rational(6, 10), Rational(2, 3)};
    CHECK(infodist::fluctuation_count(u) == 1);  // 2/3 > 3/5, then back up
}

TEST_CASE("n-approximability thresholds", "[approx]") {
    CHECK(infodist::is_n_approx(vals({1, 2, 3}), 1));
    CHECK_FALSE(infodist::is_n_approx(vals({3, 1, 2}), 1));
    CHECK(infodist::is_n_approx(vals({3, 1, 2}), 2));
    CHECK_FALSE(infodist::is_n_approx(vals({2, 1, 2, 1}), 2));
    CHECK(infodist::is_n_approx(vals({2, 1, 2, 1}), 3));
    CHECK_THROWS_AS(infodist::is_n_approx(vals({1}), 0), std::invalid_argument);
    // Any length-m trace is m-approximable.
    CHECK(infodist::is_n_approx(vals({9, 1, 9, 1, 9}), 5));
}

TEST_CASE("classification convention", "[approx]") {
    CHECK(infodist::classify_trace(vals({4, 4, 4})).shape == TraceShape::Upper);
    CHECK(infodist::classify_trace(vals({4, 4, 4})).fluctuations == 0);
    CHECK(infodist::classify_trace(vals({5, 3, 3, 1})).shape ==
          TraceShape::Upper);
    CHECK(infodist::classify_trace(vals({1, 1, 2})).shape == TraceShape::Lower);
    auto mixed = infodist::classify_trace(vals({1, 3, 2, 4, 0}));
    CHECK(mixed.shape == TraceShape::Mixed);
    CHECK(mixed.fluctuations == 2);
}

TEST_CASE("traces carry labels through", "[approx]") {
    ApproximationTrace tr{vals({2, 1}), "demo"};
    CHECK(infodist::fluctuation_count(tr) == 1);
    CHECK(infodist::is_n_approx(tr, 2));
    CHECK(infodist::classify_trace(tr).shape == TraceShape::Upper);
    CHECK(tr.label == "demo");
}
