#pragma once

// Typed error hierarchy shared by every module. Everything derives from
// std::runtime_error so callers can catch broadly or precisely.

#include <stdexcept>
#include <string>

namespace infodist {

// Two bit strings were required to have equal length and did not.
class LengthMismatchError : public std::runtime_error {
public:
    explicit LengthMismatchError(const std::string& what_arg)
        : std::runtime_error(what_arg) {}
};

// An exhaustive search finished without finding any qualifying program.
class NoWitnessError : public std::runtime_error {
public:
    explicit NoWitnessError(const std::string& what_arg)
        : std::runtime_error(what_arg) {}
};

// A request is too large to run to completion under the configured guards
// (enumeration cap too big, output guard exceeded, and so on).
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& what_arg)
        : std::runtime_error(what_arg) {}
};

// An approximation trace violates its declared shape (empty, wrong
// monotonicity, mismatched lengths).
class MalformedTraceError : public std::runtime_error {
public:
    explicit MalformedTraceError(const std::string& what_arg)
        : std::runtime_error(what_arg) {}
};

// A labelled collection (corpus, distance matrix) repeats a label.
class DuplicateLabelError : public std::runtime_error {
public:
    explicit DuplicateLabelError(const std::string& what_arg)
        : std::runtime_error(what_arg) {}
};

// A compressor produced output sizes that cannot come from any reasonable
// compressor (for example a normalized distance far above 1).
class CompressorInsaneError : public std::runtime_error {
public:
    explicit CompressorInsaneError(const std::string& what_arg)
        : std::runtime_error(what_arg) {}
};

}  // namespace infodist
