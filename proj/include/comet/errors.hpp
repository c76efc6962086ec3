#ifndef COMET_ERRORS_HPP
#define COMET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace comet {

// Configuration / input errors (CLI exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Solver-side failures (CLI exit code 3).
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

struct TimestepTooLarge : SolverError {
    explicit TimestepTooLarge(const std::string& msg) : SolverError(msg) {}
};

struct NumericFailure : SolverError {
    explicit NumericFailure(const std::string& msg) : SolverError(msg) {}
};

struct WidthSolveFailure : SolverError {
    explicit WidthSolveFailure(const std::string& msg) : SolverError(msg) {}
};

struct PropagationStall : SolverError {
    explicit PropagationStall(const std::string& msg) : SolverError(msg) {}
};

// Incomplete or mismatched sweep data (CLI exit code 4).
struct IncompleteSweep : std::runtime_error {
    explicit IncompleteSweep(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace comet

#endif
