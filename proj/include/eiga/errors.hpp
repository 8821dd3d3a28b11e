#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace eiga {

// Invalid argument dimensions / out-of-range parameters.
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Malformed input file; carries the 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line = 0)
        : std::runtime_error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Inputs that are structurally valid but cannot constrain the problem
// (too few anchors, empty target cloud, ...).
class DegenerateInputError : public std::runtime_error {
public:
    explicit DegenerateInputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Optimizer diverged; carries the energy trace up to the failure.
class OptimizationFailure : public std::runtime_error {
public:
    OptimizationFailure(const std::string& msg, std::vector<double> trace)
        : std::runtime_error(msg), trace_(std::move(trace)) {}
    const std::vector<double>& trace() const { return trace_; }

private:
    std::vector<double> trace_;
};

// Regressor training produced a non-finite loss; carries the loss trace.
class TrainingFailure : public std::runtime_error {
public:
    TrainingFailure(const std::string& msg, std::vector<double> trace)
        : std::runtime_error(msg), trace_(std::move(trace)) {}
    const std::vector<double>& trace() const { return trace_; }

private:
    std::vector<double> trace_;
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Archive decode problems: bad magic, version mismatch, checksum failure.
class ArchiveError : public std::runtime_error {
public:
    explicit ArchiveError(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested texture synthesis for a triangle with no observations and no fallback.
class NoTextureAvailable : public std::runtime_error {
public:
    explicit NoTextureAvailable(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace eiga
