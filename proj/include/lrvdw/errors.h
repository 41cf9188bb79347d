#pragma once

#include <stdexcept>
#include <string>

namespace lrvdw {

/// Requested evaluation mode is not supported by the data representation
/// (e.g. real-frequency evaluation of a tabulated grid).
class CapabilityError : public std::runtime_error {
public:
    explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

/// Evaluation too close to a pole or a degenerate denominator.
class SingularityError : public std::runtime_error {
public:
    explicit SingularityError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file; message carries file and line.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Dataset failed validation; message lists every failing record.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace lrvdw
