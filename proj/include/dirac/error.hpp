#ifndef DIRAC_ERROR_HPP
#define DIRAC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dirac {

/// Base class for all engine errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid arithmetic input (division by zero, zero inverse, table mismatch).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// Lexical or syntactic error with source location (1-based).
class ParseError : public Error {
public:
    ParseError(std::string msg, int line, int column)
        : Error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Model file failed validation (duplicate symbols, missing keys, ...).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

/// Configured term/polynomial budget exceeded; the computation was aborted,
/// never silently truncated.
class ResourceLimitError : public Error {
public:
    explicit ResourceLimitError(const std::string& msg) : Error(msg) {}
};

/// An internal invariant failed (residual velocity in a canonical Hamiltonian,
/// non-invertible second-class matrix, certificate polynomial vanishing on the
/// constraint set, ...). Indicates a pipeline bug or a non-generic stratum.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& msg) : Error(msg) {}
};

} // namespace dirac

#endif
