#ifndef SUPERFLOW_ERRORS_HPP
#define SUPERFLOW_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace superflow {

/// Malformed DSL or CSV input. Carries 1-based line and column of the offense.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, std::size_t line, std::size_t column)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Malformed binary input (wrong length, nonzero reserved bytes, ...).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters for a scenario, builtin hypothesis, or encoder.
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Hypothesis falls outside the streaming-monitorable fragment.
class UnsupportedHypothesisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input too large for an exhaustive (desk-scale) algorithm.
class SizeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace superflow

#endif // SUPERFLOW_ERRORS_HPP
