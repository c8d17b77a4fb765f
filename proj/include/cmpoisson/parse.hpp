#pragma once

#include "cmpoisson/trace_polynomial.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace cmpoisson {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Reads the polynomial text grammar, e.g. "4*tr(A B) - 4*n^-1*tr(A)*tr(B)".
/// Whitespace is ignored; columns in errors are 1-based. Multi-line input is
/// accepted and line numbers are tracked.
TracePolynomial parse_polynomial(std::string_view text, Mode mode);

}  // namespace cmpoisson
