#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wbr {

/// Input data violates a documented precondition (bad file contents,
/// misaligned series, insufficient observations).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A file row that failed to parse. line() is the 1-based line number,
/// counting the header.
class ParseError : public DataError {
public:
    ParseError(const std::string& what, std::size_t line)
        : DataError(what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// A matrix required to be symmetric positive definite is not.
class NotSpdError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace wbr
