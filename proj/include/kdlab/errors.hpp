#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kdlab {

/// Violated operation precondition (bad parameters, parity mismatch, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input that does not fit the fixed-capacity representation or a search budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (byte offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

}  // namespace kdlab
