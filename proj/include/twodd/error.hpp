#pragma once

#include <stdexcept>
#include <string>

namespace twodd {

/// Malformed input text or files.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was called outside its precondition (degree mismatch,
/// non-uniform set, unsaturated graph where a 2-dd is required, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A configured search cap (factor bits, AC count, degree) was exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace twodd
