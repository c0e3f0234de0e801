#pragma once

#include <stdexcept>

namespace prodperc {

// Bad argument values: out-of-range ids, malformed graphs, p1 > p, ...
class InvalidParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input is structurally fine but too large for the requested operation
// (exhaustive searches, materialization, percolation runs).
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace prodperc
