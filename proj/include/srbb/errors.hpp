#pragma once

#include <stdexcept>
#include <string>

namespace srbb {

// Invalid call arguments (bad N, negative alpha, mismatched grids, ...).
class invalid_argument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Structurally valid input that cannot be processed (zero table entries,
// non-positive values inside a fit window, ...).
class degenerate_input : public invalid_argument {
public:
    using invalid_argument::invalid_argument;
};

// Enumeration or sampling request beyond the configured cap.
class resource_limit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Iteration failed to converge, series diverged, overflow, ...
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A series or sum that provably diverges for the requested parameters.
class divergence_error : public numeric_error {
public:
    using numeric_error::numeric_error;
};

// Bad configuration file / flag combination (CLI layer).
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace srbb
