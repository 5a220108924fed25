#pragma once

#include <stdexcept>
#include <string>

namespace chandeg {

/// Malformed input text (JSON, rational strings, CSV ranges).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A channel or partition failed its invariants.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A size guard tripped (output-alphabet cap, enumeration guard, depth guard).
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace chandeg
