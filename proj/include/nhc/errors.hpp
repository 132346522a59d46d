// Error taxonomy. The CLI maps these onto its exit codes:
//   input_error -> 2, stabilization_error -> 3, invariant_error -> 1.
#pragma once

#include <stdexcept>
#include <string>

namespace nhc {

// Malformed or inconsistent user input (bad rays, non-primary ideals,
// unreadable tables, invalid options).
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A search or limit process ran out of room: no fit stencil stabilized
// within the grid, a stable-count cap was exhausted, a constant did not
// settle inside the available table.
struct stabilization_error : std::runtime_error {
    explicit stabilization_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A mathematical identity the library relies on failed to hold on computed
// data; this always indicates a bug or corrupt ingested data.
struct invariant_error : std::runtime_error {
    explicit invariant_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace nhc
