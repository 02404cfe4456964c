#pragma once

#include <stdexcept>
#include <string>

namespace gq {

// Base class for all domain errors raised by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation refused because it would exceed a documented resource cap
// (e.g. full group enumeration beyond the element limit).
struct CapError : Error {
    explicit CapError(const std::string& msg) : Error(msg) {}
};

// A point-line geometry failed one of the quadrangle axioms.  `axiom` is 1, 2
// or 3 and `witness` describes the offending configuration.
struct AxiomError : Error {
    int axiom;
    std::string witness;
    AxiomError(int ax, const std::string& wit)
        : Error("quadrangle axiom " + std::to_string(ax) + " violated: " + wit),
          axiom(ax), witness(wit) {}
};

} // namespace gq
