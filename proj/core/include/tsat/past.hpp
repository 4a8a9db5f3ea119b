#pragma once

// Elimination of past-time operators.

#include <stdexcept>
#include <string>
#include <vector>

#include "tsat/formula.hpp"

namespace tsat {

// Reserved for schemes that cannot linearize a past operator; the general
// reduction below never raises it.
class UnsupportedPastNesting : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PastReduction {
    Formula formula;
    // Auxiliary variables introduced, one per distinct past subformula.
    std::vector<std::string> aux_vars;
};

// Past-free formula satisfiable at its first state iff X is satisfiable at
// some position.  Each distinct prev/once subformula gets a fresh variable
// _u<n> tracking its value, constrained forward from the first state.
// Formulas without past operators are returned unchanged.
[[nodiscard]] PastReduction past_reduce(const Formula& x);

struct PrevStepSplit {
    Formula step;     // T': prev Y replaced by Y, other state parts under next
    Formula initial;  // w': prev Y replaced by false
};

// Z is a Boolean combination of variables, constants and prev applied to
// past-free state formulas.  Then, at the first state, [] Z is equivalent to
// bm T' & w'.  Throws std::invalid_argument for other shapes.
[[nodiscard]] PrevStepSplit split_prev_step(const Formula& z);

}  // namespace tsat
