#pragma once

#include <cstddef>
#include <vector>

#include "efk/rational.hpp"

namespace efk {

// coeffs . x + constant > 0 (strict) or >= 0.
struct LinearConstraint {
  std::vector<Rational> coeffs;
  Rational constant = 0;
  bool strict = false;
};

struct FmOptions {
  std::size_t max_constraints = 20000;
};

// Exact feasibility over Q^n by Fourier-Motzkin elimination. Throws
// Error(SearchLimit) when the working set grows past the cap.
bool fm_feasible(std::vector<LinearConstraint> system, const FmOptions& options = {});

}  // namespace efk
