#pragma once

#include <functional>
#include <vector>

#include "vtr/tape.hpp"

namespace vtr {

// Builds the tape at `point`, evaluates `f` (which must return a 1x1 Var),
// and compares reverse-mode adjoints against central differences at step h.
// Returns the max relative error over all leaf coordinates, where relative
// error uses a unit floor: |a - n| / max(1, |a|, |n|). h must lie in
// [1e-6, 1e-3]. Non-finite intermediates surface as NumericError.
double grad_check(const std::function<Tape::Var(Tape&, const std::vector<Tape::Var>&)>& f,
                  const std::vector<Matrix>& point, double h);

}  // namespace vtr
