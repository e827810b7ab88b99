#pragma once

#include <vector>

#include "fk/pattern.hpp"

namespace fk {

// Primitive patterns with cell length <= max_cell (d=1), one representative
// per translation/reflection class. Includes the empty and full patterns.
std::vector<PeriodicPattern> default_candidates_1d(int max_cell = 6);

// Patterns with cells up to 3x3 reduced by the torus symmetries, plus the
// known two-dimensional ground-state patterns for densities
// 1/2, 2/5, 1/3, 1/4, 2/9, 1/5, 2/11, 1/6.
std::vector<PeriodicPattern> default_candidates_2d();

// The eight named two-dimensional patterns by themselves.
std::vector<PeriodicPattern> known_2d_ground_state_patterns();

}  // namespace fk
