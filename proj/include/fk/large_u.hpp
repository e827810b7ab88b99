#pragma once

#include <map>
#include <vector>

#include "fk/lattice.hpp"

namespace fk {

// One order of the U^{-1} expansion of the canonical ground state energy at
// N_e = N_c: closed nearest-neighbor walks of k sites, grouped by the number
// m of visited empty sites (counted with multiplicity along the walk). Only
// 0 < m < k contributes, with weight (-1)^m C(k-2, m-1) / (k U^{k-1}).
struct WalkTerm {
  int order = 0;  // k
  double contribution = 0.0;
  std::map<int, long long> walk_counts_by_m;
};

// Terms for k = 2..kmax. Requires U > 4d and a periodic lattice; extents must
// exceed kmax/2.
std::vector<WalkTerm> expansion_terms(const Configuration& config, double coupling,
                                      int kmax);

// -U N_c plus the truncated walk series.
double expansion_energy(const Configuration& config, double coupling, int kmax);

// Lowest order by itself: -(number of differing bonds)/U.
double nn_effective_energy(const Configuration& config, double coupling);

// Bound on the full walk series: 2d N_c / (U - 4d).
double remainder_bound(double coupling, int dim, int n_classical);

// Asymptotic surrogate 8 d^2 / U for the segregation constant gamma(U);
// an order-of-magnitude proxy only.
double gamma_estimate(double coupling, int dim);

}  // namespace fk
