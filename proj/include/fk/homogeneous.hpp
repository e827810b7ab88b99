#pragma once

#include <complex>
#include <vector>

#include "fk/lattice.hpp"
#include "fk/pattern.hpp"

namespace fk {

// Reduced fraction p/q with the decomposition q = (l+1) p - s, 1 <= s <= p-1.
// The (l, s) bookkeeping is undefined for p = 1 (has_ls = false).
struct Fraction {
  long p = 0;
  long q = 0;
  long ell = 0;
  long s = 0;
  bool has_ls = false;
};

Fraction make_fraction(long p, long q);

// Occupied sites k_j of the period-q cell solving (p k_j) = j mod q for
// j = 0..r-1, with k_0 = 0. Requires gcd(p, q) = 1 and 1 <= r <= q.
PeriodicPattern most_homogeneous_config(long p, long q, long r);

// Occupied sites of the cell in formula order (k_0, k_1, ..., k_{r-1}).
std::vector<long> formula_sites(long p, long q, long r);

// Cyclic left-gaps L(x_i): gaps[i] is the distance from occupied site x_{i-1}
// to x_i, occupied sites listed in increasing position; gaps[0] wraps around.
// The gaps sum to the period.
std::vector<int> gap_profile(const PeriodicPattern& pattern);

// Homogeneous means all gaps equal l or l+1; the derivative marks the short
// gaps, indexed by occupied sites in increasing position, with period equal
// to the particle count.
bool is_homogeneous(const PeriodicPattern& pattern);
PeriodicPattern derivative(const PeriodicPattern& pattern);

// True when repeated differentiation reaches the empty or full configuration.
bool is_most_homogeneous(const PeriodicPattern& pattern);

// (1/(n q)) sum_j e^{-2 pi i rho_e j} w_j over the super-cell of n periods;
// rho_e passed as a reduced rational whose denominator must divide n*q.
std::complex<double> structure_factor(const PeriodicPattern& pattern, long rho_num,
                                      long rho_den);

// Perturbative energy per site at small U:
//   -(2/pi) sin(pi rho_e) - U rho_e rho_c - |w-hat|^2/(4 pi sin(pi rho_e)) U^2 |log U|.
// The O(U^2) constant is not modeled.
double small_u_energy(long rho_num, long rho_den, const PeriodicPattern& pattern,
                      double coupling);

// Brute force over all period-q patterns with r particles: canonical
// representatives (translation/reflection) of the |w-hat(p/q)| maximizers.
std::vector<PeriodicPattern> maximize_structure_factor(long q, long p, long r);

// Crossing coupling where two far-separated ion+electron pairs and a
// two-site molecule with two electrons exchange stability, located by
// bisection on an open chain.
double molecule_threshold(int chain_length, double u_lo = 1.0, double u_hi = 1.3,
                          double u_tol = 1e-6);

struct Theorem2Result {
  bool matches = false;
  std::string witness;       // a minimizer, canonical string
  double min_energy = 0.0;
  double runner_up_energy = 0.0;  // best energy outside the minimizer set
  long long configs_checked = 0;
};

// Exhaustive ground-state search on the ring of q*periods sites at
// N_e = N_c = p*periods; matches is true when the minimizer set equals the
// translation/reflection orbit of the tiled formula pattern.
Theorem2Result theorem2_check(long p, long q, double coupling, int periods);

}  // namespace fk
