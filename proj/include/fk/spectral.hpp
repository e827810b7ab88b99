#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fk/lattice.hpp"

namespace fk {

// One-body Hamiltonian h = -t - U diag(omega): off-diagonal -1 on bonds,
// diagonal -U on occupied sites.
struct OneBodyMatrix {
  Eigen::MatrixXd h;
  double coupling = 0.0;
  int n_classical = 0;
};

// Sorted one-body eigenvalues with the provenance needed by the energy
// functionals.
struct Spectrum {
  std::vector<double> values;  // ascending
  double coupling = 0.0;
  int n_classical = 0;

  int size() const { return static_cast<int>(values.size()); }
};

struct EnsemblePoint {
  double beta;  // may be +infinity
  double mu_e;
  double mu_c;
};

OneBodyMatrix build_one_body(const Configuration& config, double coupling);

// Dense symmetric eigensolve; ascending eigenvalues. With check_residuals the
// eigenpairs are verified against ||h v - lambda v|| <= 1e-9 ||h||.
Spectrum eigenvalues(const OneBodyMatrix& matrix, bool check_residuals = false);

Spectrum spectrum_of(const Configuration& config, double coupling);

// Sum of the n_e smallest eigenvalues (0 for n_e = 0).
double canonical_energy(const Spectrum& spectrum, int n_e);

// -mu_c N_c + sum over modes strictly below mu_e of (lambda - mu_e).
double gc_energy(const Spectrum& spectrum, int n_classical, double mu_e, double mu_c);

int electron_count(const Spectrum& spectrum, double mu_e);  // #{lambda < mu_e}
double electron_density(const Spectrum& spectrum, double mu_e);

// Free-fermion free energy -mu_c N_c - (1/beta) sum_j log(1 + e^{-beta(lambda_j - mu_e)}).
// beta = +infinity routes to gc_energy.
double free_energy(const Spectrum& spectrum, int n_classical, const EnsemblePoint& point);

// Closed-interval spectral windows: for U >= 0 the first N_c eigenvalues must
// lie in [-U-2d, -U+2d] and the rest in [-2d, 2d].
bool check_spectral_windows(const Spectrum& spectrum, int dim, double tol = 1e-9);

// Tie tolerance for exhaustive ground-state comparisons: a safe multiple of
// the eigensolver's backward error, well below the physical gaps between
// configuration classes at desk scale.
double energy_tie_tolerance(double coupling, int n_sites);

// Prefix sums of the spectrum for O(log n) grand-canonical evaluations.
struct SpectrumTable {
  std::vector<double> values;
  std::vector<double> prefix;  // prefix[m] = sum of m smallest
  int n_classical = 0;
  int n_sites = 0;

  int count_below(double mu_e) const;
  double gc_energy_per_site(double mu_e, double mu_c) const;
  // Canonical energy per site at (possibly fractional) electron count x*n_sites,
  // linearly interpolated between adjacent integer fillings.
  double canonical_energy_per_site(double electron_fraction) const;
};

SpectrumTable make_table(const Spectrum& spectrum);

}  // namespace fk
