#include "fk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fk {

OneBodyMatrix build_one_body(const Configuration& config, double coupling) {
  const Lattice& lat = config.lattice();
  const int n = lat.size();
  OneBodyMatrix m;
  m.h = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [a, b] : lat.bonds()) {
    m.h(a, b) = -1.0;
    m.h(b, a) = -1.0;
  }
  for (int site = 0; site < n; ++site) {
    if (config.occupied(site)) m.h(site, site) = -coupling;
  }
  m.coupling = coupling;
  m.n_classical = config.particle_count();
  return m;
}

Spectrum eigenvalues(const OneBodyMatrix& matrix, bool check_residuals) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.compute(matrix.h, check_residuals ? Eigen::ComputeEigenvectors
                                           : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("symmetric eigensolver failed to converge");
  }
  if (check_residuals) {
    const double scale = matrix.h.norm();
    for (int j = 0; j < matrix.h.rows(); ++j) {
      const double residual =
          (matrix.h * solver.eigenvectors().col(j) -
           solver.eigenvalues()(j) * solver.eigenvectors().col(j))
              .norm();
      if (residual > 1e-9 * std::max(1.0, scale)) {
        throw std::runtime_error("eigenpair residual exceeds tolerance");
      }
    }
  }
  Spectrum s;
  s.values.assign(solver.eigenvalues().data(),
                  solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(s.values.begin(), s.values.end());
  s.coupling = matrix.coupling;
  s.n_classical = matrix.n_classical;
  return s;
}

Spectrum spectrum_of(const Configuration& config, double coupling) {
  return eigenvalues(build_one_body(config, coupling));
}

double canonical_energy(const Spectrum& spectrum, int n_e) {
  if (n_e < 0 || n_e > spectrum.size()) {
    throw std::invalid_argument("electron count out of range");
  }
  double sum = 0.0;
  for (int j = 0; j < n_e; ++j) sum += spectrum.values[j];
  return sum;
}

double gc_energy(const Spectrum& spectrum, int n_classical, double mu_e, double mu_c) {
  double sum = -mu_c * n_classical;
  for (double lambda : spectrum.values) {
    if (lambda < mu_e) sum += lambda - mu_e;
  }
  return sum;
}

int electron_count(const Spectrum& spectrum, double mu_e) {
  return static_cast<int>(
      std::lower_bound(spectrum.values.begin(), spectrum.values.end(), mu_e) -
      spectrum.values.begin());
}

double electron_density(const Spectrum& spectrum, double mu_e) {
  return static_cast<double>(electron_count(spectrum, mu_e)) / spectrum.size();
}

namespace {

// log(1 + e^x) without overflow.
double softplus(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

}  // namespace

double free_energy(const Spectrum& spectrum, int n_classical, const EnsemblePoint& point) {
  if (!(point.beta > 0.0)) throw std::invalid_argument("beta must be positive");
  if (std::isinf(point.beta)) return gc_energy(spectrum, n_classical, point.mu_e, point.mu_c);
  double log_z = 0.0;
  for (double lambda : spectrum.values) {
    log_z += softplus(-point.beta * (lambda - point.mu_e));
  }
  return -point.mu_c * n_classical - log_z / point.beta;
}

bool check_spectral_windows(const Spectrum& spectrum, int dim, double tol) {
  const double band = 2.0 * dim;
  const double u = spectrum.coupling;
  for (int j = 0; j < spectrum.size(); ++j) {
    const double lambda = spectrum.values[j];
    if (j < spectrum.n_classical) {
      if (lambda < -u - band - tol || lambda > -u + band + tol) return false;
    } else {
      if (lambda < -band - tol || lambda > band + tol) return false;
    }
  }
  return true;
}

double energy_tie_tolerance(double coupling, int n_sites) {
  const double eps = std::numeric_limits<double>::epsilon();
  return std::max(1e-10, 2000.0 * eps * (std::abs(coupling) + 4.0) * n_sites);
}

int SpectrumTable::count_below(double mu_e) const {
  return static_cast<int>(std::lower_bound(values.begin(), values.end(), mu_e) -
                          values.begin());
}

double SpectrumTable::gc_energy_per_site(double mu_e, double mu_c) const {
  const int m = count_below(mu_e);
  return (-mu_c * n_classical + prefix[m] - m * mu_e) / n_sites;
}

double SpectrumTable::canonical_energy_per_site(double electron_fraction) const {
  if (electron_fraction < -1e-12 || electron_fraction > 1.0 + 1e-12) {
    throw std::invalid_argument("electron fraction out of [0,1]");
  }
  const double x = std::clamp(electron_fraction, 0.0, 1.0) * n_sites;
  const int m = std::min(static_cast<int>(std::floor(x)), n_sites);
  const double frac = x - m;
  double e = prefix[m];
  if (frac > 0.0 && m < n_sites) e += frac * values[m];
  return e / n_sites;
}

SpectrumTable make_table(const Spectrum& spectrum) {
  SpectrumTable t;
  t.values = spectrum.values;
  t.n_classical = spectrum.n_classical;
  t.n_sites = spectrum.size();
  t.prefix.assign(t.n_sites + 1, 0.0);
  for (int m = 0; m < t.n_sites; ++m) t.prefix[m + 1] = t.prefix[m] + t.values[m];
  return t;
}

}  // namespace fk
