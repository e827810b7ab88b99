#include "fk/band.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fk {

namespace {

constexpr double kRichardsonTol = 1e-4;

int default_resolution(int dim) { return dim == 1 ? 262144 : 1024; }

void validate(int dim, double rho_e) {
  if (dim < 1 || dim > 2) throw std::invalid_argument("dimension must be 1 or 2");
  if (rho_e < 0.0 || rho_e > 1.0) throw std::invalid_argument("rho_e must lie in [0,1]");
}

// Sorted band samples on the midpoint k-grid plus prefix sums, cached per
// (dim, points-per-axis) so sweeps pay the sort once.
struct BandTable {
  std::vector<double> eps;     // ascending
  std::vector<double> prefix;  // prefix[m] = sum of m smallest
};

const BandTable& band_table(int dim, int n) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<BandTable>> cache;
  std::scoped_lock lock(mutex);
  auto& slot = cache[{dim, n}];
  if (!slot) {
    auto table = std::make_unique<BandTable>();
    const double step = 2.0 * std::numbers::pi / n;
    std::vector<double> cosines(n);
    for (int i = 0; i < n; ++i) {
      const double k = -std::numbers::pi + (i + 0.5) * step;
      cosines[i] = -2.0 * std::cos(k);
    }
    if (dim == 1) {
      table->eps = cosines;
    } else {
      table->eps.reserve(static_cast<std::size_t>(n) * n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) table->eps.push_back(cosines[i] + cosines[j]);
      }
    }
    std::sort(table->eps.begin(), table->eps.end());
    table->prefix.assign(table->eps.size() + 1, 0.0);
    for (std::size_t i = 0; i < table->eps.size(); ++i) {
      table->prefix[i + 1] = table->prefix[i] + table->eps[i];
    }
    slot = std::move(table);
  }
  return *slot;
}

double fermi_at(int dim, double rho_e, int n) {
  const BandTable& table = band_table(dim, n);
  const std::size_t total = table.eps.size();
  const std::size_t m = static_cast<std::size_t>(std::llround(rho_e * total));
  if (m == 0) return -2.0 * dim;
  if (m >= total) return 2.0 * dim;
  return 0.5 * (table.eps[m - 1] + table.eps[m]);
}

double energy_at(int dim, double rho_e, int n) {
  const BandTable& table = band_table(dim, n);
  const std::size_t total = table.eps.size();
  const std::size_t m = static_cast<std::size_t>(std::llround(rho_e * total));
  return table.prefix[m] / total;
}

}  // namespace

double fermi_energy(int dim, double rho_e, int resolution) {
  validate(dim, rho_e);
  const int n = resolution > 0 ? resolution : default_resolution(dim);
  const double coarse = fermi_at(dim, rho_e, n);
  const double fine = fermi_at(dim, rho_e, 2 * n);
  if (std::abs(fine - coarse) >= kRichardsonTol) {
    throw std::runtime_error("fermi_energy quadrature did not stabilize; raise resolution");
  }
  return fine;
}

double free_electron_energy_density(int dim, double rho_e, int resolution) {
  validate(dim, rho_e);
  const int n = resolution > 0 ? resolution : default_resolution(dim);
  const double coarse = energy_at(dim, rho_e, n);
  const double fine = energy_at(dim, rho_e, 2 * n);
  if (std::abs(fine - coarse) >= kRichardsonTol) {
    throw std::runtime_error("band quadrature did not stabilize; raise resolution");
  }
  return fine;
}

double full_config_energy_density(int dim, double rho_e, double coupling, int resolution) {
  return free_electron_energy_density(dim, rho_e, resolution) - coupling * rho_e;
}

}  // namespace fk
