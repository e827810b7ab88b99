#include "fk/large_u.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace fk {

namespace {

constexpr int kMaxOrderCap = 10;

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long value = 1;
  for (int i = 1; i <= k; ++i) value = value * (n - k + i) / i;
  return value;
}

void validate_expansion_input(const Configuration& config, double coupling, int kmax) {
  const Lattice& lat = config.lattice();
  if (coupling <= 4.0 * lat.dim()) {
    throw std::invalid_argument("expansion requires U > 4d");
  }
  if (lat.boundary() != Boundary::periodic) {
    throw std::invalid_argument("expansion requires a periodic lattice");
  }
  if (kmax < 2) throw std::invalid_argument("kmax must be >= 2");
  if (kmax > kMaxOrderCap) throw std::invalid_argument("kmax exceeds the order cap");
  for (int len : lat.lengths()) {
    if (2 * len <= kmax) {
      throw std::invalid_argument("lattice extent too small for the requested order");
    }
  }
}

// Depth-first enumeration of closed k-walks (x_1..x_k), consecutive sites
// adjacent and x_k adjacent to x_1, accumulating counts by the empty-site
// multiplicity m.
void count_walks(const Configuration& config, int k, std::map<int, long long>& counts) {
  const Lattice& lat = config.lattice();
  std::vector<int> walk(k);
  std::function<void(int, int)> extend = [&](int depth, int empties) {
    if (depth == k) {
      const auto& back_neighbors = lat.neighbors(walk[k - 1]);
      bool closes = false;
      for (int nb : back_neighbors) {
        if (nb == walk[0]) {
          closes = true;
          break;
        }
      }
      if (closes) ++counts[empties];
      return;
    }
    for (int nb : lat.neighbors(walk[depth - 1])) {
      walk[depth] = nb;
      extend(depth + 1, empties + (config.occupied(nb) ? 0 : 1));
    }
  };
  for (int start = 0; start < lat.size(); ++start) {
    walk[0] = start;
    extend(1, config.occupied(start) ? 0 : 1);
  }
}

}  // namespace

std::vector<WalkTerm> expansion_terms(const Configuration& config, double coupling,
                                      int kmax) {
  validate_expansion_input(config, coupling, kmax);
  std::vector<WalkTerm> terms;
  for (int k = 2; k <= kmax; ++k) {
    WalkTerm term;
    term.order = k;
    count_walks(config, k, term.walk_counts_by_m);
    double numerator = 0.0;
    for (const auto& [m, count] : term.walk_counts_by_m) {
      if (m <= 0 || m >= k) continue;
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      numerator += sign * static_cast<double>(binomial(k - 2, m - 1)) * count;
    }
    term.contribution = numerator / (k * std::pow(coupling, k - 1));
    terms.push_back(std::move(term));
  }
  return terms;
}

double expansion_energy(const Configuration& config, double coupling, int kmax) {
  double energy = -coupling * config.particle_count();
  for (const WalkTerm& term : expansion_terms(config, coupling, kmax)) {
    energy += term.contribution;
  }
  return energy;
}

double nn_effective_energy(const Configuration& config, double coupling) {
  long long differing = 0;
  for (const auto& [a, b] : config.lattice().bonds()) {
    if (config.occupied(a) != config.occupied(b)) ++differing;
  }
  return -static_cast<double>(differing) / coupling;
}

double remainder_bound(double coupling, int dim, int n_classical) {
  if (coupling <= 4.0 * dim) throw std::invalid_argument("remainder bound requires U > 4d");
  if (n_classical < 0) throw std::invalid_argument("negative particle count");
  return 2.0 * dim * n_classical / (coupling - 4.0 * dim);
}

double gamma_estimate(double coupling, int dim) {
  if (coupling <= 0.0) throw std::invalid_argument("gamma estimate requires U > 0");
  return 8.0 * dim * dim / coupling;
}

}  // namespace fk
