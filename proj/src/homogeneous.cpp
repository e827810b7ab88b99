#include "fk/homogeneous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>

#include "fk/spectral.hpp"
#include "fk/symmetry.hpp"

namespace fk {

namespace {

long mod_inverse(long a, long m) {
  long t = 0, new_t = 1;
  long r = m, new_r = ((a % m) + m) % m;
  while (new_r != 0) {
    const long quotient = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - quotient * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - quotient * new_r);
  }
  if (r != 1) throw std::invalid_argument("modular inverse does not exist");
  return ((t % m) + m) % m;
}

std::vector<long> occupied_sites(const PeriodicPattern& pattern) {
  if (pattern.dim != 1) throw std::invalid_argument("one-dimensional pattern required");
  std::vector<long> sites;
  for (std::size_t i = 0; i < pattern.occ.size(); ++i) {
    if (pattern.occ[i]) sites.push_back(static_cast<long>(i));
  }
  return sites;
}

std::string canonical_cycle(const std::string& bits) {
  std::string best = bits;
  const int n = static_cast<int>(bits.size());
  std::string forward = bits, reverse(bits.rbegin(), bits.rend());
  for (int shift = 0; shift < n; ++shift) {
    std::string f = forward.substr(shift) + forward.substr(0, shift);
    std::string r = reverse.substr(shift) + reverse.substr(0, shift);
    if (f < best) best = f;
    if (r < best) best = r;
  }
  return best;
}

}  // namespace

Fraction make_fraction(long p, long q) {
  if (p < 1 || q < 1 || p > q) throw std::invalid_argument("need 1 <= p <= q");
  if (std::gcd(p, q) != 1) throw std::invalid_argument("p and q must be coprime");
  Fraction f;
  f.p = p;
  f.q = q;
  f.ell = q / p;
  if (p >= 2) {
    f.s = (f.ell + 1) * p - q;
    f.has_ls = true;
    if (f.s < 1 || f.s > p - 1) throw std::logic_error("invalid (l, s) decomposition");
  }
  return f;
}

std::vector<long> formula_sites(long p, long q, long r) {
  if (r < 1 || r > q) throw std::invalid_argument("need 1 <= r <= q");
  if (std::gcd(p, q) != 1) throw std::invalid_argument("p and q must be coprime");
  const long inv = (q == 1) ? 0 : mod_inverse(p, q);
  std::vector<long> sites(r);
  for (long j = 0; j < r; ++j) sites[j] = (j * inv) % q;
  return sites;
}

PeriodicPattern most_homogeneous_config(long p, long q, long r) {
  const std::vector<long> sites = formula_sites(p, q, r);
  PeriodicPattern pattern;
  pattern.dim = 1;
  pattern.cell = {static_cast<int>(q)};
  pattern.occ.assign(q, 0);
  for (long site : sites) pattern.occ[site] = 1;
  return pattern;
}

std::vector<int> gap_profile(const PeriodicPattern& pattern) {
  const std::vector<long> sites = occupied_sites(pattern);
  if (sites.empty()) throw std::invalid_argument("gap profile of an empty pattern");
  const long q = pattern.cell[0];
  std::vector<int> gaps(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const long prev = (i == 0) ? sites.back() - q : sites[i - 1];
    gaps[i] = static_cast<int>(sites[i] - prev);
  }
  return gaps;
}

bool is_homogeneous(const PeriodicPattern& pattern) {
  const std::vector<long> sites = occupied_sites(pattern);
  if (sites.empty()) return true;
  const std::vector<int> gaps = gap_profile(pattern);
  const auto [lo, hi] = std::minmax_element(gaps.begin(), gaps.end());
  return *hi - *lo <= 1;
}

PeriodicPattern derivative(const PeriodicPattern& pattern) {
  const std::vector<int> gaps = gap_profile(pattern);
  const auto [lo, hi] = std::minmax_element(gaps.begin(), gaps.end());
  if (*hi - *lo > 1) {
    throw std::invalid_argument("derivative requires a homogeneous pattern");
  }
  const int ell = *lo;
  PeriodicPattern out;
  out.dim = 1;
  out.cell = {static_cast<int>(gaps.size())};
  out.occ.reserve(gaps.size());
  for (int gap : gaps) out.occ.push_back(gap == ell ? 1 : 0);
  return out;
}

bool is_most_homogeneous(const PeriodicPattern& pattern) {
  PeriodicPattern current = pattern;
  while (true) {
    const int count = current.particle_count();
    if (count == 0 || count == current.cell_volume()) return true;
    if (!is_homogeneous(current)) return false;
    current = derivative(current);
  }
}

std::complex<double> structure_factor(const PeriodicPattern& pattern, long rho_num,
                                      long rho_den) {
  if (pattern.dim != 1) throw std::invalid_argument("one-dimensional pattern required");
  if (rho_den < 1) throw std::invalid_argument("density denominator must be positive");
  const long g = std::gcd(std::abs(rho_num), rho_den);
  const long num = rho_num / g;
  const long den = rho_den / g;
  const long total = static_cast<long>(pattern.multiplicity) * pattern.cell[0];
  if (total % den != 0) {
    throw std::invalid_argument("density denominator must divide the super-cell period");
  }
  std::complex<double> sum = 0.0;
  const double angle_step = -2.0 * std::numbers::pi * num / den;
  for (long j = 0; j < total; ++j) {
    if (pattern.occ[j % pattern.cell[0]]) {
      sum += std::polar(1.0, angle_step * j);
    }
  }
  return sum / static_cast<double>(total);
}

double small_u_energy(long rho_num, long rho_den, const PeriodicPattern& pattern,
                      double coupling) {
  const double rho_e = static_cast<double>(rho_num) / rho_den;
  if (rho_e <= 0.0 || rho_e >= 1.0) {
    throw std::invalid_argument("small-U formula requires 0 < rho_e < 1");
  }
  const double free_term = -(2.0 / std::numbers::pi) * std::sin(std::numbers::pi * rho_e);
  if (coupling == 0.0) return free_term;
  const double w = std::abs(structure_factor(pattern, rho_num, rho_den));
  const double mean_field = -coupling * rho_e * pattern.density();
  const double log_term = -w * w /
                          (4.0 * std::numbers::pi * std::sin(std::numbers::pi * rho_e)) *
                          coupling * coupling * std::abs(std::log(coupling));
  return free_term + mean_field + log_term;
}

std::vector<PeriodicPattern> maximize_structure_factor(long q, long p, long r) {
  if (q > 20) throw std::invalid_argument("brute force capped at q <= 20");
  if (r < 0 || r > q) throw std::invalid_argument("particle count out of range");
  if (std::gcd(p, q) != 1) throw std::invalid_argument("p and q must be coprime");

  double best = -1.0;
  std::set<std::string> winners;
  std::vector<int> pos(r);
  for (long i = 0; i < r; ++i) pos[i] = static_cast<int>(i);
  const double tol = 1e-12;
  auto visit = [&](const std::vector<int>& chosen) {
    std::string bits(q, '0');
    for (int site : chosen) bits[site] = '1';
    PeriodicPattern pattern = make_pattern_1d(bits);
    const double value = std::abs(structure_factor(pattern, p, q));
    if (value > best + tol) {
      best = value;
      winners.clear();
      winners.insert(canonical_cycle(bits));
    } else if (value > best - tol) {
      winners.insert(canonical_cycle(bits));
    }
  };
  if (r == 0) {
    visit({});
  } else {
    while (true) {
      visit(pos);
      int i = static_cast<int>(r) - 1;
      while (i >= 0 && pos[i] == q - static_cast<int>(r) + i) --i;
      if (i < 0) break;
      ++pos[i];
      for (int j = i + 1; j < static_cast<int>(r); ++j) pos[j] = pos[j - 1] + 1;
    }
  }
  std::vector<PeriodicPattern> out;
  out.reserve(winners.size());
  for (const std::string& bits : winners) out.push_back(make_pattern_1d(bits));
  return out;
}

namespace {

double pair_energy(int chain_length, int site_a, int site_b, double coupling) {
  auto lattice = make_lattice(1, {chain_length}, Boundary::open);
  std::vector<std::uint8_t> occ(chain_length, 0);
  occ[site_a] = 1;
  occ[site_b] = 1;
  const Spectrum s = spectrum_of(Configuration(lattice, std::move(occ)), coupling);
  return canonical_energy(s, 2);
}

}  // namespace

double molecule_threshold(int chain_length, double u_lo, double u_hi, double u_tol) {
  if (chain_length < 200) throw std::invalid_argument("chain length must be >= 200");
  const int quarter = chain_length / 4;
  const int mid = chain_length / 2;
  // Separated pair at distance >= L/2 vs adjacent molecule in the middle.
  auto energy_gap = [&](double u) {
    const double separated = pair_energy(chain_length, quarter, 3 * quarter, u);
    const double molecule = pair_energy(chain_length, mid - 1, mid, u);
    return separated - molecule;
  };
  double f_lo = energy_gap(u_lo);
  double f_hi = energy_gap(u_hi);
  if (f_lo * f_hi > 0.0) {
    throw std::runtime_error("no sign change in the molecule-threshold bracket");
  }
  double lo = u_lo, hi = u_hi;
  while (hi - lo > u_tol) {
    const double mid_u = 0.5 * (lo + hi);
    const double f_mid = energy_gap(mid_u);
    if ((f_lo <= 0.0) == (f_mid <= 0.0)) {
      lo = mid_u;
      f_lo = f_mid;
    } else {
      hi = mid_u;
    }
  }
  return 0.5 * (lo + hi);
}

Theorem2Result theorem2_check(long p, long q, double coupling, int periods) {
  if (periods < 1) throw std::invalid_argument("periods must be >= 1");
  const int length = static_cast<int>(q) * periods;
  if (length > 24) throw std::invalid_argument("ring exceeds the enumeration cap");
  const int n_c = static_cast<int>(p) * periods;

  auto lattice = make_lattice(1, {length}, Boundary::periodic);
  const Configuration target = tile_pattern(most_homogeneous_config(p, q, p), lattice);
  const std::vector<std::string> orbit = orbit_strings(target);
  const std::set<std::string> orbit_set(orbit.begin(), orbit.end());

  Theorem2Result result;
  double min_energy = std::numeric_limits<double>::infinity();
  double runner_up = std::numeric_limits<double>::infinity();
  std::set<std::string> minimizers;

  EnumerationOptions options;
  options.particle_count = n_c;
  enumerate_configurations(lattice, options, [&](const Configuration& config) {
    const double energy = canonical_energy(spectrum_of(config, coupling), n_c);
    ++result.configs_checked;
    const double tol = 1e-9 * (1.0 + std::abs(min_energy));
    if (energy < min_energy - tol) {
      runner_up = min_energy;
      min_energy = energy;
      minimizers.clear();
      minimizers.insert(config.to_string());
    } else if (energy < min_energy + tol) {
      minimizers.insert(config.to_string());
    } else {
      runner_up = std::min(runner_up, energy);
    }
  });

  result.min_energy = min_energy;
  result.runner_up_energy = runner_up;
  result.matches = (minimizers == orbit_set);
  result.witness = minimizers.empty() ? "" : *minimizers.begin();
  return result;
}

}  // namespace fk
