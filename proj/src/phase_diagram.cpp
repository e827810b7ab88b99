#include "fk/phase_diagram.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include "fk/band.hpp"
#include "fk/parallel.hpp"
#include "fk/symmetry.hpp"

namespace fk {

namespace {

constexpr double kDegeneracyTol = 1e-9;      // per site, winner ties
constexpr double kSegregationTol = 2e-3;     // finite-size allowance for the seg check
constexpr double kDualGapTol = 1e-6;         // pure/pair value vs dual certificate

std::vector<int> fitted_volume(const PeriodicPattern& pattern, int dim, int target) {
  if (target <= 0) target = (dim == 1) ? 128 : 12;
  std::vector<int> volume(dim);
  for (int nu = 0; nu < dim; ++nu) {
    const int cell = pattern.cell[nu];
    volume[nu] = std::max(cell, (target / cell) * cell);
    if (volume[nu] < 2) volume[nu] = 2 * cell;
  }
  return volume;
}

}  // namespace

std::vector<CandidateTable> prepare_candidates(const std::vector<PeriodicPattern>& patterns,
                                               double coupling, int dim, int volume_target,
                                               unsigned jobs) {
  if (patterns.empty()) throw std::invalid_argument("candidate set must be nonempty");
  std::vector<CandidateTable> tables(patterns.size());
  parallel_for(patterns.size(), jobs, [&](std::size_t i) {
    const PeriodicPattern& pattern = patterns[i];
    CandidateTable entry;
    entry.pattern = pattern;
    entry.label = pattern.label();
    entry.volume = fitted_volume(pattern, dim, volume_target);
    auto lattice = make_lattice(dim, entry.volume, Boundary::periodic);
    const Configuration config = tile_pattern(pattern, lattice);
    entry.table = make_table(spectrum_of(config, coupling));
    entry.rho_c = pattern.density();
    tables[i] = std::move(entry);
  });
  return tables;
}

PatternEnergyResult pattern_gc_energy_density(const PeriodicPattern& pattern,
                                              double coupling, double mu_e, double mu_c,
                                              const std::vector<int>& volume) {
  auto evaluate = [&](const std::vector<int>& extents) {
    auto lattice = make_lattice(pattern.dim, extents, Boundary::periodic);
    const Configuration config = tile_pattern(pattern, lattice);
    const SpectrumTable table = make_table(spectrum_of(config, coupling));
    return table.gc_energy_per_site(mu_e, mu_c);
  };
  PatternEnergyResult result;
  result.energy_per_site = evaluate(volume);
  std::vector<int> half(volume.size());
  bool half_ok = true;
  for (std::size_t nu = 0; nu < volume.size(); ++nu) {
    half[nu] = (volume[nu] / 2 / pattern.cell[nu]) * pattern.cell[nu];
    if (half[nu] < std::max(2, pattern.cell[nu]) || half[nu] == volume[nu]) half_ok = false;
  }
  if (half_ok) {
    result.finite_size_delta = std::abs(result.energy_per_site - evaluate(half));
  }
  return result;
}

double GcGrid::mu_e_at(int i) const {
  if (mu_e_steps <= 1) return mu_e_min;
  return mu_e_min + (mu_e_max - mu_e_min) * i / (mu_e_steps - 1);
}

double GcGrid::mu_c_at(int j) const {
  if (mu_c_steps <= 1) return mu_c_min;
  return mu_c_min + (mu_c_max - mu_c_min) * j / (mu_c_steps - 1);
}

const PhaseCell& GcScanResult::cell(int i_mu_e, int j_mu_c) const {
  return cells[static_cast<std::size_t>(i_mu_e) * grid.mu_c_steps + j_mu_c];
}

std::string GcScanResult::winner_label(const PhaseCell& cell) const {
  if (cell.none_periodic_suspected) return "none-periodic";
  if (cell.winners.empty()) return "";
  return candidates[cell.winners.front().candidate].label;
}

namespace {

std::pair<std::vector<WinnerEntry>, double> winners_at(
    const std::vector<CandidateTable>& candidates, double mu_e, double mu_c) {
  double best = std::numeric_limits<double>::infinity();
  for (const CandidateTable& cand : candidates) {
    best = std::min(best, cand.table.gc_energy_per_site(mu_e, mu_c));
  }
  std::vector<WinnerEntry> winners;
  for (int i = 0; i < static_cast<int>(candidates.size()); ++i) {
    const double e = candidates[i].table.gc_energy_per_site(mu_e, mu_c);
    if (e <= best + kDegeneracyTol) {
      winners.push_back({i, candidates[i].table.count_below(mu_e)});
    }
  }
  return {winners, best};
}

}  // namespace

GcScanResult gc_scan(const GcGrid& grid, const std::vector<CandidateTable>& candidates,
                     double coupling, int dim, unsigned jobs) {
  if (candidates.empty()) throw std::invalid_argument("candidate set must be nonempty");
  if (grid.mu_e_steps < 1 || grid.mu_c_steps < 1) {
    throw std::invalid_argument("grid must have at least one point per axis");
  }
  GcScanResult result;
  result.grid = grid;
  result.candidates = candidates;
  result.coupling = coupling;
  result.dim = dim;
  result.cells.resize(static_cast<std::size_t>(grid.mu_e_steps) * grid.mu_c_steps);

  // Warm the cached band tables before the parallel region.
  free_electron_energy_density(dim, 0.5);

  parallel_for(result.cells.size(), jobs, [&](std::size_t idx) {
    const int ie = static_cast<int>(idx) / grid.mu_c_steps;
    const int jc = static_cast<int>(idx) % grid.mu_c_steps;
    PhaseCell cell;
    cell.mu_e = grid.mu_e_at(ie);
    cell.mu_c = grid.mu_c_at(jc);
    auto [winners, best] = winners_at(candidates, cell.mu_e, cell.mu_c);
    cell.winners = std::move(winners);
    cell.energy_per_site = best;
    cell.degenerate = cell.winners.size() > 1;

    const CandidateTable& top = candidates[cell.winners.front().candidate];
    const double rho_e = static_cast<double>(cell.winners.front().electrons) / top.table.n_sites;
    const double rho_c = top.rho_c;
    const double eps = 1e-9;
    if (rho_e > eps && rho_e < 1.0 - eps && rho_c > eps && rho_c < 1.0 - eps &&
        std::abs(rho_e - rho_c) > eps) {
      const double winner_canonical = top.table.canonical_energy_per_site(rho_e);
      const double seg = segregated_energy_general(rho_e, rho_c, coupling, dim);
      if (seg < winner_canonical - kSegregationTol) cell.none_periodic_suspected = true;
    }
    result.cells[idx] = std::move(cell);
  });
  return result;
}

bool gap_line_invariance_check(const std::vector<CandidateTable>& candidates,
                               double coupling, int dim, double line_constant,
                               const std::vector<double>& mu_e_samples, double shift) {
  if (coupling <= 4.0 * dim) {
    throw std::invalid_argument("gap-line check requires U > 4d");
  }
  const double gap_lo = -coupling + 2.0 * dim;
  const double gap_hi = -2.0 * dim;
  for (double mu_e : mu_e_samples) {
    for (double m : {mu_e, mu_e + shift}) {
      if (m <= gap_lo || m >= gap_hi) {
        throw std::invalid_argument("sample outside the universal gap");
      }
    }
  }
  for (double mu_e : mu_e_samples) {
    auto [a, ea] = winners_at(candidates, mu_e, line_constant - mu_e);
    auto [b, eb] = winners_at(candidates, mu_e + shift, line_constant - mu_e - shift);
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k].candidate != b[k].candidate) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Canonical convex envelope
// ---------------------------------------------------------------------------

namespace {

struct PairSolution {
  double energy = std::numeric_limits<double>::infinity();
  int first = -1, second = -1;
  double alpha = 0.0;       // weight of `first`
  double lambda_star = 0.0; // common chemical potential
  double xi_first = 0.0, xi_second = 0.0;
};

// Fills alpha of A and (1-alpha) of B with a common chemical potential so the
// combined electron density equals rho_e; returns the mixture energy per
// site. The density is a nondecreasing step function of mu_e, so the crossing
// sits at an eigenvalue, with fractional filling of that level.
PairSolution solve_pair(const CandidateTable& a, const CandidateTable& b, int ia_idx,
                        int ib_idx, double alpha, double rho_e) {
  PairSolution out;
  out.first = ia_idx;
  out.second = ib_idx;
  out.alpha = alpha;

  const std::vector<double>& va = a.table.values;
  const std::vector<double>& vb = b.table.values;
  const double wa = alpha / a.table.n_sites;
  const double wb = (1.0 - alpha) / b.table.n_sites;

  std::size_t ia = 0, ib = 0;
  double below = 0.0;
  while (ia < va.size() || ib < vb.size()) {
    double lam;
    if (ia == va.size()) {
      lam = vb[ib];
    } else if (ib == vb.size()) {
      lam = va[ia];
    } else {
      lam = std::min(va[ia], vb[ib]);
    }
    std::size_t ca = 0, cb = 0;
    while (ia + ca < va.size() && va[ia + ca] == lam) ++ca;
    while (ib + cb < vb.size() && vb[ib + cb] == lam) ++cb;
    const double jump = wa * ca + wb * cb;
    const bool last = (ia + ca == va.size() && ib + cb == vb.size());
    if (below + jump >= rho_e - 1e-14 || last) {
      const double f = std::clamp(rho_e - below, 0.0, jump);
      out.energy = alpha * a.table.prefix[ia] / a.table.n_sites +
                   (1.0 - alpha) * b.table.prefix[ib] / b.table.n_sites + f * lam;
      out.lambda_star = lam;
      const double cap_a = wa * ca;
      const double fa = std::min(f, cap_a);
      const double fb = f - fa;
      out.xi_first = static_cast<double>(ia) / a.table.n_sites +
                     (alpha > 1e-15 ? fa / alpha : 0.0);
      out.xi_second = static_cast<double>(ib) / b.table.n_sites +
                      ((1.0 - alpha) > 1e-15 ? fb / (1.0 - alpha) : 0.0);
      return out;
    }
    below += jump;
    ia += ca;
    ib += cb;
  }
  return out;
}

struct DualPoint {
  double value = -std::numeric_limits<double>::infinity();
  double mu_e = 0.0;
  double mu_c = 0.0;
};

// Supporting-plane dual: maximize over (mu_e, mu_c) the minimum candidate gc
// energy plus mu_e rho_e + mu_c rho_c. Jointly concave and piecewise linear;
// nested ternary searches converge on such functions.
DualPoint hull_dual(const std::vector<CandidateTable>& candidates, double rho_e,
                    double rho_c) {
  double lam_lo = std::numeric_limits<double>::infinity();
  double lam_hi = -std::numeric_limits<double>::infinity();
  for (const CandidateTable& cand : candidates) {
    lam_lo = std::min(lam_lo, cand.table.values.front());
    lam_hi = std::max(lam_hi, cand.table.values.back());
  }
  const double mu_e_lo = lam_lo - 1.0;
  const double mu_e_hi = lam_hi + 1.0;
  const double mu_c_range = 200.0 * (1.0 + std::max(std::abs(lam_lo), std::abs(lam_hi)));

  auto psi = [&](double mu_e, double mu_c) {
    double v = std::numeric_limits<double>::infinity();
    for (const CandidateTable& cand : candidates) {
      v = std::min(v, cand.table.gc_energy_per_site(mu_e, mu_c));
    }
    return v + mu_e * rho_e + mu_c * rho_c;
  };

  auto inner_max = [&](double mu_c) {
    double lo = mu_e_lo, hi = mu_e_hi;
    for (int it = 0; it < 240; ++it) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      const double f1 = psi(m1, mu_c);
      const double f2 = psi(m2, mu_c);
      if (f1 < f2) {
        lo = m1;
      } else if (f1 > f2) {
        hi = m2;
      } else {
        lo = m1;
        hi = m2;
      }
    }
    const double mu_e = 0.5 * (lo + hi);
    return std::make_pair(psi(mu_e, mu_c), mu_e);
  };

  double lo = -mu_c_range, hi = mu_c_range;
  for (int it = 0; it < 260; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    const double f1 = inner_max(m1).first;
    const double f2 = inner_max(m2).first;
    if (f1 < f2) {
      lo = m1;
    } else if (f1 > f2) {
      hi = m2;
    } else {
      lo = m1;
      hi = m2;
    }
  }
  DualPoint point;
  point.mu_c = 0.5 * (lo + hi);
  auto [value, mu_e] = inner_max(point.mu_c);
  point.value = value;
  point.mu_e = mu_e;
  return point;
}

// Electron-density interval available to a candidate at chemical potential
// mu_e: strictly-below count up to count including levels within `snap`.
std::pair<double, double> density_interval(const CandidateTable& cand, double mu_e,
                                           double snap) {
  const auto& v = cand.table.values;
  const auto lo_it = std::lower_bound(v.begin(), v.end(), mu_e - snap);
  const auto hi_it = std::upper_bound(v.begin(), v.end(), mu_e + snap);
  const double n = cand.table.n_sites;
  return {static_cast<double>(lo_it - v.begin()) / n,
          static_cast<double>(hi_it - v.begin()) / n};
}

double interval_energy(const CandidateTable& cand, double xi) {
  return cand.table.canonical_energy_per_site(xi);
}

std::optional<HullResult> solve_triple(const std::vector<CandidateTable>& candidates,
                                       const std::vector<int>& support, double mu_e_star,
                                       double rho_e, double rho_c) {
  const double snap = 1e-7;
  for (std::size_t x = 0; x < support.size(); ++x) {
    for (std::size_t y = x + 1; y < support.size(); ++y) {
      for (std::size_t z = y + 1; z < support.size(); ++z) {
        const int ids[3] = {support[x], support[y], support[z]};
        const CandidateTable* c[3] = {&candidates[ids[0]], &candidates[ids[1]],
                                      &candidates[ids[2]]};
        const double rc[3] = {c[0]->rho_c, c[1]->rho_c, c[2]->rho_c};
        if (std::abs(rc[0] - rc[1]) < 1e-15) continue;
        // alpha_2 = t parametrizes the weight line; alpha_0, alpha_1 follow
        // from the normalization and the rho_c constraint.
        auto alpha_at = [&](double t) {
          const double a0 = ((rho_c - rc[2] * t) - rc[1] * (1.0 - t)) / (rc[0] - rc[1]);
          const double a1 = (1.0 - t) - a0;
          return std::array<double, 3>{a0, a1, t};
        };
        double lo_i[3], hi_i[3];
        for (int k = 0; k < 3; ++k) {
          auto [lo, hi] = density_interval(*c[k], mu_e_star, snap);
          lo_i[k] = lo;
          hi_i[k] = hi;
        }
        // Scan t for a point with alpha >= 0 and rho_e within the reachable
        // electron range.
        const int steps = 20000;
        for (int s = 0; s <= steps; ++s) {
          const double t = static_cast<double>(s) / steps;
          const auto alpha = alpha_at(t);
          if (alpha[0] < -1e-10 || alpha[1] < -1e-10 || alpha[2] < -1e-10) continue;
          double g_lo = 0.0, g_hi = 0.0;
          for (int k = 0; k < 3; ++k) {
            g_lo += alpha[k] * lo_i[k];
            g_hi += alpha[k] * hi_i[k];
          }
          if (rho_e < g_lo - 1e-10 || rho_e > g_hi + 1e-10) continue;
          // Distribute the fractional filling greedily over the members.
          double remaining = std::clamp(rho_e - g_lo, 0.0, g_hi - g_lo);
          HullResult out;
          out.mu_e = mu_e_star;
          double energy = 0.0;
          for (int k = 0; k < 3; ++k) {
            const double cap = alpha[k] * (hi_i[k] - lo_i[k]);
            const double take = std::min(remaining, cap);
            remaining -= take;
            const double xi = lo_i[k] + (alpha[k] > 1e-15 ? take / alpha[k] : 0.0);
            if (alpha[k] > 1e-12) {
              out.components.push_back({alpha[k], c[k]->pattern, xi});
              energy += alpha[k] * interval_energy(*c[k], xi);
            }
          }
          out.energy_per_site = energy;
          return out;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

HullResult canonical_hull(double rho_e, double rho_c,
                          const std::vector<CandidateTable>& candidates) {
  if (candidates.empty()) throw std::invalid_argument("candidate set must be nonempty");
  if (rho_e < -1e-12 || rho_e > 1.0 + 1e-12 || rho_c < -1e-12 || rho_c > 1.0 + 1e-12) {
    throw std::invalid_argument("densities must lie in [0,1]");
  }
  rho_e = std::clamp(rho_e, 0.0, 1.0);
  rho_c = std::clamp(rho_c, 0.0, 1.0);
  double rc_min = 1.0, rc_max = 0.0;
  for (const CandidateTable& cand : candidates) {
    rc_min = std::min(rc_min, cand.rho_c);
    rc_max = std::max(rc_max, cand.rho_c);
  }
  if (rho_c < rc_min - 1e-12 || rho_c > rc_max + 1e-12) {
    throw std::invalid_argument("rho_c outside the candidate density hull");
  }

  // Pure candidates at matching classical density.
  double best_pure = std::numeric_limits<double>::infinity();
  int pure_idx = -1;
  for (int i = 0; i < static_cast<int>(candidates.size()); ++i) {
    if (std::abs(candidates[i].rho_c - rho_c) > 1e-12) continue;
    const double e = candidates[i].table.canonical_energy_per_site(rho_e);
    if (e < best_pure) {
      best_pure = e;
      pure_idx = i;
    }
  }

  // Two-component mixtures with the equal-chemical-potential split.
  PairSolution best_pair;
  for (int i = 0; i < static_cast<int>(candidates.size()); ++i) {
    for (int j = i + 1; j < static_cast<int>(candidates.size()); ++j) {
      const double rci = candidates[i].rho_c;
      const double rcj = candidates[j].rho_c;
      if (std::abs(rci - rcj) < 1e-12) continue;
      double alpha = (rho_c - rcj) / (rci - rcj);
      if (alpha < -1e-12 || alpha > 1.0 + 1e-12) continue;
      alpha = std::clamp(alpha, 0.0, 1.0);
      PairSolution sol = solve_pair(candidates[i], candidates[j], i, j, alpha, rho_e);
      if (sol.energy < best_pair.energy) best_pair = sol;
    }
  }

  const DualPoint dual = hull_dual(candidates, rho_e, rho_c);
  const double best = std::min(best_pure, best_pair.energy);

  HullResult result;
  result.dual_energy = dual.value;

  if (best <= dual.value + kDualGapTol) {
    const double tie = 1e-10 * (1.0 + std::abs(best));
    if (pure_idx >= 0 && best_pure <= best_pair.energy + tie) {
      result.components.push_back({1.0, candidates[pure_idx].pattern, rho_e});
      result.energy_per_site = best_pure;
      result.mu_e = dual.mu_e;
      return result;
    }
    // Degenerate pair weights collapse to a pure component.
    if (best_pair.alpha >= 1.0 - 1e-12 || best_pair.alpha <= 1e-12) {
      const int idx = best_pair.alpha >= 0.5 ? best_pair.first : best_pair.second;
      result.components.push_back({1.0, candidates[idx].pattern, rho_e});
      result.energy_per_site = best_pair.energy;
      result.mu_e = best_pair.lambda_star;
      return result;
    }
    result.components.push_back(
        {best_pair.alpha, candidates[best_pair.first].pattern, best_pair.xi_first});
    result.components.push_back({1.0 - best_pair.alpha,
                                 candidates[best_pair.second].pattern,
                                 best_pair.xi_second});
    result.energy_per_site = best_pair.energy;
    result.mu_e = best_pair.lambda_star;
    return result;
  }

  // Three-phase point: assemble weights from the dual support.
  std::vector<int> support;
  {
    double v_min = std::numeric_limits<double>::infinity();
    std::vector<double> v(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      v[i] = candidates[i].table.gc_energy_per_site(dual.mu_e, dual.mu_c);
      v_min = std::min(v_min, v[i]);
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (v[i] <= v_min + 1e-5 * (1.0 + std::abs(v_min))) {
        support.push_back(static_cast<int>(i));
      }
    }
  }
  // Snap the dual chemical potential onto the nearest eigenvalue so the
  // fractional-filling intervals open up.
  double snapped = dual.mu_e;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int idx : support) {
    for (double lam : candidates[idx].table.values) {
      const double dist = std::abs(lam - dual.mu_e);
      if (dist < best_dist) {
        best_dist = dist;
        snapped = lam;
      }
    }
  }
  if (auto triple = solve_triple(candidates, support, snapped, rho_e, rho_c)) {
    triple->dual_energy = dual.value;
    return *triple;
  }
  throw std::runtime_error("canonical_hull: unresolved coexistence point");
}

double segregated_energy(double rho_e, double rho_c, double coupling, int dim) {
  if (rho_c < 0.0 || rho_c > 1.0 || rho_e < 0.0) {
    throw std::invalid_argument("densities out of range");
  }
  if (rho_e > rho_c + 1e-12) {
    throw std::invalid_argument("segregated energy requires rho_e <= rho_c");
  }
  if (rho_c <= 0.0) return 0.0;
  const double rho = std::min(rho_e / rho_c, 1.0);
  return rho_c * full_config_energy_density(dim, rho, coupling);
}

double segregated_energy_general(double rho_e, double rho_c, double coupling, int dim) {
  if (rho_e <= rho_c + 1e-12) {
    return segregated_energy(std::min(rho_e, rho_c), rho_c, coupling, dim);
  }
  return segregated_energy(1.0 - rho_e, 1.0 - rho_c, coupling, dim) +
         coupling * (rho_e + rho_c - 1.0);
}

namespace {

bool occupied_set_connected(const Configuration& config) {
  const Lattice& lat = config.lattice();
  int start = -1;
  int total = 0;
  for (int site = 0; site < lat.size(); ++site) {
    if (config.occupied(site)) {
      if (start < 0) start = site;
      ++total;
    }
  }
  if (total == 0) return true;
  std::vector<char> seen(lat.size(), 0);
  std::queue<int> frontier;
  frontier.push(start);
  seen[start] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    const int site = frontier.front();
    frontier.pop();
    for (int nb : lat.neighbors(site)) {
      if (config.occupied(nb) && !seen[nb]) {
        seen[nb] = 1;
        ++reached;
        frontier.push(nb);
      }
    }
  }
  return reached == total;
}

}  // namespace

SegregationWitness segregation_check(std::shared_ptr<const Lattice> lattice, int n_e,
                                     int n_c, double coupling) {
  if (lattice->size() > 20) {
    throw std::invalid_argument("segregation check capped at 20 sites");
  }
  if (n_e > n_c) throw std::invalid_argument("segregation check requires n_e <= n_c");

  SegregationWitness witness;
  double min_energy = std::numeric_limits<double>::infinity();
  double best_noncontig = std::numeric_limits<double>::infinity();
  double best_periodic = std::numeric_limits<double>::infinity();
  int ties = 0;
  std::string min_string;

  EnumerationOptions options;
  options.particle_count = n_c;
  options.site_cap = 20;
  enumerate_configurations(lattice, options, [&](const Configuration& config) {
    ++witness.configs_checked;
    const double energy = canonical_energy(spectrum_of(config, coupling), n_e);
    const double tol = 1e-9 * (1.0 + std::abs(min_energy));
    if (energy < min_energy - tol) {
      min_energy = energy;
      min_string = config.to_string();
      witness.contiguous = occupied_set_connected(config);
      ties = 1;
    } else if (energy < min_energy + tol) {
      ++ties;
    }
    if (!occupied_set_connected(config)) {
      best_noncontig = std::min(best_noncontig, energy);
    }
    if (is_periodic_config(config)) {
      best_periodic = std::min(best_periodic, energy);
    }
  });

  witness.minimizer = min_string;
  witness.min_energy = min_energy;
  witness.degenerate = ties > 1;
  witness.best_noncontiguous_energy = best_noncontig;
  witness.noncontiguous_margin = best_noncontig - min_energy;
  witness.best_periodic_energy = best_periodic;
  witness.periodic_margin = best_periodic - min_energy;
  return witness;
}

Theorem1Bounds theorem1_upper_check(const Configuration& config, int n_e, double coupling) {
  const int dim = config.lattice().dim();
  if (coupling <= 4.0 * dim) throw std::invalid_argument("requires U > 4d");
  const int n_c = config.particle_count();
  if (n_c == 0 || n_e > n_c) {
    throw std::invalid_argument("requires 0 < n_e <= n_c");
  }
  const double rho = static_cast<double>(n_e) / n_c;
  const double e_full = full_config_energy_density(dim, rho, coupling);
  const double b = static_cast<double>(boundary_count(config));
  Theorem1Bounds bounds;
  bounds.lhs = std::abs(e_full) * b / (2.0 * dim);
  const double energy = canonical_energy(spectrum_of(config, coupling), n_e);
  bounds.rhs = energy - n_c * e_full;
  bounds.holds = bounds.lhs >= bounds.rhs - 1e-9 * (1.0 + std::abs(bounds.rhs));
  return bounds;
}

namespace {

// Exact rational density of a winner: numerator per candidate volume.
struct RationalDensity {
  long long num = 0;
  long long den = 1;
};

bool rational_less(const RationalDensity& a, const RationalDensity& b) {
  return a.num * b.den < b.num * a.den;
}

bool disjoint(const std::vector<WinnerEntry>& a, const std::vector<WinnerEntry>& b) {
  for (const auto& x : a) {
    for (const auto& y : b) {
      if (x.candidate == y.candidate) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<std::string> monotonicity_audit(const GcScanResult& scan) {
  std::vector<std::string> violations;
  const auto& grid = scan.grid;

  auto rho_c_of = [&](const WinnerEntry& w) {
    const auto& cand = scan.candidates[w.candidate];
    RationalDensity r;
    r.num = cand.table.n_classical;
    r.den = cand.table.n_sites;
    return r;
  };
  auto rho_e_of = [&](const WinnerEntry& w) {
    RationalDensity r;
    r.num = w.electrons;
    r.den = scan.candidates[w.candidate].table.n_sites;
    return r;
  };

  int full_idx = -1, empty_idx = -1;
  for (int i = 0; i < static_cast<int>(scan.candidates.size()); ++i) {
    if (scan.candidates[i].table.n_classical == scan.candidates[i].table.n_sites) {
      full_idx = i;
    }
    if (scan.candidates[i].table.n_classical == 0) empty_idx = i;
  }
  auto contains = [](const std::vector<WinnerEntry>& winners, int idx) {
    for (const auto& w : winners) {
      if (w.candidate == idx) return true;
    }
    return false;
  };

  for (int ie = 0; ie < grid.mu_e_steps; ++ie) {
    for (int jc = 0; jc + 1 < grid.mu_c_steps; ++jc) {
      const PhaseCell& a = scan.cell(ie, jc);
      const PhaseCell& b = scan.cell(ie, jc + 1);
      if (disjoint(a.winners, b.winners)) {
        RationalDensity max_a = rho_c_of(a.winners.front());
        for (const auto& w : a.winners) {
          if (rational_less(max_a, rho_c_of(w))) max_a = rho_c_of(w);
        }
        RationalDensity min_b = rho_c_of(b.winners.front());
        for (const auto& w : b.winners) {
          if (rational_less(rho_c_of(w), min_b)) min_b = rho_c_of(w);
        }
        if (rational_less(min_b, max_a)) {
          violations.push_back("rho_c decreases in mu_c at mu_e index " +
                               std::to_string(ie) + ", mu_c index " + std::to_string(jc));
        }
      }
      if (full_idx >= 0 && contains(a.winners, full_idx) && !contains(b.winners, full_idx)) {
        violations.push_back("full configuration not persistent in mu_c at indices (" +
                             std::to_string(ie) + "," + std::to_string(jc) + ")");
      }
      if (empty_idx >= 0 && contains(b.winners, empty_idx) &&
          !contains(a.winners, empty_idx)) {
        violations.push_back("empty configuration not persistent in -mu_c at indices (" +
                             std::to_string(ie) + "," + std::to_string(jc + 1) + ")");
      }
    }
  }

  for (int jc = 0; jc < grid.mu_c_steps; ++jc) {
    for (int ie = 0; ie + 1 < grid.mu_e_steps; ++ie) {
      const PhaseCell& a = scan.cell(ie, jc);
      const PhaseCell& b = scan.cell(ie + 1, jc);
      if (disjoint(a.winners, b.winners)) {
        RationalDensity max_a = rho_e_of(a.winners.front());
        for (const auto& w : a.winners) {
          if (rational_less(max_a, rho_e_of(w))) max_a = rho_e_of(w);
        }
        RationalDensity min_b = rho_e_of(b.winners.front());
        for (const auto& w : b.winners) {
          if (rational_less(rho_e_of(w), min_b)) min_b = rho_e_of(w);
        }
        if (rational_less(min_b, max_a)) {
          violations.push_back("rho_e decreases in mu_e at mu_e index " +
                               std::to_string(ie) + ", mu_c index " + std::to_string(jc));
        }
      }
      if (full_idx >= 0 && contains(a.winners, full_idx) && !contains(b.winners, full_idx)) {
        violations.push_back("full configuration not persistent in mu_e at indices (" +
                             std::to_string(ie) + "," + std::to_string(jc) + ")");
      }
      if (empty_idx >= 0 && contains(b.winners, empty_idx) &&
          !contains(a.winners, empty_idx)) {
        violations.push_back("empty configuration not persistent in -mu_e at indices (" +
                             std::to_string(ie + 1) + "," + std::to_string(jc) + ")");
      }
    }
  }
  return violations;
}

bool canonical_consistency_check(const GcScanResult& scan, const PhaseCell& cell) {
  if (cell.winners.empty()) return false;
  const WinnerEntry& top = cell.winners.front();
  const CandidateTable& cand = scan.candidates[top.candidate];
  const double rho_e = static_cast<double>(top.electrons) / cand.table.n_sites;
  const HullResult hull = canonical_hull(rho_e, cand.rho_c, scan.candidates);
  return hull.is_pure() && hull.components.front().pattern == cand.pattern;
}

}  // namespace fk
