#include "fk/symmetry.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace fk {

TransformResult symmetry_transform(SymmetryKind kind, const Configuration& config,
                                   double coupling, double mu_e, double mu_c, int n_e) {
  const int n = config.size();
  if (n_e < 0 || n_e > n) throw std::invalid_argument("electron count out of range");
  if (kind == SymmetryKind::electron_hole || kind == SymmetryKind::joint_hole) {
    if (!config.lattice().bipartite_compatible()) {
      throw std::invalid_argument(
          "electron-hole transform requires bipartite-compatible extents");
    }
  }
  switch (kind) {
    case SymmetryKind::classical_hole:
      return {config.complement(), -coupling, mu_e + coupling, -mu_c, n_e};
    case SymmetryKind::electron_hole:
      return {config, -coupling, -mu_e, mu_c + coupling, n - n_e};
    case SymmetryKind::joint_hole:
      return {config.complement(), coupling, -mu_e - coupling, -mu_c - coupling, n - n_e};
  }
  throw std::logic_error("unreachable");
}

namespace {

std::vector<int> permutation_from_map(const Lattice& lattice,
                                      const std::function<std::vector<int>(std::vector<int>)>& f) {
  std::vector<int> perm(lattice.size());
  for (int site = 0; site < lattice.size(); ++site) {
    perm[site] = lattice.site_index(f(lattice.coords(site)));
  }
  return perm;
}

std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
  // (a o b)[i] = a[b[i]]
  std::vector<int> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

}  // namespace

std::vector<std::vector<int>> lattice_site_group(const Lattice& lattice) {
  const int d = lattice.dim();
  const auto& len = lattice.lengths();

  // Point group: identity + axis reflections; 90-degree rotations for square
  // boxes. Generated as coordinate maps, then closed under composition.
  std::vector<std::vector<int>> point;
  point.push_back(permutation_from_map(lattice, [](std::vector<int> c) { return c; }));
  if (d == 1) {
    point.push_back(permutation_from_map(
        lattice, [&](std::vector<int> c) { return std::vector<int>{len[0] - 1 - c[0]}; }));
  } else {
    std::vector<std::function<std::vector<int>(std::vector<int>)>> gens;
    gens.emplace_back([&](std::vector<int> c) {
      return std::vector<int>{len[0] - 1 - c[0], c[1]};
    });
    gens.emplace_back([&](std::vector<int> c) {
      return std::vector<int>{c[0], len[1] - 1 - c[1]};
    });
    if (len[0] == len[1]) {
      gens.emplace_back([&](std::vector<int> c) {
        return std::vector<int>{c[1], len[0] - 1 - c[0]};
      });
    }
    std::set<std::vector<int>> closure(point.begin(), point.end());
    std::vector<std::vector<int>> frontier(point);
    std::vector<std::vector<int>> gen_perms;
    gen_perms.reserve(gens.size());
    for (const auto& g : gens) gen_perms.push_back(permutation_from_map(lattice, g));
    while (!frontier.empty()) {
      std::vector<std::vector<int>> next;
      for (const auto& p : frontier) {
        for (const auto& g : gen_perms) {
          auto q = compose(g, p);
          if (closure.insert(q).second) next.push_back(std::move(q));
        }
      }
      frontier = std::move(next);
    }
    point.assign(closure.begin(), closure.end());
  }

  if (lattice.boundary() == Boundary::open) return point;

  std::vector<std::vector<int>> group;
  std::vector<int> shift(d, 0);
  const int total_shifts = lattice.size();
  for (int t = 0; t < total_shifts; ++t) {
    int rem = t;
    for (int nu = d - 1; nu >= 0; --nu) {
      shift[nu] = rem % len[nu];
      rem /= len[nu];
    }
    auto translate = permutation_from_map(lattice, [&](std::vector<int> c) {
      for (int nu = 0; nu < d; ++nu) c[nu] = (c[nu] + shift[nu]) % len[nu];
      return c;
    });
    for (const auto& p : point) group.push_back(compose(translate, p));
  }
  std::sort(group.begin(), group.end());
  group.erase(std::unique(group.begin(), group.end()), group.end());
  return group;
}

std::string apply_permutation(const std::string& bits, const std::vector<int>& perm) {
  // perm maps site i to its image; the transformed configuration has the old
  // occupancy of i at perm[i].
  std::string out(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) out[perm[i]] = bits[i];
  return out;
}

std::string canonical_form(const Configuration& config,
                           const std::vector<std::vector<int>>& group) {
  const std::string bits = config.to_string();
  std::string best = bits;
  for (const auto& perm : group) {
    std::string image = apply_permutation(bits, perm);
    if (image < best) best = image;
  }
  return best;
}

std::string canonical_form(const Configuration& config) {
  return canonical_form(config, lattice_site_group(config.lattice()));
}

bool same_orbit(const Configuration& a, const Configuration& b) {
  if (a.size() != b.size()) return false;
  return canonical_form(a) == canonical_form(b);
}

std::vector<std::string> orbit_strings(const Configuration& config) {
  const auto group = lattice_site_group(config.lattice());
  const std::string bits = config.to_string();
  std::set<std::string> images;
  for (const auto& perm : group) images.insert(apply_permutation(bits, perm));
  return {images.begin(), images.end()};
}

bool is_periodic_config(const Configuration& config) {
  const Lattice& lat = config.lattice();
  if (lat.boundary() != Boundary::periodic) return false;
  const int d = lat.dim();
  const auto& len = lat.lengths();
  // Look for a proper sub-box period (p_0, ..., p_{d-1}), each dividing the
  // extent, with at least one p_nu < len_nu.
  std::vector<std::vector<int>> divisors(d);
  for (int nu = 0; nu < d; ++nu) {
    for (int p = 1; p <= len[nu]; ++p) {
      if (len[nu] % p == 0) divisors[nu].push_back(p);
    }
  }
  std::vector<int> period(d);
  std::function<bool(int)> try_dim = [&](int nu) -> bool {
    if (nu == d) {
      bool proper = false;
      for (int k = 0; k < d; ++k) {
        if (period[k] < len[k]) proper = true;
      }
      if (!proper) return false;
      for (int site = 0; site < lat.size(); ++site) {
        std::vector<int> c = lat.coords(site);
        std::vector<int> base = c;
        for (int k = 0; k < d; ++k) base[k] = c[k] % period[k];
        if (config.occupied(site) != config.occupied(lat.site_index(base))) return false;
      }
      return true;
    }
    for (int p : divisors[nu]) {
      period[nu] = p;
      if (try_dim(nu + 1)) return true;
    }
    return false;
  };
  return try_dim(0);
}

void enumerate_configurations(std::shared_ptr<const Lattice> lattice,
                              const EnumerationOptions& options,
                              const std::function<void(const Configuration&)>& sink) {
  const int n = lattice->size();
  if (n > options.site_cap) {
    throw std::invalid_argument("lattice exceeds the enumeration cap");
  }
  if (options.particle_count &&
      (*options.particle_count < 0 || *options.particle_count > n)) {
    throw std::invalid_argument("particle count out of range");
  }

  std::vector<std::vector<int>> group;
  if (options.reduce_symmetry) group = lattice_site_group(*lattice);

  auto emit = [&](const std::vector<std::uint8_t>& occ) {
    Configuration config(lattice, occ);
    if (options.reduce_symmetry) {
      if (config.to_string() != canonical_form(config, group)) return;
    }
    sink(config);
  };

  if (options.particle_count) {
    const int k = *options.particle_count;
    // Occupied positions advanced in standard combination order; the stream
    // order is deterministic, which is all golden tests rely on.
    std::vector<int> pos(k);
    for (int i = 0; i < k; ++i) pos[i] = i;
    while (true) {
      std::vector<std::uint8_t> occ(n, 0);
      for (int p : pos) occ[p] = 1;
      emit(occ);
      int i = k - 1;
      while (i >= 0 && pos[i] == n - k + i) --i;
      if (i < 0) break;
      ++pos[i];
      for (int j = i + 1; j < k; ++j) pos[j] = pos[j - 1] + 1;
    }
  } else {
    std::vector<std::uint8_t> occ(n, 0);
    while (true) {
      emit(occ);
      int i = n - 1;
      while (i >= 0 && occ[i] == 1) {
        occ[i] = 0;
        --i;
      }
      if (i < 0) break;
      occ[i] = 1;
    }
  }
}

std::vector<Configuration> collect_configurations(std::shared_ptr<const Lattice> lattice,
                                                  const EnumerationOptions& options) {
  std::vector<Configuration> out;
  enumerate_configurations(std::move(lattice), options,
                           [&](const Configuration& c) { out.push_back(c); });
  return out;
}

}  // namespace fk
