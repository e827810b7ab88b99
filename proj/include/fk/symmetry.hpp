#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fk/lattice.hpp"

namespace fk {

enum class SymmetryKind { classical_hole, electron_hole, joint_hole };

// A particle-hole transform together with the parameter map that makes the
// energy identities hold:
//   classical_hole: E^U(Ne, w-bar) = E^{-U}(Ne, w) - U*Ne
//   electron_hole:  E^U(|L|-Ne, w) = E^{-U}(Ne, w) - U*Nc(w)
//   joint_hole:     E^U(|L|-Ne, w-bar) = E^U(Ne, w) + U*(Ne + Nc(w) - |L|)
struct TransformResult {
  Configuration config;
  double coupling;
  double mu_e;
  double mu_c;
  int n_e;
};

TransformResult symmetry_transform(SymmetryKind kind, const Configuration& config,
                                   double coupling, double mu_e, double mu_c, int n_e);

// Site permutations of the full spatial symmetry group: translations (periodic
// boundary only) combined with the point group (reflections; 90-degree
// rotations when the box is square).
std::vector<std::vector<int>> lattice_site_group(const Lattice& lattice);

std::string apply_permutation(const std::string& bits, const std::vector<int>& perm);

// Lexicographically least image of the occupation string under the group.
std::string canonical_form(const Configuration& config,
                           const std::vector<std::vector<int>>& group);
std::string canonical_form(const Configuration& config);

bool same_orbit(const Configuration& a, const Configuration& b);

// All images of a configuration string under the group, deduplicated.
std::vector<std::string> orbit_strings(const Configuration& config);

// True when the configuration is invariant under translation by some proper
// period (periodic lattices only).
bool is_periodic_config(const Configuration& config);

struct EnumerationOptions {
  std::optional<int> particle_count;  // fixed N_c filter
  bool reduce_symmetry = false;       // emit one representative per orbit
  int site_cap = 24;
};

// Streams configurations in lexicographic order of the occupation string.
// With reduce_symmetry, only configurations equal to their canonical form are
// emitted (the lexicographically least orbit representative).
void enumerate_configurations(std::shared_ptr<const Lattice> lattice,
                              const EnumerationOptions& options,
                              const std::function<void(const Configuration&)>& sink);

std::vector<Configuration> collect_configurations(std::shared_ptr<const Lattice> lattice,
                                                  const EnumerationOptions& options);

}  // namespace fk
