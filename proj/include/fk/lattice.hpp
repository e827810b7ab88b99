#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fk {

enum class Boundary { periodic, open };

// Finite d-dimensional box (d = 1 or 2) with row-major site indexing.
// Adjacency is nearest-neighbor; on a torus, doubled bonds from extents of 2
// are deduplicated so every unordered bond appears once.
class Lattice {
 public:
  Lattice(int dim, std::vector<int> lengths, Boundary bc);

  int dim() const { return dim_; }
  const std::vector<int>& lengths() const { return lengths_; }
  Boundary boundary() const { return bc_; }
  int size() const { return n_sites_; }

  const std::vector<int>& neighbors(int site) const { return neighbors_[site]; }
  const std::vector<std::pair<int, int>>& bonds() const { return bonds_; }
  int bond_count() const { return static_cast<int>(bonds_.size()); }

  int site_index(const std::vector<int>& coords) const;
  std::vector<int> coords(int site) const;

  // Sublattice sign of the two-coloring, +1 / -1; only meaningful when
  // bipartite_compatible() holds.
  int sublattice_sign(int site) const;
  bool bipartite_compatible() const;

 private:
  int dim_;
  std::vector<int> lengths_;
  Boundary bc_;
  int n_sites_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<std::pair<int, int>> bonds_;
};

// Classical occupation numbers on a lattice, one bit per site.
class Configuration {
 public:
  Configuration(std::shared_ptr<const Lattice> lattice, std::vector<std::uint8_t> occ);

  static Configuration from_string(std::shared_ptr<const Lattice> lattice,
                                   const std::string& bits);
  static Configuration constant(std::shared_ptr<const Lattice> lattice, bool occupied);

  const Lattice& lattice() const { return *lattice_; }
  std::shared_ptr<const Lattice> lattice_ptr() const { return lattice_; }
  const std::vector<std::uint8_t>& occ() const { return occ_; }
  bool occupied(int site) const { return occ_[site] != 0; }
  int size() const { return static_cast<int>(occ_.size()); }

  int particle_count() const;                // N_c
  double density() const;                    // N_c / |Lambda|
  Configuration complement() const;          // omega -> 1 - omega
  std::string to_string() const;             // row-major '0'/'1'

  bool operator==(const Configuration& other) const { return occ_ == other.occ_; }

 private:
  std::shared_ptr<const Lattice> lattice_;
  std::vector<std::uint8_t> occ_;
};

std::shared_ptr<const Lattice> make_lattice(int dim, std::vector<int> lengths, Boundary bc);

// Number of ordered nearest-neighbor pairs (x, y) with x occupied and y empty.
// Equals the number of bonds with differing occupancy.
long long boundary_count(const Configuration& config);
double boundary_density(const Configuration& config);

}  // namespace fk
