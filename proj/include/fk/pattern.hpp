#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fk/lattice.hpp"

namespace fk {

// Periodic occupation pattern meant to tile Z^d: a rectangular unit cell plus
// a multiplicity n used when a quantity (e.g. the structure factor) must be
// averaged over a super-cell of n repetitions.
struct PeriodicPattern {
  int dim = 1;
  std::vector<int> cell;           // per-dimension cell extents
  std::vector<std::uint8_t> occ;   // row-major over the cell
  int multiplicity = 1;            // n

  int cell_volume() const;
  int particle_count() const;
  double density() const;
  bool value_at(const std::vector<int>& coords) const;  // coords taken mod cell

  std::string occ_string() const;
  // Stable identifier used in scan output: "empty", "full", "chessboard",
  // otherwise the cell extents plus the occupation string.
  std::string label() const;

  bool operator==(const PeriodicPattern& other) const {
    return dim == other.dim && cell == other.cell && occ == other.occ;
  }
};

PeriodicPattern make_pattern_1d(const std::string& bits, int multiplicity = 1);
PeriodicPattern make_pattern_2d(int rows, int cols, const std::string& bits,
                                int multiplicity = 1);
PeriodicPattern empty_pattern(int dim);
PeriodicPattern full_pattern(int dim);
PeriodicPattern chessboard_pattern(int dim);

// Wraps the pattern onto a periodic lattice whose extents are multiples of
// the cell extents.
Configuration tile_pattern(const PeriodicPattern& pattern,
                           std::shared_ptr<const Lattice> lattice);

}  // namespace fk
