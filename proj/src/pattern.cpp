#include "fk/pattern.hpp"

#include <algorithm>
#include <stdexcept>

namespace fk {

int PeriodicPattern::cell_volume() const {
  int v = 1;
  for (int len : cell) v *= len;
  return v;
}

int PeriodicPattern::particle_count() const {
  return static_cast<int>(std::count(occ.begin(), occ.end(), std::uint8_t{1}));
}

double PeriodicPattern::density() const {
  return static_cast<double>(particle_count()) / cell_volume();
}

bool PeriodicPattern::value_at(const std::vector<int>& coords) const {
  int idx = 0;
  for (int nu = 0; nu < dim; ++nu) {
    int c = ((coords[nu] % cell[nu]) + cell[nu]) % cell[nu];
    idx = idx * cell[nu] + c;
  }
  return occ[idx] != 0;
}

std::string PeriodicPattern::occ_string() const {
  std::string s(occ.size(), '0');
  for (std::size_t i = 0; i < occ.size(); ++i) {
    if (occ[i]) s[i] = '1';
  }
  return s;
}

std::string PeriodicPattern::label() const {
  const int count = particle_count();
  if (count == 0) return "empty";
  if (count == cell_volume()) return "full";
  if (*this == chessboard_pattern(dim)) return "chessboard";
  std::string tag;
  for (std::size_t nu = 0; nu < cell.size(); ++nu) {
    if (nu) tag += 'x';
    tag += std::to_string(cell[nu]);
  }
  return tag + ":" + occ_string();
}

PeriodicPattern make_pattern_1d(const std::string& bits, int multiplicity) {
  if (bits.empty()) throw std::invalid_argument("pattern cell must be nonempty");
  PeriodicPattern p;
  p.dim = 1;
  p.cell = {static_cast<int>(bits.size())};
  p.multiplicity = multiplicity;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("pattern bits must be '0'/'1'");
    p.occ.push_back(ch == '1' ? 1 : 0);
  }
  return p;
}

PeriodicPattern make_pattern_2d(int rows, int cols, const std::string& bits, int multiplicity) {
  if (rows < 1 || cols < 1 || static_cast<int>(bits.size()) != rows * cols) {
    throw std::invalid_argument("pattern cell does not match bit string");
  }
  PeriodicPattern p;
  p.dim = 2;
  p.cell = {rows, cols};
  p.multiplicity = multiplicity;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("pattern bits must be '0'/'1'");
    p.occ.push_back(ch == '1' ? 1 : 0);
  }
  return p;
}

PeriodicPattern empty_pattern(int dim) {
  return dim == 1 ? make_pattern_1d("0") : make_pattern_2d(1, 1, "0");
}

PeriodicPattern full_pattern(int dim) {
  return dim == 1 ? make_pattern_1d("1") : make_pattern_2d(1, 1, "1");
}

PeriodicPattern chessboard_pattern(int dim) {
  return dim == 1 ? make_pattern_1d("10") : make_pattern_2d(2, 2, "1001");
}

Configuration tile_pattern(const PeriodicPattern& pattern,
                           std::shared_ptr<const Lattice> lattice) {
  if (lattice->boundary() != Boundary::periodic) {
    throw std::invalid_argument("tile_pattern requires a periodic lattice");
  }
  if (lattice->dim() != pattern.dim) {
    throw std::invalid_argument("pattern and lattice dimensions differ");
  }
  for (int nu = 0; nu < pattern.dim; ++nu) {
    if (lattice->lengths()[nu] % pattern.cell[nu] != 0) {
      throw std::invalid_argument("lattice extent not divisible by pattern cell");
    }
  }
  std::vector<std::uint8_t> occ(lattice->size());
  for (int site = 0; site < lattice->size(); ++site) {
    occ[site] = pattern.value_at(lattice->coords(site)) ? 1 : 0;
  }
  return Configuration(std::move(lattice), std::move(occ));
}

}  // namespace fk
