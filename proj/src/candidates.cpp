#include "fk/candidates.hpp"

#include <array>
#include <set>
#include <string>

#include "fk/symmetry.hpp"

namespace fk {

namespace {

std::string rotate_string(const std::string& s, int shift) {
  return s.substr(shift) + s.substr(0, shift);
}

std::string cycle_canonical(const std::string& s) {
  std::string best = s;
  const std::string rev(s.rbegin(), s.rend());
  for (int shift = 0; shift < static_cast<int>(s.size()); ++shift) {
    best = std::min(best, rotate_string(s, shift));
    best = std::min(best, rotate_string(rev, shift));
  }
  return best;
}

bool primitive_cycle(const std::string& s) {
  const int n = static_cast<int>(s.size());
  for (int p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (int i = 0; i < n && periodic; ++i) periodic = (s[i] == s[i % p]);
    if (periodic) return false;
  }
  return true;
}

// Occupied sites = union of cosets offset + span{g1, g2} modulo a W x H box;
// W and H are rectangular periods of the coset lattice.
PeriodicPattern coset_pattern(int width, int height, std::array<int, 2> g1,
                              std::array<int, 2> g2,
                              const std::vector<std::array<int, 2>>& offsets) {
  // coords (x, y); the pattern cell is stored row-major over (row=y, col=x).
  std::vector<std::uint8_t> occ(static_cast<std::size_t>(width) * height, 0);
  for (const auto& off : offsets) {
    for (int i = 0; i < width * height; ++i) {
      for (int j = 0; j < width * height; ++j) {
        const int x = ((off[0] + i * g1[0] + j * g2[0]) % width + width) % width;
        const int y = ((off[1] + i * g1[1] + j * g2[1]) % height + height) % height;
        occ[static_cast<std::size_t>(y) * width + x] = 1;
      }
    }
  }
  PeriodicPattern p;
  p.dim = 2;
  p.cell = {height, width};
  p.occ = std::move(occ);
  return p;
}

}  // namespace

std::vector<PeriodicPattern> default_candidates_1d(int max_cell) {
  std::vector<PeriodicPattern> out;
  out.push_back(empty_pattern(1));
  out.push_back(full_pattern(1));
  std::set<std::string> seen;
  for (int len = 1; len <= max_cell; ++len) {
    for (unsigned mask = 0; mask < (1u << len); ++mask) {
      std::string bits(len, '0');
      for (int i = 0; i < len; ++i) {
        if (mask & (1u << i)) bits[i] = '1';
      }
      const int count = static_cast<int>(std::count(bits.begin(), bits.end(), '1'));
      if (count == 0 || count == len) continue;
      if (!primitive_cycle(bits)) continue;
      const std::string canon = cycle_canonical(bits);
      if (bits != canon) continue;
      if (seen.insert(canon).second) out.push_back(make_pattern_1d(bits));
    }
  }
  return out;
}

std::vector<PeriodicPattern> known_2d_ground_state_patterns() {
  std::vector<PeriodicPattern> out;
  // Density 1/2: chessboard.
  out.push_back(chessboard_pattern(2));
  // Density 2/5: occupied where (x - y) mod 5 is 0 or 2.
  {
    std::vector<std::uint8_t> occ(25, 0);
    for (int y = 0; y < 5; ++y) {
      for (int x = 0; x < 5; ++x) {
        const int r = ((x - y) % 5 + 5) % 5;
        if (r == 0 || r == 2) occ[y * 5 + x] = 1;
      }
    }
    PeriodicPattern p;
    p.dim = 2;
    p.cell = {5, 5};
    p.occ = occ;
    out.push_back(p);
  }
  // Density 1/3: diagonal stripes, occupied where x = y mod 3.
  {
    std::vector<std::uint8_t> occ(9, 0);
    for (int y = 0; y < 3; ++y) occ[y * 3 + y] = 1;
    PeriodicPattern p;
    p.dim = 2;
    p.cell = {3, 3};
    p.occ = occ;
    out.push_back(p);
  }
  // Density 1/4: 4x2 cell, occupied at (x=2, y=0) and (x=0, y=1).
  out.push_back(make_pattern_2d(2, 4, "00101000"));
  // Density 2/9: 6x6 cell.
  out.push_back(make_pattern_2d(6, 6,
                                "100000"
                                "001010"
                                "100000"
                                "000100"
                                "010001"
                                "000100"));
  // Density 1/5: knight-move lattice, occupied where x = 3y + 1 mod 5.
  {
    std::vector<std::uint8_t> occ(25, 0);
    for (int y = 0; y < 5; ++y) occ[y * 5 + ((3 * y + 1) % 5)] = 1;
    PeriodicPattern p;
    p.dim = 2;
    p.cell = {5, 5};
    p.occ = occ;
    out.push_back(p);
  }
  // Density 2/11: cosets of the index-11 lattice spanned by (-1,2) and (4,3).
  out.push_back(coset_pattern(11, 11, {-1, 2}, {4, 3}, {{1, 0}, {3, 1}}));
  // Density 1/6: cosets of the index-12 lattice spanned by (-2,2) and (5,1).
  out.push_back(coset_pattern(12, 12, {-2, 2}, {5, 1}, {{1, 0}, {4, 0}}));
  return out;
}

std::vector<PeriodicPattern> default_candidates_2d() {
  std::vector<PeriodicPattern> out;
  out.push_back(empty_pattern(2));
  out.push_back(full_pattern(2));

  // Cells up to 3x3, deduplicated by tiling onto a common 6x6 torus and
  // comparing canonical forms under its full symmetry group.
  auto reference = make_lattice(2, {6, 6}, Boundary::periodic);
  const auto group = lattice_site_group(*reference);
  std::set<std::string> seen;
  for (const PeriodicPattern& base : {empty_pattern(2), full_pattern(2)}) {
    seen.insert(canonical_form(tile_pattern(base, reference), group));
  }
  for (int rows = 1; rows <= 3; ++rows) {
    for (int cols = 1; cols <= 3; ++cols) {
      const int cell_size = rows * cols;
      for (unsigned mask = 0; mask < (1u << cell_size); ++mask) {
        std::string bits(cell_size, '0');
        for (int i = 0; i < cell_size; ++i) {
          if (mask & (1u << i)) bits[i] = '1';
        }
        PeriodicPattern p = make_pattern_2d(rows, cols, bits);
        const std::string key = canonical_form(tile_pattern(p, reference), group);
        if (seen.insert(key).second) out.push_back(p);
      }
    }
  }

  for (const PeriodicPattern& p : known_2d_ground_state_patterns()) {
    if (p.cell[0] <= 3 && p.cell[1] <= 3) {
      const std::string key = canonical_form(tile_pattern(p, reference), group);
      if (!seen.insert(key).second) continue;  // already covered by a small cell
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace fk
