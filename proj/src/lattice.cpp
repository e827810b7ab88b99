#include "fk/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace fk {

Lattice::Lattice(int dim, std::vector<int> lengths, Boundary bc)
    : dim_(dim), lengths_(std::move(lengths)), bc_(bc) {
  if (dim_ < 1 || dim_ > 2) {
    throw std::invalid_argument("lattice dimension must be 1 or 2");
  }
  if (static_cast<int>(lengths_.size()) != dim_) {
    throw std::invalid_argument("lengths must have one entry per dimension");
  }
  for (int len : lengths_) {
    if (len < 2) {
      throw std::invalid_argument("lattice extents must be >= 2");
    }
  }

  n_sites_ = 1;
  for (int len : lengths_) n_sites_ *= len;

  neighbors_.assign(n_sites_, {});
  for (int site = 0; site < n_sites_; ++site) {
    std::vector<int> c = coords(site);
    for (int nu = 0; nu < dim_; ++nu) {
      for (int step : {-1, +1}) {
        std::vector<int> d = c;
        d[nu] += step;
        if (bc_ == Boundary::periodic) {
          d[nu] = ((d[nu] % lengths_[nu]) + lengths_[nu]) % lengths_[nu];
        } else if (d[nu] < 0 || d[nu] >= lengths_[nu]) {
          continue;
        }
        neighbors_[site].push_back(site_index(d));
      }
    }
    std::sort(neighbors_[site].begin(), neighbors_[site].end());
    neighbors_[site].erase(std::unique(neighbors_[site].begin(), neighbors_[site].end()),
                           neighbors_[site].end());
  }

  for (int site = 0; site < n_sites_; ++site) {
    for (int other : neighbors_[site]) {
      if (site < other) bonds_.emplace_back(site, other);
    }
  }
}

int Lattice::site_index(const std::vector<int>& coords) const {
  int idx = 0;
  for (int nu = 0; nu < dim_; ++nu) {
    idx = idx * lengths_[nu] + coords[nu];
  }
  return idx;
}

std::vector<int> Lattice::coords(int site) const {
  std::vector<int> c(dim_);
  for (int nu = dim_ - 1; nu >= 0; --nu) {
    c[nu] = site % lengths_[nu];
    site /= lengths_[nu];
  }
  return c;
}

int Lattice::sublattice_sign(int site) const {
  std::vector<int> c = coords(site);
  int parity = std::accumulate(c.begin(), c.end(), 0);
  return (parity % 2 == 0) ? +1 : -1;
}

bool Lattice::bipartite_compatible() const {
  if (bc_ == Boundary::open) return true;
  for (int len : lengths_) {
    if (len % 2 != 0) return false;
  }
  return true;
}

Configuration::Configuration(std::shared_ptr<const Lattice> lattice,
                             std::vector<std::uint8_t> occ)
    : lattice_(std::move(lattice)), occ_(std::move(occ)) {
  if (!lattice_) throw std::invalid_argument("configuration requires a lattice");
  if (static_cast<int>(occ_.size()) != lattice_->size()) {
    throw std::invalid_argument("occupation vector length does not match lattice size");
  }
  for (auto b : occ_) {
    if (b > 1) throw std::invalid_argument("occupations must be 0 or 1");
  }
}

Configuration Configuration::from_string(std::shared_ptr<const Lattice> lattice,
                                         const std::string& bits) {
  std::vector<std::uint8_t> occ;
  occ.reserve(bits.size());
  for (char ch : bits) {
    if (ch != '0' && ch != '1') {
      throw std::invalid_argument("configuration string must contain only '0'/'1'");
    }
    occ.push_back(ch == '1' ? 1 : 0);
  }
  return Configuration(std::move(lattice), std::move(occ));
}

Configuration Configuration::constant(std::shared_ptr<const Lattice> lattice, bool occupied) {
  std::vector<std::uint8_t> occ(lattice->size(), occupied ? 1 : 0);
  return Configuration(std::move(lattice), std::move(occ));
}

int Configuration::particle_count() const {
  return static_cast<int>(std::count(occ_.begin(), occ_.end(), std::uint8_t{1}));
}

double Configuration::density() const {
  return static_cast<double>(particle_count()) / size();
}

Configuration Configuration::complement() const {
  std::vector<std::uint8_t> occ(occ_.size());
  for (std::size_t i = 0; i < occ_.size(); ++i) occ[i] = occ_[i] ? 0 : 1;
  return Configuration(lattice_, std::move(occ));
}

std::string Configuration::to_string() const {
  std::string s(occ_.size(), '0');
  for (std::size_t i = 0; i < occ_.size(); ++i) {
    if (occ_[i]) s[i] = '1';
  }
  return s;
}

std::shared_ptr<const Lattice> make_lattice(int dim, std::vector<int> lengths, Boundary bc) {
  return std::make_shared<const Lattice>(dim, std::move(lengths), bc);
}

long long boundary_count(const Configuration& config) {
  long long count = 0;
  for (const auto& [a, b] : config.lattice().bonds()) {
    if (config.occupied(a) != config.occupied(b)) ++count;
  }
  return count;
}

double boundary_density(const Configuration& config) {
  return static_cast<double>(boundary_count(config)) / config.size();
}

}  // namespace fk
