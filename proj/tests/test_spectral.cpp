#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fk/lattice.hpp"
#include "fk/pattern.hpp"
#include "fk/spectral.hpp"

using namespace fk;

namespace {

Configuration random_config(std::shared_ptr<const Lattice> lat, std::mt19937& rng) {
  std::vector<std::uint8_t> occ(lat->size());
  for (auto& b : occ) b = static_cast<std::uint8_t>(rng() % 2);
  return Configuration(lat, occ);
}

}  // namespace

TEST_CASE("one-body matrix for the empty ring") {
  auto ring = make_lattice(1, {4}, Boundary::periodic);
  OneBodyMatrix m = build_one_body(Configuration::constant(ring, false), 7.0);
  for (int i = 0; i < 4; ++i) {
    CHECK(m.h(i, i) == 0.0);
    CHECK(m.h(i, (i + 1) % 4) == -1.0);
    CHECK(m.h(i, (i + 3) % 4) == -1.0);
  }
}

TEST_CASE("full configuration shifts the diagonal") {
  auto ring = make_lattice(1, {4}, Boundary::periodic);
  OneBodyMatrix full = build_one_body(Configuration::constant(ring, true), 10.0);
  OneBodyMatrix empty = build_one_body(Configuration::constant(ring, false), 10.0);
  CHECK((full.h - (empty.h - 10.0 * Eigen::MatrixXd::Identity(4, 4))).norm() == 0.0);
}

TEST_CASE("two-site example matrix") {
  auto path = make_lattice(1, {2}, Boundary::open);
  OneBodyMatrix m = build_one_body(Configuration::from_string(path, "10"), 3.0);
  CHECK(m.h(0, 0) == -3.0);
  CHECK(m.h(0, 1) == -1.0);
  CHECK(m.h(1, 0) == -1.0);
  CHECK(m.h(1, 1) == 0.0);
}

TEST_CASE("ring spectra") {
  auto ring = make_lattice(1, {4}, Boundary::periodic);
  Spectrum empty = spectrum_of(Configuration::constant(ring, false), 0.0);
  CHECK(empty.values[0] == doctest::Approx(-2).epsilon(1e-12));
  CHECK(empty.values[1] == doctest::Approx(0).scale(1).epsilon(1e-12));
  CHECK(empty.values[2] == doctest::Approx(0).scale(1).epsilon(1e-12));
  CHECK(empty.values[3] == doctest::Approx(2).epsilon(1e-12));

  Spectrum full = spectrum_of(Configuration::constant(ring, true), 10.0);
  CHECK(full.values[0] == doctest::Approx(-12).epsilon(1e-12));
  CHECK(full.values[1] == doctest::Approx(-10).epsilon(1e-12));
  CHECK(full.values[2] == doctest::Approx(-10).epsilon(1e-12));
  CHECK(full.values[3] == doctest::Approx(-8).epsilon(1e-12));
}

TEST_CASE("two-site closed form") {
  auto path = make_lattice(1, {2}, Boundary::open);
  Spectrum s = spectrum_of(Configuration::from_string(path, "10"), 3.0);
  CHECK(s.values[0] == doctest::Approx((-3.0 - std::sqrt(13.0)) / 2).epsilon(1e-12));
  CHECK(s.values[1] == doctest::Approx((-3.0 + std::sqrt(13.0)) / 2).epsilon(1e-12));
}

TEST_CASE("residual check accepts healthy solves") {
  auto ring = make_lattice(1, {8}, Boundary::periodic);
  OneBodyMatrix m = build_one_body(Configuration::from_string(ring, "10110100"), 5.0);
  CHECK_NOTHROW(eigenvalues(m, true));
}

TEST_CASE("canonical energy") {
  Spectrum s;
  s.values = {-2.0, 0.0, 0.0, 2.0};
  CHECK(canonical_energy(s, 2) == doctest::Approx(-2.0));
  CHECK(canonical_energy(s, 0) == 0.0);
  CHECK_THROWS_AS(canonical_energy(s, 5), std::invalid_argument);
  CHECK_THROWS_AS(canonical_energy(s, -1), std::invalid_argument);
}

TEST_CASE("chessboard ring at U=20 matches the closed form") {
  // Bloch reduction of the 4-ring chessboard gives E(2) = -30 - sqrt(104).
  auto ring = make_lattice(1, {4}, Boundary::periodic);
  Spectrum s = spectrum_of(tile_pattern(chessboard_pattern(1), ring), 20.0);
  CHECK(canonical_energy(s, 2) == doctest::Approx(-30.0 - std::sqrt(104.0)).epsilon(1e-12));
}

TEST_CASE("grand-canonical energy examples") {
  auto ring = make_lattice(1, {4}, Boundary::periodic);
  Spectrum empty = spectrum_of(Configuration::constant(ring, false), 0.0);
  CHECK(gc_energy(empty, 0, -1.0, 0.3) == doctest::Approx(-1.0));

  Spectrum anything = spectrum_of(Configuration::from_string(ring, "1001"), 3.0);
  CHECK(gc_energy(anything, 2, -100.0, 0.7) == doctest::Approx(-0.7 * 2));

  Spectrum full = spectrum_of(Configuration::constant(ring, true), 10.0);
  CHECK(gc_energy(full, 4, -9.0, 0.0) == doctest::Approx(-5.0));
}

TEST_CASE("electron density examples") {
  Spectrum s;
  s.values = {-2.0, 0.0, 0.0, 2.0};
  CHECK(electron_density(s, 1.0) == doctest::Approx(0.75));
  CHECK(electron_density(s, -3.0) == 0.0);
  // Modes exactly at mu_e are excluded.
  CHECK(electron_count(s, 0.0) == 1);
}

TEST_CASE("density equals classical density inside the universal gap") {
  auto ring = make_lattice(1, {8}, Boundary::periodic);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    Configuration w = random_config(ring, rng);
    Spectrum s = spectrum_of(w, 10.0);
    CHECK(electron_density(s, -5.0) == doctest::Approx(w.density()).epsilon(1e-15));
  }
}

TEST_CASE("free energy limits") {
  auto ring = make_lattice(1, {6}, Boundary::periodic);
  Configuration w = Configuration::from_string(ring, "101100");
  Spectrum s = spectrum_of(w, 5.0);
  const int n_c = w.particle_count();

  const double gc = gc_energy(s, n_c, -2.5, 0.4);
  CHECK(std::abs(free_energy(s, n_c, {200.0, -2.5, 0.4}) - gc) < 1e-6);
  CHECK(free_energy(s, n_c, {std::numeric_limits<double>::infinity(), -2.5, 0.4}) ==
        doctest::Approx(gc));

  // F decreases toward the ground state as beta grows.
  double previous = free_energy(s, n_c, {0.5, -2.5, 0.4});
  for (double beta : {1.0, 2.0, 5.0, 20.0, 100.0}) {
    const double f = free_energy(s, n_c, {beta, -2.5, 0.4});
    CHECK(f <= previous + 1e-12);
    previous = f;
  }
  CHECK_THROWS_AS(free_energy(s, n_c, {0.0, -2.5, 0.4}), std::invalid_argument);
}

TEST_CASE("single mode free energy closed form") {
  Spectrum s;
  s.values = {0.0};
  const double beta = 3.0, mu_e = -0.8;
  CHECK(free_energy(s, 0, {beta, mu_e, 11.0}) ==
        doctest::Approx(-std::log1p(std::exp(beta * mu_e)) / beta).epsilon(1e-12));
}

TEST_CASE("high temperature expansion") {
  auto ring = make_lattice(1, {6}, Boundary::periodic);
  Configuration w = Configuration::from_string(ring, "110010");
  Spectrum s = spectrum_of(w, 2.0);
  const double beta = 1e-5, mu_c = 0.9, mu_e = 0.3;
  const double f = free_energy(s, w.particle_count(), {beta, mu_e, mu_c});
  const double leading = -mu_c * w.particle_count() - 6 * std::log(2.0) / beta;
  double slack = 0.0;
  for (double lam : s.values) slack += std::abs(lam - mu_e);
  CHECK(std::abs(f - leading) <= 0.5 * slack + 1.0);
}

TEST_CASE("trace and second moment identities") {
  std::mt19937 rng(99);
  for (auto lat : {make_lattice(1, {10}, Boundary::periodic),
                   make_lattice(2, {4, 4}, Boundary::periodic),
                   make_lattice(1, {7}, Boundary::open)}) {
    for (double u : {0.5, 5.0, 12.0}) {
      Configuration w = random_config(lat, rng);
      Spectrum s = spectrum_of(w, u);
      double sum = 0.0, sum_sq = 0.0;
      for (double lam : s.values) {
        sum += lam;
        sum_sq += lam * lam;
      }
      const int n_c = w.particle_count();
      CHECK(std::abs(sum + u * n_c) < 1e-9 * lat->size());
      CHECK(std::abs(sum_sq - (2.0 * lat->bond_count() + u * u * n_c)) <
            1e-9 * lat->size() * (1 + u * u));
    }
  }
}

TEST_CASE("spectral windows hold for random configurations") {
  std::mt19937 rng(3);
  for (auto lat : {make_lattice(1, {12}, Boundary::periodic),
                   make_lattice(2, {4, 4}, Boundary::periodic)}) {
    for (double u : {0.5, 5.0, 10.0}) {
      for (int trial = 0; trial < 5; ++trial) {
        Spectrum s = spectrum_of(random_config(lat, rng), u);
        CHECK(check_spectral_windows(s, lat->dim()));
      }
    }
  }
}

TEST_CASE("eigenvalues decrease when particles are added") {
  auto ring = make_lattice(1, {8}, Boundary::periodic);
  std::mt19937 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    Configuration w = random_config(ring, rng);
    std::vector<std::uint8_t> bigger = w.occ();
    bool changed = false;
    for (auto& b : bigger) {
      if (!b && rng() % 2) {
        b = 1;
        changed = true;
      }
    }
    if (!changed) continue;
    Spectrum low = spectrum_of(Configuration(ring, bigger), 4.0);
    Spectrum high = spectrum_of(w, 4.0);
    for (int j = 0; j < 8; ++j) CHECK(low.values[j] <= high.values[j] + 1e-12);
  }
}

TEST_CASE("finite differences recover the density") {
  auto ring = make_lattice(1, {8}, Boundary::periodic);
  Configuration w = Configuration::from_string(ring, "10110010");
  Spectrum s = spectrum_of(w, 3.0);
  const double mu_e = -1.234;  // away from eigenvalues
  const double h = 1e-6;
  const int n_c = w.particle_count();
  const double slope = (gc_energy(s, n_c, mu_e + h, 0.0) -
                        gc_energy(s, n_c, mu_e - h, 0.0)) /
                       (2 * h * s.size());
  CHECK(slope == doctest::Approx(-electron_density(s, mu_e)).epsilon(1e-9));
}

TEST_CASE("canonical and grand-canonical energies are consistent") {
  auto ring = make_lattice(1, {10}, Boundary::periodic);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    Configuration w = random_config(ring, rng);
    const double u = 1.0 + (trial % 5);
    Spectrum s = spectrum_of(w, u);
    for (double mu_e : {-u - 1.0, -1.7, 0.3, 1.9}) {
      const double mu_c = -0.4;
      const int occupied = electron_count(s, mu_e);
      const double expected = canonical_energy(s, occupied) - mu_e * occupied -
                              mu_c * w.particle_count();
      CHECK(gc_energy(s, w.particle_count(), mu_e, mu_c) ==
            doctest::Approx(expected).epsilon(1e-13));
    }
  }
}

TEST_CASE("spectrum table matches direct evaluation") {
  auto ring = make_lattice(1, {12}, Boundary::periodic);
  Configuration w = Configuration::from_string(ring, "101101001100");
  Spectrum s = spectrum_of(w, 4.0);
  SpectrumTable table = make_table(s);
  for (double mu_e : {-6.0, -3.0, -0.5, 0.9, 2.5}) {
    CHECK(table.gc_energy_per_site(mu_e, 0.7) ==
          doctest::Approx(gc_energy(s, s.n_classical, mu_e, 0.7) / 12).epsilon(1e-13));
  }
  CHECK(table.canonical_energy_per_site(0.5) ==
        doctest::Approx(canonical_energy(s, 6) / 12).epsilon(1e-13));
  // Fractional filling interpolates linearly.
  const double mid = 0.5 * (canonical_energy(s, 6) + canonical_energy(s, 7)) / 12;
  CHECK(table.canonical_energy_per_site(6.5 / 12) == doctest::Approx(mid).epsilon(1e-13));
}
