#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fk/band.hpp"

using namespace fk;

TEST_CASE("fermi level in one dimension") {
  CHECK(std::abs(fermi_energy(1, 0.5)) < 1e-4);
  CHECK(fermi_energy(1, 0.25) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-4));
  // Closed form eps_F = -2 cos(pi rho) across the band.
  for (double rho : {0.1, 0.3, 0.6, 0.9}) {
    CHECK(fermi_energy(1, rho) ==
          doctest::Approx(-2.0 * std::cos(std::numbers::pi * rho)).epsilon(1e-4));
  }
  CHECK(fermi_energy(1, 0.0) == doctest::Approx(-2.0));
  CHECK(fermi_energy(1, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("fermi level in two dimensions") {
  CHECK(std::abs(fermi_energy(2, 0.5)) < 1e-3);
  CHECK(fermi_energy(2, 0.2) < fermi_energy(2, 0.4));
}

TEST_CASE("free band energy in one dimension") {
  CHECK(free_electron_energy_density(1, 0.5) ==
        doctest::Approx(-2.0 / std::numbers::pi).epsilon(1e-4));
  CHECK(free_electron_energy_density(1, 0.0) == doctest::Approx(0.0));
  CHECK(free_electron_energy_density(1, 1.0) ==
        doctest::Approx(0.0).scale(1).epsilon(1e-10));
  // Closed form -(2/pi) sin(pi rho).
  for (double rho : {0.125, 0.25, 0.75}) {
    CHECK(free_electron_energy_density(1, rho) ==
          doctest::Approx(-(2.0 / std::numbers::pi) * std::sin(std::numbers::pi * rho))
              .epsilon(1e-4));
  }
}

TEST_CASE("band energy is particle-hole symmetric and convex") {
  for (int dim : {1, 2}) {
    for (double rho : {0.1, 0.3, 0.45}) {
      CHECK(free_electron_energy_density(dim, rho) ==
            doctest::Approx(free_electron_energy_density(dim, 1.0 - rho)).epsilon(1e-6));
    }
    const double a = free_electron_energy_density(dim, 0.2);
    const double b = free_electron_energy_density(dim, 0.3);
    const double c = free_electron_energy_density(dim, 0.4);
    CHECK(b <= 0.5 * (a + c) + 1e-8);
  }
}

TEST_CASE("two-dimensional band energy against a finite-torus oracle") {
  // Analytic torus eigenvalues -2cos(2 pi j / L) - 2cos(2 pi k / L).
  const int length = 200;
  std::vector<double> eps;
  eps.reserve(static_cast<std::size_t>(length) * length);
  for (int j = 0; j < length; ++j) {
    for (int k = 0; k < length; ++k) {
      eps.push_back(-2.0 * std::cos(2.0 * std::numbers::pi * j / length) -
                    2.0 * std::cos(2.0 * std::numbers::pi * k / length));
    }
  }
  std::sort(eps.begin(), eps.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < eps.size() / 2; ++i) sum += eps[i];
  const double torus_value = sum / eps.size();
  CHECK(free_electron_energy_density(2, 0.5) ==
        doctest::Approx(torus_value).epsilon(2e-3));
}

TEST_CASE("full configuration energy density") {
  CHECK(full_config_energy_density(1, 0.5, 0.0) ==
        doctest::Approx(-2.0 / std::numbers::pi).epsilon(1e-4));
  CHECK(full_config_energy_density(1, 0.5, 4.0) ==
        doctest::Approx(-2.0 / std::numbers::pi - 2.0).epsilon(1e-4));
  CHECK(full_config_energy_density(1, 0.0, 9.0) == doctest::Approx(0.0));
}

TEST_CASE("band functions validate input") {
  CHECK_THROWS_AS(fermi_energy(3, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(fermi_energy(1, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(free_electron_energy_density(1, -0.1), std::invalid_argument);
}
