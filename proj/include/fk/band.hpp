#pragma once

namespace fk {

// Infinite-volume tight-binding band eps(k) = -2 sum_nu cos(k_nu), evaluated
// by midpoint quadrature on a uniform k-grid over [-pi, pi]^d with a
// grid-doubling consistency check. resolution is the number of points per
// axis at the coarse level (0 picks a dimension-dependent default).

// Fermi level with filling rho_e; eps_F(1/2) = 0 by particle-hole symmetry.
double fermi_energy(int dim, double rho_e, int resolution = 0);

// Energy per site of free lattice electrons, (2pi)^-d * integral of eps below
// the Fermi level. Convex in rho_e, symmetric under rho_e -> 1 - rho_e.
double free_electron_energy_density(int dim, double rho_e, int resolution = 0);

// Energy per site for the fully occupied configuration: free value - U*rho_e.
double full_config_energy_density(int dim, double rho_e, double coupling,
                                  int resolution = 0);

}  // namespace fk
