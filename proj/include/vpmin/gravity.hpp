#pragma once

#include "vpmin/radial.hpp"

#include <string>
#include <vector>

namespace vpmin {

/// Newtonian potential data of a radial density (G = 1, attractive).
/// All arrays are sampled on the density's grid nodes.
struct PotentialProfile {
    RadialGrid grid;
    /// U(r_i), nonpositive and nondecreasing in r; U(r_max) = -M/r_max.
    std::vector<double> u;
    /// Enclosed mass 4*pi*integral(rho s^2, [0, r_i]); nondecreasing.
    std::vector<double> m_enc;
    /// |grad U|(r_i) = m_enc(r_i) / r_i^2.
    std::vector<double> field;
};

/// Integrate the potential with U(r) -> 0 at infinity.  The density is
/// taken to vanish beyond r_max, so the exterior closed form -M/r is exact
/// there.  U is accumulated inward from -M/r_max by per-panel increments
/// that are nonnegative by construction, so monotonicity holds exactly,
/// not just to rounding.
PotentialProfile solve_potential(const RadialDensity& rho);

/// Potential energy -(1/2) integral(m(r)^2 / r^2, [0, inf)).  The piece
/// beyond r_max is the closed form -M^2/(2 r_max); dropping it would lose
/// most of the value for compact profiles.
double epot(const RadialDensity& rho);

/// Same quantity through the field-energy form -(1/(8 pi)) int |grad U|^2 dx,
/// reading the stored field profile.  Cross-check route for epot.
double epot_field_energy(const PotentialProfile& prof);

/// Interaction integral of two densities on the same grid:
/// integral over pairs of rho1(x) rho2(y) / |x - y|, always >= 0.
/// Computed bilinearly as integral(m1 m2 / r^2) plus the exterior tail, so
/// epot(rho) = -1/2 * epot_pair(rho, rho) holds to rounding and the
/// pair-splitting energy identity is exact.
/// Grid mismatch raises constraint_error.
double epot_pair(const RadialDensity& rho1, const RadialDensity& rho2);

/// Reference evaluation of the same interaction by the angular-averaged
/// kernel 1/max(r, s) over all node pairs (O(n^2)).  Independent route:
/// agrees with epot_pair only in the grid limit, exactly for point shells.
double epot_pair_direct(const RadialDensity& rho1, const RadialDensity& rho2);

/// Interaction with the truncated kernel min(1/|x - y|, cutoff).
/// Angular averages use 64-point Gauss-Legendre in cos(angle) where the
/// cap is active and the exact Newton form 1/max(r,s) where it is not.
/// Nondecreasing in cutoff; bounded by min(cutoff*M^2, epot_pair(rho,rho)).
/// cutoff <= 0 raises constraint_error.
double epot_cutoff(const RadialDensity& rho, double cutoff);

/// CSV "r,rho,U,m_enc" with a schema_version comment line.
std::string to_csv(const RadialDensity& rho, const PotentialProfile& prof);

} // namespace vpmin
