#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace vpmin {

enum class Spacing { uniform, log };

/// Radial grid on (0, r_max] with quadrature data for integrals over
/// [0, r_max].  Nodes are strictly increasing and strictly positive; the
/// last node equals r_max.
///
/// The quadrature integrates r^2 * (piecewise-linear interpolant of f/r^2),
/// i.e. it is a composite trapezoid rule in g = f/r^2 under the measure
/// r^2 dr, with the leading segment [0, r_0] closed using g(0) = g(r_0).
/// It is exact for f(r) = c*r^2 on the whole of [0, r_max], which is the
/// natural class here: every integrand in this library is a bounded
/// profile times r^2.  (A plain trapezoid rule in f cannot meet the
/// 1e-10 calibration requirement on r^2 at practical node counts.)
struct RadialGrid {
    std::vector<double> nodes;
    /// Weights on integrand values: integral(f, [0,r_max]) ~ sum w_i f(r_i).
    std::vector<double> quad_weights;
    Spacing spacing = Spacing::uniform;

    /// Per-interval coefficients for cumulative integrals of s^2 * PL(g):
    /// integral over [r_i, r_{i+1}] = p2[i]*g_i + q2[i]*g_{i+1}.
    std::vector<double> p2, q2;
    /// Same for s^1 * PL(g) (used by the exterior potential integral).
    std::vector<double> p1, q1;
    /// Exact integral of s^2 over [0, r_0]; closes the leading segment.
    double lead2 = 0.0;

    std::size_t size() const { return nodes.size(); }
    double r_max() const { return nodes.back(); }
    bool same_nodes(const RadialGrid& other) const;
};

/// Build a grid with n nodes.  Log spacing starts at r_max * 1e-6.
/// Preconditions: r_max > 0 and finite, n >= 16.
RadialGrid make_grid(double r_max, std::size_t n, Spacing spacing = Spacing::uniform);

/// Build a grid from explicit nodes (strictly increasing, all > 0).
RadialGrid make_grid_from_nodes(std::vector<double> nodes, Spacing spacing);

/// Nonnegative radial profile sampled on grid nodes.
struct RadialDensity {
    RadialGrid grid;
    std::vector<double> values;
};

/// Validating constructor: sizes must match, values finite and >= 0.
RadialDensity make_density(RadialGrid grid, std::vector<double> values);

/// Model parameters for the reduced energy functional.  k_coeff is the
/// derived coefficient k11 * j_norm^(-2(mu+1)/3) multiplying
/// psi(rho)^((2mu+3)/3).
struct ModelParams {
    double mu;
    double mass;
    double j_norm;
    double k11;
    double k_coeff;

    ModelParams(double mu_, double mass_, double j_norm_, double k11_);
};

/// Total mass: 4*pi * integral rho r^2 dr.
double mass(const RadialDensity& rho);

/// L^p norm over R^3 of the radial profile, p >= 1.
double lp_norm(const RadialDensity& rho, double p);

/// psi(rho) = integral rho^((2mu+5)/(2mu+3)) dx over R^3.
double psi(const RadialDensity& rho, double mu);

/// Constraint-set membership: mass within relative tolerance, psi finite.
bool in_constraint_set(const RadialDensity& rho, const ModelParams& params,
                       double mass_tol = 1e-6);

/// rho_bar(r) = a * rho(b * r).  The grid itself is rescaled
/// (r_i -> r_i / b), so the scaling identities for mass, psi and the
/// potential energy hold to machine precision.
RadialDensity rescale(const RadialDensity& rho, double a, double b);

/// Split at radius: (rho * 1[r <= r_split], rho * 1[r > r_split]), both on
/// the original grid.  Node values are assigned to exactly one side, so
/// the parts reconstruct rho exactly.
std::pair<RadialDensity, RadialDensity> split_at(const RadialDensity& rho, double r_split);

/// Mass of the part strictly outside r_split.
double tail_mass(const RadialDensity& rho, double r_split);

/// Uniform ball of mass M and radius R sampled sharply (value 3M/(4 pi R^3)
/// at nodes with r < R).  Tests that need second-order accuracy place R
/// midway between consecutive nodes.
RadialDensity uniform_ball(const RadialGrid& grid, double M, double R);

/// CSV with header "r,rho" and a schema_version comment line.
std::string to_csv(const RadialDensity& rho);
RadialDensity density_from_csv(const std::string& text, Spacing spacing = Spacing::uniform);

} // namespace vpmin
