#pragma once

#include "vpmin/gravity.hpp"
#include "vpmin/radial.hpp"
#include "vpmin/reduced_energy.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace vpmin {

/// Knobs of the self-consistent-field solve.
struct ScfOptions {
    double tol = 1e-9;        // fixed-point residual target (relative sup norm)
    std::size_t max_iter = 3000;
    double damping = 0.5;     // update fraction; halved whenever a step would raise the energy
    double init_radius = 1.0; // radius of the default uniform-ball start
    std::optional<RadialDensity> initial; // overrides the default start (renormalized to mass)
    bool keep_iterates = false;           // record every accepted iterate
};

/// Converged constrained minimizer with its potential and per-step history.
struct MinimizerResult {
    RadialDensity rho0;
    PotentialProfile potential;
    double e0 = 0.0;        // cutoff energy of the final update
    double r_support = 0.0; // outermost node carrying mass; exactly zero beyond
    EnergyBreakdown energy;
    std::size_t iterations = 0;
    double residual = 0.0;              // final fixed-point residual
    std::vector<double> energy_trace;   // total energy: initial value, then one per step
    std::vector<double> residual_trace; // fixed-point residual per step
    std::vector<RadialDensity> iterates; // filled only when opts.keep_iterates
};

/// Minimizes the reduced energy over densities of mass params.mass by
/// damped fixed-point iteration on rho = c (e0 - U_rho)_+^(mu + 3/2),
/// where e0 is bisected inside [min U, 0] so each update carries the full
/// mass and c is lagged through psi of the current iterate.
/// Raises grid_too_small_error when the support wants to reach r_max and
/// numeric_error (with the residual trace) on non-convergence.
MinimizerResult scf_minimize(const ModelParams& params, const RadialGrid& grid,
                             const ScfOptions& opts = {});

/// scf_minimize, retried with doubled r_max (same node count and spacing)
/// whenever the support reaches the boundary; at most five doublings.
MinimizerResult scf_minimize_auto(const ModelParams& params, const RadialGrid& grid,
                                  const ScfOptions& opts = {});

/// Solution of theta'' + (2/xi) theta' + (theta)_+^n = 0, theta(0) = 1,
/// theta'(0) = 0, tabulated from a series start near the origin out to the
/// first zero xi1 (or to the integration cap, flagged unbounded).
struct LaneEmdenSolution {
    std::vector<double> xi;
    std::vector<double> theta;
    std::vector<double> dtheta;
    double xi1 = 0.0;
    double mtheta1 = 0.0; // -xi1^2 theta'(xi1), the dimensionless mass
    double index_n = 0.0;
    double step = 0.0;
    bool unbounded = false; // no zero before the cap (index >= 5)
};

/// Fourth-order integration at the given step; the zero is located by
/// bisecting the cubic interpolant of the bracketing step.
LaneEmdenSolution lane_emden(double n, double step = 1e-4);

/// theta at an arbitrary radius: series near the origin, cubic Hermite
/// between stored samples, zero beyond xi1.
double theta_at(const LaneEmdenSolution& sol, double x);

/// Density rho_c theta(r / length_scale)^n on a fresh uniform grid ending
/// at the support edge, normalized so its quadrature mass is exactly M.
RadialDensity polytrope_from_lane_emden(double n, double M, double length_scale,
                                        std::size_t n_grid = 2048);

/// Constancy defect of the first-variation expression
///   K ((2 mu + 5)/3) psi^(2 mu/3) rho^(2/(2 mu + 3)) + U
/// over the support {rho > 1e-8 max rho}: sup deviation from the support
/// mean, divided by |mean|.
double euler_lagrange_residual(const RadialDensity& rho, const ModelParams& params);

/// Largest node radius where rho exceeds threshold * max rho.
double support_radius(const RadialDensity& rho, double threshold);

/// Radius where the cutoff energy meets the (nondecreasing) potential,
/// by linear interpolation between the bracketing nodes.  Unlike the
/// thresholded support radius this is not quantized to the grid and not
/// biased inward by the threshold.
double zero_crossing_radius(const PotentialProfile& prof, double e0);

/// CSV of the minimizer profile: the r,rho,U,m_enc layout.
std::string to_csv(const MinimizerResult& res);

/// JSON sidecar: e0, r_support, energy breakdown, iterations, residual.
std::string to_json(const MinimizerResult& res);

} // namespace vpmin
