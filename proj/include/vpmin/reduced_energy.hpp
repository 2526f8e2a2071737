#pragma once

#include "vpmin/radial.hpp"

#include <string>
#include <utility>

namespace vpmin {

/// Reduced energy split into its two terms.
/// kinetic_term = K * psi(rho)^((2 mu + 3)/3) with K = k11 / J^(2(mu+1)/3);
/// potential_term = epot(rho); total is their sum, computed as such.
struct EnergyBreakdown {
    double kinetic_term = 0.0;
    double potential_term = 0.0;
    double total = 0.0;
};

/// Outcome of the exact split-energy identity check.
/// alpha1/alpha2 are the psi fractions of the two parts (they sum to 1).
struct SplittingCheck {
    double residual = 0.0; // |lhs - rhs| / |lhs|
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
};

/// Estimated infimum of the reduced energy over the constraint set,
/// always negative.  r0 = M^2 / (-k * value) with k = (7 - 2 mu)/3 is the
/// concentration radius entering the lower bound.
struct InfimumEstimate {
    double value = 0.0;
    double r0 = 0.0;
    std::string source;
};

/// Reported sides of the concentration lower bound; no inequality is
/// enforced because `value` is an estimate, not the true infimum.
struct ConcentrationBound {
    double lhs = 0.0;  // energy(rho).total
    double rhs = 0.0;  // value + tail*(M - tail)*(1/r0 - 1/r_split)
    double tail = 0.0; // mass beyond r_split
};

/// Reduced energy of a density in the constraint set (mass is validated
/// against params.mass; mismatch or non-finite psi raises constraint_error).
EnergyBreakdown energy(const RadialDensity& rho, const ModelParams& params);

/// Same evaluation without the mass check.  Needed for pieces of a split
/// density and other profiles that deliberately carry partial mass.
EnergyBreakdown energy_unchecked(const RadialDensity& rho, const ModelParams& params);

/// (M_new/M)^((7-2mu)/3) * (J_new/J)^(2(mu+1)/3): the factor by which the
/// infimum moves between parameter pairs.
double scaling_factor(double mu, double M, double J, double M_new, double J_new);

/// The unique (a, b) such that rescale(rho, a, b) maps mass-M profiles to
/// mass-M_new profiles while multiplying BOTH energy terms (kinetic under
/// J_new, potential) by scaling_factor(...).  Solves the 2x2 log-linear
/// system of the mass and energy-consistency exponent equations, whose
/// determinant is identically 1.
std::pair<double, double> scaling_map(double mu, double M, double J, double M_new, double J_new);

/// Checks the exact identity
///   E_J(rho) = sum_i [ K alpha_i^(-2mu/3) psi_i^((2mu+3)/3) + epot(rho_i) ]
///              - epot_pair(rho_1, rho_2)
/// for the split of rho at r_split, where alpha_i = psi_i / psi(rho).
/// Empty parts contribute zero kinetic energy.  psi(rho) = 0 raises
/// constraint_error.
SplittingCheck splitting_identity_check(const RadialDensity& rho, double r_split,
                                        const ModelParams& params);

/// Validates value < 0 and fills in r0.
InfimumEstimate make_infimum_estimate(double value, const ModelParams& params,
                                      std::string source);

/// Evaluates both sides of the concentration bound at a split radius.
ConcentrationBound concentration_bound(const RadialDensity& rho, double r_split,
                                       const ModelParams& params,
                                       const InfimumEstimate& inf_est);

/// JSON {"schema_version":..., "kinetic_term":..., "potential_term":..., "total":...}.
std::string to_json(const EnergyBreakdown& eb);

} // namespace vpmin
