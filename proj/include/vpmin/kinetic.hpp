#pragma once

#include "vpmin/gravity.hpp"
#include "vpmin/radial.hpp"

#include <string>
#include <vector>

namespace vpmin {

/// Isotropic phase-space slice at one spatial point: g(w) >= 0 sampled on
/// a uniform speed grid chosen to cover the profile's support.
struct VelocityProfile {
    std::vector<double> speeds;
    std::vector<double> values;
};

/// integral of g(w) 4 pi w^2 dw by trapezoid on the stored grid.
double velocity_integral(const VelocityProfile& g);

/// integral of (w^2/2) g(w) 4 pi w^2 dw.
double velocity_kinetic(const VelocityProfile& g);

/// integral of g(w)^e 4 pi w^2 dw.
double velocity_power_integral(const VelocityProfile& g, double e);

/// The pointwise-optimal slice g(w) = ((c - w^2/2)/lambda_prime)_+^mu on
/// 4096 speed nodes spanning [0, sqrt(2c)*1.01]; requires c > 0.
VelocityProfile optimal_profile(double c, double lambda_prime, double mu);

/// Velocity integral of (c - w^2/2)_+^mu over R^3: zero for c <= 0,
/// strictly increasing and proportional to c^(mu+3/2) otherwise.
double ansatz_density(double c, double mu);

/// Outcome of minimizing kinetic energy over phase-space profiles that
/// reproduce a given spatial density pointwise and carry a prescribed
/// (1+1/mu)-norm.
struct ReductionResult {
    double ekin_min = 0.0;
    double k11_fit = 0.0;          // ekin_min * J^(2(mu+1)/3) / psi^((2mu+3)/3)
    double lagrange_lambda = 0.0;  // norm-constraint multiplier lambda'
    std::vector<double> per_point_c;
    double mass_rel_err = 0.0;     // worst pointwise density reconstruction error
    double j_rel_err = 0.0;        // norm reconstruction error
};

/// Minimal kinetic energy over f >= 0 with integral(f dv) = rho pointwise
/// and ||f||_{1+1/mu} = J, found within the optimal family
/// g = ((c(x) - w^2/2)/lambda')_+^mu by bisecting c(x) pointwise (inner)
/// and the multiplier lambda' on the norm constraint (outer).
/// Preconditions: rho nonzero, J > 0, mu in (0, 7/2).
/// A bracket that cannot be established raises numeric_error.
ReductionResult global_reduce(const RadialDensity& rho, double J, double mu);

/// Measured coupling: k11_fit of a reference profile at this mu.  The
/// value is density- and J-independent; repeat calls are cached.
double k11_oracle(double mu);

/// Diagnostics of lifting a spatial minimizer to phase space through
/// f0 = kappa (e0 - w^2/2 - U(r))_+^mu, with kappa calibrated where the
/// density peaks.
struct LiftResult {
    bool empty = false; // e0 at or below min U: nothing above the cutoff
    double kappa = 0.0;
    double mass_lifted = 0.0; // ||f0||_1
    double j_lifted = 0.0;    // ||f0||_{1+1/mu}
    double ekin_lifted = 0.0;
    double max_density_rel_err = 0.0; // sup |int f0 dv - rho0| / max rho0
};

LiftResult lift_minimizer(const RadialDensity& rho0, const PotentialProfile& potential,
                          double e0, double mu);

/// JSON with the scalar fields and reconstruction diagnostics.
std::string to_json(const ReductionResult& r);

} // namespace vpmin
