#include "vpmin/reduced_energy.hpp"

#include "vpmin/errors.hpp"
#include "vpmin/gravity.hpp"
#include "vpmin/io.hpp"

#include <cmath>
#include <sstream>

namespace vpmin {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw constraint_error(std::string("scaling: ") + what + " must be positive");
}

} // namespace

EnergyBreakdown energy_unchecked(const RadialDensity& rho, const ModelParams& params) {
    const double ps = psi(rho, params.mu);
    if (!std::isfinite(ps))
        throw constraint_error("energy: psi(rho) is not finite");
    EnergyBreakdown eb;
    eb.kinetic_term = params.k_coeff * std::pow(ps, (2.0 * params.mu + 3.0) / 3.0);
    eb.potential_term = epot(rho);
    eb.total = eb.kinetic_term + eb.potential_term;
    return eb;
}

EnergyBreakdown energy(const RadialDensity& rho, const ModelParams& params) {
    if (!in_constraint_set(rho, params))
        throw constraint_error("energy: density is outside the constraint set (mass mismatch)");
    return energy_unchecked(rho, params);
}

double scaling_factor(double mu, double M, double J, double M_new, double J_new) {
    if (!(mu > 0.0) || !(mu < 3.5))
        throw constraint_error("scaling: mu must lie in (0, 7/2)");
    require_positive(M, "M");
    require_positive(J, "J");
    require_positive(M_new, "M_new");
    require_positive(J_new, "J_new");
    return std::pow(M_new / M, (7.0 - 2.0 * mu) / 3.0) *
           std::pow(J_new / J, 2.0 * (mu + 1.0) / 3.0);
}

std::pair<double, double> scaling_map(double mu, double M, double J, double M_new,
                                      double J_new) {
    if (!(mu > 0.0) || !(mu < 3.5))
        throw constraint_error("scaling: mu must lie in (0, 7/2)");
    require_positive(M, "M");
    require_positive(J, "J");
    require_positive(M_new, "M_new");
    require_positive(J_new, "J_new");
    const double m = std::log(M_new / M);
    const double j = 2.0 * (mu + 1.0) / 3.0 * std::log(J_new / J);
    // Row 1: ln a - 3 ln b = m          (mass changes by M_new/M)
    // Row 2: c21 ln a + c22 ln b = j    (both energy terms pick up the
    //                                    same factor under the new J)
    const double c21 = (2.0 * mu - 1.0) / 3.0;
    const double c22 = 2.0 - 2.0 * mu;
    const double det = c22 + 3.0 * c21; // algebraically 1 for every mu
    if (std::abs(det) < 1e-12)
        throw numeric_error("scaling_map: degenerate exponent system");
    const double ln_a = (c22 * m + 3.0 * j) / det;
    const double ln_b = (-c21 * m + j) / det;
    return {std::exp(ln_a), std::exp(ln_b)};
}

SplittingCheck splitting_identity_check(const RadialDensity& rho, double r_split,
                                        const ModelParams& params) {
    const double psi_whole = psi(rho, params.mu);
    if (!(psi_whole > 0.0))
        throw constraint_error("splitting_identity_check: psi(rho) must be positive");
    auto [part1, part2] = split_at(rho, r_split);
    const double psi1 = psi(part1, params.mu);
    const double psi2 = psi(part2, params.mu);

    SplittingCheck check;
    check.alpha1 = psi1 / psi_whole;
    check.alpha2 = psi2 / psi_whole;

    const double expo = (2.0 * params.mu + 3.0) / 3.0;
    auto part_kinetic = [&](double psi_part, double alpha) {
        if (psi_part <= 0.0) return 0.0; // empty part carries no kinetic energy
        return params.k_coeff * std::pow(alpha, -2.0 * params.mu / 3.0) *
               std::pow(psi_part, expo);
    };

    check.lhs = energy_unchecked(rho, params).total;
    check.rhs = part_kinetic(psi1, check.alpha1) + epot(part1) +
                part_kinetic(psi2, check.alpha2) + epot(part2) - epot_pair(part1, part2);
    check.residual = std::abs(check.lhs - check.rhs) / std::abs(check.lhs);
    return check;
}

InfimumEstimate make_infimum_estimate(double value, const ModelParams& params,
                                      std::string source) {
    if (!(value < 0.0) || !std::isfinite(value))
        throw constraint_error("make_infimum_estimate: value must be negative");
    const double k = (7.0 - 2.0 * params.mu) / 3.0;
    InfimumEstimate est;
    est.value = value;
    est.r0 = params.mass * params.mass / (-k * value);
    est.source = std::move(source);
    return est;
}

ConcentrationBound concentration_bound(const RadialDensity& rho, double r_split,
                                       const ModelParams& params,
                                       const InfimumEstimate& inf_est) {
    if (!(r_split > 0.0))
        throw constraint_error("concentration_bound: r_split must be positive");
    if (!(inf_est.value < 0.0))
        throw constraint_error("concentration_bound: estimate must be negative");
    ConcentrationBound out;
    out.tail = tail_mass(rho, r_split);
    out.lhs = energy(rho, params).total;
    out.rhs = inf_est.value +
              out.tail * (params.mass - out.tail) * (1.0 / inf_est.r0 - 1.0 / r_split);
    return out;
}

std::string to_json(const EnergyBreakdown& eb) {
    std::ostringstream out;
    out << "{\"schema_version\":" << io::schema_version
        << ",\"kinetic_term\":" << io::fmt17(eb.kinetic_term)
        << ",\"potential_term\":" << io::fmt17(eb.potential_term)
        << ",\"total\":" << io::fmt17(eb.total) << "}";
    return out.str();
}

} // namespace vpmin
