#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vpmin/radial.hpp"

namespace vpmin {

/// Per-index diagnostics of a density sequence against its limit.  The
/// underlying difference rho_n - rho_limit may change sign; every quantity
/// below is built from enclosed-mass profiles, bilinear pair energies, or
/// absolute values, so no signed density is ever materialized.
struct SequenceReport {
    std::size_t index = 0;   // 1-based position in the sequence
    double epot_diff = 0.0;  // potential energy of the difference; <= 0
    double tail_mass = 0.0;  // mass of rho_n beyond the concentration radius
    double lp_dist = 0.0;    // L^{(2mu+5)/(2mu+3)} distance to the limit
    double field_dist = 0.0; // L^2 distance of the induced force fields
};

/// L^2 distance of the force fields of two densities on one grid,
///   (4 pi [ sum_i w_i (m_a,i - m_b,i)^2 / r_i^2 + (M_a - M_b)^2 / r_max ])^{1/2},
/// with the closed-form exterior tail included.  Zero iff the enclosed-mass
/// profiles agree on every node.  Throws constraint_error on a grid mismatch.
double field_distance(const RadialDensity& rho_a, const RadialDensity& rho_b);

/// Diagnostics of every sequence member against rho_limit, with tail masses
/// measured beyond R.  epot_diff goes through the bilinear pair route
/// epot(a) + epot(b) + epot_pair(a, b) — an arithmetic path independent of
/// field_distance — and -8 pi epot_diff matches field_dist^2 to roundoff.
std::vector<SequenceReport> sequence_report(const std::vector<RadialDensity>& rho_seq,
                                            const RadialDensity& rho_limit,
                                            double R, double mu);

/// CSV `n,epot_diff,tail_mass,lp_dist,field_dist`.
std::string to_csv(const std::vector<SequenceReport>& reports);

} // namespace vpmin
