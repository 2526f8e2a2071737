#include "vpmin/sequences.hpp"

#include <cmath>
#include <sstream>

#include "vpmin/errors.hpp"
#include "vpmin/gravity.hpp"
#include "vpmin/io.hpp"

namespace vpmin {

namespace {

constexpr double PI = 3.14159265358979323846;

} // namespace

double field_distance(const RadialDensity& rho_a, const RadialDensity& rho_b) {
    if (!rho_a.grid.same_nodes(rho_b.grid))
        throw constraint_error("field_distance: grids differ");
    const auto pa = solve_potential(rho_a);
    const auto pb = solve_potential(rho_b);
    const auto& g = rho_a.grid;
    double acc = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double dm = pa.m_enc[i] - pb.m_enc[i];
        acc += g.quad_weights[i] * dm * dm / (g.nodes[i] * g.nodes[i]);
    }
    const double dM = pa.m_enc.back() - pb.m_enc.back();
    acc += dM * dM / g.r_max();
    return std::sqrt(4.0 * PI * acc);
}

std::vector<SequenceReport> sequence_report(const std::vector<RadialDensity>& rho_seq,
                                            const RadialDensity& rho_limit,
                                            double R, double mu) {
    if (rho_seq.empty())
        throw constraint_error("sequence_report: empty sequence");
    if (!(R > 0.0))
        throw constraint_error("sequence_report: R must be positive");
    if (!(mu > 0.0) || !(mu < 3.5))
        throw constraint_error("sequence_report: mu must lie in (0, 7/2)");
    for (const auto& rho : rho_seq)
        if (!rho.grid.same_nodes(rho_limit.grid))
            throw constraint_error("sequence_report: grids differ");

    const double p = (2.0 * mu + 5.0) / (2.0 * mu + 3.0);
    const auto& g = rho_limit.grid;
    const double e_limit = epot(rho_limit);

    std::vector<SequenceReport> out;
    out.reserve(rho_seq.size());
    for (std::size_t k = 0; k < rho_seq.size(); ++k) {
        const auto& rho = rho_seq[k];
        SequenceReport rep;
        rep.index = k + 1;
        rep.epot_diff = epot(rho) + e_limit + epot_pair(rho, rho_limit);
        rep.tail_mass = tail_mass(rho, R);
        double lp = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double d = std::abs(rho.values[i] - rho_limit.values[i]);
            if (d > 0.0)
                lp += g.quad_weights[i] * std::pow(d, p) * g.nodes[i] * g.nodes[i];
        }
        rep.lp_dist = std::pow(4.0 * PI * lp, 1.0 / p);
        rep.field_dist = field_distance(rho, rho_limit);
        out.push_back(rep);
    }
    return out;
}

std::string to_csv(const std::vector<SequenceReport>& reports) {
    std::ostringstream out;
    out << "# schema_version=" << io::schema_version << "\n";
    out << "n,epot_diff,tail_mass,lp_dist,field_dist\n";
    for (const auto& r : reports)
        out << r.index << ',' << io::fmt17(r.epot_diff) << ','
            << io::fmt17(r.tail_mass) << ',' << io::fmt17(r.lp_dist) << ','
            << io::fmt17(r.field_dist) << '\n';
    return out.str();
}

} // namespace vpmin
