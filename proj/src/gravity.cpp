#include "vpmin/gravity.hpp"

#include "vpmin/errors.hpp"
#include "vpmin/io.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace vpmin {

namespace {

constexpr double PI = 3.14159265358979323846;

/// Enclosed mass at every node for the piecewise-linear density, with the
/// leading segment [0, r_0] carrying the constant value rho(r_0).
std::vector<double> enclosed_mass(const RadialDensity& rho) {
    const auto& g = rho.grid;
    std::vector<double> m(g.size());
    m[0] = 4.0 * PI * g.lead2 * rho.values[0];
    for (std::size_t i = 0; i + 1 < g.size(); ++i)
        m[i + 1] = m[i] + 4.0 * PI * (g.p2[i] * rho.values[i] + g.q2[i] * rho.values[i + 1]);
    return m;
}

/// Exact integral of m(s)/s^2 over [r_i, r_{i+1}] for the piecewise-linear
/// density; every term is nonnegative when rho >= 0.
double potential_increment(const RadialGrid& g, const std::vector<double>& rho,
                           const std::vector<double>& m, std::size_t i) {
    const double a = g.nodes[i];
    const double b = g.nodes[i + 1];
    const double d = b - a;
    return m[i] * d / (a * b) +
           PI * d * d / (3.0 * b) * (rho[i] * (4.0 * a + d) + rho[i + 1] * (2.0 * a + d));
}

/// Pair interaction through the shared bilinear core: quadrature of
/// m1*m2/r^2 plus the exact exterior tail M1*M2/r_max.
double interaction_bilinear(const RadialGrid& g, const std::vector<double>& m1,
                            const std::vector<double>& m2) {
    double q = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        q += g.quad_weights[i] * m1[i] * m2[i] / (g.nodes[i] * g.nodes[i]);
    return q + m1.back() * m2.back() / g.r_max();
}

/// Node mass elements dm_i = 4 pi w_i rho_i r_i^2.
std::vector<double> mass_elements(const RadialDensity& rho) {
    const auto& g = rho.grid;
    std::vector<double> dm(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        dm[i] = 4.0 * PI * g.quad_weights[i] * rho.values[i] * g.nodes[i] * g.nodes[i];
    return dm;
}

const std::array<std::pair<double, double>, 64>& gauss_legendre_64() {
    static const auto table = [] {
        std::array<std::pair<double, double>, 64> t{};
        const int n = 64;
        for (int k = 0; k < n; ++k) {
            double x = std::cos(PI * (k + 0.75) / (n + 0.5));
            double p1 = 0.0, p0 = 0.0, dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                p0 = 1.0;
                p1 = x;
                for (int j = 2; j <= n; ++j) {
                    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            p0 = 1.0;
            p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            t[k] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
        }
        return t;
    }();
    return table;
}

/// Average of min(1/|x-y|, c) over relative orientation for |x| = r, |y| = s.
/// Distances range over [|r-s|, r+s]; when the cap is inactive the exact
/// Newton average 1/max(r,s) applies, when it saturates the value is c,
/// and only the mixed regime needs the Gauss-Legendre rule.
double cutoff_kernel_average(double r, double s, double c) {
    const double d_min = std::abs(r - s);
    const double d_max = r + s;
    const double d_star = 1.0 / c;
    if (d_star <= d_min) return 1.0 / std::max(r, s);
    if (d_star >= d_max) return c;
    double acc = 0.0;
    for (const auto& [u, w] : gauss_legendre_64()) {
        const double d = std::sqrt(d_min * d_min + 2.0 * r * s * (1.0 - u));
        acc += w * std::min(1.0 / d, c);
    }
    return 0.5 * acc;
}

} // namespace

PotentialProfile solve_potential(const RadialDensity& rho) {
    const auto& g = rho.grid;
    PotentialProfile prof;
    prof.grid = g;
    prof.m_enc = enclosed_mass(rho);
    prof.u.assign(g.size(), 0.0);
    prof.u.back() = -prof.m_enc.back() / g.r_max();
    for (std::size_t i = g.size() - 1; i-- > 0;)
        prof.u[i] = prof.u[i + 1] - potential_increment(g, rho.values, prof.m_enc, i);
    prof.field.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        prof.field[i] = prof.m_enc[i] / (g.nodes[i] * g.nodes[i]);
    return prof;
}

double epot(const RadialDensity& rho) {
    const auto m = enclosed_mass(rho);
    return -0.5 * interaction_bilinear(rho.grid, m, m);
}

double epot_field_energy(const PotentialProfile& prof) {
    const auto& g = prof.grid;
    double q = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        q += g.quad_weights[i] * prof.field[i] * prof.field[i] * g.nodes[i] * g.nodes[i];
    const double m_total = prof.m_enc.back();
    return -0.5 * (q + m_total * m_total / g.r_max());
}

double epot_pair(const RadialDensity& rho1, const RadialDensity& rho2) {
    if (!rho1.grid.same_nodes(rho2.grid))
        throw constraint_error("epot_pair: densities live on different grids");
    return interaction_bilinear(rho1.grid, enclosed_mass(rho1), enclosed_mass(rho2));
}

double epot_pair_direct(const RadialDensity& rho1, const RadialDensity& rho2) {
    const auto dm1 = mass_elements(rho1);
    const auto dm2 = mass_elements(rho2);
    double acc = 0.0;
    for (std::size_t i = 0; i < dm1.size(); ++i) {
        const double r = rho1.grid.nodes[i];
        double row = 0.0;
        for (std::size_t j = 0; j < dm2.size(); ++j)
            row += dm2[j] / std::max(r, rho2.grid.nodes[j]);
        acc += dm1[i] * row;
    }
    return acc;
}

double epot_cutoff(const RadialDensity& rho, double cutoff) {
    if (!(cutoff > 0.0) || !std::isfinite(cutoff))
        throw constraint_error("epot_cutoff: cutoff must be positive");
    const auto dm = mass_elements(rho);
    const auto& nodes = rho.grid.nodes;
    const std::size_t n = dm.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += dm[i] * dm[i] * cutoff_kernel_average(nodes[i], nodes[i], cutoff);
        double row = 0.0;
        for (std::size_t j = i + 1; j < n; ++j)
            row += dm[j] * cutoff_kernel_average(nodes[i], nodes[j], cutoff);
        acc += 2.0 * dm[i] * row;
    }
    return acc;
}

std::string to_csv(const RadialDensity& rho, const PotentialProfile& prof) {
    if (!rho.grid.same_nodes(prof.grid))
        throw constraint_error("to_csv: density and profile grids differ");
    std::ostringstream out;
    out << "# schema_version=" << io::schema_version << "\n";
    out << "r,rho,U,m_enc\n";
    for (std::size_t i = 0; i < rho.grid.size(); ++i)
        out << io::fmt17(rho.grid.nodes[i]) << ',' << io::fmt17(rho.values[i]) << ','
            << io::fmt17(prof.u[i]) << ',' << io::fmt17(prof.m_enc[i]) << '\n';
    return out.str();
}

} // namespace vpmin
