#include "vpmin/radial.hpp"

#include "vpmin/errors.hpp"
#include "vpmin/io.hpp"

#include <cmath>
#include <sstream>

namespace vpmin {

namespace {

constexpr double PI = 3.14159265358979323846;

void build_quadrature(RadialGrid& g) {
    const std::size_t n = g.nodes.size();
    g.p2.assign(n - 1, 0.0);
    g.q2.assign(n - 1, 0.0);
    g.p1.assign(n - 1, 0.0);
    g.q1.assign(n - 1, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double a = g.nodes[i];
        const double d = g.nodes[i + 1] - a;
        // integral over [a, a+d] of s^2 * hat functions; cancellation-free form
        g.p2[i] = d * (a * a / 2.0 + a * d / 3.0 + d * d / 12.0);
        g.q2[i] = d * (a * a / 2.0 + 2.0 * a * d / 3.0 + d * d / 4.0);
        g.p1[i] = d * (a / 2.0 + d / 6.0);
        g.q1[i] = d * (a / 2.0 + d / 3.0);
    }
    const double r0 = g.nodes.front();
    g.lead2 = r0 * r0 * r0 / 3.0;
    g.quad_weights.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = (i == 0) ? g.lead2 : 0.0;
        if (i > 0) acc += g.q2[i - 1];
        if (i + 1 < n) acc += g.p2[i];
        g.quad_weights[i] = acc / (g.nodes[i] * g.nodes[i]);
    }
}

} // namespace

bool RadialGrid::same_nodes(const RadialGrid& other) const {
    return nodes == other.nodes;
}

RadialGrid make_grid(double r_max, std::size_t n, Spacing spacing) {
    if (!(r_max > 0.0) || !std::isfinite(r_max))
        throw constraint_error("make_grid: r_max must be positive and finite");
    if (n < 16)
        throw constraint_error("make_grid: need at least 16 nodes");
    std::vector<double> nodes(n);
    if (spacing == Spacing::uniform) {
        for (std::size_t i = 0; i < n; ++i)
            nodes[i] = r_max * static_cast<double>(i + 1) / static_cast<double>(n);
    } else {
        const double r_min = r_max * 1e-6;
        const double ratio = std::log(r_max / r_min);
        for (std::size_t i = 0; i < n; ++i)
            nodes[i] = r_min * std::exp(ratio * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    nodes.back() = r_max;
    return make_grid_from_nodes(std::move(nodes), spacing);
}

RadialGrid make_grid_from_nodes(std::vector<double> nodes, Spacing spacing) {
    if (nodes.size() < 2)
        throw constraint_error("make_grid_from_nodes: need at least 2 nodes");
    if (!(nodes.front() > 0.0))
        throw constraint_error("make_grid_from_nodes: nodes must be strictly positive");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!std::isfinite(nodes[i]))
            throw constraint_error("make_grid_from_nodes: non-finite node");
        if (i > 0 && !(nodes[i] > nodes[i - 1]))
            throw constraint_error("make_grid_from_nodes: nodes must be strictly increasing");
    }
    RadialGrid g;
    g.nodes = std::move(nodes);
    g.spacing = spacing;
    build_quadrature(g);
    return g;
}

RadialDensity make_density(RadialGrid grid, std::vector<double> values) {
    if (grid.size() != values.size())
        throw constraint_error("make_density: size mismatch between grid and values");
    for (double v : values)
        if (!std::isfinite(v) || v < 0.0)
            throw constraint_error("make_density: values must be finite and nonnegative");
    return RadialDensity{std::move(grid), std::move(values)};
}

ModelParams::ModelParams(double mu_, double mass_, double j_norm_, double k11_)
    : mu(mu_), mass(mass_), j_norm(j_norm_), k11(k11_), k_coeff(0.0) {
    if (!(mu > 0.0) || !(mu < 3.5))
        throw constraint_error("ModelParams: mu must lie in (0, 7/2)");
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw constraint_error("ModelParams: mass must be positive");
    if (!(j_norm > 0.0) || !std::isfinite(j_norm))
        throw constraint_error("ModelParams: j_norm must be positive");
    if (!(k11 > 0.0) || !std::isfinite(k11))
        throw constraint_error("ModelParams: k11 must be positive");
    k_coeff = k11 * std::pow(j_norm, -2.0 * (mu + 1.0) / 3.0);
}

double mass(const RadialDensity& rho) {
    const auto& g = rho.grid;
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        s += g.quad_weights[i] * rho.values[i] * g.nodes[i] * g.nodes[i];
    return 4.0 * PI * s;
}

double lp_norm(const RadialDensity& rho, double p) {
    if (!(p >= 1.0))
        throw constraint_error("lp_norm: p must be >= 1");
    const auto& g = rho.grid;
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        s += g.quad_weights[i] * std::pow(rho.values[i], p) * g.nodes[i] * g.nodes[i];
    return std::pow(4.0 * PI * s, 1.0 / p);
}

double psi(const RadialDensity& rho, double mu) {
    if (!(mu > 0.0) || !(mu < 3.5))
        throw constraint_error("psi: mu must lie in (0, 7/2)");
    const double p = (2.0 * mu + 5.0) / (2.0 * mu + 3.0);
    const auto& g = rho.grid;
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        s += g.quad_weights[i] * std::pow(rho.values[i], p) * g.nodes[i] * g.nodes[i];
    return 4.0 * PI * s;
}

bool in_constraint_set(const RadialDensity& rho, const ModelParams& params, double mass_tol) {
    const double m = mass(rho);
    if (!std::isfinite(m) || !std::isfinite(psi(rho, params.mu)))
        return false;
    return std::abs(m - params.mass) <= mass_tol * params.mass;
}

RadialDensity rescale(const RadialDensity& rho, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw constraint_error("rescale: factors must be positive and finite");
    std::vector<double> nodes(rho.grid.size());
    std::vector<double> values(rho.grid.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        nodes[i] = rho.grid.nodes[i] / b;
        values[i] = a * rho.values[i];
    }
    return RadialDensity{make_grid_from_nodes(std::move(nodes), rho.grid.spacing),
                         std::move(values)};
}

std::pair<RadialDensity, RadialDensity> split_at(const RadialDensity& rho, double r_split) {
    if (!(r_split > 0.0))
        throw constraint_error("split_at: r_split must be positive");
    RadialDensity inner{rho.grid, std::vector<double>(rho.values.size(), 0.0)};
    RadialDensity outer{rho.grid, std::vector<double>(rho.values.size(), 0.0)};
    for (std::size_t i = 0; i < rho.values.size(); ++i) {
        if (rho.grid.nodes[i] <= r_split)
            inner.values[i] = rho.values[i];
        else
            outer.values[i] = rho.values[i];
    }
    return {std::move(inner), std::move(outer)};
}

double tail_mass(const RadialDensity& rho, double r_split) {
    if (!(r_split > 0.0))
        throw constraint_error("tail_mass: r_split must be positive");
    return mass(rho) - mass(split_at(rho, r_split).first);
}

RadialDensity uniform_ball(const RadialGrid& grid, double M, double R) {
    if (!(M >= 0.0) || !(R > 0.0))
        throw constraint_error("uniform_ball: need M >= 0 and R > 0");
    const double rho_c = 3.0 * M / (4.0 * PI * R * R * R);
    std::vector<double> values(grid.size(), 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid.nodes[i] < R)
            values[i] = rho_c;
    return RadialDensity{grid, std::move(values)};
}

std::string to_csv(const RadialDensity& rho) {
    std::ostringstream out;
    out << "# schema_version=" << io::schema_version << "\n";
    out << "r,rho\n";
    for (std::size_t i = 0; i < rho.grid.size(); ++i)
        out << io::fmt17(rho.grid.nodes[i]) << ',' << io::fmt17(rho.values[i]) << '\n';
    return out.str();
}

RadialDensity density_from_csv(const std::string& text, Spacing spacing) {
    std::istringstream in(text);
    std::string line;
    std::vector<double> nodes, values;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("r,", 0) == 0)
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw constraint_error("density_from_csv: malformed row: " + line);
        nodes.push_back(std::stod(line.substr(0, comma)));
        values.push_back(std::stod(line.substr(comma + 1)));
    }
    return make_density(make_grid_from_nodes(std::move(nodes), spacing), std::move(values));
}

} // namespace vpmin
