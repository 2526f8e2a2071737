#include "vpmin/kinetic.hpp"

#include "vpmin/errors.hpp"
#include "vpmin/io.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace vpmin {

namespace {

constexpr double PI = 3.14159265358979323846;
constexpr std::size_t speed_nodes = 4096;
constexpr double support_headroom = 1.01;

void require_mu(double mu) {
    if (!(mu > 0.0) || !(mu < 3.5))
        throw constraint_error("kinetic: mu must lie in (0, 7/2)");
}

/// Trapezoid of (1 - y^2/2)_+^expn * extra(y) * 4 pi y^2 on the unit-support
/// speed grid.  Every integral of the optimal family reduces to one of
/// these by the exact substitution w = sqrt(c) y.
double unit_speed_sum(double expn, bool kinetic_weight) {
    const double y_max = std::sqrt(2.0) * support_headroom;
    const double h = y_max / static_cast<double>(speed_nodes - 1);
    double acc = 0.0;
    for (std::size_t j = 0; j < speed_nodes; ++j) {
        const double y = h * static_cast<double>(j);
        const double core = 1.0 - 0.5 * y * y;
        if (core <= 0.0) continue;
        double v = std::pow(core, expn) * 4.0 * PI * y * y;
        if (kinetic_weight) v *= 0.5 * y * y;
        const double w = (j == 0 || j + 1 == speed_nodes) ? 0.5 * h : h;
        acc += w * v;
    }
    return acc;
}

struct UnitSums {
    double density; // integral (1-y^2/2)_+^mu 4 pi y^2 dy
    double kinetic; // same with extra weight y^2/2
    double pnorm;   // exponent mu+1 instead of mu
};

UnitSums unit_sums(double mu) {
    return {unit_speed_sum(mu, false), unit_speed_sum(mu, true), unit_speed_sum(mu + 1.0, false)};
}

/// Spatial integral weights 4 pi w_i r_i^2 for summing per-point velocity
/// integrals over R^3.
std::vector<double> space_weights(const RadialGrid& g) {
    std::vector<double> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        out[i] = 4.0 * PI * g.quad_weights[i] * g.nodes[i] * g.nodes[i];
    return out;
}

/// Bisect a continuous nondecreasing f for f(x) = 0 on [lo, hi] with
/// f(lo) <= 0 <= f(hi); 1e-12 absolute tolerance, at most 200 steps.
template <class F>
double bisect(F&& f, double lo, double hi) {
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) <= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double velocity_integral(const VelocityProfile& g) {
    return velocity_power_integral(g, 1.0);
}

double velocity_kinetic(const VelocityProfile& g) {
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < g.speeds.size(); ++j) {
        const double h = g.speeds[j + 1] - g.speeds[j];
        const double f0 = 0.5 * g.speeds[j] * g.speeds[j] * g.values[j] * 4.0 * PI *
                          g.speeds[j] * g.speeds[j];
        const double f1 = 0.5 * g.speeds[j + 1] * g.speeds[j + 1] * g.values[j + 1] * 4.0 * PI *
                          g.speeds[j + 1] * g.speeds[j + 1];
        acc += 0.5 * h * (f0 + f1);
    }
    return acc;
}

double velocity_power_integral(const VelocityProfile& g, double e) {
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < g.speeds.size(); ++j) {
        const double h = g.speeds[j + 1] - g.speeds[j];
        const double f0 = std::pow(g.values[j], e) * 4.0 * PI * g.speeds[j] * g.speeds[j];
        const double f1 =
            std::pow(g.values[j + 1], e) * 4.0 * PI * g.speeds[j + 1] * g.speeds[j + 1];
        acc += 0.5 * h * (f0 + f1);
    }
    return acc;
}

VelocityProfile optimal_profile(double c, double lambda_prime, double mu) {
    require_mu(mu);
    if (!(c > 0.0))
        throw constraint_error("optimal_profile: c must be positive");
    if (!(lambda_prime > 0.0))
        throw constraint_error("optimal_profile: lambda_prime must be positive");
    VelocityProfile g;
    g.speeds.resize(speed_nodes);
    g.values.resize(speed_nodes);
    const double w_max = std::sqrt(2.0 * c) * support_headroom;
    for (std::size_t j = 0; j < speed_nodes; ++j) {
        const double w = w_max * static_cast<double>(j) / static_cast<double>(speed_nodes - 1);
        g.speeds[j] = w;
        const double core = (c - 0.5 * w * w) / lambda_prime;
        g.values[j] = core > 0.0 ? std::pow(core, mu) : 0.0;
    }
    return g;
}

double ansatz_density(double c, double mu) {
    require_mu(mu);
    if (c <= 0.0) return 0.0;
    return unit_speed_sum(mu, false) * std::pow(c, mu + 1.5);
}

ReductionResult global_reduce(const RadialDensity& rho, double J, double mu) {
    require_mu(mu);
    if (!(J > 0.0) || !std::isfinite(J))
        throw constraint_error("global_reduce: J must be positive");
    const double psi_rho = psi(rho, mu);
    if (!(psi_rho > 0.0))
        throw constraint_error("global_reduce: rho must be nonzero");

    const auto sums = unit_sums(mu);
    const auto sw = space_weights(rho.grid);
    const std::size_t n = rho.grid.size();
    const double c_expo = mu + 1.5;

    // Pointwise multiplier for a given lambda': the density of the optimal
    // slice is lambda'^(-mu) * sums.density * c^(mu+3/2), strictly
    // increasing in c, so bisection brackets and converges for every node.
    auto solve_c = [&](double lambda, double target) -> double {
        if (target <= 0.0) return 0.0;
        const double scale = std::pow(lambda, -mu) * sums.density;
        auto f = [&](double c) { return scale * std::pow(c, c_expo) - target; };
        double hi = 1.0;
        int grow = 0;
        while (f(hi) < 0.0) {
            hi *= 2.0;
            if (++grow > 300)
                throw numeric_error("global_reduce: no bracket for the pointwise multiplier");
        }
        return bisect(f, 0.0, hi);
    };

    // Norm functional at a given lambda', using the c profile it induces.
    auto norm_power = [&](double lambda) -> double {
        const double scale = std::pow(lambda, -(mu + 1.0)) * sums.pnorm;
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double c = solve_c(lambda, rho.values[i]);
            if (c > 0.0) acc += sw[i] * scale * std::pow(c, mu + 2.5);
        }
        return acc;
    };

    // The functional decreases strictly in lambda'; bracket then bisect.
    const double target = std::pow(J, (mu + 1.0) / mu);
    double lo = 1.0, hi = 1.0;
    int grow = 0;
    while (norm_power(lo) < target) {
        lo *= 0.5;
        if (++grow > 300)
            throw numeric_error("global_reduce: no lower bracket for the norm multiplier");
    }
    grow = 0;
    while (norm_power(hi) > target) {
        hi *= 2.0;
        if (++grow > 300)
            throw numeric_error("global_reduce: no upper bracket for the norm multiplier");
    }
    const double lambda = bisect([&](double l) { return target - norm_power(l); }, lo, hi);

    ReductionResult res;
    res.lagrange_lambda = lambda;
    res.per_point_c.assign(n, 0.0);
    // The kinetic moment of each optimal slice is exactly 3c/(2mu+5) times
    // its density moment, so the kinetic term is accumulated through the
    // density scale; the fitted coupling and the lifted norm then agree
    // with the density route independently of speed-grid quadrature error.
    const double kin_ratio = 3.0 / (2.0 * mu + 5.0);
    const double den_scale = std::pow(lambda, -mu) * sums.density;
    double ekin = 0.0, norm_acc = 0.0, worst = 0.0, rho_max = 0.0;
    const double norm_scale = std::pow(lambda, -(mu + 1.0)) * sums.pnorm;
    for (std::size_t i = 0; i < n; ++i) {
        const double c = solve_c(lambda, rho.values[i]);
        res.per_point_c[i] = c;
        rho_max = std::max(rho_max, rho.values[i]);
        if (c > 0.0) {
            ekin += sw[i] * kin_ratio * c * den_scale * std::pow(c, c_expo);
            norm_acc += sw[i] * norm_scale * std::pow(c, mu + 2.5);
            worst = std::max(worst, std::abs(den_scale * std::pow(c, c_expo) - rho.values[i]));
        } else {
            worst = std::max(worst, rho.values[i]);
        }
    }
    res.ekin_min = ekin;
    res.mass_rel_err = rho_max > 0.0 ? worst / rho_max : 0.0;
    res.j_rel_err = std::abs(std::pow(norm_acc, mu / (mu + 1.0)) - J) / J;
    res.k11_fit = ekin * std::pow(J, 2.0 * (mu + 1.0) / 3.0) /
                  std::pow(psi_rho, (2.0 * mu + 3.0) / 3.0);
    return res;
}

double k11_oracle(double mu) {
    require_mu(mu);
    static std::mutex guard;
    static std::map<double, double> cache;
    std::lock_guard<std::mutex> lock(guard);
    auto it = cache.find(mu);
    if (it != cache.end()) return it->second;
    auto grid = make_grid(2.0, 256, Spacing::uniform);
    auto reference = uniform_ball(grid, 1.0, 1.0005);
    const double fit = global_reduce(reference, 1.0, mu).k11_fit;
    cache.emplace(mu, fit);
    return fit;
}

LiftResult lift_minimizer(const RadialDensity& rho0, const PotentialProfile& potential,
                          double e0, double mu) {
    require_mu(mu);
    if (!rho0.grid.same_nodes(potential.grid))
        throw constraint_error("lift_minimizer: density and potential grids differ");
    const auto sums = unit_sums(mu);
    const auto sw = space_weights(rho0.grid);
    const std::size_t n = rho0.grid.size();

    LiftResult lift;
    std::size_t peak = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (rho0.values[i] > rho0.values[peak]) peak = i;
    const double c_peak = e0 - potential.u[peak];
    if (!(c_peak > 0.0) || !(rho0.values[peak] > 0.0)) {
        lift.empty = true;
        return lift;
    }
    lift.kappa = rho0.values[peak] / (sums.density * std::pow(c_peak, mu + 1.5));

    double mass_acc = 0.0, j_acc = 0.0, ekin_acc = 0.0, worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double c = e0 - potential.u[i];
        if (c > 0.0) {
            const double lifted_density = lift.kappa * sums.density * std::pow(c, mu + 1.5);
            mass_acc += sw[i] * lifted_density;
            j_acc += sw[i] * std::pow(lift.kappa, (mu + 1.0) / mu) * sums.pnorm *
                     std::pow(c, mu + 2.5);
            ekin_acc += sw[i] * lift.kappa * sums.kinetic * std::pow(c, mu + 2.5);
            worst = std::max(worst, std::abs(lifted_density - rho0.values[i]));
        } else {
            worst = std::max(worst, rho0.values[i]);
        }
    }
    lift.mass_lifted = mass_acc;
    lift.j_lifted = std::pow(j_acc, mu / (mu + 1.0));
    lift.ekin_lifted = ekin_acc;
    lift.max_density_rel_err = worst / rho0.values[peak];
    return lift;
}

std::string to_json(const ReductionResult& r) {
    std::ostringstream out;
    out << "{\"schema_version\":" << io::schema_version
        << ",\"ekin_min\":" << io::fmt17(r.ekin_min) << ",\"k11_fit\":" << io::fmt17(r.k11_fit)
        << ",\"lagrange_lambda\":" << io::fmt17(r.lagrange_lambda)
        << ",\"mass_rel_err\":" << io::fmt17(r.mass_rel_err)
        << ",\"j_rel_err\":" << io::fmt17(r.j_rel_err)
        << ",\"n_points\":" << r.per_point_c.size() << "}";
    return out.str();
}

} // namespace vpmin
