#include "vpmin/minimizer.hpp"

#include "vpmin/errors.hpp"
#include "vpmin/io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace vpmin {

namespace {

constexpr double PI = 3.14159265358979323846;
constexpr double truncation_floor = 1e-13;   // damping dust removed after convergence

std::vector<double> space_weights(const RadialGrid& g) {
    std::vector<double> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        out[i] = 4.0 * PI * g.quad_weights[i] * g.nodes[i] * g.nodes[i];
    return out;
}

/// Cubic Hermite value on [0, 1] from endpoint values and scaled slopes.
double hermite(double t, double f0, double m0, double f1, double m1) {
    const double t2 = t * t, t3 = t2 * t;
    return (2.0 * t3 - 3.0 * t2 + 1.0) * f0 + (t3 - 2.0 * t2 + t) * m0 +
           (-2.0 * t3 + 3.0 * t2) * f1 + (t3 - t2) * m1;
}

} // namespace

MinimizerResult scf_minimize(const ModelParams& params, const RadialGrid& grid,
                             const ScfOptions& opts) {
    if (!(opts.tol > 0.0)) throw constraint_error("scf: tol must be positive");
    if (opts.max_iter == 0) throw constraint_error("scf: max_iter must be at least 1");
    if (!(opts.damping > 0.0) || !(opts.damping <= 1.0))
        throw constraint_error("scf: damping must lie in (0, 1]");

    const double mu = params.mu, M = params.mass, K = params.k_coeff;
    const double nu = mu + 1.5;
    const std::size_t n = grid.size();
    const auto sw = space_weights(grid);

    RadialDensity rho = [&] {
        if (opts.initial) {
            if (!opts.initial->grid.same_nodes(grid))
                throw constraint_error("scf: initial guess lives on a different grid");
            const double m0 = mass(*opts.initial);
            if (!(m0 > 0.0)) throw constraint_error("scf: initial guess carries no mass");
            auto values = opts.initial->values;
            for (double& v : values) v *= M / m0;
            return make_density(grid, std::move(values));
        }
        return uniform_ball(grid, M, opts.init_radius);
    }();

    MinimizerResult out;
    auto breakdown = energy_unchecked(rho, params);
    const double kin0 = breakdown.kinetic_term;
    double e_curr = breakdown.total;
    out.energy_trace.push_back(e_curr);
    if (opts.keep_iterates) out.iterates.push_back(rho);

    double e0 = 0.0;
    bool converged = false;
    std::vector<double> hat(n), cand(n);
    for (std::size_t it = 1; it <= opts.max_iter; ++it) {
        const auto prof = solve_potential(rho);
        const double psi_k = psi(rho, mu);
        if (!(psi_k > 0.0)) throw numeric_error("scf: iterate lost its mass");
        const double c_k =
            std::pow(3.0 / ((2.0 * mu + 5.0) * K * std::pow(psi_k, 2.0 * mu / 3.0)), nu);

        auto mass_at = [&](double e) {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double c = e - prof.u[i];
                if (c > 0.0) acc += sw[i] * std::pow(c, nu);
            }
            return c_k * acc;
        };

        // The cutoff bracket [min U, 0]; mass is monotone in the cutoff,
        // which is re-verified at every probe.
        double lo = *std::min_element(prof.u.begin(), prof.u.end());
        double hi = 0.0;
        double m_lo = mass_at(lo);
        double m_hi = mass_at(hi);
        if (m_hi < M) {
            std::ostringstream msg;
            msg << "scf: the full mass does not fit below cutoff 0 at r_max = "
                << grid.r_max();
            throw grid_too_small_error(msg.str());
        }
        for (int b = 0; b < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++b) {
            const double mid = 0.5 * (lo + hi);
            const double m_mid = mass_at(mid);
            if (m_mid < m_lo - 1e-9 * M || m_mid > m_hi + 1e-9 * M)
                throw numeric_error("scf: enclosed mass is not monotone in the cutoff energy");
            if (m_mid < M) {
                lo = mid;
                m_lo = m_mid;
            } else {
                hi = mid;
                m_hi = m_mid;
            }
        }
        e0 = 0.5 * (lo + hi);

        for (std::size_t i = 0; i < n; ++i) {
            const double c = e0 - prof.u[i];
            hat[i] = c > 0.0 ? c_k * std::pow(c, nu) : 0.0;
        }
        if (hat.back() > 0.0) {
            std::ostringstream msg;
            msg << "scf: update support reaches r_max = " << grid.r_max();
            throw grid_too_small_error(msg.str());
        }
        // Bisection leaves a sub-ppm mass defect; scale it away exactly.
        {
            auto hat_rho = make_density(grid, hat);
            const double m_hat = mass(hat_rho);
            if (!(m_hat > 0.0)) throw numeric_error("scf: empty update");
            for (double& v : hat) v *= M / m_hat;
        }

        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            num = std::max(num, std::abs(hat[i] - rho.values[i]));
            den = std::max(den, hat[i]);
        }
        const double res = num / den;

        // Damped acceptance: halve the step while it raises the energy.
        // When no step fraction helps, the rise is intrinsic — the path
        // has overshot the fixed point's energy and must come back up —
        // so take the configured fraction and keep converging.
        double theta = opts.damping;
        RadialDensity cand_rho = rho;
        EnergyBreakdown cand_energy = breakdown;
        auto mix_at = [&](double th) {
            for (std::size_t i = 0; i < n; ++i)
                cand[i] = (1.0 - th) * rho.values[i] + th * hat[i];
            cand_rho = make_density(grid, cand);
            cand_energy = energy_unchecked(cand_rho, params);
        };
        mix_at(theta);
        for (int attempt = 0;
             attempt < 6 && cand_energy.total > e_curr + 1e-12 * std::abs(e_curr); ++attempt) {
            theta *= 0.5;
            mix_at(theta);
        }
        if (cand_energy.total > e_curr + 1e-12 * std::abs(e_curr)) mix_at(opts.damping);
        rho = std::move(cand_rho);
        breakdown = cand_energy;
        e_curr = breakdown.total;

        // Boundedness of the kinetic term along iterates.
        if (breakdown.kinetic_term >
            2.0 * (kin0 + std::abs(breakdown.potential_term)) + 1e-9)
            throw numeric_error("scf: kinetic term escaped its boundedness envelope");

        out.energy_trace.push_back(e_curr);
        out.residual_trace.push_back(res);
        if (opts.keep_iterates) out.iterates.push_back(rho);
        out.iterations = it;
        out.residual = res;
        if (res <= opts.tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        std::ostringstream msg;
        msg << "scf: no convergence in " << opts.max_iter << " iterations; residual trace tail:";
        const std::size_t k0 =
            out.residual_trace.size() > 5 ? out.residual_trace.size() - 5 : 0;
        for (std::size_t k = k0; k < out.residual_trace.size(); ++k)
            msg << ' ' << io::fmt17(out.residual_trace[k]);
        throw numeric_error(msg.str());
    }

    // Remove damping dust outside the converged support, then restore the
    // exact mass.
    auto values = rho.values;
    const double peak = *std::max_element(values.begin(), values.end());
    for (double& v : values)
        if (v < truncation_floor * peak) v = 0.0;
    auto cleaned = make_density(grid, values);
    const double m_clean = mass(cleaned);
    if (!(m_clean > 0.0)) throw numeric_error("scf: converged profile carries no mass");
    for (double& v : values) v *= M / m_clean;

    out.rho0 = make_density(grid, std::move(values));
    out.potential = solve_potential(out.rho0);
    out.e0 = e0;
    // The support edge is the outermost node still carrying mass; the profile
    // is exactly zero beyond it after truncation.
    std::size_t last = out.rho0.values.size();
    while (last > 0 && out.rho0.values[last - 1] == 0.0) --last;
    if (last == 0) throw numeric_error("scf: converged profile carries no mass");
    if (last == out.rho0.values.size()) {
        std::ostringstream msg;
        msg << "scf: converged support touches r_max = " << grid.r_max();
        throw grid_too_small_error(msg.str());
    }
    out.r_support = out.rho0.grid.nodes[last - 1];
    out.energy = energy(out.rho0, params);
    return out;
}

MinimizerResult scf_minimize_auto(const ModelParams& params, const RadialGrid& grid,
                                  const ScfOptions& opts) {
    RadialGrid g = grid;
    ScfOptions o = opts;
    for (int attempt = 0;; ++attempt) {
        try {
            return scf_minimize(params, g, o);
        } catch (const grid_too_small_error&) {
            if (attempt >= 5) throw;
            g = make_grid(2.0 * g.r_max(), g.size(), g.spacing);
            o.init_radius *= 2.0; // keep the default start compatible with the larger box
            if (o.initial && !o.initial->grid.same_nodes(g)) o.initial.reset();
        }
    }
}

LaneEmdenSolution lane_emden(double n, double step) {
    if (!(n >= 0.0) || !std::isfinite(n))
        throw constraint_error("lane_emden: index must be nonnegative");
    if (!(step > 0.0) || !(step <= 1e-2))
        throw constraint_error("lane_emden: step must lie in (0, 1e-2]");

    LaneEmdenSolution sol;
    sol.index_n = n;
    sol.step = step;

    const double start = 1e-2; // series start clears the coordinate singularity
    const double cap = 200.0;
    const double h = step;
    const auto stride = static_cast<std::size_t>(std::max(1.0, std::round(1e-3 / step)));

    auto source = [n](double t) { return t > 0.0 ? std::pow(t, n) : 0.0; };
    auto acc = [&](double x, double t, double p) { return -2.0 * p / x - source(t); };
    auto rk4 = [&](double x0, double t0, double p0, double hh, double& t1, double& p1) {
        const double k1t = p0, k1p = acc(x0, t0, p0);
        const double k2t = p0 + 0.5 * hh * k1p;
        const double k2p = acc(x0 + 0.5 * hh, t0 + 0.5 * hh * k1t, p0 + 0.5 * hh * k1p);
        const double k3t = p0 + 0.5 * hh * k2p;
        const double k3p = acc(x0 + 0.5 * hh, t0 + 0.5 * hh * k2t, p0 + 0.5 * hh * k2p);
        const double k4t = p0 + hh * k3p;
        const double k4p = acc(x0 + hh, t0 + hh * k3t, p0 + hh * k3p);
        t1 = t0 + hh / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
        p1 = p0 + hh / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    };

    double th = 1.0 - start * start / 6.0 + n * std::pow(start, 4) / 120.0;
    double ph = -start / 3.0 + n * std::pow(start, 3) / 30.0;

    bool found = false;
    for (std::size_t k = 0;; ++k) {
        const double x = start + static_cast<double>(k) * h;
        if (x >= cap) break;
        if (k % stride == 0) {
            sol.xi.push_back(x);
            sol.theta.push_back(th);
            sol.dtheta.push_back(ph);
        }
        double th2 = 0.0, ph2 = 0.0;
        rk4(x, th, ph, h, th2, ph2);

        if (th2 <= 0.0) {
            // Walk to the surface with halving sub-steps: a full step across the
            // crossing would feed the positive-part source inconsistent stage
            // values and spoil the edge slope.
            double xr = x, tr = th, pr = ph, hh = h;
            for (int guard = 0; hh > 1e-13 && guard < 10000; ++guard) {
                double tn = 0.0, pn = 0.0;
                rk4(xr, tr, pr, hh, tn, pn);
                if (tn > 0.0) {
                    xr += hh;
                    tr = tn;
                    pr = pn;
                } else {
                    hh *= 0.5;
                }
            }
            sol.xi1 = pr < 0.0 ? xr - tr / pr : xr;
            sol.mtheta1 = -sol.xi1 * sol.xi1 * pr;
            sol.xi.push_back(sol.xi1);
            sol.theta.push_back(0.0);
            sol.dtheta.push_back(pr);
            found = true;
            break;
        }
        th = th2;
        ph = ph2;
    }
    if (!found) {
        sol.unbounded = true;
        sol.xi1 = std::numeric_limits<double>::infinity();
        sol.mtheta1 = 0.0;
    }
    return sol;
}

double theta_at(const LaneEmdenSolution& sol, double x) {
    if (!(x >= 0.0)) throw constraint_error("theta_at: radius must be nonnegative");
    if (sol.xi.empty()) throw constraint_error("theta_at: empty solution");
    if (x >= sol.xi1) return 0.0;
    if (x <= sol.xi.front()) {
        const double n = sol.index_n;
        return 1.0 - x * x / 6.0 + n * std::pow(x, 4) / 120.0;
    }
    if (x >= sol.xi.back()) return sol.theta.back();
    const auto it = std::upper_bound(sol.xi.begin(), sol.xi.end(), x);
    const auto k = static_cast<std::size_t>(it - sol.xi.begin()) - 1;
    const double hk = sol.xi[k + 1] - sol.xi[k];
    const double t = (x - sol.xi[k]) / hk;
    return hermite(t, sol.theta[k], hk * sol.dtheta[k], sol.theta[k + 1],
                   hk * sol.dtheta[k + 1]);
}

RadialDensity polytrope_from_lane_emden(double n, double M, double length_scale,
                                        std::size_t n_grid) {
    if (!(M > 0.0)) throw constraint_error("polytrope: mass must be positive");
    if (!(length_scale > 0.0)) throw constraint_error("polytrope: length scale must be positive");
    const auto sol = lane_emden(n);
    if (sol.unbounded)
        throw constraint_error("polytrope: no finite radius at this index");
    auto grid = make_grid(length_scale * sol.xi1, n_grid, Spacing::uniform);
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double th = theta_at(sol, grid.nodes[i] / length_scale);
        values[i] = th > 0.0 ? std::pow(th, n) : 0.0;
    }
    auto rho = make_density(grid, std::move(values));
    const double m = mass(rho);
    if (!(m > 0.0)) throw numeric_error("polytrope: profile carries no mass");
    auto scaled = rho.values;
    for (double& v : scaled) v *= M / m;
    return make_density(grid, std::move(scaled));
}

double euler_lagrange_residual(const RadialDensity& rho, const ModelParams& params) {
    const double peak = *std::max_element(rho.values.begin(), rho.values.end());
    if (!(peak > 0.0)) throw constraint_error("euler_lagrange_residual: empty support");
    const double mu = params.mu;
    const auto prof = solve_potential(rho);
    const double C = params.k_coeff * (2.0 * mu + 5.0) / 3.0 *
                     std::pow(psi(rho, mu), 2.0 * mu / 3.0);
    const double expo = 2.0 / (2.0 * mu + 3.0);

    std::vector<double> expr;
    expr.reserve(rho.values.size());
    double mean = 0.0;
    for (std::size_t i = 0; i < rho.values.size(); ++i) {
        if (rho.values[i] <= 1e-8 * peak) continue;
        expr.push_back(C * std::pow(rho.values[i], expo) + prof.u[i]);
        mean += expr.back();
    }
    mean /= static_cast<double>(expr.size());
    if (!(std::abs(mean) > 0.0))
        throw numeric_error("euler_lagrange_residual: degenerate support mean");
    double sup = 0.0;
    for (double e : expr) sup = std::max(sup, std::abs(e - mean));
    return sup / std::abs(mean);
}

double support_radius(const RadialDensity& rho, double threshold) {
    if (!(threshold > 0.0) || !(threshold < 1.0))
        throw constraint_error("support_radius: threshold must lie in (0, 1)");
    const double peak = *std::max_element(rho.values.begin(), rho.values.end());
    if (!(peak > 0.0)) throw constraint_error("support_radius: zero density");
    for (std::size_t i = rho.values.size(); i-- > 0;)
        if (rho.values[i] > threshold * peak) return rho.grid.nodes[i];
    return rho.grid.nodes.front();
}

double zero_crossing_radius(const PotentialProfile& prof, double e0) {
    const auto& u = prof.u;
    if (u.empty() || !(e0 > u.front()))
        throw constraint_error("zero_crossing_radius: cutoff at or below the potential floor");
    if (!(e0 < u.back()))
        throw numeric_error("zero_crossing_radius: no crossing inside the grid");
    std::size_t k = 0;
    while (k + 1 < u.size() && u[k + 1] < e0) ++k;
    const double du = u[k + 1] - u[k];
    if (!(du > 0.0)) return prof.grid.nodes[k + 1];
    const double t = (e0 - u[k]) / du;
    return prof.grid.nodes[k] + t * (prof.grid.nodes[k + 1] - prof.grid.nodes[k]);
}

std::string to_csv(const MinimizerResult& res) { return to_csv(res.rho0, res.potential); }

std::string to_json(const MinimizerResult& res) {
    std::ostringstream out;
    out << "{\"schema_version\":" << io::schema_version << ",\"e0\":" << io::fmt17(res.e0)
        << ",\"r_support\":" << io::fmt17(res.r_support)
        << ",\"energy\":{\"kinetic_term\":" << io::fmt17(res.energy.kinetic_term)
        << ",\"potential_term\":" << io::fmt17(res.energy.potential_term)
        << ",\"total\":" << io::fmt17(res.energy.total) << "}"
        << ",\"iterations\":" << res.iterations
        << ",\"residual\":" << io::fmt17(res.residual) << "}";
    return out.str();
}

} // namespace vpmin
