#include "vpmin/verify.hpp"

#include "vpmin/errors.hpp"
#include "vpmin/gravity.hpp"
#include "vpmin/io.hpp"
#include "vpmin/kinetic.hpp"
#include "vpmin/minimizer.hpp"
#include "vpmin/radial.hpp"
#include "vpmin/rearrange3d.hpp"
#include "vpmin/reduced_energy.hpp"
#include "vpmin/rng.hpp"
#include "vpmin/sequences.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace vpmin {
namespace {

constexpr double PI = 3.14159265358979323846;

void validate(const VerifyOptions& opts) {
    if (opts.mus.empty()) throw constraint_error("verify: empty exponent list");
    for (double mu : opts.mus)
        if (!(mu > 0.0 && mu < 3.5)) throw constraint_error("verify: mu must lie in (0, 7/2)");
}

/// Distinct reproducible stream per criterion, independent of run order.
Rng seeded(const VerifyOptions& opts, std::uint64_t stream) {
    return Rng(opts.seed * 1000003ULL + stream);
}

CheckResult upper(std::string name, int criterion, std::size_t cases, double worst,
                  double bound) {
    return {std::move(name), criterion, cases, worst, '<', bound, worst <= bound};
}

CheckResult lower(std::string name, int criterion, std::size_t cases, double worst,
                  double bound) {
    return {std::move(name), criterion, cases, worst, '>', bound, worst >= bound};
}

double rel_dev(double got, double want) { return std::abs(got - want) / std::abs(want); }

std::string with_mu(const char* label, double mu) {
    std::ostringstream os;
    os << label << " (mu=" << mu << ")";
    return os.str();
}

/// Smooth compactly-contained profile: a few Gaussian bumps, decaying well
/// before r_max so the grid holds the whole support.
RadialDensity bump_density(Rng& rng, const RadialGrid& grid, double target_mass = 0.0) {
    const double r_max = grid.r_max();
    const int n_bumps = static_cast<int>(rng.uniform_int(2, 4));
    std::vector<double> centers, widths, heights;
    for (int b = 0; b < n_bumps; ++b) {
        centers.push_back(rng.uniform(0.0, 0.45 * r_max));
        widths.push_back(rng.uniform(0.05 * r_max, 0.15 * r_max));
        heights.push_back(rng.uniform(0.2, 1.0));
    }
    std::vector<double> v(grid.size(), 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (int b = 0; b < n_bumps; ++b) {
            const double t = (grid.nodes[i] - centers[b]) / widths[b];
            v[i] += heights[b] * std::exp(-t * t);
        }
    }
    auto rho = make_density(grid, std::move(v));
    if (target_mass > 0.0) {
        const double scale = target_mass / mass(rho);
        for (double& x : rho.values) x *= scale;
    }
    return rho;
}

/// One Gaussian shell on the grid, normalized to the requested mass.
RadialDensity gauss_shell(const RadialGrid& grid, double center, double width,
                          double target_mass) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = (grid.nodes[i] - center) / width;
        v[i] = std::exp(-t * t);
    }
    auto rho = make_density(grid, std::move(v));
    const double scale = target_mass / mass(rho);
    for (double& x : rho.values) x *= scale;
    return rho;
}

CartesianDensity random_box(Rng& rng, std::size_t n, double h) {
    std::vector<double> v(n * n * n);
    for (double& x : v) x = rng.uniform();
    return make_cartesian({n, n, n}, h, {0.0, 0.0, 0.0}, std::move(v));
}

/// Cells with center closer to the box center than R get value rho_c.
CartesianDensity cartesian_ball(std::size_t n, double h, double R, double rho_c) {
    CartesianDensity box =
        make_cartesian({n, n, n}, h, {0.0, 0.0, 0.0}, std::vector<double>(n * n * n, 0.0));
    for (std::size_t ix = 0; ix < n; ++ix)
        for (std::size_t iy = 0; iy < n; ++iy)
            for (std::size_t iz = 0; iz < n; ++iz) {
                const double x = 0.5 * h * (2.0 * static_cast<double>(ix) + 1.0 - static_cast<double>(n));
                const double y = 0.5 * h * (2.0 * static_cast<double>(iy) + 1.0 - static_cast<double>(n));
                const double z = 0.5 * h * (2.0 * static_cast<double>(iz) + 1.0 - static_cast<double>(n));
                if (x * x + y * y + z * z < R * R) box.values[box.flat(ix, iy, iz)] = rho_c;
            }
    return box;
}

/// Least-squares slope of log|y| against log n.
double loglog_slope(const std::vector<double>& n, const std::vector<double>& y) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        const double lx = std::log(n[i]), ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double m = static_cast<double>(n.size());
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

/// Sup-norm-relative mismatch between an SCF profile and the mass-matched
/// ODE oracle of index mu + 3/2, on the inner 95% of the support.
double polytrope_mismatch(const MinimizerResult& res, double mu, double M) {
    const double n = mu + 1.5;
    const auto sol = lane_emden(n);
    const double rho_c = res.rho0.values.front();
    const double a = std::cbrt(M / (4.0 * PI * rho_c * sol.mtheta1));
    const double r_edge = zero_crossing_radius(res.potential, res.e0);
    double worst = 0.0;
    for (std::size_t i = 0; i < res.rho0.grid.size(); ++i) {
        const double r = res.rho0.grid.nodes[i];
        if (r > 0.95 * r_edge) break;
        const double th = theta_at(sol, r / a);
        const double want = rho_c * (th > 0.0 ? std::pow(th, n) : 0.0);
        worst = std::max(worst, std::abs(res.rho0.values[i] - want) / rho_c);
    }
    return worst;
}

} // namespace

std::vector<CheckResult> check_splitting_identity(const VerifyOptions& opts) {
    validate(opts);
    auto rng = seeded(opts, 1);
    const auto grid = make_grid(6.0, 256, Spacing::uniform);
    std::vector<CheckResult> out;
    for (double mu : opts.mus) {
        double worst = 0.0;
        for (int rep = 0; rep < 100; ++rep) {
            const auto rho = bump_density(rng, grid);
            const ModelParams params(mu, mass(rho), 1.0, 1.0);
            for (int s = 0; s < 5; ++s) {
                const double r_split = rng.uniform(0.05, 0.95) * grid.r_max();
                worst = std::max(worst,
                                 splitting_identity_check(rho, r_split, params).residual);
            }
        }
        out.push_back(upper(with_mu("split-energy identity residual", mu), 1, 500, worst,
                            1e-10));
    }
    return out;
}

std::vector<CheckResult> check_scaling_law(const VerifyOptions& opts) {
    validate(opts);
    auto rng = seeded(opts, 2);
    const auto grid = make_grid(8.0, 512, Spacing::uniform);
    std::vector<CheckResult> out;
    for (double mu : opts.mus) {
        double worst = 0.0;
        for (int rep = 0; rep < 50; ++rep) {
            const auto rho = bump_density(rng, grid);
            const double M = mass(rho);
            const double J = rng.uniform(0.5, 2.0);
            const double M_new = M * rng.uniform(0.5, 2.5);
            const double J_new = J * rng.uniform(0.5, 2.5);
            const auto [a, b] = scaling_map(mu, M, J, M_new, J_new);
            const auto scaled = rescale(rho, a, b);
            const auto e0 = energy(rho, ModelParams(mu, M, J, 1.0));
            const auto e1 = energy(scaled, ModelParams(mu, M_new, J_new, 1.0));
            const double factor = scaling_factor(mu, M, J, M_new, J_new);
            worst = std::max({worst, rel_dev(e1.kinetic_term, factor * e0.kinetic_term),
                              rel_dev(e1.potential_term, factor * e0.potential_term)});
        }
        out.push_back(upper(with_mu("per-term energy ratio vs scaling factor", mu), 2, 50,
                            worst, 1e-8));
    }
    return out;
}

std::vector<CheckResult> check_minimizer_vs_polytrope(const VerifyOptions& opts) {
    validate(opts);
    std::vector<CheckResult> out;

    const auto flat = lane_emden(0.0);
    const auto sinc = lane_emden(1.0);
    const auto cubic = lane_emden(3.0);
    out.push_back(upper("ode surface radius vs closed form (index 0)", 3, 1,
                        std::abs(flat.xi1 - std::sqrt(6.0)), 1e-6));
    out.push_back(upper("ode surface radius vs closed form (index 1)", 3, 1,
                        std::abs(sinc.xi1 - PI), 1e-6));
    out.push_back(upper("ode surface radius (index 3)", 3, 1,
                        std::abs(cubic.xi1 - 6.89685), 1e-3));

    double worst_profile = 0.0;
    double worst_total = -std::numeric_limits<double>::infinity();
    double worst_mass = 0.0;
    double worst_edge = 0.0;
    double worst_el = 0.0;
    double worst_ball = std::numeric_limits<double>::infinity();
    for (double mu : opts.mus) {
        const ModelParams params(mu, 1.0, 1.0, 1.0);
        const auto res = scf_minimize_auto(params, make_grid(3.0, 2048, Spacing::uniform));
        worst_profile = std::max(worst_profile, polytrope_mismatch(res, mu, 1.0));
        worst_total = std::max(worst_total, res.energy.total);
        worst_mass = std::max(worst_mass, rel_dev(mass(res.rho0), 1.0));
        worst_edge = std::max(worst_edge, res.r_support / res.rho0.grid.r_max());
        worst_el = std::max(worst_el, euler_lagrange_residual(res.rho0, params));
        worst_ball = std::min(worst_ball,
                              euler_lagrange_residual(
                                  uniform_ball(res.rho0.grid, 1.0, res.r_support), params));
    }
    const std::size_t runs = opts.mus.size();
    out.push_back(upper("minimizer profile vs ode oracle on inner 95% of support", 3, runs,
                        worst_profile, 1e-3));
    out.push_back(upper("minimizer total energy is negative", 4, runs, worst_total, 0.0));
    out.push_back(upper("minimizer mass error", 4, runs, worst_mass, 1e-6));
    out.push_back(upper("support edge relative to grid extent", 4, runs, worst_edge, 1.0));
    out.push_back(upper("first-variation constancy on the support", 5, runs, worst_el, 1e-5));
    out.push_back(lower("first-variation defect of a uniform ball", 5, runs, worst_ball,
                        1e-2));
    return out;
}

std::vector<CheckResult> check_elementary_inequalities(const VerifyOptions& opts) {
    validate(opts);
    auto rng = seeded(opts, 6);
    std::vector<CheckResult> out;

    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100000; ++i) {
        const double x = rng.uniform();
        const double lhs = std::pow(x, 7.0 / 3.0) + std::pow(1.0 - x, 7.0 / 3.0);
        worst = std::max(worst, lhs - (1.0 - 7.0 / 3.0 * x * (1.0 - x)));
    }
    out.push_back(upper("two-power split bound on [0,1]", 6, 100000, worst, 1e-12));

    worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100000; ++i) {
        double a = std::exp(rng.uniform(std::log(1e-2), std::log(1e2)));
        double b = std::exp(rng.uniform(std::log(1e-2), std::log(1e2)));
        if (a > b) std::swap(a, b);
        const double alpha = rng.uniform(0.01, 0.99);
        worst = std::max(worst, alpha * std::pow(b, alpha - 1.0) * (b - a) -
                                    (std::pow(b, alpha) - std::pow(a, alpha)));
    }
    out.push_back(upper("concavity bound for fractional powers", 6, 100000, worst, 1e-12));

    double worst_pair = -std::numeric_limits<double>::infinity();
    double worst_sum = -std::numeric_limits<double>::infinity();
    double worst_concave = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 10000; ++i) {
        const double s = rng.uniform(); // psi fraction of the inner part
        const double x = rng.uniform(); // mass fraction of the inner part
        const double mu = rng.uniform(0.01, 3.49);

        const double paired =
            std::pow(s, 2.0 * mu / 3.0) * std::pow(x, (7.0 - 2.0 * mu) / 3.0) +
            std::pow(1.0 - s, 2.0 * mu / 3.0) * std::pow(1.0 - x, (7.0 - 2.0 * mu) / 3.0);
        const double s_sum = std::pow(s, 7.0 / 3.0) + std::pow(1.0 - s, 7.0 / 3.0);
        const double x_sum = std::pow(x, 7.0 / 3.0) + std::pow(1.0 - x, 7.0 / 3.0);
        worst_pair = std::max(worst_pair,
                              paired - std::pow(s_sum, 2.0 * mu / 7.0) *
                                           std::pow(x_sum, (7.0 - 2.0 * mu) / 7.0));
        worst_sum = std::max(worst_sum, s_sum - 1.0);

        const double inner = 1.0 - 7.0 / 3.0 * x * (1.0 - x);
        const double alpha = (7.0 - 2.0 * mu) / 7.0;
        worst_concave =
            std::max(worst_concave, alpha * (1.0 - inner) - (1.0 - std::pow(inner, alpha)));
    }
    out.push_back(upper("chain link: two-sequence hoelder pairing", 6, 10000, worst_pair,
                        1e-12));
    out.push_back(upper("chain link: split powers stay below one", 6, 10000, worst_sum,
                        1e-12));
    out.push_back(upper("chain link: concavity step at one", 6, 10000, worst_concave,
                        1e-12));
    return out;
}

std::vector<CheckResult> check_rearrangement(const VerifyOptions& opts) {
    validate(opts);
    auto rng = seeded(opts, 7);
    const std::array<Kernel, 4> kernels = {coulomb_kernel(), cutoff_kernel(0.5),
                                           cutoff_kernel(2.0), cutoff_kernel(10.0)};
    const std::array<const char*, 4> labels = {
        "rearrangement monotonicity (coulomb)", "rearrangement monotonicity (cutoff=0.5)",
        "rearrangement monotonicity (cutoff=2)", "rearrangement monotonicity (cutoff=10)"};

    std::array<double, 4> worst_riesz;
    worst_riesz.fill(-std::numeric_limits<double>::infinity());
    double worst_equi = 0.0;
    double worst_conf = -std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < 200; ++rep) {
        const auto box = random_box(rng, 12, 0.25);
        const auto star = rearrange(box);

        auto sorted_box = box.values;
        auto sorted_star = star.values;
        std::sort(sorted_box.begin(), sorted_box.end());
        std::sort(sorted_star.begin(), sorted_star.end());
        for (std::size_t i = 0; i < sorted_box.size(); ++i)
            worst_equi = std::max(worst_equi, std::abs(sorted_box[i] - sorted_star[i]));

        double coulomb_box = 0.0, coulomb_star = 0.0;
        for (std::size_t k = 0; k < kernels.size(); ++k) {
            const double i_box = interaction(box, box, kernels[k]);
            const double i_star = interaction(star, star, kernels[k]);
            worst_riesz[k] = std::max(worst_riesz[k], i_box - i_star);
            if (k == 0) {
                coulomb_box = i_box;
                coulomb_star = i_star;
            }
        }

        const double r0 = rng.uniform(0.2, 0.6);
        const auto terms = confinement_decomposition(box, r0, 3.0 * r0);
        const double lhs = coulomb_star - coulomb_box;
        worst_conf = std::max(worst_conf,
                              terms.far_pairs + terms.outer_coulomb - terms.outer_flat - lhs);
    }

    std::vector<CheckResult> out;
    for (std::size_t k = 0; k < kernels.size(); ++k)
        out.push_back(upper(labels[k], 7, 200, worst_riesz[k], 1e-12));
    out.push_back(upper("rearrangement preserves the value multiset", 7, 200, worst_equi,
                        0.0));
    out.push_back(upper("confinement decomposition lower bound", 7, 200, worst_conf, 1e-10));
    return out;
}

std::vector<CheckResult> check_newton_bound(const VerifyOptions& opts) {
    validate(opts);
    auto rng = seeded(opts, 8);
    const auto grid = make_grid(6.0, 512, Spacing::uniform);
    double worst = -std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < 100; ++rep) {
        const auto rho = bump_density(rng, grid);
        const double M = mass(rho);
        const double r_split = rng.uniform(0.05, 0.9) * grid.r_max();
        const auto [inner, outer] = split_at(rho, r_split);
        const double tail = tail_mass(rho, r_split);
        worst = std::max(worst, epot_pair(inner, outer) - tail * (M - tail) / r_split);
    }
    return {upper("split interaction vs far-field bound", 8, 100, worst, 1e-10)};
}

std::vector<CheckResult> check_kinetic_reduction(const VerifyOptions& opts) {
    validate(opts);
    auto rng = seeded(opts, 9);
    std::vector<CheckResult> out;
    for (double mu : opts.mus) {
        std::vector<double> fits;
        for (int rep = 0; rep < 10; ++rep) {
            const std::size_t n = rep % 2 == 0 ? 96 : 128;
            const double r_max = rng.uniform(4.0, 8.0);
            const auto spacing = rep % 3 == 0 ? Spacing::log : Spacing::uniform;
            const auto grid = make_grid(r_max, n, spacing);
            const auto rho = bump_density(rng, grid, rng.uniform(0.5, 3.0));
            fits.push_back(global_reduce(rho, rng.uniform(0.4, 2.5), mu).k11_fit);
        }
        double spread = 0.0;
        for (double f : fits) spread = std::max(spread, rel_dev(f, fits.front()));
        out.push_back(upper(with_mu("fitted coupling stability", mu), 9, 10, spread, 1e-3));

        const auto grid = make_grid(5.0, 96, Spacing::uniform);
        const auto rho = bump_density(rng, grid, 1.5);
        std::vector<double> lx, ly;
        for (double t : {0.5, 0.75, 1.0, 1.5, 2.0}) {
            auto values = rho.values;
            for (double& v : values) v *= t;
            const auto rho_t = make_density(grid, values);
            lx.push_back(psi(rho_t, mu));
            ly.push_back(global_reduce(rho_t, 1.0, mu).ekin_min);
        }
        const double slope = loglog_slope(lx, ly);
        out.push_back(upper(with_mu("reduced kinetic term power in psi", mu), 9, 5,
                            std::abs(slope - (2.0 * mu + 3.0) / 3.0), 1e-2));

        const ModelParams params(mu, 1.0, 1.0, k11_oracle(mu));
        const auto res = scf_minimize_auto(params, make_grid(3.0, 1024, Spacing::uniform));
        const auto lift = lift_minimizer(res.rho0, res.potential, res.e0, mu);
        const double worst_lift =
            std::max({lift.max_density_rel_err, rel_dev(lift.mass_lifted, 1.0),
                      rel_dev(lift.j_lifted, 1.0)});
        out.push_back(upper(with_mu("lift reproduces density, mass, and norm", mu), 9, 3,
                            worst_lift, 1e-6));
    }
    return out;
}

std::vector<CheckResult> check_potential_consistency(const VerifyOptions& opts) {
    validate(opts);
    auto rng = seeded(opts, 10);
    const auto grid = make_grid(6.0, 2000, Spacing::uniform);
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        const auto rho = bump_density(rng, grid);
        const double direct = epot(rho);
        const double field = epot_field_energy(solve_potential(rho));
        const double pair = -0.5 * epot_pair(rho, rho);
        worst = std::max({worst, rel_dev(field, direct), rel_dev(pair, direct)});
    }
    std::vector<CheckResult> out;
    out.push_back(upper("potential energy formulations agree", 10, 20, worst, 1e-8));

    const std::size_t n3 = 24;
    const double R = 1.0;
    const auto ball = cartesian_ball(n3, 2.2 * R / static_cast<double>(n3), R, 1.0);
    const auto rad = radial_project(ball);
    const double m = mass(rad);
    const double want = -0.6 * m * m / R;
    out.push_back(upper("cartesian ball potential energy vs closed form", 10, 1,
                        rel_dev(epot(rad), want), 0.02));
    return out;
}

std::vector<CheckResult> check_sequence_diagnostics(const VerifyOptions& opts) {
    validate(opts);
    auto rng = seeded(opts, 11);
    std::vector<CheckResult> out;
    const std::vector<double> ns = {4, 8, 16, 32, 64};

    {
        const auto grid = make_grid(6.0, 512, Spacing::uniform);
        const auto rho0 = bump_density(rng, grid, 1.0);
        const auto bump = gauss_shell(grid, 0.9, 0.4, 0.05);
        std::vector<RadialDensity> seq;
        for (double n : ns) {
            auto v = rho0.values;
            for (std::size_t i = 0; i < v.size(); ++i) v[i] += bump.values[i] / n;
            auto rho = make_density(grid, std::move(v));
            const double scale = 1.0 / mass(rho);
            for (double& x : rho.values) x *= scale;
            seq.push_back(std::move(rho));
        }
        const auto reps = sequence_report(seq, rho0, 4.0, 1.5);
        std::vector<double> e;
        for (const auto& r : reps) e.push_back(r.epot_diff);
        out.push_back(upper("interior perturbation: interaction gap decay rate", 11,
                            ns.size(), std::abs(loglog_slope(ns, e) - (-2.0)), 0.2));
    }

    {
        const auto grid = make_grid(8.0, 512, Spacing::uniform);
        const auto rho0 = bump_density(rng, grid, 1.0);
        const auto shell = gauss_shell(grid, 6.0, 0.3, 1.0);
        std::vector<RadialDensity> seq;
        for (double n : ns) {
            const double eps = 0.1 / std::sqrt(n);
            auto v = rho0.values;
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] = (1.0 - eps) * v[i] + eps * shell.values[i];
            seq.push_back(make_density(grid, std::move(v)));
        }
        const auto reps = sequence_report(seq, rho0, 4.5, 1.5);
        std::vector<double> e;
        double worst_tail_step = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < reps.size(); ++k) {
            e.push_back(reps[k].epot_diff);
            if (k > 0)
                worst_tail_step =
                    std::max(worst_tail_step, reps[k].tail_mass - reps[k - 1].tail_mass);
        }
        out.push_back(upper("escaping tail: interaction gap decay rate", 11, ns.size(),
                            std::abs(loglog_slope(ns, e) - (-1.0)), 0.1));
        out.push_back(upper("escaping tail: tail mass decreases", 11, ns.size() - 1,
                            worst_tail_step, 0.0));
    }

    {
        const ModelParams params(1.5, 1.0, 1.0, 1.0);
        ScfOptions scf_opts;
        scf_opts.keep_iterates = true;
        const auto res =
            scf_minimize_auto(params, make_grid(3.0, 512, Spacing::uniform), scf_opts);
        const auto reps =
            sequence_report(res.iterates, res.rho0, res.r_support + 0.1, params.mu);
        const double final_dist =
            std::max(reps.back().lp_dist, reps.back().field_dist);
        double worst_step = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 5; k + 1 < reps.size(); ++k) {
            if (reps[k].lp_dist > 0.0)
                worst_step = std::max(
                    worst_step, (reps[k + 1].lp_dist - reps[k].lp_dist) / reps[k].lp_dist);
            if (reps[k].field_dist > 0.0)
                worst_step =
                    std::max(worst_step, (reps[k + 1].field_dist - reps[k].field_dist) /
                                             reps[k].field_dist);
        }
        out.push_back(upper("scf iterates: final distance to the minimizer", 11,
                            reps.size(), final_dist, 1e-6));
        out.push_back(upper("scf iterates: relative distance increase after burn-in", 11,
                            reps.size() - 6, worst_step, 1e-9));
    }
    return out;
}

bool SuiteResult::passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"scaling",   "concentration",
                                                   "riesz",     "reduction",
                                                   "lane-emden", "sequences"};
    return names;
}

SuiteResult run_suite(const std::string& suite, const VerifyOptions& opts) {
    SuiteResult out{suite, {}};
    auto append = [&](std::vector<CheckResult> more) {
        for (auto& c : more) out.checks.push_back(std::move(c));
    };
    if (suite == "scaling") {
        append(check_scaling_law(opts));
    } else if (suite == "concentration") {
        append(check_splitting_identity(opts));
        append(check_elementary_inequalities(opts));
        append(check_newton_bound(opts));
    } else if (suite == "riesz") {
        append(check_rearrangement(opts));
        append(check_potential_consistency(opts));
    } else if (suite == "reduction") {
        append(check_kinetic_reduction(opts));
    } else if (suite == "lane-emden") {
        append(check_minimizer_vs_polytrope(opts));
    } else if (suite == "sequences") {
        append(check_sequence_diagnostics(opts));
    } else {
        throw constraint_error("verify: unknown suite '" + suite + "'");
    }
    return out;
}

std::string to_json(const SuiteResult& sr) {
    std::ostringstream os;
    os << "{\"schema_version\":" << io::schema_version
       << ",\"suite\":" << io::json_string(sr.suite)
       << ",\"passed\":" << (sr.passed() ? "true" : "false") << ",\"checks\":[";
    for (std::size_t i = 0; i < sr.checks.size(); ++i) {
        const auto& c = sr.checks[i];
        if (i > 0) os << ',';
        os << "{\"name\":" << io::json_string(c.name) << ",\"criterion\":" << c.criterion
           << ",\"cases\":" << c.cases << ",\"worst\":" << io::fmt17(c.worst)
           << ",\"sense\":\"" << (c.sense == '<' ? "<=" : ">=")
           << "\",\"bound\":" << io::fmt17(c.bound)
           << ",\"passed\":" << (c.passed ? "true" : "false") << '}';
    }
    os << "]}";
    return os.str();
}

} // namespace vpmin
