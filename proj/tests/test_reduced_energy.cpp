#include "doctest.h"

#include "test_support.hpp"
#include "vpmin/errors.hpp"
#include "vpmin/gravity.hpp"
#include "vpmin/radial.hpp"
#include "vpmin/reduced_energy.hpp"
#include "vpmin/rng.hpp"

#include <cmath>
#include <vector>

using namespace vpmin;
using vpmin::testing::random_density;
using vpmin::testing::rel_err;

namespace {
constexpr double PI = 3.14159265358979323846;
}

TEST_CASE("ball energy matches the closed form") {
    auto g = make_grid(2.0, 2000, Spacing::uniform);
    const double M = 1.0, R = 1.0005;
    auto ball = uniform_ball(g, M, R);
    ModelParams params(1.5, mass(ball), 1.0, 1.0); // K = 1

    auto eb = energy(ball, params);
    const double volume = 4.0 * PI * R * R * R / 3.0;
    const double rho_c = M / volume;
    const double psi_exact = std::pow(rho_c, 4.0 / 3.0) * volume; // exponent (2mu+5)/(2mu+3)
    CHECK(rel_err(eb.kinetic_term, psi_exact * psi_exact) < 1e-4);
    CHECK(std::abs(eb.kinetic_term - 0.3849) < 2e-3);
    CHECK(std::abs(eb.total - (-0.2151)) < 2e-3);
    CHECK(eb.kinetic_term >= 0.0);
    CHECK(eb.potential_term <= 0.0);
    CHECK(eb.total == eb.kinetic_term + eb.potential_term);
}

TEST_CASE("vacuum carries zero energy through the unchecked route") {
    auto g = make_grid(2.0, 32, Spacing::uniform);
    auto zero = make_density(g, std::vector<double>(g.size(), 0.0));
    ModelParams params(1.0, 1.0, 1.0, 1.0);
    auto eb = energy_unchecked(zero, params);
    CHECK(eb.kinetic_term == 0.0);
    CHECK(eb.potential_term == 0.0);
    CHECK(eb.total == 0.0);
    // the checked route rejects it: mass 0 != 1
    CHECK_THROWS_AS(energy(zero, params), constraint_error);
}

TEST_CASE("kinetic term is linear in the coupling, potential is unaffected") {
    Rng rng(31);
    auto g = make_grid(6.0, 256, Spacing::uniform);
    auto rho = random_density(rng, g);
    ModelParams p1(1.2, mass(rho), 1.5, 0.7);
    ModelParams p2(1.2, mass(rho), 1.5, 1.4);
    auto e1 = energy(rho, p1);
    auto e2 = energy(rho, p2);
    CHECK(rel_err(e2.kinetic_term, 2.0 * e1.kinetic_term) < 1e-14);
    CHECK(e2.potential_term == e1.potential_term);
}

TEST_CASE("scaling factor has the stated exponents") {
    CHECK(scaling_factor(2.0, 1.0, 1.0, 2.0, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(scaling_factor(2.0, 1.0, 1.0, 1.0, 2.0) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(scaling_factor(0.7, 3.0, 2.0, 3.0, 2.0) == 1.0);
    CHECK_THROWS_AS(scaling_factor(1.0, -1.0, 1.0, 1.0, 1.0), constraint_error);
    CHECK_THROWS_AS(scaling_factor(4.0, 1.0, 1.0, 1.0, 1.0), constraint_error);
}

TEST_CASE("scaling map solves the exponent system") {
    auto [a_id, b_id] = scaling_map(1.3, 2.0, 0.7, 2.0, 0.7);
    CHECK(a_id == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(b_id == doctest::Approx(1.0).epsilon(1e-14));

    // mu = 2, M doubled: a = 1/4, b = 1/2, and the factor comes out as 2
    auto [a, b] = scaling_map(2.0, 1.0, 1.0, 2.0, 1.0);
    CHECK(a == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(b == doctest::Approx(0.5).epsilon(1e-12));

    // round trip composes to the identity
    auto [a2, b2] = scaling_map(2.0, 2.0, 1.0, 1.0, 1.0);
    CHECK(a * a2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b * b2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rescaling through the map multiplies both energy terms by the factor") {
    Rng rng(8);
    auto g = make_grid(8.0, 512, Spacing::uniform);
    for (double mu : {0.5, 1.3, 2.0, 2.8}) {
        auto rho = random_density(rng, g);
        const double M = mass(rho);
        const double J = rng.uniform(0.5, 2.0);
        const double M_new = M * rng.uniform(0.5, 2.0);
        const double J_new = J * rng.uniform(0.5, 2.0);

        auto [a, b] = scaling_map(mu, M, J, M_new, J_new);
        auto scaled = rescale(rho, a, b);
        CHECK(rel_err(mass(scaled), M_new) < 1e-12);

        ModelParams params(mu, M, J, 0.9);
        ModelParams params_new(mu, M_new, J_new, 0.9);
        auto e0 = energy(rho, params);
        auto e1 = energy(scaled, params_new);
        const double factor = scaling_factor(mu, M, J, M_new, J_new);
        CHECK(rel_err(e1.kinetic_term, factor * e0.kinetic_term) < 1e-10);
        CHECK(rel_err(e1.potential_term, factor * e0.potential_term) < 1e-10);
    }
}

TEST_CASE("split-energy identity holds to rounding") {
    Rng rng(77);
    for (int rep = 0; rep < 20; ++rep) {
        auto g = make_grid(6.0, 256, Spacing::uniform);
        auto rho = random_density(rng, g);
        ModelParams params(rng.uniform(0.3, 3.2), mass(rho), 1.0, 0.5);
        const double r_split = rng.uniform(0.05, 0.95) * g.r_max();
        auto check = splitting_identity_check(rho, r_split, params);
        CHECK(check.residual <= 1e-10);
        CHECK(std::abs(check.alpha1 + check.alpha2 - 1.0) < 1e-14);
    }
}

TEST_CASE("degenerate split beyond the support reduces to the plain energy") {
    auto g = make_grid(4.0, 128, Spacing::uniform);
    auto ball = uniform_ball(g, 1.0, 0.9);
    ModelParams params(1.5, mass(ball), 1.0, 1.0);
    auto check = splitting_identity_check(ball, 3.5, params);
    CHECK(check.alpha1 == 1.0);
    CHECK(check.alpha2 == 0.0);
    CHECK(check.residual <= 1e-12);

    auto zero = make_density(g, std::vector<double>(g.size(), 0.0));
    CHECK_THROWS_AS(splitting_identity_check(zero, 1.0, params), constraint_error);
}

TEST_CASE("infimum estimates carry the concentration radius") {
    ModelParams params(1.0, 2.0, 1.0, 1.0);
    auto est = make_infimum_estimate(-0.5, params, "test");
    // r0 = M^2 / (-k * value), k = (7 - 2 mu)/3 = 5/3
    CHECK(rel_err(est.r0, 4.0 / (5.0 / 3.0 * 0.5)) < 1e-14);
    CHECK(est.source == "test");
    CHECK_THROWS_AS(make_infimum_estimate(0.1, params, "bad"), constraint_error);
}

TEST_CASE("concentration bound reporting") {
    auto g = make_grid(4.0, 512, Spacing::uniform);
    auto ball = uniform_ball(g, 1.0, 0.9005);
    ModelParams params(1.0, mass(ball), 1.0, 1.0);
    auto est = make_infimum_estimate(-0.4, params, "synthetic");

    // support entirely inside the split: the bracket term vanishes with m = 0
    auto none = concentration_bound(ball, 2.0, params, est);
    CHECK(none.tail == 0.0);
    CHECK(none.rhs == est.value);

    // split exactly at r0: the bracket is zero regardless of the tail
    auto at_r0 = concentration_bound(ball, est.r0, params, est);
    CHECK(at_r0.rhs == est.value);

    // generic split: straight formula evaluation
    auto mid = concentration_bound(ball, 0.5, params, est);
    const double m = tail_mass(ball, 0.5);
    CHECK(mid.tail == m);
    CHECK(rel_err(mid.rhs, est.value + m * (params.mass - m) * (1.0 / est.r0 - 2.0)) < 1e-13);
    CHECK(mid.lhs == energy(ball, params).total);
}

TEST_CASE("two-power split inequality holds over the unit interval") {
    Rng rng(2718);
    for (int i = 0; i < 100000; ++i) {
        const double x = rng.uniform();
        const double lhs = std::pow(x, 7.0 / 3.0) + std::pow(1.0 - x, 7.0 / 3.0);
        CHECK(lhs <= 1.0 - 7.0 / 3.0 * x * (1.0 - x) + 1e-12);
    }
}

TEST_CASE("concavity bound for fractional powers") {
    Rng rng(314);
    for (int i = 0; i < 10000; ++i) {
        double a = std::exp(rng.uniform(std::log(1e-2), std::log(1e2)));
        double b = std::exp(rng.uniform(std::log(1e-2), std::log(1e2)));
        if (a > b) std::swap(a, b);
        const double alpha = rng.uniform(0.01, 0.99);
        CHECK(std::pow(b, alpha) - std::pow(a, alpha) >=
              alpha * std::pow(b, alpha - 1.0) * (b - a) - 1e-12);
    }
}

TEST_CASE("every link of the concentration chain holds") {
    Rng rng(1618);
    for (int i = 0; i < 10000; ++i) {
        const double s = rng.uniform(); // psi fraction of the inner part
        const double x = rng.uniform(); // mass fraction of the inner part
        const double mu = rng.uniform(0.01, 3.49);

        // two-sequence Hoelder with exponents 7/(2mu) and 7/(7-2mu)
        const double paired = std::pow(s, 2.0 * mu / 3.0) * std::pow(x, (7.0 - 2.0 * mu) / 3.0) +
                              std::pow(1.0 - s, 2.0 * mu / 3.0) *
                                  std::pow(1.0 - x, (7.0 - 2.0 * mu) / 3.0);
        const double s_sum = std::pow(s, 7.0 / 3.0) + std::pow(1.0 - s, 7.0 / 3.0);
        const double x_sum = std::pow(x, 7.0 / 3.0) + std::pow(1.0 - x, 7.0 / 3.0);
        CHECK(paired <=
              std::pow(s_sum, 2.0 * mu / 7.0) * std::pow(x_sum, (7.0 - 2.0 * mu) / 7.0) + 1e-12);

        // the psi fractions sum below one after the 7/3 power
        CHECK(s_sum <= 1.0 + 1e-15);

        // last step: concavity applied at b = 1
        const double inner = 1.0 - 7.0 / 3.0 * x * (1.0 - x);
        const double alpha = (7.0 - 2.0 * mu) / 7.0;
        CHECK(1.0 - std::pow(inner, alpha) >= alpha * (1.0 - inner) - 1e-12);
    }
}

TEST_CASE("energy breakdown serializes to json") {
    EnergyBreakdown eb{0.25, -0.75, -0.5};
    auto text = to_json(eb);
    CHECK(text.find("\"kinetic_term\":0.25") != std::string::npos);
    CHECK(text.find("\"potential_term\":-0.75") != std::string::npos);
    CHECK(text.find("\"total\":-0.5") != std::string::npos);
    CHECK(text.find("schema_version") != std::string::npos);
}
