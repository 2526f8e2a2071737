#include "doctest.h"

#include <string>
#include <vector>

#include "vpmin/errors.hpp"
#include "vpmin/verify.hpp"

using namespace vpmin;

TEST_CASE("suite names cover the verification surface in a fixed order") {
    const std::vector<std::string> expected = {"scaling",   "concentration",
                                               "riesz",     "reduction",
                                               "lane-emden", "sequences"};
    CHECK(suite_names() == expected);
}

TEST_CASE("unknown suites and invalid options are rejected") {
    CHECK_THROWS_AS(run_suite("bogus", {}), constraint_error);

    VerifyOptions empty;
    empty.mus = {};
    CHECK_THROWS_AS(check_splitting_identity(empty), constraint_error);

    VerifyOptions out_of_range;
    out_of_range.mus = {3.5};
    CHECK_THROWS_AS(check_splitting_identity(out_of_range), constraint_error);
}

TEST_CASE("a single requested exponent restricts the sweep") {
    VerifyOptions opts;
    opts.mus = {2.0};
    const auto checks = check_scaling_law(opts);
    REQUIRE(checks.size() == 1);
    CHECK(checks[0].name.find("(mu=2)") != std::string::npos);
    CHECK(checks[0].criterion == 2);
    CHECK(checks[0].cases == 50);
    CHECK(checks[0].passed);
}

TEST_CASE("interaction far-field bound holds under the default sweep") {
    const auto checks = check_newton_bound({});
    REQUIRE(checks.size() == 1);
    CHECK(checks[0].criterion == 8);
    CHECK(checks[0].cases == 100);
    CHECK(checks[0].passed);
    CHECK(checks[0].worst <= checks[0].bound);
}

TEST_CASE("suite serialization is byte deterministic for a fixed seed") {
    VerifyOptions opts;
    opts.seed = 12;
    const auto a = run_suite("scaling", opts);
    const auto b = run_suite("scaling", opts);
    CHECK(a.passed());
    CHECK(to_json(a) == to_json(b));
    CHECK(to_json(a).find("\"schema_version\":1") != std::string::npos);
    CHECK(to_json(a).find("\"suite\":\"scaling\"") != std::string::npos);
}

TEST_CASE("suite json lays out checks with escaped names and full precision") {
    SuiteResult res;
    res.suite = "demo";
    CheckResult check;
    check.name = "a \"quoted\" name with a back\\slash";
    check.criterion = 3;
    check.cases = 7;
    check.worst = 1.5;
    check.sense = '<';
    check.bound = 2.0;
    check.passed = true;
    res.checks.push_back(check);

    const std::string expected =
        "{\"schema_version\":1,\"suite\":\"demo\",\"passed\":true,\"checks\":["
        "{\"name\":\"a \\\"quoted\\\" name with a back\\\\slash\","
        "\"criterion\":3,\"cases\":7,\"worst\":1.5,\"sense\":\"<=\","
        "\"bound\":2,\"passed\":true}]}";
    CHECK(to_json(res) == expected);

    res.checks[0].passed = false;
    CHECK_FALSE(res.passed());
    CHECK(to_json(res).find("\"passed\":false") != std::string::npos);
}
