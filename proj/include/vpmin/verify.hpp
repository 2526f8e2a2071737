#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vpmin {

/// One verified property.  `worst` is the extreme value measured across
/// `cases` samples; the check passes when it lies on the stated side of
/// `bound` ('<' for an upper limit, '>' for a lower one).
struct CheckResult {
    std::string name;
    int criterion = 0; // numbered group reported by the acceptance harness
    std::size_t cases = 0;
    double worst = 0.0;
    char sense = '<';
    double bound = 0.0;
    bool passed = false;
};

/// Scope of a verification run.  Checks that sweep the model exponent run
/// once per entry of mus; every randomized draw derives from seed, so equal
/// options give byte-identical reports.
struct VerifyOptions {
    std::vector<double> mus = {0.5, 1.5, 2.5};
    std::uint64_t seed = 7;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;
    bool passed() const;
};

// Criterion-level runners.  Each returns the checks of one numbered
// criterion group; the polytrope runner covers three groups (3, 4, 5)
// because they share the same converged minimizers.
std::vector<CheckResult> check_splitting_identity(const VerifyOptions& opts = {});     // 1
std::vector<CheckResult> check_scaling_law(const VerifyOptions& opts = {});            // 2
std::vector<CheckResult> check_minimizer_vs_polytrope(const VerifyOptions& opts = {}); // 3, 4, 5
std::vector<CheckResult> check_elementary_inequalities(const VerifyOptions& opts = {}); // 6
std::vector<CheckResult> check_rearrangement(const VerifyOptions& opts = {});          // 7
std::vector<CheckResult> check_newton_bound(const VerifyOptions& opts = {});           // 8
std::vector<CheckResult> check_kinetic_reduction(const VerifyOptions& opts = {});      // 9
std::vector<CheckResult> check_potential_consistency(const VerifyOptions& opts = {});  // 10
std::vector<CheckResult> check_sequence_diagnostics(const VerifyOptions& opts = {});   // 11

/// The named suites, in canonical order: scaling, concentration, riesz,
/// reduction, lane-emden, sequences.
const std::vector<std::string>& suite_names();

/// Runs one suite (criterion groups: scaling = {2}; concentration =
/// {1, 6, 8}; riesz = {7, 10}; reduction = {9}; lane-emden = {3, 4, 5};
/// sequences = {11}).  Unknown names raise constraint_error.
SuiteResult run_suite(const std::string& suite, const VerifyOptions& opts = {});

/// Timing-free JSON of a suite outcome; byte-identical across runs with
/// equal options.
std::string to_json(const SuiteResult& sr);

} // namespace vpmin
