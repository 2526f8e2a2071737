// End-to-end tests of the command-line binary.  The binary path arrives in
// the VPMIN_BIN environment variable; artifacts land under the system temp
// directory.
#include "doctest.h"
#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const std::string& bin() {
    static const std::string path = [] {
        const char* p = std::getenv("VPMIN_BIN");
        return std::string(p != nullptr ? p : "");
    }();
    return path;
}

int run(const std::string& args) {
    const std::string cmd = bin() + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "vpmin_cli" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing artifact: ", path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json jload(const fs::path& path) {
    return nlohmann::json::parse(slurp(path));
}

}  // namespace

TEST_CASE("the binary path is provided and exists") {
    REQUIRE(!bin().empty());
    REQUIRE(fs::exists(bin()));
}

TEST_CASE("minimize writes both artifacts and reports a bound state") {
    const auto dir = fresh_dir("minimize");
    const int rc = run("minimize --mu 1.5 --mass 1 --j 1 --k11 1 --grid-n 2000 "
                       "--r-max 20 --out-dir " +
                       dir.string());
    CHECK(rc == 0);

    const auto result = jload(dir / "result.json");
    CHECK(result.at("schema_version") == 1);
    CHECK(result.at("converged") == true);
    CHECK(result.at("k11_source") == "scalar");
    CHECK(result.at("k11").get<double>() == 1.0);
    CHECK(result.at("energy").at("total").get<double>() < 0.0);
    CHECK(result.at("mass_rel_err").get<double>() < 1e-6);
    CHECK(result.at("el_residual").get<double>() < 1e-5);
    CHECK(result.at("r_support").get<double>() < 20.0);

    const std::string csv = slurp(dir / "profile.csv");
    CHECK(csv.rfind("# schema_version=1\nr,rho,U,m_enc\n", 0) == 0);
}

TEST_CASE("the oracle token fits the coupling and records it") {
    const auto dir = fresh_dir("oracle");
    const int rc = run("minimize --mu 1.5 --grid-n 512 --r-max 4 --out-dir " +
                       dir.string());
    CHECK(rc == 0);
    const auto result = jload(dir / "result.json");
    CHECK(result.at("k11_source") == "oracle");
    const double k11 = result.at("k11").get<double>();
    CHECK(k11 > 0.08);
    CHECK(k11 < 0.13);
}

TEST_CASE("invalid parameters exit with code three") {
    const auto dir = fresh_dir("invalid");
    const std::string out = " --out-dir " + dir.string();
    CHECK(run("minimize --mu 4.0" + out) == 3);
    CHECK(run("minimize --mu 0" + out) == 3);
    CHECK(run("minimize --mass -1" + out) == 3);
    CHECK(run("minimize --k11 nonsense" + out) == 3);
    CHECK(run("minimize --k11 -2" + out) == 3);
    CHECK(run("verify bogus" + out) == 3);
    CHECK(run("") == 3);
    CHECK(run("minimize --config " + (dir / "missing.cfg").string()) == 3);
}

TEST_CASE("non-convergence exits with code two") {
    const auto dir = fresh_dir("noconv");
    CHECK(run("minimize --max-iter 3 --grid-n 256 --out-dir " + dir.string()) == 2);
    CHECK_FALSE(fs::exists(dir / "result.json"));
}

TEST_CASE("verify suites pass, write schema-tagged artifacts, and are "
          "byte-deterministic per seed") {
    const auto dir = fresh_dir("verify");
    CHECK(run("verify scaling --mu 2 --seed 7 --out-dir " + dir.string()) == 0);

    const auto first = jload(dir / "verify_scaling.json");
    CHECK(first.at("schema_version") == 1);
    CHECK(first.at("suite") == "scaling");
    CHECK(first.at("passed") == true);
    REQUIRE(first.at("checks").size() == 1);
    CHECK(first.at("checks")[0].at("cases") == 50);

    const std::string bytes = slurp(dir / "verify_scaling.json");
    CHECK(run("verify scaling --mu 2 --seed 7 --out-dir " + dir.string()) == 0);
    CHECK(slurp(dir / "verify_scaling.json") == bytes);
}

TEST_CASE("report consolidates prior artifacts and fails on an empty directory") {
    const auto dir = fresh_dir("report");
    CHECK(run("report --out-dir " + dir.string()) == 3);

    CHECK(run("minimize --k11 1 --grid-n 512 --r-max 4 --out-dir " + dir.string()) == 0);
    CHECK(run("verify scaling --seed 3 --out-dir " + dir.string()) == 0);
    CHECK(run("verify sequences --seed 3 --out-dir " + dir.string()) == 0);
    CHECK(run("report --out-dir " + dir.string()) == 0);

    const auto report = jload(dir / "report.json");
    CHECK(report.at("schema_version") == 1);
    CHECK(report.at("generated_at").get<std::string>().size() == 20);
    CHECK(report.at("all_passed") == true);
    REQUIRE(report.at("suites").size() == 2);
    CHECK(report.at("suites")[0].at("suite") == "scaling");
    CHECK(report.at("suites")[1].at("suite") == "sequences");
    CHECK(report.at("minimize").at("energy").at("total").get<double>() < 0.0);
}

TEST_CASE("config file values apply beneath command-line flags") {
    const auto dir = fresh_dir("config");
    {
        std::ofstream cfg(dir / "run.cfg");
        cfg << "# sample configuration\n"
            << "mu = 2.0\n"
            << "mass = 1.5\n"
            << "grid-n = 512\n"
            << "r-max = 8\n"
            << "seed = 21\n";
    }
    const int rc = run("minimize --config " + (dir / "run.cfg").string() +
                       " --mass 2.0 --out-dir " + dir.string());
    CHECK(rc == 0);
    const auto result = jload(dir / "result.json");
    CHECK(result.at("mu").get<double>() == 2.0);
    CHECK(result.at("mass").get<double>() == 2.0);
    CHECK(result.at("grid_n") == 512);
    CHECK(result.at("r_max").get<double>() == 8.0);
    CHECK(result.at("seed") == 21);
}

TEST_CASE("the VPMIN_OUT environment variable sets the default output directory") {
    const auto dir = fresh_dir("envout");
    REQUIRE(setenv("VPMIN_OUT", dir.string().c_str(), 1) == 0);
    const int rc = run("verify scaling --mu 1 --seed 9");
    REQUIRE(unsetenv("VPMIN_OUT") == 0);
    CHECK(rc == 0);
    CHECK(fs::exists(dir / "verify_scaling.json"));
}

TEST_CASE("the demo subcommands succeed and respect their seeds") {
    CHECK(run("rearrange --seed 11 --side 8") == 0);
    CHECK(run("reduce-check --mu 1.5 --grid-n 256 --seed 3") == 0);
}
