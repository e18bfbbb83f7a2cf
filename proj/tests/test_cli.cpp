#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string binary() {
    const char* bin = std::getenv("INEQFORGE_BIN");
    REQUIRE(bin != nullptr);
    return bin;
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    const fs::path out_path = fs::temp_directory_path() / "ineqforge_cli_out.txt";
    const std::string cmd = binary() + " " + args + " > " + out_path.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream buf;
    buf << in.rdbuf();
    return {WEXITSTATUS(status), buf.str()};
}

json last_json(const std::string& text) { // summary object printed last
    const auto pos = text.rfind("\n{");
    return json::parse(pos == std::string::npos ? text : text.substr(pos + 1));
}

} // namespace

TEST_CASE("constants subcommand") {
    const auto ok = run("constants --dim 3 --p 2");
    CHECK(ok.exit_code == 0);
    const json j = json::parse(ok.out);
    CHECK(j.at("lambda_log").get<double>() == Catch::Approx(0.9).margin(1e-12));
    CHECK(j.at("L_Np").get<double>() ==
          Catch::Approx(2.0 / (3.0 * std::acos(-1.0) * std::exp(1.0))).margin(1e-12));
    CHECK(j.at("poincare").get<double>() == Catch::Approx(1.0));
    CHECK(j.contains("G"));
    CHECK(j.contains("formulas"));

    CHECK(run("constants --dim 3 --p 5").exit_code == 2);

    const auto gn = run("constants --dim 3 --p 2 --alpha 2");
    CHECK(gn.exit_code == 0);
    CHECK(json::parse(gn.out).at("GN1").get<double>() == Catch::Approx(0.6083).margin(1e-4));
}

TEST_CASE("kernel subcommand") {
    const auto ok = run("kernel --manifold sinh --dim 3 --p 2 --tmax 10 --grid 400");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.rfind("t,psi,phi,k,quotient\n", 0) == 0);
    const json summary = last_json(ok.out);
    CHECK(summary.at("C").get<double>() == Catch::Approx(0.4).margin(1e-6));
    CHECK(summary.at("limit_zero").get<double>() == Catch::Approx(0.4).margin(1e-12));
    CHECK(summary.at("limit_infinity").get<double>() ==
          Catch::Approx(4.0 / 9.0).margin(1e-12));

    const auto bad = run("kernel --manifold poly:1,0,1,0,-1 --dim 3 --p 2 --tmax 1.25 --grid 400");
    CHECK(bad.exit_code == 3);
    const json bad_summary = last_json(bad.out);
    CHECK(bad_summary.at("C").is_null());
    CHECK(bad_summary.at("witness_t").get<double>() >= 1.0);
    CHECK(bad_summary.at("witness_t").get<double>() <= 1.25);
    CHECK(bad_summary.at("witness_k").get<double>() < -1.0);

    const auto flat = run("kernel --manifold id --dim 4 --p 2 --tmax 10 --grid 100");
    CHECK(flat.exit_code == 0);
    CHECK(std::abs(last_json(flat.out).at("C").get<double>()) < 1e-9);

    CHECK(run("kernel --manifold wiggle --dim 3 --p 2").exit_code == 2);
    CHECK(run("kernel --manifold sinh --dim 3 --p 2 --grid 4").exit_code == 2);
}

TEST_CASE("verify subcommand") {
    const auto ok = run("verify --inequality poincare --profile expdecay:2 --dim 3 --p 2");
    CHECK(ok.exit_code == 0);
    const json j = json::parse(ok.out);
    CHECK(j.at("deficit").get<double>() == Catch::Approx(1.5707963).margin(1e-6));
    CHECK(j.at("id") == "poincare");
    CHECK(j.at("manifold") == "hyperbolic");
    CHECK(j.at("profile") == "expdecay:2");

    const auto els = run(
        "verify --inequality euclidean_log_sobolev --profile gauss:0.5 --manifold id --dim 3 --p 2");
    CHECK(els.exit_code == 0);
    CHECK(std::abs(json::parse(els.out).at("deficit").get<double>()) <= 1e-6);

    CHECK(run("verify --inequality hebey_sobolev --profile gauss:1 --dim 3 --p 2").exit_code == 2);
    CHECK(run("verify --inequality nothing --profile gauss:1 --dim 3 --p 2").exit_code == 2);
    CHECK(run("verify --inequality poincare --profile gauss --dim 3 --p 2").exit_code == 2);
}

TEST_CASE("heat subcommand") {
    const auto ok = run("heat --dim 3");
    CHECK(ok.exit_code == 0);
    const json j = json::parse(ok.out);
    CHECK(j.at("passed").get<bool>());
    CHECK(j.at("pde_residual").get<double>() <= 1e-4);
    for (const auto& row : j.at("normalization"))
        CHECK(row.at("mass").get<double>() == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("run subcommand") {
    const fs::path dir = fs::temp_directory_path() / "ineqforge_run_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path cfg_path = dir / "cfg.json";
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({
  "output_dir": ")" << (dir / "out").string() << R"(",
  "manifolds": ["sinh", "id"],
  "profiles": ["gauss:1", "expdecay:2"],
  "suites": [
    {"inequality": "poincare", "params": {"N": [3], "p": [2]}},
    {"inequality": "log_sobolev_2", "params": {"N": [3], "p": [2]}}
  ],
  "conditions": [{"manifold": "sinh", "dim": 3, "p": 2, "scan": [0.01, 5.0, 200]}]
})";
    }
    const auto ok = run("run --config " + cfg_path.string());
    CHECK(ok.exit_code == 0);
    const json summary = json::parse(ok.out);
    // 2 suites x 2 manifolds x 2 profiles: half skip on the Euclidean warp
    CHECK(summary.at("total").get<int>() == 8);
    CHECK(summary.at("passed").get<int>() == 4);
    CHECK(summary.at("failed").get<int>() == 0);
    CHECK(summary.at("skipped").get<int>() == 4);
    for (const char* name : {"reports.json", "reports.csv", "conditions.json", "summary.json",
                             "skipped.json"})
        CHECK(fs::exists(dir / "out" / name));
    {
        std::ifstream in(dir / "out" / "reports.csv");
        std::string header;
        std::getline(in, header);
        CHECK(header ==
              "id,manifold,N,p,alpha,q,s,lambda,profile,lhs,rhs,deficit,quad_error,normalized");
    }

    // empty suites: zero totals, success
    const fs::path empty_path = dir / "empty.json";
    {
        std::ofstream cfg(empty_path);
        cfg << R"({"output_dir": ")" << (dir / "out2").string() << R"(", "suites": []})";
    }
    const auto empty = run("run --config " + empty_path.string());
    CHECK(empty.exit_code == 0);
    CHECK(json::parse(empty.out).at("total").get<int>() == 0);

    // unknown profile is named in the failure
    const fs::path bad_path = dir / "bad.json";
    {
        std::ofstream cfg(bad_path);
        cfg << R"({"profiles": ["wiggle:1"], "suites": []})";
    }
    CHECK(run("run --config " + bad_path.string()).exit_code == 2);
    CHECK(run("run --config " + (dir / "missing.json").string()).exit_code == 2);
    fs::remove_all(dir);
}
