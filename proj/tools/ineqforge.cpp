// Batch front end: constants tables, kernel/quotient grids, manifold
// condition audits, inequality verification, heat-kernel self-tests, and the
// config-file runner. All report data goes to stdout or to files; stderr only
// carries diagnostics. Exit codes: 0 ok, 2 bad flags/config, 3 warp condition
// violated, 4 a deficit check failed.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ineq/constants.hpp"
#include "ineq/errors.hpp"
#include "ineq/gaussmeasure.hpp"
#include "ineq/heat.hpp"
#include "ineq/manifold.hpp"
#include "ineq/profiles.hpp"
#include "ineq/rearrange.hpp"
#include "ineq/report.hpp"
#include "ineq/serialize.hpp"
#include "ineq/verify.hpp"

namespace fs = std::filesystem;
using ineq::ordered_json;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitCondition = 3;
constexpr int kExitDeficit = 4;

void write_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ineq::ParseError("cannot write " + path.string());
        out << content;
    }
    fs::rename(tmp, path);
}

// ---------------------------------------------------------------------------

int cmd_constants(int n_dim, double p, std::optional<double> alpha,
                  const std::string& manifold_spec) {
    if (n_dim < 2 || !(p >= 1.0) || !(p < double(n_dim)))
        throw ineq::RangeError("constants: need N >= 2 and 1 <= p < N");
    ordered_json out, formulas;
    if (p > 1.0) {
        out["poincare"] = ineq::poincare_constant(n_dim, p);
        formulas["poincare"] = "((N-1)/p)^p";
    }
    if (p >= 2.0) {
        const auto m = ineq::parse_manifold(manifold_spec, n_dim);
        out["lambda_log"] = ineq::lambda_log(n_dim, p, m);
        formulas["lambda_log"] = "C(N,p) N^p ((p-1)/p)^p";
    }
    out["L_Np"] = ineq::log_sobolev_constant(n_dim, p);
    formulas["L_Np"] = "(p/N) pi^{-p/2} ((p-1)/e)^{p-1} (Gamma(N/2+1)/Gamma(N(p-1)/p+1))^{p/N}";
    if (p > 1.0) {
        out["S_Np"] = ineq::sharp_sobolev_constant(n_dim, p);
        formulas["S_Np"] = "sharp Sobolev constant, bubble-validated";
    }
    if (alpha) {
        ineq::ExponentParams params;
        params.N = n_dim;
        params.p = p;
        params.alpha = alpha;
        const auto branch = *alpha > 1.0 ? ineq::GNBranch::alpha_gt_1 : ineq::GNBranch::alpha_lt_1;
        const auto gn = ineq::gn_constant(params, branch);
        const char* key = *alpha > 1.0 ? "GN1" : "GN2";
        out[key] = gn.constant;
        out["theta"] = gn.theta;
        out["q"] = gn.q;
        out["delta"] = gn.delta;
        formulas[key] = "sharp interpolation constant";
    }
    if (n_dim >= 3) {
        out["C2"] = ineq::gaussian_c2(n_dim);
        formulas["C2"] = "L_{N,2}^{N/2} sqrt(2 pi) 2^{1-N} e^{(N-1)^2/2} omega_{N-1} (N e/4)^{N/2}";
    }
    out["G"] = ineq::gaussian_normalization(n_dim);
    formulas["G"] = "erf series for int e^{-rho^2/2} dV";
    out["formulas"] = formulas;
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_kernel(const std::string& manifold_spec, int n_dim, double p, double tmax, int grid,
               const std::string& csv_path) {
    if (grid < 10) throw ineq::RangeError("kernel: need --grid >= 10");
    const auto m = ineq::parse_manifold(manifold_spec, n_dim);
    if (tmax > m.validity_end)
        throw ineq::RangeError("kernel: --tmax exceeds the validity interval of the warp");

    std::string csv = "t,psi,phi,k,quotient\n";
    bool violated = false;
    double worst_k = std::numeric_limits<double>::infinity();
    double worst_t = 0.0;
    for (int i = 1; i <= grid; ++i) {
        const double t = tmax * i / grid;
        const double psi = m.psi(t);
        const double ph = ineq::phi(m, t);
        const double k = ineq::detail::kernel_at_radius(m, p, t);
        const double quotient = k / std::pow(ph, p);
        const double scale = std::pow(ph, p * (n_dim - 1) / double(n_dim));
        if (k <= -1e-9 * std::max(scale, 1e-300)) {
            violated = true;
            if (k < worst_k) {
                worst_k = k;
                worst_t = t;
            }
        }
        csv += ineq::format_double(t) + "," + ineq::format_double(psi) + "," +
               ineq::format_double(ph) + "," + ineq::format_double(k) + "," +
               ineq::format_double(quotient) + "\n";
    }
    if (csv_path.empty())
        std::cout << csv;
    else
        write_atomic(csv_path, csv);

    ordered_json summary;
    if (!violated) {
        const auto bound =
            ineq::correction_lower_constant(m, p, {tmax / grid, tmax, grid});
        summary["C"] = bound.constant;
        summary["limit_zero"] = bound.limit_zero;
        summary["limit_infinity"] = bound.limit_infinity;
        summary["argmin"] = bound.argmin;
    } else {
        summary["C"] = nullptr;
        summary["limit_zero"] =
            p == 2.0 ? ordered_json(6.0 * (n_dim - 1) * ineq::taylor_a3(m) / (n_dim + 2))
                     : ordered_json(nullptr);
        summary["limit_infinity"] = nullptr;
        summary["argmin"] = nullptr;
        summary["witness_t"] = worst_t;
        summary["witness_k"] = worst_k;
    }
    std::cout << summary.dump(2) << "\n";
    return violated ? kExitCondition : kExitOk;
}

// ---------------------------------------------------------------------------

ineq::ExponentParams params_from_flags(int n_dim, double p, std::optional<double> alpha,
                                       std::optional<double> q, std::optional<double> s,
                                       std::optional<double> lambda, std::optional<double> a,
                                       std::optional<double> b, std::optional<double> q0,
                                       std::optional<double> alpha_time,
                                       std::optional<double> offset) {
    ineq::ExponentParams params;
    params.N = n_dim;
    params.p = p;
    params.alpha = alpha;
    params.q = q;
    params.s = s;
    params.lambda = lambda;
    params.a = a;
    params.b = b;
    params.q0 = q0;
    params.alpha_time = alpha_time;
    params.offset = offset;
    return params;
}

int cmd_verify(const std::string& inequality, const std::string& profile_spec,
               const std::string& manifold_spec, const ineq::ExponentParams& params) {
    const auto id = ineq::parse_inequality_id(inequality);
    const auto m = ineq::parse_manifold(manifold_spec, params.N);
    const auto u = ineq::parse_profile(profile_spec);
    const auto report = ineq::verify(id, u, m, params);
    std::cout << ineq::report_to_json(report).dump(2) << "\n";
    return ineq::report_passes(report) ? kExitOk : kExitDeficit;
}

// ---------------------------------------------------------------------------

int cmd_heat(int n_dim, double alpha, std::vector<double> times) {
    if (times.empty()) times = {0.25, 0.5, 1.0, 2.0, 4.0};
    ineq::HeatKernelSpec spec{n_dim, 1.0, alpha};
    const double mass_tol = n_dim == 3 ? 1e-6 : 1e-4;
    const double residual_tol = n_dim == 3 ? 1e-4 : 1e-3;
    bool ok = true;

    ordered_json out;
    ordered_json masses = ordered_json::array();
    for (double t : times) {
        spec.t = t;
        const double mass = ineq::heat_normalization(spec);
        ok = ok && std::abs(mass - 1.0) <= mass_tol;
        ordered_json row;
        row["t"] = t;
        row["mass"] = mass;
        masses.push_back(row);
    }
    out["normalization"] = masses;

    spec.t = 1.0;
    const double residual = ineq::heat_pde_residual(spec, 0.2, 3.0, 12, 0.5, 2.0, 7);
    ok = ok && residual <= residual_tol;
    out["pde_residual"] = residual;

    ordered_json ck = ordered_json::array();
    for (auto [s, t] : {std::pair{0.5, 0.5}, {0.3, 0.7}, {1.0, 1.0}}) {
        const auto [lhs, rhs] = ineq::chapman_kolmogorov_origin(spec, s, t);
        const double rel = std::abs(lhs / rhs - 1.0);
        ok = ok && rel <= 1e-5;
        ordered_json row;
        row["s"] = s;
        row["t"] = t;
        row["lhs"] = lhs;
        row["rhs"] = rhs;
        row["rel_error"] = rel;
        ck.push_back(row);
    }
    out["chapman_kolmogorov"] = ck;
    out["passed"] = ok;
    std::cout << out.dump(2) << "\n";
    return ok ? kExitOk : kExitDeficit;
}

// ---------------------------------------------------------------------------
// Config runner.

std::vector<double> as_list(const json& v, const std::string& key) {
    std::vector<double> out;
    if (v.is_array()) {
        for (const auto& x : v) {
            if (!x.is_number()) throw ineq::ParseError("config: '" + key + "' must be numeric");
            out.push_back(x.get<double>());
        }
    } else if (v.is_number()) {
        out.push_back(v.get<double>());
    } else {
        throw ineq::ParseError("config: '" + key + "' must be a number or array");
    }
    if (out.empty()) throw ineq::ParseError("config: '" + key + "' is empty");
    return out;
}

std::vector<ineq::ExponentParams> expand_params(const json& obj) {
    static const std::vector<std::string> keys = {"N",      "p", "alpha", "q",          "s",
                                                  "lambda", "a", "b",     "q0",         "alpha_time",
                                                  "offset"};
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const auto& k : keys) known = known || it.key() == k;
        if (!known) throw ineq::ParseError("config: unknown params key '" + it.key() + "'");
    }
    auto get = [&](const std::string& key) -> std::vector<std::optional<double>> {
        if (!obj.contains(key)) return {std::nullopt};
        std::vector<std::optional<double>> out;
        for (double v : as_list(obj.at(key), key)) out.emplace_back(v);
        return out;
    };
    if (!obj.contains("N")) throw ineq::ParseError("config: suite params need 'N'");
    const auto ns = as_list(obj.at("N"), "N");
    const auto ps = obj.contains("p") ? as_list(obj.at("p"), "p") : std::vector<double>{2.0};
    std::vector<ineq::ExponentParams> out;
    for (double n : ns)
        for (double p : ps)
            for (auto alpha : get("alpha"))
                for (auto q : get("q"))
                    for (auto s : get("s"))
                        for (auto lambda : get("lambda"))
                            for (auto a : get("a"))
                                for (auto b : get("b"))
                                    for (auto q0 : get("q0"))
                                        for (auto at : get("alpha_time"))
                                            for (auto off : get("offset")) {
                                                ineq::ExponentParams e;
                                                e.N = int(n);
                                                e.p = p;
                                                e.alpha = alpha;
                                                e.q = q;
                                                e.s = s;
                                                e.lambda = lambda;
                                                e.a = a;
                                                e.b = b;
                                                e.q0 = q0;
                                                e.alpha_time = at;
                                                e.offset = off;
                                                out.push_back(e);
                                            }
    return out;
}

int cmd_run(const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in) throw ineq::ParseError("cannot open config " + config_path);
    json cfg_json;
    try {
        in >> cfg_json;
    } catch (const json::exception& e) {
        throw ineq::ParseError(std::string("config is not valid JSON: ") + e.what());
    }

    ineq::QuadratureConfig quad;
    if (cfg_json.contains("quadrature")) {
        const auto& q = cfg_json.at("quadrature");
        quad.rel_tol = q.value("rel_tol", quad.rel_tol);
        quad.abs_tol = q.value("abs_tol", quad.abs_tol);
        quad.max_subdivisions = q.value("max_subdivisions", quad.max_subdivisions);
        quad.tail_cut = q.value("tail_cut", quad.tail_cut);
    }

    std::string output_dir = cfg_json.value("output_dir", "reports");
    if (const char* env = std::getenv("INEQ_FORGE_OUTPUT")) output_dir = env;
    fs::create_directories(output_dir);

    std::vector<std::string> manifold_specs;
    for (const auto& m : cfg_json.value("manifolds", json::array({"sinh"})))
        manifold_specs.push_back(m.get<std::string>());

    // parse profiles up front so an unknown spec is rejected by name
    std::vector<ineq::RadialProfile> profiles;
    for (const auto& p : cfg_json.value("profiles", json::array())) {
        const std::string spec = p.get<std::string>();
        try {
            profiles.push_back(ineq::parse_profile(spec));
        } catch (const ineq::Error& e) {
            throw ineq::ParseError("config: bad profile '" + spec + "': " + e.what());
        }
    }

    std::vector<ineq::InequalityReport> reports;
    std::vector<ineq::SuiteSkip> skipped;
    for (const auto& suite : cfg_json.value("suites", json::array())) {
        if (!suite.contains("inequality"))
            throw ineq::ParseError("config: suite entry without 'inequality'");
        const auto id = ineq::parse_inequality_id(suite.at("inequality").get<std::string>());
        const auto params_grid = expand_params(suite.value("params", json::object()));
        for (const auto& mspec : manifold_specs)
            for (const auto& params : params_grid) {
                ineq::ManifoldModel model;
                try {
                    model = ineq::parse_manifold(mspec, params.N);
                } catch (const ineq::Error& e) {
                    throw ineq::ParseError("config: bad manifold '" + mspec + "': " + e.what());
                }
                auto result = ineq::verify_suite({id}, profiles, model, {params}, quad);
                for (auto& r : result.reports) reports.push_back(std::move(r));
                for (auto& s : result.skipped) skipped.push_back(std::move(s));
            }
    }

    ordered_json conditions = ordered_json::array();
    for (const auto& c : cfg_json.value("conditions", json::array())) {
        const std::string mspec = c.at("manifold").get<std::string>();
        const int dim = c.at("dim").get<int>();
        const double p = c.value("p", 2.0);
        const auto scan_spec = c.value("scan", json::array({0.01, 10.0, 400}));
        ineq::ScanGrid scan{scan_spec.at(0).get<double>(), scan_spec.at(1).get<double>(),
                            scan_spec.at(2).get<int>()};
        const auto model = ineq::parse_manifold(mspec, dim);
        ordered_json entry;
        entry["manifold"] = mspec;
        entry["N"] = dim;
        entry["p"] = p;
        ordered_json rows = ordered_json::array();
        for (const auto& rep : ineq::check_conditions(model, p, scan))
            rows.push_back(ineq::condition_to_json(rep));
        entry["conditions"] = rows;
        conditions.push_back(entry);
    }

    int passed = 0, failed = 0;
    ordered_json report_array = ordered_json::array();
    std::string csv = std::string(ineq::kReportCsvHeader) + "\n";
    for (const auto& r : reports) {
        (ineq::report_passes(r) ? passed : failed)++;
        report_array.push_back(ineq::report_to_json(r));
        csv += ineq::report_to_csv_row(r) + "\n";
    }
    ordered_json skip_array = ordered_json::array();
    for (const auto& s : skipped) skip_array.push_back(ineq::skip_to_json(s));

    ordered_json summary;
    summary["total"] = int(reports.size() + skipped.size());
    summary["passed"] = passed;
    summary["failed"] = failed;
    summary["skipped"] = int(skipped.size());

    const fs::path dir(output_dir);
    write_atomic(dir / "reports.json", report_array.dump(2) + "\n");
    write_atomic(dir / "reports.csv", csv);
    write_atomic(dir / "skipped.json", skip_array.dump(2) + "\n");
    write_atomic(dir / "conditions.json", conditions.dump(2) + "\n");
    write_atomic(dir / "summary.json", summary.dump(2) + "\n");
    std::cout << summary.dump(2) << "\n";
    return failed > 0 ? kExitDeficit : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sharp-constant and functional-inequality verification on model manifolds"};
    app.require_subcommand(1);

    // constants
    int c_dim = 3;
    double c_p = 2.0;
    std::optional<double> c_alpha;
    std::string c_manifold = "sinh";
    auto* constants = app.add_subcommand("constants", "closed-form constants table");
    constants->add_option("--dim", c_dim, "dimension N")->required();
    constants->add_option("--p", c_p, "exponent p")->required();
    constants->add_option("--alpha", c_alpha, "interpolation exponent for the GN constant");
    constants->add_option("--manifold", c_manifold, "warp spec for lambda_log");

    // kernel
    std::string k_manifold;
    int k_dim = 3, k_grid = 400;
    double k_p = 2.0, k_tmax = 10.0;
    std::string k_csv;
    auto* kernel = app.add_subcommand("kernel", "correction kernel and quotient grid");
    kernel->add_option("--manifold", k_manifold, "warp spec")->required();
    kernel->add_option("--dim", k_dim, "dimension N")->required();
    kernel->add_option("--p", k_p, "exponent p")->required();
    kernel->add_option("--tmax", k_tmax, "grid upper endpoint");
    kernel->add_option("--grid", k_grid, "number of grid points");
    kernel->add_option("--csv", k_csv, "write the table to this path instead of stdout");

    // verify
    std::string v_inequality, v_profile, v_manifold = "sinh";
    int v_dim = 3;
    double v_p = 2.0;
    std::optional<double> v_alpha, v_q, v_s, v_lambda, v_a, v_b, v_q0, v_alpha_time, v_offset;
    auto* verify_cmd = app.add_subcommand("verify", "evaluate one inequality report");
    verify_cmd->add_option("--inequality", v_inequality, "inequality id")->required();
    verify_cmd->add_option("--profile", v_profile, "profile spec")->required();
    verify_cmd->add_option("--dim", v_dim, "dimension N")->required();
    verify_cmd->add_option("--p", v_p, "exponent p");
    verify_cmd->add_option("--manifold", v_manifold, "warp spec");
    verify_cmd->add_option("--alpha", v_alpha, "GN interpolation exponent");
    verify_cmd->add_option("--q", v_q, "secondary exponent");
    verify_cmd->add_option("--s", v_s, "upper exponent");
    verify_cmd->add_option("--lambda", v_lambda, "Beckner parameter");
    verify_cmd->add_option("--a", v_a, "affine family slope");
    verify_cmd->add_option("--b", v_b, "affine family intercept");
    verify_cmd->add_option("--q0", v_q0, "affine family base point");
    verify_cmd->add_option("--alpha-time", v_alpha_time, "semigroup time scale");
    verify_cmd->add_option("--offset", v_offset, "additive profile offset");

    // heat
    int h_dim = 3;
    double h_alpha = 1.0;
    std::vector<double> h_times;
    auto* heat = app.add_subcommand("heat", "heat kernel self-tests");
    heat->add_option("--dim", h_dim, "odd dimension (3, 5, 7)");
    heat->add_option("--alpha", h_alpha, "semigroup time scale");
    heat->add_option("--times", h_times, "normalization check times");

    // run
    std::string r_config;
    auto* run = app.add_subcommand("run", "run a JSON config of suites");
    run->add_option("--config", r_config, "path to the run config")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (constants->parsed()) return cmd_constants(c_dim, c_p, c_alpha, c_manifold);
        if (kernel->parsed()) return cmd_kernel(k_manifold, k_dim, k_p, k_tmax, k_grid, k_csv);
        if (verify_cmd->parsed())
            return cmd_verify(v_inequality, v_profile, v_manifold,
                              params_from_flags(v_dim, v_p, v_alpha, v_q, v_s, v_lambda, v_a,
                                                v_b, v_q0, v_alpha_time, v_offset));
        if (heat->parsed()) return cmd_heat(h_dim, h_alpha, h_times);
        if (run->parsed()) return cmd_run(r_config);
    } catch (const ineq::ConditionViolated& e) {
        std::cerr << "condition violated: " << e.what() << "\n";
        return kExitCondition;
    } catch (const ineq::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
