// Acceptance suite: each criterion prints one [PASS]/[FAIL] line; the exit
// code is the number of failed criteria. Usage:
//   acceptance [path-to-ineqforge-binary] [path-to-full-config]
// (the CLI determinism criterion is skipped with a FAIL if the paths are
// missing or the binary cannot run).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ineq/constants.hpp"
#include "ineq/gaussmeasure.hpp"
#include "ineq/heat.hpp"
#include "ineq/manifold.hpp"
#include "ineq/profiles.hpp"
#include "ineq/rearrange.hpp"
#include "ineq/verify.hpp"

namespace fs = std::filesystem;
using namespace ineq;

namespace {

const double kPi = std::acos(-1.0);
int g_failures = 0;

void criterion(int number, const std::string& name, const std::function<bool()>& body) {
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& e) {
        note = std::string(" (") + e.what() + ")";
    }
    std::printf("[%s] criterion %2d: %s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                note.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

template <class F>
double simpson(F&& f, double a, double b, int n) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli_bin = argc > 1 ? argv[1] : "";
    const std::string full_config = argc > 2 ? argv[2] : "";

    criterion(1, "closed-form constants reproduce their stated values", [] {
        const auto h3 = builtin_manifold(BuiltinManifold::hyperbolic, 3);
        const auto h4 = builtin_manifold(BuiltinManifold::hyperbolic, 4);
        const auto h5 = builtin_manifold(BuiltinManifold::hyperbolic, 5);
        return close(lambda_log(3, 2.0, h3), 0.9, 1e-12) &&
               close(lambda_log(4, 2.0, h4), 2.0, 1e-12) &&
               close(lambda_log(5, 2.0, h5), 25.0 / 7.0, 1e-12) &&
               close(log_sobolev_constant(3, 2.0), 2.0 / (3.0 * kPi * std::exp(1.0)), 1e-12) &&
               close(poincare_constant(3, 2.0), 1.0, 1e-12);
    });

    criterion(2, "scan-based lambda matches the closed form for N = 3..10", [] {
        for (int n = 3; n <= 10; ++n) {
            const auto m = builtin_manifold(BuiltinManifold::hyperbolic, n);
            const double closed = double(n) * n * (n - 1) / (4.0 * (n + 2));
            if (!close(lambda_log(n, 2.0, m), closed, 1e-9)) return false;
        }
        return true;
    });

    criterion(3, "correction quotient: grid infimum, endpoint limits, flat kernel", [] {
        const auto h3 = builtin_manifold(BuiltinManifold::hyperbolic, 3);
        const auto bound = correction_lower_constant(h3, 2.0, {0.025, 20.0, 400});
        if (!(bound.grid_min >= 0.396 && bound.grid_min <= 0.404)) return false;
        if (!close(bound.limit_zero, 0.4, 1e-12)) return false;
        if (!close(bound.limit_infinity, 4.0 / 9.0, 1e-12)) return false;
        const auto e3 = builtin_manifold(BuiltinManifold::euclidean, 3);
        double worst = 0.0;
        for (int i = 1; i <= 400; ++i) {
            const double t = 10.0 * i / 400.0;
            worst = std::max(worst, std::abs(correction_kernel(e3, 2.0, phi(e3, t))));
        }
        return worst <= 1e-10;
    });

    criterion(4, "counterexample warp: kernel positivity fails with a localized witness", [] {
        const auto ce = builtin_manifold(BuiltinManifold::counterexample, 3);
        bool ok = false;
        for (const auto& rep : check_conditions(ce, 2.0, {0.01, 1.25, 500})) {
            if (rep.condition_id != ConditionId::kernel_positive) continue;
            ok = !rep.passed && rep.witness && rep.witness->first >= 1.0 &&
                 rep.witness->first <= 1.25;
        }
        if (!ok) return false;
        auto psi2 = [&](double y) { return 3.0 * ce.psi(y) * ce.psi(y); };
        const double phi_simpson = simpson(psi2, 0.0, 1.2, 2000);
        const double k_oracle = std::pow(ce.psi(1.2), 4.0) - std::pow(phi_simpson, 4.0 / 3.0);
        const double k_engine = correction_kernel(ce, 2.0, phi(ce, 1.2));
        return k_oracle < -1.0 && k_engine < -1.0 && close(k_engine, k_oracle, 1e-4);
    });

    criterion(5, "gradient decomposition identity at the exponential profile", [] {
        const auto h3 = builtin_manifold(BuiltinManifold::hyperbolic, 3);
        const auto u = expdecay_profile(2.0);
        const auto dec = gradient_decomposition(u, h3, 2.0);
        const double total = 2.0 * kPi / 3.0;
        if (std::abs(dec.euclidean_term + dec.correction_term - total) > 1e-6 * total)
            return false;
        const double mass = lp_power(u, h3, 2.0).value;
        return std::abs(mass - kPi / 6.0) <= 1e-8 * (kPi / 6.0);
    });

    criterion(6, "flat-space log-Sobolev equality at normalized Gaussians", [] {
        for (double sigma : {0.5, 1.0, 2.0})
            for (int n : {3, 4}) {
                const auto e = builtin_manifold(BuiltinManifold::euclidean, n);
                ExponentParams params;
                params.N = n;
                params.p = 2.0;
                const auto rep = verify(InequalityId::euclidean_log_sobolev,
                                        gauss_profile(1.0 / (4.0 * sigma * sigma)), e, params);
                if (std::abs(rep.deficit) > 1e-6) return false;
            }
        return true;
    });

    criterion(7, "interpolation constant equals the extremal quotient", [] {
        ExponentParams params;
        params.N = 3;
        params.p = 2.0;
        params.alpha = 2.0;
        const auto gn = gn_constant(params, GNBranch::alpha_gt_1);
        if (std::abs(gn.constant - 0.6083) > 1e-4) return false;
        // norms of u = (1+|x|^2)^{-1} on R^3, by quadrature
        auto norm = [&](double q) {
            const double power = detail::unit_sphere_area(3) *
                                 detail::integrate_log_radial([&](double r) {
                                     if (r <= 0.0)
                                         return -std::numeric_limits<double>::infinity();
                                     return -q * std::log1p(r * r) + 2.0 * std::log(r);
                                 });
            return std::pow(power, 1.0 / q);
        };
        const double grad_sq = detail::unit_sphere_area(3) *
                               detail::integrate_log_radial([&](double r) {
                                   if (r <= 0.0)
                                       return -std::numeric_limits<double>::infinity();
                                   return 2.0 * (std::log(2.0) + std::log(r) -
                                                 2.0 * std::log1p(r * r)) +
                                          2.0 * std::log(r);
                               });
        const double lhs = norm(4.0);
        const double rhs = gn.constant * std::pow(grad_sq, 0.25) * std::pow(norm(3.0), 0.5);
        if (std::abs(rhs - lhs) > 1e-6 * lhs) return false;
        const double quotient = lhs / (std::pow(grad_sq, 0.25) * std::pow(norm(3.0), 0.5));
        return std::abs(gn.constant - quotient) <= 1e-6 * quotient;
    });

    criterion(8, "curved-space log-Sobolev deficits are nonnegative on the family", [] {
        int evaluated = 0, skipped = 0;
        for (int n : {3, 4, 5}) {
            const auto h = builtin_manifold(BuiltinManifold::hyperbolic, n);
            ExponentParams params;
            params.N = n;
            params.p = 2.0;
            for (const auto& u :
                 {gauss_profile(0.5), gauss_profile(1.0), gauss_profile(2.0),
                  expdecay_profile(2.0), expdecay_profile(3.0)}) {
                try {
                    const auto rep = verify(InequalityId::log_sobolev_2, u, h, params);
                    if (rep.deficit < -1e-8) return false;
                    ++evaluated;
                } catch (const NotIntegrable&) {
                    // only the borderline-decay pair is inadmissible
                    if (!(n == 5 && u.label == "expdecay:2")) return false;
                    ++skipped;
                }
            }
        }
        return evaluated == 14 && skipped == 1;
    });

    criterion(9, "Gaussian measure: normalization, bound, and both inequalities", [] {
        for (int n = 2; n <= 8; ++n) {
            const auto gm = gaussian_measure(n);
            const double quad = dm_integral(gm, [](double) { return 1.0; });
            if (std::abs(quad - 1.0) > 1e-8) return false;
            if (!(gm.G < gaussian_normalization_upper_bound(n))) return false;
        }
        const double g3 = gaussian_normalization(3);
        const double g3_closed = 2.0 * kPi * std::sqrt(kPi / 2.0) * (std::exp(2.0) - 1.0);
        if (std::abs(g3 - g3_closed) > 1e-3 * g3_closed) return false;
        if (std::abs(g3 - 50.312) > 1e-3 * 50.312) return false;

        const auto h3 = builtin_manifold(BuiltinManifold::hyperbolic, 3);
        ExponentParams params;
        params.N = 3;
        params.p = 2.0;
        for (const auto& u : {gauss_profile(0.5), gauss_profile(1.0), expdecay_profile(2.0),
                              expdecay_profile(3.0), bump_profile(2.0)}) {
            const auto rep = verify(InequalityId::gaussian_log_sobolev, u, h3, params);
            if (rep.deficit < -1e-8) return false;
        }
        for (double p : {1.0, 1.5}) {
            params.p = p;
            const auto rep =
                verify(InequalityId::gaussian_poincare_general, gauss_profile(1.0), h3, params);
            if (rep.deficit < -1e-8) return false;
        }
        params.p = 2.0;
        const auto exact =
            verify(InequalityId::gaussian_poincare_general, gauss_profile(1.0), h3, params);
        return exact.lhs == 0.0 && exact.rhs == 0.0 && exact.deficit == 0.0;
    });

    criterion(10, "heat kernel: mass, heat equation, semigroup composition", [] {
        for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            HeatKernelSpec spec{3, t, 1.0};
            if (std::abs(heat_normalization(spec) - 1.0) > 1e-6) return false;
        }
        HeatKernelSpec spec{3, 1.0, 1.0};
        if (heat_pde_residual(spec, 0.2, 3.0, 12, 0.5, 2.0, 7) > 1e-4) return false;
        for (auto [s, t] : {std::pair{0.5, 0.5}, {0.3, 0.7}, {1.0, 1.0}}) {
            const auto [lhs, rhs] = chapman_kolmogorov_origin(spec, s, t);
            if (std::abs(lhs / rhs - 1.0) > 1e-5) return false;
        }
        return close(heat_kernel(spec, 0.0), std::pow(4.0 * kPi, -1.5) * std::exp(-1.0), 1e-8);
    });

    criterion(11, "kernel-measure interpolation deficits on offset profiles", [] {
        const auto f = offset_profile(expdecay_profile(1.0), 1.0);
        const auto g = offset_profile(gauss_profile(1.0), 1.0);
        for (double alpha : {0.5, 1.0})
            for (auto [q, p] : {std::pair{2.0, 1.0}, {2.0, 1.5}, {3.0, 2.0}}) {
                HeatKernelSpec spec{3, 1.0, alpha};
                if (verify_extended_beckner(f, spec, p, q).deficit < -1e-6) return false;
                if (verify_extended_beckner(g, spec, p, q).deficit < -1e-6) return false;
            }
        HeatKernelSpec spec{3, 1.0, 1.0};
        return verify_extended_beckner(f, spec, 2.0, 2.0).deficit == 0.0;
    });

    criterion(12, "log constant sits below the inverse Sobolev constant", [] {
        for (int n : {3, 4, 5}) {
            const double s = sharp_sobolev_constant(n, 2.0); // bubble-validated inside
            if (!(log_sobolev_constant(n, 2.0) < 1.0 / (s * s))) return false;
        }
        return true;
    });

    criterion(13, "batch runner is byte-deterministic with zero failures", [&] {
        if (cli_bin.empty() || full_config.empty()) return false;
        const fs::path base = fs::temp_directory_path() / "ineqforge_acceptance";
        fs::remove_all(base);
        fs::create_directories(base);
        auto run_once = [&](const std::string& tag) {
            const fs::path out_dir = base / tag;
            const std::string cmd = "INEQ_FORGE_OUTPUT=" + out_dir.string() + " " + cli_bin +
                                    " run --config " + full_config + " > " +
                                    (base / (tag + ".log")).string() + " 2>&1";
            return std::system(cmd.c_str());
        };
        if (run_once("a") != 0 || run_once("b") != 0) return false;
        const std::string ra = slurp(base / "a" / "reports.json");
        const std::string rb = slurp(base / "b" / "reports.json");
        if (ra.empty() || ra != rb) return false;
        const auto summary = nlohmann::json::parse(slurp(base / "a" / "summary.json"));
        const bool ok = summary.at("failed").get<int>() == 0 &&
                        summary.at("passed").get<int>() > 0;
        fs::remove_all(base);
        return ok;
    });

    if (g_failures == 0) std::printf("all criteria passed\n");
    return g_failures;
}
