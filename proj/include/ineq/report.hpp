#pragma once

// Inequality identifiers and the uniform report record. Every inequality is
// normalized to "lhs <= rhs" orientation before evaluation and the deficit
// rhs - lhs is reported without clamping.

#include <optional>
#include <string>

#include "ineq/constants.hpp"
#include "ineq/errors.hpp"

namespace ineq {

enum class InequalityId {
    poincare,
    poincare_sobolev_lambda,
    poincare_sobolev_sharp,
    hebey_sobolev,
    gn_poincare,
    log_sobolev,
    log_sobolev_2,
    euclidean_log_sobolev,
    holder_entropy,
    gaussian_log_sobolev,
    gaussian_poincare_general,
    gaussian_poincare,
    beckner_family,
    beckner_lambda,
    model_log_sobolev_2,
    model_log_sobolev_p,
    extended_beckner,    // heat-semigroup measure
    gamma_log_sobolev,   // heat-semigroup measure
};

inline const char* to_string(InequalityId id) {
    switch (id) {
        case InequalityId::poincare: return "poincare";
        case InequalityId::poincare_sobolev_lambda: return "poincare_sobolev_lambda";
        case InequalityId::poincare_sobolev_sharp: return "poincare_sobolev_sharp";
        case InequalityId::hebey_sobolev: return "hebey_sobolev";
        case InequalityId::gn_poincare: return "gn_poincare";
        case InequalityId::log_sobolev: return "log_sobolev";
        case InequalityId::log_sobolev_2: return "log_sobolev_2";
        case InequalityId::euclidean_log_sobolev: return "euclidean_log_sobolev";
        case InequalityId::holder_entropy: return "holder_entropy";
        case InequalityId::gaussian_log_sobolev: return "gaussian_log_sobolev";
        case InequalityId::gaussian_poincare_general: return "gaussian_poincare_general";
        case InequalityId::gaussian_poincare: return "gaussian_poincare";
        case InequalityId::beckner_family: return "beckner_family";
        case InequalityId::beckner_lambda: return "beckner_lambda";
        case InequalityId::model_log_sobolev_2: return "model_log_sobolev_2";
        case InequalityId::model_log_sobolev_p: return "model_log_sobolev_p";
        case InequalityId::extended_beckner: return "extended_beckner";
        case InequalityId::gamma_log_sobolev: return "gamma_log_sobolev";
    }
    return "?";
}

inline InequalityId parse_inequality_id(const std::string& name) {
    for (int i = 0; i <= int(InequalityId::gamma_log_sobolev); ++i) {
        const auto id = InequalityId(i);
        if (name == to_string(id)) return id;
    }
    throw ParseError("unknown inequality id: " + name);
}

struct InequalityReport {
    InequalityId id = InequalityId::poincare;
    ExponentParams params;
    std::string manifold_label;
    std::string profile_label;
    double lhs = 0.0;
    double rhs = 0.0;
    double deficit = 0.0; // rhs - lhs, exactly
    double quad_error = 0.0;
    bool normalized = false; // whether internal ||u||_p = 1 scaling was applied

    void finish() { deficit = rhs - lhs; }
};

// Pass gate used by suites and the CLI exit code.
inline bool report_passes(const InequalityReport& r, double tol = 1e-8) {
    return r.deficit >= -std::max(tol, 10.0 * r.quad_error);
}

} // namespace ineq
