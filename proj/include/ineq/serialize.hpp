#pragma once

// JSON and CSV serialization of reports and condition audits. Field order is
// fixed so that identical runs produce byte-identical files.

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "ineq/manifold.hpp"
#include "ineq/report.hpp"
#include "ineq/verify.hpp"

namespace ineq {

using ordered_json = nlohmann::ordered_json;

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline ordered_json report_to_json(const InequalityReport& r) {
    ordered_json j;
    j["id"] = to_string(r.id);
    j["manifold"] = r.manifold_label;
    j["N"] = r.params.N;
    j["p"] = r.params.p;
    if (r.params.alpha) j["alpha"] = *r.params.alpha;
    if (r.params.q) j["q"] = *r.params.q;
    if (r.params.s) j["s"] = *r.params.s;
    if (r.params.lambda) j["lambda"] = *r.params.lambda;
    j["profile"] = r.profile_label;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["deficit"] = r.deficit;
    j["quad_error"] = r.quad_error;
    j["normalized"] = r.normalized;
    return j;
}

inline const char* kReportCsvHeader =
    "id,manifold,N,p,alpha,q,s,lambda,profile,lhs,rhs,deficit,quad_error,normalized";

inline std::string report_to_csv_row(const InequalityReport& r) {
    auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : ""; };
    std::string row;
    row += to_string(r.id);
    row += ',';
    row += r.manifold_label;
    row += ',' + std::to_string(r.params.N);
    row += ',' + format_double(r.params.p);
    row += ',' + opt(r.params.alpha);
    row += ',' + opt(r.params.q);
    row += ',' + opt(r.params.s);
    row += ',' + opt(r.params.lambda);
    row += ',' + r.profile_label;
    row += ',' + format_double(r.lhs);
    row += ',' + format_double(r.rhs);
    row += ',' + format_double(r.deficit);
    row += ',' + format_double(r.quad_error);
    row += ',';
    row += r.normalized ? "true" : "false";
    return row;
}

inline ordered_json condition_to_json(const ConditionReport& c) {
    ordered_json j;
    j["id"] = to_string(c.condition_id);
    j["passed"] = c.passed;
    j["scan"] = {c.scan_min, c.scan_max};
    if (c.witness) {
        j["witness_t"] = c.witness->first;
        j["witness_value"] = c.witness->second;
    }
    if (c.c1_value) j["c1"] = *c.c1_value;
    return j;
}

inline ordered_json skip_to_json(const SuiteSkip& s) {
    ordered_json j;
    j["id"] = to_string(s.id);
    j["profile"] = s.profile_label;
    j["N"] = s.params.N;
    j["p"] = s.params.p;
    j["reason"] = s.reason;
    return j;
}

} // namespace ineq
