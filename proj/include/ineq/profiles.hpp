#pragma once

// Radial test-function profiles u(rho) with value, derivative and decay
// metadata. Shipped families, selectable through the CLI mini-grammar:
//   gauss:a      e^{-a rho^2}
//   expdecay:a   e^{-a rho}
//   bump:R       (1 - (rho/R)^2)_+^2
//   powexp:k,a   rho^k e^{-a rho}
//   table:path   monotone cubic interpolation of two-column CSV `rho,value`

#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "ineq/errors.hpp"

namespace ineq {

enum class DecayKind { gaussian, exponential, compact };

struct DecayInfo {
    DecayKind kind = DecayKind::exponential;
    double rate = 1.0; // a for gaussian/exponential, support radius for compact
};

struct RadialProfile {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    DecayInfo decay;
    std::string label;
};

namespace detail {

// Spot check: nonnegative and finite on samples, and the tail is at most a
// slowly-varying multiple of the declared envelope.
inline void validate_profile(const RadialProfile& p, double tail_cut = 30.0) {
    for (double rho : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        const double v = p.value(rho);
        if (!std::isfinite(v)) throw NonFinite("profile " + p.label + " not finite");
        if (v < 0.0) throw RangeError("profile " + p.label + " negative at rho=" + std::to_string(rho));
    }
    if (p.decay.kind == DecayKind::compact) {
        const double v = p.value(p.decay.rate * 1.01 + 0.1);
        if (v != 0.0) throw RangeError("profile " + p.label + " not compactly supported");
        return;
    }
    for (double rho : {tail_cut + 1.0, tail_cut + 4.0, tail_cut + 16.0}) {
        double env;
        if (p.decay.kind == DecayKind::gaussian)
            env = std::exp(-p.decay.rate * rho * rho);
        else
            env = std::exp(-p.decay.rate * rho);
        // generous polynomial slack; only gross misdeclaration is rejected
        if (p.value(rho) > 1e12 * std::max(env, 1e-300) + 1e-280)
            throw RangeError("profile " + p.label + " decays slower than declared");
    }
}

} // namespace detail

inline RadialProfile gauss_profile(double a) {
    if (!(a > 0.0)) throw RangeError("gauss profile needs a > 0");
    RadialProfile p;
    p.value = [a](double r) { return std::exp(-a * r * r); };
    p.derivative = [a](double r) { return -2.0 * a * r * std::exp(-a * r * r); };
    p.decay = {DecayKind::gaussian, a};
    std::ostringstream label;
    label << "gauss:" << a;
    p.label = label.str();
    return p;
}

inline RadialProfile expdecay_profile(double a) {
    if (!(a > 0.0)) throw RangeError("expdecay profile needs a > 0");
    RadialProfile p;
    p.value = [a](double r) { return std::exp(-a * r); };
    p.derivative = [a](double r) { return -a * std::exp(-a * r); };
    p.decay = {DecayKind::exponential, a};
    std::ostringstream label;
    label << "expdecay:" << a;
    p.label = label.str();
    return p;
}

inline RadialProfile bump_profile(double radius) {
    if (!(radius > 0.0)) throw RangeError("bump profile needs R > 0");
    RadialProfile p;
    p.value = [radius](double r) {
        const double w = 1.0 - (r / radius) * (r / radius);
        return w > 0.0 ? w * w : 0.0;
    };
    p.derivative = [radius](double r) {
        const double w = 1.0 - (r / radius) * (r / radius);
        return w > 0.0 ? -4.0 * r / (radius * radius) * w : 0.0;
    };
    p.decay = {DecayKind::compact, radius};
    std::ostringstream label;
    label << "bump:" << radius;
    p.label = label.str();
    return p;
}

inline RadialProfile powexp_profile(double k, double a) {
    if (!(a > 0.0) || !(k >= 0.0)) throw RangeError("powexp profile needs k >= 0, a > 0");
    RadialProfile p;
    p.value = [k, a](double r) { return std::pow(r, k) * std::exp(-a * r); };
    p.derivative = [k, a](double r) {
        if (r == 0.0) return k == 1.0 ? 1.0 : 0.0;
        return (k * std::pow(r, k - 1.0) - a * std::pow(r, k)) * std::exp(-a * r);
    };
    p.decay = {DecayKind::exponential, a};
    std::ostringstream label;
    label << "powexp:" << k << "," << a;
    p.label = label.str();
    return p;
}

// c * u and c + u. The offset variant is only meaningful against probability
// measures; its decay metadata reports rate 0 so volume-weighted norms refuse it.
inline RadialProfile scale_profile(const RadialProfile& base, double c) {
    if (!(c > 0.0)) throw RangeError("scale factor must be positive");
    RadialProfile p = base;
    auto v = base.value, d = base.derivative;
    p.value = [v, c](double r) { return c * v(r); };
    p.derivative = [d, c](double r) { return c * d(r); };
    p.label = std::to_string(c) + "*" + base.label;
    return p;
}

inline RadialProfile offset_profile(const RadialProfile& base, double c) {
    if (!(c >= 0.0)) throw RangeError("offset must be nonnegative");
    RadialProfile p = base;
    auto v = base.value;
    p.value = [v, c](double r) { return c + v(r); };
    p.decay = {DecayKind::exponential, 0.0};
    p.label = std::to_string(c) + "+" + base.label;
    return p;
}

// ---------------------------------------------------------------------------
// Tabulated profiles: Fritsch-Carlson monotone cubic interpolation.

namespace detail {

struct Pchip {
    std::vector<double> x, y, d; // nodes, values, derivatives

    void build() {
        const size_t n = x.size();
        d.assign(n, 0.0);
        if (n < 2) return;
        std::vector<double> h(n - 1), delta(n - 1);
        for (size_t i = 0; i + 1 < n; ++i) {
            h[i] = x[i + 1] - x[i];
            delta[i] = (y[i + 1] - y[i]) / h[i];
        }
        for (size_t i = 1; i + 1 < n; ++i) {
            if (delta[i - 1] * delta[i] <= 0.0) {
                d[i] = 0.0;
            } else {
                const double w1 = 2.0 * h[i] + h[i - 1];
                const double w2 = h[i] + 2.0 * h[i - 1];
                d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        auto end_slope = [](double h0, double h1, double d0, double d1) {
            double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
            if (s * d0 <= 0.0) s = 0.0;
            else if (d0 * d1 <= 0.0 && std::abs(s) > 3.0 * std::abs(d0)) s = 3.0 * d0;
            return s;
        };
        if (n == 2) {
            d[0] = d[1] = delta[0];
        } else {
            d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
            d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
        }
    }

    double eval(double t, bool want_derivative) const {
        if (t <= x.front()) {
            return want_derivative ? 0.0 : y.front();
        }
        if (t >= x.back()) return 0.0; // zero extension past the table
        size_t lo = 0, hi = x.size() - 1;
        while (hi - lo > 1) {
            const size_t mid = (lo + hi) / 2;
            (x[mid] <= t ? lo : hi) = mid;
        }
        const double h = x[lo + 1] - x[lo];
        const double s = (t - x[lo]) / h;
        const double s2 = s * s, s3 = s2 * s;
        const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0, h10 = s3 - 2.0 * s2 + s;
        const double h01 = -2.0 * s3 + 3.0 * s2, h11 = s3 - s2;
        if (!want_derivative)
            return h00 * y[lo] + h * h10 * d[lo] + h01 * y[lo + 1] + h * h11 * d[lo + 1];
        const double g00 = (6.0 * s2 - 6.0 * s) / h, g10 = 3.0 * s2 - 4.0 * s + 1.0;
        const double g01 = (-6.0 * s2 + 6.0 * s) / h, g11 = 3.0 * s2 - 2.0 * s;
        return g00 * y[lo] + g10 * d[lo] + g01 * y[lo + 1] + g11 * d[lo + 1];
    }
};

} // namespace detail

inline RadialProfile table_profile_from_samples(std::vector<double> rho,
                                                std::vector<double> value,
                                                const std::string& label) {
    if (rho.size() != value.size() || rho.size() < 2)
        throw ParseError("table profile needs at least two (rho,value) rows");
    if (rho.front() != 0.0) throw ParseError("table profile must start at rho = 0");
    for (size_t i = 0; i + 1 < rho.size(); ++i)
        if (!(rho[i] < rho[i + 1])) throw ParseError("table rho column must be strictly increasing");
    for (double v : value)
        if (!(v >= 0.0) || !std::isfinite(v)) throw ParseError("table values must be finite and >= 0");
    auto interp = std::make_shared<detail::Pchip>();
    interp->x = std::move(rho);
    interp->y = std::move(value);
    interp->build();
    RadialProfile p;
    p.value = [interp](double r) { return std::max(0.0, interp->eval(r, false)); };
    p.derivative = [interp](double r) { return interp->eval(r, true); };
    p.decay = {DecayKind::compact, interp->x.back()};
    p.label = label;
    return p;
}

inline RadialProfile table_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open table profile: " + path);
    std::vector<double> rho, val;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("rho", 0) == 0) continue; // header
        std::istringstream row(line);
        std::string a, b;
        if (!std::getline(row, a, ',') || !std::getline(row, b))
            throw ParseError("bad table row '" + line + "' in " + path);
        rho.push_back(std::stod(a));
        val.push_back(std::stod(b));
    }
    return table_profile_from_samples(std::move(rho), std::move(val), "table:" + path);
}

inline RadialProfile parse_profile(const std::string& spec) {
    auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto parse_doubles = [&](size_t want) {
        std::vector<double> out;
        std::istringstream in(args);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            try {
                out.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw ParseError("bad number '" + tok + "' in profile spec: " + spec);
            }
        }
        if (out.size() != want)
            throw ParseError("profile spec " + spec + " expects " + std::to_string(want) +
                             " parameter(s)");
        return out;
    };
    RadialProfile p;
    if (head == "gauss") p = gauss_profile(parse_doubles(1)[0]);
    else if (head == "expdecay") p = expdecay_profile(parse_doubles(1)[0]);
    else if (head == "bump") p = bump_profile(parse_doubles(1)[0]);
    else if (head == "powexp") { auto v = parse_doubles(2); p = powexp_profile(v[0], v[1]); }
    else if (head == "table") p = table_profile(args);
    else throw ParseError("unknown profile spec: " + spec);
    detail::validate_profile(p);
    return p;
}

} // namespace ineq
