#pragma once

// JSON and CSV encodings of specs and reports.

#include "benford/benford.hpp"
#include "benford/distributions.hpp"
#include "benford/sampling.hpp"
#include "benford/seeds.hpp"
#include "benford/wrapped.hpp"

#include <json.hpp>

#include <cstdio>
#include <limits>
#include <sstream>
#include <string>

namespace benford {

using Json = nlohmann::json;

namespace detail {

// JSON has no infinity; null stands for +inf
inline Json real_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }
inline double real_from(const Json& j) {
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

inline double param(const Json& params, const char* key) {
    if (!params.contains(key)) throw InvalidArgument(std::string("spec is missing parameter '") + key + "'");
    const auto& v = params.at(key);
    if (!v.is_number()) throw InvalidArgument(std::string("spec parameter '") + key + "' must be a number");
    return v.get<double>();
}

inline std::string fmt_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

// ---------------------------------------------------------------------------
// distribution specs

inline Json to_json(const DistributionSpec& d) {
    struct Encoder {
        Json operator()(const dist::Normal& n) const { return {{"m", n.m}, {"s", n.s}}; }
        Json operator()(const dist::UniformSym& n) const { return {{"a", n.a}}; }
        Json operator()(const dist::UniformZero& n) const { return {{"a", n.a}}; }
        Json operator()(const dist::Triangular& n) const { return {{"a", n.a}}; }
        Json operator()(const dist::FejerDual& n) const { return {{"a", n.a}}; }
        Json operator()(const dist::Gamma& n) const { return {{"alpha", n.alpha}, {"beta", n.beta}}; }
        Json operator()(const dist::BilateralExp& n) const { return {{"m", n.m}, {"s", n.s}}; }
        Json operator()(const dist::Cauchy& n) const { return {{"m", n.m}, {"s", n.s}}; }
        Json operator()(const dist::Rect&) const { return Json::object(); }
        Json operator()(const dist::Tri&) const { return Json::object(); }
        Json operator()(const dist::Affine& n) const { return {{"c", n.c}, {"d", n.d}}; }
        Json operator()(const dist::Convolution&) const { return Json::object(); }
        Json operator()(const dist::SeedDerived& n) const {
            if (n.seed.name == "custom") throw InvalidArgument("custom seed functions cannot be serialized");
            return {{"seed", n.seed.name}, {"mu", n.seed.mu}, {"sigma", n.seed.sigma}};
        }
    };
    Json j;
    j["family"] = family_name(d);
    j["params"] = std::visit(Encoder{}, d.node().kind);
    if (const auto* a = std::get_if<dist::Affine>(&d.node().kind)) j["inner"] = to_json(a->inner);
    if (const auto* c = std::get_if<dist::Convolution>(&d.node().kind)) {
        j["left"] = to_json(c->left);
        j["right"] = to_json(c->right);
    }
    return j;
}

inline DistributionSpec spec_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("family") || !j.at("family").is_string()) {
        throw InvalidArgument("spec must be an object with a string 'family'");
    }
    const auto family = j.at("family").get<std::string>();
    const Json params = j.contains("params") ? j.at("params") : Json::object();
    if (!params.is_object()) throw InvalidArgument("spec 'params' must be an object");
    using detail::param;
    auto child = [&](const char* key) {
        if (!j.contains(key)) throw InvalidArgument("spec '" + family + "' needs '" + key + "'");
        return spec_from_json(j.at(key));
    };
    if (family == "normal") return normal(param(params, "m"), param(params, "s"));
    if (family == "uniform_sym") return uniform_sym(param(params, "a"));
    if (family == "uniform_zero") return uniform_zero(param(params, "a"));
    if (family == "triangular") return triangular(param(params, "a"));
    if (family == "fejer_dual") return fejer_dual(param(params, "a"));
    if (family == "gamma") return gamma_dist(param(params, "alpha"), param(params, "beta"));
    if (family == "bilateral_exp") return bilateral_exp(param(params, "m"), param(params, "s"));
    if (family == "cauchy") return cauchy(param(params, "m"), param(params, "s"));
    if (family == "rect") return rect();
    if (family == "tri") return tri();
    if (family == "affine") return affine(child("inner"), param(params, "c"), param(params, "d"));
    if (family == "convolution") return convolve(child("left"), child("right"));
    if (family == "seed") {
        if (!params.contains("seed") || !params.at("seed").is_string()) {
            throw InvalidArgument("seed spec needs a string 'seed' parameter");
        }
        return seed_derived(
            builtin_seed(params.at("seed").get<std::string>(), param(params, "mu"), param(params, "sigma")));
    }
    throw InvalidArgument("unknown distribution family '" + family + "'");
}

// ---------------------------------------------------------------------------
// coefficients and reports

inline Json to_json(const CoefficientSet& cs) {
    Json values = Json::array();
    for (const auto& c : cs.coeffs) values.push_back(Json::array({c.real(), c.imag()}));
    Json j{{"n_max", cs.n_max}, {"values", values}, {"tail_bound", detail::real_or_null(cs.tail_bound)}};
    j["source"] = cs.source ? to_json(*cs.source) : Json(nullptr);
    return j;
}

inline CoefficientSet coefficients_from_json(const Json& j) {
    CoefficientSet cs;
    cs.n_max = j.at("n_max").get<int>();
    for (const auto& v : j.at("values")) cs.coeffs.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    if (static_cast<int>(cs.coeffs.size()) != cs.n_max + 1) {
        throw InvalidArgument("coefficient array length does not match n_max");
    }
    cs.tail_bound = detail::real_from(j.at("tail_bound"));
    if (j.contains("source") && !j.at("source").is_null()) cs.source = spec_from_json(j.at("source"));
    return cs;
}

inline Json to_json(const AmplitudePhase& ap) {
    return {{"amplitude", ap.amplitude}, {"phase", ap.phase}, {"a", ap.a}, {"b", ap.b}};
}

inline Json to_json(const BenfordReport& r) {
    Json j;
    j["base"] = r.base ? Json(r.base->value()) : Json(nullptr);
    j["epsilon"] = r.epsilon;
    j["verdict"] = r.verdict;
    j["max_coefficient"] = r.max_coefficient;
    j["sup_deviation"] = r.sup_dev;
    j["bound"] = detail::real_or_null(r.bound);
    j["coefficients"] = to_json(r.coefficients);
    j["amplitude_phase"] = to_json(amplitude_phase(r.coefficients));
    return j;
}

inline BenfordReport benford_report_from_json(const Json& j) {
    BenfordReport r;
    if (!j.at("base").is_null()) r.base = Base(j.at("base").get<double>());
    r.epsilon = j.at("epsilon").get<double>();
    r.verdict = j.at("verdict").get<bool>();
    r.max_coefficient = j.at("max_coefficient").get<double>();
    r.sup_dev = j.at("sup_deviation").get<double>();
    r.bound = detail::real_from(j.at("bound"));
    r.coefficients = coefficients_from_json(j.at("coefficients"));
    return r;
}

inline Json to_json(const SpectrumReport& s) {
    Json pts = Json::array();
    for (const auto& p : s.points) {
        pts.push_back({{"c", p.c}, {"rho", p.rho}, {"deviation", p.deviation}, {"member", p.member}});
    }
    return {{"epsilon", s.epsilon}, {"n_max", s.n_max}, {"points", pts}};
}

inline SpectrumReport spectrum_report_from_json(const Json& j) {
    SpectrumReport s;
    s.epsilon = j.at("epsilon").get<double>();
    s.n_max = j.at("n_max").get<int>();
    for (const auto& p : j.at("points")) {
        s.points.push_back({p.at("c").get<double>(), p.at("rho").get<double>(), p.at("deviation").get<double>(),
                            p.at("member").get<bool>()});
    }
    return s;
}

inline std::string spectrum_csv(const SpectrumReport& s) {
    std::ostringstream out;
    out << "c,deviation,member\n";
    for (const auto& p : s.points) {
        out << detail::fmt_real(p.c) << ',' << detail::fmt_real(p.deviation) << ',' << (p.member ? "true" : "false")
            << '\n';
    }
    return out.str();
}

inline Json to_json(const DigitLawReport& r) {
    return {{"base", r.base},         {"n", r.n},
            {"excluded", r.excluded}, {"counts", r.counts},
            {"observed", r.observed}, {"expected", r.expected},
            {"chi_square", r.chi_square}, {"dof", r.dof},
            {"critical_999", detail::real_or_null(r.critical_999)}, {"pass", r.pass}};
}

inline DigitLawReport digit_report_from_json(const Json& j) {
    DigitLawReport r;
    r.base = j.at("base").get<int>();
    r.n = j.at("n").get<std::size_t>();
    r.excluded = j.at("excluded").get<std::size_t>();
    r.counts = j.at("counts").get<std::vector<std::size_t>>();
    r.observed = j.at("observed").get<std::vector<double>>();
    r.expected = j.at("expected").get<std::vector<double>>();
    r.chi_square = j.at("chi_square").get<double>();
    r.dof = j.at("dof").get<int>();
    r.critical_999 = detail::real_from(j.at("critical_999"));
    r.pass = j.at("pass").get<bool>();
    return r;
}

inline std::string digits_csv(const DigitLawReport& r) {
    std::ostringstream out;
    out << "digit,count,observed,expected\n";
    for (std::size_t i = 0; i < r.counts.size(); ++i) {
        out << i + 1 << ',' << r.counts[i] << ',' << detail::fmt_real(r.observed[i]) << ','
            << detail::fmt_real(r.expected[i]) << '\n';
    }
    return out.str();
}

inline Json to_json(const UniformityReport& r) {
    return {{"statistic", r.statistic}, {"dof", r.dof}, {"critical_999", r.critical_999},
            {"n", r.n},                 {"excluded", r.excluded}, {"pass", r.pass}};
}

inline Json to_json(const SeedValidation& v) {
    Json viol = Json::array();
    for (const auto& x : v.violations) viol.push_back({{"y", x.y}, {"value", x.value}, {"condition", x.condition}});
    return {{"valid", v.valid}, {"lower_limit", v.lower_limit}, {"upper_limit", v.upper_limit}, {"violations", viol}};
}

/// "u,pdf" grid of the truncated series at u = j / points.
inline std::string density_grid_csv(const CoefficientSet& cs, int points) {
    std::ostringstream out;
    out << "u,pdf\n";
    for (int j = 0; j < points; ++j) {
        const double u = static_cast<double>(j) / points;
        out << detail::fmt_real(u) << ',' << detail::fmt_real(wrapped_pdf_series(cs, u)) << '\n';
    }
    return out.str();
}

} // namespace benford
