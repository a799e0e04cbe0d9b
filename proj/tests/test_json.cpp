#include "benford/json_io.hpp"

#include <catch_amalgamated.hpp>

using namespace benford;

namespace {

template <class T, class F>
T through_text(const T& value, F&& decode) {
    return decode(Json::parse(to_json(value).dump()));
}

} // namespace

TEST_CASE("distribution specs round-trip through JSON text", "[json]") {
    const std::vector<DistributionSpec> specs = {
        normal(0.1, 0.30000000000000004), uniform_sym(0.8), uniform_zero(1.3), triangular(0.6), fejer_dual(1.0),
        gamma_dist(2.5, 0.4), bilateral_exp(-0.2, 0.5), cauchy(1e-300, 1e300), rect(), tri(),
        affine(convolve(rect(), affine(tri(), 2.0, -1.0)), 0.1, 1.0 / 3.0),
        seed_derived(builtin_seed("laplace", 0.25, 0.75))};
    for (const auto& d : specs) {
        const auto back = through_text(d, spec_from_json);
        INFO(to_json(d).dump());
        CHECK(back == d);
        CHECK(to_json(back) == to_json(d));
    }
}

TEST_CASE("spec JSON layout", "[json]") {
    const auto j = to_json(affine(normal(0.0, 1.0), 2.0, 3.0));
    CHECK(j.at("family") == "affine");
    CHECK(j.at("params").at("c") == 2.0);
    CHECK(j.at("inner").at("family") == "normal");
    const auto s = to_json(seed_derived(gauss_seed(0.5, 0.2)));
    CHECK(s.at("family") == "seed");
    CHECK(s.at("params").at("seed") == "gauss");
}

TEST_CASE("malformed specs are rejected", "[json]") {
    for (const char* text : {R"([1, 2])", R"({"params": {}})", R"({"family": "normal", "params": {"m": 0}})",
                             R"({"family": "normal", "params": {"m": 0, "s": "wide"}})",
                             R"({"family": "normal", "params": {"m": 0, "s": -1}})",
                             R"({"family": "weibull", "params": {}})", R"({"family": "affine", "params": {"c": 1, "d": 0}})",
                             R"({"family": "seed", "params": {"mu": 0, "sigma": 1}})",
                             R"({"family": "seed", "params": {"seed": "logistic", "mu": 0, "sigma": 1}})",
                             R"({"family": "rect", "params": 5})"}) {
        INFO(text);
        CHECK_THROWS_AS(spec_from_json(Json::parse(text)), InvalidArgument);
    }
    SeedFunction custom;
    custom.H = [](double) { return 0.5; };
    CHECK_THROWS_AS(to_json(seed_derived(custom)), InvalidArgument);
}

TEST_CASE("coefficient sets round-trip, including an infinite tail bound", "[json]") {
    const auto cs = coefficients(cauchy(0.3, 0.2), 12);
    CHECK(through_text(cs, coefficients_from_json) == cs);
    const auto rough = coefficients(rect(), 5);
    REQUIRE(std::isinf(rough.tail_bound));
    const auto j = to_json(rough);
    CHECK(j.at("tail_bound").is_null());
    CHECK(through_text(rough, coefficients_from_json) == rough);
    const auto bare = coefficients_from_values({1.0, {0.1, -0.2}}, 0.5);
    CHECK(through_text(bare, coefficients_from_json) == bare);

    auto broken = to_json(cs);
    broken["n_max"] = 3;
    CHECK_THROWS_AS(coefficients_from_json(broken), InvalidArgument);
}

TEST_CASE("Benford reports round-trip", "[json]") {
    auto r = is_benford(normal(0.2, 0.3), 1e-9, 16, 256);
    r.base = Base(10);
    CHECK(through_text(r, benford_report_from_json) == r);
    const auto w = is_benford(fejer_dual(1.0), 1e-9, 8, 128);
    CHECK(through_text(w, benford_report_from_json) == w);
    const auto j = to_json(r);
    CHECK(j.at("amplitude_phase").at("amplitude").size() == 16);
    CHECK(j.at("verdict") == false);
}

TEST_CASE("spectrum reports round-trip and render as CSV", "[json]") {
    const auto s = spectrum_scan(fejer_dual(1.0), Base(7), geometric_grid(1.5, 9.0, 10));
    CHECK(through_text(s, spectrum_report_from_json) == s);
    const auto csv = spectrum_csv(s);
    CHECK(csv.rfind("c,deviation,member\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);
    CHECK(csv.find("9,") != std::string::npos);
    CHECK(csv.find(",false\n") != std::string::npos);
}

TEST_CASE("digit reports round-trip and render as CSV", "[json]") {
    const auto rep = first_digit_table({1.5, 2.5, 19.0, 310.0, 0.0042, 7.0, 1.1}, Base(10));
    CHECK(through_text(rep, digit_report_from_json) == rep);
    const auto csv = digits_csv(rep);
    CHECK(csv.rfind("digit,count,observed,expected\n1,3,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);
}

TEST_CASE("density grid CSV", "[json]") {
    const auto csv = density_grid_csv(coefficients(fejer_dual(1.0), 4), 4);
    CHECK(csv == "u,pdf\n0,1\n0.25,1\n0.5,1\n0.75,1\n");
}

TEST_CASE("uniformity and seed validation serialise", "[json]") {
    const auto u = to_json(frac_uniformity({1.0, 2.0, 3.0, 4.0, 5.0, 6.0}, Base(10), 4));
    CHECK(u.at("dof") == 3);
    CHECK(u.contains("pass"));
    SeedFunction half;
    half.H = [](double y) { return y > 0 ? 0.5 : 0.0; };
    const auto v = to_json(validate_seed(half));
    CHECK(v.at("valid") == false);
    CHECK(v.at("violations").at(0).at("condition") == "lim H(y) = 1 as y -> +inf");
}
