#include "benford/quadrature.hpp"
#include "oracle.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace benford;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("polynomials up to degree 31 are exact on one segment", "[quadrature]") {
    for (int k = 0; k <= 31; ++k) {
        auto f = [k](double x) { return std::pow(x, k); };
        const double exact = (std::pow(2.0, k + 1) - std::pow(-1.0, k + 1)) / (k + 1);
        const auto r = quad::integrate(f, -1.0, 2.0);
        CHECK_THAT(r.value, WithinRel(exact, 1e-13));
    }
}

TEST_CASE("adaptive refinement handles a peaked integrand", "[quadrature]") {
    auto f = [](double x) { return 1e-3 / (1e-6 + (x - 0.3) * (x - 0.3)); };
    const double exact = std::atan(0.7 / 1e-3) + std::atan(0.3 / 1e-3);
    const auto r = quad::integrate(f, 0.0, 1.0);
    CHECK(r.converged);
    CHECK_THAT(r.value, WithinRel(exact, 1e-11));
}

TEST_CASE("integrable endpoint singularity converges", "[quadrature]") {
    auto f = [](double x) { return 1.0 / std::sqrt(x); };
    const auto r = quad::integrate(f, 0.0, 4.0, 1e-10, 1e-10);
    CHECK_THAT(r.value, WithinAbs(4.0, 1e-8));
}

TEST_CASE("reversed limits flip the sign", "[quadrature]") {
    auto f = [](double x) { return std::exp(x); };
    CHECK_THAT(quad::integrate(f, 1.0, 0.0).value, WithinRel(-(std::exp(1.0) - 1.0), 1e-14));
    CHECK(quad::integrate(f, 2.0, 2.0).value == 0.0);
}

TEST_CASE("semi-infinite maps", "[quadrature]") {
    auto gauss = [](double x) { return std::exp(-x * x); };
    CHECK_THAT(quad::integrate_to_inf(gauss, 0.0).value, WithinRel(std::sqrt(oracle::pi) / 2.0, 1e-12));
    CHECK_THAT(quad::integrate_from_neg_inf(gauss, 0.0).value, WithinRel(std::sqrt(oracle::pi) / 2.0, 1e-12));
    auto lorentz = [](double x) { return 1.0 / (1.0 + x * x); };
    CHECK_THAT(quad::integrate_to_inf(lorentz, 1.0).value, WithinRel(oracle::pi / 4.0, 1e-11));
}

TEST_CASE("breakpoints around kinks", "[quadrature]") {
    auto f = [](double x) { return std::abs(x - 0.3) + std::abs(x + 0.4); };
    const double exact = oracle::integrate_pieces<double>(f, {-1.0, -0.4, 0.3, 1.0}, 0.1);
    const auto r = quad::integrate_pieces(f, {-1.0, -0.4, 0.3, 1.0});
    CHECK_THAT(r.value, WithinRel(exact, 1e-14));
}

TEST_CASE("segment budget exhaustion is reported", "[quadrature]") {
    auto f = [](double x) { return std::sin(1.0 / x); };
    const auto r = quad::integrate(f, 1e-12, 1.0, 1e-15, 1e-15, 50);
    CHECK_FALSE(r.converged);
}

TEST_CASE("oracle rule integrates its own degree exactly", "[quadrature][oracle]") {
    const auto& r = oracle::rule20();
    double wsum = 0.0;
    for (double w : r.w) wsum += w;
    CHECK_THAT(wsum, WithinAbs(2.0, 1e-14));
    const double v = oracle::integrate<double>([](double x) { return std::pow(x, 38); }, -1.0, 1.0, 1);
    CHECK_THAT(v, WithinRel(2.0 / 39.0, 1e-13));
}
