#include "benford/distributions.hpp"
#include "catalog_oracle.hpp"
#include "oracle.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace benford;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using oracle::cplx;
using oracle::catalog_sample;
using oracle::sinc;
using oracle::transform_oracle;

namespace {

bool close(ComplexValue a, ComplexValue b, double tol) { return std::abs(a - b) <= tol; }

} // namespace

TEST_CASE("pdf worked examples", "[distributions]") {
    CHECK_THAT(pdf_eval(tri(), 0.5), WithinAbs(0.5, 1e-15));
    CHECK_THAT(pdf_eval(fejer_dual(1.0), 0.0), WithinAbs(1.0, 1e-15));
    CHECK_THAT(pdf_eval(bilateral_exp(0.0, 1.0), 0.0), WithinAbs(0.5, 1e-15));
    CHECK_THAT(pdf_eval(normal(0.0, 1.0), 0.0), WithinRel(1.0 / std::sqrt(2.0 * oracle::pi), 1e-15));
    CHECK_THAT(pdf_eval(cauchy(0.0, 2.0), 0.0), WithinRel(1.0 / (2.0 * oracle::pi), 1e-15));
    CHECK_THAT(pdf_eval(fejer_dual(1.0), 0.37),
               WithinRel((1 - std::cos(2 * oracle::pi * 0.37)) / (2 * oracle::pi * oracle::pi * 0.37 * 0.37), 1e-13));
}

TEST_CASE("rect and uniform take half value at jumps", "[distributions]") {
    CHECK(pdf_eval(rect(), 0.5) == 0.5);
    CHECK(pdf_eval(rect(), -0.5) == 0.5);
    CHECK(pdf_eval(rect(), 0.0) == 1.0);
    CHECK(pdf_eval(rect(), 0.75) == 0.0);
    CHECK(pdf_eval(uniform_sym(2.0), 2.0) == 0.125);
    CHECK(pdf_eval(uniform_zero(2.0), 0.0) == 0.25);
}

TEST_CASE("transforms from the table", "[distributions]") {
    for (double xi : {-1.7, -0.3, 0.0, 0.25, 1.0, 2.5}) {
        CHECK(close(ft_eval(normal(0.0, 1.0), xi), std::exp(-2 * oracle::pi * oracle::pi * xi * xi), 1e-15));
        CHECK(close(ft_eval(rect(), xi), sinc(xi), 1e-15));
        CHECK(close(ft_eval(fejer_dual(1.0), xi), std::max(0.0, 1.0 - std::abs(xi)), 1e-15));
        CHECK(close(ft_eval(tri(), xi), sinc(xi) * sinc(xi), 1e-15));
    }
}

TEST_CASE("every transform equals one at zero", "[distributions]") {
    for (const auto& d : catalog_sample()) CHECK(ft_eval(d, 0.0) == ComplexValue(1.0));
    CHECK(ft_eval(uniform_zero(3.0), 0.0) == ComplexValue(1.0));
    CHECK(ft_eval(affine(cauchy(1, 2), 3, -1), 0.0) == ComplexValue(1.0));
}

TEST_CASE("uniform-on-(0, a) transform near its removable singularity", "[distributions]") {
    const double a = 1.3;
    for (double xi : {1e-12, 1e-8, -1e-6}) {
        CHECK(close(ft_eval(uniform_zero(a), xi), 1.0, 1e-5));
    }
    // (1 - e^{-2 pi i a xi}) / (2 pi i a xi)
    const double xi = 0.37;
    const cplx direct = (1.0 - std::polar(1.0, -2 * oracle::pi * a * xi)) / cplx(0.0, 2 * oracle::pi * a * xi);
    CHECK(close(ft_eval(uniform_zero(a), xi), direct, 1e-15));
}

TEST_CASE("characteristic function substitution", "[distributions]") {
    for (double z : {-3.0, -0.5, 0.0, 0.7, 4.0}) {
        CHECK(close(char_fn(normal(0, 1), z), std::exp(-z * z / 2), 1e-15));
        CHECK(close(char_fn(cauchy(0, 1.5), z), std::exp(-1.5 * std::abs(z)), 1e-15));
        // E[e^{i z X}] for X ~ N(m, 1) carries e^{i z m}
        CHECK(close(char_fn(normal(0.4, 1), z), std::polar(std::exp(-z * z / 2), 0.4 * z), 1e-14));
        CHECK(close(ft_angular(bilateral_exp(0, 1), z), 1.0 / (1.0 + z * z), 1e-15));
    }
    CHECK(char_fn(gamma_dist(2, 3), 0.0) == ComplexValue(1.0));
}

TEST_CASE("affine scaling rule", "[distributions]") {
    const double m = 0.3, s = 0.25;
    const auto y = affine(normal(0, 1), s, m);
    for (double xi : {0.2, 1.0, 3.0}) {
        const cplx want = std::polar(1.0, -2 * oracle::pi * m * xi) * std::exp(-2 * oracle::pi * oracle::pi * s * s * xi * xi);
        CHECK(close(ft_eval(y, xi), want, 1e-14));
        CHECK(close(ft_eval(affine(cauchy(0.1, 2), 1, 0), xi), ft_eval(cauchy(0.1, 2), xi), 0.0));
        const double a = 1.7;
        CHECK(close(ft_eval(affine(uniform_sym(a), 0.5, a / 2), xi), ft_eval(uniform_zero(a), xi), 1e-14));
    }
    for (double v : {-1.0, 0.0, 0.3, 0.9}) {
        CHECK_THAT(pdf_eval(y, v), WithinRel(oracle::normal_pdf(v, m, s), 1e-13));
    }
    CHECK_THROWS_AS(affine(rect(), 0.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(affine(rect(), -2.0, 1.0), InvalidArgument);
}

TEST_CASE("rect convolved with rect is tri", "[distributions]") {
    const auto rr = convolve(rect(), rect());
    for (double x = -1.5; x <= 1.5; x += 0.0625) {
        CHECK_THAT(pdf_eval(rr, x), WithinAbs(pdf_eval(tri(), x), 1e-10));
    }
    for (double xi : {0.3, 1.0, 2.5}) CHECK(close(ft_eval(rr, xi), sinc(xi) * sinc(xi), 1e-15));
}

TEST_CASE("convolution of normals", "[distributions]") {
    const auto nn = convolve(normal(0, 1), normal(0, 1));
    for (double xi : {0.1, 0.4, 1.0}) {
        CHECK(close(ft_eval(nn, xi), std::exp(-4 * oracle::pi * oracle::pi * xi * xi), 1e-15));
    }
    for (double x : {-2.0, 0.0, 0.5, 3.0}) {
        CHECK_THAT(pdf_eval(nn, x), WithinAbs(oracle::normal_pdf(x, 0, std::sqrt(2.0)), 1e-10));
        CHECK_THAT(cdf_eval(nn, x), WithinAbs(oracle::normal_cdf(x / std::sqrt(2.0)), 1e-10));
        CHECK_THAT(sf_eval(nn, x), WithinAbs(oracle::normal_cdf(-x / std::sqrt(2.0)), 1e-10));
    }
}

TEST_CASE("conjugate symmetry, unit bound and real even transforms", "[distributions][property]") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> xi_dist(-6.0, 6.0);
    const std::vector<DistributionSpec> even = {normal(0, 0.7),    uniform_sym(0.8), triangular(0.6),
                                                fejer_dual(1.3),   bilateral_exp(0, 0.5), cauchy(0, 0.8),
                                                rect(),            tri()};
    auto all = catalog_sample();
    all.push_back(affine(gamma_dist(1.5, 2), 0.3, -1));
    all.push_back(convolve(cauchy(0.2, 0.1), uniform_zero(1)));
    for (int i = 0; i < 200; ++i) {
        const double xi = xi_dist(gen);
        for (const auto& d : all) {
            CHECK(close(ft_eval(d, -xi), std::conj(ft_eval(d, xi)), 1e-12));
            CHECK(std::abs(ft_eval(d, xi)) <= 1.0 + 1e-15);
        }
        for (const auto& d : even) {
            CHECK(is_even(d));
            CHECK(std::abs(ft_eval(d, xi).imag()) <= 1e-12);
        }
    }
}

TEST_CASE("Riemann-Lebesgue decay over the first twenty integers", "[distributions]") {
    for (const auto& d : {normal(0.1, 0.3), cauchy(0.2, 0.05), bilateral_exp(0.0, 0.2), gamma_dist(0.8, 0.1),
                          gamma_dist(3.0, 0.05)}) {
        double prev = 1.0;
        for (int n = 1; n <= 20; ++n) {
            const double v = std::abs(ft_eval(d, n));
            CHECK(v < prev);
            prev = v;
        }
        CHECK(prev < 0.5);
    }
    double prev = 1.0;
    for (int n = 1; n <= 20; ++n) {
        const double v = std::abs(ft_eval(fejer_dual(1.0), n));
        CHECK(v <= prev);
        prev = v;
    }
}

TEST_CASE("duality spot checks", "[distributions]") {
    // transform of tri is the Fejer-dual density shape; Laplace transform is a Cauchy density shape
    const auto cauchy_dual = cauchy(0.0, 1.0 / (2.0 * oracle::pi));
    for (double v : {-2.2, -0.4, 0.0, 0.3, 1.5, 7.0}) {
        CHECK_THAT(ft_eval(tri(), v).real(), WithinAbs(pdf_eval(fejer_dual(1.0), v), 1e-15));
        CHECK_THAT(ft_eval(bilateral_exp(0, 1), v).real(), WithinAbs(0.5 * pdf_eval(cauchy_dual, v), 1e-15));
        CHECK_THAT(ft_eval(triangular(1.0), v).real(), WithinAbs(pdf_eval(fejer_dual(1.0), v), 1e-15));
    }
}

TEST_CASE("closed-form transforms match quadrature", "[distributions][oracle]") {
    for (const auto& d : catalog_sample()) {
        for (double xi : {0.3, 1.0, 2.5}) {
            INFO(family_name(d) << " at xi = " << xi);
            CHECK(std::abs(ft_eval(d, xi) - transform_oracle(d, xi)) <= 1e-8);
        }
    }
}

TEST_CASE("gamma transform uses the principal branch", "[distributions]") {
    const auto g = gamma_dist(2.5, 0.7);
    // continuity through zero and the explicit power for integer alpha
    CHECK(close(ft_eval(g, 1e-9), 1.0, 1e-7));
    const auto g2 = gamma_dist(2.0, 0.7);
    for (double xi : {-3.0, 0.4, 5.0}) {
        const cplx base(1.0, 2 * oracle::pi * 0.7 * xi);
        CHECK(close(ft_eval(g2, xi), 1.0 / (base * base), 1e-15));
    }
    // large alpha: arg wraps past pi but the value stays continuous
    const auto big = gamma_dist(40.0, 1.0);
    cplx prev = ft_eval(big, 0.0);
    for (double xi = 1e-4; xi < 0.5; xi += 1e-4) {
        const cplx v = ft_eval(big, xi);
        CHECK(std::abs(v - prev) < 0.05);
        prev = v;
    }
}

TEST_CASE("cdf and survival agree with integrated pdf", "[distributions][oracle]") {
    for (const auto& d : catalog_sample()) {
        const auto [lo, hi] = support(d);
        const double start = std::isfinite(lo) ? lo : -60.0;
        for (double y : {-0.9, -0.2, 0.0, 0.35, 1.1, 2.0}) {
            if (y <= start) continue;
            const double end = std::isfinite(hi) ? std::min(y, hi) : y;
            std::vector<double> breaks{start};
            for (double k : {-1.7, -1.0, -0.5, -0.3, 0.0, 0.2, 0.3, 0.4, 0.5, 0.6, 0.65, 0.8, 1.0, 1.3}) {
                if (k > start && k < end) breaks.push_back(k);
            }
            breaks.push_back(end);
            std::sort(breaks.begin(), breaks.end());
            double ref = oracle::integrate_pieces<double>([&](double x) { return pdf_eval(d, x); }, breaks, 0.05);
            if (const auto* g = std::get_if<dist::Gamma>(&d.node().kind); g && g->alpha < 1.0) {
                // substitute x = t^{1/alpha} to flatten the singularity at 0
                const double k = 1.0 / g->alpha;
                auto h = [&](double t) { return pdf_eval(d, std::pow(t, k)) * std::pow(t, k - 1.0) * k; };
                ref = oracle::integrate<double>(h, 0.0, std::pow(end, g->alpha), 400);
            }
            if (!std::isfinite(lo)) {
                // mass below -60: exact for the heavy tails, negligible otherwise
                if (std::holds_alternative<dist::Cauchy>(d.node().kind)) ref += cdf_eval(d, -60.0);
                if (std::holds_alternative<dist::FejerDual>(d.node().kind)) ref += cdf_eval(d, -60.0);
            }
            INFO(family_name(d) << " at y = " << y);
            CHECK_THAT(cdf_eval(d, y), WithinAbs(ref, 1e-10));
            CHECK_THAT(cdf_eval(d, y) + sf_eval(d, y), WithinAbs(1.0, 1e-14));
        }
    }
}

TEST_CASE("Fejer-dual cdf tail behaves like 1/(2 pi^2 a y)", "[distributions]") {
    const auto f = fejer_dual(1.0);
    for (double y : {1e3, 1e5}) {
        // average of (1 - cos)/(2 pi^2 x^2) beyond y is 1/(2 pi^2 y)
        CHECK_THAT(sf_eval(f, y), WithinRel(1.0 / (2 * oracle::pi * oracle::pi * y), 1e-3));
    }
    CHECK(cdf_eval(f, 0.0) == 0.5);
}

TEST_CASE("mass between two points", "[distributions]") {
    CHECK_THAT(mass_between(normal(0, 1), -1, 1), WithinAbs(oracle::normal_cdf(1) - oracle::normal_cdf(-1), 1e-15));
    CHECK(mass_between(normal(0, 1), 1, -1) == 0.0);
    // far tail keeps relative precision
    const double far = mass_between(normal(0, 1), 30.0, 31.0);
    CHECK_THAT(far, WithinRel(0.5 * (std::erfc(30 / std::sqrt(2.0)) - std::erfc(31 / std::sqrt(2.0))), 1e-10));
}

TEST_CASE("factories reject invalid parameters", "[distributions]") {
    CHECK_THROWS_AS(normal(0, 0), InvalidArgument);
    CHECK_THROWS_AS(normal(0, -1), InvalidArgument);
    CHECK_THROWS_AS(normal(std::nan(""), 1), InvalidArgument);
    CHECK_THROWS_AS(uniform_sym(0), InvalidArgument);
    CHECK_THROWS_AS(uniform_zero(-1), InvalidArgument);
    CHECK_THROWS_AS(triangular(0), InvalidArgument);
    CHECK_THROWS_AS(fejer_dual(0), InvalidArgument);
    CHECK_THROWS_AS(gamma_dist(0, 1), InvalidArgument);
    CHECK_THROWS_AS(gamma_dist(1, 0), InvalidArgument);
    CHECK_THROWS_AS(bilateral_exp(0, 0), InvalidArgument);
    CHECK_THROWS_AS(cauchy(0, -2), InvalidArgument);
    CHECK_THROWS_AS(affine(rect(), 1, std::numeric_limits<double>::infinity()), InvalidArgument);
}

TEST_CASE("structural equality", "[distributions]") {
    CHECK(normal(0.1, 2) == normal(0.1, 2));
    CHECK_FALSE(normal(0.1, 2) == normal(0.1, 2.5));
    CHECK_FALSE(normal(0, 1) == cauchy(0, 1));
    CHECK(affine(convolve(rect(), tri()), 2, 1) == affine(convolve(rect(), tri()), 2, 1));
    CHECK_FALSE(affine(convolve(rect(), tri()), 2, 1) == affine(convolve(tri(), rect()), 2, 1));
}

TEST_CASE("lattice tails against brute-force sums", "[distributions][oracle]") {
    struct Case {
        DistributionSpec d;
        double x0, h;
        long k;
    };
    for (const auto& c : {Case{cauchy(0.3, 0.5), 0.25, 1.0, 16}, Case{cauchy(-1.0, 2.0), 0.7, 0.4, 32},
                          Case{fejer_dual(1.0), 0.25, 1.0, 16}, Case{fejer_dual(1.3), 0.1, 1.0, 16},
                          Case{fejer_dual(0.7), 0.45, 0.3, 64}, Case{affine(cauchy(0, 1), 0.6, 0.2), 0.9, 1.0, 16}}) {
        // explicit terms out to M, then the integral approximation of what is left
        const long M = 2'000'000;
        double brute = 0.0;
        for (long j = c.k + 1; j <= M; ++j) {
            brute += pdf_eval(c.d, c.x0 + c.h * j) + pdf_eval(c.d, c.x0 - c.h * j);
        }
        // remaining terms ~ (sf(x0 + h M) + cdf(x0 - h M)) / h
        brute += (sf_eval(c.d, c.x0 + c.h * (M + 0.5)) + cdf_eval(c.d, c.x0 - c.h * (M + 0.5))) / c.h;
        const auto tail = lattice_tail(c.d, c.x0, c.h, c.k);
        INFO(family_name(c.d) << " x0 = " << c.x0 << " h = " << c.h);
        CHECK(std::abs(tail.value - brute) <= tail.error + 1e-12);
        CHECK(tail.error < 1e-9);
    }
}

TEST_CASE("light tails report a mass bound and no correction", "[distributions]") {
    const auto t = lattice_tail(normal(0.3, 0.25), 0.5, 1.0, 8);
    CHECK(t.value == 0.0);
    CHECK(t.error < 1e-100);
    const auto inside = lattice_tail(normal(100.0, 1.0), 0.5, 1.0, 8);
    CHECK(std::isinf(inside.error)); // truncation still inside the bulk
}
