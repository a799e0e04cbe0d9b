#pragma once

// Symbolic catalog of densities with closed-form Fourier transforms, closed
// under positive affine maps and independent sums (convolution).
//
// Transform convention: f^(xi) = int exp(-2 pi i xi x) f(x) dx.

#include "benford/numerics.hpp"
#include "benford/quadrature.hpp"
#include "benford/seed_function.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/polygamma.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace benford {

struct DistributionNode;

/// Immutable handle to a symbolic density. Cheap to copy; composites share
/// their children.
class DistributionSpec {
public:
    explicit DistributionSpec(std::shared_ptr<const DistributionNode> node) : node_(std::move(node)) {}
    const DistributionNode& node() const noexcept { return *node_; }
    const DistributionNode* get() const noexcept { return node_.get(); }

private:
    std::shared_ptr<const DistributionNode> node_;
};

namespace dist {

struct Normal { double m = 0.0, s = 1.0; bool operator==(const Normal&) const = default; };
struct UniformSym { double a = 1.0; bool operator==(const UniformSym&) const = default; };
struct UniformZero { double a = 1.0; bool operator==(const UniformZero&) const = default; };
struct Triangular { double a = 1.0; bool operator==(const Triangular&) const = default; };
struct FejerDual { double a = 1.0; bool operator==(const FejerDual&) const = default; };
struct Gamma { double alpha = 1.0, beta = 1.0; bool operator==(const Gamma&) const = default; };
struct BilateralExp { double m = 0.0, s = 1.0; bool operator==(const BilateralExp&) const = default; };
struct Cauchy { double m = 0.0, s = 1.0; bool operator==(const Cauchy&) const = default; };
struct Rect { bool operator==(const Rect&) const = default; };
struct Tri { bool operator==(const Tri&) const = default; };
struct Affine { DistributionSpec inner; double c, d; };
struct Convolution { DistributionSpec left, right; };
struct SeedDerived { SeedFunction seed; };

} // namespace dist

struct DistributionNode {
    std::variant<dist::Normal, dist::UniformSym, dist::UniformZero, dist::Triangular, dist::FejerDual,
                 dist::Gamma, dist::BilateralExp, dist::Cauchy, dist::Rect, dist::Tri, dist::Affine,
                 dist::Convolution, dist::SeedDerived>
        kind;
};

bool operator==(const DistributionSpec& a, const DistributionSpec& b);

namespace dist {
inline bool operator==(const Affine& x, const Affine& y) {
    return x.c == y.c && x.d == y.d && x.inner == y.inner;
}
inline bool operator==(const Convolution& x, const Convolution& y) {
    return x.left == y.left && x.right == y.right;
}
inline bool operator==(const SeedDerived& x, const SeedDerived& y) { return x.seed == y.seed; }
} // namespace dist

inline bool operator==(const DistributionSpec& a, const DistributionSpec& b) {
    if (a.get() == b.get()) return true;
    return a.node().kind == b.node().kind;
}

// ---------------------------------------------------------------------------
// construction

namespace detail {

inline void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw InvalidArgument(std::string(what) + " must be a finite real > 0");
    }
}

inline void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be finite");
}

template <class T>
DistributionSpec make(T node) {
    return DistributionSpec(std::make_shared<const DistributionNode>(DistributionNode{std::move(node)}));
}

} // namespace detail

inline DistributionSpec normal(double m, double s) {
    detail::require_finite(m, "normal m");
    detail::require_positive(s, "normal s");
    return detail::make(dist::Normal{m, s});
}
inline DistributionSpec uniform_sym(double a) {
    detail::require_positive(a, "uniform a");
    return detail::make(dist::UniformSym{a});
}
inline DistributionSpec uniform_zero(double a) {
    detail::require_positive(a, "uniform a");
    return detail::make(dist::UniformZero{a});
}
inline DistributionSpec triangular(double a) {
    detail::require_positive(a, "triangular a");
    return detail::make(dist::Triangular{a});
}
inline DistributionSpec fejer_dual(double a) {
    detail::require_positive(a, "fejer-dual a");
    return detail::make(dist::FejerDual{a});
}
inline DistributionSpec gamma_dist(double alpha, double beta) {
    detail::require_positive(alpha, "gamma alpha");
    detail::require_positive(beta, "gamma beta");
    return detail::make(dist::Gamma{alpha, beta});
}
inline DistributionSpec bilateral_exp(double m, double s) {
    detail::require_finite(m, "bilateral-exp m");
    detail::require_positive(s, "bilateral-exp s");
    return detail::make(dist::BilateralExp{m, s});
}
inline DistributionSpec cauchy(double m, double s) {
    detail::require_finite(m, "cauchy m");
    detail::require_positive(s, "cauchy s");
    return detail::make(dist::Cauchy{m, s});
}
inline DistributionSpec rect() { return detail::make(dist::Rect{}); }
inline DistributionSpec tri() { return detail::make(dist::Tri{}); }

/// Law of c X + d for X ~ dist.
inline DistributionSpec affine(const DistributionSpec& inner, double c, double d) {
    detail::require_positive(c, "affine scale c");
    detail::require_finite(d, "affine shift d");
    return detail::make(dist::Affine{inner, c, d});
}

/// Law of X + Y for independent X ~ left, Y ~ right.
inline DistributionSpec convolve(const DistributionSpec& left, const DistributionSpec& right) {
    return detail::make(dist::Convolution{left, right});
}

inline DistributionSpec seed_derived(SeedFunction seed) {
    if (!seed.H || !seed.h) {
        throw InvalidArgument("seed function needs both H and its derivative h");
    }
    return detail::make(dist::SeedDerived{std::move(seed)});
}

// ---------------------------------------------------------------------------
// evaluation

double pdf_eval(const DistributionSpec& d, double y);
ComplexValue ft_eval(const DistributionSpec& d, double xi);
double cdf_eval(const DistributionSpec& d, double y);
double sf_eval(const DistributionSpec& d, double y);

/// Interval outside which the density vanishes (may be infinite).
std::pair<double, double> support(const DistributionSpec& d);

/// (lo, hi) such that the pdf is nondecreasing on (-inf, lo] and
/// nonincreasing on [hi, inf). NaN entries mean "unknown".
std::pair<double, double> monotone_region(const DistributionSpec& d);

/// Upper bound for int_X^inf M(xi) dxi where M is a nonincreasing majorant
/// of |ft_eval(d, xi)| on [X, inf). +inf when no summable majorant exists.
double transform_tail_integral(const DistributionSpec& d, double x);

namespace detail {

// Relative distance from an integer below which sin(pi x) is taken as 0.
inline constexpr double integer_snap = 1e-12;

inline ComplexValue sinc_pi(double x) {
    if (x == 0.0) return 1.0;
    return sin_pi(x) / (pi * x);
}

inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

inline double triangular_cdf(double t) {
    if (t <= -1.0) return 0.0;
    if (t < 0.0) return 0.5 * (1.0 + t) * (1.0 + t);
    if (t < 1.0) return 1.0 - 0.5 * (1.0 - t) * (1.0 - t);
    return 1.0;
}

inline double fejer_cdf(double a, double y) {
    const double t = two_pi * a * y;
    if (t == 0.0) return 0.5;
    const double s = std::sin(0.5 * t);
    return 0.5 + (sine_integral(t) - 2.0 * s * s / t) / pi;
}

// --- pdf -------------------------------------------------------------------

inline double pdf(const dist::Normal& n, double y) {
    const double z = (y - n.m) / n.s;
    return std::exp(-0.5 * z * z) / (n.s * std::sqrt(two_pi));
}
inline double pdf(const dist::UniformSym& n, double y) {
    const double ay = std::abs(y);
    if (ay < n.a) return 0.5 / n.a;
    return ay == n.a ? 0.25 / n.a : 0.0;
}
inline double pdf(const dist::UniformZero& n, double y) {
    if (y > 0.0 && y < n.a) return 1.0 / n.a;
    return (y == 0.0 || y == n.a) ? 0.5 / n.a : 0.0;
}
inline double pdf(const dist::Triangular& n, double y) {
    return std::max(0.0, 1.0 - std::abs(y) / n.a) / n.a;
}
inline double pdf(const dist::FejerDual& n, double y) {
    // (1 - cos 2 pi a y) / (2 a pi^2 y^2) written as a * sinc(a y)^2
    const double s = sinc_pi(n.a * y).real();
    return n.a * s * s;
}
inline double pdf(const dist::Gamma& n, double y) {
    if (y < 0.0) return 0.0;
    if (y == 0.0) {
        if (n.alpha < 1.0) return std::numeric_limits<double>::infinity();
        return n.alpha == 1.0 ? 1.0 / n.beta : 0.0;
    }
    return boost::math::gamma_p_derivative(n.alpha, y / n.beta) / n.beta;
}
inline double pdf(const dist::BilateralExp& n, double y) {
    return std::exp(-std::abs(y - n.m) / n.s) / (2.0 * n.s);
}
inline double pdf(const dist::Cauchy& n, double y) {
    const double z = (y - n.m) / n.s;
    return 1.0 / (pi * n.s * (1.0 + z * z));
}
inline double pdf(const dist::Rect&, double y) {
    const double ay = std::abs(y);
    if (ay < 0.5) return 1.0;
    return ay == 0.5 ? 0.5 : 0.0;
}
inline double pdf(const dist::Tri&, double y) { return std::max(0.0, 1.0 - std::abs(y)); }
inline double pdf(const dist::Affine& n, double y) { return pdf_eval(n.inner, (y - n.d) / n.c) / n.c; }
inline double pdf(const dist::SeedDerived& n, double y) {
    return std::max(0.0, n.seed.H(y) - n.seed.H(y - 1.0));
}

// breakpoints in [lo, hi] of an integrand x -> f_left(x) k(y - x), where k
// changes shape at the right factor's support edges and monotone region
inline std::vector<double> convolution_breaks(const dist::Convolution& n, double y, double lo, double hi) {
    if (!(lo < hi)) return {};
    std::vector<double> breaks{lo};
    auto add_inside = [&](double v) {
        if (std::isfinite(v) && v > lo && v < hi) breaks.push_back(v);
    };
    const auto [lm_lo, lm_hi] = monotone_region(n.left);
    const auto [rm_lo, rm_hi] = monotone_region(n.right);
    const auto [r_lo, r_hi] = support(n.right);
    add_inside(lm_lo);
    add_inside(lm_hi);
    add_inside(y - rm_lo);
    add_inside(y - rm_hi);
    add_inside(y - r_lo);
    add_inside(y - r_hi);
    breaks.push_back(hi);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    return breaks;
}

inline std::vector<double> convolution_breaks(const dist::Convolution& n, double y) {
    const auto [l_lo, l_hi] = support(n.left);
    const auto [r_lo, r_hi] = support(n.right);
    return convolution_breaks(n, y, std::max(l_lo, y - r_hi), std::min(l_hi, y - r_lo));
}

// int over the breaks, extending infinite ends with the tail maps
template <class F>
double integrate_over(const F& f, std::vector<double> breaks, double abs_tol) {
    if (breaks.size() < 2) return 0.0;
    double total = 0.0;
    // replace infinite ends by a finite anchor and integrate the tails separately
    const bool lo_inf = std::isinf(breaks.front());
    const bool hi_inf = std::isinf(breaks.back());
    if (lo_inf && hi_inf && breaks.size() == 2) breaks = {-std::numeric_limits<double>::infinity(), 0.0,
                                                          std::numeric_limits<double>::infinity()};
    if (lo_inf) {
        total += quad::integrate_from_neg_inf(f, breaks[1], abs_tol).value;
        breaks.erase(breaks.begin());
    }
    if (hi_inf) {
        total += quad::integrate_to_inf(f, breaks[breaks.size() - 2], abs_tol).value;
        breaks.pop_back();
    }
    if (breaks.size() >= 2) total += quad::integrate_pieces(f, breaks, abs_tol).value;
    return total;
}

inline constexpr double convolution_abs_tol = 1e-11;

inline double pdf(const dist::Convolution& n, double y) {
    auto f = [&](double x) { return pdf_eval(n.left, x) * pdf_eval(n.right, y - x); };
    return std::max(0.0, integrate_over(f, convolution_breaks(n, y), convolution_abs_tol));
}

// --- transform -------------------------------------------------------------

inline ComplexValue ft(const dist::Normal& n, double xi) {
    return unit_phase(n.m * xi) * std::exp(-2.0 * pi * pi * n.s * n.s * xi * xi);
}
inline ComplexValue ft(const dist::UniformSym& n, double xi) { return sinc_pi(2.0 * n.a * xi); }
inline ComplexValue ft(const dist::UniformZero& n, double xi) {
    // (1 - e^{-2 pi i a xi}) / (2 pi i a xi) = e^{-i pi a xi} sinc(a xi); 1 at xi = 0
    return unit_phase(0.5 * n.a * xi) * sinc_pi(n.a * xi);
}
inline ComplexValue ft(const dist::Triangular& n, double xi) {
    const double s = sinc_pi(n.a * xi).real();
    return s * s;
}
inline ComplexValue ft(const dist::FejerDual& n, double xi) {
    return std::max(0.0, 1.0 - std::abs(xi) / n.a);
}
inline ComplexValue ft(const dist::Gamma& n, double xi) {
    // principal branch of (1 + 2 pi i beta xi)^(-alpha)
    return std::exp(-n.alpha * std::log(ComplexValue(1.0, two_pi * n.beta * xi)));
}
inline ComplexValue ft(const dist::BilateralExp& n, double xi) {
    return unit_phase(n.m * xi) / (1.0 + 4.0 * pi * pi * n.s * n.s * xi * xi);
}
inline ComplexValue ft(const dist::Cauchy& n, double xi) {
    return unit_phase(n.m * xi) * std::exp(-two_pi * n.s * std::abs(xi));
}
inline ComplexValue ft(const dist::Rect&, double xi) { return sinc_pi(xi); }
inline ComplexValue ft(const dist::Tri&, double xi) {
    const double s = sinc_pi(xi).real();
    return s * s;
}
inline ComplexValue ft(const dist::Affine& n, double xi) {
    return unit_phase(n.d * xi) * ft_eval(n.inner, n.c * xi);
}
inline ComplexValue ft(const dist::Convolution& n, double xi) {
    return ft_eval(n.left, xi) * ft_eval(n.right, xi);
}

/// g^(xi) = e^{-i pi xi} sin(pi xi) / (pi xi) * h^(xi), exactly 0 when xi is
/// a nonzero integer.
inline ComplexValue seed_transform(const SeedFunction& seed, double xi) {
    if (xi == 0.0) return 1.0;
    if (!seed.has_transform()) {
        throw InvalidArgument("seed '" + seed.name +
                              "' has no closed-form transform of h; integrate the pdf numerically instead");
    }
    const double s = sin_pi(xi, integer_snap);
    if (s == 0.0) return 0.0;
    return unit_phase(0.5 * xi) * (s / (pi * xi)) * seed.h_transform(xi);
}

inline ComplexValue ft(const dist::SeedDerived& n, double xi) { return seed_transform(n.seed, xi); }

// --- cdf / survival ----------------------------------------------------------

inline double cdf(const dist::Normal& n, double y) { return normal_cdf((y - n.m) / n.s); }
inline double sf(const dist::Normal& n, double y) { return normal_sf((y - n.m) / n.s); }
inline double cdf(const dist::UniformSym& n, double y) { return clamp01((y + n.a) / (2.0 * n.a)); }
inline double sf(const dist::UniformSym& n, double y) { return clamp01((n.a - y) / (2.0 * n.a)); }
inline double cdf(const dist::UniformZero& n, double y) { return clamp01(y / n.a); }
inline double sf(const dist::UniformZero& n, double y) { return clamp01((n.a - y) / n.a); }
inline double cdf(const dist::Triangular& n, double y) { return triangular_cdf(y / n.a); }
inline double sf(const dist::Triangular& n, double y) { return triangular_cdf(-y / n.a); }
inline double cdf(const dist::FejerDual& n, double y) { return fejer_cdf(n.a, y); }
inline double sf(const dist::FejerDual& n, double y) { return fejer_cdf(n.a, -y); }
inline double cdf(const dist::Gamma& n, double y) {
    return y <= 0.0 ? 0.0 : boost::math::gamma_p(n.alpha, y / n.beta);
}
inline double sf(const dist::Gamma& n, double y) {
    return y <= 0.0 ? 1.0 : boost::math::gamma_q(n.alpha, y / n.beta);
}
inline double cdf(const dist::BilateralExp& n, double y) {
    const double z = (y - n.m) / n.s;
    return z < 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
}
inline double sf(const dist::BilateralExp& n, double y) {
    const double z = (n.m - y) / n.s;
    return z < 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
}
inline double cdf(const dist::Cauchy& n, double y) { return std::atan2(1.0, -(y - n.m) / n.s) / pi; }
inline double sf(const dist::Cauchy& n, double y) { return std::atan2(1.0, (y - n.m) / n.s) / pi; }
inline double cdf(const dist::Rect&, double y) { return clamp01(y + 0.5); }
inline double sf(const dist::Rect&, double y) { return clamp01(0.5 - y); }
inline double cdf(const dist::Tri&, double y) { return triangular_cdf(y); }
inline double sf(const dist::Tri&, double y) { return triangular_cdf(-y); }
inline double cdf(const dist::Affine& n, double y) { return cdf_eval(n.inner, (y - n.d) / n.c); }
inline double sf(const dist::Affine& n, double y) { return sf_eval(n.inner, (y - n.d) / n.c); }

inline double cdf(const dist::Convolution& n, double y) {
    // P(L + R <= y) = int f_L(x) G_R(y - x) dx; G_R vanishes once y - x < inf supp R
    const auto [lo, hi] = support(n.left);
    const auto breaks = convolution_breaks(n, y, lo, std::min(hi, y - support(n.right).first));
    auto f = [&](double x) { return pdf_eval(n.left, x) * cdf_eval(n.right, y - x); };
    return clamp01(integrate_over(f, breaks, convolution_abs_tol));
}
inline double sf(const dist::Convolution& n, double y) {
    const auto [lo, hi] = support(n.left);
    const auto breaks = convolution_breaks(n, y, std::max(lo, y - support(n.right).second), hi);
    auto f = [&](double x) { return pdf_eval(n.left, x) * sf_eval(n.right, y - x); };
    return clamp01(integrate_over(f, breaks, convolution_abs_tol));
}

// G(y) = int_{y-1}^{y} H(t) dt for the seed-generated pdf
inline double cdf(const dist::SeedDerived& n, double y) {
    return clamp01(quad::integrate(n.seed.H, y - 1.0, y, 1e-15, 1e-13).value);
}
inline double sf(const dist::SeedDerived& n, double y) {
    auto upper = [&](double t) { return 1.0 - n.seed.H(t); };
    return clamp01(quad::integrate(upper, y - 1.0, y, 1e-15, 1e-13).value);
}

// --- support / monotone region -------------------------------------------------

inline constexpr double inf = std::numeric_limits<double>::infinity();
inline constexpr double nan = std::numeric_limits<double>::quiet_NaN();

inline std::pair<double, double> supp(const dist::UniformSym& n) { return {-n.a, n.a}; }
inline std::pair<double, double> supp(const dist::UniformZero& n) { return {0.0, n.a}; }
inline std::pair<double, double> supp(const dist::Triangular& n) { return {-n.a, n.a}; }
inline std::pair<double, double> supp(const dist::Gamma&) { return {0.0, inf}; }
inline std::pair<double, double> supp(const dist::Rect&) { return {-0.5, 0.5}; }
inline std::pair<double, double> supp(const dist::Tri&) { return {-1.0, 1.0}; }
inline std::pair<double, double> supp(const dist::Affine& n) {
    const auto [lo, hi] = support(n.inner);
    return {n.c * lo + n.d, n.c * hi + n.d};
}
inline std::pair<double, double> supp(const dist::Convolution& n) {
    const auto [a, b] = support(n.left);
    const auto [c, d] = support(n.right);
    return {a + c, b + d};
}
template <class T>
std::pair<double, double> supp(const T&) {
    return {-inf, inf};
}

inline std::pair<double, double> mono(const dist::Normal& n) { return {n.m, n.m}; }
inline std::pair<double, double> mono(const dist::UniformSym&) { return {0.0, 0.0}; }
inline std::pair<double, double> mono(const dist::UniformZero& n) { return {0.5 * n.a, 0.5 * n.a}; }
inline std::pair<double, double> mono(const dist::Triangular&) { return {0.0, 0.0}; }
// the pdf oscillates down to zero at every multiple of 1/a
inline std::pair<double, double> mono(const dist::FejerDual&) { return {nan, nan}; }
inline std::pair<double, double> mono(const dist::Gamma& n) {
    const double mode = std::max(0.0, (n.alpha - 1.0) * n.beta);
    return {mode, mode};
}
inline std::pair<double, double> mono(const dist::BilateralExp& n) { return {n.m, n.m}; }
inline std::pair<double, double> mono(const dist::Cauchy& n) { return {n.m, n.m}; }
inline std::pair<double, double> mono(const dist::Rect&) { return {0.0, 0.0}; }
inline std::pair<double, double> mono(const dist::Tri&) { return {0.0, 0.0}; }
inline std::pair<double, double> mono(const dist::Affine& n) {
    const auto [lo, hi] = monotone_region(n.inner);
    return {n.c * lo + n.d, n.c * hi + n.d};
}
// exact for log-concave factors, heuristic otherwise
inline std::pair<double, double> mono(const dist::Convolution& n) {
    const auto [a, b] = monotone_region(n.left);
    const auto [c, d] = monotone_region(n.right);
    return {a + c, b + d};
}
inline std::pair<double, double> mono(const dist::SeedDerived& n) { return {n.seed.mode, n.seed.mode}; }

// --- transform majorant tails ---------------------------------------------------

// int_X^inf min(1, (k xi)^-p) dxi for p > 1
inline double power_tail(double x, double k, double p) {
    const double knee = 1.0 / k;
    double flat = 0.0;
    if (x < knee) {
        flat = knee - std::max(x, 0.0);
        x = knee;
    }
    return flat + std::pow(k, -p) * std::pow(x, 1.0 - p) / (p - 1.0);
}

inline double ttail(const dist::Normal& n, double x) {
    const double k = std::sqrt(2.0) * pi * n.s;
    return std::sqrt(pi) / (2.0 * k) * std::erfc(k * std::max(x, 0.0));
}
inline double ttail(const dist::UniformSym&, double) { return inf; }
inline double ttail(const dist::UniformZero&, double) { return inf; }
inline double ttail(const dist::Rect&, double) { return inf; }
inline double ttail(const dist::Triangular& n, double x) { return power_tail(x, pi * n.a, 2.0); }
inline double ttail(const dist::Tri&, double x) { return power_tail(x, pi, 2.0); }
inline double ttail(const dist::FejerDual& n, double x) {
    const double r = std::max(0.0, n.a - std::max(x, 0.0));
    return r * r / (2.0 * n.a);
}
inline double ttail(const dist::Gamma& n, double x) {
    if (n.alpha <= 1.0) return inf;
    return power_tail(x, two_pi * n.beta, n.alpha);
}
inline double ttail(const dist::BilateralExp& n, double x) {
    return (pi / 2.0 - std::atan(two_pi * n.s * std::max(x, 0.0))) / (two_pi * n.s);
}
inline double ttail(const dist::Cauchy& n, double x) {
    return std::exp(-two_pi * n.s * std::max(x, 0.0)) / (two_pi * n.s);
}
inline double ttail(const dist::Affine& n, double x) {
    return transform_tail_integral(n.inner, n.c * x) / n.c;
}
inline double ttail(const dist::Convolution& n, double x) {
    return std::min(transform_tail_integral(n.left, x), transform_tail_integral(n.right, x));
}
inline double ttail(const dist::SeedDerived& n, double x) {
    if (!n.seed.h_transform_tail) return inf;
    // |sin(pi xi) / (pi xi)| <= min(1, 1 / (pi X)) on [X, inf)
    const double damp = x > 0.0 ? std::min(1.0, 1.0 / (pi * x)) : 1.0;
    return damp * n.seed.h_transform_tail(x);
}

} // namespace detail

inline double pdf_eval(const DistributionSpec& d, double y) {
    return std::visit([y](const auto& n) { return detail::pdf(n, y); }, d.node().kind);
}

inline ComplexValue ft_eval(const DistributionSpec& d, double xi) {
    if (xi == 0.0) return 1.0;
    return std::visit([xi](const auto& n) { return detail::ft(n, xi); }, d.node().kind);
}

/// Characteristic function E[exp(i zeta X)] = ft(-zeta / (2 pi)).
inline ComplexValue char_fn(const DistributionSpec& d, double zeta) { return ft_eval(d, -zeta / two_pi); }

/// Angular-frequency transform int exp(-i omega x) f(x) dx = ft(omega / (2 pi)).
inline ComplexValue ft_angular(const DistributionSpec& d, double omega) { return ft_eval(d, omega / two_pi); }

inline double cdf_eval(const DistributionSpec& d, double y) {
    return std::visit([y](const auto& n) { return detail::cdf(n, y); }, d.node().kind);
}

inline double sf_eval(const DistributionSpec& d, double y) {
    return std::visit([y](const auto& n) { return detail::sf(n, y); }, d.node().kind);
}

/// P(a < Y <= b), computed from whichever tail keeps precision.
inline double mass_between(const DistributionSpec& d, double a, double b) {
    if (!(a < b)) return 0.0;
    const double ca = cdf_eval(d, a);
    if (ca > 0.5) return std::max(0.0, sf_eval(d, a) - sf_eval(d, b));
    return std::max(0.0, cdf_eval(d, b) - ca);
}

inline std::pair<double, double> support(const DistributionSpec& d) {
    return std::visit([](const auto& n) { return detail::supp(n); }, d.node().kind);
}

inline std::pair<double, double> monotone_region(const DistributionSpec& d) {
    return std::visit([](const auto& n) { return detail::mono(n); }, d.node().kind);
}

inline double transform_tail_integral(const DistributionSpec& d, double x) {
    return std::visit([x](const auto& n) { return detail::ttail(n, x); }, d.node().kind);
}

/// Catalog name used in JSON ("normal", "affine", ...).
inline std::string family_name(const DistributionSpec& d) {
    struct Namer {
        std::string operator()(const dist::Normal&) const { return "normal"; }
        std::string operator()(const dist::UniformSym&) const { return "uniform_sym"; }
        std::string operator()(const dist::UniformZero&) const { return "uniform_zero"; }
        std::string operator()(const dist::Triangular&) const { return "triangular"; }
        std::string operator()(const dist::FejerDual&) const { return "fejer_dual"; }
        std::string operator()(const dist::Gamma&) const { return "gamma"; }
        std::string operator()(const dist::BilateralExp&) const { return "bilateral_exp"; }
        std::string operator()(const dist::Cauchy&) const { return "cauchy"; }
        std::string operator()(const dist::Rect&) const { return "rect"; }
        std::string operator()(const dist::Tri&) const { return "tri"; }
        std::string operator()(const dist::Affine&) const { return "affine"; }
        std::string operator()(const dist::Convolution&) const { return "convolution"; }
        std::string operator()(const dist::SeedDerived&) const { return "seed"; }
    };
    return std::visit(Namer{}, d.node().kind);
}

/// True for densities symmetric about zero (their transforms are real).
inline bool is_even(const DistributionSpec& d) {
    struct Even {
        bool operator()(const dist::Normal& n) const { return n.m == 0.0; }
        bool operator()(const dist::UniformSym&) const { return true; }
        bool operator()(const dist::UniformZero&) const { return false; }
        bool operator()(const dist::Triangular&) const { return true; }
        bool operator()(const dist::FejerDual&) const { return true; }
        bool operator()(const dist::Gamma&) const { return false; }
        bool operator()(const dist::BilateralExp& n) const { return n.m == 0.0; }
        bool operator()(const dist::Cauchy& n) const { return n.m == 0.0; }
        bool operator()(const dist::Rect&) const { return true; }
        bool operator()(const dist::Tri&) const { return true; }
        bool operator()(const dist::Affine& n) const { return n.d == 0.0 && is_even(n.inner); }
        bool operator()(const dist::Convolution& n) const { return is_even(n.left) && is_even(n.right); }
        bool operator()(const dist::SeedDerived&) const { return false; }
    };
    return std::visit(Even{}, d.node().kind);
}

// ---------------------------------------------------------------------------
// lattice tails

/// Approximation of sum over |k| > K of pdf(x0 + h k) and an estimate of its
/// absolute error.
struct TailSum {
    double value = 0.0;
    double error = 0.0;
};

TailSum lattice_tail(const DistributionSpec& d, double x0, double h, long k);

namespace detail {

// Hurwitz zeta(p, a) = sum_{k >= 0} (k + a)^-p for integer p >= 2, a > 0
inline double hurwitz_zeta(int p, double a) {
    double fact = 1.0;
    for (int i = 2; i < p; ++i) fact *= i;
    const double sign = (p % 2 == 0) ? 1.0 : -1.0;
    return sign * boost::math::polygamma(p - 1, a) / fact;
}

// sum_{k >= 1} 1 / ((k + c)^2 + q^2) via the alternating expansion in q^2/(k+c)^2
inline TailSum lorentz_lattice_sum(double c, double q) {
    const double a = 1.0 + c;
    if (!(a > q) || !(a > 0.0)) return {0.0, inf};
    double total = 0.0;
    double q2j = 1.0;
    for (int j = 0; j < 12; ++j) {
        const double term = q2j * hurwitz_zeta(2 * j + 2, a);
        const double next = q2j * q * q * hurwitz_zeta(2 * j + 4, a);
        total += (j % 2 == 0) ? term : -term;
        if (next < 1e-18 * std::max(total, 1e-300) || next < 1e-30) return {total, next};
        q2j *= q * q;
    }
    return {total, q2j * hurwitz_zeta(26, a)};
}

// sum_{k >= 1} z^k / (k + c)^2 for |z| = 1, z != 1, by repeated summation by parts
inline std::pair<ComplexValue, double> oscillating_lattice_sum(ComplexValue z, double c) {
    const double a = 1.0 + c;
    if (!(a > 0.0)) return {0.0, inf};
    const ComplexValue one_minus = 1.0 - z;
    const ComplexValue w = z / one_minus;
    constexpr int terms = 6;
    std::array<double, terms + 2> phi{};
    for (int i = 0; i < terms + 2; ++i) phi[i] = 1.0 / ((a + i) * (a + i));
    ComplexValue total = 0.0;
    ComplexValue wj = 1.0;
    double last = 0.0;
    for (int j = 0; j <= terms; ++j) {
        // forward difference of order j at k = 1, in place
        const double diff = phi[0];
        if (j < terms) total += wj * diff;
        else last = std::abs(wj * diff);
        for (int i = 0; i + 1 < terms + 2 - j; ++i) phi[i] = phi[i + 1] - phi[i];
        wj *= w;
    }
    const ComplexValue lead = z / one_minus;
    return {lead * total, std::abs(lead) * last};
}

inline TailSum lat_tail(const dist::Cauchy& n, double x0, double h, long k) {
    // pdf(x0 + h j) = s / (pi h^2) / ((j + (x0 - m) / h)^2 + (s / h)^2)
    const double q = n.s / h;
    const double c = (x0 - n.m) / h;
    const double pref = n.s / (pi * h * h);
    const auto up = lorentz_lattice_sum(static_cast<double>(k) + c, q);
    const auto down = lorentz_lattice_sum(static_cast<double>(k) - c, q);
    return {pref * (up.value + down.value), pref * (up.error + down.error) + 1e-16 * pref * (up.value + down.value)};
}

inline TailSum fejer_side(double a, double x0, double h, long k) {
    // pdf(x0 + h j) = [1 - Re(e^{i 2 pi a x0} z^j)] / (2 a pi^2 h^2 (j + x0/h)^2), z = e^{i 2 pi a h}
    const double c = x0 / h + static_cast<double>(k);
    if (!(c + 1.0 > 0.0)) return {0.0, inf};
    const double pref = 1.0 / (2.0 * a * pi * pi * h * h);
    const double base = hurwitz_zeta(2, 1.0 + c);
    const double phase0 = two_pi * frac(a * x0);
    const double step = frac(a * h);
    if (near_integer(a * h, integer_snap)) {
        return {pref * base * (1.0 - std::cos(phase0)), 1e-16 * pref * base};
    }
    const ComplexValue z = std::polar(1.0, two_pi * step);
    // shift so the sum starts at j = k + 1: z^{j} = z^{k} z^{j - k}
    const ComplexValue zk = std::polar(1.0, two_pi * frac(step * static_cast<double>(k)));
    const auto [osc, err] = oscillating_lattice_sum(z, c);
    const double value = base - (std::polar(1.0, phase0) * zk * osc).real();
    return {pref * value, pref * (err + 1e-16 * base)};
}

inline TailSum lat_tail(const dist::FejerDual& n, double x0, double h, long k) {
    const auto up = fejer_side(n.a, x0, h, k);
    const auto down = fejer_side(n.a, -x0, h, k);
    return {up.value + down.value, up.error + down.error};
}

inline TailSum lat_tail(const dist::Affine& n, double x0, double h, long k) {
    const auto inner = lattice_tail(n.inner, (x0 - n.d) / n.c, h / n.c, k);
    return {inner.value / n.c, inner.error / n.c};
}

template <class T>
TailSum monotone_mass_tail(const T& n, const std::pair<double, double>& region, double x0, double h, long k) {
    const double hi_start = x0 + h * static_cast<double>(k);
    const double lo_start = x0 - h * static_cast<double>(k);
    const auto [lo, hi] = region;
    if (std::isnan(lo) || std::isnan(hi) || hi_start < hi || lo_start > lo) return {0.0, inf};
    // monotone tails: each omitted point is dominated by the mass of the cell behind it
    return {0.0, (sf(n, hi_start) + cdf(n, lo_start)) / h};
}

inline TailSum lat_tail(const dist::SeedDerived& n, double x0, double h, long k) {
    if (std::abs(h - 1.0) <= 1e-15) {
        // unit spacing telescopes: upper side is 1 - H(x0 + K), lower side H(x0 - K - 1)
        const double kk = static_cast<double>(k);
        const double upper = 1.0 - n.seed.H(x0 + kk);
        const double lower = n.seed.H(x0 - kk - 1.0);
        return {upper + lower, 4e-16};
    }
    return monotone_mass_tail(n, mono(n), x0, h, k);
}

template <class T>
TailSum lat_tail(const T& n, double x0, double h, long k) {
    return monotone_mass_tail(n, mono(n), x0, h, k);
}

} // namespace detail

inline TailSum lattice_tail(const DistributionSpec& d, double x0, double h, long k) {
    return std::visit([&](const auto& n) { return detail::lat_tail(n, x0, h, k); }, d.node().kind);
}

} // namespace benford
