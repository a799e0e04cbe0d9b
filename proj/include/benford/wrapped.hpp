#pragma once

// Density of the fractional part <Y>, computed two ways: the lattice sum
// sum_k g(k + u) and the Fourier series with coefficients c_n = g^(n).

#include "benford/distributions.hpp"
#include "benford/numerics.hpp"
#include "benford/parallel.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

namespace benford {

/// c_0..c_{n_max} of a wrapped density; c_{-n} = conj(c_n).
struct CoefficientSet {
    int n_max = 0;
    std::vector<ComplexValue> coeffs;
    std::optional<DistributionSpec> source;
    /// Bound on 2 * sum_{n > n_max} |c_n|; +inf when the family gives none.
    double tail_bound = std::numeric_limits<double>::infinity();

    ComplexValue at(int n) const {
        if (n < 0) return std::conj(at(-n));
        return n <= n_max ? coeffs[static_cast<std::size_t>(n)] : ComplexValue{};
    }

    friend bool operator==(const CoefficientSet& a, const CoefficientSet& b) {
        if (a.n_max != b.n_max || a.coeffs != b.coeffs) return false;
        if (a.source.has_value() != b.source.has_value()) return false;
        if (a.source && !(*a.source == *b.source)) return false;
        return a.tail_bound == b.tail_bound ||
               (std::isinf(a.tail_bound) && std::isinf(b.tail_bound));
    }
};

/// Real form 1 + sum A_n cos(2 pi n (u - theta_n)), index n - 1. The
/// classical coefficients satisfy c_n = (a_n - i b_n) / 2.
struct AmplitudePhase {
    std::vector<double> amplitude;
    std::vector<double> phase;
    std::vector<double> a;
    std::vector<double> b;
};

inline constexpr long lattice_k_max = 1L << 22;

/// Truncation order K for the lattice sum at offset u: the smallest K in
/// 4, 8, 16, ... whose tail error estimate is below tol.
inline long lattice_truncation(const DistributionSpec& y, double u, double tol) {
    double best = std::numeric_limits<double>::infinity();
    for (long k = 4; k <= lattice_k_max; k *= 2) {
        const auto tail = lattice_tail(y, u, 1.0, k);
        if (tail.error < tol) return k;
        best = std::min(best, tail.error);
    }
    std::ostringstream msg;
    msg << "lattice sum for '" << family_name(y) << "' cannot reach tolerance " << tol
        << " with K <= " << lattice_k_max << "; achievable bound " << best;
    throw ToleranceError(msg.str(), best);
}

/// sum_{k=k_lo}^{k_hi} pdf(k + u) for an arbitrary density.
inline double lattice_sum(const std::function<double(double)>& pdf, double u, long k_lo, long k_hi) {
    CompensatedSum sum;
    for (long k = k_lo; k <= k_hi; ++k) sum += pdf(static_cast<double>(k) + u);
    return sum.value();
}

/// Wrapped density via the lattice sum, with the truncation order chosen from
/// the family's tail so the omitted part is below tol (or approximated
/// analytically for heavy tails).
inline double wrapped_pdf_lattice(const DistributionSpec& y, double u, double tol = 1e-10) {
    if (!(u >= 0.0 && u < 1.0)) throw InvalidArgument("wrapped_pdf_lattice: u must lie in [0, 1)");
    if (!(tol > 0.0)) throw InvalidArgument("wrapped_pdf_lattice: tol must be > 0");
    const long k = lattice_truncation(y, u, tol);
    CompensatedSum sum;
    for (long j = -k; j <= k; ++j) sum += pdf_eval(y, static_cast<double>(j) + u);
    sum += lattice_tail(y, u, 1.0, k).value;
    return sum.value();
}

/// Pr(<Y> <= u) as sum_k [G(k + u) - G(k)].
inline double wrapped_cdf(const DistributionSpec& y, double u, double tol = 1e-10) {
    if (!(u >= 0.0 && u < 1.0)) throw InvalidArgument("wrapped_cdf: u must lie in [0, 1)");
    if (!(tol > 0.0)) throw InvalidArgument("wrapped_cdf: tol must be > 0");
    if (u == 0.0) return 0.0;
    const long k = std::max(lattice_truncation(y, 0.0, tol), lattice_truncation(y, u, tol));
    CompensatedSum sum;
    for (long j = -k; j <= k; ++j) {
        const double a = static_cast<double>(j);
        sum += mass_between(y, a, a + u);
    }
    // omitted cells: int_0^u sum_{|j| > K} g(j + t) dt
    auto tail = [&](double t) { return lattice_tail(y, t, 1.0, k).value; };
    sum += boost::math::quadrature::gauss<double, 10>::integrate(tail, 0.0, u);
    return std::clamp(sum.value(), 0.0, 1.0);
}

/// c_n = g^(n) for n = 0..n_max.
inline CoefficientSet coefficients(const DistributionSpec& y, int n_max = 32) {
    if (n_max < 1) throw InvalidArgument("coefficients: n_max must be >= 1");
    CoefficientSet cs;
    cs.n_max = n_max;
    cs.source = y;
    cs.coeffs.resize(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) cs.coeffs[static_cast<std::size_t>(n)] = ft_eval(y, n);
    cs.tail_bound = 2.0 * transform_tail_integral(y, n_max);
    return cs;
}

/// Coefficient set from precomputed values c_0..c_N (e.g. from quadrature).
inline CoefficientSet coefficients_from_values(std::vector<ComplexValue> values,
                                               double tail_bound = std::numeric_limits<double>::infinity()) {
    if (values.size() < 2) throw InvalidArgument("coefficients_from_values: need c_0 and at least c_1");
    CoefficientSet cs;
    cs.n_max = static_cast<int>(values.size()) - 1;
    cs.coeffs = std::move(values);
    cs.tail_bound = tail_bound;
    return cs;
}

/// c_n = int e^{-2 pi i n y} pdf(y) dy by adaptive quadrature over the
/// breakpoints, for densities outside the closed-form catalog. The pieces
/// should cover all but a negligible part of the mass.
inline CoefficientSet coefficients_by_quadrature(const std::function<double(double)>& pdf,
                                                 const std::vector<double>& breaks, int n_max = 32,
                                                 double abs_tol = 1e-13) {
    if (n_max < 1) throw InvalidArgument("coefficients_by_quadrature: n_max must be >= 1");
    if (breaks.size() < 2) throw InvalidArgument("coefficients_by_quadrature: need at least two breakpoints");
    std::vector<ComplexValue> values(static_cast<std::size_t>(n_max) + 1);
    parallel_for(values.size(), [&](std::size_t n) {
        const double xi = static_cast<double>(n);
        // subdivide so every piece spans at most half a period of the integrand
        std::vector<double> fine{breaks.front()};
        const double width = n == 0 ? 1.0 : 0.5 / xi;
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
            const double len = breaks[i + 1] - breaks[i];
            const auto parts = static_cast<long>(std::max(1.0, std::ceil(len / width)));
            for (long p = 1; p <= parts; ++p) {
                fine.push_back(breaks[i] + len * static_cast<double>(p) / static_cast<double>(parts));
            }
        }
        auto re = [&](double y) { return pdf(y) * std::cos(two_pi * frac(xi * y)); };
        auto im = [&](double y) { return -pdf(y) * std::sin(two_pi * frac(xi * y)); };
        values[n] = {quad::integrate_pieces(re, fine, abs_tol, 1e-14).value,
                     quad::integrate_pieces(im, fine, abs_tol, 1e-14).value};
    });
    return coefficients_from_values(std::move(values));
}

namespace detail {

// sum_{n=1}^{N} 2 Re(c_n e^{2 pi i n u})
inline double series_oscillation(const CoefficientSet& cs, double u) {
    CompensatedSum sum;
    for (int n = 1; n <= cs.n_max; ++n) {
        const double t = frac(static_cast<double>(n) * u);
        const ComplexValue e = std::polar(1.0, two_pi * t);
        sum += 2.0 * (cs.coeffs[static_cast<std::size_t>(n)] * e).real();
    }
    return sum.value();
}

} // namespace detail

/// 1 + sum_{n=1}^{N} 2 Re(c_n e^{2 pi i n u}).
inline double wrapped_pdf_series(const CoefficientSet& cs, double u) {
    return cs.coeffs.empty() ? 1.0 : cs.coeffs[0].real() + detail::series_oscillation(cs, u);
}

/// Large-n expansion c_n ~ e^{-2 pi i n shift} sum_j a_j n^{-2j} of a
/// coefficient sequence that decays only algebraically.
struct SeriesAsymptotics {
    double shift = 0.0;
    std::vector<double> a; // a[0] multiplies n^-2, a[1] n^-4, ...
    double c = 0.0;        // decay scale: the expansion is in powers of (c n)^-2
};

namespace detail {

inline constexpr int asymptotic_terms = 3;

inline std::optional<SeriesAsymptotics> asymptotics(const DistributionSpec& d) {
    if (const auto* b = std::get_if<dist::BilateralExp>(&d.node().kind)) {
        // 1 / (1 + k^2 n^2) = sum_j (-1)^{j+1} (k n)^{-2j}, k = 2 pi s
        SeriesAsymptotics s;
        s.shift = b->m;
        const double k2 = (two_pi * b->s) * (two_pi * b->s);
        double p = 1.0;
        for (int j = 1; j <= asymptotic_terms; ++j) {
            p /= k2;
            s.a.push_back(j % 2 == 1 ? p : -p);
        }
        s.c = std::sqrt(k2);
        return s;
    }
    if (const auto* af = std::get_if<dist::Affine>(&d.node().kind)) {
        auto inner = asymptotics(af->inner);
        if (!inner) return std::nullopt;
        inner->shift = af->d + af->c * inner->shift;
        double p = 1.0;
        for (double& v : inner->a) {
            p /= af->c * af->c;
            v *= p;
        }
        inner->c *= af->c;
        return inner;
    }
    return std::nullopt;
}

// sum_{n >= 1} cos(2 pi n t) / n^{2j} for t in [0, 1), j = 1..3, from the
// Bernoulli polynomials B_2, B_4, B_6
inline double cosine_zeta(int j, double t) {
    const double t2 = t * t;
    switch (j) {
    case 1: return pi * pi * (t2 - t + 1.0 / 6.0);
    case 2: return -std::pow(pi, 4) / 3.0 * (t2 * t2 - 2.0 * t2 * t + t2 - 1.0 / 30.0);
    case 3:
        return 2.0 * std::pow(pi, 6) / 45.0 *
               (t2 * t2 * t2 - 3.0 * t2 * t2 * t + 2.5 * t2 * t2 - 0.5 * t2 + 1.0 / 42.0);
    default: throw InvalidArgument("cosine_zeta: j must be 1, 2 or 3");
    }
}

} // namespace detail

/// Approximation of sum_{n > n_max} 2 Re(c_n e^{2 pi i n u}) from the source
/// family's asymptotic expansion (Kummer's transformation). Zero value with
/// error = tail_bound when the family has no expansion.
inline TailSum series_tail(const CoefficientSet& cs, double u) {
    const auto as = cs.source ? detail::asymptotics(*cs.source) : std::nullopt;
    if (!as) return {0.0, cs.tail_bound};
    const double t = frac(u - as->shift);
    CompensatedSum sum;
    for (std::size_t j = 0; j < as->a.size(); ++j) {
        const int p = 2 * static_cast<int>(j + 1);
        // full series minus the first n_max terms
        CompensatedSum head;
        for (int n = 1; n <= cs.n_max; ++n) {
            head += std::cos(two_pi * frac(static_cast<double>(n) * t)) / std::pow(static_cast<double>(n), p);
        }
        sum += 2.0 * as->a[j] * (detail::cosine_zeta(static_cast<int>(j + 1), t) - head.value());
    }
    // first omitted term of the alternating expansion bounds the remainder
    const int p_next = 2 * static_cast<int>(as->a.size()) + 2;
    const double err = 2.0 * std::pow(as->c, -p_next) * std::pow(static_cast<double>(cs.n_max), 1 - p_next) /
                           (p_next - 1) + 1e-15;
    return {sum.value(), err};
}

/// Truncated series plus series_tail: the full Fourier series for families
/// whose coefficients decay algebraically.
inline double wrapped_pdf_series_full(const CoefficientSet& cs, double u) {
    return wrapped_pdf_series(cs, u) + series_tail(cs, u).value;
}

/// A_n = 2|c_n| >= 0 and theta_n in [0, 1/n) from atan2(b_n, a_n); theta_n = 0
/// whenever A_n = 0.
inline AmplitudePhase amplitude_phase(const CoefficientSet& cs) {
    AmplitudePhase ap;
    const auto count = static_cast<std::size_t>(cs.n_max);
    ap.amplitude.resize(count);
    ap.phase.resize(count);
    ap.a.resize(count);
    ap.b.resize(count);
    for (int n = 1; n <= cs.n_max; ++n) {
        const auto i = static_cast<std::size_t>(n - 1);
        const ComplexValue c = cs.coeffs[static_cast<std::size_t>(n)];
        ap.a[i] = 2.0 * c.real();
        ap.b[i] = -2.0 * c.imag();
        ap.amplitude[i] = 2.0 * std::abs(c);
        if (ap.amplitude[i] == 0.0) {
            ap.phase[i] = 0.0;
            continue;
        }
        double angle = std::atan2(ap.b[i], ap.a[i]);
        if (angle < 0.0) angle += two_pi;
        double theta = angle / (two_pi * n);
        if (theta >= 1.0 / n) theta = 0.0;
        ap.phase[i] = theta;
    }
    return ap;
}

/// max_u |g~(u) - 1| of the truncated series on a uniform grid, refined once
/// around the grid maximiser by golden-section search.
inline double sup_deviation(const CoefficientSet& cs, int grid_size = 4096) {
    if (grid_size < 64) throw InvalidArgument("sup_deviation: grid_size must be >= 64");
    std::vector<double> dev(static_cast<std::size_t>(grid_size));
    parallel_for(dev.size(), [&](std::size_t j) {
        const double u = static_cast<double>(j) / grid_size;
        dev[j] = std::abs(wrapped_pdf_series(cs, u) - 1.0);
    });
    std::size_t arg = 0;
    for (std::size_t j = 1; j < dev.size(); ++j) {
        if (dev[j] > dev[arg]) arg = j;
    }
    double best = dev[arg];
    if (best == 0.0) return 0.0;

    auto f = [&](double u) { return std::abs(wrapped_pdf_series(cs, u - std::floor(u)) - 1.0); };
    const double step = 1.0 / grid_size;
    double lo = static_cast<double>(arg) * step - step;
    double hi = static_cast<double>(arg) * step + step;
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - ratio * (hi - lo);
    double x2 = lo + ratio * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 60; ++it) {
        if (f1 > f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        }
    }
    return std::max({best, f1, f2});
}

/// 2 sum_{n=1}^{N} |c_n| plus the family's bound on the omitted coefficients.
inline double deviation_bound(const CoefficientSet& cs) {
    CompensatedSum sum;
    for (int n = 1; n <= cs.n_max; ++n) sum += 2.0 * std::abs(cs.coeffs[static_cast<std::size_t>(n)]);
    return sum.value() + cs.tail_bound;
}

/// R(s) = exp(-2 pi^2 s^2).
inline double lognormal_r(double s) { return std::exp(-2.0 * pi * pi * s * s); }

/// 2 R(s) / (1 - R(s)) with s = sigma / ln(b): sup-norm bound for the wrapped
/// log-density of a lognormal variable.
inline double lognormal_bound(double sigma, const Base& b) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("lognormal_bound: sigma must be > 0");
    const double r = lognormal_r(sigma * b.lambda());
    if (r >= 1.0) return std::numeric_limits<double>::infinity();
    return 2.0 * r / (1.0 - r);
}

} // namespace benford
