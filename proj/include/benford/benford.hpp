#pragma once

// Benford verdicts, spectrum scans over analysis bases, the three seed-derived
// families and Whittaker's variable.

#include "benford/distributions.hpp"
#include "benford/numerics.hpp"
#include "benford/parallel.hpp"
#include "benford/seed_function.hpp"
#include "benford/wrapped.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace benford {

inline constexpr double default_epsilon = 1e-9;
inline constexpr int default_n_max = 32;
inline constexpr int default_grid = 4096;

struct BenfordReport {
    std::optional<Base> base;
    CoefficientSet coefficients;
    double max_coefficient = 0.0;
    double sup_dev = 0.0;
    double bound = 0.0;
    double epsilon = default_epsilon;
    bool verdict = false;

    friend bool operator==(const BenfordReport&, const BenfordReport&) = default;
};

/// Verdict for the wrapped law of Y (the log density at the analysis base):
/// Benford iff max_{1 <= n <= n_max} |c_n| <= epsilon.
inline BenfordReport is_benford(const DistributionSpec& y, double epsilon = default_epsilon,
                                int n_max = default_n_max, int grid = default_grid) {
    if (!(epsilon > 0.0)) throw InvalidArgument("is_benford: epsilon must be > 0");
    BenfordReport r;
    r.epsilon = epsilon;
    r.coefficients = coefficients(y, n_max);
    for (int n = 1; n <= n_max; ++n) r.max_coefficient = std::max(r.max_coefficient, std::abs(r.coefficients.at(n)));
    r.sup_dev = sup_deviation(r.coefficients, grid);
    r.bound = deviation_bound(r.coefficients);
    r.verdict = r.max_coefficient <= epsilon;
    return r;
}

/// rho = ln(b) / ln(c); log_c X = rho log_b X.
inline double rho(const Base& b, const Base& c) { return b.ln() / c.ln(); }

// ---------------------------------------------------------------------------
// families

enum class FamilyKind { Gauss, Cauchy, Laplace };

struct BenfordFamily {
    FamilyKind kind = FamilyKind::Gauss;
    double mu = 0.0;
    double sigma = 1.0;

    BenfordFamily() = default;
    BenfordFamily(FamilyKind k, double m, double s) : kind(k), mu(m), sigma(s) {
        if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("family sigma must be a finite real > 0");
        if (!std::isfinite(m)) throw InvalidArgument("family mu must be finite");
    }
    friend bool operator==(const BenfordFamily&, const BenfordFamily&) = default;
};

inline std::string family_kind_name(FamilyKind k) {
    switch (k) {
    case FamilyKind::Gauss: return "gauss";
    case FamilyKind::Cauchy: return "cauchy";
    case FamilyKind::Laplace: return "laplace";
    }
    return "gauss";
}

inline FamilyKind parse_family_kind(const std::string& name) {
    if (name == "gauss") return FamilyKind::Gauss;
    if (name == "cauchy") return FamilyKind::Cauchy;
    if (name == "laplace") return FamilyKind::Laplace;
    throw InvalidArgument("unknown family '" + name + "' (expected gauss, cauchy or laplace)");
}

inline SeedFunction family_seed(const BenfordFamily& f) {
    return builtin_seed(family_kind_name(f.kind), f.mu, f.sigma);
}

/// Density of log_b X for the family member built at base b.
inline DistributionSpec family_log_density(const BenfordFamily& f) { return seed_derived(family_seed(f)); }

/// The same density written with catalog nodes: h * U[0, 1).
inline DistributionSpec family_explicit_density(const BenfordFamily& f) {
    DistributionSpec h = [&] {
        switch (f.kind) {
        case FamilyKind::Cauchy: return cauchy(f.mu, f.sigma);
        case FamilyKind::Laplace: return bilateral_exp(f.mu, f.sigma);
        case FamilyKind::Gauss: break;
        }
        return normal(f.mu, f.sigma);
    }();
    return convolve(h, uniform_zero(1.0));
}

/// Damping factor C_n of the family at base ratio rho.
inline double family_damping(const BenfordFamily& f, double rho_value, long n) {
    const double x = f.sigma * rho_value * static_cast<double>(n);
    switch (f.kind) {
    case FamilyKind::Gauss: return std::exp(-2.0 * pi * pi * x * x);
    case FamilyKind::Cauchy: return std::exp(-two_pi * x);
    case FamilyKind::Laplace: return 1.0 / (1.0 + 4.0 * pi * pi * x * x);
    }
    return 0.0;
}

struct FamilyAmplitude {
    double amplitude; // signed; zero exactly when rho n is an integer
    double phase;     // frac(rho (1/2 + mu)), independent of n
};

inline FamilyAmplitude family_amplitude(const BenfordFamily& f, double rho_value, long n) {
    if (!(rho_value > 0.0) || !std::isfinite(rho_value)) throw InvalidArgument("family_amplitude: rho must be > 0");
    if (n < 1) throw InvalidArgument("family_amplitude: n must be >= 1");
    const double x = rho_value * static_cast<double>(n);
    const double s = sin_pi(x, detail::integer_snap);
    const double amp = s == 0.0 ? 0.0 : 2.0 * s / (pi * x) * family_damping(f, rho_value, n);
    return {amp, frac(rho_value * (0.5 + f.mu))};
}

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumPoint {
    double c;
    double rho;
    double deviation;
    bool member;
    friend bool operator==(const SpectrumPoint&, const SpectrumPoint&) = default;
};

struct SpectrumReport {
    std::vector<SpectrumPoint> points;
    double epsilon = default_epsilon;
    int n_max = default_n_max;
    friend bool operator==(const SpectrumReport&, const SpectrumReport&) = default;
};

/// max_{1 <= n <= n_max} |g^(rho n)|: the largest coefficient of log_c X.
inline double spectrum_deviation(const DistributionSpec& y_b, double rho_value, int n_max) {
    double worst = 0.0;
    for (int n = 1; n <= n_max; ++n) worst = std::max(worst, std::abs(ft_eval(y_b, rho_value * n)));
    return worst;
}

/// n points geometrically spaced over (lo, hi]; lo itself is excluded.
inline std::vector<double> geometric_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 1.0) || !(hi > lo) || n < 1) throw InvalidArgument("geometric_grid: need 1 < lo < hi and n >= 1");
    std::vector<double> g(n);
    const double ratio = std::log(hi / lo);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = lo * std::exp(ratio * static_cast<double>(i + 1) / static_cast<double>(n));
    }
    g.back() = hi;
    return g;
}

inline std::vector<double> default_c_grid(const Base& b) { return geometric_grid(1.01, b.value() + 2.0, 512); }

inline SpectrumReport spectrum_scan(const DistributionSpec& y_b, const Base& b, const std::vector<double>& c_grid,
                                    double epsilon = default_epsilon, int n_max = default_n_max) {
    if (!(epsilon > 0.0)) throw InvalidArgument("spectrum_scan: epsilon must be > 0");
    if (n_max < 1) throw InvalidArgument("spectrum_scan: n_max must be >= 1");
    for (double c : c_grid) {
        if (!(c > 1.0) || !std::isfinite(c)) throw InvalidArgument("spectrum_scan: every c must be a finite real > 1");
    }
    SpectrumReport rep;
    rep.epsilon = epsilon;
    rep.n_max = n_max;
    rep.points.resize(c_grid.size());
    parallel_for(c_grid.size(), [&](std::size_t i) {
        const double r = rho(b, Base(c_grid[i]));
        const double dev = spectrum_deviation(y_b, r, n_max);
        rep.points[i] = {c_grid[i], r, dev, dev <= epsilon};
    });
    return rep;
}

/// Density of log_c X for Whittaker's X built at base b.
inline DistributionSpec whittaker_log_density(const Base& b, const Base& c) {
    return affine(fejer_dual(1.0), rho(b, c), 0.0);
}

struct SpectrumBound {
    double bound; // e^{1/r}
    double r;
    bool found; // false when Re g^ stayed positive over the whole search range
};

/// Upper bound on the spectrum from the first zero r of Re(g_ln^(w)), where
/// g_ln is the density of ln X: no base above e^{1/r} can be in the spectrum.
inline SpectrumBound spectrum_upper_bound(const DistributionSpec& y_ln, double w_max = 64.0,
                                          std::size_t grid = std::size_t{1} << 16) {
    auto re = [&](double w) { return ft_eval(y_ln, w).real(); };
    const double step = w_max / static_cast<double>(grid);
    double prev = 0.0;
    double prev_value = 1.0;
    for (std::size_t i = 1; i <= grid; ++i) {
        const double w = step * static_cast<double>(i);
        const double value = re(w);
        // a transform that has already underflowed (Gaussian tails) is not a zero crossing
        const bool crossed = value < 0.0 || (value == 0.0 && prev_value >= std::numeric_limits<double>::min());
        prev_value = value;
        if (crossed) {
            double lo = prev, hi = w;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                (re(mid) > 0.0 ? lo : hi) = mid;
            }
            return {std::exp(1.0 / hi), hi, true};
        }
        prev = w;
    }
    return {std::exp(1.0 / w_max), w_max, false};
}

} // namespace benford
