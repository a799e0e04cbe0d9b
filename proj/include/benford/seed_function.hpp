#pragma once

#include "benford/numerics.hpp"

#include <functional>
#include <string>

namespace benford {

/// A "unit interval increasing" function H with limits 0 and 1 at -inf and
/// +inf. The pdf it generates is g(y) = H(y) - H(y - 1).
///
/// `h` must be the analytic derivative of H. `h_transform` (the Fourier
/// transform of h) enables closed-form coefficients; `h_transform_tail`
/// bounds the integral of |h_transform| over [X, inf) and `quantile` inverts
/// H when H is a cdf, which makes the generated law samplable as Z + U.
struct SeedFunction {
    std::string name = "custom";
    double mu = 0.0;
    double sigma = 1.0;
    std::function<double(double)> H;
    std::function<double(double)> h;
    std::function<ComplexValue(double)> h_transform;
    std::function<double(double)> h_transform_tail;
    std::function<double(double)> quantile;
    /// Mode of g when known (built-in seeds: mu + 1/2); NaN otherwise.
    double mode = std::numeric_limits<double>::quiet_NaN();

    bool has_transform() const noexcept { return static_cast<bool>(h_transform); }

    friend bool operator==(const SeedFunction& a, const SeedFunction& b) {
        if (a.name == "custom" || b.name == "custom") {
            return &a == &b;
        }
        return a.name == b.name && a.mu == b.mu && a.sigma == b.sigma;
    }
};

namespace detail {

inline void check_seed_params(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw InvalidArgument("seed sigma must be a finite real > 0");
    }
}

// e^{-2 pi i t} with the argument reduced mod 1 first
inline ComplexValue unit_phase(double t) {
    const double r = t - std::nearbyint(t);
    return std::polar(1.0, -two_pi * r);
}

} // namespace detail

/// Gauss-Benford seed: H is the N(mu, sigma^2) cdf.
inline SeedFunction gauss_seed(double mu, double sigma) {
    detail::check_seed_params(sigma);
    SeedFunction s;
    s.name = "gauss";
    s.mu = mu;
    s.sigma = sigma;
    s.H = [mu, sigma](double y) { return normal_cdf((y - mu) / sigma); };
    s.h = [mu, sigma](double y) {
        const double z = (y - mu) / sigma;
        return std::exp(-0.5 * z * z) / (sigma * std::sqrt(two_pi));
    };
    s.h_transform = [mu, sigma](double xi) {
        return detail::unit_phase(mu * xi) * std::exp(-2.0 * pi * pi * sigma * sigma * xi * xi);
    };
    s.h_transform_tail = [sigma](double x) {
        const double k = std::sqrt(2.0) * pi * sigma;
        return std::sqrt(pi) / (2.0 * k) * std::erfc(k * std::max(x, 0.0));
    };
    s.quantile = [mu, sigma](double p) { return mu + sigma * normal_quantile(p); };
    s.mode = mu + 0.5;
    return s;
}

/// Cauchy-Benford seed: H is the Cauchy(mu, sigma) cdf.
inline SeedFunction cauchy_seed(double mu, double sigma) {
    detail::check_seed_params(sigma);
    SeedFunction s;
    s.name = "cauchy";
    s.mu = mu;
    s.sigma = sigma;
    s.H = [mu, sigma](double y) { return std::atan2(1.0, -(y - mu) / sigma) / pi; };
    s.h = [mu, sigma](double y) {
        const double z = (y - mu) / sigma;
        return 1.0 / (pi * sigma * (1.0 + z * z));
    };
    s.h_transform = [mu, sigma](double xi) {
        return detail::unit_phase(mu * xi) * std::exp(-two_pi * sigma * std::abs(xi));
    };
    s.h_transform_tail = [sigma](double x) {
        return std::exp(-two_pi * sigma * std::max(x, 0.0)) / (two_pi * sigma);
    };
    s.quantile = [mu, sigma](double p) { return mu + sigma * std::tan(pi * (p - 0.5)); };
    s.mode = mu + 0.5;
    return s;
}

/// Laplace-Benford seed: H is the Laplace(mu, sigma) cdf.
inline SeedFunction laplace_seed(double mu, double sigma) {
    detail::check_seed_params(sigma);
    SeedFunction s;
    s.name = "laplace";
    s.mu = mu;
    s.sigma = sigma;
    s.H = [mu, sigma](double y) {
        const double z = (y - mu) / sigma;
        return z < 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
    };
    s.h = [mu, sigma](double y) { return std::exp(-std::abs(y - mu) / sigma) / (2.0 * sigma); };
    s.h_transform = [mu, sigma](double xi) {
        return detail::unit_phase(mu * xi) / (1.0 + 4.0 * pi * pi * sigma * sigma * xi * xi);
    };
    s.h_transform_tail = [sigma](double x) {
        return (pi / 2.0 - std::atan(two_pi * sigma * std::max(x, 0.0))) / (two_pi * sigma);
    };
    s.quantile = [mu, sigma](double p) {
        return p < 0.5 ? mu + sigma * std::log(2.0 * p) : mu - sigma * std::log(2.0 * (1.0 - p));
    };
    s.mode = mu + 0.5;
    return s;
}

/// Look up a built-in seed by name ("gauss", "cauchy", "laplace").
inline SeedFunction builtin_seed(const std::string& name, double mu, double sigma) {
    if (name == "gauss") return gauss_seed(mu, sigma);
    if (name == "cauchy") return cauchy_seed(mu, sigma);
    if (name == "laplace") return laplace_seed(mu, sigma);
    throw InvalidArgument("unknown seed family '" + name + "' (expected gauss, cauchy or laplace)");
}

} // namespace benford
