#pragma once

// Base, significand and fractional-part machinery shared by every other module.

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace benford {

/// Raised for out-of-domain arguments (nonpositive scale, base <= 1, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a requested numerical tolerance cannot be met.
class ToleranceError : public std::runtime_error {
public:
    ToleranceError(const std::string& what, double achievable)
        : std::runtime_error(what), achievable_(achievable) {}
    double achievable() const noexcept { return achievable_; }

private:
    double achievable_;
};

/// Raised for unreadable or unusable input data.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using ComplexValue = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Logarithm base b > 1 together with its reciprocal log, Λ_b = 1/ln(b).
class Base {
public:
    explicit Base(double b) : b_(b) {
        if (!(b > 1.0) || !std::isfinite(b)) {
            throw InvalidArgument("base must be a finite real > 1, got " + std::to_string(b));
        }
        ln_ = std::log(b);
    }

    double value() const noexcept { return b_; }
    double ln() const noexcept { return ln_; }
    double lambda() const noexcept { return 1.0 / ln_; }
    bool is_integer() const noexcept { return b_ == std::floor(b_); }

    friend bool operator==(const Base&, const Base&) = default;

private:
    double b_;
    double ln_;
};

struct SignificandDecomposition {
    double significand;
    std::int64_t exponent;
};

/// Fractional part y - floor(y), always in [0, 1).
inline double frac(double y) {
    if (!std::isfinite(y)) {
        throw InvalidArgument("frac: non-finite input");
    }
    double r = y - std::floor(y);
    // y slightly below an integer can round up to exactly 1
    if (r >= 1.0) r = 0.0;
    return r;
}

inline double log_base(double x, const Base& b) {
    if (!(x > 0.0)) {
        throw InvalidArgument("log_base: argument must be positive");
    }
    return std::log(x) * b.lambda();
}

/// x = significand * b^exponent with significand in [1, b).
///
/// The exponent comes from the log domain; the significand is then recovered
/// by scaling with b^-k in two halves so extreme exponents neither overflow
/// nor underflow, and one correction step fixes off-by-one exponents caused by
/// rounding of log_b(x) near integers.
inline SignificandDecomposition significand(double x, const Base& b) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw InvalidArgument("significand: argument must be positive and finite");
    }
    const double bv = b.value();
    auto k = static_cast<std::int64_t>(std::floor(log_base(x, b)));
    auto scale = [&](std::int64_t e) {
        const std::int64_t half = e / 2;
        return x * std::pow(bv, static_cast<double>(-half)) *
               std::pow(bv, static_cast<double>(-(e - half)));
    };
    double s = scale(k);
    if (s >= bv) {
        ++k;
        s = scale(k);
    } else if (s < 1.0) {
        --k;
        s = scale(k);
    }
    // last-ulp rounding of the rescale
    if (s >= bv) s = std::nextafter(bv, 0.0);
    if (s < 1.0) s = 1.0;
    return {s, k};
}

/// Leading base-b digit of x; only meaningful for integer bases.
inline int first_digit(double x, const Base& b) {
    if (!b.is_integer()) {
        throw InvalidArgument("first_digit: base must be an integer >= 2");
    }
    const auto d = static_cast<int>(std::floor(significand(x, b).significand));
    return std::min(d, static_cast<int>(b.value()) - 1);
}

/// sin(pi * x) with exact zeros at integers and argument reduction before
/// multiplying by pi. Values of x within `snap` (relative) of an integer are
/// treated as that integer.
inline double sin_pi(double x, double snap = 0.0) {
    const double n = std::nearbyint(x);
    const double r = x - n;
    if (r == 0.0 || std::abs(r) <= snap * std::max(1.0, std::abs(x))) return 0.0;
    const double s = std::sin(pi * r);
    return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

/// True when x is within `snap` (relative) of an integer.
inline bool near_integer(double x, double snap) {
    return std::abs(x - std::nearbyint(x)) <= snap * std::max(1.0, std::abs(x));
}

/// Sine integral Si(x) = int_0^x sin(t)/t dt.
///
/// Power series for |x| <= 2, otherwise the continued fraction for E1(ix)
/// evaluated with the modified Lentz method.
inline double sine_integral(double x) {
    const double ax = std::abs(x);
    double result;
    if (ax <= 2.0) {
        double term = ax;
        double sum = ax;
        const double x2 = ax * ax;
        for (int k = 1; k < 60; ++k) {
            term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
            const double add = term / (2.0 * k + 1.0);
            sum += add;
            if (std::abs(add) < 1e-17 * std::abs(sum)) break;
        }
        result = sum;
    } else {
        const double tiny = 1e-300;
        std::complex<double> b(1.0, ax);
        std::complex<double> c(1.0 / tiny, 0.0);
        std::complex<double> d = 1.0 / b;
        std::complex<double> h = d;
        for (int i = 2; i < 1000; ++i) {
            const double a = -static_cast<double>((i - 1) * (i - 1));
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            const std::complex<double> del = c * d;
            h *= del;
            if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < 1e-16) break;
        }
        h *= std::complex<double>(std::cos(ax), -std::sin(ax));
        result = pi / 2.0 + h.imag();
    }
    return x < 0.0 ? -result : result;
}

/// Standard normal cdf and survival function.
inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }
inline double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }
inline double normal_quantile(double p) { return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p); }

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    CompensatedSum& operator+=(double v) {
        add(v);
        return *this;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace benford
