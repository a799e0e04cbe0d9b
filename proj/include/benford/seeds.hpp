#pragma once

// Seed-function generators: g(y) = H(y) - H(y - 1) always wraps to U[0, 1).

#include "benford/distributions.hpp"
#include "benford/seed_function.hpp"

#include <string>
#include <vector>

namespace benford {

struct SeedViolation {
    double y;
    double value;
    std::string condition;
};

struct SeedValidation {
    bool valid = true;
    double lower_limit = 0.0; // H(-far)
    double upper_limit = 1.0; // H(+far)
    std::vector<SeedViolation> violations;
};

struct SeedValidationOptions {
    double grid_lo = -20.0;
    double grid_hi = 20.0;
    std::size_t grid_points = 4001;
    double far = 1e6;
    /// slack for the unit-interval-increase condition
    double slack = 1e-9;
    /// allowed distance of H(-far), H(+far) from 0 and 1
    double limit_tol = 1e-5;
};

inline std::vector<double> default_seed_grid(const SeedValidationOptions& opt = {}) {
    std::vector<double> grid(opt.grid_points);
    for (std::size_t i = 0; i < opt.grid_points; ++i) {
        grid[i] = opt.grid_lo + (opt.grid_hi - opt.grid_lo) * static_cast<double>(i) /
                                    static_cast<double>(opt.grid_points - 1);
    }
    return grid;
}

/// Checks the three seed conditions: H(-inf) = 0, H(+inf) = 1 (probed at
/// +-far) and H(y) - H(y - 1) >= 0 on every grid point.
inline SeedValidation validate_seed(const SeedFunction& seed, const std::vector<double>& grid,
                                    const SeedValidationOptions& opt = {}) {
    if (!seed.H) throw InvalidArgument("validate_seed: seed has no H");
    if (grid.empty() || grid.front() > -20.0 || grid.back() < 20.0) {
        throw InvalidArgument("validate_seed: grid must span at least [-20, 20]");
    }
    SeedValidation out;
    out.lower_limit = seed.H(-opt.far);
    out.upper_limit = seed.H(opt.far);
    if (!(std::abs(out.lower_limit) <= opt.limit_tol)) {
        out.violations.push_back({-opt.far, out.lower_limit, "lim H(y) = 0 as y -> -inf"});
    }
    if (!(std::abs(out.upper_limit - 1.0) <= opt.limit_tol)) {
        out.violations.push_back({opt.far, out.upper_limit, "lim H(y) = 1 as y -> +inf"});
    }
    for (double y : grid) {
        const double g = seed.H(y) - seed.H(y - 1.0);
        if (!(g >= -opt.slack)) {
            out.violations.push_back({y, g, "H(y) - H(y - 1) >= 0"});
        }
    }
    out.valid = out.violations.empty();
    return out;
}

inline SeedValidation validate_seed(const SeedFunction& seed, const SeedValidationOptions& opt = {}) {
    return validate_seed(seed, default_seed_grid(opt), opt);
}

inline double seed_pdf(const SeedFunction& seed, double y) { return seed.H(y) - seed.H(y - 1.0); }

/// Fourier coefficient of <log_c X> when X = b^Y and Y has the seed pdf:
/// (e^{-i pi rho n} / (pi rho n)) sin(pi rho n) h^(rho n), exactly 0 when
/// rho n is an integer.
inline ComplexValue seed_coefficient(const SeedFunction& seed, double rho, long n) {
    if (n == 0) throw InvalidArgument("seed_coefficient: n must be nonzero");
    if (!(rho > 0.0) || !std::isfinite(rho)) throw InvalidArgument("seed_coefficient: rho must be > 0");
    if (!seed.has_transform()) {
        throw InvalidArgument("seed '" + seed.name +
                              "' has no closed-form h transform; compute the coefficient by quadrature of the "
                              "seed pdf instead");
    }
    return detail::seed_transform(seed, rho * static_cast<double>(n));
}

} // namespace benford
