#pragma once

// Seeded samplers for the catalog and first-digit / significand statistics
// for sampled or ingested data.

#include "benford/distributions.hpp"
#include "benford/numerics.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace benford {

/// SplitMix64 finaliser, used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// mt19937_64 seeded from (seed, stream). Uniform variates are built from the
/// raw 64-bit output so sequences do not depend on the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : engine_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

    std::uint64_t bits() { return engine_(); }

    /// Uniform on the open interval (0, 1).
    double open01() { return (static_cast<double>(bits() >> 11) + 0.5) * 0x1.0p-53; }

    /// Uniform on [0, 1).
    double unit() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

struct SampleBatch {
    std::vector<double> values;
    std::uint64_t rng_seed = 0;
    std::optional<DistributionSpec> spec; // empty for external data
};

/// Rejection counters, filled by the Fejer-dual sampler.
struct RejectionStats {
    std::uint64_t proposed = 0;
    std::uint64_t accepted = 0;
};

namespace detail {

inline double fejer_draw(double a, Rng& rng, RejectionStats* stats) {
    // envelope min(a, 1 / (a pi^2 y^2)); both pieces carry mass 2 / pi
    const double knee = 1.0 / (a * pi);
    for (;;) {
        const double y_abs = rng.unit() < 0.5 ? knee * rng.unit() : knee / rng.open01();
        const double y = rng.unit() < 0.5 ? -y_abs : y_abs;
        const double envelope = y_abs <= knee ? a : 1.0 / (a * pi * pi * y * y);
        if (stats) ++stats->proposed;
        if (rng.unit() * envelope <= pdf(dist::FejerDual{a}, y)) {
            if (stats) ++stats->accepted;
            return y;
        }
    }
}

inline double triangular_quantile(double p) {
    return p < 0.5 ? -1.0 + std::sqrt(2.0 * p) : 1.0 - std::sqrt(2.0 * (1.0 - p));
}

inline double laplace_quantile(double p) { return p < 0.5 ? std::log(2.0 * p) : -std::log(2.0 * (1.0 - p)); }

} // namespace detail

/// One draw from `d`.
inline double draw(const DistributionSpec& d, Rng& rng, RejectionStats* stats = nullptr) {
    struct Visitor {
        Rng& rng;
        RejectionStats* stats;
        double operator()(const dist::Normal& n) const { return n.m + n.s * normal_quantile(rng.open01()); }
        double operator()(const dist::UniformSym& n) const { return n.a * (2.0 * rng.unit() - 1.0); }
        double operator()(const dist::UniformZero& n) const { return n.a * rng.unit(); }
        double operator()(const dist::Triangular& n) const { return n.a * detail::triangular_quantile(rng.open01()); }
        double operator()(const dist::FejerDual& n) const { return detail::fejer_draw(n.a, rng, stats); }
        double operator()(const dist::Gamma& n) const {
            return n.beta * boost::math::gamma_p_inv(n.alpha, rng.open01());
        }
        double operator()(const dist::BilateralExp& n) const {
            return n.m + n.s * detail::laplace_quantile(rng.open01());
        }
        double operator()(const dist::Cauchy& n) const { return n.m + n.s * std::tan(pi * (rng.open01() - 0.5)); }
        double operator()(const dist::Rect&) const { return rng.unit() - 0.5; }
        double operator()(const dist::Tri&) const { return detail::triangular_quantile(rng.open01()); }
        double operator()(const dist::Affine& n) const { return n.c * draw(n.inner, rng, stats) + n.d; }
        double operator()(const dist::Convolution& n) const {
            const double left = draw(n.left, rng, stats);
            return left + draw(n.right, rng, stats);
        }
        double operator()(const dist::SeedDerived& n) const {
            // g = h * U[0, 1): a draw from H plus an independent uniform
            if (!n.seed.quantile) {
                throw InvalidArgument("seed '" + n.seed.name + "' has no quantile function; cannot sample");
            }
            const double z = n.seed.quantile(rng.open01());
            return z + rng.unit();
        }
    };
    return std::visit(Visitor{rng, stats}, d.node().kind);
}

/// n i.i.d. draws, bit-identical for identical (spec, n, seed, stream).
inline SampleBatch sample(const DistributionSpec& d, std::size_t n, std::uint64_t seed, std::uint64_t stream = 0,
                          RejectionStats* stats = nullptr) {
    if (n < 1) throw InvalidArgument("sample: n must be >= 1");
    SampleBatch batch;
    batch.rng_seed = seed;
    batch.spec = d;
    batch.values.reserve(n);
    Rng rng(seed, stream);
    for (std::size_t i = 0; i < n; ++i) batch.values.push_back(draw(d, rng, stats));
    return batch;
}

/// Maps each value through y -> b^y (turns draws of log_b X into draws of X).
inline SampleBatch exponentiate(SampleBatch batch, const Base& b) {
    for (double& v : batch.values) v = std::pow(b.value(), v);
    return batch;
}

// ---------------------------------------------------------------------------
// statistics

struct DigitLawReport {
    int base = 10;
    std::size_t n = 0;        // values used
    std::size_t excluded = 0; // nonpositive or non-finite values dropped
    std::vector<std::size_t> counts;
    std::vector<double> observed;
    std::vector<double> expected;
    double chi_square = 0.0;
    int dof = 0;
    double critical_999 = 0.0;
    bool pass = true;

    friend bool operator==(const DigitLawReport&, const DigitLawReport&) = default;
};

namespace detail {

inline std::vector<double> positive_values(const std::vector<double>& data, std::size_t& excluded) {
    std::vector<double> out;
    out.reserve(data.size());
    excluded = 0;
    for (double v : data) {
        if (v > 0.0 && std::isfinite(v)) out.push_back(v);
        else ++excluded;
    }
    if (out.empty()) throw InputError("no positive values to analyse");
    return out;
}

inline double chi_square_critical(int dof, double level = 0.999) {
    if (dof < 1) return std::numeric_limits<double>::infinity();
    return boost::math::quantile(boost::math::chi_squared_distribution<double>(dof), level);
}

} // namespace detail

/// Pr(D1 = d) = log_b(1 + 1/d).
inline double first_digit_probability(int d, const Base& b) { return log_base(1.0 + 1.0 / d, b); }

namespace detail {

inline DigitLawReport digit_report(const std::vector<int>& digit_of, std::size_t excluded, const Base& b) {
    DigitLawReport r;
    r.base = static_cast<int>(b.value());
    r.excluded = excluded;
    r.n = digit_of.size();
    const int digits = r.base - 1;
    r.counts.assign(static_cast<std::size_t>(digits), 0);
    for (int d : digit_of) ++r.counts[static_cast<std::size_t>(d - 1)];
    const double nn = static_cast<double>(r.n);
    for (int d = 1; d <= digits; ++d) {
        const auto i = static_cast<std::size_t>(d - 1);
        r.observed.push_back(static_cast<double>(r.counts[i]) / nn);
        r.expected.push_back(first_digit_probability(d, b));
        const double e = nn * r.expected.back();
        const double diff = static_cast<double>(r.counts[i]) - e;
        r.chi_square += diff * diff / e;
    }
    r.dof = digits - 1;
    r.critical_999 = chi_square_critical(r.dof);
    r.pass = r.chi_square < r.critical_999;
    return r;
}

inline void require_integer_base(const Base& b) {
    if (!b.is_integer()) throw InvalidArgument("first-digit statistics need an integer base >= 2");
}

} // namespace detail

inline DigitLawReport first_digit_table(const std::vector<double>& data, const Base& b) {
    detail::require_integer_base(b);
    std::size_t excluded = 0;
    const auto values = detail::positive_values(data, excluded);
    std::vector<int> digit_of;
    digit_of.reserve(values.size());
    for (double v : values) digit_of.push_back(first_digit(v, b));
    return detail::digit_report(digit_of, excluded, b);
}

/// Same table computed from y = log_b x, so draws whose b^y would overflow a
/// double still count: the significand is b^frac(y).
inline DigitLawReport first_digit_table_from_logs(const std::vector<double>& logs, const Base& b) {
    detail::require_integer_base(b);
    std::vector<int> digit_of;
    digit_of.reserve(logs.size());
    std::size_t excluded = 0;
    const int top = static_cast<int>(b.value()) - 1;
    for (double y : logs) {
        if (!std::isfinite(y)) {
            ++excluded;
            continue;
        }
        const int d = static_cast<int>(std::floor(std::pow(b.value(), frac(y))));
        digit_of.push_back(std::clamp(d, 1, top));
    }
    if (digit_of.empty()) throw InputError("no finite values to analyse");
    return detail::digit_report(digit_of, excluded, b);
}

/// max over s_j = 1 + (b - 1) j / grid of |Pr_emp(S_b <= s_j) - log_b(s_j)|.
inline double significand_cdf_distance(const std::vector<double>& data, const Base& b, int grid = 10000) {
    if (grid < 1) throw InvalidArgument("significand_cdf_distance: grid must be >= 1");
    std::size_t excluded = 0;
    const auto values = detail::positive_values(data, excluded);
    std::vector<double> t;
    t.reserve(values.size());
    for (double v : values) t.push_back(log_base(significand(v, b).significand, b));
    std::sort(t.begin(), t.end());
    const double nn = static_cast<double>(t.size());
    double worst = 0.0;
    for (int j = 0; j < grid; ++j) {
        const double s = 1.0 + (b.value() - 1.0) * j / grid;
        const double target = log_base(s, b);
        const auto count = std::upper_bound(t.begin(), t.end(), target) - t.begin();
        worst = std::max(worst, std::abs(static_cast<double>(count) / nn - target));
    }
    return worst;
}

struct UniformityReport {
    double statistic = 0.0;
    int dof = 0;
    double critical_999 = 0.0;
    std::size_t n = 0;
    std::size_t excluded = 0;
    bool pass = true;
};

/// Chi-square of frac(log_b x) binned into `bins` equal cells against U[0, 1).
inline UniformityReport frac_uniformity(const std::vector<double>& data, const Base& b, int bins = 20) {
    if (bins < 2) throw InvalidArgument("frac_uniformity: bins must be >= 2");
    UniformityReport r;
    const auto values = detail::positive_values(data, r.excluded);
    r.n = values.size();
    std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
    for (double v : values) {
        const double u = frac(log_base(v, b));
        const auto k = std::min(static_cast<std::size_t>(u * bins), counts.size() - 1);
        ++counts[k];
    }
    const double e = static_cast<double>(r.n) / bins;
    for (auto c : counts) {
        const double diff = static_cast<double>(c) - e;
        r.statistic += diff * diff / e;
    }
    r.dof = bins - 1;
    r.critical_999 = detail::chi_square_critical(r.dof);
    r.pass = r.statistic < r.critical_999;
    return r;
}

// ---------------------------------------------------------------------------
// ingestion

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '"'))
        s.remove_suffix(1);
    return s;
}

inline std::optional<double> parse_real(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

inline std::optional<std::string_view> field(std::string_view line, std::size_t column) {
    for (std::size_t i = 0; i < column; ++i) {
        const auto comma = line.find(',');
        if (comma == std::string_view::npos) return std::nullopt;
        line.remove_prefix(comma + 1);
    }
    return line.substr(0, line.find(','));
}

} // namespace detail

/// Reads one numeric column (0-based) from CSV text. A first row whose field
/// does not parse as a number is taken as a header; blank lines are skipped.
inline std::vector<double> read_csv_column(std::istream& in, std::size_t column = 0) {
    std::vector<double> out;
    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const auto f = detail::field(line, column);
        if (!f) {
            throw InputError("line " + std::to_string(line_no) + ": no column " + std::to_string(column));
        }
        const auto v = detail::parse_real(*f);
        if (!v) {
            if (first) {
                first = false;
                continue;
            }
            throw InputError("line " + std::to_string(line_no) + ": cannot parse '" + std::string(detail::trim(*f)) +
                             "' as a number");
        }
        first = false;
        out.push_back(*v);
    }
    if (out.empty()) throw InputError("no numeric data in column " + std::to_string(column));
    return out;
}

inline std::vector<double> read_csv_column(const std::string& path, std::size_t column = 0) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return read_csv_column(in, column);
}

} // namespace benford
