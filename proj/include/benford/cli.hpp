#pragma once

// Command-line front end. run_cli is the whole program; main() only forwards
// to it so tests can drive the CLI in-process.

#include "benford/benford.hpp"
#include "benford/json_io.hpp"
#include "benford/sampling.hpp"
#include "benford/seeds.hpp"
#include "benford/wrapped.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace benford::cli {

enum ExitCode : int { ok = 0, failure = 1, usage = 2, input_data = 3, tolerance = 4 };

struct Options {
    // model
    std::string dist;
    std::string spec_path;
    std::string family;
    double mu = 0.0;
    double sigma = 1.0;
    double a = 1.0;
    double alpha = 1.0;
    double beta = 1.0;
    std::optional<double> gen_base;
    std::optional<double> base;
    // analysis
    int n_max = default_n_max;
    double epsilon = default_epsilon;
    int grid = default_grid;
    int grid_points = 256;
    std::string grid_out;
    std::optional<double> c_min;
    std::optional<double> c_max;
    int c_points = 512;
    // sampling / data
    std::size_t n = 1000;
    std::uint64_t seed = 0;
    bool exponentiate = false;
    std::string input;
    std::size_t column = 0;
    int bins = 20;
    int sig_grid = 10000;
    // output
    std::string format;
    std::string out;
};

/// Density of log_b X at its generation base b, plus how to turn draws into X.
struct LogModel {
    DistributionSpec y;
    double gen_base;
    std::string kind;
    bool draws_are_x; // sample emits b^Y rather than Y
};

namespace detail {

inline const char* catalog_names = "normal, uniform_sym, uniform_zero, triangular, fejer_dual, gamma, "
                                   "bilateral_exp, cauchy, rect, tri, lognormal, whittaker";

inline DistributionSpec catalog_from_flags(const Options& o) {
    const auto& d = o.dist;
    if (d == "normal") return normal(o.mu, o.sigma);
    if (d == "uniform_sym") return uniform_sym(o.a);
    if (d == "uniform_zero") return uniform_zero(o.a);
    if (d == "triangular") return triangular(o.a);
    if (d == "fejer_dual") return fejer_dual(o.a);
    if (d == "gamma") return gamma_dist(o.alpha, o.beta);
    if (d == "bilateral_exp") return bilateral_exp(o.mu, o.sigma);
    if (d == "cauchy") return cauchy(o.mu, o.sigma);
    if (d == "rect") return rect();
    if (d == "tri") return tri();
    throw InvalidArgument("unknown --dist '" + d + "' (expected one of " + catalog_names + ")");
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open spec file '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw InputError("spec file '" + path + "' is not valid JSON: " + e.what());
    }
}

inline LogModel build_model(const Options& o) {
    const int chosen = !o.dist.empty() + !o.spec_path.empty() + !o.family.empty();
    if (chosen != 1) throw InvalidArgument("give exactly one of --dist, --spec, --family");
    const double b = o.gen_base.value_or(o.base.value_or(10.0));
    Base{b}; // validates
    if (!o.family.empty()) {
        const BenfordFamily f(parse_family_kind(o.family), o.mu, o.sigma);
        return {family_log_density(f), b, o.family, true};
    }
    if (!o.spec_path.empty()) return {spec_from_json(read_json_file(o.spec_path)), b, "spec", o.exponentiate};
    if (o.dist == "lognormal") return {normal(o.mu, o.sigma), std::exp(1.0), "lognormal", true};
    if (o.dist == "whittaker") return {fejer_dual(1.0), b, "whittaker", true};
    return {catalog_from_flags(o), b, o.dist, o.exponentiate};
}

/// Density of log_c X.
inline DistributionSpec at_base(const LogModel& m, const Base& c) {
    if (m.gen_base == c.value()) return m.y;
    return affine(m.y, rho(Base(m.gen_base), c), 0.0);
}

/// Writes to path via a temporary file and rename, or to `out` when path is empty.
inline void emit(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << content;
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".partial";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw InputError("cannot write '" + tmp.string() + "'");
        f << content;
        f.flush();
        if (!f) {
            f.close();
            fs::remove(tmp);
            throw InputError("write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw InputError("cannot move output into '" + path + "': " + ec.message());
    }
}

inline std::string format_or(const Options& o, const char* fallback) { return o.format.empty() ? fallback : o.format; }

inline int cmd_analyze(const Options& o, std::ostream& out) {
    const auto model = build_model(o);
    const Base c(o.base.value_or(model.kind == "lognormal" ? 10.0 : model.gen_base));
    const auto y = at_base(model, c);
    BenfordReport rep = is_benford(y, o.epsilon, o.n_max, o.grid);
    rep.base = c;
    Json j = to_json(rep);
    j["model"] = {{"kind", model.kind}, {"generation_base", model.gen_base}};
    if (model.kind == "lognormal") j["lognormal_bound"] = benford::detail::real_or_null(lognormal_bound(o.sigma, c));
    const std::string grid = density_grid_csv(rep.coefficients, o.grid_points);
    // produce everything before touching the filesystem
    if (format_or(o, "json") == "csv") {
        emit(o.out, grid, out);
    } else {
        emit(o.out, j.dump(2) + "\n", out);
    }
    if (!o.grid_out.empty()) emit(o.grid_out, grid, out);
    return ok;
}

inline int cmd_spectrum(const Options& o, std::ostream& out) {
    const auto model = build_model(o);
    const double top = o.base.value_or(model.gen_base) + 2.0;
    const double lo = o.c_min.value_or(1.01);
    const double hi = o.c_max.value_or(top);
    if (!(lo > 1.0) || !(hi > 1.0)) throw InvalidArgument("spectrum grid bounds must be > 1");
    if (!(hi > lo)) throw InvalidArgument("--c-max must exceed --c-min");
    const auto grid = geometric_grid(lo, hi, static_cast<std::size_t>(o.c_points));
    const auto rep = spectrum_scan(model.y, Base(model.gen_base), grid, o.epsilon, o.n_max);
    if (format_or(o, "csv") == "json") {
        emit(o.out, to_json(rep).dump(2) + "\n", out);
    } else {
        emit(o.out, spectrum_csv(rep), out);
    }
    return ok;
}

inline int cmd_digits(const Options& o, std::istream& in, std::ostream& out) {
    const Base b(o.base.value_or(10.0));
    if (!b.is_integer()) throw InvalidArgument("digits needs an integer --base");
    const auto data = o.input == "-" ? read_csv_column(in, o.column) : read_csv_column(o.input, o.column);
    const auto digits = first_digit_table(data, b);
    const double distance = significand_cdf_distance(data, b, o.sig_grid);
    const auto unif = frac_uniformity(data, b, o.bins);
    if (format_or(o, "json") == "csv") {
        emit(o.out, digits_csv(digits), out);
    } else {
        Json j{{"digits", to_json(digits)},
               {"significand_cdf_distance", distance},
               {"frac_uniformity", to_json(unif)},
               {"benford", digits.pass && unif.pass}};
        emit(o.out, j.dump(2) + "\n", out);
    }
    return ok;
}

inline int cmd_sample(const Options& o, std::ostream& out) {
    const auto model = build_model(o);
    auto batch = sample(model.y, o.n, o.seed);
    if (model.draws_are_x) batch = exponentiate(std::move(batch), Base(model.gen_base));
    std::string text;
    text.reserve(batch.values.size() * 24);
    for (double v : batch.values) {
        text += benford::detail::fmt_real(v);
        text += '\n';
    }
    emit(o.out, text, out);
    return ok;
}

inline int cmd_seeds_validate(const Options& o, std::ostream& out) {
    if (o.family.empty()) throw InvalidArgument("seeds-validate needs --family");
    const auto seed = builtin_seed(o.family, o.mu, o.sigma);
    const auto v = validate_seed(seed);
    Json j = to_json(v);
    j["seed"] = {{"family", o.family}, {"mu", o.mu}, {"sigma", o.sigma}};
    emit(o.out, j.dump(2) + "\n", out);
    return ok;
}

inline void add_model_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--dist", o.dist, std::string("Named law of Y = log_b X: ") + catalog_names);
    cmd->add_option("--spec", o.spec_path, "JSON file with the density of Y = log_b X")->check(CLI::ExistingFile);
    cmd->add_option("--family", o.family, "Seed-derived Benford family: gauss, cauchy or laplace")
        ->check(CLI::IsMember({"gauss", "cauchy", "laplace"}));
    cmd->add_option("--mu", o.mu, "Location parameter (m, mu)");
    cmd->add_option("--sigma", o.sigma, "Scale parameter (s, sigma), > 0");
    cmd->add_option("--a", o.a, "Width parameter a > 0 for uniform/triangular/fejer_dual");
    cmd->add_option("--alpha", o.alpha, "Gamma shape alpha > 0");
    cmd->add_option("--beta", o.beta, "Gamma scale beta > 0");
    cmd->add_option("--b", o.gen_base, "Base b at which Y = log_b X is specified (default: --base)");
}

inline void add_output_flags(CLI::App* cmd, Options& o, bool with_format = true) {
    if (with_format) cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", o.out, "Output file (default: stdout)");
}

} // namespace detail

/// Runs the CLI; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr,
                   std::istream& in = std::cin) {
    Options o;
    CLI::App app{"Benford analysis of positive random variables", "benford"};
    app.require_subcommand(1);

    auto* analyze = app.add_subcommand("analyze", "Fourier coefficients, deviation and verdict at one base");
    detail::add_model_flags(analyze, o);
    analyze->add_option("--base", o.base, "Analysis base c > 1 (default: --b, or 10 for lognormal)");
    analyze->add_option("--n-max", o.n_max, "Number of Fourier coefficients")->check(CLI::Range(1, 100000));
    analyze->add_option("--epsilon", o.epsilon, "Membership threshold on max |c_n|")->check(CLI::PositiveNumber);
    analyze->add_option("--grid", o.grid, "Grid size for the sup-norm deviation")->check(CLI::Range(64, 1 << 24));
    analyze->add_option("--grid-points", o.grid_points, "Rows of the u,pdf grid")->check(CLI::Range(2, 1 << 20));
    analyze->add_option("--grid-out", o.grid_out, "Also write the u,pdf grid to this file");
    detail::add_output_flags(analyze, o);

    auto* spectrum = app.add_subcommand("spectrum", "Scan analysis bases c and test membership in the spectrum");
    detail::add_model_flags(spectrum, o);
    spectrum->add_option("--base", o.base, "Base whose value + 2 is the default grid top");
    spectrum->add_option("--c-min", o.c_min, "Lower end of the c grid (exclusive), > 1");
    spectrum->add_option("--c-max", o.c_max, "Upper end of the c grid (inclusive)");
    spectrum->add_option("--c-points", o.c_points, "Number of c grid points")->check(CLI::Range(1, 1 << 22));
    spectrum->add_option("--n-max", o.n_max, "Coefficients tested per base")->check(CLI::Range(1, 100000));
    spectrum->add_option("--epsilon", o.epsilon, "Membership threshold")->check(CLI::PositiveNumber);
    detail::add_output_flags(spectrum, o);

    auto* digits = app.add_subcommand("digits", "First-digit and significand statistics of a data column");
    digits->add_option("--input", o.input, "CSV file ('-' for stdin)")->required();
    digits->add_option("--column", o.column, "0-based column index");
    digits->add_option("--base", o.base, "Integer base >= 2 (default 10)");
    digits->add_option("--bins", o.bins, "Bins for the frac(log_b x) uniformity test")->check(CLI::Range(2, 1 << 20));
    digits->add_option("--grid", o.sig_grid, "Grid size for the significand cdf distance")
        ->check(CLI::Range(1, 1 << 24));
    detail::add_output_flags(digits, o);

    auto* sample_cmd = app.add_subcommand("sample", "Draw values from a model, one per line");
    detail::add_model_flags(sample_cmd, o);
    sample_cmd->add_option("--base", o.base, "Default for --b");
    sample_cmd->add_option("--n", o.n, "Number of draws")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 32));
    sample_cmd->add_option("--seed", o.seed, "RNG seed");
    sample_cmd->add_flag("--exponentiate", o.exponentiate, "Emit b^Y instead of Y for --dist/--spec models");
    detail::add_output_flags(sample_cmd, o, false);

    auto* seeds = app.add_subcommand("seeds-validate", "Check the seed-function conditions for a built-in seed");
    seeds->add_option("--family", o.family, "gauss, cauchy or laplace")
        ->required()
        ->check(CLI::IsMember({"gauss", "cauchy", "laplace"}));
    seeds->add_option("--mu", o.mu, "Location");
    seeds->add_option("--sigma", o.sigma, "Scale, > 0");
    detail::add_output_flags(seeds, o, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err) == 0 ? ok : usage;
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err) == 0 ? ok : usage;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }

    try {
        if (*analyze) return detail::cmd_analyze(o, out);
        if (*spectrum) return detail::cmd_spectrum(o, out);
        if (*digits) return detail::cmd_digits(o, in, out);
        if (*sample_cmd) return detail::cmd_sample(o, out);
        if (*seeds) return detail::cmd_seeds_validate(o, out);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return input_data;
    } catch (const ToleranceError& e) {
        err << "error: " << e.what() << "\n";
        return tolerance;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return failure;
    }
    return usage;
}

} // namespace benford::cli
