#pragma once

// Globally adaptive 10/21-point Gauss-Kronrod integration.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace benford::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
};

namespace detail {

inline constexpr std::array<double, 11> kronrod_nodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};

inline constexpr std::array<double, 11> kronrod_weights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525138220, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// weights of the embedded 10-point Gauss rule, on kronrod_nodes[1], [3], ..., [9]
inline constexpr std::array<double, 5> gauss_weights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk21(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kronrod_weights[10];
    double gauss = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double dx = half * kronrod_nodes[i];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kronrod_weights[i] * pair;
        if (i % 2 == 1) gauss += gauss_weights[i / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

} // namespace detail

/// Integrate f over the finite interval [a, b] until the summed error
/// estimate drops below max(abs_tol, rel_tol * |I|).
template <class F>
Result integrate(const F& f, double a, double b, double abs_tol = 1e-12, double rel_tol = 1e-12,
                 std::size_t max_segments = 4000) {
    if (a == b) return {};
    if (a > b) {
        Result r = integrate(f, b, a, abs_tol, rel_tol, max_segments);
        r.value = -r.value;
        return r;
    }
    std::priority_queue<detail::Segment> heap;
    auto first = detail::gk21(f, a, b);
    double total = first.value;
    double total_err = first.error;
    heap.push(first);
    while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (heap.size() >= max_segments) return {total, total_err, false};
        const auto worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) return {total, total_err, false};
        heap.pop();
        const auto left = detail::gk21(f, worst.a, mid);
        const auto right = detail::gk21(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // re-sum to shed accumulated cancellation in the running total
    double sum = 0.0, err = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    return {sum, err, true};
}

/// Integrate over a list of breakpoints, summing the pieces.
template <class F>
Result integrate_pieces(const F& f, const std::vector<double>& breaks, double abs_tol = 1e-12,
                        double rel_tol = 1e-12) {
    Result out;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const auto r = integrate(f, breaks[i], breaks[i + 1], abs_tol / static_cast<double>(breaks.size()),
                                 rel_tol);
        out.value += r.value;
        out.error += r.error;
        out.converged = out.converged && r.converged;
    }
    return out;
}

/// Integrate f over [a, +inf) via x = a + t / (1 - t).
template <class F>
Result integrate_to_inf(const F& f, double a, double abs_tol = 1e-12, double rel_tol = 1e-12) {
    auto g = [&](double t) {
        if (t >= 1.0) return 0.0;
        const double om = 1.0 - t;
        const double v = f(a + t / om);
        return v == 0.0 ? 0.0 : v / (om * om);
    };
    return integrate(g, 0.0, 1.0, abs_tol, rel_tol);
}

/// Integrate f over (-inf, b] via x = b - t / (1 - t).
template <class F>
Result integrate_from_neg_inf(const F& f, double b, double abs_tol = 1e-12, double rel_tol = 1e-12) {
    auto g = [&](double t) {
        if (t >= 1.0) return 0.0;
        const double om = 1.0 - t;
        const double v = f(b - t / om);
        return v == 0.0 ? 0.0 : v / (om * om);
    };
    return integrate(g, 0.0, 1.0, abs_tol, rel_tol);
}

} // namespace benford::quad
