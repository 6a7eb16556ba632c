// quadrature.hpp: adaptive Gauss–Kronrod integration over piecewise panels

#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <atomic>
#include <cmath>
#include <span>
#include <vector>

namespace routersim::quad {

namespace detail {
inline std::atomic<double> default_tolerance{1e-11};
}  // namespace detail

// Process-wide relative tolerance picked up by default-constructed Options.
// Set it once before starting work; it is not meant to change mid-run.
inline double default_tolerance() { return detail::default_tolerance.load(std::memory_order_relaxed); }
inline void set_default_tolerance(double tol) { detail::default_tolerance.store(tol, std::memory_order_relaxed); }

struct Options {
    double relative_tolerance = default_tolerance();
    unsigned max_depth = 15;
};

// Integrates f over each consecutive pair of `breakpoints` and sums the pieces.
// `error` (optional) receives the summed error estimate.
template <typename Real, typename F>
Real integrate_panels(F&& f, std::span<const Real> breakpoints, const Options& opts = {},
                      Real* error = nullptr) {
    using Rule = boost::math::quadrature::gauss_kronrod<Real, 31>;
    Real total = 0;
    Real total_error = 0;
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        // Boost 1.74 compares the unscaled error estimate of a subinterval against
        // a scaled tolerance; integrating on [-1, 1] keeps the two consistent.
        const Real mid = (breakpoints[i] + breakpoints[i - 1]) / 2;
        const Real half = (breakpoints[i] - breakpoints[i - 1]) / 2;
        auto mapped = [&](Real x) { return half * f(mid + half * x); };
        Real piece_error = 0;
        total += Rule::integrate(mapped, Real(-1), Real(1), opts.max_depth,
                                 static_cast<Real>(opts.relative_tolerance), &piece_error);
        total_error += piece_error;
    }
    if (error != nullptr) {
        *error = total_error;
    }
    return total;
}

template <typename Real, typename F>
Real integrate(F&& f, Real a, Real b, const Options& opts = {}, Real* error = nullptr) {
    const Real points[2] = {a, b};
    return integrate_panels<Real>(f, std::span<const Real>(points, 2), opts, error);
}

// Breakpoints 0, s, 4s, 16s, ... up to `scale`, then uniform panels of width `panel`
// up to `upper`. Resolves integrands with structure near 0 on the scale `s`.
inline std::vector<double> geometric_then_uniform(double s, double scale, double panel, double upper) {
    std::vector<double> pts{0.0};
    if (s > 0.0) {
        for (double x = s; x < scale; x *= 4.0) {
            pts.push_back(x);
        }
    }
    double x = pts.back() < scale ? scale : pts.back();
    if (x > pts.back()) {
        pts.push_back(x);
    }
    while (x + panel < upper) {
        x += panel;
        pts.push_back(x);
    }
    if (pts.back() < upper) {
        pts.push_back(upper);
    }
    return pts;
}

}  // namespace routersim::quad
