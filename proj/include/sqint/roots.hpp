#ifndef SQINT_ROOTS_HPP
#define SQINT_ROOTS_HPP

// One-dimensional solvers: damped fixed-point iteration, bisection and
// golden-section minimization. All take arbitrary callables.

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace sqint {

struct FixedPointOptions {
    double rel_tol = 1e-12;  ///< stop when |x - g(x)| <= rel_tol * max(1, |x|)
    double damping = 0.5;    ///< relaxation weight once iterates oscillate
    int max_iterations = 20000;
    double lower = -std::numeric_limits<double>::infinity();  ///< admissible domain (open)
    double upper = std::numeric_limits<double>::infinity();
};

struct SolveResult {
    double x = std::numeric_limits<double>::quiet_NaN();
    double residual = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;
};

/// Iterates x <- g(x) from x0. Switches to x <- x + w (g(x) - x) as soon as two
/// successive steps change sign. Fails if an iterate leaves (lower, upper).
template <class Map>
SolveResult fixed_point(Map&& g, double x0, const FixedPointOptions& opt = {}) {
    SolveResult r;
    double x = x0;
    double prev_step = 0.0;
    bool damped = false;
    for (int k = 0; k < opt.max_iterations; ++k) {
        if (!(x > opt.lower && x < opt.upper) || !std::isfinite(x)) {
            r.x = x;
            r.iterations = k;
            return r;
        }
        const double gx = g(x);
        const double step = gx - x;
        r.x = x;
        r.residual = std::abs(step);
        r.iterations = k + 1;
        if (r.residual <= opt.rel_tol * std::max(1.0, std::abs(x))) {
            r.converged = true;
            return r;
        }
        if (!damped && k > 0 && step * prev_step < 0.0) damped = true;
        prev_step = step;
        x = damped ? x + opt.damping * step : gx;
    }
    return r;
}

/// Bisection on [lo, hi] for f with f(lo) and f(hi) of opposite sign. Runs
/// until the bracket cannot be split further in floating point. The result
/// has converged = false when there is no sign change.
template <class Fn>
SolveResult bisect(Fn&& f, double lo, double hi, int max_iterations = 400) {
    SolveResult r;
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return {lo, 0.0, 0, true};
    if (fhi == 0.0) return {hi, 0.0, 0, true};
    if (std::signbit(flo) == std::signbit(fhi)) return r;
    for (int k = 0; k < max_iterations; ++k) {
        const double mid = lo + (hi - lo) / 2;
        r.iterations = k + 1;
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return {mid, 0.0, k + 1, true};
        if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    const bool take_lo = std::abs(flo) <= std::abs(fhi);
    r.x = take_lo ? lo : hi;
    r.residual = take_lo ? std::abs(flo) : std::abs(fhi);
    r.converged = true;
    return r;
}

struct MinimizeResult {
    double x = std::numeric_limits<double>::quiet_NaN();
    double fx = std::numeric_limits<double>::infinity();
    int evaluations = 0;
};

/// Golden-section search for the minimum of a unimodal f on [lo, hi] down to
/// a bracket width of x_tol.
template <class Fn>
MinimizeResult golden_section_minimize(Fn&& f, double lo, double hi, double x_tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    int evals = 2;
    while (hi - lo > x_tol) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
        ++evals;
    }
    const double x = (lo + hi) / 2;
    const double fx = f(x);
    ++evals;
    // keep the best point actually sampled
    if (fc < fx && fc <= fd) return {c, fc, evals};
    if (fd < fx) return {d, fd, evals};
    return {x, fx, evals};
}

}  // namespace sqint

#endif  // SQINT_ROOTS_HPP
