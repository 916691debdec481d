#ifndef SQINT_RESOLUTION_HPP
#define SQINT_RESOLUTION_HPP

// Minimum detectable phase shift at a working point phi.
//
//   standard:  d = sigma(phi) / |P'(phi)|
//   modified:  d = [sigma(phi) + sigma(phi + d)] / (2 |P'(phi)|)
//
// The modified criterion accounts for the noise growing away from the
// working point and is an implicit equation in d.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "sqint/error.hpp"
#include "sqint/interferometer.hpp"
#include "sqint/roots.hpp"

namespace sqint {

enum class Criterion { standard, modified };

inline std::string_view to_string(Criterion c) { return c == Criterion::standard ? "standard" : "modified"; }

inline std::optional<Criterion> parse_criterion(std::string_view s) {
    if (s == "standard") return Criterion::standard;
    if (s == "modified") return Criterion::modified;
    return std::nullopt;
}

enum class ModifiedSolver { automatic, fixed_point, bisection };

struct ResolutionOptions {
    ModifiedSolver solver = ModifiedSolver::automatic;
    /// Move the working point to the local noise minimum within +-0.25 rad of phi.
    bool relocate_working_point = false;
    int max_iterations = 20000;
};

struct ResolutionResult {
    double delta_phi = std::numeric_limits<double>::infinity();
    Criterion criterion = Criterion::modified;
    double working_point = std::numbers::pi / 2;
    double kappa = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;
    double mean_N = 0.0;
    double residual = std::numeric_limits<double>::infinity();
    std::string solver;
    std::string diagnostic;
};

inline constexpr double default_working_point = std::numbers::pi / 2;

/// Argmin of sigma(Phi) over [guess - half_width, guess + half_width].
inline double locate_noise_minimum(const InterferometerConfig& config, double guess = default_working_point,
                                   double half_width = 0.25) {
    auto sigma = [&](double phi) { return evaluate(config, phi).sigma; };
    return golden_section_minimize(sigma, guess - half_width, guess + half_width, 1e-10).x;
}

namespace detail {

// The finite-difference slope carries roundoff of order 1e-10 * |P|, so a
// working point is treated as slope-free below this relative floor.
inline bool slope_is_zero(double slope, const SignalStats& at) {
    return !(std::abs(slope) > 1e-7 * std::max(1.0, std::sqrt(at.second_moment_P)));
}

inline ResolutionResult begin_result(const InterferometerConfig& config, double phi, Criterion criterion,
                                     const ResolutionOptions& opt, SignalStats& at, double& slope) {
    config.validate();
    ResolutionResult r;
    r.criterion = criterion;
    r.working_point = opt.relocate_working_point ? locate_noise_minimum(config, phi) : phi;
    at = evaluate(config, r.working_point);
    slope = signal_slope(config, r.working_point);
    r.mean_N = at.mean_N;
    return r;
}

inline void finish(ResolutionResult& r, double delta) {
    r.delta_phi = delta;
    r.kappa = delta * r.mean_N;
}

}  // namespace detail

inline ResolutionResult standard_resolution(const InterferometerConfig& config, double phi = default_working_point,
                                            const ResolutionOptions& opt = {}) {
    SignalStats at;
    double slope = 0.0;
    ResolutionResult r = detail::begin_result(config, phi, Criterion::standard, opt, at, slope);
    r.solver = "closed";
    if (detail::slope_is_zero(slope, at)) {
        r.diagnostic = "signal slope vanishes at the working point";
        return r;
    }
    detail::finish(r, at.sigma / std::abs(slope));
    r.residual = 0.0;
    r.iterations = 1;
    r.converged = true;
    return r;
}

inline ResolutionResult modified_resolution(const InterferometerConfig& config, double phi = default_working_point,
                                            const ResolutionOptions& opt = {}) {
    SignalStats at;
    double slope = 0.0;
    ResolutionResult r = detail::begin_result(config, phi, Criterion::modified, opt, at, slope);
    if (detail::slope_is_zero(slope, at)) {
        r.solver = "none";
        r.diagnostic = "signal slope vanishes at the working point";
        return r;
    }
    const double two_slope = 2.0 * std::abs(slope);
    const double sigma0 = at.sigma;
    const double wp = r.working_point;
    auto rhs = [&](double d) { return (sigma0 + evaluate(config, wp + d).sigma) / two_slope; };
    constexpr double upper = std::numbers::pi / 2;
    auto accept = [&](const SolveResult& s, const char* name) {
        r.solver = name;
        r.iterations += s.iterations;
        if (!s.converged) return false;
        const double res = std::abs(s.x - rhs(s.x));
        if (!(s.x > 0.0 && s.x < upper) || res > 1e-12 * std::max(1.0, s.x)) return false;
        detail::finish(r, s.x);
        r.residual = res;
        r.converged = true;
        return true;
    };

    if (opt.solver != ModifiedSolver::bisection) {
        FixedPointOptions fp;
        fp.lower = 0.0;
        fp.upper = upper;
        fp.max_iterations = opt.max_iterations;
        if (accept(fixed_point(rhs, sigma0 / std::abs(slope), fp), "fixed_point")) return r;
        if (opt.solver == ModifiedSolver::fixed_point) {
            r.diagnostic = "fixed-point iteration did not converge inside (0, pi/2)";
            return r;
        }
    }
    auto g = [&](double d) { return d * two_slope - sigma0 - evaluate(config, wp + d).sigma; };
    const double tiny = std::numeric_limits<double>::min();
    const SolveResult b = bisect(g, tiny, upper);
    if (accept(b, "bisection")) return r;
    r.diagnostic = b.converged ? "bisection root fails the residual bound"
                               : "no sign change of the resolution equation on (0, pi/2]";
    return r;
}

inline ResolutionResult resolve(const InterferometerConfig& config, Criterion criterion,
                                double phi = default_working_point, const ResolutionOptions& opt = {}) {
    return criterion == Criterion::standard ? standard_resolution(config, phi, opt)
                                            : modified_resolution(config, phi, opt);
}

// ---------------------------------------------------------------------------
// Parameter sweeps

enum class SweepParameter { G, alpha1, beta1, alpha2, beta2, delta1, delta2, symmetric_alpha1, symmetric_alpha2 };

inline constexpr std::pair<SweepParameter, std::string_view> sweep_parameter_names[] = {
    {SweepParameter::G, "G"},
    {SweepParameter::alpha1, "alpha1"},
    {SweepParameter::beta1, "beta1"},
    {SweepParameter::alpha2, "alpha2"},
    {SweepParameter::beta2, "beta2"},
    {SweepParameter::delta1, "delta1"},
    {SweepParameter::delta2, "delta2"},
    {SweepParameter::symmetric_alpha1, "symmetric_alpha1"},
    {SweepParameter::symmetric_alpha2, "symmetric_alpha2"},
};

inline std::string_view to_string(SweepParameter p) {
    for (const auto& [param, name] : sweep_parameter_names) {
        if (param == p) return name;
    }
    return "?";
}

inline std::optional<SweepParameter> parse_sweep_parameter(std::string_view s) {
    for (const auto& [param, name] : sweep_parameter_names) {
        if (name == s) return param;
    }
    return std::nullopt;
}

/// Copy of config with one parameter replaced. Symmetric variants set both arms.
inline InterferometerConfig with_parameter(InterferometerConfig c, SweepParameter p, double v) {
    switch (p) {
        case SweepParameter::G: c.gain = v; break;
        case SweepParameter::alpha1: c.alpha1 = v; break;
        case SweepParameter::beta1: c.beta1 = v; break;
        case SweepParameter::alpha2: c.alpha2 = v; break;
        case SweepParameter::beta2: c.beta2 = v; break;
        case SweepParameter::delta1: c.delta1 = v; break;
        case SweepParameter::delta2: c.delta2 = v; break;
        case SweepParameter::symmetric_alpha1: c.alpha1 = c.beta1 = v; break;
        case SweepParameter::symmetric_alpha2: c.alpha2 = c.beta2 = v; break;
    }
    return c;
}

inline std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
    detail::require(points >= 2 && lo < hi, "grid: need points >= 2 and min < max");
    std::vector<double> g(points);
    for (std::size_t k = 0; k < points; ++k) {
        g[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
    }
    g.back() = hi;
    return g;
}

inline std::vector<double> log_grid(double lo, double hi, std::size_t points) {
    detail::require(lo > 0.0, "log grid: min must be > 0");
    std::vector<double> g = linear_grid(std::log(lo), std::log(hi), points);
    for (double& v : g) v = std::exp(v);
    g.front() = lo;
    g.back() = hi;
    return g;
}

struct SweepRow {
    double param = 0.0;
    double gain = 0.0;
    double mean_N = 0.0;
    double delta_phi = 0.0;
    double kappa = 0.0;
    bool converged = false;
    std::string diagnostic;
};

struct SweepTable {
    std::string parameter;
    std::vector<SweepRow> rows;
};

/// Resolution at every grid value of one parameter. Rows keep grid order;
/// with threads > 1 they are computed concurrently.
inline SweepTable sweep(const InterferometerConfig& config, SweepParameter param, const std::vector<double>& grid,
                        Criterion criterion, double phi = default_working_point, const ResolutionOptions& opt = {},
                        unsigned threads = 1) {
    detail::require(!grid.empty(), "sweep: grid must not be empty");
    for (std::size_t k = 1; k < grid.size(); ++k) {
        detail::require(grid[k] > grid[k - 1], "sweep: grid must be strictly increasing");
    }
    for (double v : grid) with_parameter(config, param, v).validate();

    SweepTable table;
    table.parameter = std::string(to_string(param));
    table.rows.resize(grid.size());
    auto run = [&](std::size_t k) {
        const InterferometerConfig c = with_parameter(config, param, grid[k]);
        const ResolutionResult r = resolve(c, criterion, phi, opt);
        table.rows[k] = {grid[k], c.gain, r.mean_N, r.delta_phi, r.kappa, r.converged, r.diagnostic};
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(grid.size())));
    if (threads == 1) {
        for (std::size_t k = 0; k < grid.size(); ++k) run(k);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t k = t; k < grid.size(); k += threads) run(k);
            });
        }
    }
    return table;
}

/// First plateau of delta_phi: three successive converged rows whose values
/// agree within rel_tol. Returns the last value of that triple.
inline std::optional<double> saturation_level(const SweepTable& table, double rel_tol = 0.01) {
    const auto& rows = table.rows;
    auto close = [&](double x, double y) { return std::abs(x - y) < rel_tol * std::max(std::abs(x), std::abs(y)); };
    for (std::size_t k = 0; k + 2 < rows.size(); ++k) {
        if (!(rows[k].converged && rows[k + 1].converged && rows[k + 2].converged)) continue;
        const double a = rows[k].delta_phi, b = rows[k + 1].delta_phi, c = rows[k + 2].delta_phi;
        if (close(a, b) && close(b, c) && close(a, c)) return c;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Imbalance optimization

struct Delta2Optimum {
    double delta2_opt = std::numeric_limits<double>::quiet_NaN();
    double kappa_opt = std::numeric_limits<double>::infinity();
    bool bracketed = false;
    std::vector<std::pair<double, double>> profile;  ///< sampled (delta2, kappa)
    std::string diagnostic;
};

/// kappa = delta_phi * <N> of the modified criterion at delta2; +inf if unresolved.
inline double kappa_at_delta2(InterferometerConfig config, double delta2, double phi = default_working_point) {
    config.delta2 = delta2;
    const ResolutionResult r = modified_resolution(config, phi);
    return r.converged ? r.kappa : std::numeric_limits<double>::infinity();
}

/// Minimizes kappa over delta2 in (-pi/4, pi/4) at the given gain. The other
/// fields of config are kept. A sampled profile locates the bracket and a
/// golden-section search refines it to x_tol.
inline Delta2Optimum optimize_delta2(InterferometerConfig config, double gain, std::size_t profile_points = 41,
                                     double x_tol = 1e-6) {
    detail::require(profile_points >= 3, "optimize_delta2: need at least 3 profile points");
    config.gain = gain;
    config.validate();
    Delta2Optimum out;
    const double span = std::numbers::pi / 2;
    for (std::size_t k = 0; k < profile_points; ++k) {
        const double d2 = -std::numbers::pi / 4 + span * static_cast<double>(k + 1) / static_cast<double>(profile_points + 1);
        out.profile.emplace_back(d2, kappa_at_delta2(config, d2));
    }
    const auto& p = out.profile;
    std::size_t best = 0;
    for (std::size_t k = 1; k < p.size(); ++k) {
        if (p[k].second < p[best].second) best = k;
    }
    if (!std::isfinite(p[best].second)) {
        out.diagnostic = "no converged resolution anywhere on the profile";
        return out;
    }
    bool unimodal = best > 0 && best + 1 < p.size();
    for (std::size_t k = 1; unimodal && k <= best; ++k) unimodal = p[k].second <= p[k - 1].second;
    for (std::size_t k = best + 1; unimodal && k < p.size(); ++k) unimodal = p[k].second >= p[k - 1].second;
    if (!unimodal) {
        out.diagnostic = "sampled kappa profile is not unimodal around its minimum";
        out.delta2_opt = p[best].first;
        out.kappa_opt = p[best].second;
        return out;
    }
    auto f = [&](double d2) { return kappa_at_delta2(config, d2); };
    const MinimizeResult m = golden_section_minimize(f, p[best - 1].first, p[best + 1].first, x_tol);
    out.delta2_opt = m.x;
    out.kappa_opt = m.fx;
    out.bracketed = true;
    return out;
}

}  // namespace sqint

#endif  // SQINT_RESOLUTION_HPP
