#ifndef SQINT_MOMENTS_HPP
#define SQINT_MOMENTS_HPP

// Homodyne-product statistics of a zero-mean Gaussian state.
//
// With both local oscillators at zero relative phase the detectors read the
// x quadratures of modes a and b, and the product signal is P = x_a x_b.
// Isserlis' theorem gives every moment from the covariance:
//   <P>   = <x_a x_b>
//   <P^2> = <x_a^2><x_b^2> + 2 <x_a x_b>^2

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "sqint/error.hpp"
#include "sqint/gaussian.hpp"

namespace sqint {

struct SignalStats {
    double phi = 0.0;
    double mean_P = 0.0;
    double second_moment_P = 0.0;
    double sigma = 0.0;
    double mean_N = 0.0;
};

/// <x_i x_j> for modes i and j.
inline double quadrature_covariance(const GaussianState& state, std::size_t i, std::size_t j) {
    detail::require(i < state.n_modes() && j < state.n_modes(), "quadrature_covariance: mode index out of range");
    return state.cov_entry(2 * i, 2 * j);
}

namespace detail {

inline void require_distinct(const GaussianState& state, std::size_t a, std::size_t b, const char* who) {
    require(a < state.n_modes() && b < state.n_modes(), std::string(who) + ": mode index out of range");
    require(a != b, std::string(who) + ": detected modes must differ");
}

}  // namespace detail

inline double product_mean(const GaussianState& state, std::size_t mode_a, std::size_t mode_b) {
    detail::require_distinct(state, mode_a, mode_b, "product_mean");
    return quadrature_covariance(state, mode_a, mode_b);
}

inline double product_second_moment(const GaussianState& state, std::size_t mode_a, std::size_t mode_b) {
    detail::require_distinct(state, mode_a, mode_b, "product_second_moment");
    const double xa2 = quadrature_covariance(state, mode_a, mode_a);
    const double xb2 = quadrature_covariance(state, mode_b, mode_b);
    const double xab = quadrature_covariance(state, mode_a, mode_b);
    return xa2 * xb2 + 2.0 * xab * xab;
}

/// sqrt(<P^2> - <P>^2). The variance is evaluated in the cancellation-free
/// form <x_a^2><x_b^2> + <x_a x_b>^2, which is the same quantity.
inline double product_sigma(const GaussianState& state, std::size_t mode_a, std::size_t mode_b) {
    detail::require_distinct(state, mode_a, mode_b, "product_sigma");
    const double xa2 = quadrature_covariance(state, mode_a, mode_a);
    const double xb2 = quadrature_covariance(state, mode_b, mode_b);
    const double xab = quadrature_covariance(state, mode_a, mode_b);
    const double variance = xa2 * xb2 + xab * xab;
    if (!(variance >= -1e-12)) {
        throw NumericalError("product_sigma: negative variance " + std::to_string(variance));
    }
    return std::sqrt(std::max(variance, 0.0));
}

/// Total photon number (trace(cov) - 2M) / 4.
inline double mean_photon_number(const GaussianState& state) {
    return (state.factor().squaredNorm() - 2.0 * static_cast<double>(state.n_modes())) / 4.0;
}

inline SignalStats signal_stats(const GaussianState& state, double phi, std::size_t mode_a = 0,
                                std::size_t mode_b = 1) {
    detail::require_distinct(state, mode_a, mode_b, "signal_stats");
    const double xa2 = quadrature_covariance(state, mode_a, mode_a);
    const double xb2 = quadrature_covariance(state, mode_b, mode_b);
    const double xab = quadrature_covariance(state, mode_a, mode_b);
    SignalStats s;
    s.phi = phi;
    s.mean_P = xab;
    s.second_moment_P = xa2 * xb2 + 2.0 * xab * xab;
    s.sigma = std::sqrt(std::max(xa2 * xb2 + xab * xab, 0.0));
    s.mean_N = mean_photon_number(state);
    return s;
}

}  // namespace sqint

#endif  // SQINT_MOMENTS_HPP
