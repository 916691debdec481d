#ifndef SQINT_INTERFEROMETER_HPP
#define SQINT_INTERFEROMETER_HPP

// The full two-path interferometer fed by two-mode squeezed vacuum:
//
//   vacuum (a, b) -> squeezer(G, xi) -> loss alpha1 on a, beta1 on b
//     -> B1(delta1) -> phase Phi on arm a -> loss alpha2 on a, beta2 on b
//     -> B2(delta2) -> homodyne product on the output pair.

#include <cmath>
#include <numbers>

#include "sqint/error.hpp"
#include "sqint/gaussian.hpp"
#include "sqint/moments.hpp"

namespace sqint {

struct InterferometerConfig {
    double gain = 0.0;    ///< single-pass gain G >= 0
    double xi = 0.0;      ///< amplifier phase
    double alpha1 = 0.0;  ///< state-preparation loss angle on a
    double beta1 = 0.0;   ///< state-preparation loss angle on b
    double alpha2 = 0.0;  ///< interferometer-arm loss angle on a
    double beta2 = 0.0;   ///< interferometer-arm loss angle on b
    double delta1 = 0.0;  ///< imbalance of the first beam splitter
    double delta2 = 0.0;  ///< imbalance of the second beam splitter

    static InterferometerConfig ideal(double gain) {
        InterferometerConfig c;
        c.gain = gain;
        return c;
    }

    /// Sets alpha1 = beta1 = prep_loss and alpha2 = beta2 = arm_loss.
    static InterferometerConfig with_symmetric_losses(double gain, double prep_loss, double arm_loss = 0.0) {
        InterferometerConfig c = ideal(gain);
        c.alpha1 = c.beta1 = prep_loss;
        c.alpha2 = c.beta2 = arm_loss;
        return c;
    }

    void validate() const {
        detail::require(std::isfinite(gain) && gain >= 0.0, "config: G must be finite and >= 0");
        detail::require(std::isfinite(xi), "config: xi must be finite");
        for (double loss : {alpha1, beta1, alpha2, beta2}) {
            detail::require(loss >= 0.0 && loss <= std::numbers::pi / 2, "config: loss angles must lie in [0, pi/2]");
        }
        for (double imb : {delta1, delta2}) {
            detail::require(std::abs(imb) < std::numbers::pi / 4, "config: imbalance angles must lie in (-pi/4, pi/4)");
        }
    }

    bool operator==(const InterferometerConfig&) const = default;
};

/// Placement of the arm losses relative to the phase shifter on arm a.
/// Both give the same covariance; the choice is exposed only so that can be tested.
enum class ArmLossOrder { after_phase, before_phase };

inline constexpr std::size_t output_mode_a = 0;
inline constexpr std::size_t output_mode_b = 1;

/// Gaussian state of the output pair (a3, b3) at phase phi.
inline GaussianState output_state(const InterferometerConfig& config, double phi,
                                  ArmLossOrder order = ArmLossOrder::after_phase) {
    config.validate();
    constexpr std::size_t a = output_mode_a;
    constexpr std::size_t b = output_mode_b;
    GaussianState s = apply_symplectic(vacuum_state(2), two_mode_squeezer(config.gain, config.xi, a, b));
    s = apply_loss(s, a, config.alpha1);
    s = apply_loss(s, b, config.beta1);
    s = apply_symplectic(s, beam_splitter({BsVariant::B1, config.delta1}, a, b));
    if (order == ArmLossOrder::after_phase) {
        s = apply_symplectic(s, phase_shifter(phi, a));
        s = apply_loss(s, a, config.alpha2);
    } else {
        s = apply_loss(s, a, config.alpha2);
        s = apply_symplectic(s, phase_shifter(phi, a));
    }
    s = apply_loss(s, b, config.beta2);
    return apply_symplectic(s, beam_splitter({BsVariant::B2, config.delta2}, a, b));
}

inline SignalStats evaluate(const InterferometerConfig& config, double phi) {
    return signal_stats(output_state(config, phi), phi, output_mode_a, output_mode_b);
}

/// d<P>/dPhi: central difference with h = 1e-6 and one Richardson step.
inline double signal_slope(const InterferometerConfig& config, double phi) {
    constexpr double h = 1e-6;
    auto central = [&](double step) {
        return (evaluate(config, phi + step).mean_P - evaluate(config, phi - step).mean_P) / (2.0 * step);
    };
    const double coarse = central(h);
    const double fine = central(h / 2);
    return (4.0 * fine - coarse) / 3.0;
}

/// Ideal-case closed forms for intensity, signal, second moment and spread.
inline SignalStats closed_form_reference(double gain, double phi) {
    detail::require(gain >= 0.0, "closed_form_reference: G must be >= 0");
    const double sh = std::sinh(gain);
    const double ch = std::cosh(gain);
    const double n = 2.0 * sh * sh;
    const double weight = n * n / 2.0 + n;
    SignalStats s;
    s.phi = phi;
    s.mean_N = n;
    s.mean_P = sh * ch * std::sin(2.0 * phi);
    s.second_moment_P = 1.0 + (7.0 / 4.0 + std::cos(2.0 * phi) - 0.75 * std::cos(4.0 * phi)) * weight;
    s.sigma = std::sqrt(weight * (1.5 + std::cos(2.0 * phi) - std::cos(4.0 * phi) / 2.0) + 1.0);
    return s;
}

}  // namespace sqint

#endif  // SQINT_INTERFEROMETER_HPP
