#ifndef SQINT_FOCK_HPP
#define SQINT_FOCK_HPP

// Brute-force pure-state simulation in a truncated Fock basis.
//
// The two-mode squeezed vacuum is written down in its Schmidt form
//   |psi> = sum_n (lambda^n / cosh G) |n, n>,   lambda = -i e^{i xi} tanh G,
// truncated at n <= n_max. Passive optics conserve the total photon number,
// so the basis is the simplex {occupations with total <= 2 n_max}. Every
// passive two-mode gate is then exact: no amplitude ever leaves the basis.
// Losses couple a system mode to its own vacuum ancilla; system observables
// are read from the global pure state.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sqint/error.hpp"
#include "sqint/gaussian.hpp"
#include "sqint/interferometer.hpp"

namespace sqint {

/// Occupation tuples of n_modes modes with total photon number <= max_total,
/// in lexicographic order, with O(n_modes) ranking.
class SimplexBasis {
   public:
    SimplexBasis(std::size_t n_modes, std::size_t max_total) : n_modes_(n_modes), max_total_(max_total) {
        detail::require(n_modes >= 1 && n_modes <= 8, "SimplexBasis: 1..8 modes supported");
        detail::require(max_total <= 250, "SimplexBasis: max_total must be <= 250");
        // counts[m][t]: m-tuples with total <= t; cumulative[m][t] = sum of counts[m][0..t]
        counts_.assign(n_modes + 1, std::vector<std::size_t>(max_total + 1, 0));
        cumulative_.assign(n_modes + 1, std::vector<std::size_t>(max_total + 1, 0));
        for (std::size_t m = 0; m <= n_modes; ++m) {
            for (std::size_t t = 0; t <= max_total; ++t) {
                counts_[m][t] = m == 0 ? 1 : (t == 0 ? 1 : counts_[m - 1][t] + counts_[m][t - 1]);
                cumulative_[m][t] = counts_[m][t] + (t > 0 ? cumulative_[m][t - 1] : 0);
            }
        }
        const std::size_t n = counts_[n_modes][max_total];
        occupations_.resize(n * n_modes);
        std::vector<std::uint8_t> cur(n_modes, 0);
        std::size_t next = 0;
        enumerate(0, max_total, cur, next);
    }

    std::size_t n_modes() const { return n_modes_; }
    std::size_t max_total() const { return max_total_; }
    std::size_t size() const { return occupations_.size() / n_modes_; }

    const std::uint8_t* occupation(std::size_t index) const { return &occupations_[index * n_modes_]; }

    std::size_t total(std::size_t index) const {
        std::size_t t = 0;
        for (std::size_t k = 0; k < n_modes_; ++k) t += occupation(index)[k];
        return t;
    }

    template <class Occ>
    std::size_t rank(const Occ& occ) const {
        std::size_t r = 0;
        std::size_t remaining = max_total_;
        for (std::size_t k = 0; k < n_modes_; ++k) {
            const std::size_t n = occ[k];
            const std::size_t m = n_modes_ - k - 1;
            if (n > 0) {
                r += cumulative_[m][remaining] - cumulative_[m][remaining - n];
            }
            remaining -= n;
        }
        return r;
    }

    /// Shared instance per (n_modes, max_total).
    static std::shared_ptr<const SimplexBasis> get(std::size_t n_modes, std::size_t max_total) {
        static std::mutex mutex;
        static std::map<std::pair<std::size_t, std::size_t>, std::weak_ptr<const SimplexBasis>> cache;
        std::lock_guard lock(mutex);
        auto& slot = cache[{n_modes, max_total}];
        if (auto hit = slot.lock()) return hit;
        auto made = std::make_shared<const SimplexBasis>(n_modes, max_total);
        slot = made;
        return made;
    }

   private:
    void enumerate(std::size_t k, std::size_t remaining, std::vector<std::uint8_t>& cur, std::size_t& next) {
        if (k == n_modes_) {
            std::copy(cur.begin(), cur.end(), occupations_.begin() + static_cast<std::ptrdiff_t>(next * n_modes_));
            ++next;
            return;
        }
        for (std::size_t n = 0; n <= remaining; ++n) {
            cur[k] = static_cast<std::uint8_t>(n);
            enumerate(k + 1, remaining - n, cur, next);
        }
        cur[k] = 0;
    }

    std::size_t n_modes_;
    std::size_t max_total_;
    std::vector<std::vector<std::size_t>> counts_;
    std::vector<std::vector<std::size_t>> cumulative_;
    std::vector<std::uint8_t> occupations_;
};

struct FockState {
    std::size_t n_max = 0;  ///< per-mode cutoff of the squeezed pair
    std::shared_ptr<const SimplexBasis> basis;
    std::vector<Complex> amplitudes;
    double norm_deficit = 0.0;  ///< 1 - <psi|psi> from truncating the Schmidt series

    std::size_t n_modes() const { return basis->n_modes(); }

    template <class Occ>
    Complex amplitude(const Occ& occ) const {
        std::size_t total = 0;
        for (std::size_t k = 0; k < n_modes(); ++k) total += occ[k];
        return total <= basis->max_total() ? amplitudes[basis->rank(occ)] : Complex{};
    }

    double norm_squared() const {
        double s = 0.0;
        for (const Complex& a : amplitudes) s += std::norm(a);
        return s;
    }
};

/// Smallest n_max whose discarded Schmidt weight tanh(G)^(2(n_max+1)) / cosh(G)^2 is <= tail_tol.
inline std::size_t required_cutoff(double gain, double tail_tol = 1e-14) {
    detail::require(gain >= 0.0, "required_cutoff: G must be >= 0");
    const double t2 = std::tanh(gain) * std::tanh(gain);
    if (t2 == 0.0) return 0;
    const double c2 = std::cosh(gain) * std::cosh(gain);
    std::size_t n = 0;
    while (std::pow(t2, static_cast<double>(n + 1)) / c2 > tail_tol) ++n;
    return n;
}

/// Two-mode squeezed vacuum on modes 0 and 1 of an n_modes register; the
/// remaining modes are vacuum.
inline FockState tmsv_fock(double gain, double xi, std::size_t n_max, std::size_t n_modes = 2) {
    detail::require(n_modes >= 2, "tmsv_fock: need at least two modes");
    const std::size_t needed = required_cutoff(gain);
    if (n_max < needed) {
        throw CutoffError("tmsv_fock: n_max = " + std::to_string(n_max) + " is below the required " +
                          std::to_string(needed) + " for G = " + std::to_string(gain));
    }
    if (2 * n_max > 250) throw CutoffError("tmsv_fock: n_max too large for the simplex basis");
    FockState s;
    s.n_max = n_max;
    s.basis = SimplexBasis::get(n_modes, 2 * n_max);
    s.amplitudes.assign(s.basis->size(), Complex{});
    const Complex lambda = Complex(0.0, -1.0) * std::exp(Complex(0.0, xi)) * std::tanh(gain);
    const double inv_cosh = 1.0 / std::cosh(gain);
    std::vector<std::uint8_t> occ(n_modes, 0);
    Complex c = inv_cosh;
    for (std::size_t n = 0; n <= n_max; ++n) {
        occ[0] = occ[1] = static_cast<std::uint8_t>(n);
        s.amplitudes[s.basis->rank(occ)] = c;
        c *= lambda;
    }
    s.norm_deficit = 1.0 - s.norm_squared();
    return s;
}

namespace detail {

/// Fock-space matrix of the passive two-mode unitary with mode matrix M,
/// restricted to the block of L photons in the pair, basis |k, L-k>.
class PassiveBlocks {
   public:
    PassiveBlocks(const Eigen::Matrix2cd& M, std::size_t max_total) {
        // M = exp(-i H) with Hermitian H; the Fock unitary is exp(-i sum H_kl a_k^dag a_l).
        Eigen::ComplexSchur<Eigen::Matrix2cd> schur(M);
        const Eigen::Matrix2cd& Q = schur.matrixU();
        const Eigen::Matrix2cd& T = schur.matrixT();
        Eigen::Matrix2cd D = Eigen::Matrix2cd::Zero();
        D(0, 0) = -std::arg(T(0, 0));
        D(1, 1) = -std::arg(T(1, 1));
        const Eigen::Matrix2cd H = Q * D * Q.adjoint();
        blocks_.reserve(max_total + 1);
        for (std::size_t L = 0; L <= max_total; ++L) {
            const auto dim = static_cast<Eigen::Index>(L + 1);
            Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(dim, dim);
            for (Eigen::Index k = 0; k < dim; ++k) {
                const double n0 = static_cast<double>(k);
                const double n1 = static_cast<double>(L) - n0;
                gen(k, k) = H(0, 0) * n0 + H(1, 1) * n1;
                if (k + 1 < dim) {
                    // a_0^dag a_1 |k, L-k> = sqrt((k+1)(L-k)) |k+1, L-k-1>
                    const double amp = std::sqrt((n0 + 1.0) * n1);
                    gen(k + 1, k) = H(0, 1) * amp;
                    gen(k, k + 1) = H(1, 0) * amp;
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gen);
            Eigen::VectorXcd phases(dim);
            for (Eigen::Index k = 0; k < dim; ++k) phases(k) = std::exp(Complex(0.0, -es.eigenvalues()(k)));
            blocks_.push_back(es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint());
        }
    }

    const Eigen::MatrixXcd& block(std::size_t L) const { return blocks_[L]; }

   private:
    std::vector<Eigen::MatrixXcd> blocks_;
};

}  // namespace detail

/// Applies the passive gate whose Heisenberg action is (a_i, a_j) -> M (a_i, a_j).
inline FockState apply_passive_fock(const FockState& state, const Eigen::Matrix2cd& M, std::size_t mode_i,
                                    std::size_t mode_j) {
    detail::require(mode_i != mode_j && mode_i < state.n_modes() && mode_j < state.n_modes(),
                    "apply_passive_fock: invalid mode pair");
    detail::require((M.adjoint() * M - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <= 1e-12,
                    "apply_passive_fock: only passive (unitary) mode maps are supported");
    const SimplexBasis& basis = *state.basis;
    const detail::PassiveBlocks blocks(M, basis.max_total());
    FockState out = state;
    std::vector<std::uint8_t> occ(basis.n_modes());
    Eigen::VectorXcd in_block, out_block;
    std::vector<std::size_t> idx;
    for (std::size_t s = 0; s < basis.size(); ++s) {
        const std::uint8_t* o = basis.occupation(s);
        if (o[mode_i] != 0) continue;
        const std::size_t L = o[mode_j];
        std::copy(o, o + basis.n_modes(), occ.begin());
        in_block.resize(static_cast<Eigen::Index>(L + 1));
        idx.resize(L + 1);
        bool any = false;
        for (std::size_t k = 0; k <= L; ++k) {
            occ[mode_i] = static_cast<std::uint8_t>(k);
            occ[mode_j] = static_cast<std::uint8_t>(L - k);
            idx[k] = basis.rank(occ);
            in_block(static_cast<Eigen::Index>(k)) = state.amplitudes[idx[k]];
            any = any || in_block(static_cast<Eigen::Index>(k)) != Complex{};
        }
        if (!any) continue;
        out_block.noalias() = blocks.block(L) * in_block;
        for (std::size_t k = 0; k <= L; ++k) out.amplitudes[idx[k]] = out_block(static_cast<Eigen::Index>(k));
    }
    return out;
}

inline FockState apply_beam_splitter_fock(const FockState& state, const BsSpec& spec, std::size_t mode_i,
                                          std::size_t mode_j) {
    return apply_passive_fock(state, mode_matrix(spec), mode_i, mode_j);
}

/// a -> e^{i phi} a on one mode, i.e. |n> -> e^{i n phi} |n>.
inline FockState apply_phase_fock(const FockState& state, double phi, std::size_t mode) {
    detail::require(mode < state.n_modes(), "apply_phase_fock: mode index out of range");
    FockState out = state;
    const SimplexBasis& basis = *state.basis;
    for (std::size_t s = 0; s < basis.size(); ++s) {
        const double n = basis.occupation(s)[mode];
        if (n != 0.0) out.amplitudes[s] *= std::exp(Complex(0.0, phi * n));
    }
    return out;
}

/// Loss a -> cos(alpha) a + sin(alpha) u against the vacuum ancilla u.
inline FockState apply_loss_fock(const FockState& state, std::size_t mode, std::size_t ancilla, double alpha) {
    Eigen::Matrix2cd M;
    M << std::cos(alpha), std::sin(alpha), -std::sin(alpha), std::cos(alpha);
    return apply_passive_fock(state, M, mode, ancilla);
}

/// Applies the quadrature e^{-i theta} a + e^{i theta} a^dag of one mode
/// (theta = 0 gives x, theta = pi/2 gives p). The result lives in a basis
/// with one more photon of headroom, so nothing is truncated.
inline FockState apply_quadrature_fock(const FockState& state, std::size_t mode, double theta = 0.0) {
    detail::require(mode < state.n_modes(), "apply_quadrature_fock: mode index out of range");
    const SimplexBasis& in = *state.basis;
    const Complex lower = theta == 0.0 ? Complex(1.0) : std::exp(Complex(0.0, -theta));
    const Complex raise = std::conj(lower);
    FockState out;
    out.n_max = state.n_max;
    out.basis = SimplexBasis::get(in.n_modes(), in.max_total() + 1);
    out.amplitudes.assign(out.basis->size(), Complex{});
    std::vector<std::uint8_t> occ(in.n_modes());
    for (std::size_t s = 0; s < in.size(); ++s) {
        const Complex a = state.amplitudes[s];
        if (a == Complex{}) continue;
        const std::uint8_t* o = in.occupation(s);
        std::copy(o, o + in.n_modes(), occ.begin());
        const std::size_t n = o[mode];
        occ[mode] = static_cast<std::uint8_t>(n + 1);
        out.amplitudes[out.basis->rank(occ)] += raise * std::sqrt(static_cast<double>(n + 1)) * a;
        if (n > 0) {
            occ[mode] = static_cast<std::uint8_t>(n - 1);
            out.amplitudes[out.basis->rank(occ)] += lower * std::sqrt(static_cast<double>(n)) * a;
        }
    }
    return out;
}

/// Symmetrized quadrature covariance Re<r_i psi | r_j psi> over the listed
/// modes, in (x, p) ordering.
inline Eigen::MatrixXd fock_covariance(const FockState& state, const std::vector<std::size_t>& modes) {
    std::vector<FockState> applied;
    for (std::size_t m : modes) {
        applied.push_back(apply_quadrature_fock(state, m, 0.0));
        applied.push_back(apply_quadrature_fock(state, m, std::numbers::pi / 2));
    }
    const auto dim = static_cast<Eigen::Index>(applied.size());
    Eigen::MatrixXd cov(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            Complex dot{};
            const auto& u = applied[static_cast<std::size_t>(i)].amplitudes;
            const auto& v = applied[static_cast<std::size_t>(j)].amplitudes;
            for (std::size_t s = 0; s < u.size(); ++s) dot += std::conj(u[s]) * v[s];
            cov(i, j) = dot.real();
        }
    }
    return cov;
}

/// Probability weight in the two highest photon-number sectors of the basis.
inline double cutoff_edge_weight(const FockState& state) {
    const SimplexBasis& basis = *state.basis;
    const std::size_t edge = basis.max_total() >= 1 ? basis.max_total() - 1 : 0;
    double w = 0.0;
    for (std::size_t s = 0; s < basis.size(); ++s) {
        if (basis.total(s) >= edge) w += std::norm(state.amplitudes[s]);
    }
    return w;
}

struct FockMoments {
    double m1 = 0.0;  ///< <x_a x_b>
    double m2 = 0.0;  ///< <x_a^2 x_b^2>
};

/// Homodyne-product moments evaluated directly on the state vector.
inline FockMoments fock_moments(const FockState& state, std::size_t mode_a, std::size_t mode_b,
                                double edge_tol = 1e-12) {
    detail::require(mode_a != mode_b && mode_a < state.n_modes() && mode_b < state.n_modes(),
                    "fock_moments: invalid mode pair");
    if (state.basis->max_total() >= 2) {
        const double edge = cutoff_edge_weight(state);
        if (edge > edge_tol) {
            throw CutoffError("fock_moments: weight " + std::to_string(edge) +
                              " at the photon cutoff; increase n_max");
        }
    }
    const FockState xa = apply_quadrature_fock(state, mode_a);
    const FockState xb = apply_quadrature_fock(state, mode_b);
    const FockState xab = apply_quadrature_fock(xb, mode_a);
    Complex m1{};
    for (std::size_t s = 0; s < xa.amplitudes.size(); ++s) m1 += std::conj(xa.amplitudes[s]) * xb.amplitudes[s];
    if (std::abs(m1.imag()) > 1e-12 * std::max(1.0, std::abs(m1.real()))) {
        throw NumericalError("fock_moments: <x_a x_b> has imaginary residue " + std::to_string(m1.imag()));
    }
    return {m1.real(), xab.norm_squared()};
}

/// Total photon number expectation.
inline double fock_mean_photon_number(const FockState& state) {
    double n = 0.0;
    for (std::size_t s = 0; s < state.basis->size(); ++s) {
        n += static_cast<double>(state.basis->total(s)) * std::norm(state.amplitudes[s]);
    }
    return n;
}

/// Per-mode photon number expectation.
inline double fock_mode_occupation(const FockState& state, std::size_t mode) {
    double n = 0.0;
    for (std::size_t s = 0; s < state.basis->size(); ++s) {
        n += static_cast<double>(state.basis->occupation(s)[mode]) * std::norm(state.amplitudes[s]);
    }
    return n;
}

/// The interferometer pipeline in Fock space. Modes 0 and 1 carry a and b; one
/// vacuum ancilla is appended per non-zero loss angle.
inline FockState fock_pipeline(const InterferometerConfig& config, double phi, std::optional<std::size_t> n_max = {}) {
    config.validate();
    const std::size_t cutoff = n_max.value_or(required_cutoff(config.gain));
    std::size_t ancillas = 0;
    for (double loss : {config.alpha1, config.beta1, config.alpha2, config.beta2}) ancillas += loss != 0.0;
    FockState s = tmsv_fock(config.gain, config.xi, cutoff, 2 + ancillas);
    std::size_t next = 2;
    auto loss = [&](std::size_t mode, double alpha) {
        if (alpha != 0.0) s = apply_loss_fock(s, mode, next++, alpha);
    };
    loss(0, config.alpha1);
    loss(1, config.beta1);
    s = apply_beam_splitter_fock(s, {BsVariant::B1, config.delta1}, 0, 1);
    s = apply_phase_fock(s, phi, 0);
    loss(0, config.alpha2);
    loss(1, config.beta2);
    return apply_beam_splitter_fock(s, {BsVariant::B2, config.delta2}, 0, 1);
}

// ---------------------------------------------------------------------------
// Oracle/engine equivalence grid

struct OracleCase {
    InterferometerConfig config;
    double phi = 0.0;
};

struct OracleOutcome {
    OracleCase input;
    std::size_t n_max = 0;
    FockMoments oracle;
    FockMoments engine;
    double deviation = std::numeric_limits<double>::infinity();
    std::string error;  ///< non-empty when the oracle refused the case
};

/// G x Phi x delta1 x delta2 x loss placement, where the loss angle 0.1 is
/// applied either symmetrically before B1 or symmetrically in the arms.
inline std::vector<OracleCase> default_oracle_grid(const std::vector<double>& gains = {0.2, 0.5, 0.8}) {
    const double phis[] = {0.0, std::numbers::pi / 8, std::numbers::pi / 4, std::numbers::pi / 2, 1.3};
    const double imbalances[] = {0.0, 0.1, -0.1};
    std::vector<OracleCase> grid;
    for (double g : gains) {
        for (int placement = 0; placement < 3; ++placement) {
            for (double d1 : imbalances) {
                for (double d2 : imbalances) {
                    for (double phi : phis) {
                        InterferometerConfig c = InterferometerConfig::ideal(g);
                        if (placement == 1) c.alpha1 = c.beta1 = 0.1;
                        if (placement == 2) c.alpha2 = c.beta2 = 0.1;
                        c.delta1 = d1;
                        c.delta2 = d2;
                        grid.push_back({c, phi});
                    }
                }
            }
        }
    }
    return grid;
}

inline OracleOutcome check_oracle_case(const OracleCase& c, std::optional<std::size_t> n_max = {}) {
    OracleOutcome out;
    out.input = c;
    out.n_max = n_max.value_or(required_cutoff(c.config.gain));
    const SignalStats e = evaluate(c.config, c.phi);
    out.engine = {e.mean_P, e.second_moment_P};
    try {
        out.oracle = fock_moments(fock_pipeline(c.config, c.phi, out.n_max), 0, 1);
        out.deviation = std::max(std::abs(out.oracle.m1 - out.engine.m1), std::abs(out.oracle.m2 - out.engine.m2));
    } catch (const CutoffError& ex) {
        out.error = ex.what();
    }
    return out;
}

}  // namespace sqint

#endif  // SQINT_FOCK_HPP
