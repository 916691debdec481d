#ifndef SQINT_GAUSSIAN_HPP
#define SQINT_GAUSSIAN_HPP

// Zero-mean multimode Gaussian states in the quadrature representation
//
//   x = a^dag + a,   p = i (a^dag - a),   [x, p] = 2i,
//
// ordered (x_1, p_1, x_2, p_2, ...). The vacuum covariance is the identity and
// a physical covariance satisfies cov + i*Omega >= 0.
//
// A state is stored as a square-root factor F with cov = F * F^T. Symplectic
// maps act as F -> S F and a loss channel appends two columns, so the diagonal
// of cov is always a sum of squares. This keeps strongly squeezed quadratures
// (variance ~ e^{-2G}) accurate to relative precision instead of losing them to
// the cancellation cosh(2G) - sinh(2G) of the plain covariance update.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "sqint/error.hpp"

namespace sqint {

using Complex = std::complex<double>;

/// Standard symplectic form for `n_modes` modes in (x, p) ordering.
inline Eigen::MatrixXd symplectic_form(std::size_t n_modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (std::size_t k = 0; k < n_modes; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

class GaussianState {
   public:
    /// Builds a state from a covariance factor; cov = factor * factor^T.
    static GaussianState from_factor(Eigen::MatrixXd factor) {
        detail::require(factor.rows() > 0 && factor.rows() % 2 == 0,
                        "covariance factor must have 2*n_modes rows");
        GaussianState s;
        s.factor_ = std::move(factor);
        return s;
    }

    /// Builds a state from an explicit covariance matrix. The matrix must be
    /// symmetric positive definite; physicality is not enforced here.
    static GaussianState from_covariance(const Eigen::MatrixXd& cov) {
        detail::require(cov.rows() == cov.cols() && cov.rows() > 0 && cov.rows() % 2 == 0,
                        "covariance must be square with 2*n_modes rows");
        detail::require((cov - cov.transpose()).cwiseAbs().maxCoeff() <= 1e-12,
                        "covariance must be symmetric");
        Eigen::LLT<Eigen::MatrixXd> llt(cov);
        detail::require(llt.info() == Eigen::Success, "covariance must be positive definite");
        return from_factor(llt.matrixL());
    }

    std::size_t n_modes() const { return static_cast<std::size_t>(factor_.rows() / 2); }

    const Eigen::MatrixXd& factor() const { return factor_; }

    Eigen::MatrixXd cov() const { return factor_ * factor_.transpose(); }

    /// Single covariance entry, evaluated as a row dot product of the factor.
    double cov_entry(std::size_t i, std::size_t j) const {
        return factor_.row(static_cast<Eigen::Index>(i)).dot(factor_.row(static_cast<Eigen::Index>(j)));
    }

   private:
    GaussianState() = default;
    Eigen::MatrixXd factor_;
};

inline GaussianState vacuum_state(std::size_t n_modes) {
    detail::require(n_modes >= 1, "vacuum_state: n_modes must be >= 1");
    const auto dim = static_cast<Eigen::Index>(2 * n_modes);
    return GaussianState::from_factor(Eigen::MatrixXd::Identity(dim, dim));
}

/// A lossless Gaussian unitary acting on a subset of modes.
struct SymplecticOp {
    std::vector<std::size_t> modes;  ///< modes acted on, in block order
    Eigen::MatrixXd matrix;          ///< 2*modes.size() square, real symplectic
    std::string label;
};

/// Converts a Bogoliubov map  a_out = A a + B a^dag  (k modes) into the real
/// 2k x 2k matrix acting on (x, p) quadratures.
inline Eigen::MatrixXd quadrature_matrix(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    detail::require(A.rows() == A.cols() && B.rows() == A.rows() && B.cols() == A.cols(),
                    "Bogoliubov blocks must be square and of equal size");
    const Eigen::Index k = A.rows();
    Eigen::MatrixXd S(2 * k, 2 * k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            const Complex sum = A(i, j) + B(i, j);
            const Complex diff = A(i, j) - B(i, j);
            S(2 * i, 2 * j) = sum.real();
            S(2 * i, 2 * j + 1) = -diff.imag();
            S(2 * i + 1, 2 * j) = sum.imag();
            S(2 * i + 1, 2 * j + 1) = diff.real();
        }
    }
    return S;
}

/// Largest entry of |S Omega S^T - Omega|.
inline double symplectic_defect(const Eigen::MatrixXd& S) {
    const auto omega = symplectic_form(static_cast<std::size_t>(S.rows() / 2));
    return (S * omega * S.transpose() - omega).cwiseAbs().maxCoeff();
}

/// Non-degenerate parametric amplifier on modes (i, j):
///   a_i -> U a_i + V a_j^dag,  a_j -> U a_j + V a_i^dag,
/// with U = cosh G and V = -i e^{i xi} sinh G.
inline SymplecticOp two_mode_squeezer(double gain, double xi, std::size_t mode_i, std::size_t mode_j) {
    detail::require(mode_i != mode_j, "two_mode_squeezer: modes must differ");
    detail::require(gain >= 0.0 && std::isfinite(gain), "two_mode_squeezer: gain must be >= 0");
    const Complex u = std::cosh(gain);
    const Complex v = Complex(0.0, -1.0) * std::exp(Complex(0.0, xi)) * std::sinh(gain);
    Eigen::MatrixXcd A = u * Eigen::MatrixXcd::Identity(2, 2);
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(2, 2);
    B(0, 1) = v;
    B(1, 0) = v;
    return {{mode_i, mode_j}, quadrature_matrix(A, B), "two_mode_squeezer"};
}

/// a -> e^{i phi} a on one mode.
inline SymplecticOp phase_shifter(double phi, std::size_t mode) {
    Eigen::MatrixXd R(2, 2);
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    R << c, -s, s, c;
    return {{mode}, R, "phase_shifter"};
}

enum class BsVariant { B1, B2 };

/// Beam-splitter family and imbalance angle; transmission is cos^2(pi/4 + imbalance).
struct BsSpec {
    BsVariant variant = BsVariant::B1;
    double imbalance = 0.0;
};

/// The 2x2 mode matrix M with (a_out, b_out) = M (a_in, b_in).
///   B1: [[ cos t, -i sin t], [-i sin t,  cos t]]
///   B2: [[-cos t,  i sin t], [-i sin t,  cos t]],   t = pi/4 + imbalance.
/// At zero imbalance these are the balanced mixers of the interferometer.
inline Eigen::Matrix2cd mode_matrix(const BsSpec& spec) {
    detail::require(std::abs(spec.imbalance) < std::numbers::pi / 4,
                    "beam_splitter: |imbalance| must be < pi/4");
    const double t = std::numbers::pi / 4 + spec.imbalance;
    const Complex c = std::cos(t);
    const Complex is = Complex(0.0, std::sin(t));
    Eigen::Matrix2cd M;
    if (spec.variant == BsVariant::B1) {
        M << c, -is, -is, c;
    } else {
        M << -c, is, -is, c;
    }
    return M;
}

/// Passive two-mode op from an explicit unitary mode matrix.
inline SymplecticOp passive_op(const Eigen::Matrix2cd& M, std::size_t mode_i, std::size_t mode_j,
                               std::string label) {
    detail::require(mode_i != mode_j, "passive_op: modes must differ");
    return {{mode_i, mode_j}, quadrature_matrix(M, Eigen::MatrixXcd::Zero(2, 2)), std::move(label)};
}

inline SymplecticOp beam_splitter(const BsSpec& spec, std::size_t mode_i, std::size_t mode_j) {
    return passive_op(mode_matrix(spec), mode_i, mode_j,
                      spec.variant == BsVariant::B1 ? "beam_splitter_B1" : "beam_splitter_B2");
}

inline GaussianState apply_symplectic(const GaussianState& state, const SymplecticOp& op) {
    const std::size_t k = op.modes.size();
    detail::require(k > 0 && static_cast<std::size_t>(op.matrix.rows()) == 2 * k &&
                        op.matrix.rows() == op.matrix.cols(),
                    "apply_symplectic: op matrix does not match its mode list");
    for (std::size_t m : op.modes) {
        detail::require(m < state.n_modes(), "apply_symplectic: mode index out of range");
    }
    const Eigen::MatrixXd& F = state.factor();
    Eigen::MatrixXd out = F;
    for (std::size_t r = 0; r < 2 * k; ++r) {
        const auto row = static_cast<Eigen::Index>(2 * op.modes[r / 2] + r % 2);
        out.row(row).setZero();
        for (std::size_t c = 0; c < 2 * k; ++c) {
            const double s = op.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            if (s != 0.0) {
                out.row(row) += s * F.row(static_cast<Eigen::Index>(2 * op.modes[c / 2] + c % 2));
            }
        }
    }
    return GaussianState::from_factor(std::move(out));
}

/// Pure loss a -> cos(alpha) a + sin(alpha) u with vacuum u traced out:
/// the mode's block becomes cos^2 * block + sin^2 * I and its cross terms scale by cos.
inline GaussianState apply_loss(const GaussianState& state, std::size_t mode, double alpha) {
    detail::require(mode < state.n_modes(), "apply_loss: mode index out of range");
    detail::require(alpha >= 0.0 && alpha <= std::numbers::pi / 2, "apply_loss: alpha must lie in [0, pi/2]");
    if (alpha == 0.0) return state;
    const Eigen::MatrixXd& F = state.factor();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(F.rows(), F.cols() + 2);
    out.leftCols(F.cols()) = F;
    const double c = std::cos(alpha);
    const double s = std::sin(alpha);
    const auto x = static_cast<Eigen::Index>(2 * mode);
    out.row(x).head(F.cols()) *= c;
    out.row(x + 1).head(F.cols()) *= c;
    out(x, F.cols()) = s;
    out(x + 1, F.cols() + 1) = s;
    return GaussianState::from_factor(std::move(out));
}

/// Smallest eigenvalue of cov + i*Omega; physical states give a value >= 0.
inline double physicality_margin(const GaussianState& state) {
    const Eigen::MatrixXd cov = state.cov();
    const Eigen::MatrixXcd h = cov.cast<Complex>() + Complex(0.0, 1.0) * symplectic_form(state.n_modes()).cast<Complex>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

inline bool is_physical(const GaussianState& state, double tol = 1e-10) {
    return physicality_margin(state) >= -tol;
}

}  // namespace sqint

#endif  // SQINT_GAUSSIAN_HPP
