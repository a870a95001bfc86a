#ifndef TMSV_FOCK_H
#define TMSV_FOCK_H

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <complex>
#include <cstddef>
#include <utility>

#include "tmsv/errors.h"

namespace tmsv {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using SpMat = Eigen::SparseMatrix<cplx>;

enum class Mode { A, B };

/// Pure state of one bosonic mode on the truncated basis |0>..|cutoff>.
class ModeState {
  public:
    /// Vacuum on a space with the given cutoff.
    explicit ModeState(std::size_t cutoff);
    explicit ModeState(Vec amps);

    static ModeState fock(std::size_t cutoff, std::size_t n);
    /// Coherent state |alpha> truncated at `cutoff` and renormalized.
    static ModeState coherent(cplx alpha, std::size_t cutoff);

    std::size_t cutoff() const {
        return static_cast<std::size_t>(amps_.size()) - 1;
    }
    std::size_t dim() const {
        return static_cast<std::size_t>(amps_.size());
    }
    const Vec &amps() const {
        return amps_;
    }
    Vec &amps() {
        return amps_;
    }
    double norm_squared() const {
        return amps_.squaredNorm();
    }
    ModeState &normalize();

  private:
    Vec amps_;
};

/// Pure two-mode state. Row index is the mode-A photon number, column index
/// the mode-B photon number. The flattened vector used by operators is
/// row-major: index = nA * (cutoffB + 1) + nB, which matches kron(opA, opB).
class TwoModeState {
  public:
    TwoModeState(std::size_t cutoff_a, std::size_t cutoff_b);
    explicit TwoModeState(Eigen::MatrixXcd amps);

    static TwoModeState from_flat(std::size_t cutoff_a, std::size_t cutoff_b, const Vec &flat);

    std::size_t cutoff_a() const {
        return static_cast<std::size_t>(amps_.rows()) - 1;
    }
    std::size_t cutoff_b() const {
        return static_cast<std::size_t>(amps_.cols()) - 1;
    }
    std::size_t dim() const {
        return static_cast<std::size_t>(amps_.size());
    }
    const Eigen::MatrixXcd &amps() const {
        return amps_;
    }
    Eigen::MatrixXcd &amps() {
        return amps_;
    }
    cplx operator()(std::size_t na, std::size_t nb) const {
        return amps_(static_cast<Eigen::Index>(na), static_cast<Eigen::Index>(nb));
    }
    Vec flat() const;
    double norm_squared() const {
        return amps_.squaredNorm();
    }
    TwoModeState &normalize();

  private:
    Eigen::MatrixXcd amps_;
};

/// Square operator on a truncated Fock space (single- or two-mode).
class OperatorMatrix {
  public:
    OperatorMatrix() = default;
    explicit OperatorMatrix(SpMat m);

    static OperatorMatrix identity(std::size_t dim);

    std::size_t dim() const {
        return static_cast<std::size_t>(m_.rows());
    }
    const SpMat &matrix() const {
        return m_;
    }
    cplx at(std::size_t row, std::size_t col) const {
        return m_.coeff(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }
    OperatorMatrix adjoint() const;
    bool is_hermitian(double tol) const;
    /// Largest absolute column sum.
    double norm1() const;

    Vec apply(const Vec &v) const;

    friend OperatorMatrix operator+(const OperatorMatrix &a, const OperatorMatrix &b);
    friend OperatorMatrix operator-(const OperatorMatrix &a, const OperatorMatrix &b);
    friend OperatorMatrix operator*(const OperatorMatrix &a, const OperatorMatrix &b);
    friend OperatorMatrix operator*(cplx s, const OperatorMatrix &a);

  private:
    SpMat m_;
};

/// a|n> = sqrt(n)|n-1>; entries (n-1, n) = sqrt(n).
OperatorMatrix annihilator(std::size_t cutoff);
OperatorMatrix creator(std::size_t cutoff);
OperatorMatrix number_operator(std::size_t cutoff);

/// X = a + a^dagger and Y = -i(a - a^dagger); vacuum variance 1 each.
std::pair<OperatorMatrix, OperatorMatrix> quadratures(std::size_t cutoff);

/// op (x) 1 for Mode::A, 1 (x) op for Mode::B, in TwoModeState flat order.
OperatorMatrix embed_op(const OperatorMatrix &op, Mode which, std::size_t cutoff_a,
                        std::size_t cutoff_b);

cplx expectation(const ModeState &state, const OperatorMatrix &op);
cplx expectation(const TwoModeState &state, const OperatorMatrix &op);
/// <A^2> - <A>^2 for Hermitian A, clamped at zero.
double variance(const ModeState &state, const OperatorMatrix &op);
double variance(const TwoModeState &state, const OperatorMatrix &op);

struct EvolveOptions {
    /// Maximum probability allowed on the outermost Fock layer afterwards.
    double leakage_threshold = 1e-10;
};

template <typename State>
struct Evolved {
    State state;
    /// Probability on the truncation edge (basis states with any mode at
    /// its cutoff). A proxy for the mass a larger space would carry beyond.
    double leakage;
};

/// exp(time * generator) |state>, computed by scaled Taylor steps acting on
/// the vector (the dense exponential is never formed).
Evolved<ModeState> apply_exponential(const OperatorMatrix &generator, const ModeState &state,
                                     double time, const EvolveOptions &opts = {});
Evolved<TwoModeState> apply_exponential(const OperatorMatrix &generator, const TwoModeState &state,
                                        double time, const EvolveOptions &opts = {});

cplx overlap(const ModeState &s1, const ModeState &s2);
cplx overlap(const TwoModeState &s1, const TwoModeState &s2);
double fidelity(const ModeState &s1, const ModeState &s2);
double fidelity(const TwoModeState &s1, const TwoModeState &s2);

/// Smallest N >= 1 with lambda^(2N) / (1 - lambda^2) <= tail_tol.
std::size_t schmidt_cutoff(double lambda, double tail_tol);
/// Smallest N whose Poisson(|alpha|^2) tail beyond N is <= tail_tol.
std::size_t coherent_cutoff(cplx alpha, double tail_tol);

/// Fock amplitudes <n|alpha>, n = 0..cutoff, evaluated in log space so that
/// large n underflow cleanly instead of overflowing.
Vec coherent_amplitudes(cplx alpha, std::size_t cutoff);

}  // namespace tmsv

#endif
