#ifndef TMSV_RESOURCE_H
#define TMSV_RESOURCE_H

#include <cstddef>

#include "tmsv/fock.h"

namespace tmsv {

/// Squeezing parameter r >= 0 together with lambda = tanh r.
class ResourceParams {
  public:
    static ResourceParams from_r(double r);
    static ResourceParams from_lambda(double lambda);

    double r() const {
        return r_;
    }
    double lambda() const {
        return lambda_;
    }

  private:
    ResourceParams(double r, double lambda) : r_(r), lambda_(lambda) {
    }
    double r_;
    double lambda_;
};

/// sqrt(1 - lambda^2) * sum_n lambda^n |n>|n>, truncated at `cutoff` in both
/// modes and renormalized over the kept support.
TwoModeState build_schmidt(double lambda, std::size_t cutoff);

/// The two-mode squeeze generator a b - a^dagger b^dagger on the composite space.
OperatorMatrix two_mode_squeeze_generator(std::size_t cutoff);

/// exp(-r (a^dagger b^dagger - a b)) |0,0>, evaluated numerically.
///
/// Note the sign: this evolution produces the Schmidt coefficients
/// (-tanh r)^n, i.e. build_schmidt(tanh r) with mode B rotated by pi.
/// See rotate_mode_b_by_pi.
TwoModeState build_by_evolution(double r, std::size_t cutoff, const EvolveOptions &opts = {});

/// exp(i pi N_B): flips the sign of every odd mode-B Fock amplitude.
TwoModeState rotate_mode_b_by_pi(const TwoModeState &state);

enum class Quadrature { X, Y };

/// Var(Q_A + sign * Q_B) with Q the chosen quadrature and sign = +1 or -1.
double pair_variance(const TwoModeState &state, Quadrature q, int sign);

struct EprVariances {
    double x_sum;   // Var(X_A + X_B)
    double y_diff;  // Var(Y_A - Y_B)
};

EprVariances epr_variances(const TwoModeState &state);

/// lambda^2 / (1 - lambda^2).
double mean_photon(double lambda);
/// <N_A> of a two-mode state.
double mean_photon(const TwoModeState &state);

/// Closed-form joint canonical phase density
/// (1 - lambda^2) / |1 - lambda e^{i(phiA + phiB)}|^2 with respect to
/// dphiA dphiB / (4 pi^2).
double joint_phase_pdf(double lambda, double phi_a, double phi_b);

/// |<phiA, phiB|state>|^2 using the unnormalized phase states
/// sum_n e^{i n phi}|n>, truncated at the state's cutoffs.
double joint_phase_pdf(const TwoModeState &state, double phi_a, double phi_b);

}  // namespace tmsv

#endif
