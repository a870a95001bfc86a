#ifndef TMSV_ANALYTICS_H
#define TMSV_ANALYTICS_H

#include <complex>

// Closed-form expressions for the squeezed-vacuum teleportation protocols.
// Every function here is a direct evaluation; the only approximation is the
// stopping rule on positive-term series (next term below 1e-15 of the
// partial sum, once past the Poisson peak).

namespace tmsv::analytics {

/// P(m) for a number-state target |N>: (1 - lambda^2) lambda^(2(N - m)) for
/// m <= N, zero otherwise. All integers m <= N carry probability.
double p_m_number(int n_target, double lambda, int m);

/// P(m) for a coherent target. m >= 0 is a Poisson-weighted series; m < 0 is
/// (1 - lambda^2) lambda^(2|m|) exp(-|alpha|^2 (1 - lambda^2)).
double p_m_coherent(std::complex<double> alpha, double lambda, int m);

/// The m < 0 branch as it is commonly printed, with lambda^(-2|m|). It is not
/// normalizable and exists only so the tests can reject it against brute force.
double p_m_coherent_negative_printed(std::complex<double> alpha, double lambda, int m);

/// Fidelity of the phase-corrected, number-displaced output for a coherent
/// target. Throws InvalidOutcome when P(m) = 0.
double f_m_coherent(std::complex<double> alpha, double lambda, int m);

/// exp(-|alpha|^2 (1 - lambda)^2): fidelity at m = 0 without displacement.
double f0_undisplaced(std::complex<double> alpha, double lambda);

/// exp(-(nbar_target / nbar_sv) lambda^2). With nbar_sv = lambda^2/(1-lambda^2)
/// this is exp(-|alpha|^2 (1 - lambda^2)), which differs from f0_undisplaced;
/// the two coincide only for nbar_sv = lambda^2 / (1 - lambda)^2.
double f0_ratio_form(double nbar_target, double nbar_sv, double lambda);

/// 2 exp(-2r).
double epr_variance(double r);

}  // namespace tmsv::analytics

#endif
