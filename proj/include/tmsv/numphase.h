#ifndef TMSV_NUMPHASE_H
#define TMSV_NUMPHASE_H

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "tmsv/fock.h"

// Teleportation through the two-mode squeezed vacuum using a photon-number
// difference measurement and a phase-sum measurement on the target T and the
// sender's mode A.
//
// Outcomes are stored as the integer m = N_T - N_A (twice the J_z
// eigenvalue). The three-mode input state is never materialized: for fixed
// m every quantity reduces to a sum over one Fock index.

namespace tmsv {

/// Fock amplitudes c_0..c_N of the target state. Normalized on construction.
class TargetCoeffs {
  public:
    explicit TargetCoeffs(std::vector<cplx> c);

    static TargetCoeffs number(std::size_t n);
    static TargetCoeffs coherent(cplx alpha, std::size_t cutoff);
    /// Coherent target truncated where its Poisson tail drops below `tail_tol`.
    static TargetCoeffs coherent_auto(cplx alpha, double tail_tol);

    std::size_t cutoff() const {
        return c_.size() - 1;
    }
    const std::vector<cplx> &coeffs() const {
        return c_;
    }
    /// c_n, or zero beyond the stored support.
    cplx operator[](std::ptrdiff_t n) const {
        return n >= 0 && static_cast<std::size_t>(n) < c_.size() ? c_[static_cast<std::size_t>(n)] : cplx{};
    }

  private:
    std::vector<cplx> c_;
};

struct OutcomePmf {
    std::map<int, double> entries;

    double at(int m) const;
    double total() const;
};

struct NumPhaseOptions {
    /// Schmidt tail tolerance; fixes how far m extends below zero.
    double tail_tol = 1e-12;
};

/// Outcome distribution of N_T - N_A by direct summation over the target
/// coefficients. Contains every m in [-N_res, N_target] with P(m) > 0.
OutcomePmf jz_pmf(const TargetCoeffs &c, double lambda, const NumPhaseOptions &opts = {});

/// P(m) for a single outcome, same summation as jz_pmf.
double outcome_probability(const TargetCoeffs &c, double lambda, int m);

/// Mode-B state conditioned on the protocol's measurement record.
struct ConditionalState {
    std::vector<cplx> amps;  // indexed by the mode-B Fock number
    int m = 0;
    std::optional<double> phase;  // phi_+ once the phase outcome is applied
    bool normalized = false;

    double norm_squared() const;
    ConditionalState normalized_copy() const;
    ModeState to_mode_state(std::size_t cutoff) const;
};

/// Unnormalized mode-B state after observing m. Its squared norm equals P(m).
/// m >= 0: sqrt(1-lambda^2) lambda^n c_{n+m} on |n>.
/// m <  0: sqrt(1-lambda^2) lambda^{n+|m|} c_n on |n+|m|>.
ConditionalState conditional_after_outcome(const TargetCoeffs &c, double lambda, int m);

/// Multiplies the amplitude on |j>_B by exp(-i phi (j + m/2)). The exponent is
/// half the total T+A photon number behind that amplitude, in both branches.
ConditionalState apply_phase_outcome(const ConditionalState &state, double phi_plus);

/// exp(i phi (N_B + m/2)), which undoes apply_phase_outcome exactly.
ConditionalState phase_correction(const ConditionalState &state, double phi_plus);

/// Shifts every amplitude up by `shift` Fock levels (down when negative).
/// Throws LossyDownshift when a downshift would discard amplitude above 1e-12.
ConditionalState number_displace(const ConditionalState &state, int shift);

/// Density of phi_+ given m with respect to dphi on [-pi, pi).
double phase_outcome_density(const TargetCoeffs &c, double lambda, int m, double phi_plus);

/// |<psi | corrected and displaced output>|^2 for outcome m.
double fidelity_displaced(const TargetCoeffs &c, double lambda, int m);
/// |<psi | corrected output>|^2 with no number displacement.
double fidelity_undisplaced(const TargetCoeffs &c, double lambda, int m);

struct RunRecord {
    int m = 0;
    double phi_plus = 0.0;
    std::optional<double> fidelity_displaced;
    double fidelity_undisplaced = 0.0;
    std::uint64_t seed = 0;
};

/// Monte Carlo driver. Holds the outcome distribution so repeated trials do
/// not re-sum it.
class TrialSampler {
  public:
    TrialSampler(TargetCoeffs c, double lambda, const NumPhaseOptions &opts = {});

    /// One full protocol realization. Deterministic in `seed`.
    RunRecord run(std::uint64_t seed) const;

    const OutcomePmf &pmf() const {
        return pmf_;
    }

  private:
    TargetCoeffs c_;
    double lambda_;
    OutcomePmf pmf_;
    std::vector<int> outcomes_;
    std::vector<double> cdf_;
};

RunRecord sample_run(const TargetCoeffs &c, double lambda, std::uint64_t seed);

}  // namespace tmsv

#endif
