#ifndef TMSV_QUAD_TELEPORT_H
#define TMSV_QUAD_TELEPORT_H

#include <cstddef>
#include <functional>
#include <variant>
#include <vector>

#include "tmsv/fock.h"

// Quadrature-measurement teleportation on a position grid.
//
// Positions x are eigenvalues of X = a + a^dagger, so the vacuum is
// (2 pi)^{-1/4} exp(-x^2/4) and Y = -2i d/dx. The resource is
// sum_n lambda^n |n>_A|n>_B, whose wavefunction is
//   E(xA, xB) ~ exp[-(xA - xB)^2 e^{2r}/8 - (xA + xB)^2 e^{-2r}/8],
// and the sender measures X_T - X_A (outcome X) and Y_T + Y_A (outcome Y),
// both on the same X = a + a^dagger scale.

namespace tmsv::quad {

/// Uniform grid on [-extent, extent].
struct Grid {
    double extent = 12.0;
    std::size_t points = 2048;

    double spacing() const {
        return 2.0 * extent / static_cast<double>(points - 1);
    }
    double x(std::size_t i) const {
        return -extent + spacing() * static_cast<double>(i);
    }
    void validate() const;

    /// Largest spacing that resolves the squeezed kernel at r.
    static double max_spacing(double r);
    /// Default grid for a target centred near 2|alpha|, refined for r.
    static Grid for_protocol(double alpha_magnitude, double r, std::size_t min_points = 2048);
};

class WaveFunction {
  public:
    WaveFunction(Grid grid, std::vector<cplx> samples);

    const Grid &grid() const {
        return grid_;
    }
    const std::vector<cplx> &samples() const {
        return samples_;
    }
    std::vector<cplx> &samples() {
        return samples_;
    }
    /// Trapezoid-rule integral of |psi|^2.
    double norm_squared() const;
    WaveFunction &normalize();
    /// Trapezoid-rule integral of x^k |psi|^2.
    double moment(int k) const;

  private:
    Grid grid_;
    std::vector<cplx> samples_;
};

/// Trapezoid-rule <a|b>.
cplx inner(const WaveFunction &a, const WaveFunction &b);

struct CoherentTarget {
    cplx alpha;
};
struct NumberTarget {
    std::size_t n;
};
struct CustomTarget {
    WaveFunction psi;
};
using TargetSpec = std::variant<CoherentTarget, NumberTarget, CustomTarget>;

/// Target sampled on the grid and normalized. Throws GridCoverage when the
/// density at either edge exceeds 1e-12 of its peak.
WaveFunction target_wavefunction(const TargetSpec &spec, const Grid &grid);

/// (2 pi)^{-1/2} exp[-(x1 + x2)^2 e^{2r}/4 - (x1 - x2)^2 e^{-2r}/4].
///
/// Arguments are in the unit-variance-1/2 quadrature scale (x / sqrt 2 in
/// the grid's units). In those units it is the squeezed resource
/// wavefunction up to normalization.
double kernel_G(double x1, double x2, double r);

struct QuadOutcome {
    double X = 0.0;  // measured X_T - X_A
    double Y = 0.0;  // measured Y_T + Y_A
};

struct Gains {
    double gx = 1.0;
    double gy = 1.0;
};

/// Calibrated at r = 3, outcome (1, 1), coherent alpha = 1; see calibrate_gains.
inline constexpr Gains kUnitGains{1.0, 1.0};

/// Resource wavefunction E(xA, xB) on the grid scale.
using ResourceWavefunction = std::function<cplx(double xa, double xb)>;

/// Normalized mode-B state
///   phi(x) = int dx' e^{i Y x'/2} K(x', x) psi(X - x'),   x' = -xA,
/// with K(x', x) = G(x'/sqrt 2, x/sqrt 2; r). Only the band where the kernel
/// exceeds e^{-50} of its peak is summed.
WaveFunction teleport_conditional(const WaveFunction &psi, const QuadOutcome &outcome, double r);

/// Same conditional state for an arbitrary resource wavefunction, by a dense
/// trapezoid sum. Used to cross-check the kernel path.
WaveFunction teleport_conditional(const WaveFunction &psi, const QuadOutcome &outcome,
                                  const ResourceWavefunction &resource);

/// Weyl displacement by (gx X) along X and (gy Y) along Y:
///   phi(x) -> exp(i b (x - a/2)) phi(x - a),  a = gx X, b = gy Y / 2.
/// The position shift is spectral (FFT), so a correction followed by its
/// inverse reproduces the input to rounding error.
WaveFunction correct(const WaveFunction &phi, const QuadOutcome &outcome, const Gains &gains);

/// |<psi | corrected output>|^2 for one outcome.
double protocol_fidelity(const TargetSpec &spec, double r, const QuadOutcome &outcome,
                         const Gains &gains, const Grid &grid);

struct Calibration {
    Gains gains;
    double fidelity;
};

/// Maximizes protocol_fidelity over each gain separately (golden section on
/// [0.25, 4]) at r = 3, outcome (1, 1), coherent alpha = 1.
Calibration calibrate_gains();

}  // namespace tmsv::quad

#endif
