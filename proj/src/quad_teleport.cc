#include "tmsv/quad_teleport.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace tmsv::quad {

namespace {

constexpr double kEdgeDensityTol = 1e-12;
// Kernel terms below exp(-kBandExponent) of the peak are skipped.
constexpr double kBandExponent = 50.0;

double trapezoid_weight(std::size_t i, std::size_t n) {
    return (i == 0 || i + 1 == n) ? 0.5 : 1.0;
}

double peak_density(const std::vector<cplx> &s) {
    double peak = 0.0;
    for (const auto &v : s) {
        peak = std::max(peak, std::norm(v));
    }
    return peak;
}

void require_edges_clear(const std::vector<cplx> &s, const char *what) {
    const double peak = peak_density(s);
    if (!(peak > 0.0)) {
        throw GridCoverage(std::string(what) + " vanishes on the grid");
    }
    const double edge = std::max(std::norm(s.front()), std::norm(s.back()));
    if (edge > kEdgeDensityTol * peak) {
        throw GridCoverage(std::string(what) + " is not contained in the grid (edge/peak density " +
                           std::to_string(edge / peak) + "); enlarge the grid extent");
    }
}

bool same_grid(const Grid &a, const Grid &b) {
    return a.points == b.points && a.extent == b.extent;
}

// psi(x - a) on a periodic grid, applied as a phase ramp in Fourier space.
std::vector<cplx> spectral_shift(const std::vector<cplx> &in, double a, double h) {
    const std::size_t n = in.size();
    std::vector<cplx> buf(in);
    auto *data = reinterpret_cast<fftw_complex *>(buf.data());
    const int len = static_cast<int>(n);
    fftw_plan fwd = fftw_plan_dft_1d(len, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_plan bwd = fftw_plan_dft_1d(len, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(fwd);
    const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * h);
    for (std::size_t k = 0; k < n; ++k) {
        double kk = k < (n + 1) / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
        buf[k] *= std::polar(1.0 / static_cast<double>(n), -kk * dk * a);
    }
    fftw_execute(bwd);
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    return buf;
}

}  // namespace

void Grid::validate() const {
    if (points < 64) {
        throw InvalidDimension("grid needs at least 64 points");
    }
    if (!(extent > 0.0) || !std::isfinite(extent)) {
        throw InvalidDimension("grid extent must be positive and finite");
    }
}

double Grid::max_spacing(double r) {
    return std::exp(-r) / 8.0;
}

Grid Grid::for_protocol(double alpha_magnitude, double r, std::size_t min_points) {
    Grid g;
    g.extent = std::max(12.0, 2.0 * alpha_magnitude + 10.0);
    auto needed = static_cast<std::size_t>(std::ceil(2.0 * g.extent / max_spacing(r))) + 1;
    g.points = std::max(min_points, needed);
    return g;
}

WaveFunction::WaveFunction(Grid grid, std::vector<cplx> samples) : grid_(grid), samples_(std::move(samples)) {
    grid_.validate();
    if (samples_.size() != grid_.points) {
        throw DimensionMismatch("wavefunction has " + std::to_string(samples_.size()) + " samples for a " +
                                std::to_string(grid_.points) + "-point grid");
    }
}

double WaveFunction::norm_squared() const {
    return moment(0);
}

double WaveFunction::moment(int k) const {
    const double h = grid_.spacing();
    const std::size_t n = samples_.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += trapezoid_weight(i, n) * std::pow(grid_.x(i), k) * std::norm(samples_[i]);
    }
    return sum * h;
}

WaveFunction &WaveFunction::normalize() {
    const double n2 = norm_squared();
    if (!(n2 > 0.0)) {
        throw InvalidParameter("cannot normalize a vanishing wavefunction");
    }
    const double scale = 1.0 / std::sqrt(n2);
    for (auto &s : samples_) {
        s *= scale;
    }
    return *this;
}

cplx inner(const WaveFunction &a, const WaveFunction &b) {
    if (!same_grid(a.grid(), b.grid())) {
        throw DimensionMismatch("inner product of wavefunctions on different grids");
    }
    const std::size_t n = a.samples().size();
    cplx sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += trapezoid_weight(i, n) * std::conj(a.samples()[i]) * b.samples()[i];
    }
    return sum * a.grid().spacing();
}

WaveFunction target_wavefunction(const TargetSpec &spec, const Grid &grid) {
    grid.validate();
    const double norm0 = std::pow(2.0 * std::numbers::pi, -0.25);
    std::vector<cplx> s(grid.points);
    if (const auto *coh = std::get_if<CoherentTarget>(&spec)) {
        const cplx alpha = coh->alpha;
        for (std::size_t i = 0; i < grid.points; ++i) {
            const double x = grid.x(i);
            s[i] = norm0 * std::exp(-x * x / 4.0 + alpha * x - alpha * alpha / 2.0 - std::norm(alpha) / 2.0);
        }
    } else if (const auto *num = std::get_if<NumberTarget>(&spec)) {
        for (std::size_t i = 0; i < grid.points; ++i) {
            const double x = grid.x(i);
            double prev = 0.0;
            double cur = norm0 * std::exp(-x * x / 4.0);
            for (std::size_t k = 0; k < num->n; ++k) {
                double next = (x * cur - std::sqrt(static_cast<double>(k)) * prev) / std::sqrt(k + 1.0);
                prev = cur;
                cur = next;
            }
            s[i] = cur;
        }
    } else {
        const auto &custom = std::get<CustomTarget>(spec).psi;
        if (!same_grid(custom.grid(), grid)) {
            throw DimensionMismatch("custom target sampled on a different grid");
        }
        s = custom.samples();
    }
    require_edges_clear(s, "target wavefunction");
    WaveFunction psi(grid, std::move(s));
    psi.normalize();
    return psi;
}

double kernel_G(double x1, double x2, double r) {
    if (!(r >= 0.0)) {
        throw InvalidParameter("squeezing r must be >= 0");
    }
    const double sum = x1 + x2;
    const double diff = x1 - x2;
    return std::exp(-0.25 * sum * sum * std::exp(2.0 * r) - 0.25 * diff * diff * std::exp(-2.0 * r)) /
           std::sqrt(2.0 * std::numbers::pi);
}

WaveFunction teleport_conditional(const WaveFunction &psi, const QuadOutcome &outcome, double r) {
    if (!(r >= 0.0)) {
        throw InvalidParameter("squeezing r must be >= 0");
    }
    const Grid &g = psi.grid();
    const double h = g.spacing();
    if (h > Grid::max_spacing(r)) {
        throw GridCoverage("grid spacing " + std::to_string(h) + " does not resolve the kernel at r = " +
                           std::to_string(r) + " (need <= " + std::to_string(Grid::max_spacing(r)) + ")");
    }
    require_edges_clear(psi.samples(), "target wavefunction");

    const std::size_t n = g.points;
    const double band = std::sqrt(8.0 * kBandExponent) * std::exp(-r);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = g.x(i);
        // x' + x = X - t + x must stay inside the band.
        const double t_lo = outcome.X + x - band;
        const double t_hi = outcome.X + x + band;
        const double j_lo = std::max(0.0, std::ceil((t_lo + g.extent) / h));
        const double j_hi = std::min(static_cast<double>(n - 1), std::floor((t_hi + g.extent) / h));
        cplx acc = 0.0;
        for (double jd = j_lo; jd <= j_hi; jd += 1.0) {
            const auto j = static_cast<std::size_t>(jd);
            const double xp = outcome.X - g.x(j);
            acc += trapezoid_weight(j, n) * std::polar(kernel_G(xp * inv_sqrt2, x * inv_sqrt2, r),
                                                       0.5 * outcome.Y * xp) *
                   psi.samples()[j];
        }
        out[i] = acc * h;
    }
    require_edges_clear(out, "teleported wavefunction");
    WaveFunction phi(g, std::move(out));
    phi.normalize();
    return phi;
}

WaveFunction teleport_conditional(const WaveFunction &psi, const QuadOutcome &outcome,
                                  const ResourceWavefunction &resource) {
    const Grid &g = psi.grid();
    const double h = g.spacing();
    const std::size_t n = g.points;
    require_edges_clear(psi.samples(), "target wavefunction");
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double xb = g.x(i);
        cplx acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double xa = g.x(j) - outcome.X;
            acc += trapezoid_weight(j, n) * std::polar(1.0, -0.5 * outcome.Y * xa) * resource(xa, xb) *
                   psi.samples()[j];
        }
        out[i] = acc * h;
    }
    require_edges_clear(out, "teleported wavefunction");
    WaveFunction phi(g, std::move(out));
    phi.normalize();
    return phi;
}

WaveFunction correct(const WaveFunction &phi, const QuadOutcome &outcome, const Gains &gains) {
    if (!std::isfinite(gains.gx) || !std::isfinite(gains.gy)) {
        throw InvalidParameter("correction gains must be finite");
    }
    const Grid &g = phi.grid();
    const double h = g.spacing();
    const double a = gains.gx * outcome.X;
    const double b = 0.5 * gains.gy * outcome.Y;

    std::vector<cplx> s = phi.samples();
    if (a != 0.0) {
        if (std::abs(a) >= g.extent) {
            throw GridCoverage("correction shift " + std::to_string(a) + " exceeds the grid half-width");
        }
        // Whatever lies within |a| of the leading edge would wrap around.
        const auto reach = static_cast<std::size_t>(std::ceil(std::abs(a) / h)) + 1;
        const double peak = peak_density(s);
        for (std::size_t k = 0; k < reach && k < s.size(); ++k) {
            const std::size_t i = a > 0 ? s.size() - 1 - k : k;
            if (std::norm(s[i]) > kEdgeDensityTol * peak) {
                throw GridCoverage("corrected wavefunction leaves the grid; enlarge the grid extent");
            }
        }
        s = spectral_shift(s, a, h);
    }
    if (b != 0.0) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            s[i] *= std::polar(1.0, b * (g.x(i) - 0.5 * a));
        }
    }
    return WaveFunction(g, std::move(s));
}

double protocol_fidelity(const TargetSpec &spec, double r, const QuadOutcome &outcome, const Gains &gains,
                         const Grid &grid) {
    WaveFunction psi = target_wavefunction(spec, grid);
    WaveFunction phi = correct(teleport_conditional(psi, outcome, r), outcome, gains);
    return std::norm(inner(psi, phi));
}

Calibration calibrate_gains() {
    const double r = 3.0;
    const QuadOutcome outcome{1.0, 1.0};
    const TargetSpec target = CoherentTarget{1.0};
    const Grid grid = Grid::for_protocol(1.0, r);
    WaveFunction psi = target_wavefunction(target, grid);
    WaveFunction phi = teleport_conditional(psi, outcome, r);
    auto fid = [&](const Gains &gains) { return std::norm(inner(psi, correct(phi, outcome, gains))); };

    auto golden = [&](auto &&objective) {
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double lo = 0.25;
        double hi = 4.0;
        double c = hi - inv_phi * (hi - lo);
        double d = lo + inv_phi * (hi - lo);
        double fc = objective(c);
        double fd = objective(d);
        while (hi - lo > 1e-6) {
            if (fc > fd) {
                hi = d;
                d = c;
                fd = fc;
                c = hi - inv_phi * (hi - lo);
                fc = objective(c);
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + inv_phi * (hi - lo);
                fd = objective(d);
            }
        }
        return 0.5 * (lo + hi);
    };

    Gains best{1.0, 1.0};
    best.gx = golden([&](double gx) { return fid({gx, best.gy}); });
    best.gy = golden([&](double gy) { return fid({best.gx, gy}); });
    return {best, fid(best)};
}

}  // namespace tmsv::quad
