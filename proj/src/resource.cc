#include "tmsv/resource.h"

#include <cmath>

namespace tmsv {

namespace {

void require_lambda(double lambda) {
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw InvalidParameter("lambda must lie in [0, 1), got " + std::to_string(lambda));
    }
}

}  // namespace

ResourceParams ResourceParams::from_r(double r) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw InvalidParameter("squeezing r must be finite and >= 0");
    }
    double lambda = std::tanh(r);
    if (!(lambda < 1.0)) {
        throw InvalidParameter("tanh r rounds to 1; squeezing too large for double precision");
    }
    return {r, lambda};
}

ResourceParams ResourceParams::from_lambda(double lambda) {
    require_lambda(lambda);
    return {std::atanh(lambda), lambda};
}

TwoModeState build_schmidt(double lambda, std::size_t cutoff) {
    require_lambda(lambda);
    const auto dim = static_cast<Eigen::Index>(cutoff + 1);
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(dim, dim);
    const double lead = std::sqrt(1.0 - lambda * lambda);
    double power = 1.0;
    for (Eigen::Index n = 0; n < dim; ++n) {
        c(n, n) = lead * power;
        power *= lambda;
    }
    TwoModeState s(std::move(c));
    s.normalize();
    return s;
}

OperatorMatrix two_mode_squeeze_generator(std::size_t cutoff) {
    OperatorMatrix a = embed_op(annihilator(cutoff), Mode::A, cutoff, cutoff);
    OperatorMatrix b = embed_op(annihilator(cutoff), Mode::B, cutoff, cutoff);
    return a * b - a.adjoint() * b.adjoint();
}

TwoModeState build_by_evolution(double r, std::size_t cutoff, const EvolveOptions &opts) {
    ResourceParams::from_r(r);
    TwoModeState vac(cutoff, cutoff);
    if (r == 0.0) {
        return vac;
    }
    return apply_exponential(two_mode_squeeze_generator(cutoff), vac, r, opts).state;
}

TwoModeState rotate_mode_b_by_pi(const TwoModeState &state) {
    Eigen::MatrixXcd c = state.amps();
    for (Eigen::Index nb = 1; nb < c.cols(); nb += 2) {
        c.col(nb) *= -1.0;
    }
    return TwoModeState(std::move(c));
}

double pair_variance(const TwoModeState &state, Quadrature q, int sign) {
    if (sign != 1 && sign != -1) {
        throw InvalidParameter("pair_variance sign must be +1 or -1");
    }
    auto [xa, ya] = quadratures(state.cutoff_a());
    auto [xb, yb] = quadratures(state.cutoff_b());
    const OperatorMatrix &qa = q == Quadrature::X ? xa : ya;
    const OperatorMatrix &qb = q == Quadrature::X ? xb : yb;
    OperatorMatrix ea = embed_op(qa, Mode::A, state.cutoff_a(), state.cutoff_b());
    OperatorMatrix eb = embed_op(qb, Mode::B, state.cutoff_a(), state.cutoff_b());
    return variance(state, sign > 0 ? ea + eb : ea - eb);
}

EprVariances epr_variances(const TwoModeState &state) {
    return {pair_variance(state, Quadrature::X, +1), pair_variance(state, Quadrature::Y, -1)};
}

double mean_photon(double lambda) {
    require_lambda(lambda);
    return lambda * lambda / (1.0 - lambda * lambda);
}

double mean_photon(const TwoModeState &state) {
    double total = 0.0;
    const auto &c = state.amps();
    for (Eigen::Index na = 0; na < c.rows(); ++na) {
        total += static_cast<double>(na) * c.row(na).squaredNorm();
    }
    return total;
}

double joint_phase_pdf(double lambda, double phi_a, double phi_b) {
    require_lambda(lambda);
    return (1.0 - lambda * lambda) / std::norm(1.0 - lambda * std::polar(1.0, phi_a + phi_b));
}

double joint_phase_pdf(const TwoModeState &state, double phi_a, double phi_b) {
    const auto &c = state.amps();
    cplx amp = 0.0;
    for (Eigen::Index na = 0; na < c.rows(); ++na) {
        for (Eigen::Index nb = 0; nb < c.cols(); ++nb) {
            if (c(na, nb) != 0.0) {
                amp += std::polar(1.0, -(static_cast<double>(na) * phi_a + static_cast<double>(nb) * phi_b)) *
                       c(na, nb);
            }
        }
    }
    return std::norm(amp);
}

}  // namespace tmsv
