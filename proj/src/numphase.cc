#include "tmsv/numphase.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace tmsv {

namespace {

constexpr double kDownshiftAmplitudeTol = 1e-12;

void require_lambda(double lambda) {
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw InvalidParameter("lambda must lie in [0, 1), got " + std::to_string(lambda));
    }
}

// sum_n lambda^(2n) |c_n|^2 restricted to n >= offset, reindexed from zero.
double weighted_tail(const std::vector<cplx> &c, double lambda, std::size_t offset) {
    const double l2 = lambda * lambda;
    double power = 1.0;
    double sum = 0.0;
    for (std::size_t n = offset; n < c.size(); ++n) {
        sum += power * std::norm(c[n]);
        power *= l2;
    }
    return sum;
}

double uniform01(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

ConditionalState rephase(const ConditionalState &state, double phi, double sign) {
    ConditionalState out = state;
    const double half_m = 0.5 * state.m;
    for (std::size_t j = 0; j < out.amps.size(); ++j) {
        out.amps[j] *= std::polar(1.0, sign * phi * (static_cast<double>(j) + half_m));
    }
    return out;
}

cplx overlap_with_target(const TargetCoeffs &c, const ConditionalState &state) {
    cplx sum = 0.0;
    const std::size_t n = std::min(c.coeffs().size(), state.amps.size());
    for (std::size_t j = 0; j < n; ++j) {
        sum += std::conj(c.coeffs()[j]) * state.amps[j];
    }
    return sum;
}

ConditionalState normalized_conditional(const TargetCoeffs &c, double lambda, int m) {
    ConditionalState st = conditional_after_outcome(c, lambda, m);
    return st.normalized_copy();
}

}  // namespace

TargetCoeffs::TargetCoeffs(std::vector<cplx> c) : c_(std::move(c)) {
    if (c_.empty()) {
        throw InvalidDimension("target needs at least one coefficient");
    }
    double norm2 = 0.0;
    for (const auto &x : c_) {
        norm2 += std::norm(x);
    }
    if (!(norm2 > 0.0)) {
        throw InvalidParameter("target coefficients are all zero");
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto &x : c_) {
        x *= scale;
    }
}

TargetCoeffs TargetCoeffs::number(std::size_t n) {
    std::vector<cplx> c(n + 1);
    c[n] = 1.0;
    return TargetCoeffs(std::move(c));
}

TargetCoeffs TargetCoeffs::coherent(cplx alpha, std::size_t cutoff) {
    Vec v = coherent_amplitudes(alpha, cutoff);
    return TargetCoeffs(std::vector<cplx>(v.data(), v.data() + v.size()));
}

TargetCoeffs TargetCoeffs::coherent_auto(cplx alpha, double tail_tol) {
    return coherent(alpha, coherent_cutoff(alpha, tail_tol));
}

double OutcomePmf::at(int m) const {
    auto it = entries.find(m);
    return it == entries.end() ? 0.0 : it->second;
}

double OutcomePmf::total() const {
    double sum = 0.0;
    for (const auto &[m, p] : entries) {
        sum += p;
    }
    return sum;
}

double outcome_probability(const TargetCoeffs &c, double lambda, int m) {
    require_lambda(lambda);
    const double l2 = lambda * lambda;
    if (m >= 0) {
        if (static_cast<std::size_t>(m) > c.cutoff()) {
            return 0.0;
        }
        return (1.0 - l2) * weighted_tail(c.coeffs(), lambda, static_cast<std::size_t>(m));
    }
    return (1.0 - l2) * std::pow(lambda, -2.0 * m) * weighted_tail(c.coeffs(), lambda, 0);
}

OutcomePmf jz_pmf(const TargetCoeffs &c, double lambda, const NumPhaseOptions &opts) {
    require_lambda(lambda);
    const double l2 = lambda * lambda;
    const auto n_res = static_cast<int>(schmidt_cutoff(lambda, opts.tail_tol));
    OutcomePmf pmf;
    const double negative_base = (1.0 - l2) * weighted_tail(c.coeffs(), lambda, 0);
    for (int m = -n_res; m < 0; ++m) {
        double p = negative_base * std::pow(lambda, -2.0 * m);
        if (p > 0.0) {
            pmf.entries.emplace(m, p);
        }
    }
    for (int m = 0; m <= static_cast<int>(c.cutoff()); ++m) {
        double p = (1.0 - l2) * weighted_tail(c.coeffs(), lambda, static_cast<std::size_t>(m));
        if (p > 0.0) {
            pmf.entries.emplace(m, p);
        }
    }
    return pmf;
}

double ConditionalState::norm_squared() const {
    double s = 0.0;
    for (const auto &a : amps) {
        s += std::norm(a);
    }
    return s;
}

ConditionalState ConditionalState::normalized_copy() const {
    double n2 = norm_squared();
    if (!(n2 > 0.0)) {
        throw InvalidOutcome("conditional state has zero norm");
    }
    ConditionalState out = *this;
    const double scale = 1.0 / std::sqrt(n2);
    for (auto &a : out.amps) {
        a *= scale;
    }
    out.normalized = true;
    return out;
}

ModeState ConditionalState::to_mode_state(std::size_t cutoff) const {
    Vec v = Vec::Zero(static_cast<Eigen::Index>(cutoff + 1));
    for (std::size_t j = 0; j < amps.size(); ++j) {
        if (j > cutoff) {
            if (std::abs(amps[j]) > 0.0) {
                throw InvalidDimension("conditional state does not fit in cutoff " + std::to_string(cutoff));
            }
            continue;
        }
        v(static_cast<Eigen::Index>(j)) = amps[j];
    }
    return ModeState(std::move(v));
}

ConditionalState conditional_after_outcome(const TargetCoeffs &c, double lambda, int m) {
    require_lambda(lambda);
    if (!(outcome_probability(c, lambda, m) > 0.0)) {
        throw InvalidOutcome("outcome m = " + std::to_string(m) + " has zero probability");
    }
    ConditionalState st;
    st.m = m;
    const double lead = std::sqrt(1.0 - lambda * lambda);
    const auto &coeffs = c.coeffs();
    if (m >= 0) {
        const auto shift = static_cast<std::size_t>(m);
        st.amps.resize(coeffs.size() - shift);
        double power = 1.0;
        for (std::size_t n = 0; n < st.amps.size(); ++n) {
            st.amps[n] = lead * power * coeffs[n + shift];
            power *= lambda;
        }
    } else {
        const auto gap = static_cast<std::size_t>(-m);
        st.amps.assign(coeffs.size() + gap, cplx{});
        double power = std::pow(lambda, static_cast<double>(gap));
        for (std::size_t n = 0; n < coeffs.size(); ++n) {
            st.amps[n + gap] = lead * power * coeffs[n];
            power *= lambda;
        }
    }
    return st;
}

ConditionalState apply_phase_outcome(const ConditionalState &state, double phi_plus) {
    ConditionalState out = rephase(state, phi_plus, -1.0);
    out.phase = phi_plus;
    return out;
}

ConditionalState phase_correction(const ConditionalState &state, double phi_plus) {
    return rephase(state, phi_plus, +1.0);
}

ConditionalState number_displace(const ConditionalState &state, int shift) {
    ConditionalState out = state;
    if (shift >= 0) {
        out.amps.insert(out.amps.begin(), static_cast<std::size_t>(shift), cplx{});
        return out;
    }
    const auto drop = std::min(static_cast<std::size_t>(-shift), out.amps.size());
    double destroyed = 0.0;
    bool lossy = false;
    for (std::size_t j = 0; j < drop; ++j) {
        destroyed += std::norm(out.amps[j]);
        lossy = lossy || std::abs(out.amps[j]) >= kDownshiftAmplitudeTol;
    }
    if (lossy || drop == out.amps.size()) {
        throw LossyDownshift(shift, destroyed);
    }
    out.amps.erase(out.amps.begin(), out.amps.begin() + static_cast<std::ptrdiff_t>(drop));
    return out;
}

double phase_outcome_density(const TargetCoeffs &c, double lambda, int m, double phi_plus) {
    const double p = outcome_probability(c, lambda, m);
    if (!(p > 0.0)) {
        throw InvalidOutcome("outcome m = " + std::to_string(m) + " has zero probability");
    }
    ConditionalState st = apply_phase_outcome(conditional_after_outcome(c, lambda, m), phi_plus);
    return st.norm_squared() / (2.0 * std::numbers::pi * p);
}

double fidelity_displaced(const TargetCoeffs &c, double lambda, int m) {
    ConditionalState st = number_displace(normalized_conditional(c, lambda, m), m);
    return std::norm(overlap_with_target(c, st));
}

double fidelity_undisplaced(const TargetCoeffs &c, double lambda, int m) {
    return std::norm(overlap_with_target(c, normalized_conditional(c, lambda, m)));
}

TrialSampler::TrialSampler(TargetCoeffs c, double lambda, const NumPhaseOptions &opts)
    : c_(std::move(c)), lambda_(lambda), pmf_(jz_pmf(c_, lambda, opts)) {
    double running = 0.0;
    for (const auto &[m, p] : pmf_.entries) {
        running += p;
        outcomes_.push_back(m);
        cdf_.push_back(running);
    }
}

RunRecord TrialSampler::run(std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    RunRecord rec;
    rec.seed = seed;

    const double u = uniform01(rng) * cdf_.back();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) {
        --it;
    }
    rec.m = outcomes_[static_cast<std::size_t>(it - cdf_.begin())];
    rec.phi_plus = -std::numbers::pi + 2.0 * std::numbers::pi * uniform01(rng);

    ConditionalState st = normalized_conditional(c_, lambda_, rec.m);
    st = phase_correction(apply_phase_outcome(st, rec.phi_plus), rec.phi_plus);
    rec.fidelity_undisplaced = std::norm(overlap_with_target(c_, st));
    try {
        rec.fidelity_displaced = std::norm(overlap_with_target(c_, number_displace(st, rec.m)));
    } catch (const LossyDownshift &) {
        rec.fidelity_displaced.reset();
    }
    return rec;
}

RunRecord sample_run(const TargetCoeffs &c, double lambda, std::uint64_t seed) {
    return TrialSampler(c, lambda).run(seed);
}

}  // namespace tmsv
