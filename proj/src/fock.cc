#include "tmsv/fock.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace tmsv {

namespace {

using Triplet = Eigen::Triplet<cplx>;

Eigen::Index idx(std::size_t n) {
    return static_cast<Eigen::Index>(n);
}

void require_same_dim(std::size_t a, std::size_t b, const char *what) {
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": dimensions " + std::to_string(a) + " and " +
                                std::to_string(b) + " differ");
    }
}

double hermitian_variance(const Vec &v, const OperatorMatrix &op) {
    Vec av = op.apply(v);
    double mean = v.dot(av).real();
    double second = av.squaredNorm();
    return std::max(0.0, second - mean * mean);
}

// Taylor series of exp(h G) applied to v, with h G scaled so that each step
// has 1-norm at most one.
Vec expm_action(const OperatorMatrix &gen, const Vec &v, double time) {
    if (time == 0.0) {
        return v;
    }
    double scaled = std::abs(time) * gen.norm1();
    std::size_t steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(scaled)));
    double h = time / static_cast<double>(steps);
    Vec out = v;
    for (std::size_t s = 0; s < steps; ++s) {
        Vec term = out;
        Vec acc = out;
        for (int k = 1; k < 80; ++k) {
            term = gen.apply(term) * (h / k);
            acc += term;
            if (term.norm() <= 1e-18 * acc.norm()) {
                break;
            }
        }
        out = std::move(acc);
    }
    return out;
}

}  // namespace

ModeState::ModeState(std::size_t cutoff) : amps_(Vec::Zero(idx(cutoff + 1))) {
    amps_(0) = 1.0;
}

ModeState::ModeState(Vec amps) : amps_(std::move(amps)) {
    if (amps_.size() == 0) {
        throw InvalidDimension("ModeState needs at least one amplitude");
    }
}

ModeState ModeState::fock(std::size_t cutoff, std::size_t n) {
    if (n > cutoff) {
        throw InvalidDimension("Fock index " + std::to_string(n) + " exceeds cutoff " +
                               std::to_string(cutoff));
    }
    Vec v = Vec::Zero(idx(cutoff + 1));
    v(idx(n)) = 1.0;
    return ModeState(std::move(v));
}

ModeState ModeState::coherent(cplx alpha, std::size_t cutoff) {
    ModeState s(coherent_amplitudes(alpha, cutoff));
    s.normalize();
    return s;
}

ModeState &ModeState::normalize() {
    double n = amps_.norm();
    if (n == 0.0) {
        throw InvalidParameter("cannot normalize the zero vector");
    }
    amps_ /= n;
    return *this;
}

TwoModeState::TwoModeState(std::size_t cutoff_a, std::size_t cutoff_b)
    : amps_(Eigen::MatrixXcd::Zero(idx(cutoff_a + 1), idx(cutoff_b + 1))) {
    amps_(0, 0) = 1.0;
}

TwoModeState::TwoModeState(Eigen::MatrixXcd amps) : amps_(std::move(amps)) {
    if (amps_.size() == 0) {
        throw InvalidDimension("TwoModeState needs at least one amplitude");
    }
}

TwoModeState TwoModeState::from_flat(std::size_t cutoff_a, std::size_t cutoff_b, const Vec &flat) {
    require_same_dim((cutoff_a + 1) * (cutoff_b + 1), static_cast<std::size_t>(flat.size()),
                     "TwoModeState::from_flat");
    Eigen::MatrixXcd m(idx(cutoff_a + 1), idx(cutoff_b + 1));
    for (Eigen::Index a = 0; a < m.rows(); ++a) {
        for (Eigen::Index b = 0; b < m.cols(); ++b) {
            m(a, b) = flat(a * m.cols() + b);
        }
    }
    return TwoModeState(std::move(m));
}

Vec TwoModeState::flat() const {
    Vec v(amps_.size());
    for (Eigen::Index a = 0; a < amps_.rows(); ++a) {
        for (Eigen::Index b = 0; b < amps_.cols(); ++b) {
            v(a * amps_.cols() + b) = amps_(a, b);
        }
    }
    return v;
}

TwoModeState &TwoModeState::normalize() {
    double n = amps_.norm();
    if (n == 0.0) {
        throw InvalidParameter("cannot normalize the zero vector");
    }
    amps_ /= n;
    return *this;
}

OperatorMatrix::OperatorMatrix(SpMat m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
        throw DimensionMismatch("operator matrix must be square");
    }
    m_.makeCompressed();
}

OperatorMatrix OperatorMatrix::identity(std::size_t dim) {
    SpMat m(idx(dim), idx(dim));
    m.setIdentity();
    return OperatorMatrix(std::move(m));
}

OperatorMatrix OperatorMatrix::adjoint() const {
    return OperatorMatrix(SpMat(m_.adjoint()));
}

bool OperatorMatrix::is_hermitian(double tol) const {
    SpMat diff = m_ - SpMat(m_.adjoint());
    for (Eigen::Index k = 0; k < diff.outerSize(); ++k) {
        for (SpMat::InnerIterator it(diff, k); it; ++it) {
            if (std::abs(it.value()) > tol) {
                return false;
            }
        }
    }
    return true;
}

double OperatorMatrix::norm1() const {
    double best = 0.0;
    for (Eigen::Index k = 0; k < m_.outerSize(); ++k) {
        double col = 0.0;
        for (SpMat::InnerIterator it(m_, k); it; ++it) {
            col += std::abs(it.value());
        }
        best = std::max(best, col);
    }
    return best;
}

Vec OperatorMatrix::apply(const Vec &v) const {
    require_same_dim(dim(), static_cast<std::size_t>(v.size()), "operator application");
    return m_ * v;
}

OperatorMatrix operator+(const OperatorMatrix &a, const OperatorMatrix &b) {
    require_same_dim(a.dim(), b.dim(), "operator sum");
    return OperatorMatrix(SpMat(a.m_ + b.m_));
}

OperatorMatrix operator-(const OperatorMatrix &a, const OperatorMatrix &b) {
    require_same_dim(a.dim(), b.dim(), "operator difference");
    return OperatorMatrix(SpMat(a.m_ - b.m_));
}

OperatorMatrix operator*(const OperatorMatrix &a, const OperatorMatrix &b) {
    require_same_dim(a.dim(), b.dim(), "operator product");
    return OperatorMatrix(SpMat(a.m_ * b.m_));
}

OperatorMatrix operator*(cplx s, const OperatorMatrix &a) {
    return OperatorMatrix(SpMat(s * a.m_));
}

OperatorMatrix annihilator(std::size_t cutoff) {
    if (cutoff == 0) {
        throw InvalidDimension("annihilator needs cutoff >= 1");
    }
    std::vector<Triplet> t;
    t.reserve(cutoff);
    for (std::size_t n = 1; n <= cutoff; ++n) {
        t.emplace_back(idx(n - 1), idx(n), std::sqrt(static_cast<double>(n)));
    }
    SpMat m(idx(cutoff + 1), idx(cutoff + 1));
    m.setFromTriplets(t.begin(), t.end());
    return OperatorMatrix(std::move(m));
}

OperatorMatrix creator(std::size_t cutoff) {
    return annihilator(cutoff).adjoint();
}

OperatorMatrix number_operator(std::size_t cutoff) {
    if (cutoff == 0) {
        throw InvalidDimension("number operator needs cutoff >= 1");
    }
    std::vector<Triplet> t;
    for (std::size_t n = 1; n <= cutoff; ++n) {
        t.emplace_back(idx(n), idx(n), static_cast<double>(n));
    }
    SpMat m(idx(cutoff + 1), idx(cutoff + 1));
    m.setFromTriplets(t.begin(), t.end());
    return OperatorMatrix(std::move(m));
}

std::pair<OperatorMatrix, OperatorMatrix> quadratures(std::size_t cutoff) {
    OperatorMatrix a = annihilator(cutoff);
    OperatorMatrix ad = a.adjoint();
    const cplx minus_i(0.0, -1.0);
    return {a + ad, minus_i * (a - ad)};
}

OperatorMatrix embed_op(const OperatorMatrix &op, Mode which, std::size_t cutoff_a,
                        std::size_t cutoff_b) {
    const std::size_t da = cutoff_a + 1;
    const std::size_t db = cutoff_b + 1;
    require_same_dim(op.dim(), which == Mode::A ? da : db, "embed_op");
    const SpMat &m = op.matrix();
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(m.nonZeros()) * (which == Mode::A ? db : da));
    for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
        for (SpMat::InnerIterator it(m, k); it; ++it) {
            auto r = static_cast<std::size_t>(it.row());
            auto c = static_cast<std::size_t>(it.col());
            if (which == Mode::A) {
                for (std::size_t j = 0; j < db; ++j) {
                    t.emplace_back(idx(r * db + j), idx(c * db + j), it.value());
                }
            } else {
                for (std::size_t i = 0; i < da; ++i) {
                    t.emplace_back(idx(i * db + r), idx(i * db + c), it.value());
                }
            }
        }
    }
    SpMat out(idx(da * db), idx(da * db));
    out.setFromTriplets(t.begin(), t.end());
    return OperatorMatrix(std::move(out));
}

cplx expectation(const ModeState &state, const OperatorMatrix &op) {
    return state.amps().dot(op.apply(state.amps()));
}

cplx expectation(const TwoModeState &state, const OperatorMatrix &op) {
    Vec v = state.flat();
    return v.dot(op.apply(v));
}

double variance(const ModeState &state, const OperatorMatrix &op) {
    return hermitian_variance(state.amps(), op);
}

double variance(const TwoModeState &state, const OperatorMatrix &op) {
    return hermitian_variance(state.flat(), op);
}

Evolved<ModeState> apply_exponential(const OperatorMatrix &generator, const ModeState &state,
                                     double time, const EvolveOptions &opts) {
    ModeState out(expm_action(generator, state.amps(), time));
    double leak = std::norm(out.amps()(out.amps().size() - 1));
    if (leak > opts.leakage_threshold) {
        throw TruncationOverflow(leak, opts.leakage_threshold);
    }
    return {std::move(out), leak};
}

Evolved<TwoModeState> apply_exponential(const OperatorMatrix &generator, const TwoModeState &state,
                                        double time, const EvolveOptions &opts) {
    TwoModeState out = TwoModeState::from_flat(state.cutoff_a(), state.cutoff_b(),
                                               expm_action(generator, state.flat(), time));
    const auto &m = out.amps();
    double leak = m.row(m.rows() - 1).squaredNorm() + m.col(m.cols() - 1).squaredNorm() -
                  std::norm(m(m.rows() - 1, m.cols() - 1));
    if (leak > opts.leakage_threshold) {
        throw TruncationOverflow(leak, opts.leakage_threshold);
    }
    return {std::move(out), leak};
}

cplx overlap(const ModeState &s1, const ModeState &s2) {
    require_same_dim(s1.dim(), s2.dim(), "overlap");
    return s1.amps().dot(s2.amps());
}

cplx overlap(const TwoModeState &s1, const TwoModeState &s2) {
    if (s1.cutoff_a() != s2.cutoff_a() || s1.cutoff_b() != s2.cutoff_b()) {
        throw DimensionMismatch("overlap: two-mode cutoffs differ");
    }
    return (s1.amps().conjugate().cwiseProduct(s2.amps())).sum();
}

double fidelity(const ModeState &s1, const ModeState &s2) {
    return std::norm(overlap(s1, s2));
}

double fidelity(const TwoModeState &s1, const TwoModeState &s2) {
    return std::norm(overlap(s1, s2));
}

std::size_t schmidt_cutoff(double lambda, double tail_tol) {
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw InvalidParameter("lambda must lie in [0, 1)");
    }
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
        throw InvalidParameter("tail tolerance must lie in (0, 1)");
    }
    if (lambda == 0.0) {
        return 1;
    }
    const double log_bound = std::log(tail_tol * (1.0 - lambda * lambda));
    auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(log_bound / (2.0 * std::log(lambda)))));
    while (2.0 * n * std::log(lambda) > log_bound) {
        ++n;
    }
    return n;
}

Vec coherent_amplitudes(cplx alpha, std::size_t cutoff) {
    Vec c = Vec::Zero(idx(cutoff + 1));
    const double mag = std::abs(alpha);
    if (mag == 0.0) {
        c(0) = 1.0;
        return c;
    }
    const double log_mag = std::log(mag);
    const double arg = std::arg(alpha);
    for (std::size_t n = 0; n <= cutoff; ++n) {
        double dn = static_cast<double>(n);
        double log_c = -0.5 * mag * mag + dn * log_mag - 0.5 * std::lgamma(dn + 1.0);
        c(idx(n)) = std::polar(std::exp(log_c), dn * arg);
    }
    return c;
}

std::size_t coherent_cutoff(cplx alpha, double tail_tol) {
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
        throw InvalidParameter("tail tolerance must lie in (0, 1)");
    }
    const double mean = std::norm(alpha);
    if (mean == 0.0) {
        return 0;
    }
    const double log_mean = std::log(mean);
    std::vector<double> p;
    for (std::size_t n = 0;; ++n) {
        double dn = static_cast<double>(n);
        double pn = std::exp(-mean + dn * log_mean - std::lgamma(dn + 1.0));
        p.push_back(pn);
        if (dn > mean && pn < 1e-6 * tail_tol * std::numeric_limits<double>::epsilon()) {
            break;
        }
    }
    double tail = 0.0;
    std::size_t n = p.size() - 1;
    // Walk down while the mass strictly above n stays within tolerance.
    while (n > 0 && tail + p[n] <= tail_tol) {
        tail += p[n];
        --n;
    }
    return n;
}

}  // namespace tmsv
