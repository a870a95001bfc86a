#include "tmsv/analytics.h"

#include <cmath>
#include <limits>
#include <string>

#include "tmsv/errors.h"

namespace tmsv::analytics {

namespace {

constexpr double kSeriesRelTol = 1e-15;

void require_lambda(double lambda) {
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw InvalidParameter("lambda must lie in [0, 1), got " + std::to_string(lambda));
    }
}

// log of the Poisson weight e^{-mean} mean^k / k!.
double log_poisson(double mean, int k) {
    if (mean == 0.0) {
        return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    return -mean + k * std::log(mean) - std::lgamma(k + 1.0);
}

// sum_{n>=0} lambda^(power n) Poisson(n + m), m >= 0. All terms are positive;
// the sum stops once past the Poisson mode and the term is negligible.
double weighted_poisson_sum(double mean, double lambda, int m, int power) {
    if (lambda == 0.0) {
        return std::exp(log_poisson(mean, m));
    }
    const double log_lambda = std::log(lambda);
    // lambda^(power n) < 1e-300 beyond this point.
    const double cap = std::ceil(-690.8 / (power * log_lambda));
    double sum = 0.0;
    for (int n = 0; n <= cap; ++n) {
        double term = std::exp(power * n * log_lambda + log_poisson(mean, n + m));
        sum += term;
        if (n + m > mean && term <= kSeriesRelTol * sum) {
            break;
        }
    }
    return sum;
}

}  // namespace

double p_m_number(int n_target, double lambda, int m) {
    require_lambda(lambda);
    if (n_target < 0) {
        throw InvalidParameter("number-state target needs N >= 0");
    }
    if (m > n_target) {
        return 0.0;
    }
    return (1.0 - lambda * lambda) * std::pow(lambda, 2.0 * (n_target - m));
}

double p_m_coherent(std::complex<double> alpha, double lambda, int m) {
    require_lambda(lambda);
    const double mean = std::norm(alpha);
    const double l2 = lambda * lambda;
    if (m < 0) {
        return (1.0 - l2) * std::pow(lambda, -2.0 * m) * std::exp(-mean * (1.0 - l2));
    }
    return (1.0 - l2) * weighted_poisson_sum(mean, lambda, m, 2);
}

double p_m_coherent_negative_printed(std::complex<double> alpha, double lambda, int m) {
    require_lambda(lambda);
    if (m >= 0) {
        return p_m_coherent(alpha, lambda, m);
    }
    const double l2 = lambda * lambda;
    return (1.0 - l2) * std::pow(lambda, 2.0 * m) * std::exp(-std::norm(alpha) * (1.0 - l2));
}

double f_m_coherent(std::complex<double> alpha, double lambda, int m) {
    const double p = p_m_coherent(alpha, lambda, m);
    if (!(p > 0.0)) {
        throw InvalidOutcome("outcome m = " + std::to_string(m) + " has zero probability");
    }
    const double mean = std::norm(alpha);
    if (m < 0) {
        return std::exp(-mean * (1.0 - lambda) * (1.0 - lambda));
    }
    const double s1 = weighted_poisson_sum(mean, lambda, m, 1);
    return (1.0 - lambda * lambda) * s1 * s1 / p;
}

double f0_undisplaced(std::complex<double> alpha, double lambda) {
    require_lambda(lambda);
    return std::exp(-std::norm(alpha) * (1.0 - lambda) * (1.0 - lambda));
}

double f0_ratio_form(double nbar_target, double nbar_sv, double lambda) {
    if (!(nbar_sv > 0.0)) {
        throw InvalidParameter("resource mean photon number must be positive");
    }
    return std::exp(-(nbar_target / nbar_sv) * lambda * lambda);
}

double epr_variance(double r) {
    if (!(r >= 0.0)) {
        throw InvalidParameter("squeezing r must be >= 0");
    }
    return 2.0 * std::exp(-2.0 * r);
}

}  // namespace tmsv::analytics
