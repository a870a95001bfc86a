#include "tmsv/analytics.h"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "tmsv/errors.h"

using namespace tmsv;

namespace {

std::vector<double> poisson(double mean, std::size_t n_max) {
    std::vector<double> p(n_max + 1);
    p[0] = std::exp(-mean);
    for (std::size_t n = 1; n <= n_max; ++n) {
        p[n] = p[n - 1] * mean / static_cast<double>(n);
    }
    return p;
}

// P(m) summed over the joint photon numbers of target and resource.
double brute_force_p(double mean, double lambda, int m) {
    auto p = poisson(mean, 400);
    double sum = 0.0;
    for (std::size_t nt = 0; nt < p.size(); ++nt) {
        long na = static_cast<long>(nt) - m;
        if (na < 0) {
            continue;
        }
        sum += p[nt] * (1 - lambda * lambda) * std::pow(lambda, 2.0 * static_cast<double>(na));
    }
    return sum;
}

// Displaced output for m >= 0 is sum_{n>=m} lambda^{n-m} c_n |n>, renormalized.
double brute_force_f(double mean, double lambda, int m) {
    auto p = poisson(mean, 400);
    double overlap = 0.0;
    double norm = 0.0;
    for (std::size_t n = static_cast<std::size_t>(std::max(m, 0)); n < p.size(); ++n) {
        double w = std::pow(lambda, static_cast<double>(n) - std::max(m, 0));
        overlap += w * p[n];
        norm += w * w * p[n];
    }
    return overlap * overlap / norm;
}

}  // namespace

TEST(analytics, p_m_number) {
    EXPECT_NEAR(analytics::p_m_number(5, 0.9, 5), 0.19, 1e-15);
    EXPECT_EQ(analytics::p_m_number(5, 0.9, 6), 0.0);
    EXPECT_THROW(analytics::p_m_number(5, 1.0, 0), InvalidParameter);
    const int big_m = 200;
    double sum = 0.0;
    for (int m = -big_m; m <= 5; ++m) {
        sum += analytics::p_m_number(5, 0.9, m);
    }
    EXPECT_NEAR(sum, 1.0 - std::pow(0.9, 2.0 * (5 + big_m + 1)), 1e-13);
}

TEST(analytics, p_m_coherent_matches_brute_force) {
    for (double alpha : {0.5, 2.0, 6.0}) {
        for (double lambda : {0.3, 0.7, 0.99}) {
            for (int m : {-7, -1, 0, 1, 5, 30}) {
                EXPECT_NEAR(analytics::p_m_coherent(alpha, lambda, m), brute_force_p(alpha * alpha, lambda, m), 1e-13)
                    << alpha << " " << lambda << " " << m;
            }
        }
    }
}

TEST(analytics, p_m_coherent_negative_branch_misprint) {
    // The printed lambda^{-2|m|} grows without bound as m -> -infinity; the
    // brute-force sum confirms lambda^{+2|m|}.
    const double alpha = 2.0;
    const double lambda = 0.7;
    for (int m = -1; m >= -6; --m) {
        double truth = brute_force_p(alpha * alpha, lambda, m);
        EXPECT_NEAR(analytics::p_m_coherent(alpha, lambda, m) / truth, 1.0, 1e-12);
        double printed_ratio = analytics::p_m_coherent_negative_printed(alpha, lambda, m) / truth;
        EXPECT_NEAR(printed_ratio, std::pow(lambda, 4.0 * m), 1e-9 * printed_ratio);
        if (m <= -4) {
            EXPECT_GT(printed_ratio, 10.0);
        }
    }
    EXPECT_EQ(analytics::p_m_coherent_negative_printed(alpha, lambda, 2), analytics::p_m_coherent(alpha, lambda, 2));
}

TEST(analytics, p_m_coherent_vacuum_target) {
    // A vacuum target still leaves the resource photons in mode A.
    const double lambda = 0.6;
    EXPECT_NEAR(analytics::p_m_coherent(0.0, lambda, 0), 1 - lambda * lambda, 1e-15);
    EXPECT_EQ(analytics::p_m_coherent(0.0, lambda, 1), 0.0);
    EXPECT_NEAR(analytics::p_m_coherent(0.0, lambda, -3), (1 - lambda * lambda) * std::pow(lambda, 6), 1e-15);
    EXPECT_EQ(analytics::p_m_coherent(0.0, 0.0, 0), 1.0);
}

TEST(analytics, p_m_coherent_total) {
    for (double lambda : {0.5, 0.9, 0.99}) {
        double sum = 0.0;
        for (int m = -6000; m <= 200; ++m) {
            sum += analytics::p_m_coherent(6.0, lambda, m);
        }
        EXPECT_NEAR(sum, 1.0, 1e-9) << lambda;
    }
}

TEST(analytics, f_m_coherent_negative_branch) {
    EXPECT_NEAR(analytics::f_m_coherent(6.0, 0.9, -3), 0.69768, 1e-5);
    EXPECT_NEAR(analytics::f_m_coherent(6.0, 0.9, -3), std::exp(-36 * 0.1 * 0.1), 1e-15);
    EXPECT_EQ(analytics::f_m_coherent(6.0, 0.9, -40), analytics::f_m_coherent(6.0, 0.9, -3));
}

TEST(analytics, f_m_coherent_matches_brute_force) {
    for (double lambda : {0.5, 0.9, 0.99}) {
        for (int m : {0, 1, 10, 36, 50}) {
            EXPECT_NEAR(analytics::f_m_coherent(6.0, lambda, m), brute_force_f(36.0, lambda, m), 1e-11)
                << lambda << " " << m;
        }
    }
}

TEST(analytics, f_m_coherent_shape) {
    for (int m = 0; m <= 20; ++m) {
        EXPECT_GT(analytics::f_m_coherent(6.0, 0.99, m), 0.99) << m;
    }
    EXPECT_LT(analytics::f_m_coherent(6.0, 0.99, 36), 0.9);
    EXPECT_LT(analytics::f_m_coherent(6.0, 0.99, 60), 0.01);
    EXPECT_THROW(analytics::f_m_coherent(0.0, 0.5, 2), InvalidOutcome);
}

TEST(analytics, f0_undisplaced) {
    EXPECT_NEAR(analytics::f0_undisplaced(6.0, 0.9), 0.69768, 1e-5);
    EXPECT_NEAR(analytics::f0_undisplaced(6.0, 0.999999), 1.0, 1e-10);
    EXPECT_EQ(analytics::f0_undisplaced(0.0, 0.3), 1.0);
    EXPECT_EQ(analytics::f0_undisplaced(6.0, 0.9), analytics::f_m_coherent(6.0, 0.9, -1));
}

TEST(analytics, f0_ratio_form_disagrees_with_undisplaced) {
    const double lambda = 0.9;
    const double nbar = 36.0;
    double sv = lambda * lambda / (1 - lambda * lambda);
    // With the squeezed-vacuum photon number the exponent is |alpha|^2 (1 - lambda^2).
    EXPECT_NEAR(analytics::f0_ratio_form(nbar, sv, lambda), std::exp(-nbar * (1 - lambda * lambda)), 1e-15);
    EXPECT_GT(std::abs(analytics::f0_ratio_form(nbar, sv, lambda) - analytics::f0_undisplaced(6.0, lambda)), 0.6);
    // The forms coincide only for nbar_SV = lambda^2 / (1 - lambda)^2.
    double matching = lambda * lambda / ((1 - lambda) * (1 - lambda));
    EXPECT_NEAR(analytics::f0_ratio_form(nbar, matching, lambda), analytics::f0_undisplaced(6.0, lambda), 1e-14);
    EXPECT_THROW(analytics::f0_ratio_form(nbar, 0.0, lambda), InvalidParameter);
}

TEST(analytics, epr_variance) {
    EXPECT_EQ(analytics::epr_variance(0.0), 2.0);
    EXPECT_NEAR(analytics::epr_variance(1.0), 0.27067, 1e-5);
    EXPECT_THROW(analytics::epr_variance(-1.0), InvalidParameter);
}
