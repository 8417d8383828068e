#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "boostdiff/quadrature.hpp"

using namespace boostdiff;

TEST(GaussLegendre, WeightsSumToTwoAndNodesSymmetric) {
    for (int n : {8, 15, 64, 400, 800}) {
        const auto& r = gauss_legendre(n);
        double sum = 0.0;
        for (double w : r.weights) sum += w;
        EXPECT_NEAR(sum, 2.0, 1e-13) << n;
        for (int i = 0; i < n; ++i) EXPECT_NEAR(r.nodes[i], -r.nodes[n - 1 - i], 1e-15);
        for (int i = 1; i < n; ++i) EXPECT_LT(r.nodes[i - 1], r.nodes[i]);
    }
}

TEST(GaussLegendre, ExactForPolynomials) {
    const int n = 10;
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
        const double got = integrate_gauss_legendre<double>([deg](double x) { return std::pow(x, deg); }, -1.0, 1.0, n);
        const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
        EXPECT_NEAR(got, exact, 1e-14) << deg;
    }
}

TEST(GaussLegendre, SpectralOnOscillatoryIntegrand) {
    const double got = integrate_gauss_legendre<double>([](double x) { return std::cos(40.0 * x); }, -1.0, 1.0, 400);
    EXPECT_NEAR(got, 2.0 * std::sin(40.0) / 40.0, 1e-14);
}

TEST(Composite, MatchesExact) {
    const double got = integrate_composite<double>([](double x) { return std::exp(-x); }, 0.0, 30.0, 30, 16);
    EXPECT_NEAR(got, 1.0 - std::exp(-30.0), 1e-14);
}

TEST(Adaptive, HandlesEndpointSqrt) {
    const auto r = integrate_adaptive<double>([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-12);
    EXPECT_NEAR(r.value, 2.0 / 3.0, 1e-12);
    EXPECT_LE(r.error, 1e-12);
}

TEST(Adaptive, ComplexIntegrand) {
    using C = std::complex<double>;
    const auto r = integrate_adaptive<C>([](double x) { return std::exp(C(0, 3.0 * x)); }, 0.0, 2.0, 1e-13);
    const C exact = (std::exp(C(0, 6.0)) - 1.0) / C(0, 3.0);
    EXPECT_LT(std::abs(r.value - exact), 1e-13);
}

TEST(Adaptive, ReportsFailure) {
    // 1/sqrt|x| singularity in the interior is not resolved at depth 3
    EXPECT_THROW(integrate_adaptive<double>([](double x) { return 1.0 / std::sqrt(std::abs(x - 0.3) + 1e-300); }, 0.0,
                                             1.0, 1e-14, 3),
                 accuracy_error);
}

TEST(QuadratureSpec, Validation) {
    QuadratureSpec q;
    EXPECT_NO_THROW(q.validate());
    q.nodes = 4;
    EXPECT_THROW(q.validate(), domain_error);
    q.nodes = 8;
    q.tolerance = 0.0;
    EXPECT_THROW(q.validate(), domain_error);
}
