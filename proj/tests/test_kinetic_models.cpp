#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <random>

#include "boostdiff/field.hpp"
#include "boostdiff/kinetic_models.hpp"

using namespace boostdiff;

namespace {

// central second difference with one Richardson step, h = 1e-4
double fd_second(const std::function<double(double)>& f, double x, double h = 1e-4) {
    auto d2 = [&](double s) { return (f(x + s) - 2.0 * f(x) + f(x - s)) / (s * s); };
    return (4.0 * d2(h / 2.0) - d2(h)) / 3.0;
}

std::vector<std::pair<double, double>> embedding_points() {
    std::vector<std::pair<double, double>> pts;
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> td(-0.5, 0.5);
    std::uniform_real_distribution<double> xd(-3.0, 3.0);
    for (int i = 0; i < 20; ++i) pts.emplace_back(td(rng), xd(rng));
    return pts;
}

} // namespace

TEST(KineticSpec, Validation) {
    KineticSliceSpec s;
    EXPECT_NO_THROW(s.validate());
    s.beta = 0.0;
    EXPECT_THROW(s.validate(), domain_error);
    s.beta = 1.0;
    s.xi_extent = -1.0;
    EXPECT_THROW(s.validate(), domain_error);
}

TEST(Embedding, AnalyticSecondDerivativeMatchesFiniteDifference) {
    const auto p = make_boost(0.5);
    for (auto [t, x] : embedding_points()) {
        if (std::abs(t) < 0.01) continue;
        const double fd = fd_second([&](double y) { return kernel_rest(t, y, p); }, x);
        EXPECT_NEAR(kernel_rest_jet(t, x, p).dxx, fd, 1e-5 * std::max(1.0, std::abs(fd))) << t << " " << x;
    }
}

TEST(Embedding, ExampleAtExtent30) {
    const auto p = make_boost(0.5);
    KineticSliceSpec s;
    s.xi_extent = 30.0;
    EXPECT_NEAR(embedding_density(0.2, 0.5, s, p).value, kernel_rest(0.2, 0.5, p), 1e-6);
}

TEST(Embedding, IdentityAtTwentyPointsBothTimeSigns) {
    const auto p = make_boost(0.5);
    KineticSliceSpec s;
    for (auto [t, x] : embedding_points()) {
        const auto r = embedding_density(t, x, s, p);
        EXPECT_NEAR(r.value, kernel_rest(t, x, p), 1e-6) << t << " " << x;
        // the pieces add up
        EXPECT_DOUBLE_EQ(r.value, r.truncated + r.tail_minus + r.tail_plus);
        // the e^{-2 xi} tail is negligible next to the 1/xi one
        EXPECT_LT(std::abs(r.tail_plus), 1e-20);
    }
}

TEST(Embedding, TruncationDefectDecaysLikeInverseExtent) {
    const auto p = make_boost(0.5);
    for (auto [t, x] : embedding_points()) {
        const double e60 = truncation_defect_envelope(t, x, 60.0, p);
        const double e120 = truncation_defect_envelope(t, x, 120.0, p);
        EXPECT_GT(e60, 0.0);
        EXPECT_GE(e120 / e60, 0.4) << t << " " << x;
        EXPECT_LE(e120 / e60, 0.6) << t << " " << x;
    }
}

TEST(Embedding, RawDefectIsTheMinusTail) {
    // truncated integral = K - tails, so K - truncated is the boundary term at -L
    const auto p = make_boost(0.25);
    KineticSliceSpec s;
    const auto r = embedding_density(0.3, -1.0, s, p);
    EXPECT_NEAR(kernel_rest(0.3, -1.0, p) - r.truncated, r.tail_minus + r.tail_plus, 1e-9);
}

TEST(Embedding, ZeroFieldGivesZero) {
    KineticSliceSpec s;
    const auto r = embedding_density_of(ZeroField{}, 0.7, s);
    EXPECT_EQ(r.value, 0.0);
    EXPECT_EQ(r.truncated, 0.0);
}

TEST(Embedding, PolynomialFieldIsReproduced) {
    // n = x^2: (1 - d^2) n = x^2 - 2 and the weighted integral returns x^2 exactly
    struct Quadratic {
        FieldJet operator()(double x) const { return {x * x, 2 * x, 2.0, 0.0}; }
    };
    KineticSliceSpec s;
    EXPECT_NEAR(embedding_density_of(Quadratic{}, 1.5, s).value, 2.25, 1e-12);
}

TEST(Embedding, NonConvergenceRaises) {
    // n = e^{x}: the weight e^{xi} does not tame the left tail and doubling the extent moves the result
    struct Exponential {
        FieldJet operator()(double x) const {
            const double e = std::exp(1.5 * x);
            return {e, 1.5 * e, 2.25 * e, 3.375 * e};
        }
    };
    KineticSliceSpec s;
    s.xi_extent = 20.0;
    EXPECT_THROW(embedding_density_of(Exponential{}, 0.0, s), accuracy_error);
}

TEST(Embedding, OverflowPropagates) {
    const auto p = make_boost(0.5);
    KineticSliceSpec s;
    s.xi_extent = 400.0;
    EXPECT_THROW(embedding_density(0.1, 0.0, s, p), overflow_error);
}

TEST(HalfDensities, MatchClosedForms) {
    const auto p = make_boost(0.5);
    KineticSliceSpec s;
    for (auto [t, x] : embedding_points()) {
        const auto h = half_densities(t, x, s, p);
        const auto j = kernel_rest_jet(t, x, p);
        EXPECT_NEAR(h.plus, 0.5 * (j.value - j.dx), 1e-6 * std::max(1.0, std::abs(j.dx)));
        EXPECT_NEAR(h.minus, 0.5 * (j.value + j.dx), 1e-6 * std::max(1.0, std::abs(j.dx)));
    }
}

TEST(FokkerPlanckRate, MatchesDerivativeForm) {
    // f/f_eq = pi beta (K - K'')(x - beta p), so the rate is (K' - K''')/2 for any beta
    const auto p = make_boost(0.5);
    for (double beta : {0.5, 1.0, 3.0}) {
        for (auto [t, x] : embedding_points()) {
            if (std::abs(t) < 0.01) continue;
            const auto j = kernel_rest_jet(t, x, p);
            const double expect = 0.5 * (j.dx - j.dxxx);
            EXPECT_NEAR(fokker_planck_rate(t, x, beta, p), expect, 1e-6 * std::max(1.0, std::abs(expect)));
        }
    }
}

TEST(FokkerPlanckRate, DiffersFromTwoStreamRate) {
    const auto p = make_boost(0.5);
    KineticSliceSpec s;
    int different = 0;
    for (auto [t, x] : embedding_points()) {
        const auto h = half_densities(t, x, s, p);
        const double two_stream = 0.5 * (h.minus - h.plus);
        const double fp = fokker_planck_rate(t, x, s.beta, p);
        const double scale = std::max({1.0, std::abs(two_stream), std::abs(fp)});
        if (std::abs(fp - two_stream) / scale > 1e-3) ++different;
    }
    EXPECT_GE(different, 18);
}

TEST(Cattaneo, HomogeneousIsFixedPoint) {
    const auto x = uniform_grid(0.0, 9.9, 100);
    TwoStreamState s{x, std::vector<double>(100, 1.0), std::vector<double>(100, 1.0), 0.0};
    for (int i = 0; i < 50; ++i) s = cattaneo_step(s, 0.1);
    for (std::size_t i = 0; i < x.size(); ++i) {
        EXPECT_NEAR(s.n_plus[i], 1.0, 1e-15);
        EXPECT_NEAR(s.n_minus[i], 1.0, 1e-15);
    }
}

TEST(Cattaneo, HomogeneousFluxDecays) {
    const auto x = uniform_grid(0.0, 4.9, 50);
    TwoStreamState s{x, std::vector<double>(50, 1.0), std::vector<double>(50, 0.0), 0.0};
    const double h = s.spacing();
    for (int k = 0; k < 30; ++k) {
        s = cattaneo_step(s, k % 2 ? h : 0.5 * h);
        for (std::size_t i = 0; i < x.size(); ++i) {
            EXPECT_NEAR(s.n_plus[i] - s.n_minus[i], std::exp(-s.time), 1e-10);
            EXPECT_NEAR(s.n_plus[i] + s.n_minus[i], 1.0, 1e-14);
        }
    }
}

TEST(Cattaneo, ConservationAndCausality) {
    const double h = 0.01;
    const std::size_t n = 3001;
    const auto x = uniform_grid(-15.0, 15.0, n);
    std::vector<double> n0(n), J(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double y = x[i];
        n0[i] = std::abs(y) < 1.0 ? std::pow(std::cos(M_PI * y / 2), 2) : 0.0;
        J[i] = 0.3 * n0[i] * y;
    }
    auto s = make_two_stream(x, n0, J);
    EXPECT_NEAR(s.spacing(), h, 1e-12);
    const double N0 = s.particle_number();
    const double T = 5.0;
    s = cattaneo_evolve(s, T);
    EXPECT_NEAR(s.time, T, 1e-12);
    EXPECT_LE(std::abs(s.particle_number() - N0) / N0, 1e-10 * T);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(x[i]) > 1.0 + T + 2 * h) {
            EXPECT_LE(std::abs(s.n_plus[i]), 1e-12) << x[i];
            EXPECT_LE(std::abs(s.n_minus[i]), 1e-12) << x[i];
        }
    }
    // something did reach the light cone
    double edge = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(x[i]) > 1.0 + T - 0.1) edge = std::max(edge, s.n_plus[i] + s.n_minus[i]);
    EXPECT_GT(edge, 1e-6);
}

TEST(Cattaneo, SubCharacteristicStepsConserve) {
    const auto x = uniform_grid(-5.0, 5.0, 201);
    std::vector<double> n0(x.size()), J(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) n0[i] = std::exp(-x[i] * x[i]);
    auto s = make_two_stream(x, n0, J);
    const double N0 = s.particle_number();
    for (int i = 0; i < 100; ++i) s = cattaneo_step(s, 0.6 * s.spacing());
    EXPECT_NEAR(s.particle_number(), N0, 1e-13);
}

TEST(Cattaneo, StepLimit) {
    const auto x = uniform_grid(0.0, 1.0, 11);
    TwoStreamState s{x, std::vector<double>(11, 1.0), std::vector<double>(11, 0.0), 0.0};
    EXPECT_THROW(cattaneo_step(s, 0.2), stability_error);
    EXPECT_THROW(cattaneo_step(s, -0.1), domain_error);
    s.n_plus[3] = NAN;
    EXPECT_THROW(cattaneo_step(s, 0.05), domain_error);
}

TEST(Cattaneo, LongWavelengthMatchesFick) {
    const double sigma = 10.0;
    const double T = 5.0;
    const auto x = uniform_grid(-150.0, 150.0, 6001);
    std::vector<double> n0(x.size()), J(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        n0[i] = std::exp(-x[i] * x[i] / (2 * sigma * sigma));
        J[i] = x[i] / (sigma * sigma) * n0[i]; // Fick flux -dn/dx
    }
    const auto s = cattaneo_evolve(make_two_stream(x, n0, J), T);
    const double var = sigma * sigma + 2 * T;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double fick = sigma / std::sqrt(var) * std::exp(-x[i] * x[i] / (2 * var));
        const double d = s.n_plus[i] + s.n_minus[i] - fick;
        num += d * d;
        den += fick * fick;
    }
    EXPECT_LT(std::sqrt(num / den), 0.02);
}

TEST(CattaneoDispersion, Roots) {
    using boost::multiprecision::cpp_bin_float_50;
    const auto [h0, d0] = cattaneo_dispersion(0.0);
    EXPECT_EQ(h0, complex(0.0, 0.0));
    EXPECT_NEAR(std::abs(d0 - complex(0.0, -1.0)), 0.0, 1e-16);
    for (double k : {0.1, 0.5, 1.0, 3.0, -2.0}) {
        const auto [a, b] = cattaneo_dispersion(k);
        for (complex w : {a, b}) {
            EXPECT_LT(std::abs(w * w + complex(0, 1) * w - k * k), 1e-14 * std::max(1.0, k * k));
            EXPECT_LE(std::abs(w.imag()), 1.0 + 1e-15);
        }
    }
    // k = 1: w = (-i +- sqrt(3))/2, in 50 digits
    const cpp_bin_float_50 r = boost::multiprecision::sqrt(cpp_bin_float_50(3)) / 2;
    const auto [a, b] = cattaneo_dispersion(1.0);
    EXPECT_NEAR(a.real(), static_cast<double>(r), 1e-15);
    EXPECT_NEAR(b.real(), -static_cast<double>(r), 1e-15);
    EXPECT_NEAR(a.imag(), -0.5, 1e-15);
    EXPECT_NEAR(b.imag(), -0.5, 1e-15);
}

TEST(CattaneoDispersion, SmallWavenumberIsFick) {
    // hydrodynamic root: -i k^2 - i k^4 - 2 i k^6 + ...
    for (double k : {1e-1, 1e-2, 1e-4}) {
        const complex w = cattaneo_dispersion(k).first;
        const double series = -(k * k + std::pow(k, 4) + 2 * std::pow(k, 6));
        EXPECT_NEAR(w.real(), 0.0, 1e-300);
        EXPECT_NEAR(w.imag(), series, 6 * std::pow(k, 8) + 4e-16 * k * k);
        EXPECT_NEAR(w.imag() / (-k * k), 1.0, 2 * k * k);
    }
}
