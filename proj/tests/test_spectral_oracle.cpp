#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "boostdiff/kernel.hpp"
#include "boostdiff/spectral_oracle.hpp"

using namespace boostdiff;

TEST(OracleKernel, InitialData) {
    const auto p = make_boost(0.5);
    EXPECT_NEAR(oracle_kernel(0.0, 0.0, p), 1.0, 1e-14);
    for (int i = 0; i < 50; ++i) {
        const double x = -6.0 + 12.0 * (i + 0.5) / 50.0;
        EXPECT_NEAR(oracle_kernel(0.0, x, p), special::sinc(p.lambda() * x), 1e-12) << x;
    }
}

TEST(OracleKernel, SelfConvergence) {
    const auto p = make_boost(0.5);
    QuadratureSpec coarse;
    QuadratureSpec fine;
    fine.nodes = 800;
    EXPECT_NEAR(oracle_kernel(0.5, 1.0, p, coarse), oracle_kernel(0.5, 1.0, p, fine), 1e-12);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> td(-1.0, 1.0);
    std::uniform_real_distribution<double> xd(-6.0, 6.0);
    for (int i = 0; i < 50; ++i) {
        const double t = td(rng);
        const double x = xd(rng);
        EXPECT_NEAR(oracle_kernel(t, x, p, coarse), oracle_kernel(t, x, p, fine), coarse.tolerance);
    }
}

TEST(OracleKernel, PoisonedBranchIsCaught) {
    const auto p = make_boost(0.5);
    EXPECT_THROW(oracle_kernel(0.5, 1.0, p, {}, poisoned_branch()), consistency_error);
    try {
        oracle_kernel(-0.5, 0.3, p, {}, poisoned_branch());
        FAIL();
    } catch (const consistency_error& e) {
        EXPECT_GT(e.residue(), 1e-3);
    }
}

TEST(OracleContour, SliceIdentity) {
    const auto p = make_boost(0.5);
    for (double x : {-4.0, -1.3, 0.7, 2.9}) {
        const double expect = p.gamma() / (p.lambda() * x) * std::sin(x * p.lambda() / p.gamma());
        EXPECT_NEAR(oracle_kernel_contour(-p.v() * x, x, p), expect, 1e-10);
    }
}

TEST(OracleContour, PathIndependence) {
    const auto p = make_boost(0.5);
    const double tb = p.gamma() * (0.3 + 0.5 * 1.2);
    const double xb = p.gamma() * (1.2 + 0.5 * 0.3);
    EXPECT_NEAR(oracle_kernel_contour(0.3, 1.2, p), oracle_kernel(tb, xb, p), 1e-10);
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> td(-1.0, 1.0);
    std::uniform_real_distribution<double> xd(-6.0, 6.0);
    for (int i = 0; i < 50; ++i) {
        const double t = td(rng);
        const double x = xd(rng);
        EXPECT_NEAR(oracle_kernel_contour(t, x, p, {}, ContourShape::Parabolic),
                    oracle_kernel_contour(t, x, p, {}, ContourShape::Chord), 1e-10)
            << t << " " << x;
    }
}

TEST(OracleEvolve, FlatSpectrumIsKernel) {
    const auto p = make_boost(0.5);
    const SpectrumFn flat = [&](double) { return complex(M_PI / p.lambda()); };
    const std::vector<double> xs = uniform_grid(-3.0, 3.0, 25);
    for (double t : {-0.5, 0.0, 0.4}) {
        const auto out = oracle_evolve(flat, t, xs, p);
        EXPECT_EQ(out.slice.provenance, Provenance::SpectralOracle);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            EXPECT_NEAR(out.slice.values[i], oracle_kernel(t, xs[i], p), 1e-12);
        }
        EXPECT_LT(out.max_imag_residue, 1e-11);
    }
}

TEST(OracleEvolve, NarrowBumpAtTimeZero) {
    // phi(k) = e^{-k^2/(2 s^2)} gives dn(0, x) = (s/sqrt(2 pi)) e^{-s^2 x^2/2} up to the
    // band tails, which are below e^{-Lambda^2/(2 s^2)}
    const auto p = make_boost(0.5);
    const double s = 0.5;
    const SpectrumFn bump = [&](double k) { return complex(std::exp(-k * k / (2 * s * s))); };
    const auto xs = uniform_grid(-8.0, 8.0, 33);
    const auto out = oracle_evolve(bump, 0.0, xs, p);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        EXPECT_NEAR(out.slice.values[i], s / std::sqrt(2 * M_PI) * std::exp(-s * s * x * x / 2), 1e-12);
    }
}

TEST(OracleEvolve, RefinementFailureRaises) {
    const auto p = make_boost(0.5);
    QuadratureSpec q;
    q.nodes = 8;
    const SpectrumFn flat = [](double) { return complex(1.0); };
    EXPECT_THROW(oracle_evolve(flat, 0.3, {0.0, 20.0}, p, q), accuracy_error);
}

TEST(OracleFourierG, Normalisation) {
    const auto p = make_boost(0.5);
    QuadratureSpec q;
    q.tolerance = 1e-10;
    EXPECT_LT(std::abs(oracle_fourier_G(1.0, 0.0, p, q) - 1.0 / p.gamma()), 1e-8);
    EXPECT_THROW(oracle_fourier_G(0.0, 0.0, p, q), domain_error);
}

TEST(OracleFourierG, BranchTable) {
    const auto p = make_boost(0.5);
    QuadratureSpec q;
    q.tolerance = 1e-9;
    for (double k : {0.0, -1.0, 1.0, -2.0, 2.0}) {
        EXPECT_LT(std::abs(oracle_fourier_G(1.0, k, p, q) - green_fourier(1.0, k, p)), 1e-6);
    }
    const complex back = oracle_fourier_G(-0.5, 1.0, p, q);
    const double g = p.gamma();
    const complex pref = 1.0 / std::sqrt(g * complex(g, -4.0 * p.v()));
    EXPECT_LT(std::abs(back - pref * std::exp(complex(0, 0.5) * unstable_dispersion(1.0, p))), 1e-6);
    // and not the stable one
    EXPECT_GT(std::abs(back - pref * std::exp(complex(0, 0.5) * stable_dispersion(1.0, p))), 1e-3);
}

TEST(BandEnergy, FlatSpectrumFraction) {
    const auto p = make_boost(0.5);
    const SpectrumFn flat = [](double) { return complex(1.0); };
    EXPECT_NEAR(band_energy_fraction(flat, 0.0, 0.8 * p.lambda(), p.lambda(), p), 0.2, 1e-13);
}
