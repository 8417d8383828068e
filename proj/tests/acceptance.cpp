// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "boostdiff/bandlimited.hpp"
#include "boostdiff/kernel.hpp"
#include "boostdiff/kinetic_models.hpp"
#include "boostdiff/spectral_oracle.hpp"
#include "boostdiff/verify.hpp"

using namespace boostdiff;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget_s) {
        o.pass = false;
        o.detail += fmt("; over the %.0f s budget", budget_s);
    }
    if (!o.pass) ++failures;
    std::printf("%s  %2d %-28s %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
    std::fflush(stdout);
}

// max over a row of 50 x-samples of |residual| / max|K| on that row
double pde_residual(const BoostParams& p, double h) {
    const double g = p.gamma(), v = p.v();
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double t = -1.0 + 2.0 * i / 49.0;
        double scale = 0.0, row = 0.0;
        for (int j = 0; j < 50; ++j) {
            const double x = -5.0 + 10.0 * j / 49.0;
            auto K = [&](double dt, double dx) { return kernel_boosted(t + dt, x + dx, p); };
            const double c = K(0, 0);
            const double nt = (K(h, 0) - K(-h, 0)) / (2 * h);
            const double nx = (K(0, h) - K(0, -h)) / (2 * h);
            const double ntt = (K(h, 0) - 2 * c + K(-h, 0)) / (h * h);
            const double nxx = (K(0, h) - 2 * c + K(0, -h)) / (h * h);
            const double ntx = (K(h, h) - K(h, -h) - K(-h, h) + K(-h, -h)) / (4 * h * h);
            row = std::max(row, std::abs(g * (nt + v * nx) - g * g * (nxx + 2 * v * ntx + v * v * ntt)));
            scale = std::max(scale, std::abs(c));
        }
        worst = std::max(worst, row / scale);
    }
    return worst;
}

} // namespace

int main() {
    const complex I(0.0, 1.0);

    criterion(1, "cutoff golden values", 1.0, [] {
        const double e1 = std::abs(BoostParams(0.5).lambda() - 4.0);
        const double e2 = std::abs(BoostParams(0.25).lambda() - 2.0 * std::sqrt(3.0));
        return Outcome{e1 <= 1e-12 && e2 <= 1e-12,
                       fmt("|L(0.5)-4|=%.2e", e1) + fmt(" |L(0.25)-2sqrt3|=%.2e (tol 1e-12)", e2)};
    });

    criterion(2, "band-edge closure", 1.0, [&] {
        double worst = 0.0, branch = 0.0;
        for (double v : {0.1, 0.25, 0.5, 0.9}) {
            const BoostParams p(v);
            const double L = p.lambda(), g = p.gamma();
            const double Om = L * (2 + v) / (1 + 2 * v);
            const complex Omt = Om - I / (g * v);
            worst = std::max(worst, std::abs(I * g * (Omt - v * L) - g * g * (L - v * Omt) * (L - v * Omt)));
            branch = std::max(branch, std::abs(stable_dispersion(L, p) - Omt));
        }
        return Outcome{worst <= 1e-11 && branch <= 1e-11,
                       fmt("residual=%.2e", worst) + fmt(" |w-(L)-Omega~|=%.2e (tol 1e-11)", branch)};
    });

    criterion(3, "kernel identities v=1/2", 10.0, [] {
        const BoostParams p(0.5);
        const double g = p.gamma();
        double a = 0.0, b = 0.0, c = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double x = -6.0 + 12.0 * (i + 0.5) / 100.0;
            a = std::max(a, std::abs(kernel_boosted(0.0, x, p) - std::sin(4 * x) / (4 * x)));
            b = std::max(b, std::abs(kernel_rest(-0.5 * x, x, p) - g / (4 * x) * std::sin(4 * x / g)));
        }
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> td(-1.0, 1.0), xd(-6.0, 6.0);
        QuadratureSpec q;
        q.nodes = 400;
        for (int i = 0; i < 200; ++i) {
            const double t = td(rng), x = xd(rng);
            const auto bp = to_frame({t, x, Frame::Rest}, Frame::Boosted, p);
            c = std::max(c, std::abs(kernel_rest(t, x, p) - oracle_kernel(bp.t, bp.x, p, q)));
        }
        return Outcome{a <= 1e-11 && b <= 1e-11 && c <= 1e-9,
                       fmt("(a) %.2e", a) + fmt(" (b) %.2e (tol 1e-11)", b) + fmt(" (c) %.2e (tol 1e-9)", c)};
    });

    criterion(4, "PDE residual convergence", 30.0, [] {
        const BoostParams p(0.5);
        const double r1 = pde_residual(p, 1e-3), r2 = pde_residual(p, 5e-4);
        const double ratio = r1 / r2;
        return Outcome{ratio >= 3.5 && ratio <= 4.5 && r2 < 1e-4,
                       fmt("ratio=%.3f in [3.5,4.5]", ratio) + fmt(" residual(5e-4)=%.2e (tol 1e-4)", r2)};
    });

    criterion(5, "contour endpoints", 1.0, [&] {
        const BoostParams p(0.5);
        const auto [lo, hi] = contour_endpoints(p);
        const double e = std::max(std::abs(lo - (I - std::sqrt(3.0))), std::abs(hi - (I + std::sqrt(3.0))));
        // boost the band edges with their stable frequencies back to the rest frame
        double comp = 0.0;
        for (double s : {-1.0, 1.0}) {
            const double k = s * p.lambda();
            const auto rest = boost_wavevector({stable_dispersion(k, p), k, Frame::Boosted}, p, Direction::BoostedToRest);
            comp = std::max(comp, std::abs(rest.k - (s < 0 ? lo : hi)));
            comp = std::max(comp, std::abs(rest.omega + I * rest.k * rest.k));
        }
        return Outcome{e <= 1e-14 && comp <= 1e-12,
                       fmt("endpoints %.2e (tol 1e-14)", e) + fmt(" composition %.2e (tol 1e-12)", comp)};
    });

    criterion(6, "well-posed round trip", 60.0, [] {
        const BoostParams p(0.5);
        const auto prof = detail::verify_profile(6, p);
        const auto rt = detail::round_trip(prof, 0.5, 2000000, p);
        return Outcome{rt.error <= 1e-6 && rt.growth_ratio <= 1.0 + 1e-6,
                       fmt("max error %.2e (tol 1e-6)", rt.error) +
                           fmt(" ||dn(t)||/(e^{|t|/gv}||dn(0)||)=%.9f (<= 1+1e-6)", rt.growth_ratio)};
    });

    criterion(7, "antidiffusion phenomenology", 60.0, [] {
        const BoostParams p(0.5);
        const double L = p.lambda();
        const auto prof = sample_function(
            [&](double x) { return std::exp(-std::pow(L * x / (2 * M_PI), 2)); }, p, 20, TailEstimate::Summed);
        const auto xs = uniform_grid(-10.0, 10.0, 801);
        std::vector<double> peak;
        for (double t : {0.0, 0.25, 0.5}) peak.push_back(evaluate_slice(prof, t, xs, p).max_abs());
        const auto phi = sampling_spectrum(prof.coefficients(), p);
        std::vector<double> band;
        for (double t : {0.0, -0.25, -0.5}) band.push_back(band_energy_fraction(phi, t, 0.8 * L, L, p));
        const bool ok = peak[0] > peak[1] && peak[1] > peak[2] && band[0] < band[1] && band[1] < band[2];
        return Outcome{ok, fmt("max|dn| %.6f", peak[0]) + fmt(" > %.6f", peak[1]) + fmt(" > %.6f;", peak[2]) +
                               fmt(" band fraction %.3e", band[0]) + fmt(" < %.3e", band[1]) + fmt(" < %.3e", band[2])};
    });

    criterion(8, "Green transform and branches", 30.0, [&] {
        const BoostParams p(0.5);
        QuadratureSpec q;
        q.scheme = QuadratureScheme::Adaptive;
        q.tolerance = 1e-10;
        double worst = 0.0, separation = INFINITY;
        bool branches = true;
        for (double t : {-0.5, 1.0}) {
            for (double k : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
                const complex closed = green_fourier(t, k, p);
                const complex numeric = oracle_fourier_G(t, k, p, q);
                worst = std::max(worst, std::abs(closed - numeric));
                // the numeric transform must reject the other branch
                const double g = p.gamma();
                const complex pref = 1.0 / std::sqrt(g * complex(g, -4.0 * p.v() * k));
                const complex right = pref * std::exp(-I * (t > 0 ? stable_dispersion(k, p) : unstable_dispersion(k, p)) * t);
                const complex wrong = pref * std::exp(-I * (t > 0 ? unstable_dispersion(k, p) : stable_dispersion(k, p)) * t);
                branches = branches && std::abs(numeric - right) <= 1e-6;
                separation = std::min(separation, std::abs(numeric - wrong));
            }
        }
        return Outcome{worst <= 1e-6 && branches && separation > 1e-3,
                       fmt("max |closed - quadrature| %.2e (tol 1e-6);", worst) +
                           fmt(" other branch off by >= %.3f", separation)};
    });

    criterion(9, "kinetic embedding", 60.0, [] {
        const BoostParams p(0.5);
        KineticSliceSpec ks;
        ks.xi_extent = 60.0;
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> td(-0.5, 0.5), xd(-3.0, 3.0);
        double worst = 0.0, raw = 0.0, ratio = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double t = td(rng), x = xd(rng);
            const auto e = embedding_density(t, x, ks, p);
            const double K = kernel_rest(t, x, p);
            worst = std::max(worst, std::abs(e.value - K));
            raw = std::max(raw, std::abs(e.truncated - K));
            ratio = std::max(ratio, truncation_defect_envelope(t, x, 120.0, p) / truncation_defect_envelope(t, x, 60.0, p));
        }
        return Outcome{worst <= 1e-6 && ratio < 1.0 && std::abs(ratio - 0.5) <= 0.1,
                       fmt("|density - K| %.2e (tol 1e-6);", worst) + fmt(" raw truncated defect %.2e;", raw) +
                           fmt(" defect(120)/defect(60) <= %.3f (1/xi: 0.5)", ratio)};
    });

    criterion(10, "Cattaneo comparator", 30.0, [] {
        const double T = 5.0;
        const auto x = uniform_grid(-15.0, 15.0, 3001);
        const double h = x[1] - x[0];
        std::vector<double> n0(x.size()), J(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            n0[i] = std::abs(x[i]) < 1.0 ? std::pow(std::cos(M_PI * x[i] / 2), 2) : 0.0;
            J[i] = 0.3 * x[i] * n0[i];
        }
        const auto s0 = make_two_stream(x, n0, J);
        const auto s = cattaneo_evolve(s0, T);
        const double drift = std::abs(s.particle_number() - s0.particle_number()) / s0.particle_number() / T;
        double outside = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (std::abs(x[i]) > 1.0 + T + 2 * h) outside = std::max({outside, std::abs(s.n_plus[i]), std::abs(s.n_minus[i])});

        const auto xf = uniform_grid(0.0, 4.9, 50);
        TwoStreamState f{xf, std::vector<double>(50, 1.0), std::vector<double>(50, 0.0), 0.0};
        double flux = 0.0;
        while (f.time < T - 1e-12) {
            f = cattaneo_step(f, f.spacing());
            for (std::size_t i = 0; i < xf.size(); ++i)
                flux = std::max(flux, std::abs(f.n_plus[i] - f.n_minus[i] - std::exp(-f.time)));
        }
        return Outcome{drift <= 1e-10 && outside == 0.0 && flux <= 1e-10,
                       fmt("number drift %.2e/unit time (tol 1e-10);", drift) +
                           fmt(" max beyond T+2h %.1e;", outside) + fmt(" |J-e^{-t}| %.2e (tol 1e-10)", flux)};
    });

    criterion(11, "G is not band-limited", 10.0, [] {
        const BoostParams p(0.5);
        const double k = 2.0 * p.lambda();
        const double closed = std::abs(green_fourier(1.0, k, p));
        QuadratureSpec q;
        q.scheme = QuadratureScheme::Adaptive;
        q.tolerance = 1e-12;
        const double numeric = std::abs(oracle_fourier_G(1.0, k, p, q));
        return Outcome{closed > 1e-8 && numeric > 1e-8,
                       fmt("|G^(1, 2L)| = %.4e", closed) + fmt(" (quadrature %.4e) > 1e-8", numeric)};
    });

    std::printf("%d of 11 criteria failed\n", failures);
    return failures ? 1 : 0;
}
