#ifndef BOOSTDIFF_VERIFY_HPP
#define BOOSTDIFF_VERIFY_HPP

// Cross-module property suites run by `boostdiff verify`. Each check reports a
// measured quantity against a tolerance; exceptions count as failures.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "bandlimited.hpp"
#include "boost_core.hpp"
#include "kernel.hpp"
#include "kinetic_models.hpp"
#include "special_functions.hpp"
#include "spectral_oracle.hpp"

namespace boostdiff {

struct CheckResult {
    std::string suite;
    std::string name;
    double v = std::numeric_limits<double>::quiet_NaN(); // NaN: v-independent
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

/// Tolerances per check. Near the light cone (v > 0.95) Lambda and gamma are
/// large and the nominal double-precision targets are out of reach; `relaxed`
/// is set and `note` says what changed.
struct VerifyTolerances {
    double dispersion = 1e-12;
    double saturation = 1e-12;
    double endpoints = 1e-12;
    double slice = 1e-11;
    double oracle = 1e-9;
    double erfi = 1e-11;
    double realness = 1e-11;
    double contour = 1e-10;
    double green_fourier = 1e-6;
    double sampling = 1e-8;
    double round_trip = 1e-6;
    double zeros = 1e-14;
    double embedding = 1e-6;
    double embedding_doubling = 1e-7;
    double xi_extent = 60.0;
    double ratio_lo = 3.5;
    double ratio_hi = 4.5;
    // rest-frame sample windows shrink by this factor so boosted coordinates stay O(1)
    double window_scale = 1.0;
    // base finite-difference step of the PDE residual check
    double pde_step = 1e-3;
    // oracle quadrature nodes
    int oracle_nodes = 400;
    bool relaxed = false;
    std::string note;

    static VerifyTolerances for_v(double v) {
        VerifyTolerances t;
        if (v <= 0.95) return t;
        const BoostParams p(v);
        t.relaxed = true;
        t.dispersion = 1e-9;
        t.saturation = 1e-9;
        t.endpoints = 1e-9;
        t.slice = 1e-8;
        t.oracle = 1e-6;
        t.erfi = 1e-8;
        t.contour = 1e-7;
        t.green_fourier = 1e-5;
        t.sampling = 1e-6;
        t.round_trip = 1e-5;
        t.zeros = 1e-12;
        t.embedding_doubling = 1e-5;
        t.xi_extent = 30.0;
        t.ratio_lo = 3.0;
        t.ratio_hi = 5.0;
        t.window_scale = 1.0 / p.gamma();
        t.pde_step = 1e-3 * 4.0 / p.lambda();
        t.oracle_nodes = static_cast<int>(std::ceil(400.0 * p.lambda() / 4.0));
        t.note = "near-luminal v: tolerances x1e3 (x10 for round trip, Green transform), rest-frame windows / gamma, "
                 "FD step x 4/Lambda, oracle nodes x Lambda/4, PDE ratio in [3, 5], embedding at xi_extent 30 with extent-doubling tolerance 1e-5";
        return t;
    }
};

struct VerifyOptions {
    bool poison_branch = false;
    std::vector<std::string> suites; // empty: all
    long round_trip_margin = 2000000;

    bool wants(const std::string& suite) const {
        return suites.empty() || std::find(suites.begin(), suites.end(), suite) != suites.end();
    }
};

namespace detail {

inline CheckResult run_check(const std::string& suite, const std::string& name, double v, double tolerance,
                             const std::function<double()>& measure, bool upper = true) {
    CheckResult r{suite, name, v, 0.0, tolerance, false, ""};
    try {
        r.measured = measure();
        r.pass = upper ? r.measured <= tolerance : r.measured >= tolerance;
    } catch (const std::exception& e) {
        r.measured = std::numeric_limits<double>::quiet_NaN();
        r.detail = e.what();
    }
    return r;
}

inline BandLimitedProfile verify_profile(std::uint64_t seed, const BoostParams& p) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Coefficient> c;
    for (long a = -20; a <= 20; ++a) c.emplace_back(a, u(rng));
    return from_samples(c, p);
}

// max |back - dn(0)| on the central half of [-20, 20] (lattice and midpoints)
// after forward resampling at +t and evolving back.
struct RoundTrip {
    double error;
    double growth_ratio; // ||dn(t)|| / (e^{|t|/(gamma v)} ||dn(0)||)
};

inline RoundTrip round_trip(const BandLimitedProfile& prof, double t, long margin, const BoostParams& p) {
    const auto fwd = resample(prof, t, margin, p);
    double worst = 0.0;
    for (double off : {0.0, 0.5}) {
        const auto back = evaluate_lattice(fwd, -t, -10, 10, p, off * p.spacing());
        for (long b = -10; b <= 10; ++b) {
            const double ref = eval_profile(prof, 0.0, (static_cast<double>(b) + off) * p.spacing(), p);
            worst = std::max(worst, std::abs(back[static_cast<std::size_t>(b + 10)] - ref));
        }
    }
    const double tail = fwd.truncation_bound().value_or(0.0);
    const double norm_t = std::hypot(l2_norm(fwd, p), tail);
    return {worst, norm_t / (std::exp(std::abs(t) * p.growth_rate()) * l2_norm(prof, p))};
}

} // namespace detail

/// Checks that depend on v.
inline std::vector<CheckResult> verify_at(double v, const VerifyOptions& opt = {}) {
    const BoostParams p(v);
    const auto tol = VerifyTolerances::for_v(v);
    const DispersionFn branch = opt.poison_branch ? poisoned_branch() : stable_branch();
    QuadratureSpec q;
    q.nodes = tol.oracle_nodes;
    q.tolerance = tol.realness;
    const double L = p.lambda();
    const double g = p.gamma();
    const complex I(0.0, 1.0);
    std::vector<CheckResult> out;
    auto add = [&](const std::string& suite, const std::string& name, double tolerance,
                   const std::function<double()>& f, bool upper = true) {
        if (opt.wants(suite)) out.push_back(detail::run_check(suite, name, v, tolerance, f, upper));
    };

    // boost-core
    add("boost-core", "dispersion_consistency", tol.dispersion, [&] {
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> kd(-L, L);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double k = kd(rng);
            const auto rest = boost_wavevector({stable_dispersion(k, p), k, Frame::Boosted}, p, Direction::BoostedToRest);
            worst = std::max(worst, std::abs(rest.omega + I * rest.k * rest.k) / std::max(1.0, std::norm(rest.k)));
        }
        return worst;
    });
    add("boost-core", "cutoff_saturation", tol.saturation, [&] {
        return std::max(std::abs(stable_dispersion(L, p).imag() + p.growth_rate()),
                        std::abs(stable_dispersion(-L, p).imag() + p.growth_rate()));
    });
    add("boost-core", "endpoints", tol.endpoints, [&] {
        const auto [lo, hi] = contour_endpoints(p);
        const complex k_lo = g * (-L - v * stable_dispersion(-L, p));
        const complex k_hi = g * (L - v * stable_dispersion(L, p));
        return std::max(std::abs(k_lo - lo), std::abs(k_hi - hi));
    });
    add("boost-core", "stable_branch_admissibility", 0.0, [&] {
        double wrong = 0;
        for (int i = 0; i < 1000; ++i) {
            const double k_in = L * (i + 0.5) / 1000.0;
            const double k_out = L * (1.0 + (i + 1) / 1000.0);
            for (double s : {-1.0, 1.0}) {
                if (!is_kinetically_admissible({stable_dispersion(s * k_in, p), s * k_in, Frame::Boosted}, p)) ++wrong;
                if (is_kinetically_admissible({stable_dispersion(s * k_out, p), s * k_out, Frame::Boosted}, p)) ++wrong;
            }
        }
        return wrong;
    });
    add("boost-core", "branch_continuity", 1.0, [&] {
        // largest jump relative to a Lipschitz estimate from neighbouring jumps
        const int n = 10000;
        std::vector<complex> w(n);
        for (int i = 0; i < n; ++i) w[i] = stable_dispersion(-L + 2.0 * L * i / (n - 1), p);
        double worst = 0.0;
        for (int i = 2; i < n - 1; ++i) {
            const double local = std::max(std::abs(w[i - 1] - w[i - 2]), std::abs(w[i + 1] - w[i]));
            worst = std::max(worst, std::abs(w[i] - w[i - 1]) / (2.0 * local));
        }
        return worst;
    });

    // kernel
    add("kernel", "initial_sinc", tol.slice, [&] {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double x = -6.0 + 12.0 * (i + 0.5) / 100.0;
            worst = std::max(worst, std::abs(kernel_boosted(0.0, x, p) - special::sinc(L * x)));
        }
        return worst;
    });
    add("kernel", "slice_identity", tol.slice, [&] {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double x = tol.window_scale * (-6.0 + 12.0 * (i + 0.5) / 100.0);
            worst = std::max(worst, std::abs(kernel_rest(-v * x, x, p) - special::sinc(L * x / g)));
        }
        return worst;
    });
    add("kernel", "time_zero_form", tol.slice, [&] {
        const double s = p.edge();
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double x = tol.window_scale * (-6.0 + 12.0 * (i + 0.5) / 100.0);
            const double sx = s * x;
            const double gx = std::exp(-x) * std::sin(sx) / sx;
            const double dg = -gx + std::exp(-x) * (std::cos(sx) / x - std::sin(sx) / (sx * x));
            worst = std::max(worst, std::abs(kernel_rest(0.0, x, p) - (gx - 2.0 * v * dg) / (1.0 + 2.0 * v)));
        }
        return worst;
    });
    add("kernel", "closed_form_vs_oracle", tol.oracle, [&] {
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> td(-1.0, 1.0);
        std::uniform_real_distribution<double> xd(-6.0, 6.0);
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double t = tol.window_scale * td(rng);
            const double x = tol.window_scale * xd(rng);
            const auto b = to_frame({t, x, Frame::Rest}, Frame::Boosted, p);
            worst = std::max(worst, std::abs(kernel_rest(t, x, p) - oracle_kernel(b.t, b.x, p, q, branch)));
        }
        return worst;
    });
    add("kernel", "erfi_consistency", tol.erfi, [&] {
        std::mt19937_64 rng(23);
        std::uniform_real_distribution<double> td(-1.0, -0.15);
        std::uniform_real_distribution<double> xd(-2.0, 2.0);
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double t = tol.window_scale * td(rng);
            const double x = tol.window_scale * xd(rng);
            const double direct = kernel_rest_erf_direct(t, x, p);
            worst = std::max({worst, std::abs(kernel_rest_erfi(t, x, p) - direct), std::abs(kernel_rest(t, x, p) - direct)});
        }
        return worst;
    });
    {
        double r1 = 0.0, r2 = 0.0;
        bool computed = false;
        auto residuals = [&] {
            if (computed) return;
            auto max_residual = [&](double h) {
                double worst = 0.0;
                for (int i = 0; i < 50; ++i) {
                    const double t = -1.0 + 2.0 * i / 49.0;
                    double scale = 0.0;
                    std::vector<double> row(50);
                    for (int j = 0; j < 50; ++j) {
                        const double x = -5.0 + 10.0 * j / 49.0;
                        auto K = [&](double dt, double dx) { return kernel_boosted(t + dt, x + dx, p); };
                        const double c = K(0, 0);
                        const double nt = (K(h, 0) - K(-h, 0)) / (2 * h);
                        const double nx = (K(0, h) - K(0, -h)) / (2 * h);
                        const double ntt = (K(h, 0) - 2 * c + K(-h, 0)) / (h * h);
                        const double nxx = (K(0, h) - 2 * c + K(0, -h)) / (h * h);
                        const double ntx = (K(h, h) - K(h, -h) - K(-h, h) + K(-h, -h)) / (4 * h * h);
                        row[j] = std::abs(g * (nt + v * nx) - g * g * (nxx + 2 * v * ntx + v * v * ntt));
                        scale = std::max(scale, std::abs(c));
                    }
                    for (double r : row) worst = std::max(worst, r / scale);
                }
                return worst;
            };
            r1 = max_residual(tol.pde_step);
            r2 = max_residual(tol.pde_step / 2);
            computed = true;
        };
        add("kernel", "pde_residual_ratio_min", tol.ratio_lo, [&] { residuals(); return r1 / r2; }, false);
        add("kernel", "pde_residual_ratio_max", tol.ratio_hi, [&] { residuals(); return r1 / r2; });
    }
    add("kernel", "green_support", 0.0, [&] {
        std::mt19937_64 rng(29);
        std::uniform_real_distribution<double> td(-5.0, 5.0);
        std::uniform_real_distribution<double> gap(0.0, 10.0);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double t = td(rng);
            worst = std::max(worst, std::abs(green_boosted(t, t / v + gap(rng), p)));
        }
        return worst;
    });
    add("kernel", "green_fourier_branches", tol.green_fourier, [&] {
        QuadratureSpec gq;
        gq.scheme = QuadratureScheme::Adaptive;
        gq.tolerance = 1e-9;
        double worst = 0.0;
        for (double t : {-0.5, 0.5}) {
            for (int i = 0; i < 20; ++i) {
                const double k = -5.0 + 10.0 * i / 19.0;
                worst = std::max(worst, std::abs(green_fourier(t, k, p) - oracle_fourier_G(t, k, p, gq)));
            }
        }
        return worst;
    });

    // spectral-oracle
    add("spectral-oracle", "self_convergence", tol.oracle, [&] {
        QuadratureSpec fine = q;
        fine.nodes = 2 * q.nodes;
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> td(-1.0, 1.0);
        std::uniform_real_distribution<double> xd(-6.0, 6.0);
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double t = td(rng);
            const double x = xd(rng);
            worst = std::max(worst, std::abs(oracle_kernel(t, x, p, q, branch) - oracle_kernel(t, x, p, fine, branch)));
        }
        return worst;
    });
    add("spectral-oracle", "realness", tol.realness, [&] {
        QuadratureSpec loose = q;
        loose.tolerance = 1.0; // measure the residue instead of raising
        const auto prof = detail::verify_profile(7, p);
        double worst = 0.0;
        for (double t : {-0.5, 0.5}) {
            const auto r = oracle_evolve(sampling_spectrum(prof.coefficients(), p), t, uniform_grid(-6, 6, 49), p, loose,
                                         branch);
            worst = std::max(worst, r.max_imag_residue);
        }
        return worst;
    });
    add("spectral-oracle", "contour_independence", tol.contour, [&] {
        std::mt19937_64 rng(37);
        std::uniform_real_distribution<double> td(-1.0, 1.0);
        std::uniform_real_distribution<double> xd(-6.0, 6.0);
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double t = tol.window_scale * td(rng);
            const double x = tol.window_scale * xd(rng);
            worst = std::max(worst, std::abs(oracle_kernel_contour(t, x, p, q, ContourShape::Parabolic) -
                                             oracle_kernel_contour(t, x, p, q, ContourShape::Chord)));
        }
        return worst;
    });

    // bandlimited
    add("bandlimited", "sampling_exactness", tol.sampling, [&] {
        const auto xs = uniform_grid(-9.0, 9.0, 200);
        QuadratureSpec sq = q;
        sq.tolerance = tol.sampling;
        double worst = 0.0;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto prof = detail::verify_profile(100 + seed, p);
            const auto oracle = oracle_evolve(sampling_spectrum(prof.coefficients(), p), 0.0, xs, p, sq, branch);
            const auto mine = evaluate_slice(prof, 0.0, xs, p);
            for (std::size_t i = 0; i < xs.size(); ++i)
                worst = std::max(worst, std::abs(mine.values[i] - oracle.slice.values[i]));
        }
        return worst;
    });
    add("bandlimited", "l2_growth", 1.0 + 1e-6, [&] {
        const long W = 50000;
        double worst = 0.0;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto prof = detail::verify_profile(200 + seed, p);
            const double n0 = l2_norm(prof, p);
            for (double t : {-0.5, -0.25, 0.25, 0.5}) {
                const auto vals = evaluate_lattice(prof, t, -W, W, p);
                double sum = 0.0;
                for (double x : vals) sum += x * x;
                const double c = std::max(std::abs(vals.front()), std::abs(vals.back())) * W;
                sum += 2.0 * c * c / W;
                worst = std::max(worst, std::sqrt(p.spacing() * sum) / (std::exp(std::abs(t) * p.growth_rate()) * n0));
            }
        }
        return worst;
    });
    add("bandlimited", "round_trip", tol.round_trip, [&] {
        return detail::round_trip(detail::verify_profile(42, p), 0.5, opt.round_trip_margin, p).error;
    });
    add("bandlimited", "sinc_zeros", tol.zeros, [&] {
        const auto prof = from_samples({{0, 1.0}}, p);
        double worst = 0.0;
        for (long a = -50; a <= 50; ++a)
            if (a != 0) worst = std::max(worst, std::abs(eval_profile(prof, 0.0, prof.position(a), p)));
        return worst;
    });

    // kinetic-models
    {
        std::vector<std::pair<double, double>> pts;
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> td(-0.5, 0.5);
        std::uniform_real_distribution<double> xd(-3.0, 3.0);
        for (int i = 0; i < 20; ++i) {
            const double t = td(rng);
            pts.emplace_back(tol.window_scale * t, tol.window_scale * xd(rng));
        }
        KineticSliceSpec ks;
        ks.quad.tolerance = tol.embedding_doubling;
        ks.xi_extent = tol.xi_extent;
        add("kinetic-models", "embedding_identity", tol.embedding, [&] {
            double worst = 0.0;
            for (auto [t, x] : pts)
                worst = std::max(worst, std::abs(embedding_density(t, x, ks, p).value - kernel_rest(t, x, p)));
            return worst;
        });
        add("kinetic-models", "defect_decay_ratio", 0.6, [&] {
            double worst = 0.0;
            for (auto [t, x] : pts) {
                const double r = truncation_defect_envelope(t, x, 120.0, p) / truncation_defect_envelope(t, x, 60.0, p);
                worst = std::max(worst, std::max(r, 1.0 - r)); // inside [0.4, 0.6]
            }
            return worst;
        });
        add("kinetic-models", "fp_rate_differs", 1e-3, [&] {
            double least = std::numeric_limits<double>::infinity();
            for (auto [t, x] : pts) {
                const auto h = half_densities(t, x, ks, p);
                const double two_stream = 0.5 * (h.minus - h.plus);
                const double fp = fokker_planck_rate(t, x, ks.beta, p);
                least = std::min(least, std::abs(fp - two_stream) /
                                            std::max({1.0, std::abs(fp), std::abs(two_stream)}));
            }
            return least;
        }, false);
    }
    return out;
}

/// Checks with no v dependence: special functions and the two-stream model.
inline std::vector<CheckResult> verify_common(const VerifyOptions& opt = {}) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<CheckResult> out;
    auto add = [&](const std::string& suite, const std::string& name, double tolerance,
                   const std::function<double()>& f, bool upper = true) {
        if (opt.wants(suite)) out.push_back(detail::run_check(suite, name, nan, tolerance, f, upper));
    };
    add("special-functions", "erf_symmetry", 1e-13, [] {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> r(0.0, 10.0), th(0.0, 2 * M_PI);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const complex z = std::polar(std::sqrt(r(rng) * 10.0), th(rng));
            const complex e = special::erf(z);
            const double scale = std::max(1.0, std::abs(e));
            worst = std::max({worst, std::abs(special::erf(-z) + e) / scale,
                              std::abs(special::erf(std::conj(z)) - std::conj(e)) / scale});
        }
        return worst;
    });
    add("special-functions", "erf_derivative", 1e-7, [] {
        std::mt19937_64 rng(6);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            // |z| <= 2: beyond that FD rounding over |e^{-z^2}| alone approaches 1e-7
            const complex z = std::polar(2.0 * std::sqrt(u(rng)), 2 * M_PI * u(rng));
            const double h = 1e-6;
            const complex fd = (special::erf(z + h) - special::erf(z - h)) / (2 * h);
            const complex exact = special::kTwoOverSqrtPi * std::exp(-z * z);
            worst = std::max(worst, std::abs(fd - exact) / std::abs(exact));
        }
        return worst;
    });

    const double h = 0.01;
    const double T = 5.0;
    auto bump = [&] {
        const auto x = uniform_grid(-15.0, 15.0, 3001);
        std::vector<double> n0(x.size()), J(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            n0[i] = std::abs(x[i]) < 1.0 ? std::pow(std::cos(M_PI * x[i] / 2), 2) : 0.0;
            J[i] = 0.3 * x[i] * n0[i];
        }
        return make_two_stream(x, n0, J);
    };
    add("kinetic-models", "cattaneo_conservation", 1e-10, [&] {
        const auto s0 = bump();
        const auto s = cattaneo_evolve(s0, T);
        return std::abs(s.particle_number() - s0.particle_number()) / s0.particle_number() / T;
    });
    add("kinetic-models", "cattaneo_causality", 1e-12, [&] {
        const auto s = cattaneo_evolve(bump(), T);
        double worst = 0.0;
        for (std::size_t i = 0; i < s.x.size(); ++i)
            if (std::abs(s.x[i]) > 1.0 + T + 2 * h) worst = std::max({worst, std::abs(s.n_plus[i]), std::abs(s.n_minus[i])});
        return worst;
    });
    add("kinetic-models", "cattaneo_flux_decay", 1e-10, [&] {
        const auto x = uniform_grid(0.0, 4.9, 50);
        TwoStreamState s{x, std::vector<double>(50, 1.0), std::vector<double>(50, 0.0), 0.0};
        double worst = 0.0;
        while (s.time < T - 1e-12) {
            s = cattaneo_step(s, s.spacing());
            for (std::size_t i = 0; i < x.size(); ++i)
                worst = std::max(worst, std::abs(s.n_plus[i] - s.n_minus[i] - std::exp(-s.time)));
        }
        return worst;
    });
    add("kinetic-models", "cattaneo_fick", 0.02, [&] {
        const double sigma = 10.0;
        const auto x = uniform_grid(-150.0, 150.0, 6001);
        std::vector<double> n0(x.size()), J(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            n0[i] = std::exp(-x[i] * x[i] / (2 * sigma * sigma));
            J[i] = x[i] / (sigma * sigma) * n0[i];
        }
        const auto s = cattaneo_evolve(make_two_stream(x, n0, J), T);
        const double var = sigma * sigma + 2 * T;
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double fick = sigma / std::sqrt(var) * std::exp(-x[i] * x[i] / (2 * var));
            num += std::pow(s.n_plus[i] + s.n_minus[i] - fick, 2);
            den += fick * fick;
        }
        return std::sqrt(num / den);
    });
    return out;
}

} // namespace boostdiff

#endif
