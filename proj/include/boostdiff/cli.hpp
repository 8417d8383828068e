#ifndef BOOSTDIFF_CLI_HPP
#define BOOSTDIFF_CLI_HPP

// Command-line front end. run_cli() is the whole program minus main(), so the
// test suite can drive it in-process.
//
// Exit codes: 0 success, 1 verification failure, 2 usage / config / input error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bandlimited.hpp"
#include "boost_core.hpp"
#include "io.hpp"
#include "kernel.hpp"
#include "kinetic_models.hpp"
#include "spectral_oracle.hpp"
#include "verify.hpp"

namespace boostdiff::cli {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kUsage = 2 };

/// Raised by a command whose own cross-check failed.
class verification_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void emit(const RunConfig& cfg, const Table& t, std::ostream& out) {
    if (cfg.out.empty()) {
        write_table(out, t, cfg.format);
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw input_error("--out: cannot open '" + cfg.out + "' for writing");
    write_table(f, t, cfg.format);
}

inline std::vector<double> x_grid(const RunConfig& cfg) { return uniform_grid(cfg.xmin, cfg.xmax, cfg.nx); }

inline double reference_function(const std::string& name, double x, const BoostParams& p) {
    const double L = p.lambda();
    if (name == "gaussian") return std::exp(-std::pow(L * x / (2 * M_PI), 2));
    if (name == "quartic") return std::exp(-std::pow(L * x / (2 * M_PI), 4));
    if (name == "sinc") return special::sinc(L * x);
    if (name == "bump") return std::abs(x) < 1.0 ? std::pow(std::cos(M_PI * x / 2), 2) : 0.0;
    return 0.0;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

inline int cmd_dispersion(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    const BoostParams p(cfg.v);
    const auto ks = uniform_grid(-cfg.kmax, cfg.kmax, cfg.n);
    std::vector<double> rm, im, rp, ip, adm;
    double widest = 0.0;
    for (double k : ks) {
        const complex wm = stable_dispersion(k, p);
        const complex wp = unstable_dispersion(k, p);
        rm.push_back(wm.real());
        im.push_back(wm.imag());
        rp.push_back(wp.real());
        ip.push_back(wp.imag());
        const bool ok = is_kinetically_admissible({wm, k, Frame::Boosted}, p);
        adm.push_back(ok ? 1.0 : 0.0);
        if (ok) widest = std::max(widest, std::abs(k));
    }
    Table t;
    t.set_meta("v", format_number(p.v()));
    t.set_meta("lambda", format_number(p.lambda()));
    t.set_meta("frame", "boosted");
    t.set_meta("time", "");
    t.set_meta("provenance", "closed-form");
    t.add_column("k", ks);
    t.add_column("re_omega_minus", rm);
    t.add_column("im_omega_minus", im);
    t.add_column("re_omega_plus", rp);
    t.add_column("im_omega_plus", ip);
    t.add_column("admissible", adm);
    detail::emit(cfg, t, out);
    log << "# dispersion: v=" << format_number(p.v()) << " lambda=" << format_number(p.lambda())
        << " widest admissible |k|=" << format_number(widest) << "\n";
    return kOk;
}

inline int cmd_kernel(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    const BoostParams p(cfg.v);
    if (cfg.comoving && cfg.frame == Frame::Rest) throw input_error("--comoving applies to the boosted frame only");
    const auto base = detail::x_grid(cfg);
    std::vector<FieldSlice> slices;
    std::vector<double> oracle;
    double worst = 0.0;
    QuadratureSpec q;
    for (double t : cfg.times) {
        std::vector<double> xs = base;
        if (cfg.comoving)
            for (double& x : xs) x += p.v() * t;
        try {
            slices.push_back(kernel_slice(cfg.frame, t, xs, p));
        } catch (const overflow_error& e) {
            throw overflow_error("kernel at t=" + format_number(t) + ": " + e.what(), e.growth_exponent());
        }
        if (cfg.oracle) {
            for (std::size_t i = 0; i < xs.size(); ++i) {
                SpacetimePoint pt{t, xs[i], cfg.frame};
                const auto b = to_frame(pt, Frame::Boosted, p);
                const double o = oracle_kernel(b.t, b.x, p, q);
                oracle.push_back(o);
                worst = std::max(worst, std::abs(o - slices.back().values[i]));
            }
        }
    }
    std::vector<std::pair<std::string, std::vector<double>>> extra;
    if (cfg.oracle) extra.emplace_back("oracle", oracle);
    auto table = slices_table(slices, p, extra);
    if (cfg.comoving) table.set_meta("window", "comoving");
    detail::emit(cfg, table, out);
    for (const auto& s : slices)
        log << "# kernel: t=" << format_number(s.time) << " max|K|=" << format_number(s.max_abs()) << "\n";
    if (cfg.oracle) {
        log << "# kernel: max |closed-form - oracle| = " << format_number(worst) << " (tol " << format_number(cfg.tol)
            << ")\n";
        if (!(worst <= cfg.tol)) throw verification_failure("kernel: oracle discrepancy above --tol");
    }
    return kOk;
}

inline int cmd_green(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    const BoostParams p(cfg.v);
    Table t;
    t.set_meta("v", format_number(p.v()));
    t.set_meta("lambda", format_number(p.lambda()));
    t.set_meta("frame", "boosted");
    t.set_meta("time", join_numbers(cfg.times));
    t.set_meta("provenance", "closed-form");
    std::vector<double> tc;
    if (cfg.fourier) {
        const auto ks = uniform_grid(-cfg.kmax, cfg.kmax, cfg.n);
        std::vector<double> kc, re, im, stable;
        for (double time : cfg.times) {
            for (double k : ks) {
                const complex g = green_fourier(time, k, p);
                tc.push_back(time);
                kc.push_back(k);
                re.push_back(g.real());
                im.push_back(g.imag());
                stable.push_back(time > 0.0 ? 1.0 : 0.0);
            }
            log << "# green: t=" << format_number(time) << " branch=" << (time > 0.0 ? "stable" : "unstable")
                << " |G(2 Lambda)|=" << format_number(std::abs(green_fourier(time, 2 * p.lambda(), p))) << "\n";
        }
        t.add_column("time", tc);
        t.add_column("k", kc);
        t.add_column("re_G", re);
        t.add_column("im_G", im);
        t.add_column("stable_branch", stable);
    } else {
        const auto xs = detail::x_grid(cfg);
        std::vector<double> xc, vc;
        for (double time : cfg.times) {
            for (double x : xs) {
                tc.push_back(time);
                xc.push_back(x);
                vc.push_back(green_boosted(time, x, p));
            }
        }
        t.add_column("time", tc);
        t.add_column("x", xc);
        t.add_column("value", vc);
    }
    detail::emit(cfg, t, out);
    return kOk;
}

inline int cmd_sample(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    const BoostParams p(cfg.v);
    const auto name = cfg.function;
    const auto prof = sample_function([&](double x) { return detail::reference_function(name, x, p); }, p, cfg.amax,
                                      name == "sinc" ? TailEstimate::Unknown : TailEstimate::Summed);
    if (cfg.out.empty()) {
        write_profile(out, prof);
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) throw input_error("--out: cannot open '" + cfg.out + "' for writing");
        write_profile(f, prof);
    }
    log << "# sample: " << name << " with " << prof.coefficients().size() << " coefficients";
    if (prof.truncation_bound()) log << ", truncation bound " << format_number(*prof.truncation_bound());
    log << "\n";
    return kOk;
}

inline int cmd_evolve(const RunConfig& cfg, std::ostream& out, std::ostream& log, bool v_given) {
    if (cfg.profile.empty()) throw input_error("--profile: a profile file is required");
    const auto prof = load_profile(cfg.profile);
    if (v_given && std::abs(cfg.v - prof.v()) > 1e-15) {
        throw input_error("--v " + format_number(cfg.v) + " does not match the profile's v=" + format_number(prof.v()));
    }
    const BoostParams p(prof.v());
    const auto base = detail::x_grid(cfg);
    const auto phi = sampling_spectrum(prof.coefficients(), p);
    std::vector<FieldSlice> slices;
    std::vector<double> oracle;
    double worst = 0.0;
    QuadratureSpec q;
    q.tolerance = std::max(cfg.tol, 1e-11);
    for (double t : cfg.times) {
        std::vector<double> xs = base;
        if (cfg.comoving)
            for (double& x : xs) x += p.v() * t;
        try {
            slices.push_back(evaluate_slice(prof, t, xs, p));
        } catch (const overflow_error& e) {
            throw overflow_error("evolve at t=" + format_number(t) + ": " + e.what(), e.growth_exponent());
        }
        if (cfg.oracle) {
            const auto o = oracle_evolve(phi, t, xs, p, q);
            for (std::size_t i = 0; i < xs.size(); ++i) {
                oracle.push_back(o.slice.values[i]);
                worst = std::max(worst, std::abs(o.slice.values[i] - slices.back().values[i]));
            }
        }
        const double band = prof.is_zero() ? 0.0 : band_energy_fraction(phi, t, 0.8 * p.lambda(), p.lambda(), p);
        log << "# evolve: t=" << format_number(t) << " max|dn|=" << format_number(slices.back().max_abs())
            << " band[0.8L,L] fraction=" << format_number(band) << "\n";
    }
    std::vector<std::pair<std::string, std::vector<double>>> extra;
    if (cfg.oracle) extra.emplace_back("oracle", oracle);
    auto table = slices_table(slices, p, extra);
    if (cfg.comoving) table.set_meta("window", "comoving");
    detail::emit(cfg, table, out);
    if (cfg.oracle) {
        log << "# evolve: max |closed-form - oracle| = " << format_number(worst) << " (tol " << format_number(cfg.tol)
            << ")\n";
        if (!(worst <= cfg.tol)) throw verification_failure("evolve: oracle discrepancy above --tol");
    }
    return kOk;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    VerifyOptions opt;
    opt.poison_branch = cfg.poison_branch;
    opt.suites = cfg.suites;
    static const std::vector<std::string> known = {"boost-core", "special-functions", "kernel",
                                                   "spectral-oracle", "bandlimited", "kinetic-models"};
    for (const auto& s : cfg.suites)
        if (std::find(known.begin(), known.end(), s) == known.end()) throw input_error("--suite: unknown suite '" + s + "'");
    const std::vector<double> vs = cfg.verify_v.empty() ? std::vector<double>{0.25, 0.5, 0.75} : cfg.verify_v;
    Table t;
    t.set_meta("report", "verify");
    t.set_meta("v", join_numbers(vs));
    t.set_meta("poison_branch", cfg.poison_branch ? "true" : "false");
    std::vector<CheckResult> all = verify_common(opt);
    for (double v : vs) {
        const auto tol = VerifyTolerances::for_v(v);
        if (tol.relaxed) t.set_meta("tolerances_v" + format_number(v), tol.note);
        auto r = verify_at(v, opt);
        all.insert(all.end(), r.begin(), r.end());
    }
    std::vector<std::string> suite, name, pass, detail;
    std::vector<double> vcol, measured, tolerance;
    int failed = 0;
    for (const auto& r : all) {
        suite.push_back(r.suite);
        name.push_back(r.name);
        vcol.push_back(r.v);
        measured.push_back(r.measured);
        tolerance.push_back(r.tolerance);
        pass.push_back(r.pass ? "PASS" : "FAIL");
        std::string d = r.detail;
        for (char& c : d)
            if (c == ',' || c == '\n') c = ';';
        detail.push_back(d);
        if (!r.pass) {
            ++failed;
            log << "# FAIL " << r.suite << "/" << r.name;
            if (!std::isnan(r.v)) log << " v=" << format_number(r.v);
            log << ": measured " << format_number(r.measured) << " vs " << format_number(r.tolerance);
            if (!r.detail.empty()) log << " (" << r.detail << ")";
            log << "\n";
        }
    }
    t.add_text_column("suite", suite);
    t.add_text_column("check", name);
    t.add_column("v", vcol);
    t.add_column("measured", measured);
    t.add_column("tolerance", tolerance);
    t.add_text_column("result", pass);
    t.add_text_column("detail", detail);
    detail::emit(cfg, t, out);
    log << "# verify: " << all.size() << " checks, " << failed << " failed\n";
    return failed ? kVerifyFailed : kOk;
}

inline int cmd_cattaneo(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    if (cfg.times.size() != 1) throw input_error("--t: cattaneo takes exactly one final time");
    TwoStreamState s;
    if (!cfg.state.empty()) {
        std::ifstream f(cfg.state);
        if (!f) throw input_error("--state: cannot open '" + cfg.state + "'");
        s = two_stream_from_table(read_csv(f));
    } else {
        const auto xs = detail::x_grid(cfg);
        std::vector<double> n(xs.size()), J(xs.size(), 0.0);
        const BoostParams p(cfg.v);
        for (std::size_t i = 0; i < xs.size(); ++i) n[i] = detail::reference_function(cfg.function, xs[i], p);
        s = make_two_stream(xs, n, J);
    }
    const double N0 = s.particle_number();
    if (cfg.times[0] < s.time) throw input_error("--t: final time precedes the state's time");
    s = cattaneo_evolve(std::move(s), cfg.times[0]);
    detail::emit(cfg, two_stream_table(s), out);
    log << "# cattaneo: t=" << format_number(s.time) << " particle number " << format_number(s.particle_number())
        << " (initial " << format_number(N0) << ")\n";
    return kOk;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

/// Runs the program. `out` receives data, `log` receives summaries and errors.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& log) {
    RunConfig cfg;
    // a --config file seeds the defaults; explicit flags override it
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            std::ifstream f(argv[i + 1]);
            if (!f) {
                log << "error: --config: cannot open '" << argv[i + 1] << "'\n";
                return kUsage;
            }
            std::stringstream ss;
            ss << f.rdbuf();
            try {
                cfg = parse_run_config(ss.str());
            } catch (const std::exception& e) {
                log << "error: " << e.what() << "\n";
                return kUsage;
            }
        }
    }

    CLI::App app{"Boosted diffusion: kernels, Green functions, band-limited evolution and verification"};
    app.require_subcommand(1);
    std::string config_path;
    bool dump_config = false;
    std::string frame = to_string(cfg.frame);
    std::string format = to_string(cfg.format);
    std::vector<double> times;
    std::vector<double> vs;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run configuration (flags override it)");
        sub->add_flag("--dump-config", dump_config, "Print the effective configuration as JSON and exit");
        sub->add_option("--format", format, "Output format: csv or json");
        sub->add_option("--out", cfg.out, "Output file (default: standard output)");
    };
    auto grid = [&](CLI::App* sub) {
        sub->add_option("--t", times, "Time (repeatable)")->allow_extra_args(false);
        sub->add_option("--xmin", cfg.xmin, "Left end of the x grid");
        sub->add_option("--xmax", cfg.xmax, "Right end of the x grid");
        sub->add_option("--nx", cfg.nx, "Number of grid points");
    };

    auto* dispersion = app.add_subcommand("dispersion", "Both boosted dispersion branches and admissibility");
    common(dispersion);
    dispersion->add_option("--v", cfg.v, "Boost velocity in (0,1)");
    dispersion->add_option("--kmax", cfg.kmax, "Half-width of the k grid");
    dispersion->add_option("--n", cfg.n, "Number of k points");

    auto* kernel = app.add_subcommand("kernel", "Fundamental solution K on a grid, one slice per time");
    common(kernel);
    grid(kernel);
    kernel->add_option("--v", cfg.v, "Boost velocity in (0,1)");
    kernel->add_option("--frame", frame, "rest or boosted");
    kernel->add_flag("--oracle", cfg.oracle, "Add the quadrature oracle column and check it against --tol");
    kernel->add_flag("--comoving", cfg.comoving, "Shift the window by v t (boosted frame)");
    kernel->add_option("--tol", cfg.tol, "Allowed closed-form vs oracle discrepancy");

    auto* green = app.add_subcommand("green", "Retarded Green function G, or its spatial Fourier transform");
    common(green);
    grid(green);
    green->add_option("--v", cfg.v, "Boost velocity in (0,1)");
    green->add_flag("--fourier", cfg.fourier, "Tabulate the Fourier transform over k instead");
    green->add_option("--kmax", cfg.kmax, "Half-width of the k grid (with --fourier)");
    green->add_option("--n", cfg.n, "Number of k points (with --fourier)");

    auto* evolve = app.add_subcommand("evolve", "Evolve a profile file with the sampling formula");
    common(evolve);
    grid(evolve);
    auto* evolve_v = evolve->add_option("--v", cfg.v, "Boost velocity; must match the profile");
    evolve->add_option("--profile", cfg.profile, "Profile file")->required();
    evolve->add_flag("--oracle", cfg.oracle, "Add the spectral-synthesis column and check it against --tol");
    evolve->add_flag("--comoving", cfg.comoving, "Shift the window by v t");
    evolve->add_option("--tol", cfg.tol, "Allowed closed-form vs oracle discrepancy");

    auto* sample = app.add_subcommand("sample", "Write a profile file by sampling a reference function");
    sample->add_option("--config", config_path, "JSON run configuration (flags override it)");
    sample->add_flag("--dump-config", dump_config, "Print the effective configuration as JSON and exit");
    sample->add_option("--out", cfg.out, "Output file (default: standard output)");
    sample->add_option("--v", cfg.v, "Boost velocity in (0,1)");
    sample->add_option("--function", cfg.function, "gaussian, quartic, sinc, bump or zero");
    sample->add_option("--amax", cfg.amax, "Largest sampling index |a|");

    auto* verify = app.add_subcommand("verify", "Run the property suites; nonzero exit on any failure");
    common(verify);
    verify->add_option("--v", vs, "Boost velocity (repeatable; default 0.25 0.5 0.75)");
    verify->add_flag("--poison-branch", cfg.poison_branch, "Inject a wrong dispersion branch into the oracles");
    verify->add_option("--suite", cfg.suites,
                       "Restrict to a suite (repeatable): boost-core, special-functions, kernel, spectral-oracle, "
                       "bandlimited, kinetic-models");

    auto* cattaneo = app.add_subcommand("cattaneo", "Two-stream (Cattaneo) reference solver, periodic grid");
    common(cattaneo);
    grid(cattaneo);
    cattaneo->add_option("--v", cfg.v, "Boost velocity (only scales the reference functions)");
    cattaneo->add_option("--function", cfg.function, "Initial density: gaussian, quartic, sinc, bump or zero");
    cattaneo->add_option("--state", cfg.state, "Start from a two-stream CSV instead");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, log);
        log << "error: " << e.what() << "\n";
        return kUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        cfg.command = sub->get_name();
        cfg.frame = parse_frame(frame);
        cfg.format = parse_format(format);
        if (!times.empty()) cfg.times = times;
        if (!vs.empty()) cfg.verify_v = vs;
        cfg.validate();
        if (dump_config) {
            out << serialize_run_config(cfg);
            return kOk;
        }
        if (cfg.command == "dispersion") return cmd_dispersion(cfg, out, log);
        if (cfg.command == "kernel") return cmd_kernel(cfg, out, log);
        if (cfg.command == "green") return cmd_green(cfg, out, log);
        if (cfg.command == "sample") return cmd_sample(cfg, out, log);
        if (cfg.command == "evolve") return cmd_evolve(cfg, out, log, evolve_v->count() > 0);
        if (cfg.command == "verify") return cmd_verify(cfg, out, log);
        if (cfg.command == "cattaneo") return cmd_cattaneo(cfg, out, log);
    } catch (const verification_failure& e) {
        log << "error: " << e.what() << "\n";
        return kVerifyFailed;
    } catch (const consistency_error& e) {
        log << "error: " << e.what() << "\n";
        return kVerifyFailed;
    } catch (const accuracy_error& e) {
        log << "error: " << e.what() << "\n";
        return kVerifyFailed;
    } catch (const input_error& e) {
        log << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        // domain, overflow and stability errors: the request cannot be honoured
        log << "error: " << e.what() << "\n";
        return kUsage;
    }
    log << "error: unknown command\n";
    return kUsage;
}

} // namespace boostdiff::cli

#endif
