#ifndef BOOSTDIFF_KINETIC_MODELS_HPP
#define BOOSTDIFF_KINETIC_MODELS_HPP

// Kinetic layer: the massless Fokker-Planck distribution whose density is K,
//   df(t, x, p) = pi beta e^{-beta|p|} (1 - d_x^2) K(t, x - beta p),
// and the two-stream (Cattaneo) model with flip rate 1/2.

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <utility>
#include <vector>

#include "boost_core.hpp"
#include "errors.hpp"
#include "kernel.hpp"
#include "quadrature.hpp"

namespace boostdiff {

struct KineticSliceSpec {
    double beta = 1.0;
    double xi_extent = 60.0;
    // tolerance: allowed change when xi_extent doubles; the far-field kernel
    // (|x| ~ 2 xi_extent, small |t|) carries ~1e-8 of rounding noise
    QuadratureSpec quad{16, QuadratureScheme::GaussLegendre, 1e-7};

    void validate() const {
        if (!(beta > 0.0)) throw domain_error("KineticSliceSpec: beta must be > 0");
        if (!(xi_extent > 0.0)) throw domain_error("KineticSliceSpec: xi_extent must be > 0");
        quad.validate();
    }
};

/// Value and first three x-derivatives of a field at one point.
using FieldJet = KernelJet;

/// Rest-frame kernel jet at fixed t, as a functor of x.
struct KernelJetField {
    double t;
    const BoostParams* p;
    FieldJet operator()(double x) const { return kernel_rest_jet(t, x, *p); }
};

/// Field identically zero.
struct ZeroField {
    FieldJet operator()(double) const { return {}; }
};

/// Pieces of int (dxi/2) e^{-|xi|} (1 - d_xi^2) n(x + xi).
struct EmbeddingResult {
    double value = 0.0;      // quadrature on [-L, L] plus the exact tails beyond
    double truncated = 0.0;  // quadrature on [-L, L] alone
    double tail_minus = 0.0; // e^{-L}/2 (n - n')(x - L): the slow 1/xi tail
    double tail_plus = 0.0;  // e^{-L}/2 (n + n')(x + L)
    double refined = 0.0;    // `value` recomputed with the extent doubled
};

namespace detail {

// Composite Gauss-Legendre on [lo, hi] with panels of width <= 1 and the
// kink of e^{-|xi|} at 0 as a panel edge.
template <class F>
double embedding_quadrature(F&& f, double lo, double hi, int nodes) {
    double sum = 0.0;
    const int panels = std::max(1, static_cast<int>(std::ceil(hi - lo)));
    sum += integrate_composite<double>(f, lo, hi, panels, nodes);
    return sum;
}

template <class Field>
EmbeddingResult embedding_at_extent(const Field& field, double x, double L, int nodes) {
    auto left = [&](double xi) {
        const FieldJet j = field(x + xi);
        return 0.5 * std::exp(xi) * (j.value - j.dxx);
    };
    auto right = [&](double xi) {
        const FieldJet j = field(x + xi);
        return 0.5 * std::exp(-xi) * (j.value - j.dxx);
    };
    EmbeddingResult r;
    r.truncated = embedding_quadrature(left, -L, 0.0, nodes) + embedding_quadrature(right, 0.0, L, nodes);
    // Integration by parts on [-L, L] leaves exactly these boundary terms:
    //   int_{-L}^{L} = n(x) - e^{-L}/2 (n - n')(x - L) - e^{-L}/2 (n + n')(x + L).
    const FieldJet lo = field(x - L);
    const FieldJet hi = field(x + L);
    r.tail_minus = 0.5 * std::exp(-L) * (lo.value - lo.dx);
    r.tail_plus = 0.5 * std::exp(-L) * (hi.value + hi.dx);
    r.value = r.truncated + r.tail_minus + r.tail_plus;
    return r;
}

} // namespace detail

/// Density of the kinetic distribution built on an arbitrary field jet. The
/// quadrature runs over |xi| <= xi_extent and the remaining tails, which
/// integrate in closed form, are added; the truncated integral alone is
/// reported as well. Throws accuracy_error if doubling the extent moves
/// the result by more than spec.quad.tolerance (relative to max(1, |n|)).
template <class Field>
EmbeddingResult embedding_density_of(const Field& field, double x, const KineticSliceSpec& spec) {
    spec.validate();
    EmbeddingResult r = detail::embedding_at_extent(field, x, spec.xi_extent, spec.quad.nodes);
    r.refined = detail::embedding_at_extent(field, x, 2.0 * spec.xi_extent, spec.quad.nodes).value;
    const double change = std::abs(r.refined - r.value) / std::max(1.0, std::abs(r.value));
    if (change > spec.quad.tolerance) {
        std::ostringstream msg;
        msg << "embedding_density at x=" << x << ": doubling xi_extent changed the density by " << change;
        throw accuracy_error(msg.str(), change);
    }
    return r;
}

/// int (dxi/2) e^{-|xi|} (1 - d_xi^2) K(t, x + xi); equals K(t, x).
inline EmbeddingResult embedding_density(double t, double x, const KineticSliceSpec& spec, const BoostParams& p) {
    return embedding_density_of(KernelJetField{t, &p}, x, spec);
}

/// Largest |tail_minus| over one oscillation period 2 pi/s of the extent,
/// i.e. the envelope of the truncation defect that decays like 1/xi.
inline double truncation_defect_envelope(double t, double x, double L, const BoostParams& p, int samples = 64) {
    const double period = 2.0 * M_PI / p.edge();
    double env = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double Li = L + period * i / samples;
        const KernelJet lo = kernel_rest_jet(t, x - Li, p);
        const KernelJet hi = kernel_rest_jet(t, x + Li, p);
        const double defect = 0.5 * std::exp(-Li) * ((lo.value - lo.dx) + (hi.value + hi.dx));
        env = std::max(env, std::abs(defect));
    }
    return env;
}

/// df(t, x, p) for the kernel.
inline double kinetic_distribution(double t, double x, double momentum, double beta, const BoostParams& p) {
    const KernelJet j = kernel_rest_jet(t, x - beta * momentum, p);
    return M_PI * beta * std::exp(-beta * std::abs(momentum)) * (j.value - j.dxx);
}

struct HalfDensities {
    double plus;  // right movers, p > 0, i.e. xi < 0
    double minus; // left movers
};

/// n+- = int over p >< 0 of dp/(2 pi) df, by quadrature with the exact tails.
inline HalfDensities half_densities(double t, double x, const KineticSliceSpec& spec, const BoostParams& p) {
    spec.validate();
    const double L = spec.xi_extent;
    const KernelJetField field{t, &p};
    auto left = [&](double xi) {
        const FieldJet j = field(x + xi);
        return 0.5 * std::exp(xi) * (j.value - j.dxx);
    };
    auto right = [&](double xi) {
        const FieldJet j = field(x + xi);
        return 0.5 * std::exp(-xi) * (j.value - j.dxx);
    };
    const FieldJet lo = field(x - L);
    const FieldJet hi = field(x + L);
    HalfDensities h;
    h.plus = detail::embedding_quadrature(left, -L, 0.0, spec.quad.nodes) + 0.5 * std::exp(-L) * (lo.value - lo.dx);
    h.minus = detail::embedding_quadrature(right, 0.0, L, spec.quad.nodes) + 0.5 * std::exp(-L) * (hi.value + hi.dx);
    return h;
}

/// Fokker-Planck conversion rate -[f_eq d_p(f/f_eq)]/(2 pi beta^2) at p = 0,
/// with d_p taken by Richardson-extrapolated central differences of f/f_eq.
inline double fokker_planck_rate(double t, double x, double beta, const BoostParams& p, double h = 1e-3) {
    // f/f_eq up to the constant normalisation of f_eq = e^{-beta|p|}
    auto ratio = [&](double momentum) {
        return kinetic_distribution(t, x, momentum, beta, p) / std::exp(-beta * std::abs(momentum));
    };
    auto d1 = [&](double s) { return (ratio(s) - ratio(-s)) / (2.0 * s); };
    const double derivative = (4.0 * d1(h / 2.0) - d1(h)) / 3.0;
    return -derivative / (2.0 * M_PI * beta * beta);
}

// ---------------------------------------------------------------------------
// Two-stream model
// ---------------------------------------------------------------------------

/// Right/left mover densities on a periodic uniform grid.
struct TwoStreamState {
    std::vector<double> x;
    std::vector<double> n_plus;
    std::vector<double> n_minus;
    double time = 0.0;

    double spacing() const { return x.size() > 1 ? x[1] - x[0] : 0.0; }

    void validate() const {
        if (x.size() < 2) throw domain_error("TwoStreamState: need at least two grid points");
        if (n_plus.size() != x.size() || n_minus.size() != x.size()) {
            throw domain_error("TwoStreamState: density arrays do not match the grid");
        }
        const double h = spacing();
        if (!(h > 0.0)) throw domain_error("TwoStreamState: grid must be increasing");
        for (std::size_t i = 1; i < x.size(); ++i) {
            if (std::abs((x[i] - x[i - 1]) - h) > 1e-9 * h) throw domain_error("TwoStreamState: grid must be uniform");
        }
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!std::isfinite(n_plus[i]) || !std::isfinite(n_minus[i])) {
                std::ostringstream msg;
                msg << "TwoStreamState: non-finite density at x=" << x[i];
                throw domain_error(msg.str());
            }
        }
    }

    double particle_number() const {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += n_plus[i] + n_minus[i];
        return s * spacing();
    }
};

/// State from a total density and flux: n+- = (n +- J)/2.
inline TwoStreamState make_two_stream(std::vector<double> x, const std::vector<double>& n, const std::vector<double>& J,
                                      double time = 0.0) {
    TwoStreamState s;
    s.x = std::move(x);
    s.time = time;
    s.n_plus.resize(n.size());
    s.n_minus.resize(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) {
        s.n_plus[i] = 0.5 * (n[i] + J[i]);
        s.n_minus[i] = 0.5 * (n[i] - J[i]);
    }
    s.validate();
    return s;
}

namespace detail {

// Exact flip exchange over tau: n fixed, J = n+ - n- decays as e^{-tau}.
inline void relax(TwoStreamState& s, double tau) {
    const double decay = std::exp(-tau);
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        const double n = s.n_plus[i] + s.n_minus[i];
        const double J = (s.n_plus[i] - s.n_minus[i]) * decay;
        s.n_plus[i] = 0.5 * (n + J);
        s.n_minus[i] = 0.5 * (n - J);
    }
}

// Periodic transport with unit speed: exact cell shift when courant == 1,
// first-order upwind otherwise.
inline void transport(std::vector<double>& u, double courant, int direction) {
    const std::size_t n = u.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t up = direction > 0 ? (i + n - 1) % n : (i + 1) % n;
        out[i] = courant == 1.0 ? u[up] : u[i] - courant * (u[i] - u[up]);
    }
    u.swap(out);
}

} // namespace detail

/// One Strang step: exchange over dt/2, transport n+ right and n- left by dt,
/// exchange over dt/2. Requires dt <= h.
inline TwoStreamState cattaneo_step(TwoStreamState state, double dt) {
    state.validate();
    const double h = state.spacing();
    if (!(dt > 0.0)) throw domain_error("cattaneo_step: dt must be > 0");
    if (dt > h * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "cattaneo_step: dt=" << dt << " exceeds the characteristic limit h=" << h;
        throw stability_error(msg.str());
    }
    const double courant = std::abs(dt - h) <= 1e-12 * h ? 1.0 : dt / h;
    detail::relax(state, 0.5 * dt);
    detail::transport(state.n_plus, courant, +1);
    detail::transport(state.n_minus, courant, -1);
    detail::relax(state, 0.5 * dt);
    state.time += dt;
    return state;
}

/// Advances to `until` with dt = h steps (the last step shortened).
inline TwoStreamState cattaneo_evolve(TwoStreamState state, double until) {
    const double h = state.spacing();
    while (state.time < until - 1e-12 * std::max(1.0, std::abs(until))) {
        state = cattaneo_step(std::move(state), std::min(h, until - state.time));
    }
    // drop the rounding accumulated over many steps of h
    state.time = std::max(state.time, until);
    return state;
}

/// Roots of w^2 + i w - k^2 = 0: first the hydrodynamic one (-> 0 as k -> 0),
/// then the damped one (-> -i). The hydrodynamic root is taken as -k^2/w_damped
/// to avoid cancellation at small k.
inline std::pair<complex, complex> cattaneo_dispersion(double k) {
    const complex I(0.0, 1.0);
    // i sqrt(1 - 4k^2) below k = 1/2, real above: -i - root never cancels
    const complex root = std::sqrt(complex(4.0 * k * k - 1.0, 0.0));
    const complex damped = 0.5 * (-I - root);
    const complex hydro = -k * k / damped;
    return {hydro, damped};
}

} // namespace boostdiff

#endif
