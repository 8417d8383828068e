#ifndef BOOSTDIFF_KERNEL_HPP
#define BOOSTDIFF_KERNEL_HPP

// Fundamental solution K of boosted diffusion (the evolution of sinc(Lambda x~))
// and the boosted retarded Green function G.
//
// In the rest frame
//   K(t, x) = gamma/(2 Lambda) * int_{k-}^{k+} (1 - 2 i v k) e^{i k x - k^2 t} dk,
// with k+- = +-sqrt(1 + 1/v) + i. Completing the square gives the error-function
// closed form. Writing e^{-x^2/4t} erf(u) = sigma (e^{-x^2/4t} - E w(sigma i u))
// with E = e^{i k x - k^2 t} and sigma = sign(Re u) keeps every Faddeeva
// argument in the upper half plane and |E| = e^{-t~/(gamma v)}, so nothing
// over- or underflows for bounded t~ even when x^2/|t| is huge.

#include <array>
#include <cmath>
#include <complex>
#include <sstream>

#include "boost_core.hpp"
#include "errors.hpp"
#include "special_functions.hpp"

namespace boostdiff {

struct SpacetimePoint {
    double t;
    double x;
    Frame frame;
};

/// t~ = gamma(t + v x), x~ = gamma(x + v t) and its inverse.
inline SpacetimePoint to_frame(const SpacetimePoint& pt, Frame target, const BoostParams& p) {
    if (pt.frame == target) return pt;
    const double g = p.gamma();
    const double v = p.v();
    if (target == Frame::Boosted) {
        return {g * (pt.t + v * pt.x), g * (pt.x + v * pt.t), Frame::Boosted};
    }
    return {g * (pt.t - v * pt.x), g * (pt.x - v * pt.t), Frame::Rest};
}

/// Value and first three rest-frame x-derivatives of K.
struct KernelJet {
    double value = 0.0;
    double dx = 0.0;
    double dxx = 0.0;
    double dxxx = 0.0;
};

namespace detail {

/// Below this |t| the rest-frame closed form loses digits to the 1/t
/// cancellation between its two terms (about eps |x|/t), and the t = 0
/// expression plus a Taylor series in t is used instead.
inline constexpr double kSmallTime = 1e-3;

/// Taylor order in t of the small-time branch. The remainder is about
/// (|k+-|^2 t)^5/5! relative, below the closed-form error at kSmallTime.
inline constexpr std::size_t kTaylorOrder = 4;

/// Magnitude guard e^{|t~|/(gamma v)} <= 1e290.
inline const double kMaxLogMagnitude = std::log(1e290);

inline void guard_growth(double t_boost, const BoostParams& p) {
    const double exponent = std::abs(t_boost) * p.growth_rate();
    if (exponent > kMaxLogMagnitude) {
        std::ostringstream msg;
        msg << "kernel at boosted time " << t_boost << " exceeds the representable range (growth exponent "
            << exponent << " > " << kMaxLogMagnitude << ")";
        throw overflow_error(msg.str(), exponent);
    }
}

// x-derivatives of g(x) = e^{-x} sinc(s x) up to order M.
template <std::size_t M>
std::array<double, M + 1> damped_sinc_derivatives(double x, double s) {
    const auto sd = special::sinc_derivatives<M>(s * x);
    const double ex = std::exp(-x);
    std::array<double, M + 1> out{};
    for (std::size_t n = 0; n <= M; ++n) {
        double sum = 0.0;
        double binom = 1.0;
        double spow = 1.0;
        for (std::size_t j = 0; j <= n; ++j) {
            const double sign = ((n - j) % 2 == 0) ? 1.0 : -1.0;
            sum += binom * sign * spow * sd[j];
            binom = binom * static_cast<double>(n - j) / static_cast<double>(j + 1);
            spow *= s;
        }
        out[n] = ex * sum;
    }
    return out;
}

// t = 0 closed form (1/(1+2v)) (1 - 2v d/dx)[e^{-x} sinc(s x)], its
// derivatives, and the Taylor series in t generated by d_t = d_x^2.
template <std::size_t N>
std::array<double, N + 1> small_time_jet(double t, double x, const BoostParams& p) {
    constexpr std::size_t M = kTaylorOrder;
    const auto g = damped_sinc_derivatives<N + 2 * M + 1>(x, p.edge());
    const double v = p.v();
    const double norm = 1.0 / (1.0 + 2.0 * v);
    auto d = [&](std::size_t n) { return norm * (g[n] - 2.0 * v * g[n + 1]); };
    std::array<double, N + 1> out{};
    for (std::size_t n = 0; n <= N; ++n) {
        // Horner in t: sum_m t^m/m! D_{n+2m}
        double acc = d(n + 2 * M);
        for (std::size_t m = M; m-- > 0;) acc = d(n + 2 * m) + t * acc / static_cast<double>(m + 1);
        out[n] = acc;
    }
    return out;
}

// Closed form for |t| >= kSmallTime. Moments I_m = int k^m e^{ikx - k^2 t} dk
// follow from I_0 by  2t I_{m+1} = i x I_m + m I_{m-1} - [k^m E].
template <std::size_t N>
std::array<double, N + 1> closed_form_jet(double t, double x, double t_boost, const BoostParams& p) {
    using special::faddeeva_w;
    const double s = p.edge();
    const double v = p.v();
    const complex I(0.0, 1.0);
    const complex kp(s, 1.0);
    const complex km(-s, 1.0);
    const complex sq = t > 0.0 ? complex(std::sqrt(t), 0.0) : complex(0.0, std::sqrt(-t));

    const double decay = std::exp(-t_boost * p.growth_rate());
    const double phase = s * (x - 2.0 * t);
    const complex ep = decay * std::polar(1.0, phase);
    const complex em = decay * std::polar(1.0, -phase);

    const complex shift = I * x / (2.0 * sq);
    const complex up = sq * kp - shift;
    const complex um = sq * km - shift;

    complex bracket;
    if (t > 0.0) {
        const double b = -x * x / (4.0 * t);
        bracket = 2.0 * std::exp(b) - ep * faddeeva_w(I * up) - em * faddeeva_w(-I * um);
    } else {
        // Re u+ = Re u- here, so the e^{-x^2/4t} pieces cancel identically.
        const double sigma = up.real() >= 0.0 ? 1.0 : -1.0;
        bracket = sigma * (em * faddeeva_w(sigma * I * um) - ep * faddeeva_w(sigma * I * up));
    }

    std::array<complex, N + 1> moments{};
    moments[0] = 0.5 * std::sqrt(M_PI) * bracket / sq;
    complex kp_pow = 1.0;
    complex km_pow = 1.0;
    std::array<complex, N + 1> edge_terms{};
    for (std::size_t m = 0; m <= N; ++m) {
        edge_terms[m] = kp_pow * ep - km_pow * em;
        kp_pow *= kp;
        km_pow *= km;
    }
    for (std::size_t m = 0; m < N; ++m) {
        complex next = I * x * moments[m] - edge_terms[m];
        if (m > 0) next += static_cast<double>(m) * moments[m - 1];
        moments[m + 1] = next / (2.0 * t);
    }

    // d_x^n K = gamma/(2 Lambda) i^n (I_n - 2 i v I_{n+1}); eliminating I_{n+1}
    // leaves the factor (t + v x)/t = t~/(gamma t), taken from t~ directly.
    const double scale = p.gamma() / (2.0 * p.lambda());
    const double ratio = t_boost / (p.gamma() * t);
    std::array<double, N + 1> out{};
    complex ipow = 1.0;
    for (std::size_t n = 0; n <= N; ++n) {
        complex inner = moments[n] * ratio + I * v * edge_terms[n] / t;
        if (n > 0) inner -= I * v * static_cast<double>(n) * moments[n - 1] / t;
        out[n] = (scale * ipow * inner).real();
        ipow *= I;
    }
    return out;
}

template <std::size_t N>
std::array<double, N + 1> rest_jet(double t, double x, double t_boost, const BoostParams& p) {
    guard_growth(t_boost, p);
    std::array<double, N + 1> out = std::abs(t) < kSmallTime ? small_time_jet<N>(t, x, p)
                                                              : closed_form_jet<N>(t, x, t_boost, p);
    for (double value : out) {
        if (!std::isfinite(value)) {
            std::ostringstream msg;
            msg << "kernel at rest-frame (t=" << t << ", x=" << x << ") is not representable";
            throw overflow_error(msg.str(), std::abs(t_boost) * p.growth_rate());
        }
    }
    return out;
}

} // namespace detail

/// K(t, x) in the medium rest frame.
inline double kernel_rest(const SpacetimePoint& pt, const BoostParams& p) {
    if (pt.frame != Frame::Rest) throw domain_error("kernel_rest expects a rest-frame point");
    const double t_boost = p.gamma() * (pt.t + p.v() * pt.x);
    return detail::rest_jet<0>(pt.t, pt.x, t_boost, p)[0];
}

inline double kernel_rest(double t, double x, const BoostParams& p) {
    return kernel_rest(SpacetimePoint{t, x, Frame::Rest}, p);
}

/// K and its rest-frame x-derivatives up to third order, all in closed form.
inline KernelJet kernel_rest_jet(double t, double x, const BoostParams& p) {
    const double t_boost = p.gamma() * (t + p.v() * x);
    const auto j = detail::rest_jet<3>(t, x, t_boost, p);
    return {j[0], j[1], j[2], j[3]};
}

/// K(t~, x~) in the boosted frame; K(0, x~) = sinc(Lambda x~).
inline double kernel_boosted(const SpacetimePoint& pt, const BoostParams& p) {
    if (pt.frame != Frame::Boosted) throw domain_error("kernel_boosted expects a boosted-frame point");
    const SpacetimePoint rest = to_frame(pt, Frame::Rest, p);
    return detail::rest_jet<0>(rest.t, rest.x, pt.t, p)[0];
}

inline double kernel_boosted(double t_tilde, double x_tilde, const BoostParams& p) {
    return kernel_boosted(SpacetimePoint{t_tilde, x_tilde, Frame::Boosted}, p);
}

/// Boosted-frame first derivatives (d/dt~, d/dx~) from the rest jet and d_t = d_x^2.
struct BoostedGradient {
    double value;
    double dt;
    double dx;
};

inline BoostedGradient kernel_boosted_gradient(double t_tilde, double x_tilde, const BoostParams& p) {
    const SpacetimePoint rest = to_frame({t_tilde, x_tilde, Frame::Boosted}, Frame::Rest, p);
    const auto j = detail::rest_jet<2>(rest.t, rest.x, t_tilde, p);
    const double g = p.gamma();
    const double v = p.v();
    return {j[0], g * (j[2] - v * j[1]), g * (j[1] - v * j[2])};
}

/// Direct evaluation with the principal complex sqrt(t) and unscaled erf.
/// Reference form only: it overflows where e^{-x^2/4t} or erf do.
inline double kernel_rest_erf_direct(double t, double x, const BoostParams& p) {
    if (t == 0.0) throw domain_error("kernel_rest_erf_direct: t must be nonzero");
    const complex I(0.0, 1.0);
    const complex kp(p.edge(), 1.0);
    const complex km(-p.edge(), 1.0);
    const complex sq = t > 0.0 ? complex(std::sqrt(t), 0.0) : complex(0.0, std::sqrt(-t));
    const complex up = sq * kp - I * x / (2.0 * sq);
    const complex um = sq * km - I * x / (2.0 * sq);
    const double b = -x * x / (4.0 * t);
    const complex br = std::exp(b) * (special::erf(up) - special::erf(um));
    const complex dbr = -(x / (2.0 * t)) * br - I / (std::sqrt(M_PI) * sq) * (std::exp(b - up * up) - std::exp(b - um * um));
    const complex pre = p.gamma() * std::sqrt(M_PI) / (4.0 * p.lambda() * sq);
    return (pre * (br - 2.0 * p.v() * dbr)).real();
}

/// Backward-time form with real sqrt|t| and erfi, t < 0:
///   K = gamma sqrt(pi)/(4 Lambda tau) (1 - 2v d_x)[e^{x^2/(4 tau^2)} (erfi(tau k+ + ix/(2tau)) - erfi(tau k- + ix/(2tau)))]
/// with tau = sqrt(-t). Reference form only, no overflow fusion.
inline double kernel_rest_erfi(double t, double x, const BoostParams& p) {
    if (!(t < 0.0)) throw domain_error("kernel_rest_erfi: t must be negative");
    const complex I(0.0, 1.0);
    const double tau = std::sqrt(-t);
    const complex kp(p.edge(), 1.0);
    const complex km(-p.edge(), 1.0);
    const complex qp = tau * kp + I * x / (2.0 * tau);
    const complex qm = tau * km + I * x / (2.0 * tau);
    const double gauss = std::exp(x * x / (4.0 * tau * tau));
    const complex br = gauss * (special::erfi(qp) - special::erfi(qm));
    const complex dbr = (x / (2.0 * tau * tau)) * br +
                        gauss * (I / (std::sqrt(M_PI) * tau)) * (std::exp(qp * qp) - std::exp(qm * qm));
    const double pre = p.gamma() * std::sqrt(M_PI) / (4.0 * p.lambda() * tau);
    return (pre * (br - 2.0 * p.v() * dbr)).real();
}

/// Rest-frame heat kernel e^{-x^2/4t}/sqrt(4 pi t), zero for t <= 0.
inline double heat_kernel(double t, double x) {
    if (t <= 0.0) return 0.0;
    return std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * M_PI * t);
}

/// Boosted retarded Green function. Theta(0) = 0, so G vanishes on x~ >= t~/v.
inline double green_boosted(const SpacetimePoint& pt, const BoostParams& p) {
    if (pt.frame != Frame::Boosted) throw domain_error("green_boosted expects a boosted-frame point");
    const double v = p.v();
    const double lag = pt.t - v * pt.x;
    if (!(lag > 0.0)) return 0.0;
    const double g = p.gamma();
    const double dx = pt.x - v * pt.t;
    return std::exp(-g * dx * dx / (4.0 * lag)) / std::sqrt(4.0 * M_PI * g * lag);
}

inline double green_boosted(double t_tilde, double x_tilde, const BoostParams& p) {
    return green_boosted(SpacetimePoint{t_tilde, x_tilde, Frame::Boosted}, p);
}

/// Spatial Fourier transform int G(t~, x~) e^{-i k~ x~} dx~ in closed form:
/// [gamma(gamma - 4 i v k~)]^{-1/2} e^{-i w~ t~}, stable branch for t~ > 0 and
/// unstable branch for t~ < 0.
inline complex green_fourier(double t_tilde, double k_tilde, const BoostParams& p) {
    if (t_tilde == 0.0) throw domain_error("green_fourier: branch selection is undefined at t~ = 0");
    const double g = p.gamma();
    const complex pref = 1.0 / std::sqrt(g * complex(g, -4.0 * p.v() * k_tilde));
    const complex w = t_tilde > 0.0 ? stable_dispersion(k_tilde, p) : unstable_dispersion(k_tilde, p);
    return pref * std::exp(complex(0.0, -1.0) * w * t_tilde);
}

} // namespace boostdiff

#endif
