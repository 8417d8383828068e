#ifndef BOOSTDIFF_SPECTRAL_ORACLE_HPP
#define BOOSTDIFF_SPECTRAL_ORACLE_HPP

// Brute-force quadratures that the closed forms are checked against. Only the
// overflow guard is shared with kernel.hpp; no closed form is evaluated here.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <sstream>
#include <vector>

#include "boost_core.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "kernel.hpp"
#include "quadrature.hpp"

namespace boostdiff {

/// Boosted dispersion used by the oracles. Swappable so a broken branch can
/// be injected and detected.
using DispersionFn = std::function<complex(double, const BoostParams&)>;

inline DispersionFn stable_branch() {
    return [](double k, const BoostParams& p) { return stable_dispersion(k, p); };
}

/// Fault injection: the square root takes the wrong sign for k~ > 0 only,
/// which breaks the conjugate symmetry w~(-k~) = -conj w~(k~).
inline DispersionFn poisoned_branch() {
    return [](double k, const BoostParams& p) {
        return k > 0.0 ? unstable_dispersion(k, p) : stable_dispersion(k, p);
    };
}

namespace detail {

struct ComplexSum {
    complex value;
    double magnitude; // sum of |w f|
};

template <class F>
ComplexSum band_integral(F&& f, double a, double b, int n) {
    const auto& rule = gauss_legendre(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    complex sum = 0.0;
    double mag = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const complex term = rule.weights[i] * f(mid + half * rule.nodes[i]);
        sum += term;
        mag += std::abs(term);
    }
    return {half * sum, std::abs(half) * mag};
}

inline double checked_real(const ComplexSum& s, double tolerance, const char* who) {
    const double residue = std::abs(s.value.imag()) / std::max(1.0, s.magnitude);
    if (residue > tolerance) {
        std::ostringstream msg;
        msg << who << ": imaginary residue " << residue << " exceeds tolerance " << tolerance
            << " (dispersion branch is not conjugate symmetric)";
        throw consistency_error(msg.str(), residue);
    }
    return s.value.real();
}

} // namespace detail

/// K(t~, x~) = int_{-Lambda}^{Lambda} dk~/(2 Lambda) e^{i k~ x~ - i w~(k~) t~}
/// by Gauss-Legendre quadrature. The imaginary part, relative to the L1 size
/// of the quadrature sum, must stay below q.tolerance.
inline double oracle_kernel(double t_tilde, double x_tilde, const BoostParams& p, const QuadratureSpec& q = {},
                            const DispersionFn& branch = stable_branch()) {
    q.validate();
    detail::guard_growth(t_tilde, p);
    const double L = p.lambda();
    const complex I(0.0, 1.0);
    auto f = [&](double k) { return std::exp(I * (k * x_tilde - branch(k, p) * t_tilde)) / (2.0 * L); };
    return detail::checked_real(detail::band_integral(f, -L, L, q.nodes), q.tolerance, "oracle_kernel");
}

enum class ContourShape { Parabolic, Chord };

/// Rest-frame integral int gamma (1 - 2 i v k)/(2 Lambda) e^{i k x - k^2 t} dk from
/// k(-Lambda) to k(+Lambda), along k = s + i s^2/(1 + 1/v) or the chord Im k = 1.
inline double oracle_kernel_contour(double t, double x, const BoostParams& p, const QuadratureSpec& q = {},
                                    ContourShape shape = ContourShape::Parabolic) {
    q.validate();
    detail::guard_growth(p.gamma() * (t + p.v() * x), p);
    const double e = p.edge();
    const double e2 = e * e;
    const complex I(0.0, 1.0);
    const double pre = p.gamma() / (2.0 * p.lambda());
    auto f = [&](double s) {
        complex k;
        complex dk;
        if (shape == ContourShape::Parabolic) {
            k = complex(s, s * s / e2);
            dk = complex(1.0, 2.0 * s / e2);
        } else {
            k = complex(s, 1.0);
            dk = 1.0;
        }
        return pre * (1.0 - 2.0 * I * p.v() * k) * std::exp(I * k * x - k * k * t) * dk;
    };
    return detail::checked_real(detail::band_integral(f, -e, e, q.nodes), q.tolerance, "oracle_kernel_contour");
}

/// Spectral amplitude phi(k~) of a band-limited profile.
using SpectrumFn = std::function<complex(double)>;

/// phi(k~) = (pi/Lambda) sum_a c_a e^{-i k~ x~_a}, the transform of a finite
/// sampling series.
inline SpectrumFn sampling_spectrum(std::vector<std::pair<long, double>> coeffs, const BoostParams& p) {
    const double L = p.lambda();
    return [coeffs = std::move(coeffs), L](double k) {
        complex sum = 0.0;
        for (const auto& [a, c] : coeffs) sum += c * std::polar(1.0, -k * M_PI * static_cast<double>(a) / L);
        return (M_PI / L) * sum;
    };
}

struct OracleSlice {
    FieldSlice slice;
    double max_imag_residue = 0.0;
    double refinement_delta = 0.0;
};

/// dn(t~, x~) = int_{-Lambda}^{Lambda} dk~/(2 pi) phi(k~) e^{i k~ x~ - i w~ t~} on each
/// grid point, at q.nodes and 2 q.nodes. Disagreement beyond q.tolerance
/// (relative to max(1, |dn|)) raises accuracy_error.
inline OracleSlice oracle_evolve(const SpectrumFn& phi, double t_tilde, const std::vector<double>& x_grid,
                                 const BoostParams& p, const QuadratureSpec& q = {},
                                 const DispersionFn& branch = stable_branch()) {
    q.validate();
    detail::guard_growth(t_tilde, p);
    const double L = p.lambda();
    const complex I(0.0, 1.0);

    // phi and the temporal factor do not depend on x: tabulate once per rule.
    auto tabulate = [&](int n) {
        const auto& rule = gauss_legendre(n);
        std::vector<std::pair<double, complex>> table(rule.nodes.size());
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double k = L * rule.nodes[i];
            table[i] = {k, L * rule.weights[i] * phi(k) * std::exp(-I * branch(k, p) * t_tilde) / (2.0 * M_PI)};
        }
        return table;
    };
    const auto coarse = tabulate(q.nodes);
    const auto fine = tabulate(2 * q.nodes);
    auto integrate = [](const std::vector<std::pair<double, complex>>& table, double x) {
        complex sum = 0.0;
        for (const auto& [k, w] : table) sum += w * std::polar(1.0, k * x);
        return sum;
    };

    OracleSlice out;
    out.slice.time = t_tilde;
    out.slice.frame = Frame::Boosted;
    out.slice.provenance = Provenance::SpectralOracle;
    out.slice.positions = x_grid;
    out.slice.values.resize(x_grid.size());
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        const complex a = integrate(coarse, x_grid[i]);
        const complex b = integrate(fine, x_grid[i]);
        out.slice.values[i] = b.real();
        out.max_imag_residue = std::max(out.max_imag_residue, std::abs(b.imag()));
        out.refinement_delta = std::max(out.refinement_delta, std::abs(a - b) / std::max(1.0, std::abs(b)));
    }
    if (out.refinement_delta > q.tolerance) {
        std::ostringstream msg;
        msg << "oracle_evolve: node doubling changed the field by " << out.refinement_delta << " > " << q.tolerance;
        throw accuracy_error(msg.str(), out.refinement_delta);
    }
    return out;
}

/// Fraction of int |phi e^{-i w~ t~}|^2 carried by lo <= |k~| <= hi.
inline double band_energy_fraction(const SpectrumFn& phi, double t_tilde, double lo, double hi, const BoostParams& p,
                                   const QuadratureSpec& q = {}) {
    q.validate();
    const double L = p.lambda();
    const complex I(0.0, 1.0);
    auto density = [&](double k) { return std::norm(phi(k) * std::exp(-I * stable_dispersion(k, p) * t_tilde)); };
    const double total = integrate_gauss_legendre<double>(density, -L, L, q.nodes);
    const double band = integrate_gauss_legendre<double>(density, -hi, -lo, q.nodes) +
                        integrate_gauss_legendre<double>(density, lo, hi, q.nodes);
    if (!(total > 0.0)) throw domain_error("band_energy_fraction: zero spectrum");
    return band / total;
}

/// int G(t~, x~) e^{-i k~ x~} dx~ over the support x~ < t~/v. With x~ = t~/v - u^2
/// the edge singularity 1/sqrt(t~ - v x~) cancels against the Jacobian 2u.
inline complex oracle_fourier_G(double t_tilde, double k_tilde, const BoostParams& p, const QuadratureSpec& q = {}) {
    q.validate();
    if (t_tilde == 0.0) throw domain_error("oracle_fourier_G: t~ must be nonzero");
    const double v = p.v();
    const double g = p.gamma();
    const double edge = t_tilde / v;
    const double centre = t_tilde / (g * g * v);
    auto f = [&](double u) -> complex {
        const double u2 = u * u;
        if (u2 == 0.0) return 0.0;
        const double d = centre - u2;
        const double mag = 2.0 * std::exp(-g * d * d / (4.0 * v * u2)) / std::sqrt(4.0 * M_PI * g * v);
        return mag * std::polar(1.0, -k_tilde * (edge - u2));
    };
    // For u^2 >= 2|centre| + M the exponent is at least gamma M/(16 v) = 40.
    const double upper = std::sqrt(2.0 * std::abs(centre) + 640.0 * v / g + 1.0);
    return integrate_adaptive<complex>(f, 0.0, upper, q.tolerance).value;
}

} // namespace boostdiff

#endif
