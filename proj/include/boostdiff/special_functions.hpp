#ifndef BOOSTDIFF_SPECIAL_FUNCTIONS_HPP
#define BOOSTDIFF_SPECIAL_FUNCTIONS_HPP

// Complex error function family and sinc.
//
// erf(z) is evaluated by region:
//   |Re z| <= kSeriesStrip   Maclaurin series. Along this strip the terms do
//                            not cancel by more than e^{2 (Re z)^2}, so the
//                            series keeps ~15 digits even for large |Im z|.
//   otherwise                1 - e^{-z^2} w(iz) with the Faddeeva function w
//                            taken from its Laplace continued fraction, which
//                            converges quickly once Im(iz) = Re z is away from 0.
// w(z) for Im z >= 0 uses the continued fraction when Im z >= kSeriesStrip or
// |z| >= kFractionRadius and e^{-z^2}(1 + erf(iz)) with the strip series
// otherwise. Both switch points are fixed by the cross-validation tests.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "errors.hpp"

namespace boostdiff::special {

using complex = std::complex<double>;

inline constexpr double kSeriesStrip = 1.2;
inline constexpr double kFractionRadius = 8.0;
inline constexpr double kTwoOverSqrtPi = 1.12837916709551257389615890312154517;
inline constexpr double kInvSqrtPi = 0.564189583547756286948079451560772586;

namespace detail {

inline void require_finite(const complex& z, const char* fn) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        std::ostringstream msg;
        msg << fn << ": non-finite argument " << z;
        throw domain_error(msg.str());
    }
}

// erf(z) = 2/sqrt(pi) sum (-1)^n z^{2n+1} / (n! (2n+1))
inline complex erf_maclaurin(const complex& z) {
    const complex z2 = z * z;
    const double r2 = std::norm(z);
    complex term = z;
    complex sum = z;
    for (int n = 1; n < 100000; ++n) {
        term *= -z2 / static_cast<double>(n);
        const complex add = term / static_cast<double>(2 * n + 1);
        sum += add;
        if (n > r2 && std::abs(add) <= 1e-17 * std::abs(sum)) {
            break;
        }
    }
    return kTwoOverSqrtPi * sum;
}

// Laplace continued fraction, modified Lentz:
// w(z) = (i/sqrt(pi)) / (z - (1/2)/(z - 1/(z - (3/2)/(z - ...)))), Im z > 0.
inline complex faddeeva_fraction(const complex& z) {
    constexpr double tiny = 1e-300;
    complex f = z;
    if (f == 0.0) f = tiny;
    complex c = f;
    complex d = 0.0;
    for (int n = 1; n < 20000; ++n) {
        const double a = -0.5 * n;
        d = z + a * d;
        if (d == 0.0) d = tiny;
        d = 1.0 / d;
        c = z + a / c;
        if (c == 0.0) c = tiny;
        const complex delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return complex(0.0, kInvSqrtPi) / f;
}

// w(z) for Im z >= 0.
inline complex faddeeva_upper(const complex& z) {
    if (z.imag() >= kSeriesStrip || std::abs(z) >= kFractionRadius) {
        return faddeeva_fraction(z);
    }
    // i z has real part -Im z in (-kSeriesStrip, 0]: strip series is accurate.
    return std::exp(-z * z) * (1.0 + erf_maclaurin(complex(-z.imag(), z.real())));
}

} // namespace detail

/// Faddeeva function w(z) = e^{-z^2} erfc(-iz).
inline complex faddeeva_w(const complex& z) {
    detail::require_finite(z, "faddeeva_w");
    if (z.imag() >= 0.0) return detail::faddeeva_upper(z);
    return 2.0 * std::exp(-z * z) - detail::faddeeva_upper(-z);
}

/// Error function of a complex argument.
inline complex erf(const complex& z) {
    detail::require_finite(z, "erf");
    const double x = std::abs(z.real());
    const double y = std::abs(z.imag());
    const complex q(x, y);
    complex r;
    if (x <= kSeriesStrip) {
        r = detail::erf_maclaurin(q);
    } else {
        r = 1.0 - std::exp(-q * q) * detail::faddeeva_fraction(complex(-y, x));
    }
    // Map back from the first quadrant: erf(conj z) = conj erf(z), erf(-z) = -erf(z).
    const bool re_neg = z.real() < 0.0;
    const bool im_neg = z.imag() < 0.0;
    if (!re_neg && !im_neg) return r;
    if (!re_neg && im_neg) return std::conj(r);
    if (re_neg && im_neg) return -r;
    return -std::conj(r);
}

/// Imaginary error function erfi(z) = -i erf(iz).
inline complex erfi(const complex& z) {
    const complex e = erf(complex(-z.imag(), z.real()));
    return complex(e.imag(), -e.real());
}

/// e^{b} erf(a) without forming e^{b} or erf(a) separately when either
/// over- or underflows.
///
/// For |Re a| > kSeriesStrip, erf(a) = sign(Re a) (1 - e^{-a^2} w(i sign(Re a) a))
/// and the exponentials are merged before evaluation. Inside the strip erf(a)
/// is moderate relative to e^{|Im a|^2} and the product is taken in log space
/// if the direct one is out of range.
inline complex gaussian_erf_scaled(const complex& a, const complex& b) {
    detail::require_finite(a, "gaussian_erf_scaled");
    detail::require_finite(b, "gaussian_erf_scaled");
    if (a == 0.0) return 0.0;

    auto check = [&](const complex& r, double exponent) {
        if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) {
            std::ostringstream msg;
            msg << "gaussian_erf_scaled: e^b erf(a) overflows (growth exponent " << exponent << ")";
            throw overflow_error(msg.str(), exponent);
        }
        return r;
    };

    if (std::abs(a.real()) <= kSeriesStrip) {
        const complex e = detail::erf_maclaurin(a);
        if (std::abs(b.real()) < 700.0) {
            return check(std::exp(b) * e, b.real());
        }
        const complex logged = b + std::log(e);
        return check(std::exp(logged), logged.real());
    }

    const double sigma = a.real() > 0.0 ? 1.0 : -1.0;
    const complex sa = sigma * a;
    const complex w = detail::faddeeva_fraction(complex(-sa.imag(), sa.real()));
    const complex lead = std::exp(b);
    const complex tail = std::exp(b - a * a) * w;
    const complex r = sigma * (lead - tail);
    return check(r, std::max(b.real(), (b - a * a).real()));
}

/// sin(x)/x with sinc(0) = 1.
inline double sinc(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

/// Derivatives sinc^{(0..N)}(y) of the unnormalised sinc.
///
/// Near the origin the Maclaurin series is differentiated term by term; away
/// from it the recurrence y s_n + n s_{n-1} = sin^{(n)}(y) is used upward,
/// which is stable once |y| exceeds the derivative order.
template <std::size_t N>
std::array<double, N + 1> sinc_derivatives(double y) {
    std::array<double, N + 1> out{};
    if (std::abs(y) < 4.0) {
        // sinc(y) = sum_j c_j y^{2j}, c_j = (-1)^j / (2j+1)!
        for (std::size_t n = 0; n <= N; ++n) {
            double sum = 0.0;
            double coeff = 1.0; // (-1)^j/(2j+1)!
            for (int j = 0; j < 60; ++j) {
                if (j > 0) coeff /= -static_cast<double>((2 * j) * (2 * j + 1));
                const int p = 2 * j;
                if (p < static_cast<int>(n)) continue;
                double falling = 1.0;
                for (std::size_t m = 0; m < n; ++m) falling *= static_cast<double>(p - static_cast<int>(m));
                const double term = coeff * falling * std::pow(y, p - static_cast<int>(n));
                sum += term;
                if (p > 2 * static_cast<int>(N) + 8 && std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
            }
            out[n] = sum;
        }
        return out;
    }
    const double s = std::sin(y);
    const double c = std::cos(y);
    out[0] = s / y;
    for (std::size_t n = 1; n <= N; ++n) {
        double dsin = 0.0;
        switch (n % 4) {
        case 0: dsin = s; break;
        case 1: dsin = c; break;
        case 2: dsin = -s; break;
        default: dsin = -c; break;
        }
        out[n] = (dsin - static_cast<double>(n) * out[n - 1]) / y;
    }
    return out;
}

} // namespace boostdiff::special

#endif
