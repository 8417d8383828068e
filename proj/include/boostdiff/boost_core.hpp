#ifndef BOOSTDIFF_BOOST_CORE_HPP
#define BOOSTDIFF_BOOST_CORE_HPP

// Lorentz-boost kinematics for one-dimensional diffusion: frame parameters,
// the 2x2 map acting on (omega, k), the two roots of the boosted dispersion
// quadratic and the kinetic admissibility strip |Im k| < 1.

#include <cmath>
#include <complex>
#include <sstream>
#include <utility>

#include "errors.hpp"

namespace boostdiff {

using complex = std::complex<double>;

enum class Frame { Rest, Boosted };
enum class Direction { RestToBoosted, BoostedToRest };
enum class Branch { Stable, Unstable };

inline const char* to_string(Frame f) { return f == Frame::Rest ? "rest" : "boosted"; }

/// Frame context: boost speed and everything derived from it.
///
/// All quantities are in natural units (c = diffusivity = 1). The speed is
/// restricted to the open interval (0, 1); at v = 0 the cutoff is infinite
/// and at v = 1 the Lorentz factor is.
class BoostParams {
public:
    explicit BoostParams(double v) : v_(v) {
        if (!(v > 0.0 && v < 1.0)) {
            std::ostringstream msg;
            msg << "v must lie in (0,1); got " << v;
            throw domain_error(msg.str());
        }
        gamma_ = 1.0 / std::sqrt((1.0 - v) * (1.0 + v));
        lambda_ = (1.0 + 2.0 * v) / std::sqrt(v * (1.0 - v));
        growth_rate_ = 1.0 / (gamma_ * v);
        edge_ = std::sqrt(1.0 + 1.0 / v);
    }

    double v() const { return v_; }
    double gamma() const { return gamma_; }
    /// Largest admissible boosted wavenumber.
    double lambda() const { return lambda_; }
    /// Maximal amplification rate 1/(gamma v) of admissible modes.
    double growth_rate() const { return growth_rate_; }
    /// Real part sqrt(1 + 1/v) of the rest-frame contour endpoints.
    double edge() const { return edge_; }

    /// Sampling lattice spacing pi / Lambda.
    double spacing() const { return M_PI / lambda_; }

private:
    double v_;
    double gamma_;
    double lambda_;
    double growth_rate_;
    double edge_;
};

inline BoostParams make_boost(double v) { return BoostParams(v); }

struct WaveVector {
    complex omega;
    complex k;
    Frame frame;
};

/// Applies omega = gamma(w~ - v k~), k = gamma(k~ - v w~) or its inverse.
inline WaveVector boost_wavevector(const WaveVector& wv, const BoostParams& p, Direction direction) {
    const double g = p.gamma();
    const double v = p.v();
    if (direction == Direction::BoostedToRest) {
        return {g * (wv.omega - v * wv.k), g * (wv.k - v * wv.omega), Frame::Rest};
    }
    return {g * (wv.omega + v * wv.k), g * (wv.k + v * wv.omega), Frame::Boosted};
}

namespace detail {

// Principal square root of 1 - 4 i v k~ / gamma. The radicand has real part 1
// for real k~, so it never meets the branch cut on the negative real axis.
inline complex dispersion_root(double k_tilde, const BoostParams& p) {
    return std::sqrt(complex(1.0, -4.0 * p.v() * k_tilde / p.gamma()));
}

} // namespace detail

/// Boosted frequency on the stable (hydrodynamic) branch; Im <= 0 for real k~.
inline complex stable_dispersion(double k_tilde, const BoostParams& p) {
    const double v = p.v();
    const complex pre(0.0, 1.0 / (2.0 * p.gamma() * v * v));
    return k_tilde / v + pre * (1.0 - detail::dispersion_root(k_tilde, p));
}

/// The other root of the boosted quadratic; Im w~(0) = 1/(gamma v^2).
inline complex unstable_dispersion(double k_tilde, const BoostParams& p) {
    const double v = p.v();
    const complex pre(0.0, 1.0 / (2.0 * p.gamma() * v * v));
    return k_tilde / v + pre * (1.0 + detail::dispersion_root(k_tilde, p));
}

inline complex dispersion(double k_tilde, const BoostParams& p, Branch branch) {
    return branch == Branch::Stable ? stable_dispersion(k_tilde, p) : unstable_dispersion(k_tilde, p);
}

/// Rest-frame images k(-Lambda), k(+Lambda) = i -/+ sqrt(1 + 1/v) of the band edges.
inline std::pair<complex, complex> contour_endpoints(const BoostParams& p) {
    return {complex(-p.edge(), 1.0), complex(p.edge(), 1.0)};
}

/// True iff the rest-frame wavenumber lies strictly inside |Im k| < 1.
inline bool is_kinetically_admissible(const WaveVector& wv, const BoostParams& p) {
    const WaveVector rest = wv.frame == Frame::Rest ? wv : boost_wavevector(wv, p, Direction::BoostedToRest);
    return std::abs(rest.k.imag()) < 1.0;
}

inline bool is_kinetically_admissible(const WaveVector& wv) {
    if (wv.frame != Frame::Rest) {
        throw domain_error("boosted wave vectors need BoostParams to be checked");
    }
    return std::abs(wv.k.imag()) < 1.0;
}

} // namespace boostdiff

#endif
