#ifndef BOOSTDIFF_BANDLIMITED_HPP
#define BOOSTDIFF_BANDLIMITED_HPP

// Band-limited (Paley-Wiener) profiles stored as sampling coefficients c_a on
// the lattice x~_a = pi a / Lambda, and their evolution
//   dn(t~, x~) = sum_a c_a K(t~, x~ - x~_a).

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "boost_core.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "kernel.hpp"
#include "parallel.hpp"
#include "special_functions.hpp"

namespace boostdiff {

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

using Coefficient = std::pair<long, double>;

/// A point of PW_Lambda: finitely many sampling coefficients plus an estimate
/// of the l2 mass left outside the stored window (nullopt: unknown).
class BandLimitedProfile {
public:
    BandLimitedProfile(std::vector<Coefficient> coeffs, double lambda, double v,
                       std::optional<double> truncation_bound = 0.0)
        : coeffs_(std::move(coeffs)), lambda_(lambda), v_(v), truncation_(truncation_bound) {
        std::sort(coeffs_.begin(), coeffs_.end());
        for (std::size_t i = 1; i < coeffs_.size(); ++i) {
            if (coeffs_[i].first == coeffs_[i - 1].first) {
                std::ostringstream msg;
                msg << "duplicate sampling index " << coeffs_[i].first;
                throw input_error(msg.str());
            }
        }
        for (const auto& [a, c] : coeffs_) {
            if (!std::isfinite(c)) {
                std::ostringstream msg;
                msg << "non-finite coefficient at index " << a;
                throw input_error(msg.str());
            }
        }
        order_.resize(coeffs_.size());
        for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t i, std::size_t j) {
            return std::labs(coeffs_[i].first) > std::labs(coeffs_[j].first);
        });
    }

    const std::vector<Coefficient>& coefficients() const { return coeffs_; }
    double lambda() const { return lambda_; }
    double v() const { return v_; }
    std::optional<double> truncation_bound() const { return truncation_; }
    bool empty() const { return coeffs_.empty(); }
    double spacing() const { return M_PI / lambda_; }
    double position(long a) const { return M_PI * static_cast<double>(a) / lambda_; }

    /// Indices into coefficients() ordered from large |a| to small.
    const std::vector<std::size_t>& summation_order() const { return order_; }

    /// Worst-case pointwise error of the truncated series, sqrt(Lambda/pi) times the tail mass.
    std::optional<double> pointwise_truncation_error() const {
        if (!truncation_) return std::nullopt;
        return *truncation_ * std::sqrt(lambda_ / M_PI);
    }

    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Coefficient& c) { return c.second == 0.0; });
    }

private:
    std::vector<Coefficient> coeffs_;
    double lambda_;
    double v_;
    std::optional<double> truncation_;
    std::vector<std::size_t> order_;
};

inline void require_same_cutoff(const BandLimitedProfile& prof, const BoostParams& p) {
    if (std::abs(prof.lambda() - p.lambda()) > 1e-12 * p.lambda()) {
        std::ostringstream msg;
        msg << "profile cutoff " << prof.lambda() << " does not match Lambda(v=" << p.v() << ") = " << p.lambda();
        throw domain_error(msg.str());
    }
}

/// Profile from user coefficients, taken as exact (truncation bound 0).
inline BandLimitedProfile from_samples(std::vector<Coefficient> coeffs, const BoostParams& p) {
    return BandLimitedProfile(std::move(coeffs), p.lambda(), p.v(), 0.0);
}

enum class TailEstimate { Unknown, Summed };

/// c_a = g(pi a / Lambda) for |a| <= window. With TailEstimate::Summed the
/// caller asserts g decays, and sqrt(sum_{|a| > window} g(x~_a)^2) is summed
/// until the terms stop mattering.
inline BandLimitedProfile sample_function(const std::function<double(double)>& g, const BoostParams& p, long window,
                                          TailEstimate tail = TailEstimate::Unknown) {
    if (window < 1) throw domain_error("sample_function: window must be >= 1");
    const double h = p.spacing();
    auto sample = [&](long a) {
        const double value = g(h * static_cast<double>(a));
        if (!std::isfinite(value)) {
            std::ostringstream msg;
            msg << "reference function is not finite at sample index " << a;
            throw input_error(msg.str());
        }
        return value;
    };
    std::vector<Coefficient> coeffs;
    coeffs.reserve(static_cast<std::size_t>(2 * window + 1));
    for (long a = -window; a <= window; ++a) coeffs.emplace_back(a, sample(a));

    std::optional<double> bound;
    if (tail == TailEstimate::Summed) {
        double mass = 0.0;
        int quiet = 0;
        for (long a = window + 1; a < window + 1000000 && quiet < 32; ++a) {
            const double term = sample(a) * sample(a) + sample(-a) * sample(-a);
            mass += term;
            quiet = (term <= 1e-32 * mass || term == 0.0) ? quiet + 1 : 0;
        }
        bound = std::sqrt(mass);
    }
    return BandLimitedProfile(std::move(coeffs), p.lambda(), p.v(), bound);
}

/// dn(t~, x~). At t~ = 0 this is the Shannon series itself.
inline double eval_profile(const BandLimitedProfile& prof, double t_tilde, double x_tilde, const BoostParams& p) {
    require_same_cutoff(prof, p);
    const auto& c = prof.coefficients();
    CompensatedSum sum;
    for (std::size_t i : prof.summation_order()) {
        const auto& [a, ca] = c[i];
        if (ca == 0.0) continue;
        const double dx = x_tilde - prof.position(a);
        const double k = t_tilde == 0.0 ? special::sinc(p.lambda() * dx) : kernel_boosted(t_tilde, dx, p);
        sum.add(ca * k);
    }
    return sum.value();
}

/// Closed-form slice of a profile on a grid.
inline FieldSlice evaluate_slice(const BandLimitedProfile& prof, double t_tilde, const std::vector<double>& xs,
                                 const BoostParams& p) {
    FieldSlice out;
    out.time = t_tilde;
    out.frame = Frame::Boosted;
    out.positions = xs;
    out.values.assign(xs.size(), 0.0);
    out.provenance = Provenance::ClosedForm;
    parallel_for(xs.size(), [&](std::size_t i) { out.values[i] = eval_profile(prof, t_tilde, xs[i], p); });
    return out;
}

/// Kernel slice in either frame: K(t, x) on a grid.
inline FieldSlice kernel_slice(Frame frame, double t, const std::vector<double>& xs, const BoostParams& p) {
    FieldSlice out;
    out.time = t;
    out.frame = frame;
    out.positions = xs;
    out.values.assign(xs.size(), 0.0);
    parallel_for(xs.size(), [&](std::size_t i) {
        out.values[i] = frame == Frame::Rest ? kernel_rest(t, xs[i], p) : kernel_boosted(t, xs[i], p);
    });
    return out;
}

/// dn(t~, pi b/Lambda + offset) for b in [lo, hi] as a discrete convolution
/// with one kernel table kappa_m = K(t~, pi m/Lambda + offset). Cost is
/// O(table + (hi - lo) * #coefficients) kernel-free multiply-adds.
inline std::vector<double> evaluate_lattice(const BandLimitedProfile& prof, double t_tilde, long lo, long hi,
                                            const BoostParams& p, double offset = 0.0) {
    require_same_cutoff(prof, p);
    if (hi < lo) throw domain_error("evaluate_lattice: empty index range");
    const auto& c = prof.coefficients();
    std::vector<double> out(static_cast<std::size_t>(hi - lo + 1), 0.0);
    if (c.empty()) return out;
    const long m_lo = lo - c.back().first;
    const long m_hi = hi - c.front().first;
    std::vector<double> table(static_cast<std::size_t>(m_hi - m_lo + 1));
    const double h = p.spacing();
    parallel_for(table.size(), [&](std::size_t i) {
        const double x = h * static_cast<double>(m_lo + static_cast<long>(i)) + offset;
        table[i] = t_tilde == 0.0 ? special::sinc(p.lambda() * x) : kernel_boosted(t_tilde, x, p);
    });
    const auto& order = prof.summation_order();
    parallel_for(out.size(), [&](std::size_t j) {
        const long b = lo + static_cast<long>(j);
        CompensatedSum sum;
        for (std::size_t i : order) {
            const auto& [a, ca] = c[i];
            sum.add(ca * table[static_cast<std::size_t>(b - a - m_lo)]);
        }
        out[j] = sum.value();
    });
    return out;
}

/// Re-expands the evolved field dn(t~, .) in the sampling basis: new
/// coefficients are the field values at x~_b for b in [a_min - margin, a_max + margin].
/// Evolution keeps the field in PW_Lambda, so this is exact up to truncation.
/// The evolved field decays like C/|x~|, and the discarded mass is estimated
/// as sqrt(C_left^2/B_left + C_right^2/B_right) from the outermost samples.
inline BandLimitedProfile resample(const BandLimitedProfile& prof, double t_tilde, long margin, const BoostParams& p) {
    require_same_cutoff(prof, p);
    if (margin < 8) throw domain_error("resample: margin must be >= 8");
    if (prof.empty()) return BandLimitedProfile({}, prof.lambda(), prof.v(), prof.truncation_bound());
    const long a_min = prof.coefficients().front().first;
    const long a_max = prof.coefficients().back().first;
    const long lo = a_min - margin;
    const long hi = a_max + margin;
    const auto values = evaluate_lattice(prof, t_tilde, lo, hi, p);
    std::vector<Coefficient> coeffs(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) coeffs[i] = {lo + static_cast<long>(i), values[i]};

    const double centre = 0.5 * static_cast<double>(a_min + a_max);
    double c_left = 0.0;
    double c_right = 0.0;
    for (std::size_t k = 0; k < 8; ++k) {
        const auto& l = coeffs[k];
        const auto& r = coeffs[coeffs.size() - 1 - k];
        c_left = std::max(c_left, std::abs(l.second) * (centre - static_cast<double>(l.first)));
        c_right = std::max(c_right, std::abs(r.second) * (static_cast<double>(r.first) - centre));
    }
    const double b_left = centre - static_cast<double>(lo);
    const double b_right = static_cast<double>(hi) - centre;
    double tail = std::sqrt(c_left * c_left / b_left + c_right * c_right / b_right);
    if (prof.truncation_bound()) {
        // inherited tail, amplified by at most the growth factor
        tail += *prof.truncation_bound() * std::exp(std::abs(t_tilde) * p.growth_rate());
        return BandLimitedProfile(std::move(coeffs), prof.lambda(), prof.v(), tail);
    }
    return BandLimitedProfile(std::move(coeffs), prof.lambda(), prof.v(), std::nullopt);
}

/// ||dn||_{L2} = sqrt(pi/Lambda) sqrt(sum c_a^2) by orthogonality of the shifted sincs.
inline double l2_norm(const BandLimitedProfile& prof, const BoostParams& p) {
    require_same_cutoff(prof, p);
    CompensatedSum sum;
    for (std::size_t i : prof.summation_order()) {
        const double c = prof.coefficients()[i].second;
        sum.add(c * c);
    }
    return std::sqrt(p.spacing()) * std::sqrt(sum.value());
}

/// Localisation report for a profile at t~ = 0.
struct BoundsReport {
    double max_abs = 0.0;
    double pointwise_bound = 0.0;
    bool pointwise_pass = false;
    double delta_x = 0.0; // +inf if the second moment diverges
    bool delta_x_finite = false;
    double uncertainty_bound = 0.0;
    bool uncertainty_pass = false;

    bool pass() const { return pointwise_pass && uncertainty_pass; }
};

namespace detail {

// Moments int w(x) dn(0,x)^2 dx for w = 1, x, x^2 on [from, to) by the
// midpoint rule with step h.
struct MomentSums {
    CompensatedSum m0;
    CompensatedSum m1;
    CompensatedSum m2;
};

inline void accumulate_moments(const BandLimitedProfile& prof, const BoostParams& p, double from, double to, double h,
                               MomentSums& sums) {
    const long n = static_cast<long>(std::llround((to - from) / h));
    std::vector<double> f2(static_cast<std::size_t>(std::max(0L, n)));
    parallel_for(f2.size(), [&](std::size_t i) {
        const double x = from + (static_cast<double>(i) + 0.5) * h;
        const double f = eval_profile(prof, 0.0, x, p);
        f2[i] = f * f;
    });
    for (std::size_t i = 0; i < f2.size(); ++i) {
        const double x = from + (static_cast<double>(i) + 0.5) * h;
        sums.m0.add(h * f2[i]);
        sums.m1.add(h * x * f2[i]);
        sums.m2.add(h * x * x * f2[i]);
    }
}

} // namespace detail

/// Pointwise (Cauchy-Schwarz) and uncertainty bounds at t~ = 0.
///
/// The maximum is scanned on a grid of step pi/(8 Lambda) aligned with the
/// sampling lattice. The spread Delta x~ is the second central moment of dn^2 on
/// a window that doubles until two successive doublings change it by less
/// than `moment_tol` relative; a moment still moving after `max_doublings` is
/// reported as infinite.
inline BoundsReport check_bounds(const BandLimitedProfile& prof, const BoostParams& p, double moment_tol = 1e-6,
                                 int max_doublings = 8) {
    require_same_cutoff(prof, p);
    if (prof.empty() || prof.is_zero()) throw domain_error("check_bounds: profile is zero");
    BoundsReport r;
    const double norm = l2_norm(prof, p);
    const double h = p.spacing();
    const long a_min = prof.coefficients().front().first;
    const long a_max = prof.coefficients().back().first;

    const long sub = 8;
    const long scan_lo = (a_min - 16) * sub;
    const long scan_hi = (a_max + 16) * sub;
    std::vector<double> scan(static_cast<std::size_t>(scan_hi - scan_lo + 1));
    parallel_for(scan.size(), [&](std::size_t i) {
        const double x = h * static_cast<double>(scan_lo + static_cast<long>(i)) / static_cast<double>(sub);
        scan[i] = std::abs(eval_profile(prof, 0.0, x, p));
    });
    r.max_abs = *std::max_element(scan.begin(), scan.end());
    r.pointwise_bound = std::sqrt(p.lambda() / M_PI) * norm;
    r.pointwise_pass = r.max_abs <= r.pointwise_bound * (1.0 + 1e-12);

    r.uncertainty_bound = 1.0 / (4.0 * p.lambda());
    const double step = h / 4.0;
    const double reach = std::max(std::labs(a_min), std::labs(a_max)) * h + 64.0 * h;
    double half = std::ceil(reach / step) * step;
    detail::MomentSums sums;
    detail::accumulate_moments(prof, p, -half, half, step, sums);
    auto spread = [&]() {
        const double m0 = sums.m0.value();
        const double mean = sums.m1.value() / m0;
        return std::sqrt(std::max(0.0, sums.m2.value() / m0 - mean * mean));
    };
    double prev = spread();
    int settled = 0;
    for (int k = 0; k < max_doublings && settled < 2; ++k) {
        detail::accumulate_moments(prof, p, -2.0 * half, -half, step, sums);
        detail::accumulate_moments(prof, p, half, 2.0 * half, step, sums);
        half *= 2.0;
        const double next = spread();
        settled = std::abs(next - prev) <= moment_tol * next ? settled + 1 : 0;
        prev = next;
    }
    r.delta_x_finite = settled >= 2;
    r.delta_x = r.delta_x_finite ? prev : std::numeric_limits<double>::infinity();
    r.uncertainty_pass = r.delta_x >= r.uncertainty_bound * (1.0 - moment_tol);
    return r;
}

} // namespace boostdiff

#endif
