#ifndef BOOSTDIFF_QUADRATURE_HPP
#define BOOSTDIFF_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <vector>

#include "errors.hpp"

namespace boostdiff {

enum class QuadratureScheme { GaussLegendre, Adaptive };

/// Node count, scheme and target tolerance for oracle integrals.
struct QuadratureSpec {
    int nodes = 400;
    QuadratureScheme scheme = QuadratureScheme::GaussLegendre;
    double tolerance = 1e-11;

    void validate() const {
        if (nodes < 8) throw domain_error("QuadratureSpec: nodes must be >= 8");
        if (!(tolerance > 0.0)) throw domain_error("QuadratureSpec: tolerance must be > 0");
    }
};

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

inline GaussLegendreRule compute_gauss_legendre(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) <= 4e-16) {
                // one more pass for the derivative at the converged node
                p0 = 1.0;
                p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

} // namespace detail

/// Cached n-point rule. Tables are built once per n and shared read-only.
inline const GaussLegendreRule& gauss_legendre(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<GaussLegendreRule>(detail::compute_gauss_legendre(n));
    return *slot;
}

/// Fixed-order Gauss-Legendre integral of f over [a, b].
template <class T, class F>
T integrate_gauss_legendre(F&& f, double a, double b, int n) {
    const auto& rule = gauss_legendre(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    T sum{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    return half * sum;
}

/// Composite Gauss-Legendre over equal panels.
template <class T, class F>
T integrate_composite(F&& f, double a, double b, int panels, int n) {
    T sum{};
    const double width = (b - a) / panels;
    for (int k = 0; k < panels; ++k) {
        const double lo = a + k * width;
        const double hi = (k + 1 == panels) ? b : lo + width;
        sum += integrate_gauss_legendre<T>(f, lo, hi, n);
    }
    return sum;
}

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T, class F>
std::pair<T, double> kronrod15(F& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const T fc = f(mid);
    T kron = kWgk[7] * fc;
    T gauss = kWg[3] * fc;
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const T f1 = f(mid - dx);
        const T f2 = f(mid + dx);
        kron += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    return {half * kron, std::abs(half * (kron - gauss))};
}

template <class T, class F>
T adaptive_recurse(F& f, double a, double b, double tol, int depth, double& err_total, int& evals) {
    auto [value, err] = kronrod15<T>(f, a, b);
    evals += 15;
    if (err <= tol || depth <= 0 || std::abs(b - a) < 1e-14 * (1.0 + std::abs(a))) {
        err_total += err;
        return value;
    }
    const double mid = 0.5 * (a + b);
    return adaptive_recurse<T>(f, a, mid, 0.5 * tol, depth - 1, err_total, evals) +
           adaptive_recurse<T>(f, mid, b, 0.5 * tol, depth - 1, err_total, evals);
}

} // namespace detail

/// Result of an adaptive integral with its a-posteriori error estimate.
template <class T>
struct AdaptiveResult {
    T value;
    double error;
    int evaluations;
};

/// Adaptive Gauss-Kronrod 7/15 bisection to absolute tolerance `tol`.
/// Throws accuracy_error if the summed local estimates exceed `tol`.
template <class T, class F>
AdaptiveResult<T> integrate_adaptive(F f, double a, double b, double tol, int max_depth = 40) {
    double err = 0.0;
    int evals = 0;
    const T value = detail::adaptive_recurse<T>(f, a, b, tol, max_depth, err, evals);
    if (err > tol) {
        std::ostringstream msg;
        msg << "adaptive quadrature on [" << a << ", " << b << "] reached " << err << " > " << tol;
        throw accuracy_error(msg.str(), err);
    }
    return {value, err, evals};
}

} // namespace boostdiff

#endif
