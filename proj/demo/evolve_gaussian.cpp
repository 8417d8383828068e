// Samples a Gaussian onto the lattice pi a / Lambda and evolves it both ways:
// forward it spreads, backward the modes near the band edge grow.

#include <cmath>
#include <cstdio>

#include "boostdiff/boostdiff.hpp"

using namespace boostdiff;

int main() {
    const BoostParams p(0.5);
    const double L = p.lambda();
    const auto prof = sample_function([&](double x) { return std::exp(-std::pow(L * x / (2 * M_PI), 2)); }, p, 20,
                                      TailEstimate::Summed);
    const auto phi = sampling_spectrum(prof.coefficients(), p);
    const auto xs = uniform_grid(-8.0, 8.0, 641);
    std::printf("# %zu coefficients, truncation bound %.3g\n", prof.coefficients().size(),
                prof.truncation_bound().value_or(0.0));
    std::printf("%8s %14s %14s %14s\n", "t~", "max|dn|", "||dn||_2", "band[0.8L,L]");
    for (double t : {-0.5, -0.25, 0.0, 0.25, 0.5, 1.0}) {
        const auto s = evaluate_slice(prof, t, xs, p);
        double sum = 0.0;
        for (double y : s.values) sum += y * y;
        std::printf("%8.3f %14.8f %14.8f %14.6e\n", t, s.max_abs(), std::sqrt(sum * (xs[1] - xs[0])),
                    band_energy_fraction(phi, t, 0.8 * L, L, p));
    }
    return 0;
}
