// Prints the fundamental solution in the boosted frame at a few times, with
// the quadrature oracle alongside. Usage: demo_kernel_snapshot [v]

#include <cstdio>
#include <cstdlib>

#include "boostdiff/boostdiff.hpp"

using namespace boostdiff;

int main(int argc, char** argv) {
    const double v = argc > 1 ? std::atof(argv[1]) : 0.5;
    try {
        const BoostParams p(v);
        std::printf("# v=%g lambda=%.15g growth rate=%.15g\n", v, p.lambda(), p.growth_rate());
        std::printf("%8s %8s %22s %22s\n", "t~", "x~", "K", "oracle");
        for (double t : {-0.5, 0.0, 0.5, 1.0}) {
            for (double x : {-2.0, -1.0, 0.0, 0.5, 1.0, 2.0})
                std::printf("%8.3f %8.3f %22.15g %22.15g\n", t, x, kernel_boosted(t, x, p), oracle_kernel(t, x, p));
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
