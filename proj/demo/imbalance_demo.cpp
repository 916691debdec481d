// Resolution of the ideal interferometer against gain, with the second beam
// splitter balanced and at its optimal imbalance.

#include <cstdio>

#include "sqint/sqint.hpp"

int main() {
    using namespace sqint;

    const Delta2Optimum best = optimize_delta2(InterferometerConfig{}, 5.0);
    std::printf("optimal delta2 at G = 5: %.5f rad, kappa = %.4f\n", best.delta2_opt, best.kappa_opt);

    InterferometerConfig tuned;
    tuned.delta2 = best.delta2_opt;
    std::printf("\n%6s %12s %14s %14s\n", "G", "<N>", "kappa(0)", "kappa(opt)");
    for (double g : linear_grid(1.0, 6.0, 11)) {
        const ResolutionResult balanced = modified_resolution(InterferometerConfig::ideal(g));
        tuned.gain = g;
        const ResolutionResult imbalanced = modified_resolution(tuned);
        std::printf("%6.2f %12.4g %14.5f %14.5f\n", g, balanced.mean_N, balanced.kappa, imbalanced.kappa);
    }
}
