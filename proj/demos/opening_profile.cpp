// Minimal library walkthrough: solve one material, print the tip intensity
// factor and a short crack-opening table.

#include <cstdio>

#include "stripcrack/linsolve.hpp"
#include "stripcrack/postprocess.hpp"

int main() {
    using namespace stripcrack;
    const MaterialParams mp{80e9, 65e9, 2700.0, 3.0, 1.0};  // SI
    const QuadratureSpec quad;

    const SpectralSolution sol = reduction_solve(mp, quad, 10, 45, 1e-6);
    const SifResult K = sif(sol, mp, 0.0);
    std::printf("converged at N = %d, residual %.3e\n", sol.n, sol.residual);
    std::printf("K = %.9f + %.9f i, |K| = %.9f\n\n", K.k_complex.real(), K.k_complex.imag(),
                K.magnitude);

    std::printf("%8s %14s %14s\n", "y", "Re opening", "Im opening");
    for (double y = 0.0; y <= 1.0001; y += 0.25) {
        const cplx c = cod_profile(sol, std::min(y, 1.0));
        std::printf("%8.2f %14.6e %14.6e\n", y, c.real(), c.imag());
    }
    return 0;
}
