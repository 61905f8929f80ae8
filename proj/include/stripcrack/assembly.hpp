#pragma once

#include <stdexcept>
#include <vector>

#include "stripcrack/chebyshev.hpp"
#include "stripcrack/kernel.hpp"
#include "stripcrack/material.hpp"

namespace stripcrack {

/// Truncated Galerkin system (I + R) a = f in the Chebyshev bases:
/// rows test against U_{n-1} with weight sqrt(1-y^2), columns expand in
/// T_m / sqrt(1-eta^2), n, m = 1..N.
struct GalerkinSystem {
    int n = 0;
    std::vector<cplx> matrix_r;  // row-major N x N entries R_{nm}
    std::vector<cplx> rhs;       // f_n
    int quad_order_eta = 0;
    int quad_order_y = 0;
    ComplexWaveParams wave;
};

/// f = [2 tau0 / g_tilde, 0, 0, ...], the exact projection of the constant load.
inline std::vector<cplx> rhs_vector(int N, double tau0, cplx g_tilde) {
    if (N < 1) throw std::invalid_argument("rhs_vector: N must be >= 1");
    std::vector<cplx> f(static_cast<std::size_t>(N));
    f[0] = 2.0 * tau0 / g_tilde;
    return f;
}

/// int_0^pi sin(n t) sin(m t) sin(t) dt in closed form. Vanishes for n + m odd.
inline double sine_triple_overlap(int n, int m) {
    if ((n + m) % 2 != 0) return 0.0;
    auto J = [](int p) { return 2.0 / (1.0 - static_cast<double>(p) * p); };
    return 0.5 * (J(n - m) - J(n + m));
}

/// R_{nm} = (4/pi) int sqrt(1-y^2) U_{n-1}(y) [int K(y,eta) T_m(eta)/sqrt(1-eta^2) deta] dy
/// with K the odd regular kernel sgn(y-eta) rho0(|y-eta|).
///
/// rho0(0) != 0, so the kernel jumps across the diagonal and a plain tensor
/// rule cannot integrate it to the required accuracy. The jump part
/// sgn(y-eta) rho0(0) is handled in closed form (the sine_triple_overlap
/// band); the tensor grid only carries the remainder
/// sgn(y-eta) (rho0(|y-eta|) - rho0(0)), which vanishes at y = eta.
inline std::vector<cplx> galerkin_matrix(int N, RhoCache& kernel, int n_eta, int n_y) {
    if (N < 1) throw std::invalid_argument("galerkin_matrix: N must be >= 1");
    if (n_eta < N + 16 || n_y < N + 16)
        throw std::invalid_argument("galerkin_matrix: quadrature orders below the N + 16 floor");

    std::vector<cplx> R(static_cast<std::size_t>(N) * N);
    if (kernel.wave().k0_sq == cplx{}) return R;

    const ChebRule re = cheb_rule(ChebKind::First, n_eta);
    const ChebRule ry = cheb_rule(ChebKind::Second, n_y);
    const cplx r00 = kernel.at(0.0).value;

    // remainder kernel on the tensor grid
    std::vector<cplx> Krem(static_cast<std::size_t>(n_y) * n_eta);
    for (int i = 0; i < n_y; ++i) {
        for (int j = 0; j < n_eta; ++j) {
            const double d = ry.nodes[i] - re.nodes[j];
            if (d == 0.0) {
                Krem[static_cast<std::size_t>(i) * n_eta + j] = cplx{};
                continue;
            }
            const double sg = d > 0.0 ? 1.0 : -1.0;
            Krem[static_cast<std::size_t>(i) * n_eta + j] =
                sg * (kernel.at(std::abs(d)).value - r00);
        }
    }

    // weighted basis samples
    std::vector<double> Uw(static_cast<std::size_t>(N) * n_y);
    std::vector<double> Tn(static_cast<std::size_t>(N) * n_eta);
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i < n_y; ++i)
            Uw[static_cast<std::size_t>(n - 1) * n_y + i] =
                ry.weights[i] * cheb_u(n - 1, ry.nodes[i]);
    for (int m = 1; m <= N; ++m)
        for (int j = 0; j < n_eta; ++j)
            Tn[static_cast<std::size_t>(m - 1) * n_eta + j] =
                re.weights[j] * cheb_t(m, re.nodes[j]);

    std::vector<cplx> G(static_cast<std::size_t>(N) * n_eta);
    for (int n = 0; n < N; ++n) {
        for (int j = 0; j < n_eta; ++j) {
            cplx acc{};
            for (int i = 0; i < n_y; ++i)
                acc += Uw[static_cast<std::size_t>(n) * n_y + i] *
                       Krem[static_cast<std::size_t>(i) * n_eta + j];
            G[static_cast<std::size_t>(n) * n_eta + j] = acc;
        }
    }
    const double four_over_pi = 4.0 / kPi;
    for (int n = 0; n < N; ++n) {
        for (int m = 0; m < N; ++m) {
            cplx acc{};
            for (int j = 0; j < n_eta; ++j)
                acc += G[static_cast<std::size_t>(n) * n_eta + j] *
                       Tn[static_cast<std::size_t>(m) * n_eta + j];
            R[static_cast<std::size_t>(n) * N + m] = four_over_pi * acc;
        }
    }

    // closed-form contribution of the diagonal jump
    for (int n = 1; n <= N; ++n)
        for (int m = 1; m <= N; ++m)
            R[static_cast<std::size_t>(n - 1) * N + (m - 1)] +=
                -(8.0 / (kPi * m)) * r00 * sine_triple_overlap(n, m);

    return R;
}

/// Assemble the truncated system for the given material at size N.
/// Quadrature orders default to N + 32 in both variables.
inline GalerkinSystem assemble(int N, const MaterialParams& mp, const QuadratureSpec& q) {
    GalerkinSystem sys;
    sys.n = N;
    sys.wave = derive_wave_params(mp);
    sys.quad_order_eta = N + 32;
    sys.quad_order_y = N + 32;
    RhoCache cache(sys.wave, q);
    sys.matrix_r = galerkin_matrix(N, cache, sys.quad_order_eta, sys.quad_order_y);
    sys.rhs = rhs_vector(N, mp.tau0, sys.wave.g_tilde);
    return sys;
}

}  // namespace stripcrack
