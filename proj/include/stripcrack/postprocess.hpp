#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stripcrack/kernel.hpp"
#include "stripcrack/linsolve.hpp"
#include "stripcrack/material.hpp"

namespace stripcrack {

class on_crack_face_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Complex stress intensity factor K_I + i K_II at the crack tip.
struct SifResult {
    cplx k_complex{};
    double magnitude = 0.0;  // |k_complex|, independent of t
    double t = 0.0;          // evaluation time
};

/// K = (e^{-i k t} / sqrt(2)) (G - i k G0) sum_m a_m.
inline SifResult sif(const SpectralSolution& sol, const MaterialParams& mp, double t = 0.0) {
    const cplx g_tilde(mp.G, -mp.k * mp.G0);
    const cplx phase = std::exp(cplx(0.0, -mp.k * t));
    const cplx K = phase / std::sqrt(2.0) * g_tilde * sol.coeff_sum();
    return {K, std::abs(K), t};
}

/// Crack-opening displacement profile, vanishing at both tips:
/// phi0(y) = sqrt(1-y^2) sum_m a_m U_{m-1}(y) / m = sum_m a_m sin(m acos y) / m.
inline cplx cod_profile(const SpectralSolution& sol, double y) {
    if (!(y >= -1.0 && y <= 1.0)) throw std::invalid_argument("cod_profile: y must lie in [-1, 1]");
    if (y == 1.0 || y == -1.0) return cplx{};  // the opening closes at the tips exactly
    const double th = std::acos(y);
    cplx s{};
    for (int m = 1; m <= sol.n; ++m) s += sol.coeffs[m - 1] * (std::sin(m * th) / m);
    return s;
}

namespace detail {

inline cplx density_poly(const SpectralSolution& sol, double theta) {
    // p(cos t) = sum_m a_m T_m(cos t) = sum_m a_m cos(m t)
    cplx s{};
    for (int m = 1; m <= sol.n; ++m) s += sol.coeffs[m - 1] * std::cos(m * theta);
    return s;
}

}  // namespace detail

/// Harmonic displacement amplitude at (x, y), reconstructed from the solved
/// opening density. The half-space is evenly extended, so (x, y) ranges over
/// the plane cut along x = 0, |y| < 1. Points on the open cut are rejected
/// (the value is one-sided there); the jump across the cut recovers
/// cod_profile. Antisymmetric in x and decaying at infinity.
inline cplx displacement_field(const SpectralSolution& sol, double x, double y,
                               const ComplexWaveParams& wp, const QuadratureSpec& q) {
    if (!std::isfinite(x) || !std::isfinite(y))
        throw std::invalid_argument("displacement_field: non-finite point");
    if (x == 0.0) {
        if (std::abs(y) < 1.0)
            throw on_crack_face_error(
                "displacement_field: point lies on the jump line; pick a side by sign of x");
        return cplx{};
    }

    double anorm = 0.0;
    for (const cplx& a : sol.coeffs) anorm += std::abs(a);
    if (anorm == 0.0) return cplx{};

    const double ty = std::abs(y) <= 1.0 ? std::acos(y) : (y > 1.0 ? 0.0 : kPi);

    // arctangent part; the integrand varies on scale |x| near t = ty
    auto f_at = [&](double t) {
        return std::atan((y - std::cos(t)) / x) * detail::density_poly(sol, t);
    };
    const double tol_at = 1e-13 * anorm;
    cplx I{};
    if (ty > 0.0) I += adaptive_gauss(f_at, 0.0, ty, tol_at);
    if (ty < kPi) I += adaptive_gauss(f_at, ty, kPi, tol_at);

    // field-kernel part; smooth on each side of t = ty
    auto f_R = [&](double t) {
        return field_kernel(x, y - std::cos(t), wp, q).value * detail::density_poly(sol, t);
    };
    const double tol_R = 1e-13 * anorm;
    if (ty > 0.0) I += adaptive_gauss(f_R, 0.0, ty, tol_R, 28);
    if (ty < kPi) I += adaptive_gauss(f_R, ty, kPi, tol_R, 28);

    return I / (2.0 * kPi);
}

/// Generalized zeta tail sum_{n>=1} (n + N)^{-4} by direct summation.
inline double hurwitz_zeta4(int N) {
    if (N < 0) throw std::invalid_argument("hurwitz_zeta4: N must be >= 0");
    double sum = 0.0, comp = 0.0;  // Kahan
    for (long n = 1;; ++n) {
        const double base = static_cast<double>(n) + N;
        const double inv2 = 1.0 / (base * base);
        const double term = inv2 * inv2;
        const double t = sum + term;
        comp += std::abs(sum) >= term ? (sum - t) + term : (term - t) + sum;
        sum = t;
        const double tail = 1.0 / (3.0 * base * base * base);
        if (n > 8 && tail < 1e-15 * sum) break;
    }
    return sum + comp;
}

/// Truncation error bound C [zeta(4, N)]^{1/2}; scales as N^{-3/2}.
inline double error_bound(int N, double constant = 1.0) {
    if (N < 1) throw std::invalid_argument("error_bound: N must be >= 1");
    return constant * std::sqrt(hurwitz_zeta4(N));
}

}  // namespace stripcrack
