#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace stripcrack {

using cplx = std::complex<double>;

/// Physical inputs for the oscillating shear-crack problem. SI units
/// throughout; the crack half-length is normalized to 1, so the
/// computational interval is [-1, 1].
struct MaterialParams {
    double G = 0.0;     // elastic shear modulus, Pa
    double G0 = 0.0;    // viscous shear modulus, Pa*s-scaled
    double rho = 0.0;   // mass density, kg/m^3
    double k = 0.0;     // angular oscillation frequency, 1/s
    double tau0 = 0.0;  // shear load amplitude, Pa

    void validate() const {
        if (!std::isfinite(G) || !std::isfinite(G0) || !std::isfinite(rho) ||
            !std::isfinite(k) || !std::isfinite(tau0))
            throw std::invalid_argument("MaterialParams: non-finite field");
        if (!(G > 0.0)) throw std::invalid_argument("MaterialParams: G must be positive");
        if (!(rho > 0.0)) throw std::invalid_argument("MaterialParams: rho must be positive");
        if (G0 < 0.0) throw std::invalid_argument("MaterialParams: G0 must be >= 0");
        if (k < 0.0) throw std::invalid_argument("MaterialParams: k must be >= 0");
    }
};

enum class Regime {
    Static,        // k0^2 == 0
    Viscoelastic,  // Im k0^2 != 0
    Undamped       // k0^2 real positive; pole on the integration path
};

/// Derived complex quantities consumed by the kernel and assembly stages.
struct ComplexWaveParams {
    cplx g_tilde{};  // G - i k G0
    cplx k0_sq{};    // rho k^2 / g_tilde
    Regime regime = Regime::Static;
};

inline ComplexWaveParams derive_wave_params(const MaterialParams& mp) {
    mp.validate();
    ComplexWaveParams wp;
    wp.g_tilde = cplx(mp.G, -mp.k * mp.G0);
    if (mp.k == 0.0 || mp.rho == 0.0) {
        wp.k0_sq = cplx{};
        wp.regime = Regime::Static;
    } else {
        wp.k0_sq = mp.rho * mp.k * mp.k / wp.g_tilde;
        wp.regime = wp.k0_sq.imag() != 0.0 ? Regime::Viscoelastic : Regime::Undamped;
    }
    return wp;
}

/// sqrt(alpha^2 - k0^2) on the Re >= 0 branch, the one that makes
/// exp(-gamma |y - eta|) decay. Tends to alpha as alpha -> infinity.
inline cplx gamma_branch(double alpha, const ComplexWaveParams& wp) {
    if (!std::isfinite(alpha) || alpha < 0.0)
        throw std::invalid_argument("gamma_branch: alpha must be finite and >= 0");
    return std::sqrt(cplx(alpha * alpha, 0.0) - wp.k0_sq);
}

}  // namespace stripcrack
