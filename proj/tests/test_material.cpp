#include <catch2/catch_amalgamated.hpp>

#include "stripcrack/material.hpp"
#include "support/oracles.hpp"

using namespace stripcrack;
using Catch::Approx;

TEST_CASE("complex modulus follows G - i k G0", "[material]") {
    const ComplexWaveParams wp = derive_wave_params(frozen::g80());
    CHECK(wp.g_tilde.real() == 8.0e10);
    CHECK(wp.g_tilde.imag() == -1.95e11);
    CHECK(wp.regime == Regime::Viscoelastic);
}

TEST_CASE("zero damping or zero frequency gives a real modulus", "[material]") {
    MaterialParams mp = frozen::g80();
    mp.k = 0.0;
    ComplexWaveParams wp = derive_wave_params(mp);
    CHECK(wp.g_tilde == cplx(8.0e10, 0.0));
    CHECK(wp.k0_sq == cplx{});
    CHECK(wp.regime == Regime::Static);

    mp = frozen::g80();
    mp.G0 = 0.0;
    wp = derive_wave_params(mp);
    CHECK(wp.g_tilde == cplx(8.0e10, 0.0));
    CHECK(wp.regime == Regime::Undamped);
    CHECK(wp.k0_sq.imag() == 0.0);
    CHECK(wp.k0_sq.real() > 0.0);
}

TEST_CASE("squared wavenumber matches the high-precision division", "[material]") {
    const ComplexWaveParams wp = derive_wave_params(frozen::g80());
    CHECK(wp.k0_sq.real() == Approx(frozen::k0sq_g80.real()).epsilon(1e-14));
    CHECK(wp.k0_sq.imag() == Approx(frozen::k0sq_g80.imag()).epsilon(1e-14));
    CHECK(wp.k0_sq.imag() > 0.0);

    const ComplexWaveParams wp65 = derive_wave_params(frozen::g65());
    CHECK(wp65.k0_sq.real() == Approx(frozen::k0sq_g65.real()).epsilon(1e-14));
    CHECK(wp65.k0_sq.imag() == Approx(frozen::k0sq_g65.imag()).epsilon(1e-14));
    const ComplexWaveParams wp55 = derive_wave_params(frozen::g55());
    CHECK(wp55.k0_sq.real() == Approx(frozen::k0sq_g55.real()).epsilon(1e-14));
    CHECK(wp55.k0_sq.imag() == Approx(frozen::k0sq_g55.imag()).epsilon(1e-14));
}

TEST_CASE("invalid material data is rejected", "[material]") {
    MaterialParams mp = frozen::g80();
    mp.G = 0.0;
    CHECK_THROWS_AS(derive_wave_params(mp), std::invalid_argument);
    mp = frozen::g80();
    mp.G = -1.0;
    CHECK_THROWS_AS(derive_wave_params(mp), std::invalid_argument);
    mp = frozen::g80();
    mp.rho = 0.0;
    CHECK_THROWS_AS(derive_wave_params(mp), std::invalid_argument);
    mp = frozen::g80();
    mp.k = -0.5;
    CHECK_THROWS_AS(derive_wave_params(mp), std::invalid_argument);
}

TEST_CASE("static branch reduces to |alpha|", "[material]") {
    MaterialParams mp = frozen::g80();
    mp.k = 0.0;
    const ComplexWaveParams wp = derive_wave_params(mp);
    for (double a : {0.0, 1e-3, 1.0, 17.5}) {
        CHECK(gamma_branch(a, wp).real() == Approx(a).margin(1e-300));
        CHECK(gamma_branch(a, wp).imag() == 0.0);
    }
}

TEST_CASE("branch value at alpha = 0 is sqrt(-k0^2) with Re >= 0", "[material]") {
    const ComplexWaveParams wp = derive_wave_params(frozen::g80());
    const cplx g0 = gamma_branch(0.0, wp);
    CHECK(g0.real() >= 0.0);
    const cplx sq = g0 * g0 + wp.k0_sq;
    CHECK(std::abs(sq) <= 1e-16);
}

TEST_CASE("branch matches the arbitrary-precision root", "[material]") {
    ComplexWaveParams wp;
    wp.k0_sq = cplx(4.3759e-8, 1.0666e-7);  // rounded literals, matching the frozen root
    wp.regime = Regime::Viscoelastic;
    const cplx g = gamma_branch(1e-3, wp);
    CHECK(g.real() == Approx(frozen::gamma_1e3_literal.real()).epsilon(1e-14));
    CHECK(g.imag() == Approx(frozen::gamma_1e3_literal.imag()).epsilon(1e-14));
}

TEST_CASE("branch consistency, asymptotics and continuity", "[material]") {
    const ComplexWaveParams wp = derive_wave_params(frozen::g80());
    const double k0abs = std::sqrt(std::abs(wp.k0_sq));

    for (double a : {0.0, 1e-5, 1e-4, 3e-4, 1e-3, 0.1, 1.0, 50.0}) {
        const cplx g = gamma_branch(a, wp);
        CHECK(g.real() > 0.0);
        const cplx target = cplx(a * a, 0.0) - wp.k0_sq;
        CHECK(std::abs(g * g - target) <= 1e-14 * std::abs(target));
    }

    // |gamma/alpha - 1| <= |k0^2| / alpha^2 once alpha >= 10 |k0|
    for (double a : {10.0 * k0abs, 20.0 * k0abs, 1.0, 100.0}) {
        const cplx g = gamma_branch(a, wp);
        CHECK(std::abs(g / a - 1.0) <= std::abs(wp.k0_sq) / (a * a));
    }

    // sample-based continuity
    const double da = 1e-6;
    for (double a : {1e-4, 2.8e-4, 1e-2, 1.0}) {
        const double diff = std::abs(gamma_branch(a + da, wp) - gamma_branch(a, wp));
        CHECK(diff <= 10.0 * da + 1e-15);
    }

    CHECK_THROWS_AS(gamma_branch(-1.0, wp), std::invalid_argument);
}
