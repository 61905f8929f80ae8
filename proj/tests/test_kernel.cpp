#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <thread>

#include "stripcrack/kernel.hpp"
#include "support/oracles.hpp"

using namespace stripcrack;
using Catch::Approx;

namespace {
const ComplexWaveParams wp80 = derive_wave_params(frozen::g80());
const QuadratureSpec q_default{};
}  // namespace

TEST_CASE("spec validation", "[kernel]") {
    QuadratureSpec q;
    q.abs_tol = 0.0;
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);
    q = QuadratureSpec{};
    q.panel_order = 4;
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);
    q = QuadratureSpec{};
    q.max_doublings = 0;
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);
}

TEST_CASE("vanished wavenumber gives an identically zero kernel", "[kernel]") {
    MaterialParams mp = frozen::g80();
    mp.k = 0.0;
    const ComplexWaveParams wp = derive_wave_params(mp);
    for (double s : {0.0, 0.3, 1.7}) {
        const KernelEval v = rho0(s, wp, q_default);
        CHECK(v.value == cplx{});
        CHECK(v.est_error == 0.0);
    }
    CHECK(field_kernel(0.7, 0.2, wp, q_default).value == cplx{});
}

TEST_CASE("s = 0 value matches the closed form on the certified branch", "[kernel]") {
    // closed form: i pi sqrt(k0^2) / 2 on the Im sqrt > 0 root
    QuadratureSpec tight;
    tight.abs_tol = 1e-14;
    tight.rel_tol = 1e-12;
    const KernelEval v = rho0(0.0, wp80, tight);
    CHECK(std::abs(v.value - frozen::rho0_zero_g80) <=
          1e-9 * std::abs(frozen::rho0_zero_g80));
    CHECK(v.est_error <= std::max(tight.abs_tol, tight.rel_tol * std::abs(v.value)));
}

TEST_CASE("interior values match the arbitrary-precision quadrature", "[kernel]") {
    const KernelEval h = rho0(0.5, wp80, q_default);
    CHECK(std::abs(h.value - frozen::rho0_half_g80) <= 1e-9 * std::abs(frozen::rho0_half_g80));
    const KernelEval t = rho0(2.0, wp80, q_default);
    CHECK(std::abs(t.value - frozen::rho0_two_g80) <= 1e-9 * std::abs(frozen::rho0_two_g80));
}

TEST_CASE("values agree with the brute-force panel oracle", "[kernel]") {
    for (double s : {0.0, 0.05, 0.35, 1.0, 2.0}) {
        const cplx ref = oracle::rho0_brute(s, wp80.k0_sq);
        const KernelEval v = rho0(s, wp80, q_default);
        CHECK(std::abs(v.value - ref) <= 2e-11);
    }
}

TEST_CASE("error estimates are honest under tolerance halving", "[kernel]") {
    QuadratureSpec half = q_default;
    half.abs_tol *= 0.5;
    half.rel_tol *= 0.5;
    for (int i = 0; i < 20; ++i) {
        const double s = 2.0 * i / 19.0;
        const KernelEval a = rho0(s, wp80, q_default);
        const KernelEval b = rho0(s, wp80, half);
        CHECK(std::abs(a.value - b.value) < std::max(a.est_error, 5e-17));
        CHECK(a.est_error <= std::max(q_default.abs_tol, q_default.rel_tol * std::abs(a.value)));
    }
}

TEST_CASE("tail bound dominates the observed cutoff increment", "[kernel]") {
    // doubling the cutoff adds less than the analytic bound certifies
    for (double s : {0.1, 0.5, 1.5}) {
        const double c = std::abs(wp80.k0_sq);
        const double A = 64.0;
        detail::Integrand F{wp80.k0_sq, s};
        auto f = [&](double a) { return F.rho(a); };
        double err = 0.0;
        int panels = 0;
        const GaussRule& g = gauss_legendre(24);
        const cplx inc =
            detail::adapt_rec(f, g, A, 2.0 * A, 1e-16, 30, err, panels, 100000);
        CHECK(std::abs(inc) <= detail::tail_bound_rho(A, s, c));
    }
}

TEST_CASE("smoothness in s away from the origin", "[kernel]") {
    const double ds = 1e-4;
    cplx prev = rho0(0.2, wp80, q_default).value;
    for (int i = 1; i <= 8; ++i) {
        const cplx cur = rho0(0.2 + i * ds, wp80, q_default).value;
        CHECK(std::abs(cur - prev) <= 1e-3 * std::abs(cur) + 1e-12);
        prev = cur;
    }
}

TEST_CASE("undamped media are rejected, tiny budgets fail loudly", "[kernel]") {
    MaterialParams mp = frozen::g80();
    mp.G0 = 0.0;
    const ComplexWaveParams wp = derive_wave_params(mp);
    CHECK_THROWS_AS(rho0(0.5, wp, q_default), unsupported_regime_error);

    QuadratureSpec starved;
    starved.max_panels = 3;
    CHECK_THROWS_AS(rho0(0.5, wp80, starved), non_convergence_error);

    QuadratureSpec no_tail;
    no_tail.max_doublings = 1;
    no_tail.abs_tol = 1e-15;
    CHECK_THROWS_AS(rho0(0.0, wp80, no_tail), non_convergence_error);
}

TEST_CASE("regular kernel is odd and vanishes on the diagonal", "[kernel]") {
    CHECK(regular_kernel(0.3, 0.3, wp80, q_default) == cplx{});
    CHECK(regular_kernel(-0.9, -0.9, wp80, q_default) == cplx{});
    for (auto [y, e] : {std::pair{0.7, 0.2}, {0.1, -0.4}, {-0.8, 0.9}}) {
        const cplx a = regular_kernel(y, e, wp80, q_default);
        const cplx b = regular_kernel(e, y, wp80, q_default);
        CHECK(std::abs(a + b) <= 1e-15);
    }
    CHECK_THROWS_AS(regular_kernel(1.2, 0.0, wp80, q_default), std::invalid_argument);
}

TEST_CASE("regular kernel reduces to rho0 of the separation", "[kernel]") {
    // 0.75 - 0.25 is exactly 0.5 in binary, so the values must be identical
    const cplx k = regular_kernel(0.75, 0.25, wp80, q_default);
    const cplx r = rho0(0.5, wp80, q_default).value;
    CHECK(k == r);
    CHECK(std::abs(k - oracle::rho0_brute(0.5, wp80.k0_sq)) <= 2e-11);
}

TEST_CASE("field kernel special values", "[kernel]") {
    CHECK(field_kernel(0.0, 0.4, wp80, q_default).value == cplx{});
    CHECK(field_kernel(0.3, 0.0, wp80, q_default).value == cplx{});

    const KernelEval v = field_kernel(0.3, 0.4, wp80, q_default);
    CHECK(std::abs(v.value - frozen::field_g80_x03_s04) <=
          1e-9 * std::abs(frozen::field_g80_x03_s04));

    // odd in the separation, odd in x
    const cplx plus = field_kernel(0.3, 0.4, wp80, q_default).value;
    const cplx minus = field_kernel(0.3, -0.4, wp80, q_default).value;
    CHECK(std::abs(plus + minus) <= 1e-15);
    const cplx xminus = field_kernel(-0.3, 0.4, wp80, q_default).value;
    CHECK(std::abs(plus + xminus) <= 1e-15);

    // far-field oscillatory case stays within budget
    const KernelEval far = field_kernel(20.0, 0.01, wp80, q_default);
    CHECK(far.panels_used <= q_default.max_panels);
    CHECK(std::isfinite(std::abs(far.value)));
}

TEST_CASE("weak damping keeps the sharpening resonance resolved", "[kernel]") {
    // the denominator minimum narrows like Im k0^2 as G0 -> 0+, but the
    // seeded breakpoints keep the closed form reproduced at s = 0
    for (double G0 : {6.5e8, 6.5e6}) {
        MaterialParams mp = frozen::g80();
        mp.G0 = G0;
        const ComplexWaveParams wp = derive_wave_params(mp);
        const cplx closed = cplx(0.0, 1.0) * kPi * std::sqrt(wp.k0_sq) / 2.0;
        const KernelEval v = rho0(0.0, wp, q_default);
        CHECK(std::abs(v.value - closed) <= 1e-9 * std::abs(closed));
        CHECK(v.panels_used <= 200);
    }
}

TEST_CASE("negative or non-finite separations are rejected", "[kernel]") {
    CHECK_THROWS_AS(rho0(-0.1, wp80, q_default), std::invalid_argument);
    CHECK_THROWS_AS(rho0(std::numeric_limits<double>::quiet_NaN(), wp80, q_default),
                    std::invalid_argument);
    CHECK_THROWS_AS(field_kernel(std::numeric_limits<double>::infinity(), 0.2, wp80, q_default),
                    std::invalid_argument);
}

TEST_CASE("memo cache stays consistent under concurrent fills", "[kernel]") {
    RhoCache cache(wp80, q_default);
    std::vector<double> ss;
    for (int i = 0; i <= 40; ++i) ss.push_back(2.0 * i / 40.0);
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&] {
            for (double s : ss) (void)cache.at(s);
        });
    for (std::thread& th : pool) th.join();
    CHECK(cache.size() == ss.size());
    for (double s : ss) CHECK(cache.at(s).value == rho0(s, wp80, q_default).value);
}

TEST_CASE("memoized evaluations are identical to direct ones", "[kernel]") {
    RhoCache cache(wp80, q_default);
    const KernelEval direct = rho0(0.77, wp80, q_default);
    const KernelEval first = cache.at(0.77);
    const KernelEval second = cache.at(0.77);
    CHECK(first.value == direct.value);
    CHECK(second.value == direct.value);
    CHECK(cache.size() == 1);
}
