#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "stripcrack/chebyshev.hpp"
#include "support/oracles.hpp"

using namespace stripcrack;
using Catch::Approx;

TEST_CASE("first-kind values", "[chebyshev]") {
    for (double x : {-1.0, -0.3, 0.0, 0.71, 1.0}) CHECK(cheb_t(0, x) == 1.0);
    CHECK(cheb_t(3, 0.5) == Approx(-1.0).margin(1e-15));
    CHECK(cheb_t(7, 0.3) == Approx(std::cos(7.0 * std::acos(0.3))).margin(1e-14));
    CHECK_THROWS_AS(cheb_t(2, 1.0000001), std::invalid_argument);
    CHECK_THROWS_AS(cheb_t(-1, 0.0), std::invalid_argument);
}

TEST_CASE("second-kind values", "[chebyshev]") {
    for (double x : {-1.0, 0.0, 0.9}) CHECK(cheb_u(0, x) == 1.0);
    CHECK(cheb_u(2, 0.5) == Approx(0.0).margin(1e-15));
    CHECK(cheb_u(5, 1.0) == Approx(6.0).margin(1e-12));
    const double th = std::acos(-0.2);
    CHECK(cheb_u(5, -0.2) == Approx(std::sin(6.0 * th) / std::sin(th)).margin(1e-13));
    CHECK_THROWS_AS(cheb_u(1, -1.01), std::invalid_argument);
}

TEST_CASE("recurrence agrees with the trigonometric form up to degree 200", "[chebyshev]") {
    for (double x : {-0.97, -0.5, -0.113, 0.0, 0.25, 0.66, 0.999}) {
        const double th = std::acos(x);
        for (int m : {1, 2, 5, 17, 60, 141, 200}) {
            CHECK(cheb_t(m, x) == Approx(std::cos(m * th)).margin(1e-12));
            CHECK(cheb_u(m, x) == Approx(std::sin((m + 1) * th) / std::sin(th)).margin(1e-12));
        }
    }
}

TEST_CASE("rule construction", "[chebyshev]") {
    const ChebRule one = cheb_rule(ChebKind::First, 1);
    CHECK(one.nodes[0] == Approx(0.0).margin(1e-16));
    CHECK(one.weights[0] == Approx(kPi));
    CHECK_THROWS_AS(cheb_rule(ChebKind::First, 0), std::invalid_argument);

    for (ChebKind kind : {ChebKind::First, ChebKind::Second}) {
        const ChebRule r = cheb_rule(kind, 16);
        double ws = 0.0;
        for (double w : r.weights) {
            CHECK(w > 0.0);
            ws += w;
        }
        CHECK(ws == Approx(kind == ChebKind::First ? kPi : kPi / 2).epsilon(1e-14));
        for (double x : r.nodes) CHECK((x > -1.0 && x < 1.0));
    }
}

TEST_CASE("kind-1 rule integrates weighted polynomials exactly", "[chebyshev]") {
    const int n = 16;
    const ChebRule r = cheb_rule(ChebKind::First, n);
    for (int i = 0; i <= 12; ++i) {
        for (int j = 0; j <= 12; ++j) {
            if (i + j > 2 * n - 1) continue;
            double s = 0.0;
            for (int q = 0; q < n; ++q)
                s += r.weights[q] * cheb_t(i, r.nodes[q]) * cheb_t(j, r.nodes[q]);
            const double exact = i == j ? (i == 0 ? kPi : kPi / 2) : 0.0;
            CHECK(s == Approx(exact).margin(1e-13));
        }
    }
}

TEST_CASE("kind-2 rule reproduces second-kind orthogonality", "[chebyshev]") {
    const ChebRule r = cheb_rule(ChebKind::Second, 16);
    double s13 = 0.0, s22 = 0.0;
    for (int q = 0; q < r.n; ++q) {
        s13 += r.weights[q] * cheb_u(1, r.nodes[q]) * cheb_u(3, r.nodes[q]);
        s22 += r.weights[q] * cheb_u(2, r.nodes[q]) * cheb_u(2, r.nodes[q]);
    }
    CHECK(s13 == Approx(0.0).margin(1e-13));
    CHECK(s22 == Approx(kPi / 2).epsilon(1e-14));
}

TEST_CASE("spectral relation closed form", "[chebyshev]") {
    CHECK(cauchy_transform_t(1, 0.0) == 1.0);
    CHECK(cauchy_transform_t(3, 0.5) == Approx(0.0).margin(1e-15));
    CHECK_THROWS_AS(cauchy_transform_t(0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(cauchy_transform_t(2, 1.0), std::invalid_argument);
}

TEST_CASE("spectral relation against principal-value quadrature", "[chebyshev]") {
    CHECK(oracle::pv_cauchy_transform(4, 0.25) ==
          Approx(cauchy_transform_t(4, 0.25)).margin(1e-8));
    for (int m = 1; m <= 12; ++m) {
        for (double y : {-0.83, -0.41, -0.07, 0.18, 0.52, 0.9}) {
            CHECK(oracle::pv_cauchy_transform(m, y) ==
                  Approx(cauchy_transform_t(m, y)).margin(1e-7));
        }
    }
}
