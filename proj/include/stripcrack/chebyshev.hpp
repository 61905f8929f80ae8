#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "stripcrack/quadrature.hpp"

namespace stripcrack {

/// Chebyshev polynomial of the first kind, forward recurrence.
inline double cheb_t(int m, double x) {
    if (m < 0) throw std::invalid_argument("cheb_t: m must be >= 0");
    if (!(x >= -1.0 && x <= 1.0)) throw std::invalid_argument("cheb_t: x must lie in [-1, 1]");
    if (m == 0) return 1.0;
    double t0 = 1.0, t1 = x;
    for (int j = 2; j <= m; ++j) {
        double t2 = 2.0 * x * t1 - t0;
        t0 = t1;
        t1 = t2;
    }
    return t1;
}

/// Chebyshev polynomial of the second kind; U_m(1) = m + 1.
inline double cheb_u(int m, double x) {
    if (m < 0) throw std::invalid_argument("cheb_u: m must be >= 0");
    if (!(x >= -1.0 && x <= 1.0)) throw std::invalid_argument("cheb_u: x must lie in [-1, 1]");
    if (m == 0) return 1.0;
    double u0 = 1.0, u1 = 2.0 * x;
    for (int j = 2; j <= m; ++j) {
        double u2 = 2.0 * x * u1 - u0;
        u0 = u1;
        u1 = u2;
    }
    return u1;
}

enum class ChebKind { First, Second };

/// Gauss-Chebyshev rule: kind 1 integrates against 1/sqrt(1-x^2),
/// kind 2 against sqrt(1-x^2).
struct ChebRule {
    ChebKind kind = ChebKind::First;
    int n = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline ChebRule cheb_rule(ChebKind kind, int n) {
    if (n < 1) throw std::invalid_argument("cheb_rule: n must be >= 1");
    ChebRule r;
    r.kind = kind;
    r.n = n;
    r.nodes.resize(n);
    r.weights.resize(n);
    if (kind == ChebKind::First) {
        for (int j = 1; j <= n; ++j) {
            r.nodes[j - 1] = std::cos((2.0 * j - 1.0) * kPi / (2.0 * n));
            r.weights[j - 1] = kPi / n;
        }
    } else {
        for (int j = 1; j <= n; ++j) {
            const double th = j * kPi / (n + 1.0);
            const double sn = std::sin(th);
            r.nodes[j - 1] = std::cos(th);
            r.weights[j - 1] = kPi / (n + 1.0) * sn * sn;
        }
    }
    return r;
}

/// Closed form of (1/pi) int_-1^1 T_m(eta) / ((eta - y) sqrt(1 - eta^2)) deta
/// for -1 < y < 1: the Cauchy transform maps weighted T_m to U_{m-1}.
inline double cauchy_transform_t(int m, double y) {
    if (m < 1) throw std::invalid_argument("cauchy_transform_t: m must be >= 1");
    if (!(y > -1.0 && y < 1.0))
        throw std::invalid_argument("cauchy_transform_t: y must lie in (-1, 1)");
    return cheb_u(m - 1, y);
}

}  // namespace stripcrack
