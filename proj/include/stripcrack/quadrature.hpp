#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace stripcrack {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Tolerances and truncation controls for the improper-integral machinery.
struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    double initial_cutoff = 64.0;  // first finite upper limit A
    int max_doublings = 20;        // cap on extending A
    int panel_order = 16;          // Gauss order per panel
    int max_panels = 4096;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
            throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
        if (!(initial_cutoff > 0.0))
            throw std::invalid_argument("QuadratureSpec: initial_cutoff must be positive");
        if (panel_order < 8)
            throw std::invalid_argument("QuadratureSpec: panel_order must be >= 8");
        if (max_doublings < 1)
            throw std::invalid_argument("QuadratureSpec: max_doublings must be >= 1");
        if (max_panels < 1)
            throw std::invalid_argument("QuadratureSpec: max_panels must be >= 1");
    }
};

struct GaussRule {
    std::vector<double> nodes;  // on (-1, 1)
    std::vector<double> weights;
};

namespace detail {

inline GaussRule make_gauss_legendre(int p) {
    GaussRule r;
    r.nodes.resize(p);
    r.weights.resize(p);
    for (int i = 0; i < (p + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (p + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= p; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = p * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = -x;
        r.nodes[p - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.weights[i] = w;
        r.weights[p - 1 - i] = w;
    }
    return r;
}

}  // namespace detail

/// Cached Gauss-Legendre rule of order p on [-1, 1].
inline const GaussRule& gauss_legendre(int p) {
    if (p < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it == cache.end()) it = cache.emplace(p, detail::make_gauss_legendre(p)).first;
    return it->second;
}

namespace detail {

struct panel_budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class F>
cplx gauss_panel(F& f, const GaussRule& g, double a, double b) {
    const double m = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx s{};
    for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * f(m + h * g.nodes[i]);
    return h * s;
}

template <class F>
cplx adapt_rec(F& f, const GaussRule& g, double a, double b, double tol, int depth,
               double& err_acc, int& panel_count, int max_panels) {
    if (++panel_count > max_panels)
        throw panel_budget_error("adaptive quadrature: panel budget exhausted");
    const cplx whole = gauss_panel(f, g, a, b);
    const double m = 0.5 * (a + b);
    const cplx halves = gauss_panel(f, g, a, m) + gauss_panel(f, g, m, b);
    const double d = std::abs(whole - halves);
    if (d <= tol || depth <= 0) {
        err_acc += d;
        return halves;
    }
    return adapt_rec(f, g, a, m, 0.5 * tol, depth - 1, err_acc, panel_count, max_panels) +
           adapt_rec(f, g, m, b, 0.5 * tol, depth - 1, err_acc, panel_count, max_panels);
}

}  // namespace detail

/// Adaptive Gauss quadrature of a complex-valued integrand on [a, b].
/// Splits panels until the whole-vs-halves discrepancy falls below tol.
template <class F>
cplx adaptive_gauss(F&& f, double a, double b, double tol, int max_depth = 44,
                    double* err_out = nullptr, int order = 15) {
    if (!(b >= a)) throw std::invalid_argument("adaptive_gauss: bad interval");
    if (a == b) return cplx{};
    const GaussRule& g = gauss_legendre(order);
    double err = 0.0;
    int panels = 0;
    cplx v = detail::adapt_rec(f, g, a, b, tol, max_depth, err, panels, 1 << 22);
    if (err_out) *err_out = err;
    return v;
}

}  // namespace stripcrack
