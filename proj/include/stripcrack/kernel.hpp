#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "stripcrack/material.hpp"
#include "stripcrack/quadrature.hpp"

namespace stripcrack {

/// Result of one improper-integral evaluation.
struct KernelEval {
    cplx value{};
    double est_error = 0.0;   // quadrature estimate plus certified tail bound
    double cutoff_used = 0.0; // final finite upper limit A
    int panels_used = 0;
};

class non_convergence_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class unsupported_regime_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {

/// exp(z) - 1 without cancellation for small z.
inline cplx expm1c(cplx z) {
    const double em = std::expm1(z.real());
    const double sh = std::sin(0.5 * z.imag());
    return {em * std::cos(z.imag()) - 2.0 * sh * sh, (em + 1.0) * std::sin(z.imag())};
}

/// Integrands written so the large-alpha cancellation between the two
/// exponentials is done analytically:
///   alpha^2 e^{-gamma s}/(alpha^2-k0^2) - e^{-alpha s}
///     = e^{-alpha s} (alpha^2 E + k0^2) / (alpha^2 - k0^2),
///   E = expm1(-(gamma-alpha) s),  gamma - alpha = -k0^2/(gamma + alpha).
struct Integrand {
    cplx k0sq;
    double s;

    cplx rho(double a) const {
        const cplx w = cplx(a * a, 0.0) - k0sq;
        const cplx g = std::sqrt(w);
        const cplx E = expm1c(k0sq * s / (g + a));
        return std::exp(-a * s) * (a * a * E + k0sq) / w;
    }

    cplx field(double a, double x) const {
        const cplx w = cplx(a * a, 0.0) - k0sq;
        const cplx g = std::sqrt(w);
        const cplx E = expm1c(k0sq * s / (g + a));
        return std::exp(-a * s) * (a * a * E + k0sq) / (a * w) * std::sin(a * x);
    }
};

/// Upper bound on |int_A^inf| of the rho integrand; valid for A >= 2 |k0|.
/// Two envelopes are combined: the exponential-decay one (sharp for
/// moderate s) and an all-s algebraic one that stays finite as s -> 0,
/// from alpha^2 |E| e^{-alpha s} <= c e^{c s / A} for alpha >= A.
inline double tail_bound_rho(double A, double s, double c /* |k0^2| */) {
    const double k0abs = std::sqrt(c);
    if (A <= 2.0 * k0abs) return std::numeric_limits<double>::infinity();
    // int_A^inf dalpha / (alpha^2 - c), exactly
    const double inv_quad = 0.5 / k0abs * std::log((A + k0abs) / (A - k0abs));
    if (s == 0.0) return c * inv_quad;
    const double universal =
        c * (1.0 + std::exp(std::min(c * s / A, 700.0))) * inv_quad;
    const double pre = std::expm1(c * s / A) * A * A / (A * A - c) + c / (A * A - c);
    return std::min(universal, pre * std::exp(-A * s) / s);
}

/// Same for the field integrand (one extra power of alpha in the denominator).
/// The sine factor gives a second, oscillation-aware bound 2 p(A)/|x| with
/// p the decreasing envelope; the smaller of the two is used.
inline double tail_bound_field(double A, double s, double c, double x) {
    const double k0abs = std::sqrt(c);
    if (A <= 2.0 * k0abs) return std::numeric_limits<double>::infinity();
    // all-s envelope c (1 + e^{cs/A}) / (alpha (alpha^2 - c)) and its integral
    const double grow = 1.0 + std::exp(std::min(c * s / A, 700.0));
    const double env_universal = grow * c / (A * (A * A - c));
    const double int_universal = grow * (-0.5) * std::log1p(-c / (A * A));
    double envelope = env_universal, integrated = int_universal;
    if (s > 0.0) {
        const double pre = std::expm1(c * s / A) * A / (A * A - c) + c / (A * (A * A - c));
        envelope = std::min(envelope, pre * std::exp(-A * s));
        integrated = std::min(integrated, pre * std::exp(-A * s) / s);
    }
    return std::min(integrated, 2.0 * envelope / std::abs(x));
}

/// Geometric breakpoints for [lo, hi] starting at width h0, capped at `cap`.
inline std::vector<double> geometric_breakpoints(double lo, double hi, double h0, double cap) {
    std::vector<double> pts{lo};
    double h = std::min(h0, cap);
    double x = lo;
    while (x + 1.5 * h < hi) {
        x += h;
        pts.push_back(x);
        h = std::min(2.0 * h, cap);
    }
    pts.push_back(hi);
    return pts;
}

/// Extra breakpoints stacked geometrically around the denominator minimum at
/// alpha = sqrt(Re k0^2). Its half-width Im k0^2 / (2 alpha) can be far below
/// the base panel scale at weak damping, where unseeded panels would miss
/// the peak entirely.
inline void insert_resonance_breakpoints(std::vector<double>& pts, double lo, double hi,
                                         cplx k0sq) {
    if (!(k0sq.real() > 0.0)) return;
    const double center = std::sqrt(k0sq.real());
    if (center <= lo || center >= hi) return;
    const double width =
        std::max(std::abs(k0sq.imag()) / (2.0 * center), center * 1e-15);
    std::vector<double> extra{center};
    for (double w = width; w < hi - lo; w *= 2.0) {
        if (center - w > lo && center - w < center) extra.push_back(center - w);
        if (center + w < hi) extra.push_back(center + w);
    }
    pts.insert(pts.end(), extra.begin(), extra.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

template <class F>
cplx integrate_panels(F& f, const std::vector<double>& pts, double tol, const GaussRule& g,
                      double& err_acc, int& panels, int max_panels) {
    const double share = tol / static_cast<double>(pts.size() - 1);
    cplx total{};
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        total += adapt_rec(f, g, pts[i], pts[i + 1], share, 44, err_acc, panels, max_panels);
    return total;
}

template <class F>
cplx integrate_segment(F& f, double lo, double hi, double h0, double cap, double tol,
                       const GaussRule& g, double& err_acc, int& panels, int max_panels) {
    const std::vector<double> pts = geometric_breakpoints(lo, hi, h0, cap);
    return integrate_panels(f, pts, tol, g, err_acc, panels, max_panels);
}

template <class F, class TailFn>
KernelEval improper_integral(F&& f, const QuadratureSpec& q, cplx k0sq, double osc_cap,
                             TailFn&& tail, const char* what) {
    const GaussRule& g = gauss_legendre(q.panel_order);
    const double k0abs = std::sqrt(std::abs(k0sq));
    const double A0 = std::max(q.initial_cutoff, 8.0 * k0abs);
    double tighten = 1.0;
    for (int attempt = 0; attempt < 4; ++attempt, tighten *= 1e-3) {
        const double target = q.abs_tol * tighten;
        double err = 0.0;
        int panels = 0;
        cplx value{};
        double A = A0;
        try {
            std::vector<double> pts = geometric_breakpoints(
                0.0, A0, std::max(k0abs / 4.0, A0 * 0x1p-40), osc_cap);
            insert_resonance_breakpoints(pts, 0.0, A0, k0sq);
            value = integrate_panels(f, pts, 0.5 * target, g, err, panels, q.max_panels);
            int doublings = 0;
            while (tail(A) > 0.25 * target) {
                if (++doublings > q.max_doublings)
                    throw non_convergence_error(std::string(what) +
                                                ": tail not certified within max_doublings");
                value += integrate_segment(f, A, 2.0 * A, A, osc_cap,
                                           0.25 * target / q.max_doublings, g, err, panels,
                                           q.max_panels);
                A *= 2.0;
            }
        } catch (const panel_budget_error&) {
            throw non_convergence_error(std::string(what) + ": panel budget exhausted");
        }
        const double est = err + tail(A);
        if (est <= std::max(q.abs_tol, q.rel_tol * std::abs(value)))
            return {value, est, A, panels};
    }
    throw non_convergence_error(std::string(what) + ": requested tolerance unreachable");
}

}  // namespace detail

/// rho0(s) = int_0^inf [alpha^2 e^{-gamma(alpha) s}/(alpha^2 - k0^2) - e^{-alpha s}] dalpha.
/// The sgn(y - eta) factor of the physical kernel is applied by regular_kernel.
inline KernelEval rho0(double s, const ComplexWaveParams& wp, const QuadratureSpec& q) {
    q.validate();
    if (!std::isfinite(s) || s < 0.0)
        throw std::invalid_argument("rho0: s must be finite and >= 0");
    if (wp.k0_sq == cplx{}) return {cplx{}, 0.0, 0.0, 0};
    if (wp.k0_sq.imag() == 0.0 && wp.k0_sq.real() > 0.0)
        throw unsupported_regime_error("rho0: real positive k0^2 puts the pole on the path");

    const double c = std::abs(wp.k0_sq);
    detail::Integrand F{wp.k0_sq, s};
    auto f = [&F](double a) { return F.rho(a); };
    auto tail = [&](double A) { return detail::tail_bound_rho(A, s, c); };
    return detail::improper_integral(f, q, wp.k0_sq, std::numeric_limits<double>::infinity(),
                                     tail, "rho0");
}

/// Odd regular kernel entering the integral equation: sgn(y - eta) rho0(|y - eta|),
/// with sgn(0) := 0 so the kernel vanishes on the diagonal.
inline cplx regular_kernel(double y, double eta, const ComplexWaveParams& wp,
                           const QuadratureSpec& q) {
    if (!(y >= -1.0 && y <= 1.0) || !(eta >= -1.0 && eta <= 1.0))
        throw std::invalid_argument("regular_kernel: arguments must lie in [-1, 1]");
    if (y == eta) return cplx{};
    const double sg = y > eta ? 1.0 : -1.0;
    return sg * rho0(std::abs(y - eta), wp, q).value;
}

/// Field kernel R(x, y - eta): the sine-transformed counterpart used for
/// displacement reconstruction. sgn and |.| are applied to s_signed here;
/// sgn(0) := 0 as in regular_kernel.
inline KernelEval field_kernel(double x, double s_signed, const ComplexWaveParams& wp,
                               const QuadratureSpec& q) {
    q.validate();
    if (!std::isfinite(x) || !std::isfinite(s_signed))
        throw std::invalid_argument("field_kernel: arguments must be finite");
    if (x == 0.0 || s_signed == 0.0 || wp.k0_sq == cplx{}) return {cplx{}, 0.0, 0.0, 0};
    if (wp.k0_sq.imag() == 0.0 && wp.k0_sq.real() > 0.0)
        throw unsupported_regime_error("field_kernel: real positive k0^2 puts the pole on the path");

    const double s = std::abs(s_signed);
    const double sg = s_signed > 0.0 ? 1.0 : -1.0;
    const double c = std::abs(wp.k0_sq);
    detail::Integrand F{wp.k0_sq, s};
    auto f = [&F, x](double a) { return F.field(a, x); };
    auto tail = [&](double A) { return detail::tail_bound_field(A, s, c, x); };
    const double osc_cap = 0.5 * q.panel_order / std::abs(x);
    KernelEval r = detail::improper_integral(f, q, wp.k0_sq, osc_cap, tail,
                                             "field_kernel");
    r.value *= sg;
    return r;
}

/// Memoized rho0 values keyed by s. The kernel depends on (y, eta) only
/// through y - eta, and structured grids repeat many differences. Fills are
/// idempotent, so concurrent use behaves as-if-pure.
class RhoCache {
  public:
    RhoCache(const ComplexWaveParams& wp, const QuadratureSpec& q) : wp_(wp), q_(q) {
        q.validate();
    }

    KernelEval at(double s) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find(s);
            if (it != memo_.end()) return it->second;
        }
        KernelEval v = rho0(s, wp_, q_);
        std::lock_guard<std::mutex> lock(mu_);
        return memo_.emplace(s, v).first->second;
    }

    const ComplexWaveParams& wave() const { return wp_; }
    const QuadratureSpec& spec() const { return q_; }
    std::size_t size() const {
        std::lock_guard<std::mutex> lock(mu_);
        return memo_.size();
    }

  private:
    ComplexWaveParams wp_;
    QuadratureSpec q_;
    std::map<double, KernelEval> memo_;
    mutable std::mutex mu_;
};

}  // namespace stripcrack
