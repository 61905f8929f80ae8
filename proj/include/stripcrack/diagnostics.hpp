#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "stripcrack/assembly.hpp"
#include "stripcrack/linsolve.hpp"
#include "stripcrack/postprocess.hpp"

namespace stripcrack {

/// Least-squares slope of log(y) against log(x).
inline double fitted_loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("fitted_loglog_slope: need at least two samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Decay diagnostics of the assembled matrix. Slopes are least-squares fits
/// on log-log over the tail third of indices.
struct DecayReport {
    std::vector<double> row_sums;  // S_n = sum_m |R_{nm}|
    double slope_rowsum = 0.0;
    double slope_n = 0.0;  // of max_m |R_{nm}| against n
    double slope_m = 0.0;  // of max_n |R_{nm}| against m
    bool pass_rowsum = false;  // slope_rowsum < 0
    bool pass_n = false;       // slope_n <= -1.5
    bool pass_m = false;       // slope_m <= -1.5
};

inline DecayReport regularity_report(const GalerkinSystem& sys) {
    if (sys.n < 12) throw std::invalid_argument("regularity_report: need N >= 12 for stable fits");
    const int N = sys.n;
    DecayReport rep;
    rep.row_sums.resize(N);
    std::vector<double> rowmax(N, 0.0), colmax(N, 0.0);
    for (int i = 0; i < N; ++i) {
        double s = 0.0;
        for (int j = 0; j < N; ++j) {
            const double v = std::abs(sys.matrix_r[static_cast<std::size_t>(i) * N + j]);
            s += v;
            rowmax[i] = std::max(rowmax[i], v);
            colmax[j] = std::max(colmax[j], v);
        }
        rep.row_sums[i] = s;
    }

    double peak = 0.0;
    for (double v : rep.row_sums) peak = std::max(peak, v);
    if (peak < 1e-300) {
        // vanished kernel: nothing to fit, every decay requirement holds
        const double ninf = -std::numeric_limits<double>::infinity();
        rep.slope_rowsum = rep.slope_n = rep.slope_m = ninf;
        rep.pass_rowsum = rep.pass_n = rep.pass_m = true;
        return rep;
    }

    const int start = (2 * N) / 3;  // tail third, 1-based index start+1
    std::vector<double> idx, ys_s, ys_n, ys_m;
    for (int i = start; i < N; ++i) {
        idx.push_back(i + 1.0);
        ys_s.push_back(rep.row_sums[i]);
        ys_n.push_back(rowmax[i]);
        ys_m.push_back(colmax[i]);
    }
    rep.slope_rowsum = fitted_loglog_slope(idx, ys_s);
    rep.slope_n = fitted_loglog_slope(idx, ys_n);
    rep.slope_m = fitted_loglog_slope(idx, ys_m);
    rep.pass_rowsum = rep.slope_rowsum < 0.0;
    rep.pass_n = rep.slope_n <= -1.5;
    rep.pass_m = rep.slope_m <= -1.5;
    return rep;
}

/// Independent discretization of the same integral equation by nodal
/// collocation: unknown density values at the kind-1 nodes, the equation
/// enforced at the kind-2 nodes (the discrete Cauchy identity is exact
/// there), plus the closure condition that the density integrates to zero.
/// Shares the rho0 evaluator with the Galerkin path but nothing else.
inline SpectralSolution collocation_oracle(const MaterialParams& mp, const QuadratureSpec& q,
                                           int N) {
    if (N < 4) throw std::invalid_argument("collocation_oracle: N must be >= 4");
    const ComplexWaveParams wp = derive_wave_params(mp);
    const int n = N + 1;
    const ChebRule r1 = cheb_rule(ChebKind::First, n);
    const bool dynamic = wp.k0_sq != cplx{};

    RhoCache cache(wp, q);
    const cplx r00 = dynamic ? cache.at(0.0).value : cplx{};

    std::vector<cplx> M(static_cast<std::size_t>(n) * n);
    std::vector<cplx> rhs(n);
    // discrete transform rows: a_m = (2/n) sum_j psi_j T_m(eta_j)
    std::vector<double> B(static_cast<std::size_t>(n - 1) * n);
    for (int m = 1; m < n; ++m)
        for (int j = 0; j < n; ++j)
            B[static_cast<std::size_t>(m - 1) * n + j] = (2.0 / n) * cheb_t(m, r1.nodes[j]);

    for (int i = 0; i + 1 < n; ++i) {
        const double th = (i + 1) * kPi / n;
        const double y = std::cos(th);
        cplx* row = &M[static_cast<std::size_t>(i) * n];
        for (int j = 0; j < n; ++j) row[j] = 1.0 / (2.0 * n * (r1.nodes[j] - y));
        if (dynamic) {
            for (int j = 0; j < n; ++j) {
                const double d = y - r1.nodes[j];
                if (d == 0.0) continue;
                const double sg = d > 0.0 ? 1.0 : -1.0;
                row[j] += (kPi / n) * sg * (cache.at(std::abs(d)).value - r00);
            }
            // diagonal-jump part applied exactly on the nodal interpolant:
            // int sgn(y-eta) T_m(eta)/sqrt(1-eta^2) deta = -2 sin(m th)/m
            for (int j = 0; j < n; ++j) {
                double acc = 0.0;
                for (int m = 1; m < n; ++m)
                    acc += (-2.0 * std::sin(m * th) / m) *
                           B[static_cast<std::size_t>(m - 1) * n + j];
                row[j] += r00 * acc;
            }
        }
        rhs[i] = mp.tau0 / wp.g_tilde;
    }
    // closure: the density has zero mean against the kind-1 weight
    for (int j = 0; j < n; ++j) M[static_cast<std::size_t>(n - 1) * n + j] = kPi / n;
    rhs[n - 1] = cplx{};

    const std::vector<cplx> psi = solve_dense(M, rhs);

    SpectralSolution sol;
    sol.n = N;
    sol.coeffs.resize(N);
    for (int m = 1; m <= N; ++m) {
        cplx a{};
        for (int j = 0; j < n; ++j) a += B[static_cast<std::size_t>(m - 1) * n + j] * psi[j];
        sol.coeffs[m - 1] = a;
    }
    sol.residual = residual_norm2(M, psi, rhs);
    sol.history.emplace_back(N, sol.coeff_sum());
    return sol;
}

struct ConvergenceRow {
    int n = 0;
    cplx coeff_sum{};
    double k_abs = 0.0;
    double increment = 0.0;  // |sum_i - sum_{i-1}| / |sum_i|; NaN for the first row
};

struct ConvergenceStudy {
    std::vector<ConvergenceRow> rows;
    double fitted_order = 0.0;  // log-log slope of increment against N
};

inline ConvergenceStudy convergence_study(const MaterialParams& mp, const QuadratureSpec& q,
                                          const std::vector<int>& N_list) {
    if (N_list.size() < 2) throw std::invalid_argument("convergence_study: need at least two sizes");
    for (std::size_t i = 1; i < N_list.size(); ++i)
        if (N_list[i] <= N_list[i - 1])
            throw std::invalid_argument("convergence_study: N_list must be ascending");

    ConvergenceStudy study;
    cplx prev{};
    for (std::size_t i = 0; i < N_list.size(); ++i) {
        const int N = N_list[i];
        const GalerkinSystem sys = assemble(N, mp, q);
        const std::vector<cplx> A = detail::lhs_matrix(sys);
        SpectralSolution sol;
        sol.coeffs = solve_dense(A, sys.rhs);
        sol.n = N;
        ConvergenceRow row;
        row.n = N;
        row.coeff_sum = sol.coeff_sum();
        row.k_abs = sif(sol, mp, 0.0).magnitude;
        row.increment = i == 0 ? std::numeric_limits<double>::quiet_NaN()
                               : std::abs(row.coeff_sum - prev) / std::abs(row.coeff_sum);
        prev = row.coeff_sum;
        study.rows.push_back(row);
    }

    std::vector<double> xs, ys;
    bool any_zero = false;
    for (std::size_t i = 1; i < study.rows.size(); ++i) {
        if (study.rows[i].increment == 0.0) {
            any_zero = true;
            continue;
        }
        xs.push_back(static_cast<double>(study.rows[i].n));
        ys.push_back(study.rows[i].increment);
    }
    if (xs.size() < 2)
        study.fitted_order = any_zero ? -std::numeric_limits<double>::infinity() : 0.0;
    else
        study.fitted_order = fitted_loglog_slope(xs, ys);
    return study;
}

}  // namespace stripcrack
