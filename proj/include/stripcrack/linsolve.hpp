#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stripcrack/assembly.hpp"

namespace stripcrack {

class singular_matrix_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Chebyshev coefficients {a_m} of the solved system plus solve metadata.
struct SpectralSolution {
    std::vector<cplx> coeffs;  // a_m, m = 1..n
    int n = 0;
    double residual = 0.0;  // ||(I+R)a - f||_2 of the final solve
    std::vector<std::pair<int, cplx>> history;  // (N, sum of coefficients) per ladder rung

    cplx coeff_sum() const {
        cplx s{};
        for (const cplx& a : coeffs) s += a;
        return s;
    }
};

class no_convergence_error : public std::runtime_error {
  public:
    no_convergence_error(const std::string& msg, SpectralSolution partial_solution)
        : std::runtime_error(msg), partial(std::move(partial_solution)) {}
    SpectralSolution partial;
};

/// Direct dense solve of A x = b by LU with row pivoting. A is row-major n x n.
inline std::vector<cplx> solve_dense(std::vector<cplx> A, std::vector<cplx> b) {
    const std::size_t n = b.size();
    if (A.size() != n * n) throw std::invalid_argument("solve_dense: shape mismatch");
    std::vector<std::size_t> piv(n);
    for (std::size_t i = 0; i < n; ++i) piv[i] = i;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = col;
        double best_mag = std::abs(A[piv[col] * n + col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double mag = std::abs(A[piv[r] * n + col]);
            if (mag > best_mag) {
                best_mag = mag;
                best = r;
            }
        }
        if (!(best_mag > 1e-300))
            throw singular_matrix_error("solve_dense: pivot modulus underflow");
        std::swap(piv[col], piv[best]);
        const cplx pivot = A[piv[col] * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            cplx& a_rc = A[piv[r] * n + col];
            const cplx factor = a_rc / pivot;
            a_rc = factor;
            for (std::size_t c = col + 1; c < n; ++c)
                A[piv[r] * n + c] -= factor * A[piv[col] * n + c];
        }
    }

    std::vector<cplx> x(n);
    for (std::size_t r = 0; r < n; ++r) {
        cplx s = b[piv[r]];
        for (std::size_t c = 0; c < r; ++c) s -= A[piv[r] * n + c] * x[c];
        x[r] = s;
    }
    for (std::size_t r = n; r-- > 0;) {
        cplx s = x[r];
        for (std::size_t c = r + 1; c < n; ++c) s -= A[piv[r] * n + c] * x[c];
        x[r] = s / A[piv[r] * n + r];
    }
    return x;
}

inline double residual_norm2(const std::vector<cplx>& A, const std::vector<cplx>& x,
                             const std::vector<cplx>& b) {
    const std::size_t n = b.size();
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        cplx acc = -b[r];
        for (std::size_t c = 0; c < n; ++c) acc += A[r * n + c] * x[c];
        s += std::norm(acc);
    }
    return std::sqrt(s);
}

namespace detail {

inline std::vector<cplx> lhs_matrix(const GalerkinSystem& sys) {
    std::vector<cplx> A = sys.matrix_r;
    for (int i = 0; i < sys.n; ++i) A[static_cast<std::size_t>(i) * sys.n + i] += 1.0;
    return A;
}

}  // namespace detail

/// Reduction method: solve growing truncations N0, N0+5, ... until the
/// coefficient sum (the quantity entering the stress intensity factor)
/// stabilizes to sif_tol, or N_max is exhausted.
inline SpectralSolution reduction_solve(const MaterialParams& mp, const QuadratureSpec& q,
                                        int N0 = 10, int N_max = 60, double sif_tol = 1e-9) {
    if (N0 < 4) throw std::invalid_argument("reduction_solve: N0 must be >= 4");
    if (N_max < N0) throw std::invalid_argument("reduction_solve: N_max must be >= N0");
    if (!(sif_tol > 0.0)) throw std::invalid_argument("reduction_solve: sif_tol must be positive");

    SpectralSolution sol;
    cplx prev_sum{};
    bool have_prev = false;
    for (int N = N0; N <= N_max; N += 5) {
        const GalerkinSystem sys = assemble(N, mp, q);
        const std::vector<cplx> A = detail::lhs_matrix(sys);
        sol.coeffs = solve_dense(A, sys.rhs);
        sol.n = N;
        sol.residual = residual_norm2(A, sol.coeffs, sys.rhs);
        const cplx sum = sol.coeff_sum();
        sol.history.emplace_back(N, sum);
        if (have_prev && std::abs(sum - prev_sum) <= sif_tol * std::abs(sum)) return sol;
        prev_sum = sum;
        have_prev = true;
    }
    throw no_convergence_error("reduction_solve: coefficient sum did not stabilize by N_max",
                               std::move(sol));
}

}  // namespace stripcrack
