#pragma once

#include <iosfwd>

#include <Eigen/Dense>

#include "bihw/system.hpp"

namespace bihw {

/// Generalized Schur form of the temporal pencil:
///   C K_t D = E,  C (M_t - P_t) D = F,  B = E^{-1} F,
/// with C, D unitary and E, F, B upper triangular.
///
/// Computed from the complex Schur form K_t^{-1}(M_t - P_t) = D B D^* and a
/// QR factorization K_t D = C^* E, so that F = E B.
struct TemporalFactorization {
    Eigen::MatrixXcd C;
    Eigen::MatrixXcd D;
    Eigen::MatrixXcd E;
    Eigen::MatrixXcd F;
    Eigen::MatrixXcd B;

    int n_t() const { return static_cast<int>(B.rows()); }
};

/// Throws FactorizationError when K_t is numerically singular
/// (sigma_min <= 1e-12 sigma_max).
TemporalFactorization factorize_temporal(const Eigen::MatrixXd& K_t,
                                         const Eigen::MatrixXd& M_minus_P);

struct SolveReport {
    Eigen::VectorXd solution;
    double relative_residual = 0.0; ///< |A x - f| / |f| via apply_operator
    double imag_discard_norm = 0.0; ///< |Im x| / |x| before the real projection
    double flops_estimate = 0.0;
    double wall_time = 0.0;         ///< seconds
    int lu_factorizations = 0;      ///< distinct sparse LUs computed in step 3
    int refinement_steps = 0;       ///< block refinement steps for reused LUs
    int refinement_sweeps = 0;      ///< space-time corrections with extended residuals
    bool dense_fallback = false;
};

/// Steps 2-4 of the block-triangular Kronecker solve, followed by up to four
/// refinement sweeps that reuse the block LUs against residuals accumulated
/// in long double. Throws SolverError when a diagonal block B[k,k] K_x - M_x
/// is singular.
SolveReport solve(const SpaceTimeSystem& sys, const TemporalFactorization& fact);

/// Factor and solve; falls back to the dense oracle when K_t is singular.
/// wall_time covers factorization and solve.
SolveReport solve_system(const SpaceTimeSystem& sys);

/// Dense LU with partial pivoting on assemble_dense(sys), refined like solve().
Eigen::VectorXd solve_dense_oracle(const SpaceTimeSystem& sys);

/// Leading-order FLOP counts of the fast solver, per step.
struct FlopsEstimate {
    double step1 = 0.0; ///< n_t^3 + n_t^2 p
    double step2 = 0.0; ///< n_t p^2 + n_s n_t p + n_s n_t^2
    double step3 = 0.0; ///< C1 n_t + C2 n_t^2
    double step4 = 0.0; ///< n_s n_t^2
    double c1x = 0.0;   ///< one sparse spatial factor-and-solve
    double c2x = 0.0;   ///< one sparse spatial matrix-vector product
    double total = 0.0;
};

/// C1: banded LU (half bandwidth p) for d = 1; nested-dissection estimate
/// with separators of width p sqrt(n_s) for d = 2. C2: 2 nnz(K_x).
FlopsEstimate flops_model(double n_s, double n_t, int p, int d);

/// Structured-text summary used by the CLI.
void write_summary(std::ostream& os, const SolveReport& r);

} // namespace bihw
