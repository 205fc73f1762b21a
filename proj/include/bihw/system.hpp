#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "bihw/assembly.hpp"
#include "bihw/splines.hpp"

namespace bihw {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational&, const Rational&) = default;
};

/// Stability threshold rho_p of the maximal-regularity temporal scheme:
/// a mode with eigenvalue lambda is stable iff h_t^2 * lambda < rho_p.
Rational rho_lookup(int p_t);
/// Smallest penalty constant delta_p giving unconditional stability.
Rational delta_lookup(int p_t);

struct DiscretizationConfig {
    int d = 1;
    int p_s = 2;
    int p_t = 2;
    int reg_s = -1; ///< spatial regularity, -1 means p_s - 1
    int reg_t = -1; ///< temporal regularity, -1 means p_t - 1
    int n_el_s = 8; ///< elements per spatial direction on (0,1)
    int n_el_t = 8; ///< elements on (0,T)
    double T = 1.0;
    Stabilization mode = Stabilization::iga_penalty;
    std::optional<double> delta; ///< penalty constant; defaults to 10^-p_t
    SeparableForcing forcing;

    int spatial_regularity() const { return reg_s < 0 ? p_s - 1 : reg_s; }
    int temporal_regularity() const { return reg_t < 0 ? p_t - 1 : reg_t; }
    double effective_delta() const;
};

struct SystemMeta {
    int p_s = 0, p_t = 0;
    int reg_s = 0, reg_t = 0;
    double h_s = 0.0, h_t = 0.0;
    double delta = 0.0;
    Stabilization mode = Stabilization::none;
    double T = 1.0;
};

/// Space-time system A x = f with A = (M_t - P_t) (x) K_x - K_t (x) M_x.
/// Unknowns are ordered space-fastest: x[i_s + n_s * i_t].
struct SpaceTimeSystem {
    TemporalMatrices temporal;
    SpatialOperators spatial;
    SplineSpace1D time_trial;
    SplineSpace1D time_test;
    Eigen::VectorXd rhs;
    SystemMeta meta;

    int n_s() const { return spatial.n_s; }
    int n_t() const { return static_cast<int>(temporal.M.rows()); }
    Eigen::Index n_dof() const { return static_cast<Eigen::Index>(n_s()) * n_t(); }
};

SpaceTimeSystem build_system(const DiscretizationConfig& cfg);

/// Build from already assembled factors (used by tests and bindings).
SpaceTimeSystem make_system(TemporalMatrices temporal, SpatialOperators spatial,
                            SplineSpace1D time_trial, SplineSpace1D time_test,
                            Eigen::VectorXd rhs, SystemMeta meta);

/// Matrix-free A x via (B (x) C) vec(X) = vec(C X B^T).
Eigen::VectorXd apply_operator(const SpaceTimeSystem& sys, const Eigen::VectorXd& x);

/// f - A x accumulated in long double and rounded; the residual used by
/// iterative refinement.
Eigen::VectorXd residual_extended(const SpaceTimeSystem& sys, const Eigen::VectorXd& x);

/// Dense size cap: BIHW_MAX_DENSE if set, otherwise 20000.
Eigen::Index dense_size_cap();

/// Explicit Kronecker expansion of A. Throws SizeError above the cap.
Eigen::MatrixXd assemble_dense(const SpaceTimeSystem& sys, std::optional<Eigen::Index> cap = {});

struct CflReport {
    double lambda_max = 0.0; ///< largest eigenvalue of K_x v = lambda M_x v
    Rational rho;
    double h_t_max = 0.0; ///< sqrt(rho / lambda_max)
    double h_t = 0.0;
    bool satisfied = false; ///< h_t < h_t_max
    bool advisory = false;  ///< rho tabulated for maximal temporal regularity only
    std::string method;     ///< "dense" or "power"
    int iterations = 0;
};

/// `dense_limit`: largest n_s handled by a dense generalized eigensolve;
/// beyond it a power iteration on M_x^{-1} K_x is used.
CflReport cfl_check(const SpatialOperators& spatial, int p_t, double h_t,
                    bool reduced_temporal_regularity = false, int dense_limit = 2000);

/// Largest generalized eigenvalue of (K, M) by power iteration with a
/// Cholesky-applied M^{-1}; relative tolerance `tol`.
double max_generalized_eigenvalue_power(const SparseMatrix& K, const SparseMatrix& M,
                                        double tol, int max_iter, int* iterations = nullptr);

} // namespace bihw
