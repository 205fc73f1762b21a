#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "bihw/splines.hpp"

namespace bihw {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Gram matrix entries[i][j] = int D^a phi_i^test * D^b phi_j^trial.
/// Rows follow the test space, columns the trial space.
struct Gram1D {
    int deriv_row = 0;
    int deriv_col = 0;
    Eigen::MatrixXd entries;
};

/// Per-span Gauss quadrature with max(degree)+1 points unless
/// `points_per_span` is positive.
Gram1D assemble_gram_1d(const SplineSpace1D& test, const SplineSpace1D& trial, int a, int b,
                        int points_per_span = 0);

enum class Stabilization { none, iga_penalty, fem_projection };

const char* to_string(Stabilization s);

/// Temporal factors of the space-time operator: rows are test (zero_end),
/// columns trial (zero_start).
struct TemporalMatrices {
    Eigen::MatrixXd M; ///< mass
    Eigen::MatrixXd K; ///< first-derivative stiffness
    Eigen::MatrixXd P; ///< stabilization, subtracted from M
};

TemporalMatrices assemble_temporal(const SplineSpace1D& trial, const SplineSpace1D& test, int p_t,
                                   double delta, Stabilization mode);

/// entries[i][j] = int (Pi psi_j^trial)(Pi psi_i^test), Pi the elementwise
/// L2 projection onto discontinuous polynomials of degree `projection_degree`.
Eigen::MatrixXd assemble_projected_mass(const SplineSpace1D& test, const SplineSpace1D& trial,
                                        int projection_degree);

/// Mass and bi-Laplacian stiffness of the clamped spline space on a box.
/// For d = 2 the first entry of `spaces` is the x direction, which is the
/// fastest-running index.
struct SpatialOperators {
    int d = 1;
    SparseMatrix M;
    SparseMatrix K;
    int n_s = 0;
    std::vector<SplineSpace1D> spaces;
};

SpatialOperators assemble_spatial(std::vector<SplineSpace1D> spaces, int d);

/// Sparse Kronecker product A (x) B.
SparseMatrix kron(const SparseMatrix& A, const SparseMatrix& B);

/// f(x, t) = sum_k g_k(t) * prod_l w_{k,l}(x_l).
struct SeparableTerm {
    std::function<double(double)> time;
    std::vector<std::function<double(double)>> space;
};

struct SeparableForcing {
    std::vector<SeparableTerm> terms;

    double operator()(std::span<const double> x, double t) const;
};

/// Load vector, ordered space-fastest: index = i_s + n_s * i_t.
Eigen::VectorXd assemble_load(const std::vector<SplineSpace1D>& spatial_test,
                              const SplineSpace1D& temporal_test, const SeparableForcing& f);

/// 1D load vector int w(x) phi_i(x) dx with degree+2 Gauss points per span.
Eigen::VectorXd integrate_against_basis(const SplineSpace1D& space,
                                        const std::function<double(double)>& w);

/// Coordinate-format dump: one "row col value" line per stored entry.
void write_coordinate(std::ostream& os, const SparseMatrix& A);
void write_coordinate(std::ostream& os, const Eigen::MatrixXd& A);

} // namespace bihw
