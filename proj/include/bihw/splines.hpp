#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace bihw {

struct Interval {
    double a = 0.0;
    double b = 1.0;

    double length() const { return b - a; }
};

/// Open knot vector: first and last knot repeated exactly degree+1 times,
/// interior multiplicities at most degree.
class KnotVector {
public:
    KnotVector(int degree, std::vector<double> knots);

    int degree() const { return degree_; }
    std::span<const double> knots() const { return knots_; }
    int n_basis() const { return static_cast<int>(knots_.size()) - degree_ - 1; }
    Interval interval() const { return {knots_.front(), knots_.back()}; }

    /// Distinct knot values in increasing order.
    std::vector<double> breakpoints() const;
    /// Largest distance between consecutive distinct knots.
    double mesh_size() const;
    /// Number of nonempty knot spans.
    int n_elements() const { return static_cast<int>(breakpoints().size()) - 1; }

    /// Index s with knots[s] <= x < knots[s+1]; the last nonempty span at x = b.
    int find_span(double x) const;

private:
    int degree_;
    std::vector<double> knots_;
};

/// Uniform open knot vector with interior breakpoints of multiplicity
/// degree - regularity, i.e. C^regularity splines.
KnotVector make_knot_vector(int n_elements, int degree, int regularity, Interval interval);

/// Values and derivatives of the degree+1 basis functions that may be
/// nonzero at a point.
struct BasisTable {
    int first_active_index = 0;
    /// (max_derivative+1) x (degree+1); row r holds r-th derivatives.
    Eigen::MatrixXd values;
};

/// Cox-de Boor evaluation. Interior knots are evaluated as right limits,
/// the right endpoint as a left limit.
BasisTable eval_basis(const KnotVector& kv, double x, int max_derivative);

enum class Constraint { none, zero_start, zero_end, clamped_both };

/// Univariate spline space with boundary constraints applied by dropping
/// the basis functions that do not vanish (resp. whose derivative does not
/// vanish) at the constrained endpoint.
class SplineSpace1D {
public:
    SplineSpace1D(KnotVector kv, Constraint constraint);

    const KnotVector& knot_vector() const { return kv_; }
    Constraint constraint() const { return constraint_; }
    int degree() const { return kv_.degree(); }
    int dim() const { return static_cast<int>(active_.size()); }
    double mesh_size() const { return kv_.mesh_size(); }
    Interval interval() const { return kv_.interval(); }

    /// Global basis indices retained by the constraint, increasing.
    std::span<const int> active_indices() const { return active_; }
    /// Local (constrained) index of a global basis index, or -1.
    int local_index(int global) const;

    /// Values of all dim() constrained basis functions (derivative order
    /// `derivative`) at x, written densely.
    Eigen::VectorXd eval_all(double x, int derivative) const;

    /// Evaluate the function sum_j coeffs[j] * phi_j (and its derivative).
    double eval_function(std::span<const double> coeffs, double x, int derivative) const;

private:
    KnotVector kv_;
    Constraint constraint_;
    std::vector<int> active_;
    int first_active_ = 0;
};

SplineSpace1D build_space(KnotVector kv, Constraint constraint);

/// Dense (n_points x dim) collocation matrix of derivative `derivative`.
Eigen::MatrixXd collocation_matrix(const SplineSpace1D& space, std::span<const double> points,
                                   int derivative);

const char* to_string(Constraint c);

} // namespace bihw
