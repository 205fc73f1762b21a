#include "bihw/splines.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bihw/error.hpp"

namespace bihw {

KnotVector::KnotVector(int degree, std::vector<double> knots)
    : degree_(degree), knots_(std::move(knots))
{
    if (degree_ < 1)
        throw ParameterError("knot vector: degree must be >= 1");
    const auto n = knots_.size();
    const auto p = static_cast<std::size_t>(degree_);
    if (n < 2 * (p + 1))
        throw ParameterError("knot vector: need at least 2*(degree+1) knots");
    if (!std::is_sorted(knots_.begin(), knots_.end()))
        throw ParameterError("knot vector: knots must be nondecreasing");
    if (!(knots_.front() < knots_.back()))
        throw ParameterError("knot vector: empty parameter interval");
    for (std::size_t i = 1; i <= p; ++i) {
        if (knots_[i] != knots_.front() || knots_[n - 1 - i] != knots_.back())
            throw ParameterError("knot vector: end knots must be repeated degree+1 times");
    }
    if (knots_[p + 1] == knots_.front() || knots_[n - p - 2] == knots_.back())
        throw ParameterError("knot vector: end knots repeated more than degree+1 times");
    // interior multiplicities
    std::size_t run = 1;
    for (std::size_t i = p + 2; i < n - p - 1; ++i) {
        run = (knots_[i] == knots_[i - 1]) ? run + 1 : 1;
        if (run > p)
            throw ParameterError("knot vector: interior knot multiplicity exceeds degree");
    }
}

std::vector<double> KnotVector::breakpoints() const
{
    std::vector<double> out;
    out.reserve(knots_.size());
    for (double k : knots_)
        if (out.empty() || k != out.back())
            out.push_back(k);
    return out;
}

double KnotVector::mesh_size() const
{
    double h = 0.0;
    for (std::size_t i = 1; i < knots_.size(); ++i)
        h = std::max(h, knots_[i] - knots_[i - 1]);
    return h;
}

int KnotVector::find_span(double x) const
{
    const Interval iv = interval();
    if (!(x >= iv.a && x <= iv.b)) {
        std::ostringstream os;
        os << "eval: x = " << x << " outside [" << iv.a << ", " << iv.b << "]";
        throw DomainError(os.str());
    }
    const int last = n_basis() - 1;
    if (x >= iv.b)
        return last;
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    const int s = static_cast<int>(it - knots_.begin()) - 1;
    return std::min(s, last);
}

KnotVector make_knot_vector(int n_elements, int degree, int regularity, Interval interval)
{
    if (n_elements < 1)
        throw ParameterError("make_knot_vector: n_elements must be >= 1");
    if (degree < 1)
        throw ParameterError("make_knot_vector: degree must be >= 1");
    if (regularity < 0 || regularity > degree - 1)
        throw ParameterError("make_knot_vector: regularity must lie in [0, degree-1]");
    if (!(interval.a < interval.b))
        throw ParameterError("make_knot_vector: need a < b");

    const int mult = degree - regularity;
    std::vector<double> knots;
    knots.reserve(2 * (degree + 1) + (n_elements - 1) * mult);
    knots.insert(knots.end(), degree + 1, interval.a);
    for (int k = 1; k < n_elements; ++k) {
        const double x = interval.a + interval.length() * k / n_elements;
        knots.insert(knots.end(), mult, x);
    }
    knots.insert(knots.end(), degree + 1, interval.b);
    return KnotVector(degree, std::move(knots));
}

// Basis functions and derivatives on one span (Piegl & Tiller, A2.3).
BasisTable eval_basis(const KnotVector& kv, double x, int max_derivative)
{
    if (max_derivative < 0)
        throw ParameterError("eval_basis: max_derivative must be >= 0");
    const int p = kv.degree();
    const int span = kv.find_span(x);
    const auto U = kv.knots();

    Eigen::MatrixXd ndu(p + 1, p + 1);
    Eigen::VectorXd left(p + 1), right(p + 1);
    ndu(0, 0) = 1.0;
    for (int j = 1; j <= p; ++j) {
        left(j) = x - U[span + 1 - j];
        right(j) = U[span + j] - x;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            ndu(j, r) = right(r + 1) + left(j - r);
            const double temp = ndu(r, j - 1) / ndu(j, r);
            ndu(r, j) = saved + right(r + 1) * temp;
            saved = left(j - r) * temp;
        }
        ndu(j, j) = saved;
    }

    BasisTable out;
    out.first_active_index = span - p;
    out.values = Eigen::MatrixXd::Zero(max_derivative + 1, p + 1);
    for (int j = 0; j <= p; ++j)
        out.values(0, j) = ndu(j, p);

    const int n = std::min(max_derivative, p);
    Eigen::MatrixXd a(2, p + 1);
    for (int r = 0; r <= p; ++r) {
        int s1 = 0, s2 = 1;
        a(0, 0) = 1.0;
        for (int k = 1; k <= n; ++k) {
            double d = 0.0;
            const int rk = r - k;
            const int pk = p - k;
            if (r >= k) {
                a(s2, 0) = a(s1, 0) / ndu(pk + 1, rk);
                d = a(s2, 0) * ndu(rk, pk);
            }
            const int j1 = (rk >= -1) ? 1 : -rk;
            const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
            for (int j = j1; j <= j2; ++j) {
                a(s2, j) = (a(s1, j) - a(s1, j - 1)) / ndu(pk + 1, rk + j);
                d += a(s2, j) * ndu(rk + j, pk);
            }
            if (r <= pk) {
                a(s2, k) = -a(s1, k - 1) / ndu(pk + 1, r);
                d += a(s2, k) * ndu(r, pk);
            }
            out.values(k, r) = d;
            std::swap(s1, s2);
        }
    }
    double factor = p;
    for (int k = 1; k <= n; ++k) {
        out.values.row(k) *= factor;
        factor *= (p - k);
    }
    return out;
}

SplineSpace1D::SplineSpace1D(KnotVector kv, Constraint constraint)
    : kv_(std::move(kv)), constraint_(constraint)
{
    const int m = kv_.n_basis();
    int lo = 0, hi = m; // retained range [lo, hi)
    switch (constraint_) {
    case Constraint::none:
        break;
    case Constraint::zero_start:
        lo = 1;
        break;
    case Constraint::zero_end:
        hi = m - 1;
        break;
    case Constraint::clamped_both:
        lo = 2;
        hi = m - 2;
        break;
    }
    if (hi - lo < 1) {
        std::ostringstream os;
        os << "build_space: " << m << " basis functions leave an empty space under constraint "
           << to_string(constraint_);
        throw ParameterError(os.str());
    }
    first_active_ = lo;
    for (int i = lo; i < hi; ++i)
        active_.push_back(i);
}

int SplineSpace1D::local_index(int global) const
{
    const int local = global - first_active_;
    return (local >= 0 && local < dim()) ? local : -1;
}

Eigen::VectorXd SplineSpace1D::eval_all(double x, int derivative) const
{
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
    const BasisTable t = eval_basis(kv_, x, derivative);
    for (int j = 0; j <= degree(); ++j) {
        const int local = local_index(t.first_active_index + j);
        if (local >= 0)
            out(local) = t.values(derivative, j);
    }
    return out;
}

double SplineSpace1D::eval_function(std::span<const double> coeffs, double x, int derivative) const
{
    if (static_cast<int>(coeffs.size()) != dim())
        throw ParameterError("eval_function: coefficient length does not match dim");
    const BasisTable t = eval_basis(kv_, x, derivative);
    double s = 0.0;
    for (int j = 0; j <= degree(); ++j) {
        const int local = local_index(t.first_active_index + j);
        if (local >= 0)
            s += coeffs[local] * t.values(derivative, j);
    }
    return s;
}

SplineSpace1D build_space(KnotVector kv, Constraint constraint)
{
    return SplineSpace1D(std::move(kv), constraint);
}

Eigen::MatrixXd collocation_matrix(const SplineSpace1D& space, std::span<const double> points,
                                   int derivative)
{
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(points.size()), space.dim());
    for (std::size_t q = 0; q < points.size(); ++q) {
        const BasisTable t = eval_basis(space.knot_vector(), points[q], derivative);
        for (int j = 0; j <= space.degree(); ++j) {
            const int local = space.local_index(t.first_active_index + j);
            if (local >= 0)
                B(static_cast<Eigen::Index>(q), local) = t.values(derivative, j);
        }
    }
    return B;
}

const char* to_string(Constraint c)
{
    switch (c) {
    case Constraint::none: return "none";
    case Constraint::zero_start: return "zero_start";
    case Constraint::zero_end: return "zero_end";
    case Constraint::clamped_both: return "clamped_both";
    }
    return "?";
}

} // namespace bihw
