#include "bihw/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "bihw/error.hpp"
#include "bihw/quadrature.hpp"

namespace bihw {

namespace {

void require_same_breakpoints(const SplineSpace1D& u, const SplineSpace1D& v)
{
    const auto a = u.knot_vector().breakpoints();
    const auto b = v.knot_vector().breakpoints();
    const double tol = 1e-14 * std::max(1.0, u.interval().length());
    const bool same = a.size() == b.size()
        && std::equal(a.begin(), a.end(), b.begin(),
                      [tol](double x, double y) { return std::abs(x - y) <= tol; });
    if (!same)
        throw ParameterError("assembly: test and trial spaces have different breakpoints");
}

// Legendre polynomials P_0..P_n at xi in [-1,1].
void legendre(double xi, int n, std::vector<double>& out)
{
    out.assign(n + 1, 0.0);
    out[0] = 1.0;
    if (n >= 1)
        out[1] = xi;
    for (int k = 2; k <= n; ++k)
        out[k] = ((2.0 * k - 1.0) * xi * out[k - 1] - (k - 1.0) * out[k - 2]) / k;
}

} // namespace

Gram1D assemble_gram_1d(const SplineSpace1D& test, const SplineSpace1D& trial, int a, int b,
                        int points_per_span)
{
    require_same_breakpoints(test, trial);
    if (a < 0 || b < 0 || a > test.degree() || b > trial.degree())
        throw ParameterError("assemble_gram_1d: derivative order exceeds degree");

    const int nq = points_per_span > 0 ? points_per_span
                                       : std::max(test.degree(), trial.degree()) + 1;
    const CompositeRule rule = composite_rule(test.knot_vector(), nq);

    Gram1D g;
    g.deriv_row = a;
    g.deriv_col = b;
    g.entries = Eigen::MatrixXd::Zero(test.dim(), trial.dim());

    const int pv = test.degree(), pu = trial.degree();
    std::vector<int> li(pv + 1), lj(pu + 1);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const double x = rule.points[q], w = rule.weights[q];
        const BasisTable tv = eval_basis(test.knot_vector(), x, a);
        const BasisTable tu = eval_basis(trial.knot_vector(), x, b);
        for (int i = 0; i <= pv; ++i)
            li[i] = test.local_index(tv.first_active_index + i);
        for (int j = 0; j <= pu; ++j)
            lj[j] = trial.local_index(tu.first_active_index + j);
        for (int i = 0; i <= pv; ++i) {
            if (li[i] < 0)
                continue;
            const double vi = w * tv.values(a, i);
            for (int j = 0; j <= pu; ++j)
                if (lj[j] >= 0)
                    g.entries(li[i], lj[j]) += vi * tu.values(b, j);
        }
    }
    return g;
}

const char* to_string(Stabilization s)
{
    switch (s) {
    case Stabilization::none: return "none";
    case Stabilization::iga_penalty: return "iga";
    case Stabilization::fem_projection: return "fem";
    }
    return "?";
}

Eigen::MatrixXd assemble_projected_mass(const SplineSpace1D& test, const SplineSpace1D& trial,
                                        int projection_degree)
{
    require_same_breakpoints(test, trial);
    if (projection_degree < 0)
        throw ParameterError("assemble_projected_mass: negative projection degree");

    const int q = projection_degree;
    const int pv = test.degree(), pu = trial.degree();
    // integrand psi * L_k has degree <= max(p) + q
    const int nq = (std::max(pv, pu) + q) / 2 + 1;
    const QuadratureRule ref = gauss_rule(nq);
    const auto bp = test.knot_vector().breakpoints();

    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(test.dim(), trial.dim());
    std::vector<double> leg;
    for (std::size_t e = 0; e + 1 < bp.size(); ++e) {
        const double x0 = bp[e], h = bp[e + 1] - bp[e];
        const double mid = x0 + 0.5 * h;
        // c_v(k, i): Legendre coefficient k of the i-th local test function
        const BasisTable first_v = eval_basis(test.knot_vector(), mid, 0);
        const BasisTable first_u = eval_basis(trial.knot_vector(), mid, 0);
        Eigen::MatrixXd cv = Eigen::MatrixXd::Zero(q + 1, pv + 1);
        Eigen::MatrixXd cu = Eigen::MatrixXd::Zero(q + 1, pu + 1);
        for (int iq = 0; iq < ref.size(); ++iq) {
            const double x = x0 + h * ref.nodes[iq];
            const double w = h * ref.weights[iq];
            legendre(2.0 * ref.nodes[iq] - 1.0, q, leg);
            const BasisTable tv = eval_basis(test.knot_vector(), x, 0);
            const BasisTable tu = eval_basis(trial.knot_vector(), x, 0);
            for (int k = 0; k <= q; ++k) {
                cv.row(k) += w * leg[k] * tv.values.row(0);
                cu.row(k) += w * leg[k] * tu.values.row(0);
            }
        }
        for (int k = 0; k <= q; ++k) {
            const double norm2 = h / (2.0 * k + 1.0);
            // coefficient = <psi, L_k> / |L_k|^2; product weighted by |L_k|^2
            for (int i = 0; i <= pv; ++i) {
                const int li = test.local_index(first_v.first_active_index + i);
                if (li < 0)
                    continue;
                for (int j = 0; j <= pu; ++j) {
                    const int lj = trial.local_index(first_u.first_active_index + j);
                    if (lj >= 0)
                        out(li, lj) += cv(k, i) * cu(k, j) / norm2;
                }
            }
        }
    }
    return out;
}

TemporalMatrices assemble_temporal(const SplineSpace1D& trial, const SplineSpace1D& test, int p_t,
                                   double delta, Stabilization mode)
{
    if (!(delta >= 0.0))
        throw ParameterError("assemble_temporal: delta must be >= 0");
    if (p_t < 1 || p_t > std::min(trial.degree(), test.degree()))
        throw ParameterError("assemble_temporal: p_t must lie in [1, degree]");

    TemporalMatrices tm;
    tm.M = assemble_gram_1d(test, trial, 0, 0).entries;
    tm.K = assemble_gram_1d(test, trial, 1, 1).entries;
    switch (mode) {
    case Stabilization::none:
        tm.P = Eigen::MatrixXd::Zero(tm.M.rows(), tm.M.cols());
        break;
    case Stabilization::iga_penalty: {
        const double h = test.mesh_size();
        tm.P = delta * std::pow(h, 2 * p_t) * assemble_gram_1d(test, trial, p_t, p_t).entries;
        break;
    }
    case Stabilization::fem_projection:
        tm.P = tm.M - assemble_projected_mass(test, trial, p_t - 1);
        break;
    }
    return tm;
}

SparseMatrix kron(const SparseMatrix& A, const SparseMatrix& B)
{
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(A.nonZeros()) * static_cast<std::size_t>(B.nonZeros()));
    for (int ka = 0; ka < A.outerSize(); ++ka)
        for (SparseMatrix::InnerIterator ia(A, ka); ia; ++ia)
            for (int kb = 0; kb < B.outerSize(); ++kb)
                for (SparseMatrix::InnerIterator ib(B, kb); ib; ++ib)
                    trip.emplace_back(static_cast<int>(ia.row() * B.rows() + ib.row()),
                                      static_cast<int>(ia.col() * B.cols() + ib.col()),
                                      ia.value() * ib.value());
    SparseMatrix C(A.rows() * B.rows(), A.cols() * B.cols());
    C.setFromTriplets(trip.begin(), trip.end());
    return C;
}

SpatialOperators assemble_spatial(std::vector<SplineSpace1D> spaces, int d)
{
    if (d != 1 && d != 2)
        throw ParameterError("assemble_spatial: d must be 1 or 2");
    if (static_cast<int>(spaces.size()) != d)
        throw ParameterError("assemble_spatial: need one space per direction");
    for (const auto& s : spaces)
        if (s.constraint() != Constraint::clamped_both)
            throw ParameterError("assemble_spatial: spatial spaces must be clamped (u = du/dn = 0)");

    auto gram = [&](int dir, int a, int b) -> SparseMatrix {
        return assemble_gram_1d(spaces[dir], spaces[dir], a, b).entries.sparseView();
    };

    SpatialOperators ops;
    ops.d = d;
    if (d == 1) {
        ops.M = gram(0, 0, 0);
        ops.K = gram(0, 2, 2);
    } else {
        const SparseMatrix x00 = gram(0, 0, 0), x22 = gram(0, 2, 2), x02 = gram(0, 0, 2),
                           x20 = gram(0, 2, 0);
        const SparseMatrix y00 = gram(1, 0, 0), y22 = gram(1, 2, 2), y02 = gram(1, 0, 2),
                           y20 = gram(1, 2, 0);
        ops.M = kron(y00, x00);
        // (u_xx + u_yy)(v_xx + v_yy) expanded; test derivative first
        ops.K = kron(y00, x22) + kron(y20, x02) + kron(y02, x20) + kron(y22, x00);
    }
    ops.M.makeCompressed();
    ops.K.makeCompressed();
    ops.n_s = static_cast<int>(ops.M.rows());
    ops.spaces = std::move(spaces);
    return ops;
}

double SeparableForcing::operator()(std::span<const double> x, double t) const
{
    double s = 0.0;
    for (const auto& term : terms) {
        double v = term.time(t);
        for (std::size_t l = 0; l < term.space.size(); ++l)
            v *= term.space[l](x[l]);
        s += v;
    }
    return s;
}

Eigen::VectorXd integrate_against_basis(const SplineSpace1D& space,
                                        const std::function<double(double)>& w)
{
    const CompositeRule rule = composite_rule(space.knot_vector(), space.degree() + 2);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(space.dim());
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const double x = rule.points[q];
        const double fw = rule.weights[q] * w(x);
        const BasisTable t = eval_basis(space.knot_vector(), x, 0);
        for (int j = 0; j <= space.degree(); ++j) {
            const int l = space.local_index(t.first_active_index + j);
            if (l >= 0)
                out(l) += fw * t.values(0, j);
        }
    }
    return out;
}

Eigen::VectorXd assemble_load(const std::vector<SplineSpace1D>& spatial_test,
                              const SplineSpace1D& temporal_test, const SeparableForcing& f)
{
    const int d = static_cast<int>(spatial_test.size());
    if (d < 1 || d > 2)
        throw ParameterError("assemble_load: d must be 1 or 2");
    int n_s = 1;
    for (const auto& s : spatial_test)
        n_s *= s.dim();
    const int n_t = temporal_test.dim();

    Eigen::VectorXd load = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_s) * n_t);
    for (const auto& term : f.terms) {
        if (static_cast<int>(term.space.size()) != d)
            throw ParameterError("assemble_load: forcing term has wrong number of space factors");
        const Eigen::VectorXd g = integrate_against_basis(temporal_test, term.time);
        Eigen::VectorXd s = integrate_against_basis(spatial_test[0], term.space[0]);
        if (d == 2) {
            const Eigen::VectorXd sy = integrate_against_basis(spatial_test[1], term.space[1]);
            Eigen::VectorXd sxy(n_s);
            for (int j = 0; j < sy.size(); ++j)
                sxy.segment(static_cast<Eigen::Index>(j) * s.size(), s.size()) = sy(j) * s;
            s = std::move(sxy);
        }
        for (int k = 0; k < n_t; ++k)
            load.segment(static_cast<Eigen::Index>(k) * n_s, n_s) += g(k) * s;
    }
    return load;
}

void write_coordinate(std::ostream& os, const SparseMatrix& A)
{
    os << "# rows " << A.rows() << " cols " << A.cols() << " nnz " << A.nonZeros() << '\n';
    os << std::setprecision(17);
    for (int k = 0; k < A.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(A, k); it; ++it)
            os << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
}

void write_coordinate(std::ostream& os, const Eigen::MatrixXd& A)
{
    os << "# rows " << A.rows() << " cols " << A.cols() << '\n';
    os << std::setprecision(17);
    for (Eigen::Index j = 0; j < A.cols(); ++j)
        for (Eigen::Index i = 0; i < A.rows(); ++i)
            if (A(i, j) != 0.0)
                os << i << ' ' << j << ' ' << A(i, j) << '\n';
}

} // namespace bihw
