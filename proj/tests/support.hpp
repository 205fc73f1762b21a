#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "bihw/assembly.hpp"
#include "bihw/splines.hpp"
#include "bihw/system.hpp"

namespace testing {

inline std::mt19937_64& rng()
{
    static std::mt19937_64 g(20240611);
    return g;
}

inline double uniform(double a, double b)
{
    return std::uniform_real_distribution<double>(a, b)(rng());
}

inline Eigen::VectorXd random_vector(Eigen::Index n)
{
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v[i] = uniform(-1.0, 1.0);
    return v;
}

inline double rel_inf(const Eigen::VectorXd& a, const Eigen::VectorXd& ref)
{
    return (a - ref).lpNorm<Eigen::Infinity>() / ref.lpNorm<Eigen::Infinity>();
}

/// Textbook recursive B-spline definition, no shared code with the library.
/// Half-open spans; the right endpoint is assigned to the last nonempty span.
inline double naive_bspline(const std::vector<double>& U, int i, int p, double x)
{
    if (p == 0) {
        const double b = U.back();
        if (x == b) {
            int last = static_cast<int>(U.size()) - 2;
            while (U[last] == U[last + 1])
                --last;
            return i == last ? 1.0 : 0.0;
        }
        return (U[i] <= x && x < U[i + 1]) ? 1.0 : 0.0;
    }
    double v = 0.0;
    if (U[i + p] > U[i])
        v += (x - U[i]) / (U[i + p] - U[i]) * naive_bspline(U, i, p - 1, x);
    if (U[i + p + 1] > U[i + 1])
        v += (U[i + p + 1] - x) / (U[i + p + 1] - U[i + 1]) * naive_bspline(U, i + 1, p - 1, x);
    return v;
}

inline std::vector<double> knots_of(const bihw::KnotVector& kv)
{
    return {kv.knots().begin(), kv.knots().end()};
}

inline bihw::SplineSpace1D space(int n_el, int p, int reg, bihw::Constraint c, double a = 0.0,
                                 double b = 1.0)
{
    return bihw::build_space(bihw::make_knot_vector(n_el, p, reg, {a, b}), c);
}

/// Dense generalized symmetric eigenvalues of (K, M), ascending.
inline Eigen::VectorXd generalized_eigenvalues(const bihw::SparseMatrix& K,
                                               const bihw::SparseMatrix& M)
{
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(K),
                                                                 Eigen::MatrixXd(M),
                                                                 Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

/// Brute-force Gram matrix: dense evaluation of all basis functions on a
/// fine composite Gauss rule built independently of the library's rules.
inline Eigen::MatrixXd brute_gram(const bihw::SplineSpace1D& test,
                                  const bihw::SplineSpace1D& trial, int a, int b)
{
    // 6-point Gauss-Legendre on [-1,1]
    static const double xg[6] = {-0.9324695142031521, -0.6612093864662645, -0.2386191860831909,
                                 0.2386191860831909,  0.6612093864662645,  0.9324695142031521};
    static const double wg[6] = {0.1713244923791704, 0.3607615730481386, 0.4679139345726910,
                                 0.4679139345726910, 0.3607615730481386, 0.1713244923791704};
    auto bp = trial.knot_vector().breakpoints();
    const auto bt = test.knot_vector().breakpoints();
    bp.insert(bp.end(), bt.begin(), bt.end());
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(test.dim(), trial.dim());
    for (std::size_t e = 0; e + 1 < bp.size(); ++e) {
        const double lo = bp[e], hi = bp[e + 1], half = 0.5 * (hi - lo);
        for (int q = 0; q < 6; ++q) {
            const double x = lo + half * (1.0 + xg[q]);
            G += (half * wg[q]) * test.eval_all(x, a) * trial.eval_all(x, b).transpose();
        }
    }
    return G;
}

} // namespace testing
