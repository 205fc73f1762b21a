#include "bihw/system.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "bihw/error.hpp"

namespace bihw {

namespace {

constexpr std::array<Rational, 6> kRho{{{12, 1}, {10, 1}, {168, 17}, {306, 31}, {2349, 238},
                                        {7797, 790}}};
constexpr std::array<Rational, 6> kDelta{{{1, 12}, {1, 120}, {17, 20160}, {5, 58529},
                                          {2, 231067}, {1, 1140271}}};

void check_table_degree(int p_t)
{
    if (p_t < 1 || p_t > 6) {
        std::ostringstream os;
        os << "no tabulated stability constant for p_t = " << p_t << " (supported: 1..6)";
        throw UnsupportedDegreeError(os.str());
    }
}

} // namespace

Rational rho_lookup(int p_t)
{
    check_table_degree(p_t);
    return kRho[p_t - 1];
}

Rational delta_lookup(int p_t)
{
    check_table_degree(p_t);
    return kDelta[p_t - 1];
}

double DiscretizationConfig::effective_delta() const
{
    return delta.value_or(std::pow(10.0, -p_t));
}

SpaceTimeSystem make_system(TemporalMatrices temporal, SpatialOperators spatial,
                            SplineSpace1D time_trial, SplineSpace1D time_test,
                            Eigen::VectorXd rhs, SystemMeta meta)
{
    const Eigen::Index n = static_cast<Eigen::Index>(spatial.n_s) * temporal.M.rows();
    if (rhs.size() != n)
        throw ParameterError("make_system: rhs length does not equal n_s * n_t");
    return SpaceTimeSystem{std::move(temporal), std::move(spatial), std::move(time_trial),
                           std::move(time_test), std::move(rhs), meta};
}

SpaceTimeSystem build_system(const DiscretizationConfig& cfg)
{
    if (cfg.d != 1 && cfg.d != 2)
        throw ParameterError("build_system: d must be 1 or 2");
    if (cfg.p_s < 2)
        throw ParameterError("build_system: spatial degree must be >= 2 (H^2-conforming)");
    if (cfg.spatial_regularity() < 1)
        throw ParameterError("build_system: spatial regularity must be >= 1 (H^2-conforming)");
    if (!(cfg.T > 0.0))
        throw ParameterError("build_system: T must be positive");

    std::vector<SplineSpace1D> spaces;
    for (int l = 0; l < cfg.d; ++l)
        spaces.push_back(build_space(
            make_knot_vector(cfg.n_el_s, cfg.p_s, cfg.spatial_regularity(), {0.0, 1.0}),
            Constraint::clamped_both));

    const KnotVector kv_t = make_knot_vector(cfg.n_el_t, cfg.p_t, cfg.temporal_regularity(),
                                             {0.0, cfg.T});
    SplineSpace1D trial = build_space(kv_t, Constraint::zero_start);
    SplineSpace1D test = build_space(kv_t, Constraint::zero_end);

    const double delta = cfg.effective_delta();
    TemporalMatrices tm = assemble_temporal(trial, test, cfg.p_t, delta, cfg.mode);
    Eigen::VectorXd rhs = assemble_load(spaces, test, cfg.forcing);
    SpatialOperators so = assemble_spatial(std::move(spaces), cfg.d);

    SystemMeta meta;
    meta.p_s = cfg.p_s;
    meta.p_t = cfg.p_t;
    meta.reg_s = cfg.spatial_regularity();
    meta.reg_t = cfg.temporal_regularity();
    meta.h_s = so.spaces.front().mesh_size();
    meta.h_t = trial.mesh_size();
    meta.delta = cfg.mode == Stabilization::iga_penalty ? delta : 0.0;
    meta.mode = cfg.mode;
    meta.T = cfg.T;
    return make_system(std::move(tm), std::move(so), std::move(trial), std::move(test),
                       std::move(rhs), meta);
}

Eigen::VectorXd apply_operator(const SpaceTimeSystem& sys, const Eigen::VectorXd& x)
{
    if (x.size() != sys.n_dof())
        throw ParameterError("apply_operator: vector length does not equal N_dof");
    const int ns = sys.n_s(), nt = sys.n_t();
    const Eigen::Map<const Eigen::MatrixXd> X(x.data(), ns, nt);
    const Eigen::MatrixXd MP = sys.temporal.M - sys.temporal.P;

    Eigen::VectorXd y(x.size());
    Eigen::Map<Eigen::MatrixXd> Y(y.data(), ns, nt);
    const Eigen::MatrixXd KX = sys.spatial.K * X;
    const Eigen::MatrixXd MX = sys.spatial.M * X;
    Y.noalias() = KX * MP.transpose();
    Y.noalias() -= MX * sys.temporal.K.transpose();
    return y;
}

Eigen::VectorXd residual_extended(const SpaceTimeSystem& sys, const Eigen::VectorXd& x)
{
    if (x.size() != sys.n_dof())
        throw ParameterError("residual_extended: vector length does not equal N_dof");
    using LD = long double;
    using MatrixL = Eigen::Matrix<LD, Eigen::Dynamic, Eigen::Dynamic>;
    const int ns = sys.n_s(), nt = sys.n_t();
    const MatrixL X = Eigen::Map<const Eigen::MatrixXd>(x.data(), ns, nt).cast<LD>();
    const Eigen::SparseMatrix<LD> K = sys.spatial.K.cast<LD>();
    const Eigen::SparseMatrix<LD> M = sys.spatial.M.cast<LD>();
    const MatrixL MP = sys.temporal.M.cast<LD>() - sys.temporal.P.cast<LD>();
    const MatrixL Kt = sys.temporal.K.cast<LD>();
    MatrixL R = Eigen::Map<const Eigen::MatrixXd>(sys.rhs.data(), ns, nt).cast<LD>();
    R.noalias() -= (K * X) * MP.transpose();
    R.noalias() += (M * X) * Kt.transpose();
    const Eigen::MatrixXd Rd = R.cast<double>();
    return Eigen::Map<const Eigen::VectorXd>(Rd.data(), Rd.size());
}

Eigen::Index dense_size_cap()
{
    if (const char* env = std::getenv("BIHW_MAX_DENSE")) {
        char* end = nullptr;
        const long long v = std::strtoll(env, &end, 10);
        if (end != env && v > 0)
            return static_cast<Eigen::Index>(v);
    }
    return 20000;
}

Eigen::MatrixXd assemble_dense(const SpaceTimeSystem& sys, std::optional<Eigen::Index> cap)
{
    const Eigen::Index n = sys.n_dof();
    const Eigen::Index limit = cap.value_or(dense_size_cap());
    if (n > limit) {
        std::ostringstream os;
        os << "assemble_dense: N_dof = " << n << " exceeds the dense cap " << limit;
        throw SizeError(os.str());
    }
    const int ns = sys.n_s(), nt = sys.n_t();
    const Eigen::MatrixXd MP = sys.temporal.M - sys.temporal.P;
    const Eigen::MatrixXd Kx = Eigen::MatrixXd(sys.spatial.K);
    const Eigen::MatrixXd Mx = Eigen::MatrixXd(sys.spatial.M);
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < nt; ++j)
            A.block(static_cast<Eigen::Index>(i) * ns, static_cast<Eigen::Index>(j) * ns, ns, ns) =
                MP(i, j) * Kx - sys.temporal.K(i, j) * Mx;
    return A;
}

double max_generalized_eigenvalue_power(const SparseMatrix& K, const SparseMatrix& M, double tol,
                                        int max_iter, int* iterations)
{
    Eigen::SimplicialLLT<SparseMatrix> chol(M);
    if (chol.info() != Eigen::Success)
        throw NumericalError("cfl_check: Cholesky of M_x failed (not SPD)");
    Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(K.rows(), 1.0, 2.0);
    // alternating signs seed the high-frequency end of the spectrum
    for (Eigen::Index i = 1; i < v.size(); i += 2)
        v(i) = -v(i);
    double lambda = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        Eigen::VectorXd w = chol.solve(K * v);
        w /= w.norm();
        const double next = w.dot(K * w) / w.dot(M * w);
        v = std::move(w);
        if (it > 1 && std::abs(next - lambda) <= tol * std::abs(next)) {
            if (iterations)
                *iterations = it;
            return next;
        }
        lambda = next;
    }
    std::ostringstream os;
    os << "cfl_check: power iteration did not converge in " << max_iter << " iterations";
    throw NumericalError(os.str());
}

CflReport cfl_check(const SpatialOperators& spatial, int p_t, double h_t,
                    bool reduced_temporal_regularity, int dense_limit)
{
    CflReport r;
    r.rho = rho_lookup(p_t);
    r.h_t = h_t;
    r.advisory = reduced_temporal_regularity;
    if (spatial.n_s <= dense_limit) {
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
            Eigen::MatrixXd(spatial.K), Eigen::MatrixXd(spatial.M), Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw NumericalError("cfl_check: dense generalized eigensolve failed");
        r.lambda_max = es.eigenvalues().maxCoeff();
        r.method = "dense";
    } else {
        r.lambda_max = max_generalized_eigenvalue_power(spatial.K, spatial.M, 1e-8, 200000,
                                                        &r.iterations);
        r.method = "power";
    }
    r.h_t_max = std::sqrt(r.rho.value() / r.lambda_max);
    r.satisfied = h_t < r.h_t_max;
    return r;
}

} // namespace bihw
