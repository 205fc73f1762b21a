#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "doctest.h"
#include "support.hpp"

#include "bihw/cases.hpp"
#include "bihw/error.hpp"
#include "bihw/solver.hpp"

using namespace bihw;

namespace {

DiscretizationConfig make(int d, int p, int n_s, int n_t, Stabilization mode, int reg_t = -1)
{
    DiscretizationConfig c;
    c.d = d;
    c.p_s = c.p_t = p;
    c.n_el_s = n_s;
    c.n_el_t = n_t;
    c.mode = mode;
    c.reg_t = reg_t;
    c.forcing = manufactured_case(d == 1 ? "line1d" : "square2d").forcing;
    return c;
}

SystemMeta meta_of(int p)
{
    SystemMeta m;
    m.p_s = m.p_t = p;
    return m;
}

double unitarity(const Eigen::MatrixXcd& X)
{
    return (X.adjoint() * X - Eigen::MatrixXcd::Identity(X.rows(), X.cols())).norm();
}

void check_factorization(const Eigen::MatrixXd& K, const Eigen::MatrixXd& MP)
{
    const auto f = factorize_temporal(K, MP);
    const Eigen::MatrixXcd Kc = K.cast<std::complex<double>>(), Mc = MP.cast<std::complex<double>>();
    CHECK((f.C * Kc * f.D - f.E).norm() <= 1e-10 * K.norm());
    CHECK((f.C * Mc * f.D - f.F).norm() <= 1e-10 * MP.norm());
    CHECK(unitarity(f.C) <= 1e-11);
    CHECK(unitarity(f.D) <= 1e-11);
    for (Eigen::Index j = 0; j < f.B.cols(); ++j)
        for (Eigen::Index i = j + 1; i < f.B.rows(); ++i) {
            CHECK(f.B(i, j) == std::complex<double>(0.0));
            CHECK(std::abs(f.E(i, j)) <= 1e-13 * K.norm());
        }
    CHECK((f.E * f.B - f.F).norm() <= 1e-10 * MP.norm());

    // diagonal of B: generalized eigenvalues of (M - P, K). The tolerance is
    // 1e-9 for well-conditioned eigenvalues and grows with the eigenvalue
    // condition number kappa_k = |x_k| |y_k| of K^{-1}(M - P).
    Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> ges(MP, K);
    const Eigen::VectorXcd ref = ges.eigenvalues();
    const Eigen::MatrixXd A = K.partialPivLu().solve(MP);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(A.cast<std::complex<double>>());
    const Eigen::MatrixXcd X = ces.eigenvectors(), Y = X.inverse();
    const double eps = std::numeric_limits<double>::epsilon();
    std::vector<bool> used(ref.size(), false);
    for (Eigen::Index k = 0; k < f.B.rows(); ++k) {
        const std::complex<double> b = f.B(k, k);
        Eigen::Index arg = -1, near = 0;
        double best = 1e300;
        for (Eigen::Index j = 0; j < ref.size(); ++j)
            if (!used[j] && std::abs(ref[j] - b) < best) {
                best = std::abs(ref[j] - b);
                arg = j;
            }
        used[arg] = true;
        (ces.eigenvalues().array() - b).abs().minCoeff(&near);
        const double kappa = X.col(near).norm() * Y.row(near).norm();
        const double tol = std::max(1e-9, 10.0 * A.rows() * eps * kappa * A.norm());
        CHECK(best <= tol * (1.0 + std::abs(ref[arg])));
    }
}

void check_well_conditioned_eigenvalues(const Eigen::MatrixXd& K, const Eigen::MatrixXd& MP)
{
    const auto f = factorize_temporal(K, MP);
    Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> ges(MP, K);
    const Eigen::VectorXcd ref = ges.eigenvalues();
    std::vector<bool> used(ref.size(), false);
    for (Eigen::Index k = 0; k < f.B.rows(); ++k) {
        Eigen::Index arg = -1;
        double best = 1e300;
        for (Eigen::Index j = 0; j < ref.size(); ++j)
            if (!used[j] && std::abs(ref[j] - f.B(k, k)) < best) {
                best = std::abs(ref[j] - f.B(k, k));
                arg = j;
            }
        used[arg] = true;
        CHECK(best <= 1e-9 * (1.0 + std::abs(ref[arg])));
    }
}

} // namespace

TEST_CASE("temporal factorization: scalar and random pencils")
{
    const auto f1 = factorize_temporal(Eigen::MatrixXd::Constant(1, 1, 4.0),
                                       Eigen::MatrixXd::Constant(1, 1, 2.0));
    CHECK(std::abs(f1.B(0, 0) - std::complex<double>(0.5)) <= 1e-15);

    for (int s = 0; s < 10; ++s) {
        const Eigen::MatrixXd K = Eigen::MatrixXd::Random(4, 4) + 3 * Eigen::MatrixXd::Identity(4, 4);
        const Eigen::MatrixXd M = Eigen::MatrixXd::Random(4, 4);
        check_factorization(K, M);
        check_well_conditioned_eigenvalues(K, M);
    }
}

TEST_CASE("temporal factorization of assembled pencils")
{
    for (auto mode : {Stabilization::none, Stabilization::iga_penalty, Stabilization::fem_projection})
        for (int p = 1; p <= 5; ++p)
            for (int n : {1, 4, 17}) {
                const auto sys = build_system(make(1, std::max(p, 2), 6, n, mode));
                const auto& t = sys.temporal;
                check_factorization(t.K, t.M - t.P);
            }
}

TEST_CASE("singular temporal stiffness is detected")
{
    Eigen::MatrixXd K(2, 2);
    K << 1, 2, 2, 4;
    CHECK_THROWS_AS(factorize_temporal(K, Eigen::MatrixXd::Identity(2, 2)), FactorizationError);
    CHECK_THROWS_AS(factorize_temporal(Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(3, 3)),
                    ParameterError);
}

TEST_CASE("fast solve matches the dense oracle")
{
    const auto sys = build_system(make(1, 2, 8, 4, Stabilization::iga_penalty));
    REQUIRE(sys.n_dof() == 30);
    const auto rep = solve_system(sys);
    const Eigen::VectorXd ref = solve_dense_oracle(sys);
    CHECK(testing::rel_inf(rep.solution, ref) <= 1e-8);
    CHECK(rep.relative_residual <= 1e-10);
    CHECK(rep.imag_discard_norm <= 1e-8);
    CHECK_FALSE(rep.dense_fallback);
    CHECK(rep.lu_factorizations >= 1);
    CHECK(rep.lu_factorizations <= sys.n_t());

    // the dense oracle solves its own system to machine precision
    const Eigen::MatrixXd A = assemble_dense(sys);
    CHECK((A * ref - sys.rhs).norm() <= 1e-12 * sys.rhs.norm());
}

TEST_CASE("fast solve on random small systems")
{
    const Stabilization modes[3] = {Stabilization::none, Stabilization::iga_penalty,
                                    Stabilization::fem_projection};
    for (int s = 0; s < 10; ++s) {
        const int d = 1 + s % 2, p = 2 + s % 3;
        const int n_s = d == 1 ? p + 2 + (s % 5) : p + 2;
        const int n_t = 1 + (s * 7) % 9;
        const int reg_t = s % 4 == 3 ? 0 : -1;
        auto cfg = make(d, p, n_s, n_t, modes[s % 3], reg_t);
        auto sys = build_system(cfg);
        sys.rhs = testing::random_vector(sys.n_dof());
        const auto rep = solve_system(sys);
        const Eigen::VectorXd ref = solve_dense_oracle(sys);
        CHECK(testing::rel_inf(rep.solution, ref) <= 1e-8);
        CHECK(rep.relative_residual <= 1e-9);
        CHECK(rep.imag_discard_norm <= 1e-8);
    }
}

TEST_CASE("residual on the square2d h = 1/8, p = 2 configuration")
{
    const auto sys = build_system(make(2, 2, 8, 8, Stabilization::iga_penalty));
    const auto rep = solve_system(sys);
    CHECK(rep.relative_residual <= 1e-10);
    CHECK(rep.imag_discard_norm <= 1e-8);
    CHECK(rep.wall_time > 0.0);
    CHECK(rep.flops_estimate > 0.0);
    std::ostringstream os;
    write_summary(os, rep);
    CHECK(os.str().find("relative_residual") != std::string::npos);
}

TEST_CASE("refinement recovers forward accuracy on an ill-conditioned system")
{
    // unstabilized beyond the step-size bound: errors grow exponentially in
    // time and a plain double LU loses digits; the reference is a quad
    // precision LU of the same double matrix
    using Quad = boost::multiprecision::cpp_bin_float_quad;
    using MatrixQ = Eigen::Matrix<Quad, Eigen::Dynamic, Eigen::Dynamic>;
    using VectorQ = Eigen::Matrix<Quad, Eigen::Dynamic, 1>;
    const auto sys = build_system(make(1, 2, 15, 21, Stabilization::none));
    const MatrixQ A = assemble_dense(sys).cast<Quad>();
    const VectorQ truth = A.partialPivLu().solve(VectorQ(sys.rhs.cast<Quad>()));
    Eigen::VectorXd t(truth.size());
    for (Eigen::Index i = 0; i < t.size(); ++i)
        t[i] = static_cast<double>(truth[i]);

    const Eigen::VectorXd plain = assemble_dense(sys).partialPivLu().solve(sys.rhs);
    CHECK(testing::rel_inf(plain, t) > 1e-12); // the case is really hard

    // long double residuals bound the attainable accuracy near cond * 1e-19;
    // both solvers reach the same fixed point
    const auto rep = solve_system(sys);
    const Eigen::VectorXd dense = solve_dense_oracle(sys);
    CHECK(rep.refinement_sweeps >= 1);
    CHECK(testing::rel_inf(rep.solution, t) <= 1e-10);
    CHECK(testing::rel_inf(dense, t) <= 1e-10);
    CHECK(testing::rel_inf(rep.solution, dense) <= 1e-13);
}

TEST_CASE("single temporal block equals a direct spatial solve")
{
    const auto sx = testing::space(9, 3, 2, Constraint::clamped_both);
    auto spatial = assemble_spatial({sx}, 1);
    TemporalMatrices tm;
    tm.M = Eigen::MatrixXd::Constant(1, 1, 0.7);
    tm.K = Eigen::MatrixXd::Constant(1, 1, 3.0);
    tm.P = Eigen::MatrixXd::Zero(1, 1);
    const Eigen::VectorXd f = testing::random_vector(spatial.n_s);
    const auto sys = make_system(tm, spatial, testing::space(1, 1, 0, Constraint::zero_start),
                                 testing::space(1, 1, 0, Constraint::zero_end), f, meta_of(3));
    const auto rep = solve_system(sys);
    const Eigen::MatrixXd A = 0.7 * Eigen::MatrixXd(spatial.K) - 3.0 * Eigen::MatrixXd(spatial.M);
    const Eigen::VectorXd ref = A.partialPivLu().solve(f);
    CHECK(testing::rel_inf(rep.solution, ref) <= 1e-11);
    CHECK(rep.lu_factorizations == 1);
}

TEST_CASE("singular diagonal block raises a solver error")
{
    const auto sx = testing::space(6, 2, 1, Constraint::clamped_both);
    auto spatial = assemble_spatial({sx}, 1);
    const Eigen::VectorXd ev = testing::generalized_eigenvalues(spatial.K, spatial.M);
    // B = 1 / lambda_1 makes B K_x - M_x singular
    TemporalMatrices tm;
    tm.K = Eigen::MatrixXd::Constant(1, 1, 1.0);
    tm.M = Eigen::MatrixXd::Constant(1, 1, 1.0 / ev[0]);
    tm.P = Eigen::MatrixXd::Zero(1, 1);
    const auto sys = make_system(tm, spatial, testing::space(1, 1, 0, Constraint::zero_start),
                                 testing::space(1, 1, 0, Constraint::zero_end),
                                 Eigen::VectorXd::Ones(spatial.n_s), meta_of(2));
    const auto fact = factorize_temporal(tm.K, tm.M);
    try {
        solve(sys, fact);
        FAIL("expected SolverError");
    } catch (const SolverError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("k = ") != std::string::npos);
    }
}

TEST_CASE("singular temporal stiffness falls back to the dense oracle")
{
    const auto sx = testing::space(6, 2, 1, Constraint::clamped_both);
    auto spatial = assemble_spatial({sx}, 1);
    TemporalMatrices tm;
    tm.K = Eigen::MatrixXd::Zero(1, 1);
    tm.M = Eigen::MatrixXd::Constant(1, 1, 1.0);
    tm.P = Eigen::MatrixXd::Zero(1, 1);
    const Eigen::VectorXd f = testing::random_vector(spatial.n_s);
    const auto sys = make_system(tm, spatial, testing::space(1, 1, 0, Constraint::zero_start),
                                 testing::space(1, 1, 0, Constraint::zero_end), f, meta_of(2));
    const auto rep = solve_system(sys);
    CHECK(rep.dense_fallback);
    const Eigen::VectorXd ref = Eigen::MatrixXd(spatial.K).ldlt().solve(f);
    CHECK(testing::rel_inf(rep.solution, ref) <= 1e-10);
}

TEST_CASE("cost model")
{
    const auto base = flops_model(1000, 10, 2, 2);
    const auto next = flops_model(4000, 20, 2, 2);
    CHECK(next.total / base.total <= 16.0);
    CHECK(next.total / base.total > 8.0);

    const auto single = flops_model(500, 1, 3, 1);
    CHECK(single.step3 >= 0.5 * single.total);
    CHECK(single.c1x > 0.0);

    for (int d : {1, 2})
        for (int p : {2, 3, 5}) {
            double prev = 0.0;
            for (double ns : {10.0, 100.0, 1000.0}) {
                const double t = flops_model(ns, 50, p, d).total;
                CHECK(t >= prev);
                prev = t;
            }
            prev = 0.0;
            for (double nt : {1.0, 10.0, 100.0}) {
                const double t = flops_model(300, nt, p, d).total;
                CHECK(t >= prev);
                prev = t;
            }
            CHECK(flops_model(300, 30, p + 1, d).total >= flops_model(300, 30, p, d).total);
        }
    CHECK_THROWS_AS(flops_model(0, 10, 2, 1), ParameterError);
}
