#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "support.hpp"

#include "bihw/cases.hpp"
#include "bihw/error.hpp"
#include "bihw/norms.hpp"
#include "bihw/solver.hpp"
#include "bihw/studies.hpp"

using namespace bihw;
using testing::uniform;

namespace {

constexpr double pi = std::numbers::pi;

/// Sixth-order central differences in one coordinate.
template <class F>
double d2(F&& f, double h)
{
    return (2 * f(-3 * h) - 27 * f(-2 * h) + 270 * f(-h) - 490 * f(0) + 270 * f(h) - 27 * f(2 * h) +
            2 * f(3 * h)) /
           (180 * h * h);
}

template <class F>
double d4(F&& f, double h)
{
    return (-f(-3 * h) + 12 * f(-2 * h) - 39 * f(-h) + 56 * f(0) - 39 * f(h) + 12 * f(2 * h) -
            f(3 * h)) /
           (6 * h * h * h * h);
}

} // namespace

TEST_CASE("manufactured cases: closed forms")
{
    const auto line = manufactured_case("line1d");
    const double x[1] = {0.25};
    // 2 sin^2 - 8 pi^4 cos: the second term cancels only to rounding of 8 pi^4
    CHECK(std::abs(line.forcing(x, 1.0) - 1.0) <= 1e-12);
    CHECK(line.u(x, 1.0) == doctest::Approx(0.5));

    const auto sq = manufactured_case("square2d");
    for (int s = 0; s < 100; ++s) {
        const double p[2] = {uniform(0, 1), uniform(0, 1)};
        CHECK(sq.u(p, 0.0) == 0.0);
        CHECK(sq.u_t(p, 0.0) == 0.0);
        CHECK(line.u(p, 0.0) == 0.0);
        CHECK(line.u_t(p, 0.0) == 0.0);
        // clamped boundary: u and grad u vanish on all four edges
        const double t = uniform(0, 1);
        for (double e : {0.0, 1.0}) {
            const double a[2] = {e, p[1]}, b[2] = {p[0], e};
            CHECK(std::abs(sq.u(a, t)) <= 1e-30);
            CHECK(std::abs(sq.u(b, t)) <= 1e-30);
            CHECK(std::abs(sq.gradient(a, t)[0]) <= 1e-15);
            CHECK(std::abs(sq.gradient(b, t)[1]) <= 1e-15);
            const double l[1] = {e};
            CHECK(std::abs(line.u(l, t)) <= 1e-30);
            CHECK(std::abs(line.gradient(l, t)[0]) <= 1e-15);
        }
    }
    CHECK_THROWS_AS(manufactured_case("annulus"), ParameterError);

    // |u(., 1)|_{L2} = sqrt(3/8)
    const auto sp = testing::space(8, 3, 2, Constraint::clamped_both);
    const auto e = spatial_error_norms(Eigen::VectorXd::Zero(sp.dim()), {sp}, line, 1.0);
    CHECK(e.abs_l2 == doctest::Approx(std::sqrt(3.0 / 8.0)).epsilon(1e-12));
    CHECK(e.l2 == doctest::Approx(1.0));
}

TEST_CASE("forcing equals u_tt + biharmonic u by finite differences")
{
    const double h = 4e-3;
    for (const char* name : {"line1d", "square2d"}) {
        const auto c = manufactured_case(name);
        double num = 0, den = 0;
        for (int s = 0; s < 1000; ++s) {
            double p[2] = {uniform(0.02, 0.98), uniform(0.02, 0.98)};
            const double t = uniform(0.02, 0.98);
            auto along = [&](int dir) {
                return [&c, &p, t, dir](double o) {
                    double q[2] = {p[0], p[1]};
                    q[dir] += o;
                    return c.u(q, t);
                };
            };
            double fd = d2([&](double o) { return c.u(p, t + o); }, h) + d4(along(0), h);
            if (c.d == 2) {
                fd += d4(along(1), h);
                // u_xxyy as a second difference in y of second differences in x
                fd += 2 * d2(
                              [&](double oy) {
                                  return d2(
                                      [&](double ox) {
                                          double q[2] = {p[0] + ox, p[1] + oy};
                                          return c.u(q, t);
                                      },
                                      h);
                              },
                              h);
            }
            num = std::max(num, std::abs(fd - c.forcing(p, t)));
            den = std::max(den, std::abs(c.forcing(p, t)));
        }
        CHECK(num / den <= 1e-6);
    }
}

TEST_CASE("error norms: zero field and interpolant")
{
    DiscretizationConfig cfg;
    cfg.d = 1;
    cfg.p_s = cfg.p_t = 3;
    cfg.n_el_s = cfg.n_el_t = 16;
    const auto c = manufactured_case("line1d");
    cfg.forcing = c.forcing;
    const auto sys = build_system(cfg);

    const auto zero = error_norms_spacetime(Eigen::VectorXd::Zero(sys.n_dof()), sys, c);
    CHECK(zero.l2l2 == doctest::Approx(1.0));
    CHECK(zero.h1mix == doctest::Approx(1.0));
    CHECK(zero.x == doctest::Approx(1.0));
    // int_0^1 int_0^1 t^4 sin^4 = 3/40
    CHECK(zero.abs_l2l2 == doctest::Approx(std::sqrt(3.0 / 40.0)).epsilon(1e-12));
    const auto fz = error_norms_final_time(Eigen::VectorXd::Zero(sys.n_dof()), sys, c);
    CHECK(fz.l2 == doctest::Approx(1.0));
    CHECK(fz.h1 == doctest::Approx(1.0));
    CHECK(fz.h2 == doctest::Approx(1.0));
    CHECK_THROWS_AS(error_norms_spacetime(Eigen::VectorXd::Zero(3), sys, c), ParameterError);

    // Greville interpolant in space and time
    auto greville = [](const SplineSpace1D& s) {
        const auto U = testing::knots_of(s.knot_vector());
        std::vector<double> g;
        for (int j : s.active_indices()) {
            double a = 0;
            for (int k = 1; k <= s.degree(); ++k)
                a += U[j + k];
            g.push_back(a / s.degree());
        }
        return g;
    };
    const auto& sx = sys.spatial.spaces[0];
    const auto gx = greville(sx), gt = greville(sys.time_trial);
    const Eigen::MatrixXd Cx = collocation_matrix(sx, gx, 0);
    const Eigen::MatrixXd Ct = collocation_matrix(sys.time_trial, gt, 0);
    Eigen::MatrixXd U(gx.size(), gt.size());
    for (std::size_t i = 0; i < gx.size(); ++i)
        for (std::size_t k = 0; k < gt.size(); ++k) {
            const double xx[1] = {gx[i]};
            U(i, k) = c.u(xx, gt[k]);
        }
    const Eigen::MatrixXd X = Cx.fullPivLu().solve(Ct.fullPivLu().solve(U.transpose()).transpose());
    const Eigen::VectorXd coeffs = Eigen::Map<const Eigen::VectorXd>(X.data(), X.size());
    const auto err = error_norms_spacetime(coeffs, sys, c);
    CHECK(err.l2l2 <= 1e-3);
    CHECK(err.abs_x >= err.abs_l2l2 / cfg.T);

    // final-time errors: space-time trace vs explicit slice
    const auto ft = error_norms_final_time(coeffs, sys, c);
    const auto sl = spatial_error_norms(time_slice(coeffs, sys, 1.0), sys.spatial.spaces, c, 1.0);
    CHECK(std::abs(ft.abs_l2 - sl.abs_l2) <= 1e-12);
    CHECK(std::abs(ft.abs_h1 - sl.abs_h1) <= 1e-12);
    CHECK(std::abs(ft.abs_h2 - sl.abs_h2) <= 1e-12);
}

TEST_CASE("Galerkin reproduces a representable exact solution")
{
    // u = t^2 b(x) with b a C^3 clamped quartic spline: b'''' has no jump terms,
    // and d_t^4 t^2 = 0 keeps the penalty consistent
    const int p = 4;
    const auto sx = testing::space(6, p, p - 1, Constraint::clamped_both);
    const Eigen::VectorXd bc = testing::random_vector(sx.dim());
    auto b = [sx, bc](double x, int k) {
        return sx.eval_function(std::span<const double>(bc.data(), bc.size()), x, k);
    };
    const auto c = make_case("spline", 1, {FieldTerm{&t_squared, {b}}});
    for (auto mode : {Stabilization::none, Stabilization::iga_penalty}) {
        DiscretizationConfig cfg;
        cfg.d = 1;
        cfg.p_s = cfg.p_t = p;
        cfg.n_el_s = 6;
        cfg.n_el_t = 4;
        cfg.mode = mode;
        cfg.forcing = c.forcing;
        const auto sys = build_system(cfg);
        const auto rep = solve_system(sys);
        const auto e = error_norms_spacetime(rep.solution, sys, c);
        CHECK(e.l2l2 <= 1e-9);
        CHECK(e.h1mix <= 1e-9);
        CHECK(e.x <= 1e-9);
    }
}

TEST_CASE("stability classifier")
{
    auto seq = [](std::initializer_list<double> xs) {
        std::vector<SpaceTimeErrors> v;
        for (double x : xs)
            v.push_back({x / 10, x / 2, x, 0, 0, 0});
        return v;
    };
    CHECK(classify(seq({0.5, 0.2, 0.1, 0.05})) == Stability::stable);
    CHECK(classify(seq({0.01, 0.02, 0.05, 0.099})) == Stability::stable);
    CHECK(classify(seq({0.01, 0.02, 0.05, 0.11})) == Stability::unstable);
    CHECK(classify(seq({0.5, 2e3, 0.1})) == Stability::unstable);
    CHECK(classify(seq({0.5, std::numeric_limits<double>::quiet_NaN(), 0.1})) == Stability::unstable);
    CHECK(classify(seq({0.5, std::numeric_limits<double>::infinity()})) == Stability::unstable);
    CHECK_THROWS_AS(classify({}), ParameterError);
    CHECK(to_string(Stability::stable) == "stable");
}

TEST_CASE("convergence study on line1d")
{
    ConvergenceOptions o;
    o.degrees = {2, 3};
    o.n_elements = {2, 4, 8, 16, 32};
    o.crosscheck_dense = true;
    const auto t = convergence_study(manufactured_case("line1d"), o);
    CHECK(t.skipped.size() == 1); // h = 1/2 leaves no clamped quadratic
    CHECK(t.rows.size() == 9);
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
        const auto& a = t.rows[i - 1].cell;
        const auto& b = t.rows[i].cell;
        CHECK(b.ok());
        CHECK(b.dense_difference <= 1e-8);
        if (a.spec.p == b.spec.p && a.h_s <= 0.25) {
            CHECK(b.errors.l2l2 < a.errors.l2l2);
            CHECK(b.errors.h1mix < a.errors.h1mix);
            CHECK(b.errors.x < a.errors.x);
            CHECK(b.errors.abs_x >= b.errors.abs_l2l2);
        }
    }
    CHECK(finest_rates(t, 2).x >= 0.8);
    CHECK(finest_rates(t, 3).x >= 1.8);
    CHECK(std::isnan(finest_rates(t, 7).x));

    o.n_elements = {4, 8, 12};
    CHECK_THROWS_AS(convergence_study(manufactured_case("line1d"), o), ParameterError);
}

TEST_CASE("stable configurations classify as stable")
{
    StabilityOptions o;
    o.degrees = {2};
    o.n_elements = {4, 8, 16};
    o.modes = {Stabilization::iga_penalty};
    const auto r = stability_study(manufactured_case("line1d"), o);
    bool found = false;
    for (const auto& row : r.rows)
        if (row.group == "iga-max") {
            found = true;
            CHECK(row.observed == Stability::stable);
        }
    CHECK(found);
}

TEST_CASE("cfl sweep brackets the diagnostic")
{
    CflSweepOptions o; // h_s = 1/8
    o.k_min = -1;
    o.k_max = 3;
    const auto s = cfl_sweep(manufactured_case("line1d"), o);
    CHECK(s.rows.size() == 5);
    for (std::size_t i = 1; i < s.rows.size(); ++i)
        CHECK(s.rows[i].cell.h_t > s.rows[i - 1].cell.h_t);
    REQUIRE(std::isfinite(s.boundary));
    CHECK(s.boundary / s.cfl.h_t_max >= 0.5);
    CHECK(s.boundary / s.cfl.h_t_max <= 2.0);
    CHECK(s.rows.front().observed == Stability::stable);
}

TEST_CASE("mesh pairs for a target size")
{
    for (int p = 2; p <= 5; ++p) {
        const auto m = mesh_for_target(1, p, p - 1, p - 1, 8400);
        const double hs = 1.0 / m.n_el_s, ht = 1.0 / m.n_el_t;
        CHECK(ht / hs >= 0.8);
        CHECK(ht / hs <= 1.25);
        const long long n_s = m.n_el_s + p - 1 + 1 - 4, n_t = m.n_el_t + p - 1 + 1 - 1;
        CHECK(m.n_dof == n_s * n_t);
        CHECK(std::abs(m.n_dof - 8400) <= 400);
    }
    const auto f = mesh_for_target(1, 3, 1, 0, 8400);
    CHECK(f.n_dof == (2LL * f.n_el_s + 2 - 4) * (3LL * f.n_el_t + 1 - 1));
}

TEST_CASE("compare study on a small target")
{
    CompareOptions o;
    o.degrees = {2, 3};
    o.target_dofs = 400;
    const auto rows = compare_study(manufactured_case("line1d"), o);
    CHECK(rows.size() == 4);
    for (const auto& r : rows) {
        CHECK(r.cell.ok());
        CHECK(r.cell.final_errors.l2 < 1.0);
    }
}

TEST_CASE("timing study rows")
{
    TimingOptions o;
    o.n_elements = {4, 8};
    o.repeats = 1;
    const auto rows = timing_study(manufactured_case("square2d"), o);
    REQUIRE(rows.size() == 2);
    CHECK(std::isnan(rows[0].growth));
    CHECK(rows[1].growth > 0);
    CHECK(rows[1].relative_residual <= 1e-9);
    // n_s = (n - 2)^2, n_t = n + 1 for clamped quadratics
    CHECK(rows[0].n_dof == 4 * 5);
    CHECK(rows[1].n_dof == 36 * 9);
}
