#include "bihw/norms.hpp"

#include <cmath>

#include "bihw/error.hpp"
#include "bihw/quadrature.hpp"

namespace bihw {

namespace {

// Quadrature samples of one spatial direction. A missing second direction
// (d = 1) is represented by a single unit-weight point with constant basis.
struct Direction {
    std::vector<double> points;
    Eigen::VectorXd weights;
    Eigen::MatrixXd B0, B1, B2;
    bool trivial = false;
};

Direction sample(const SplineSpace1D& s)
{
    Direction dir;
    const CompositeRule rule = composite_rule(s.knot_vector(), s.degree() + 3);
    dir.points = rule.points;
    dir.weights = Eigen::Map<const Eigen::VectorXd>(rule.weights.data(),
                                                     static_cast<Eigen::Index>(rule.weights.size()));
    dir.B0 = collocation_matrix(s, rule.points, 0);
    dir.B1 = collocation_matrix(s, rule.points, 1);
    dir.B2 = collocation_matrix(s, rule.points, 2);
    return dir;
}

Direction trivial_direction()
{
    Direction dir;
    dir.points = {0.0};
    dir.weights = Eigen::VectorXd::Ones(1);
    dir.B0 = Eigen::MatrixXd::Ones(1, 1);
    dir.B1 = Eigen::MatrixXd::Zero(1, 1);
    dir.B2 = Eigen::MatrixXd::Zero(1, 1);
    dir.trivial = true;
    return dir;
}

Eigen::VectorXd factor_values(const DerivableFunction& f, const Direction& dir, int k)
{
    Eigen::VectorXd v(static_cast<Eigen::Index>(dir.points.size()));
    if (dir.trivial) {
        v(0) = (k == 0) ? 1.0 : 0.0;
        return v;
    }
    for (std::size_t i = 0; i < dir.points.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = f(dir.points[i], k);
    return v;
}

struct Sums {
    double e_val = 0, e_grad = 0, e_dt = 0, e_lap = 0;
    double u_val = 0, u_grad = 0, u_dt = 0, u_lap = 0;
};

class SpatialSampler {
public:
    SpatialSampler(const std::vector<SplineSpace1D>& spaces, const ManufacturedCase& c)
        : c_(c)
    {
        if (static_cast<int>(spaces.size()) != c.d)
            throw ParameterError("error norms: case dimension does not match the spaces");
        x_ = sample(spaces[0]);
        y_ = spaces.size() > 1 ? sample(spaces[1]) : trivial_direction();
        nx_ = static_cast<int>(x_.B0.cols());
        ny_ = static_cast<int>(y_.B0.cols());
        W_ = x_.weights * y_.weights.transpose();
        for (const auto& term : c.terms) {
            TermSamples ts;
            for (int k = 0; k <= 2; ++k) {
                ts.sx[k] = factor_values(term.space[0], x_, k);
                ts.sy[k] = c.d > 1 ? factor_values(term.space[1], y_, k) : factor_values({}, y_, k);
            }
            samples_.push_back(std::move(ts));
        }
    }

    int n_s() const { return nx_ * ny_; }

    // Accumulate weighted squared errors at one time instant. `ut` may be
    // null when time derivatives are not needed.
    void accumulate(const Eigen::VectorXd& u, const Eigen::VectorXd* ut, double t, double wt,
                    Sums& s) const
    {
        const Eigen::Map<const Eigen::MatrixXd> U(u.data(), nx_, ny_);
        const Eigen::MatrixXd T0 = U * y_.B0.transpose();
        const Eigen::MatrixXd T1 = U * y_.B1.transpose();
        const Eigen::MatrixXd T2 = U * y_.B2.transpose();
        const Eigen::MatrixXd val = x_.B0 * T0;
        const Eigen::MatrixXd dx = x_.B1 * T0;
        const Eigen::MatrixXd dy = x_.B0 * T1;
        const Eigen::MatrixXd lap = x_.B2 * T0 + x_.B0 * T2;

        const Eigen::Index qx = val.rows(), qy = val.cols();
        Eigen::MatrixXd ev = Eigen::MatrixXd::Zero(qx, qy), edx = ev, edy = ev, elap = ev, edt = ev;
        for (std::size_t k = 0; k < samples_.size(); ++k) {
            const auto& term = c_.terms[k];
            const auto& ts = samples_[k];
            const double g0 = term.time(t, 0);
            ev.noalias() += g0 * ts.sx[0] * ts.sy[0].transpose();
            edx.noalias() += g0 * ts.sx[1] * ts.sy[0].transpose();
            edy.noalias() += g0 * ts.sx[0] * ts.sy[1].transpose();
            elap.noalias() += g0 * (ts.sx[2] * ts.sy[0].transpose() + ts.sx[0] * ts.sy[2].transpose());
            if (ut)
                edt.noalias() += term.time(t, 1) * ts.sx[0] * ts.sy[0].transpose();
        }
        const auto w = (wt * W_).array();
        s.e_val += (w * (val - ev).array().square()).sum();
        s.e_grad += (w * ((dx - edx).array().square() + (dy - edy).array().square())).sum();
        s.e_lap += (w * (lap - elap).array().square()).sum();
        s.u_val += (w * ev.array().square()).sum();
        s.u_grad += (w * (edx.array().square() + edy.array().square())).sum();
        s.u_lap += (w * elap.array().square()).sum();
        if (ut) {
            const Eigen::Map<const Eigen::MatrixXd> Ut(ut->data(), nx_, ny_);
            const Eigen::MatrixXd dt = x_.B0 * (Ut * y_.B0.transpose());
            s.e_dt += (w * (dt - edt).array().square()).sum();
            s.u_dt += (w * edt.array().square()).sum();
        }
    }

private:
    struct TermSamples {
        Eigen::VectorXd sx[3], sy[3];
    };
    const ManufacturedCase& c_;
    Direction x_, y_;
    int nx_ = 0, ny_ = 0;
    Eigen::MatrixXd W_;
    std::vector<TermSamples> samples_;
};

double ratio(double num, double den)
{
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

void check_length(const Eigen::VectorXd& coeffs, const SpaceTimeSystem& sys)
{
    if (coeffs.size() != sys.n_dof())
        throw ParameterError("error norms: coefficient length does not equal N_dof");
}

} // namespace

SpaceTimeErrors error_norms_spacetime(const Eigen::VectorXd& coeffs, const SpaceTimeSystem& sys,
                                      const ManufacturedCase& c)
{
    check_length(coeffs, sys);
    const SpatialSampler sampler(sys.spatial.spaces, c);
    const int ns = sys.n_s(), nt = sys.n_t();
    const Eigen::Map<const Eigen::MatrixXd> X(coeffs.data(), ns, nt);

    const auto& tspace = sys.time_trial;
    const CompositeRule trule = composite_rule(tspace.knot_vector(), tspace.degree() + 3);
    const Eigen::MatrixXd Bt0 = collocation_matrix(tspace, trule.points, 0);
    const Eigen::MatrixXd Bt1 = collocation_matrix(tspace, trule.points, 1);
    const Eigen::MatrixXd U = X * Bt0.transpose();
    const Eigen::MatrixXd Ut = X * Bt1.transpose();

    Sums s;
    for (std::size_t q = 0; q < trule.points.size(); ++q) {
        const auto qi = static_cast<Eigen::Index>(q);
        const Eigen::VectorXd u = U.col(qi), ut = Ut.col(qi);
        sampler.accumulate(u, &ut, trule.points[q], trule.weights[q], s);
    }

    SpaceTimeErrors e;
    e.abs_l2l2 = std::sqrt(s.e_val);
    e.abs_h1mix = std::sqrt(s.e_grad + s.e_dt);
    e.abs_x = std::sqrt(s.e_dt + s.e_lap);
    e.l2l2 = ratio(s.e_val, s.u_val);
    e.h1mix = ratio(s.e_grad + s.e_dt, s.u_grad + s.u_dt);
    e.x = ratio(s.e_dt + s.e_lap, s.u_dt + s.u_lap);
    return e;
}

SpatialErrors spatial_error_norms(const Eigen::VectorXd& spatial_coeffs,
                                  const std::vector<SplineSpace1D>& spaces,
                                  const ManufacturedCase& c, double t)
{
    const SpatialSampler sampler(spaces, c);
    if (spatial_coeffs.size() != sampler.n_s())
        throw ParameterError("spatial_error_norms: coefficient length does not equal n_s");
    Sums s;
    sampler.accumulate(spatial_coeffs, nullptr, t, 1.0, s);
    SpatialErrors e;
    e.abs_l2 = std::sqrt(s.e_val);
    e.abs_h1 = std::sqrt(s.e_grad);
    e.abs_h2 = std::sqrt(s.e_lap);
    e.l2 = ratio(s.e_val, s.u_val);
    e.h1 = ratio(s.e_grad, s.u_grad);
    e.h2 = ratio(s.e_lap, s.u_lap);
    return e;
}

Eigen::VectorXd time_slice(const Eigen::VectorXd& coeffs, const SpaceTimeSystem& sys, double t)
{
    check_length(coeffs, sys);
    const Eigen::Map<const Eigen::MatrixXd> X(coeffs.data(), sys.n_s(), sys.n_t());
    return X * sys.time_trial.eval_all(t, 0);
}

SpatialErrors error_norms_final_time(const Eigen::VectorXd& coeffs, const SpaceTimeSystem& sys,
                                     const ManufacturedCase& c)
{
    const double T = sys.time_trial.interval().b;
    return spatial_error_norms(time_slice(coeffs, sys, T), sys.spatial.spaces, c, T);
}

} // namespace bihw
