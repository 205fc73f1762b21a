#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bihw/assembly.hpp"

namespace bihw {

/// Scalar function of one variable with derivatives: f(x, k) = f^{(k)}(x).
using DerivableFunction = std::function<double(double, int)>;

/// One product term g(t) * prod_l s_l(x_l) of a separable field.
struct FieldTerm {
    DerivableFunction time;
    std::vector<DerivableFunction> space;
};

/// Exact solution u = sum of separable terms, with forcing
/// f = d_tt u + Delta^2 u and homogeneous initial / clamped boundary data.
struct ManufacturedCase {
    std::string name;
    int d = 1;
    double T = 1.0;
    std::vector<FieldTerm> terms;
    SeparableForcing forcing;

    /// Mixed derivative d_t^{time_order} d_{x_1}^{o_1} d_{x_2}^{o_2} u.
    double eval(std::span<const double> x, double t, int time_order,
                std::array<int, 2> space_orders = {0, 0}) const;
    double u(std::span<const double> x, double t) const { return eval(x, t, 0); }
    double u_t(std::span<const double> x, double t) const { return eval(x, t, 1); }
    double laplacian(std::span<const double> x, double t) const;
    std::array<double, 2> gradient(std::span<const double> x, double t) const;
};

/// f = d_tt u + Delta^2 u for a separable u, term by term.
SeparableForcing forcing_from_terms(const std::vector<FieldTerm>& terms, int d);

/// Case from explicit terms; the forcing is derived.
ManufacturedCase make_case(std::string name, int d, std::vector<FieldTerm> terms, double T = 1.0);

/// "line1d":   u = t^2 sin^2(pi x)            on (0,1)   x (0,1)
/// "square2d": u = t^2 sin^2(pi x) sin^2(pi y) on (0,1)^2 x (0,1)
ManufacturedCase manufactured_case(const std::string& name);

/// sin^2(pi x) and its derivatives.
double sin2pi(double x, int k);
/// t^2 and its derivatives.
double t_squared(double t, int k);

} // namespace bihw
