#include "bihw/cases.hpp"

#include <cmath>
#include <numbers>

#include "bihw/error.hpp"

namespace bihw {

double sin2pi(double x, int k)
{
    using std::numbers::pi;
    if (k == 0) {
        const double s = std::sin(pi * x);
        return s * s;
    }
    // sin^2(pi x) = (1 - cos(2 pi x)) / 2
    return -0.5 * std::pow(2.0 * pi, k) * std::cos(2.0 * pi * x + 0.5 * k * pi);
}

double t_squared(double t, int k)
{
    switch (k) {
    case 0: return t * t;
    case 1: return 2.0 * t;
    case 2: return 2.0;
    default: return 0.0;
    }
}

double ManufacturedCase::eval(std::span<const double> x, double t, int time_order,
                              std::array<int, 2> space_orders) const
{
    double s = 0.0;
    for (const auto& term : terms) {
        double v = term.time(t, time_order);
        for (int l = 0; l < d; ++l)
            v *= term.space[l](x[l], space_orders[l]);
        s += v;
    }
    return s;
}

double ManufacturedCase::laplacian(std::span<const double> x, double t) const
{
    double lap = eval(x, t, 0, {2, 0});
    if (d == 2)
        lap += eval(x, t, 0, {0, 2});
    return lap;
}

std::array<double, 2> ManufacturedCase::gradient(std::span<const double> x, double t) const
{
    std::array<double, 2> g{eval(x, t, 0, {1, 0}), 0.0};
    if (d == 2)
        g[1] = eval(x, t, 0, {0, 1});
    return g;
}

namespace {

std::function<double(double)> order(const DerivableFunction& f, int k, double scale = 1.0)
{
    return [f, k, scale](double x) { return scale * f(x, k); };
}

} // namespace

SeparableForcing forcing_from_terms(const std::vector<FieldTerm>& terms, int d)
{
    if (d != 1 && d != 2)
        throw ParameterError("forcing_from_terms: d must be 1 or 2");
    SeparableForcing f;
    for (const auto& term : terms) {
        if (static_cast<int>(term.space.size()) != d)
            throw ParameterError("forcing_from_terms: term has wrong number of space factors");
        // d_tt u
        SeparableTerm tt{order(term.time, 2), {}};
        for (int l = 0; l < d; ++l)
            tt.space.push_back(order(term.space[l], 0));
        f.terms.push_back(std::move(tt));
        if (d == 1) {
            f.terms.push_back({order(term.time, 0), {order(term.space[0], 4)}});
        } else {
            const auto& sx = term.space[0];
            const auto& sy = term.space[1];
            f.terms.push_back({order(term.time, 0), {order(sx, 4), order(sy, 0)}});
            f.terms.push_back({order(term.time, 0), {order(sx, 2, 2.0), order(sy, 2)}});
            f.terms.push_back({order(term.time, 0), {order(sx, 0), order(sy, 4)}});
        }
    }
    return f;
}

ManufacturedCase make_case(std::string name, int d, std::vector<FieldTerm> terms, double T)
{
    ManufacturedCase c;
    c.name = std::move(name);
    c.d = d;
    c.T = T;
    c.forcing = forcing_from_terms(terms, d);
    c.terms = std::move(terms);
    return c;
}

ManufacturedCase manufactured_case(const std::string& name)
{
    if (name == "line1d")
        return make_case(name, 1, {FieldTerm{t_squared, {sin2pi}}});
    if (name == "square2d")
        return make_case(name, 2, {FieldTerm{t_squared, {sin2pi, sin2pi}}});
    throw ParameterError("unknown manufactured case '" + name + "' (expected line1d or square2d)");
}

} // namespace bihw
