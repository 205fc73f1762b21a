#include "bihw/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "bihw/error.hpp"

namespace bihw {

QuadratureRule gauss_rule(int n)
{
    if (n < 1 || n > 64)
        throw ParameterError("gauss_rule: n must lie in [1, 64]");

    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton on P_n over [-1,1], symmetric pairs, then map to [0,1].
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // x is the i-th largest root
        rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
        rule.nodes[i] = 0.5 * (1.0 - x);
        rule.weights[n - 1 - i] = 0.5 * w;
        rule.weights[i] = 0.5 * w;
    }
    if (n % 2 == 1)
        rule.nodes[n / 2] = 0.5;
    return rule;
}

CompositeRule composite_rule(const KnotVector& kv, int points_per_span)
{
    const QuadratureRule ref = gauss_rule(points_per_span);
    const auto bp = kv.breakpoints();
    CompositeRule out;
    const std::size_t total = (bp.size() - 1) * ref.nodes.size();
    out.points.reserve(total);
    out.weights.reserve(total);
    out.span_of_point.reserve(total);
    for (std::size_t e = 0; e + 1 < bp.size(); ++e) {
        const double a = bp[e], h = bp[e + 1] - bp[e];
        for (int q = 0; q < ref.size(); ++q) {
            out.points.push_back(a + h * ref.nodes[q]);
            out.weights.push_back(h * ref.weights[q]);
            out.span_of_point.push_back(static_cast<int>(e));
        }
    }
    return out;
}

} // namespace bihw
