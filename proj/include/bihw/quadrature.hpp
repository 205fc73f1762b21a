#pragma once

#include <vector>

#include "bihw/splines.hpp"

namespace bihw {

/// Gauss-Legendre rule on the reference interval [0,1]; weights sum to 1.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    int size() const { return static_cast<int>(nodes.size()); }
};

/// n-point Gauss-Legendre rule, 1 <= n <= 64, exact up to degree 2n-1.
QuadratureRule gauss_rule(int n);

/// Composite rule: `rule` mapped onto every nonempty span of `kv`.
/// Nodes are strictly inside spans, so knots are never sampled.
struct CompositeRule {
    std::vector<double> points;
    std::vector<double> weights;
    std::vector<int> span_of_point; ///< element index of each point
};

CompositeRule composite_rule(const KnotVector& kv, int points_per_span);

} // namespace bihw
