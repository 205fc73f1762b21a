#pragma once

#include <vector>

#include <Eigen/Dense>

#include "bihw/cases.hpp"
#include "bihw/system.hpp"

namespace bihw {

/// Space-time errors of u_h - u. Relative values are divided by the same
/// norm of u; the abs_* fields are the unnormalized error norms.
struct SpaceTimeErrors {
    double l2l2 = 0.0;  ///< L2(L2)
    double h1mix = 0.0; ///< (|grad e|^2 + |d_t e|^2)^{1/2}
    double x = 0.0;     ///< (|d_t e|^2 + |Delta e|^2)^{1/2}
    double abs_l2l2 = 0.0;
    double abs_h1mix = 0.0;
    double abs_x = 0.0;
};

/// Per-span Gauss rules with degree+3 points in every direction.
SpaceTimeErrors error_norms_spacetime(const Eigen::VectorXd& coeffs, const SpaceTimeSystem& sys,
                                      const ManufacturedCase& c);

/// Errors of a spatial field against u(., t): L2, H1_0 seminorm |grad e|,
/// H2_0 norm |Delta e|.
struct SpatialErrors {
    double l2 = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;
    double abs_l2 = 0.0;
    double abs_h1 = 0.0;
    double abs_h2 = 0.0;
};

SpatialErrors spatial_error_norms(const Eigen::VectorXd& spatial_coeffs,
                                  const std::vector<SplineSpace1D>& spaces,
                                  const ManufacturedCase& c, double t);

/// Spatial coefficients of u_h(., t): X * psi(t).
Eigen::VectorXd time_slice(const Eigen::VectorXd& coeffs, const SpaceTimeSystem& sys, double t);

/// Errors of u_h(., T) (right-endpoint trace of the space-time spline).
SpatialErrors error_norms_final_time(const Eigen::VectorXd& coeffs, const SpaceTimeSystem& sys,
                                     const ManufacturedCase& c);

} // namespace bihw
