#ifndef TAILDEP_NORMGEOM_HPP
#define TAILDEP_NORMGEOM_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "taildep/common.hpp"

namespace taildep {

// Geometry of the angular constraint tau(z) = z / nu(z, 1-z) for a
// standardized symmetric norm nu (nu >= max with equality attained):
//   zeta          tau(1/2)
//   [b1, b2]      interval where tau = 1
//   gamma1/gamma2 regular-variation indices of 1 - tau approaching b1/b2
//   d_increasing / d_decreasing   one-sided derivatives of the two tau
//                 pieces at 1/2 (present only when b1 = b2 = 1/2)
struct NormProfile {
    double zeta = 1.0;
    double b1 = 0.5;
    double b2 = 1.0;
    double gamma1 = 1.0;
    std::optional<double> gamma2;
    std::optional<double> d_increasing;
    std::optional<double> d_decreasing;
};

class Norm {
   public:
    virtual ~Norm() = default;

    virtual std::string kind() const = 0;
    virtual std::vector<std::pair<std::string, double>> params() const { return {}; }

    // standardized norm value on the positive quadrant
    virtual double nu(double x, double y) const = 0;

    // factor K the raw norm was divided by during standardization
    virtual double standardization_constant() const { return 1.0; }

    double tau(double z) const;
    // 1 - tau(z), computed without cancellation where the norm permits
    virtual double one_minus_tau(double z) const;

    // inverse of the increasing piece tau1 on [0,b1]; clamped to b1 above
    virtual double tau1_inv(double t) const;
    // inverse of the decreasing piece tau2 on [b2,1]; returns 1 when tau(1)>=t
    virtual double tau2_inv(double t) const;

    // analytic profile where known, otherwise the numeric one
    virtual NormProfile profile(double tol = 1e-12) const;
};

using NormPtr = std::shared_ptr<const Norm>;

NormPtr make_lp_norm(double p);
NormPtr make_linf_norm();
// nu = theta*max + (1-theta)*min, theta >= 1/2 (standardized internally for
// theta < 1, dividing by theta so that zeta = theta).
NormPtr make_theta_mix_norm(double theta);
// Mahalanobis norm of a unit-diagonal covariance with correlation rho; kept
// in the elliptical normalization, zeta = sqrt((1+rho)/2).
NormPtr make_mahalanobis_norm(double rho);
// Custom norm given by g(z) = nu(z,1-z) on [0,1]; standardized by probing and
// validated (symmetry, positivity, convexity). Throws not_a_norm_error.
NormPtr make_custom_norm(std::function<double(double)> g, const std::string& name = "custom");
// Custom norm from tabulated (z, nu(z,1-z)) rows; monotone cubic interpolation.
NormPtr make_custom_norm_from_table(const std::vector<std::pair<double, double>>& rows,
                                    const std::string& name = "custom-table");

// Numeric profile (plateau location by bisection, gamma by log-log slope
// regression, one-sided derivatives by Richardson extrapolation). Used for
// custom norms and as a cross-check of the analytic overrides.
NormProfile numeric_profile(const Norm& n, double tol = 1e-12);

}  // namespace taildep

#endif
