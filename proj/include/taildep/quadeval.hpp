#ifndef TAILDEP_QUADEVAL_HPP
#define TAILDEP_QUADEVAL_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "taildep/distmodel.hpp"

namespace taildep {

// Quadrature evaluation of the mixture X = R W: marginal and joint survival,
// quantiles, the sub-asymptotic chi(q) curve and eta diagnostics.

struct SurvivalResult {
    double value = 0.0;
    double abs_err = 0.0;
};

// P(X1 >= x) = int Fbar_W(x/r) dF_R(r); relative tolerance 1e-10.
double marginal_survival(const ConstructionSpec& spec, double x);
SurvivalResult marginal_survival_err(const ConstructionSpec& spec, double x);

// P(X1 >= x, X2 >= x) = int P(W_min >= x/r) dF_R(r).
double joint_min_survival(const ConstructionSpec& spec, double x);
SurvivalResult joint_min_survival_err(const ConstructionSpec& spec, double x);

// Inverts the marginal distribution by bisection: |F(x) - q| <= 1e-11
// (relative refinement near q = 1).
double quantile(const ConstructionSpec& spec, double q);

struct ChiCurve {
    std::vector<double> q_grid;
    std::vector<double> values;
    std::vector<double> abs_err_est;
    std::string method = "quadrature";
    double rel_tol = 1e-10;
};

// chi(q) = joint survival at the q-quantile divided by 1-q; grid points are
// evaluated concurrently and assembled in grid order.
ChiCurve chi_curve(const ConstructionSpec& spec, const std::vector<double>& q_grid,
                   int nthreads = 0);

struct EtaDiagnostic {
    std::vector<double> x;                // retained grid points
    std::vector<double> ratio;            // log marginal / log joint
    std::vector<std::size_t> dropped;     // indices whose survival underflowed
    double extrapolated = 0.0;
    std::string fit_form;
};

// Pointwise log-survival ratios with an extrapolated limit: fits
// ratio = eta + kappa / (-log joint survival) on the last three points.
EtaDiagnostic eta_diagnostic(const ConstructionSpec& spec, const std::vector<double>& x_grid);

// Endpoint data of a bounded factor S for the product-tail approximations.
struct SEndpoint {
    double s_star = 1.0;
    double alpha_s = 1.0;
    double ell_limit = 1.0;
};

// Asymptotic approximation of P(RS >= x) for R in the Gumbel MDA (via the
// auxiliary function) or the negative Weibull MDA; includes the endpoint
// rescaling RS = s* R x (S/s*).
double product_tail_approx(const UnivariateModel& r, const SEndpoint& s, double x);

// marginal_survival(x) / (E(W^alpha) Fbar_R(x)) for regularly varying R;
// approaches 1 as x grows.
double breiman_check(const UnivariateModel& r, const UnivariateModel& w, double x);

std::string chi_curve_csv(const ChiCurve& c);

}  // namespace taildep

#endif
