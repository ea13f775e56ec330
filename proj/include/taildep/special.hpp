#ifndef TAILDEP_SPECIAL_HPP
#define TAILDEP_SPECIAL_HPP

namespace taildep {

double log_beta(double a, double b);

// Regularized incomplete beta I_x(a,b).
double reg_inc_beta(double a, double b, double x);

// Regularized lower incomplete gamma P(a,x) and upper Q(a,x)=1-P(a,x).
double reg_lower_gamma(double a, double x);
double reg_upper_gamma(double a, double x);

double normal_pdf(double x);
double normal_cdf(double x);
double normal_sf(double x);
// log of the standard normal survival function, accurate far in the tail.
double log_normal_sf(double x);
double normal_quantile(double p);

// P(Z1 >= z1, Z2 >= z2) for standard bivariate normal with correlation rho.
double binormal_orthant(double z1, double z2, double rho);

}  // namespace taildep

#endif
