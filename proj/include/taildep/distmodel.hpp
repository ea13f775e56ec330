#ifndef TAILDEP_DISTMODEL_HPP
#define TAILDEP_DISTMODEL_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "taildep/normgeom.hpp"
#include "taildep/rng.hpp"
#include "taildep/tailclass.hpp"

namespace taildep {

// Univariate distribution with support in [support_lo, endpoint]. Sampling is
// by quantile inversion so that batches depend only on the uniform stream.
class UnivariateModel {
   public:
    virtual ~UnivariateModel() = default;

    virtual std::string family() const = 0;
    virtual std::map<std::string, double> params() const { return {}; }

    virtual double survival(double x) const = 0;
    virtual double cdf(double x) const { return 1.0 - survival(x); }
    virtual double log_survival(double x) const;
    virtual double density(double x) const;
    virtual double quantile(double q) const;
    double sample(double u) const { return quantile(u); }

    // E[X^p]; +inf when the tail class implies divergence
    virtual double moment(double p) const;

    virtual TailClass tail_class() const = 0;
    virtual double endpoint() const { return inf; }
    virtual double support_lo() const { return 0.0; }

    // Gumbel-MDA auxiliary function; the hazard rate by default
    virtual double aux_b(double t) const { return density(t) / survival(t); }

    std::string describe() const;
};

using ModelPtr = std::shared_ptr<const UnivariateModel>;

ModelPtr make_uniform();
ModelPtr make_beta(double a, double b);
ModelPtr make_exponential(double rate);
ModelPtr make_weibull(double shape, double scale = 1.0);
ModelPtr make_gamma(double shape, double rate);
ModelPtr make_pareto(double alpha);
ModelPtr make_frechet(double alpha);
ModelPtr make_gpd(double xi);  // unit scale generalized Pareto, any xi
ModelPtr make_lognormal(double meanlog, double sdlog);
// Gumbel location family conditioned to (0, inf)
ModelPtr make_gumbel_positive(double loc, double scale);
// spectral Z of the logistic model on (0,1), dependence parameter theta in (0,1)
ModelPtr make_logistic_spectral(double theta);
ModelPtr make_point_mass(double value);

// Archimedean generator to radial law: survival(r) = psi(r) - r psi'(r+).
// The generator is probed for validity; throws invalid_generator_error.
ModelPtr radial_from_generator(std::function<double(double)> psi,
                               std::function<double(double)> psi_right_deriv);

// ---------------------------------------------------------------------------

// Bivariate angular law with identical margins.
class AngularModel {
   public:
    virtual ~AngularModel() = default;

    virtual std::string kind() const = 0;

    virtual double margin_survival(double x) const = 0;  // P(W1 >= x)
    virtual double margin_endpoint() const = 0;
    virtual double margin_atom() const { return 0.0; }  // P(W1 = endpoint)
    virtual double min_survival(double x) const = 0;    // P(W1 >= x, W2 >= x)
    virtual double min_endpoint() const = 0;
    virtual double joint_cdf(double a, double b) const = 0;  // P(W1 <= a, W2 <= b)

    // one draw from the pair; consumes at most two uniforms
    virtual std::pair<double, double> sample(double u1, double u2) const = 0;

    virtual double margin_moment(double p) const;
    virtual double min_moment(double p) const;

    virtual TailClass margin_class() const = 0;
    virtual std::optional<TailClass> min_class() const { return std::nullopt; }
    virtual std::optional<double> chi_w() const { return std::nullopt; }
    virtual std::optional<double> eta_w() const { return std::nullopt; }

    virtual std::string describe() const = 0;
};

using AngularPtr = std::shared_ptr<const AngularModel>;

AngularPtr make_independent_pair(ModelPtr w);
AngularPtr make_comonotone_pair(ModelPtr w);
AngularPtr make_gaussian_copula_pair(double rho, ModelPtr margin);
AngularPtr make_constrained_sphere(NormPtr norm, ModelPtr z_dist);

// accessors used by the engines
struct ConstrainedView {
    NormPtr norm;
    ModelPtr z;
};
std::optional<ConstrainedView> as_constrained(const AngularModel& a);

// P(min(W1,W2) >= x) convenience wrapper named after the operation
inline double min_survival(const AngularModel& a, double x) { return a.min_survival(x); }

// full generative model X = R (W1, W2)
struct ConstructionSpec {
    ModelPtr radial;
    AngularPtr angular;
    // optional tag carried by preset models ("model1"/"model2"), "" otherwise
    std::string preset;
    std::map<std::string, double> preset_params;
};

ConstructionSpec make_model1(double delta, double theta, double z_alpha);
ConstructionSpec make_model2(double xi, double alpha);

}  // namespace taildep

#endif
