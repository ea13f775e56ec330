#include "taildep/distmodel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "taildep/numeric.hpp"
#include "taildep/special.hpp"

namespace taildep {

std::string UnivariateModel::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << family();
    for (const auto& [k, v] : params()) os << ';' << k << '=' << v;
    return os.str();
}

double UnivariateModel::log_survival(double x) const {
    const double s = survival(x);
    if (s <= 0.0) return -inf;
    return std::log(s);
}

double UnivariateModel::density(double x) const {
    // central difference on the cdf; models with closed forms override
    const double h = std::max(1e-7, 1e-7 * std::abs(x));
    return (survival(x - h) - survival(x + h)) / (2.0 * h);
}

double UnivariateModel::quantile(double q) const {
    if (!(q >= 0.0) || !(q >= 0.0 && q < 1.0)) {
        if (q == 1.0 && endpoint() < inf) return endpoint();
        throw invalid_params_error("quantile: q must be in [0,1)");
    }
    double lo = support_lo();
    double hi = endpoint();
    if (!std::isfinite(hi)) {
        hi = std::max(1.0, lo + 1.0);
        while (cdf(hi) < q && hi < 1e300) hi *= 2.0;
    }
    return invert_monotone([this](double x) { return cdf(x); }, q, lo, hi, true, 0.0, 1e-12);
}

double UnivariateModel::moment(double p) const {
    if (p == 0.0) return 1.0;
    if (!(p > 0.0)) throw invalid_params_error("moment: p >= 0");
    // divergence decided from the tail class
    const TailClass tc = tail_class();
    if (const auto* r = tc.get_if<RegVarInf>()) {
        if (p > r->alpha) return inf;
        if (p == r->alpha) return inf;  // boundary: slowly varying factors are constants here
    }
    if (tc.is<SuperHeavy>()) return inf;
    if (const auto* l = tc.get_if<LogWeibullType>()) {
        if (l->beta < 1.0) return inf;
        if (l->beta == 1.0 && p >= l->alpha) return inf;
    }
    auto integrand = [this, p](double x) { return p * std::pow(x, p - 1.0) * survival(x); };
    QuadOptions opts;
    opts.rel_tol = 1e-9;
    const double hi = endpoint();
    if (std::isfinite(hi)) {
        return integrate_or_throw(integrand, support_lo(), hi, opts, {quantile(0.5)});
    }
    const double mid = std::max(quantile(0.75), support_lo() + 1.0);
    QuadResult head = integrate(integrand, support_lo(), mid, opts, {quantile(0.5)});
    QuadResult tail = integrate_to_inf(integrand, mid, opts);
    if (!head.converged || !tail.converged)
        throw non_convergent_error("moment quadrature did not reach tolerance");
    return head.value + tail.value;
}

namespace {

class Uniform01 final : public UnivariateModel {
   public:
    std::string family() const override { return "uniform"; }
    double survival(double x) const override { return x <= 0 ? 1.0 : (x >= 1 ? 0.0 : 1.0 - x); }
    double density(double x) const override { return (x > 0 && x < 1) ? 1.0 : 0.0; }
    double quantile(double q) const override { return q; }
    double moment(double p) const override { return 1.0 / (p + 1.0); }
    TailClass tail_class() const override { return TailClass(NegWeibull{1.0, 1.0, 1.0}); }
    double endpoint() const override { return 1.0; }
};

class BetaModel final : public UnivariateModel {
   public:
    BetaModel(double a, double b) : a_(a), b_(b) {
        if (!(a > 0) || !(b > 0)) throw invalid_params_error("beta: shp1, shp2 > 0");
        log_b_ = log_beta(a, b);
    }
    std::string family() const override { return "beta"; }
    std::map<std::string, double> params() const override { return {{"shp1", a_}, {"shp2", b_}}; }
    double cdf(double x) const override {
        if (x <= 0) return 0.0;
        if (x >= 1) return 1.0;
        return reg_inc_beta(a_, b_, x);
    }
    double survival(double x) const override {
        if (x <= 0) return 1.0;
        if (x >= 1) return 0.0;
        return reg_inc_beta(b_, a_, 1.0 - x);
    }
    double density(double x) const override {
        if (x <= 0 || x >= 1) return 0.0;
        return std::exp((a_ - 1) * std::log(x) + (b_ - 1) * std::log1p(-x) - log_b_);
    }
    double moment(double p) const override {
        return std::exp(log_beta(a_ + p, b_) - log_b_);
    }
    TailClass tail_class() const override {
        return TailClass(NegWeibull{1.0, b_, 1.0 / (b_ * std::exp(log_b_))});
    }
    double endpoint() const override { return 1.0; }

   private:
    double a_, b_, log_b_;
};

class Exponential final : public UnivariateModel {
   public:
    explicit Exponential(double rate) : rate_(rate) {
        if (!(rate > 0)) throw invalid_params_error("exponential: rate > 0");
    }
    std::string family() const override { return "exponential"; }
    std::map<std::string, double> params() const override { return {{"rate", rate_}}; }
    double survival(double x) const override { return x <= 0 ? 1.0 : std::exp(-rate_ * x); }
    double log_survival(double x) const override { return x <= 0 ? 0.0 : -rate_ * x; }
    double density(double x) const override { return x < 0 ? 0.0 : rate_ * std::exp(-rate_ * x); }
    double quantile(double q) const override { return -std::log1p(-q) / rate_; }
    double moment(double p) const override {
        return std::exp(std::lgamma(1.0 + p) - p * std::log(rate_));
    }
    TailClass tail_class() const override { return TailClass(WeibullType{rate_, 1.0, 0.0, 1.0}); }
    double aux_b(double) const override { return rate_; }

   private:
    double rate_;
};

class WeibullModel final : public UnivariateModel {
   public:
    WeibullModel(double shape, double scale) : k_(shape), s_(scale) {
        if (!(shape > 0) || !(scale > 0)) throw invalid_params_error("weibull: shp, scl > 0");
    }
    std::string family() const override { return "weibull"; }
    std::map<std::string, double> params() const override { return {{"shp", k_}, {"scl", s_}}; }
    double survival(double x) const override {
        return x <= 0 ? 1.0 : std::exp(-std::pow(x / s_, k_));
    }
    double log_survival(double x) const override { return x <= 0 ? 0.0 : -std::pow(x / s_, k_); }
    double density(double x) const override {
        if (x <= 0) return 0.0;
        const double t = std::pow(x / s_, k_);
        return k_ / x * t * std::exp(-t);
    }
    double quantile(double q) const override {
        return s_ * std::pow(-std::log1p(-q), 1.0 / k_);
    }
    double moment(double p) const override {
        return std::pow(s_, p) * std::exp(std::lgamma(1.0 + p / k_));
    }
    TailClass tail_class() const override {
        return TailClass(WeibullType{std::pow(s_, -k_), k_, 0.0, 1.0});
    }

   private:
    double k_, s_;
};

class GammaModel final : public UnivariateModel {
   public:
    GammaModel(double shape, double rate) : k_(shape), r_(rate) {
        if (!(shape > 0) || !(rate > 0)) throw invalid_params_error("gamma: shp, rate > 0");
    }
    std::string family() const override { return "gamma"; }
    std::map<std::string, double> params() const override { return {{"shp", k_}, {"rate", r_}}; }
    double survival(double x) const override { return x <= 0 ? 1.0 : reg_upper_gamma(k_, r_ * x); }
    double cdf(double x) const override { return x <= 0 ? 0.0 : reg_lower_gamma(k_, r_ * x); }
    double density(double x) const override {
        if (x <= 0) return 0.0;
        return std::exp(k_ * std::log(r_) + (k_ - 1) * std::log(x) - r_ * x - std::lgamma(k_));
    }
    double moment(double p) const override {
        return std::exp(std::lgamma(k_ + p) - std::lgamma(k_) - p * std::log(r_));
    }
    TailClass tail_class() const override {
        const double ell = std::pow(r_, k_ - 1.0) / std::tgamma(k_);
        return TailClass(WeibullType{r_, 1.0, k_ - 1.0, ell});
    }

   private:
    double k_, r_;
};

class ParetoModel final : public UnivariateModel {
   public:
    explicit ParetoModel(double alpha) : a_(alpha) {
        if (!(alpha > 0)) throw invalid_params_error("pareto: shp > 0");
    }
    std::string family() const override { return "pareto"; }
    std::map<std::string, double> params() const override { return {{"shp", a_}}; }
    double survival(double x) const override { return x <= 1 ? 1.0 : std::pow(x, -a_); }
    double log_survival(double x) const override { return x <= 1 ? 0.0 : -a_ * std::log(x); }
    double density(double x) const override { return x < 1 ? 0.0 : a_ * std::pow(x, -a_ - 1.0); }
    double quantile(double q) const override { return std::pow(1.0 - q, -1.0 / a_); }
    double moment(double p) const override { return p < a_ ? a_ / (a_ - p) : inf; }
    TailClass tail_class() const override { return TailClass(RegVarInf{a_}); }
    double support_lo() const override { return 1.0; }

   private:
    double a_;
};

class FrechetModel final : public UnivariateModel {
   public:
    explicit FrechetModel(double alpha) : a_(alpha) {
        if (!(alpha > 0)) throw invalid_params_error("frechet: shp > 0");
    }
    std::string family() const override { return "frechet"; }
    std::map<std::string, double> params() const override { return {{"shp", a_}}; }
    double survival(double x) const override {
        return x <= 0 ? 1.0 : -std::expm1(-std::pow(x, -a_));
    }
    double density(double x) const override {
        if (x <= 0) return 0.0;
        return a_ * std::pow(x, -a_ - 1.0) * std::exp(-std::pow(x, -a_));
    }
    double quantile(double q) const override { return std::pow(-std::log(q), -1.0 / a_); }
    double moment(double p) const override {
        return p < a_ ? std::exp(std::lgamma(1.0 - p / a_)) : inf;
    }
    TailClass tail_class() const override { return TailClass(RegVarInf{a_}); }

   private:
    double a_;
};

class GpdModel final : public UnivariateModel {
   public:
    explicit GpdModel(double xi) : xi_(xi) {}
    std::string family() const override { return "gpd"; }
    std::map<std::string, double> params() const override { return {{"shp", xi_}}; }
    double survival(double x) const override {
        if (x <= 0) return 1.0;
        if (xi_ == 0.0) return std::exp(-x);
        const double t = 1.0 + xi_ * x;
        if (t <= 0.0) return 0.0;
        return std::exp(-std::log(t) / xi_);
    }
    double log_survival(double x) const override {
        if (x <= 0) return 0.0;
        if (xi_ == 0.0) return -x;
        const double t = 1.0 + xi_ * x;
        if (t <= 0.0) return -inf;
        return -std::log(t) / xi_;
    }
    double density(double x) const override {
        if (x < 0) return 0.0;
        if (xi_ == 0.0) return std::exp(-x);
        const double t = 1.0 + xi_ * x;
        if (t <= 0.0) return 0.0;
        return std::pow(t, -1.0 / xi_ - 1.0);
    }
    double quantile(double q) const override {
        if (xi_ == 0.0) return -std::log1p(-q);
        return std::expm1(-xi_ * std::log1p(-q)) / xi_;
    }
    TailClass tail_class() const override {
        if (xi_ > 0) return TailClass(RegVarInf{1.0 / xi_});
        if (xi_ == 0) return TailClass(WeibullType{1.0, 1.0, 0.0, 1.0});
        const double a = -1.0 / xi_;
        return TailClass(NegWeibull{a, a, std::pow(-xi_, a)});
    }
    double endpoint() const override { return xi_ < 0 ? -1.0 / xi_ : inf; }
    double aux_b(double t) const override {
        if (xi_ == 0.0) return 1.0;
        return 1.0 / (1.0 + xi_ * t);
    }

   private:
    double xi_;
};

class LogNormalModel final : public UnivariateModel {
   public:
    LogNormalModel(double mu, double sigma) : mu_(mu), s_(sigma) {
        if (!(sigma > 0)) throw invalid_params_error("lognormal: sdlog > 0");
    }
    std::string family() const override { return "lognormal"; }
    std::map<std::string, double> params() const override {
        return {{"meanlog", mu_}, {"sdlog", s_}};
    }
    double survival(double x) const override {
        return x <= 0 ? 1.0 : normal_sf((std::log(x) - mu_) / s_);
    }
    double log_survival(double x) const override {
        return x <= 0 ? 0.0 : log_normal_sf((std::log(x) - mu_) / s_);
    }
    double density(double x) const override {
        if (x <= 0) return 0.0;
        return normal_pdf((std::log(x) - mu_) / s_) / (x * s_);
    }
    double quantile(double q) const override {
        return std::exp(mu_ + s_ * normal_quantile(q));
    }
    double moment(double p) const override { return std::exp(p * mu_ + 0.5 * p * p * s_ * s_); }
    TailClass tail_class() const override {
        std::optional<double> ell;
        if (mu_ == 0.0) ell = s_ / std::sqrt(2.0 * M_PI);
        return TailClass(LogWeibullType{1.0 / (2 * s_ * s_), 2.0, -1.0, ell});
    }

   private:
    double mu_, s_;
};

class GumbelPositive final : public UnivariateModel {
   public:
    GumbelPositive(double loc, double scale) : loc_(loc), s_(scale) {
        if (!(scale > 0)) throw invalid_params_error("gumbel: scl > 0");
        sf0_ = raw_sf(0.0);
        if (!(sf0_ > 0)) throw invalid_params_error("gumbel: no mass on (0,inf)");
    }
    std::string family() const override { return "gumbel"; }
    std::map<std::string, double> params() const override { return {{"loc", loc_}, {"scl", s_}}; }
    double survival(double x) const override { return x <= 0 ? 1.0 : raw_sf(x) / sf0_; }
    double density(double x) const override {
        if (x <= 0) return 0.0;
        const double t = std::exp(-(x - loc_) / s_);
        return t * std::exp(-t) / (s_ * sf0_);
    }
    double quantile(double q) const override {
        const double target = sf0_ * (1.0 - q);
        // invert 1 - exp(-exp(-(x-loc)/s)) = target
        const double inner = -std::log(-std::log1p(-target));
        return loc_ + s_ * inner;
    }
    TailClass tail_class() const override {
        return TailClass(WeibullType{1.0 / s_, 1.0, 0.0, std::exp(loc_ / s_) / sf0_});
    }
    double aux_b(double) const override { return 1.0 / s_; }

   private:
    double raw_sf(double x) const { return -std::expm1(-std::exp(-(x - loc_) / s_)); }
    double loc_, s_, sf0_;
};

// Density h of the spectral variable of the bivariate logistic model.
class LogisticSpectral final : public UnivariateModel {
   public:
    explicit LogisticSpectral(double theta) : th_(theta) {
        if (!(theta > 0) || !(theta < 1)) throw invalid_params_error("logistic spectral: theta in (0,1)");
    }
    std::string family() const override { return "logistic_spectral"; }
    std::map<std::string, double> params() const override { return {{"theta", th_}}; }
    double density(double w) const override {
        if (w <= 0 || w >= 1) return 0.0;
        const double it = 1.0 / th_;
        return std::pow(w * (1 - w), it - 2.0) *
               std::pow(std::pow(w, it) + std::pow(1 - w, it), th_ - 2.0) * (1 - th_) / (2 * th_);
    }
    double cdf(double w) const override {
        if (w <= 0) return 0.0;
        if (w >= 1) return 1.0;
        if (w > 0.5) return 1.0 - cdf(1.0 - w);
        return head_mass(w);
    }
    double survival(double w) const override { return 1.0 - cdf(w); }
    TailClass tail_class() const override {
        return TailClass(NegWeibull{1.0, 1.0 / th_ - 1.0, std::nullopt});
    }
    double endpoint() const override { return 1.0; }

   private:
    // \int_0^w h with the endpoint singularity w^{1/theta-2} lifted by the
    // substitution t = w s^kappa, kappa = 2 theta/(1-theta)
    double head_mass(double w) const {
        const double kappa = 2.0 * th_ / (1.0 - th_);
        auto f = [&](double s) {
            const double t = w * std::pow(s, kappa);
            return density(t) * w * kappa * std::pow(s, kappa - 1.0);
        };
        QuadOptions opts;
        opts.rel_tol = 1e-11;
        return integrate_or_throw(f, 0.0, 1.0, opts, {0.25, 0.5, 0.75});
    }
    double th_;
};

class PointMass final : public UnivariateModel {
   public:
    explicit PointMass(double c) : c_(c) {
        if (!(c > 0)) throw invalid_params_error("point mass: value > 0");
    }
    std::string family() const override { return "point_mass"; }
    std::map<std::string, double> params() const override { return {{"value", c_}}; }
    double survival(double x) const override { return x <= c_ ? 1.0 : 0.0; }
    double density(double) const override {
        throw error("point mass has no Lebesgue density");
    }
    double quantile(double) const override { return c_; }
    double moment(double p) const override { return std::pow(c_, p); }
    TailClass tail_class() const override {
        throw error("degenerate model has no tail class");
    }
    double endpoint() const override { return c_; }
    double support_lo() const override { return c_; }

   private:
    double c_;
};

class GeneratorRadial final : public UnivariateModel {
   public:
    GeneratorRadial(std::function<double(double)> psi, std::function<double(double)> dpsi)
        : psi_(std::move(psi)), dpsi_(std::move(dpsi)) {
        validate();
    }
    std::string family() const override { return "archimedean_radial"; }
    double survival(double r) const override {
        if (r <= 0) return 1.0;
        const double s = psi_(r) - r * dpsi_(r);
        return std::clamp(s, 0.0, 1.0);
    }
    double quantile(double q) const override {
        double hi = 1.0;
        while (survival(hi) > 1.0 - q && hi < 1e300) hi *= 2.0;
        return invert_monotone([this](double x) { return cdf(x); }, q, 0.0, hi, true, 0.0, 1e-12);
    }
    TailClass tail_class() const override {
        // estimate the Weibull-type index from the decay of -log survival
        std::vector<double> lx, ly;
        for (int i = 0; i < 12; ++i) {
            const double r = std::pow(10.0, 1.0 + i * 0.25);
            const double ls = -log_survival(r);
            if (!std::isfinite(ls) || ls <= 0) break;
            lx.push_back(std::log(r));
            ly.push_back(std::log(ls));
        }
        if (lx.size() < 4) throw error("generator radial: cannot estimate tail class");
        const LineFit fit = fit_line(lx, ly);
        const double beta = fit.slope;
        const double alpha = std::exp(fit.intercept);
        return TailClass(WeibullType{alpha, beta, 0.0, std::nullopt});
    }

   private:
    void validate() const {
        double prev_psi = psi_(0.0);
        if (std::abs(prev_psi - 1.0) > 1e-9)
            throw invalid_generator_error("generator: psi(0) must be 1");
        double prev_s = 1.0 + 1e-12;
        for (int i = 0; i <= 60; ++i) {
            const double r = 1e-3 * std::pow(10.0, 6.0 * i / 60.0);
            const double p = psi_(r);
            if (p > prev_psi + 1e-10) throw invalid_generator_error("generator: psi not non-increasing");
            prev_psi = p;
            const double h = std::max(1e-7, 1e-7 * r);
            const double fd = (psi_(r + h) - psi_(r)) / h;
            if (std::abs(fd - dpsi_(r)) > 1e-3 * (std::abs(fd) + std::abs(dpsi_(r))) + 1e-6)
                throw invalid_generator_error("generator: derivative inconsistent with psi");
            const double s = p - r * dpsi_(r);
            if (s < -1e-10 || s > 1.0 + 1e-10)
                throw invalid_generator_error("generator: induced survival exits [0,1]");
            if (s > prev_s + 1e-10)
                throw invalid_generator_error("generator: induced survival not non-increasing");
            prev_s = s;
        }
        if (psi_(1e6) > 1e-6) throw invalid_generator_error("generator: psi does not vanish at infinity");
    }

    std::function<double(double)> psi_, dpsi_;
};

}  // namespace

ModelPtr make_uniform() { return std::make_shared<Uniform01>(); }
ModelPtr make_beta(double a, double b) {
    if (a == 1.0 && b == 1.0) return make_uniform();
    return std::make_shared<BetaModel>(a, b);
}
ModelPtr make_exponential(double rate) { return std::make_shared<Exponential>(rate); }
ModelPtr make_weibull(double shape, double scale) {
    return std::make_shared<WeibullModel>(shape, scale);
}
ModelPtr make_gamma(double shape, double rate) { return std::make_shared<GammaModel>(shape, rate); }
ModelPtr make_pareto(double alpha) { return std::make_shared<ParetoModel>(alpha); }
ModelPtr make_frechet(double alpha) { return std::make_shared<FrechetModel>(alpha); }
ModelPtr make_gpd(double xi) { return std::make_shared<GpdModel>(xi); }
ModelPtr make_lognormal(double meanlog, double sdlog) {
    return std::make_shared<LogNormalModel>(meanlog, sdlog);
}
ModelPtr make_gumbel_positive(double loc, double scale) {
    return std::make_shared<GumbelPositive>(loc, scale);
}
ModelPtr make_logistic_spectral(double theta) { return std::make_shared<LogisticSpectral>(theta); }
ModelPtr make_point_mass(double value) { return std::make_shared<PointMass>(value); }
ModelPtr radial_from_generator(std::function<double(double)> psi,
                               std::function<double(double)> psi_right_deriv) {
    return std::make_shared<GeneratorRadial>(std::move(psi), std::move(psi_right_deriv));
}

// ---------------------------------------------------------------------------

double AngularModel::margin_moment(double p) const {
    auto f = [this, p](double x) { return p * std::pow(x, p - 1.0) * margin_survival(x); };
    QuadOptions opts;
    opts.rel_tol = 1e-11;
    const double hi = margin_endpoint();
    if (std::isfinite(hi)) return integrate_or_throw(f, 0.0, hi, opts, {hi * 0.5});
    QuadResult head = integrate(f, 0.0, 1.0, opts);
    QuadResult tail = integrate_to_inf(f, 1.0, opts);
    if (!head.converged || !tail.converged) throw non_convergent_error("margin moment quadrature");
    return head.value + tail.value;
}

double AngularModel::min_moment(double p) const {
    auto f = [this, p](double x) { return p * std::pow(x, p - 1.0) * min_survival(x); };
    QuadOptions opts;
    opts.rel_tol = 1e-11;
    const double hi = min_endpoint();
    if (std::isfinite(hi)) return integrate_or_throw(f, 0.0, hi, opts, {hi * 0.5});
    QuadResult head = integrate(f, 0.0, 1.0, opts);
    QuadResult tail = integrate_to_inf(f, 1.0, opts);
    if (!head.converged || !tail.converged) throw non_convergent_error("min moment quadrature");
    return head.value + tail.value;
}

namespace {

class IndependentPair final : public AngularModel {
   public:
    explicit IndependentPair(ModelPtr w) : w_(std::move(w)) {}
    std::string kind() const override { return "independent_pair"; }
    double margin_survival(double x) const override { return w_->survival(x); }
    double margin_endpoint() const override { return w_->endpoint(); }
    double min_survival(double x) const override {
        const double s = w_->survival(x);
        return s * s;
    }
    double min_endpoint() const override { return w_->endpoint(); }
    double joint_cdf(double a, double b) const override { return w_->cdf(a) * w_->cdf(b); }
    std::pair<double, double> sample(double u1, double u2) const override {
        return {w_->sample(u1), w_->sample(u2)};
    }
    double margin_moment(double p) const override { return w_->moment(p); }
    TailClass margin_class() const override { return w_->tail_class(); }
    std::optional<TailClass> min_class() const override {
        return independent_min_class(w_->tail_class());
    }
    std::optional<double> chi_w() const override { return 0.0; }
    std::optional<double> eta_w() const override { return 0.5; }
    std::string describe() const override { return "independent_pair(" + w_->describe() + ")"; }
    const UnivariateModel& w() const { return *w_; }

   private:
    ModelPtr w_;
};

class ComonotonePair final : public AngularModel {
   public:
    explicit ComonotonePair(ModelPtr w) : w_(std::move(w)) {}
    std::string kind() const override { return "comonotone_pair"; }
    double margin_survival(double x) const override { return w_->survival(x); }
    double margin_endpoint() const override { return w_->endpoint(); }
    double min_survival(double x) const override { return w_->survival(x); }
    double min_endpoint() const override { return w_->endpoint(); }
    double joint_cdf(double a, double b) const override {
        return std::min(w_->cdf(a), w_->cdf(b));
    }
    std::pair<double, double> sample(double u1, double) const override {
        const double w = w_->sample(u1);
        return {w, w};
    }
    double margin_moment(double p) const override { return w_->moment(p); }
    double min_moment(double p) const override { return w_->moment(p); }
    TailClass margin_class() const override { return w_->tail_class(); }
    std::optional<TailClass> min_class() const override { return w_->tail_class(); }
    std::optional<double> chi_w() const override { return 1.0; }
    std::optional<double> eta_w() const override { return 1.0; }
    std::string describe() const override { return "comonotone_pair(" + w_->describe() + ")"; }

   private:
    ModelPtr w_;
};

class GaussianCopulaPair final : public AngularModel {
   public:
    GaussianCopulaPair(double rho, ModelPtr margin) : rho_(rho), w_(std::move(margin)) {
        if (!(rho > -1.0) || !(rho <= 1.0))
            throw invalid_params_error("gaussian copula: rho in (-1,1]");
    }
    std::string kind() const override { return "gaussian_copula_pair"; }
    double margin_survival(double x) const override { return w_->survival(x); }
    double margin_endpoint() const override { return w_->endpoint(); }
    double min_survival(double x) const override {
        const double s = w_->survival(x);
        if (s <= 0.0) return 0.0;
        if (s >= 1.0) return 1.0;
        if (rho_ == 1.0) return s;
        const double z = s < 0.5 ? -normal_quantile(s) : normal_quantile(1.0 - s);
        return binormal_orthant(z, z, rho_);
    }
    double min_endpoint() const override { return w_->endpoint(); }
    double joint_cdf(double a, double b) const override {
        const double fa = w_->cdf(a);
        const double fb = w_->cdf(b);
        if (fa <= 0.0 || fb <= 0.0) return 0.0;
        if (fa >= 1.0) return fb;
        if (fb >= 1.0) return fa;
        if (rho_ == 1.0) return std::min(fa, fb);
        const double za = normal_quantile(fa);
        const double zb = normal_quantile(fb);
        return std::max(0.0, fa + fb - 1.0 + binormal_orthant(za, zb, rho_));
    }
    std::pair<double, double> sample(double u1, double u2) const override {
        const double v1 = normal_quantile(u1);
        const double v2 = rho_ * v1 + std::sqrt(1.0 - rho_ * rho_) * normal_quantile(u2);
        return {w_->sample(normal_cdf(v1)), w_->sample(normal_cdf(v2))};
    }
    double margin_moment(double p) const override { return w_->moment(p); }
    TailClass margin_class() const override { return w_->tail_class(); }
    std::optional<TailClass> min_class() const override {
        if (rho_ == 1.0) return w_->tail_class();
        try {
            return gaussian_copula_min_class(w_->tail_class(), rho_);
        } catch (const error&) {
            return std::nullopt;
        }
    }
    std::optional<double> chi_w() const override { return rho_ == 1.0 ? 1.0 : 0.0; }
    std::optional<double> eta_w() const override { return 0.5 * (1.0 + rho_); }
    std::string describe() const override {
        std::ostringstream os;
        os.precision(17);
        os << "gaussian_copula_pair(rho=" << rho_ << ';' << w_->describe() << ")";
        return os.str();
    }
    double rho() const { return rho_; }

   private:
    double rho_;
    ModelPtr w_;
};

class ConstrainedSphere final : public AngularModel {
   public:
    ConstrainedSphere(NormPtr norm, ModelPtr z) : norm_(std::move(norm)), z_(std::move(z)) {
        if (z_->endpoint() != 1.0 || z_->support_lo() != 0.0)
            throw invalid_params_error("constrained sphere: Z must live on (0,1)");
        profile_ = norm_->profile();
        atom_ = profile_.b2 > profile_.b1
                    ? std::max(0.0, z_->cdf(profile_.b2) - z_->cdf(profile_.b1))
                    : 0.0;
    }
    std::string kind() const override { return "constrained_sphere"; }
    double margin_survival(double t) const override {
        if (t <= 0.0) return 1.0;
        if (t > 1.0) return 0.0;
        const double z1 = norm_->tau1_inv(t);
        const double z2 = norm_->tau2_inv(t);
        return std::max(0.0, z_->cdf(z2) - z_->cdf(z1));
    }
    double margin_endpoint() const override { return 1.0; }
    double margin_atom() const override { return atom_; }
    double min_survival(double t) const override {
        if (t <= 0.0) return 1.0;
        if (t > profile_.zeta) return 0.0;
        const double a = norm_->tau1_inv(t);
        if (a >= 0.5) return 0.0;
        return std::max(0.0, z_->cdf(1.0 - a) - z_->cdf(a));
    }
    double min_endpoint() const override { return profile_.zeta; }
    double joint_cdf(double a, double b) const override {
        using Iv = std::pair<double, double>;
        auto region = [this](double t) -> std::vector<Iv> {  // {z : tau(z) <= t}
            if (t >= 1.0) return {{0.0, 1.0}};
            if (t <= 0.0) return {};
            std::vector<Iv> out;
            const double z1 = norm_->tau1_inv(t);
            if (z1 > 0.0) out.push_back({0.0, z1});
            const double z2 = norm_->tau2_inv(t);
            if (z2 < 1.0) out.push_back({z2, 1.0});
            return out;
        };
        const std::vector<Iv> ra = region(a);
        std::vector<Iv> rb;
        for (const Iv& iv : region(b)) rb.push_back({1.0 - iv.second, 1.0 - iv.first});
        double prob = 0.0;
        for (const Iv& u : ra)
            for (const Iv& v : rb) {
                const double lo = std::max(u.first, v.first);
                const double hi = std::min(u.second, v.second);
                if (hi > lo) prob += z_->cdf(hi) - z_->cdf(lo);
            }
        return std::clamp(prob, 0.0, 1.0);
    }
    std::pair<double, double> sample(double u1, double) const override {
        const double z = z_->sample(u1);
        return {norm_->tau(z), norm_->tau(1.0 - z)};
    }
    double margin_moment(double p) const override {
        auto f = [&](double z) { return std::pow(norm_->tau(z), p) * z_->density(z); };
        QuadOptions opts;
        opts.rel_tol = 1e-11;
        return integrate_or_throw(f, 0.0, 1.0, opts, {0.5, profile_.b1, profile_.b2});
    }
    double min_moment(double p) const override {
        auto f = [&](double z) { return std::pow(norm_->tau(z), p) * z_->density(z); };
        QuadOptions opts;
        opts.rel_tol = 1e-11;
        return 2.0 * integrate_or_throw(f, 0.0, 0.5, opts, {0.25});
    }
    TailClass margin_class() const override {
        // Fbar_W(1-s) behaves like s^{alpha_Z gamma1} when b=1, else linearly
        const TailClass zc = z_->tail_class();
        const auto* nz = zc.get_if<NegWeibull>();
        const double alpha_z = nz ? nz->alpha : 1.0;
        if (profile_.b2 >= 1.0 && profile_.b1 >= 1.0)
            return TailClass(NegWeibull{1.0, alpha_z * profile_.gamma1, std::nullopt});
        return TailClass(NegWeibull{1.0, 1.0, std::nullopt});
    }
    std::string describe() const override {
        std::ostringstream os;
        os.precision(17);
        os << "constrained_sphere(" << norm_->kind();
        for (const auto& [k, v] : norm_->params()) os << ';' << k << '=' << v;
        os << ';' << z_->describe() << ")";
        return os.str();
    }
    NormPtr norm_ptr() const { return norm_; }
    ModelPtr z_ptr() const { return z_; }
    const NormProfile& profile() const { return profile_; }

   private:
    NormPtr norm_;
    ModelPtr z_;
    NormProfile profile_;
    double atom_ = 0.0;
};

}  // namespace

AngularPtr make_independent_pair(ModelPtr w) {
    return std::make_shared<IndependentPair>(std::move(w));
}
AngularPtr make_comonotone_pair(ModelPtr w) {
    return std::make_shared<ComonotonePair>(std::move(w));
}
AngularPtr make_gaussian_copula_pair(double rho, ModelPtr margin) {
    return std::make_shared<GaussianCopulaPair>(rho, std::move(margin));
}
AngularPtr make_constrained_sphere(NormPtr norm, ModelPtr z_dist) {
    return std::make_shared<ConstrainedSphere>(std::move(norm), std::move(z_dist));
}

std::optional<ConstrainedView> as_constrained(const AngularModel& a) {
    if (const auto* cs = dynamic_cast<const ConstrainedSphere*>(&a)) {
        ConstrainedView v;
        v.norm = cs->norm_ptr();
        v.z = cs->z_ptr();
        return v;
    }
    return std::nullopt;
}

ConstructionSpec make_model1(double delta, double theta, double z_alpha) {
    ConstructionSpec spec;
    spec.radial = make_weibull(delta, 1.0);
    spec.angular = make_constrained_sphere(make_theta_mix_norm(theta), make_beta(z_alpha, z_alpha));
    spec.preset = "model1";
    spec.preset_params = {{"delta", delta}, {"theta", theta}, {"z_alpha", z_alpha}};
    return spec;
}

ConstructionSpec make_model2(double xi, double alpha) {
    ConstructionSpec spec;
    spec.radial = make_gpd(xi);
    spec.angular = make_independent_pair(make_beta(alpha, alpha));
    spec.preset = "model2";
    spec.preset_params = {{"xi", xi}, {"alpha", alpha}};
    return spec;
}

}  // namespace taildep
