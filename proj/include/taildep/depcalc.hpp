#ifndef TAILDEP_DEPCALC_HPP
#define TAILDEP_DEPCALC_HPP

#include <optional>
#include <string>

#include "taildep/distmodel.hpp"
#include "taildep/normgeom.hpp"
#include "taildep/tailclass.hpp"

namespace taildep {

// Three-valued dependence coefficient.
class Coefficient {
   public:
    enum class Kind { Defined, NotDefined, Unknown };

    static Coefficient defined(double v);
    static Coefficient not_defined();
    static Coefficient unknown(std::string reason);

    Kind kind() const { return kind_; }
    bool is_defined() const { return kind_ == Kind::Defined; }
    double value() const;
    const std::string& reason() const { return reason_; }

    bool operator==(const Coefficient& o) const {
        return kind_ == o.kind_ && (kind_ != Kind::Defined || value_ == o.value_);
    }

   private:
    Kind kind_ = Kind::Unknown;
    double value_ = 0.0;
    std::string reason_;
};

struct DependenceSummary {
    Coefficient chi = Coefficient::unknown("unset");
    Coefficient eta = Coefficient::unknown("unset");
    std::string rule;
    std::string notes;
};

// Validates the structural invariants (values in [0,1]; chi > 0 forces eta = 1).
DependenceSummary finalize(DependenceSummary s);

// --- constrained angular support (norm sphere) ------------------------------

enum class Mda { Frechet, Gumbel, NegWeibull };

// Radial tail information consumed by the constrained dispatch: the MDA plus,
// in the Gumbel case, the index delta with -log Fbar_R in RV_delta (absent =
// unknown; superexponential = heavier than every power, e.g. -log Fbar ~ e^x).
struct ConstrainedRadial {
    Mda mda = Mda::Gumbel;
    double frechet_alpha = 0.0;              // Frechet MDA tail index (0 allowed)
    std::optional<double> log_tail_index;    // delta
    bool log_tail_superexp = false;
    double endpoint = inf;
    double negweib_alpha = 1.0;

    static ConstrainedRadial from_tail_class(const TailClass& c);
    static ConstrainedRadial gumbel_superexponential(double endpoint = inf);
};

// chi for a regularly varying radial s (Prop-1 route): alpha = 0 gives 1;
// otherwise E[min(W1^a/E W1^a, W2^a/E W2^a)], evaluated by deterministic
// quadrature for the catalog angular models; mc_budget > 0 switches to Monte
// Carlo with the reported standard error appended to the note.
Coefficient chi_frechet(double radial_alpha, const AngularModel& angular,
                        long mc_budget = 0, std::uint64_t seed = 1);

// (chi, eta) for the norm-sphere construction; pw1 = P(W = 1) = P(Z in [b1,b2]).
DependenceSummary coefficients_constrained(const ConstrainedRadial& radial,
                                           const NormProfile& profile, double pw1,
                                           const AngularModel* angular = nullptr,
                                           long mc_budget = 0);

// --- unconstrained angular support ------------------------------------------

struct Moments {
    std::optional<double> er_alpha;     // E(R^alpha)
    std::optional<double> ew_alpha;     // E(W^alpha)
    std::optional<double> ewmin_alpha;  // E(min(W1,W2)^alpha)
};

struct UnconstrainedInput {
    TailClass r_class;
    TailClass w_class;
    TailClass wmin_class;
    Coefficient chi_w = Coefficient::unknown("not supplied");
    Coefficient eta_w = Coefficient::unknown("not supplied");
    std::optional<double> tail_ratio_c;  // lim Fbar_W / Fbar_R when known
    Moments moments;
};

DependenceSummary coefficients_unconstrained(const UnconstrainedInput& in);

// --- the two interpolating model families ------------------------------------

DependenceSummary coefficients_model1(double theta, const TailClass& r_class);
DependenceSummary coefficients_model2(double xi, double alpha);

// Derives a DependenceSummary from a full construction specification,
// dispatching between the constrained and unconstrained engines.
DependenceSummary coefficients(const ConstructionSpec& spec);

// Exponent function V(x1,x2) = E[max(W1^a/(E W1^a x1), W2^a/(E W2^a x2))].
double exponent_function(const AngularModel& angular, double alpha, double x1, double x2);

// Closed-form V for Model 2 (alpha_W = 1), xi > 0.
double model2_exponent(double xi, double x1, double x2);

// Two-sided bound on chi(q) for possibly different margins (the quantile
// sandwich); surv1/surv2 are marginal survival functions, joint(x) is
// P(X1 >= x, X2 >= x).
std::pair<double, double> chi_bounds(const std::function<double(double)>& surv1,
                                     const std::function<double(double)>& surv2,
                                     const std::function<double(double)>& joint, double q);

}  // namespace taildep

#endif
