#ifndef TAILDEP_TAILCLASS_HPP
#define TAILDEP_TAILCLASS_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "taildep/common.hpp"

namespace taildep {

// Upper-tail decay classes. Parameter conventions:
//   RegVarInf     Fbar in RV_{-alpha} at infinity, alpha >= 0
//   ExpTailed     Fbar(x) = r(x) exp(-alpha x), r in RV_beta; beta absent when
//                 only the rate is known
//   ConvEquiv     convolution-equivalent with index alpha (CE_0 = subexponential)
//   WeibullType   Fbar(x) ~ ell(x) x^gamma exp(-alpha x^beta); ell_limit is the
//                 limit of ell when it is asymptotically constant
//   LogWeibullType the same on the log scale: Fbar(exp(.)) is WeibullType
//   NegWeibull    finite endpoint, Fbar(endpoint - s) = ell(s) s^alpha
//   GumbelGeneric Gumbel MDA, auxiliary function known only abstractly
//   SuperHeavy    log of the variable has the stored heavy-tailed class

struct RegVarInf {
    double alpha = 1.0;
};
struct ExpTailed {
    double alpha = 1.0;
    std::optional<double> beta;
};
struct ConvEquiv {
    double alpha = 0.0;
};
struct WeibullType {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 0.0;
    std::optional<double> ell_limit;
};
struct LogWeibullType {
    double alpha = 1.0;
    double beta = 2.0;
    double gamma = 0.0;
    std::optional<double> ell_limit;
};
struct NegWeibull {
    double endpoint = 1.0;
    double alpha = 1.0;
    std::optional<double> ell_limit;
};
struct GumbelGeneric {
    double endpoint = inf;  // in (0, inf]
};
struct SuperHeavy;

class TailClass;

struct SuperHeavy {
    std::shared_ptr<const TailClass> log_class;
};

class TailClass {
   public:
    using Variant = std::variant<RegVarInf, ExpTailed, ConvEquiv, WeibullType, LogWeibullType,
                                 NegWeibull, GumbelGeneric, SuperHeavy>;

    TailClass(RegVarInf v);
    TailClass(ExpTailed v);
    TailClass(ConvEquiv v);
    TailClass(WeibullType v);
    TailClass(LogWeibullType v);
    TailClass(NegWeibull v);
    TailClass(GumbelGeneric v);
    TailClass(SuperHeavy v);

    static TailClass super_heavy(TailClass log_class);

    const Variant& v() const { return v_; }

    template <class T>
    const T* get_if() const {
        return std::get_if<T>(&v_);
    }
    template <class T>
    bool is() const {
        return std::holds_alternative<T>(v_);
    }

    std::string str() const;

    // upper endpoint of the support implied by the class (inf if unbounded)
    double endpoint() const;

    bool operator==(const TailClass& other) const;

   private:
    Variant v_;
};

enum class Ordering { StrictlyLighter, StrictlyHeavier, SameScale, Incomparable };

std::string to_string(Ordering o);

// Orders two classes by tail heaviness along the chain
//   bounded support < WT_{beta>1} < ET_alpha < ET_{alpha'<alpha} < WT_{beta<1}
//   < LWT_{beta>1} < RV_{alpha>0} < RV_{alpha'<alpha} < superheavy,
// with within-class refinements; Incomparable when the chain does not decide.
Ordering dominates(const TailClass& a, const TailClass& b);

// Class of log X for the class of X (and back along the RV<->ET and LWT<->WT
// pairs). Throws mapping_undefined_error where no correspondence exists.
TailClass log_transform(const TailClass& c);

// Tail class of min(W1,W2) for two independent copies of the class.
TailClass independent_min_class(const TailClass& c);

// Tail class of min(W1,W2) when (W1,W2) have a Gaussian copula with
// correlation rho in (-1,1) and common margin of class c.
TailClass gaussian_copula_min_class(const TailClass& c, double rho);

// Parametric catalog: family name + parameter map -> set of memberships.
// Rate-type parameters are interpreted as rates (reciprocal scale).
std::vector<TailClass> classify_parametric(const std::string& family,
                                           const std::map<std::string, double>& params);

std::vector<std::string> catalog_families();

}  // namespace taildep

#endif
