#include "taildep/tailclass.hpp"

#include <cmath>
#include <sstream>

namespace taildep {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw invalid_params_error(msg);
}

bool opt_eq(const std::optional<double>& a, const std::optional<double>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a.has_value() || *a == *b;
}

}  // namespace

TailClass::TailClass(RegVarInf v) : v_(v) { require(v.alpha >= 0, "RegVarInf: alpha >= 0"); }
TailClass::TailClass(ExpTailed v) : v_(v) { require(v.alpha > 0, "ExpTailed: alpha > 0"); }
TailClass::TailClass(ConvEquiv v) : v_(v) { require(v.alpha >= 0, "ConvEquiv: alpha >= 0"); }
TailClass::TailClass(WeibullType v) : v_(v) {
    require(v.alpha > 0 && v.beta > 0, "WeibullType: alpha, beta > 0");
    require(!v.ell_limit || *v.ell_limit > 0, "WeibullType: ell_limit > 0");
}
TailClass::TailClass(LogWeibullType v) : v_(v) {
    require(v.alpha > 0 && v.beta > 0, "LogWeibullType: alpha, beta > 0");
    require(!v.ell_limit || *v.ell_limit > 0, "LogWeibullType: ell_limit > 0");
}
TailClass::TailClass(NegWeibull v) : v_(v) {
    require(v.endpoint > 0 && std::isfinite(v.endpoint), "NegWeibull: finite positive endpoint");
    require(v.alpha > 0, "NegWeibull: alpha > 0");
    require(!v.ell_limit || *v.ell_limit > 0, "NegWeibull: ell_limit > 0");
}
TailClass::TailClass(GumbelGeneric v) : v_(v) { require(v.endpoint > 0, "GumbelGeneric: endpoint > 0"); }
TailClass::TailClass(SuperHeavy v) : v_(std::move(v)) {
    require(std::get<SuperHeavy>(v_).log_class != nullptr, "SuperHeavy: log_class required");
}

TailClass TailClass::super_heavy(TailClass log_class) {
    return TailClass(SuperHeavy{std::make_shared<const TailClass>(std::move(log_class))});
}

double TailClass::endpoint() const {
    if (const auto* n = get_if<NegWeibull>()) return n->endpoint;
    if (const auto* g = get_if<GumbelGeneric>()) return g->endpoint;
    return inf;
}

bool TailClass::operator==(const TailClass& other) const {
    if (v_.index() != other.v_.index()) return false;
    return std::visit(
        [&](const auto& a) -> bool {
            using T = std::decay_t<decltype(a)>;
            const T& b = std::get<T>(other.v_);
            if constexpr (std::is_same_v<T, RegVarInf>) return a.alpha == b.alpha;
            else if constexpr (std::is_same_v<T, ExpTailed>)
                return a.alpha == b.alpha && opt_eq(a.beta, b.beta);
            else if constexpr (std::is_same_v<T, ConvEquiv>) return a.alpha == b.alpha;
            else if constexpr (std::is_same_v<T, WeibullType> ||
                               std::is_same_v<T, LogWeibullType>)
                return a.alpha == b.alpha && a.beta == b.beta && a.gamma == b.gamma &&
                       opt_eq(a.ell_limit, b.ell_limit);
            else if constexpr (std::is_same_v<T, NegWeibull>)
                return a.endpoint == b.endpoint && a.alpha == b.alpha &&
                       opt_eq(a.ell_limit, b.ell_limit);
            else if constexpr (std::is_same_v<T, GumbelGeneric>) return a.endpoint == b.endpoint;
            else
                return *a.log_class == *b.log_class;
        },
        v_);
}

std::string TailClass::str() const {
    std::ostringstream os;
    std::visit(
        [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, RegVarInf>) os << "RV(alpha=" << a.alpha << ")";
            else if constexpr (std::is_same_v<T, ExpTailed>) {
                os << "ET(alpha=" << a.alpha;
                if (a.beta) os << ", beta=" << *a.beta;
                os << ")";
            } else if constexpr (std::is_same_v<T, ConvEquiv>) os << "CE(alpha=" << a.alpha << ")";
            else if constexpr (std::is_same_v<T, WeibullType>)
                os << "WT(alpha=" << a.alpha << ", beta=" << a.beta << ", gamma=" << a.gamma << ")";
            else if constexpr (std::is_same_v<T, LogWeibullType>)
                os << "LWT(alpha=" << a.alpha << ", beta=" << a.beta << ", gamma=" << a.gamma << ")";
            else if constexpr (std::is_same_v<T, NegWeibull>)
                os << "NegWeibull(endpoint=" << a.endpoint << ", alpha=" << a.alpha << ")";
            else if constexpr (std::is_same_v<T, GumbelGeneric>)
                os << "GumbelGeneric(endpoint=" << a.endpoint << ")";
            else
                os << "SuperHeavy(log=" << a.log_class->str() << ")";
        },
        v_);
    return os.str();
}

std::string to_string(Ordering o) {
    switch (o) {
        case Ordering::StrictlyLighter: return "StrictlyLighter";
        case Ordering::StrictlyHeavier: return "StrictlyHeavier";
        case Ordering::SameScale: return "SameScale";
        case Ordering::Incomparable: return "Incomparable";
    }
    return "?";
}

namespace {

Ordering flip(Ordering o) {
    if (o == Ordering::StrictlyLighter) return Ordering::StrictlyHeavier;
    if (o == Ordering::StrictlyHeavier) return Ordering::StrictlyLighter;
    return o;
}

Ordering lighter_if(bool a_lighter) {
    return a_lighter ? Ordering::StrictlyLighter : Ordering::StrictlyHeavier;
}

// Band index along the heaviness chain; -1 = bounded support, 6 = superheavy.
// WT beta=1 behaves as ET, LWT beta=1 as RV, LWT beta<1 as superheavy.
int band(const TailClass& c) {
    if (c.endpoint() < inf) return -1;
    if (const auto* w = c.get_if<WeibullType>()) return w->beta > 1 ? 1 : (w->beta == 1 ? 2 : 3);
    if (c.is<ExpTailed>() || c.is<ConvEquiv>()) return 2;
    if (const auto* l = c.get_if<LogWeibullType>()) return l->beta > 1 ? 4 : (l->beta == 1 ? 5 : 6);
    if (const auto* r = c.get_if<RegVarInf>()) return r->alpha > 0 ? 5 : 6;
    if (c.is<SuperHeavy>()) return 6;
    return 100;  // GumbelGeneric with infinite endpoint: position unknown
}

// same-band comparison for the Weibull-shaped classes (applies to WT and LWT):
// larger beta lighter, then larger alpha lighter, then smaller gamma lighter.
template <class T>
Ordering compare_weibull_like(const T& a, const T& b) {
    if (a.beta != b.beta) return lighter_if(a.beta > b.beta);
    if (a.alpha != b.alpha) return lighter_if(a.alpha > b.alpha);
    if (a.gamma != b.gamma) return lighter_if(a.gamma < b.gamma);
    return Ordering::SameScale;
}

struct EtView {
    double alpha;
    std::optional<double> beta;
    bool conv_equiv;
};

std::optional<EtView> et_view(const TailClass& c) {
    if (const auto* e = c.get_if<ExpTailed>()) return EtView{e->alpha, e->beta, false};
    if (const auto* q = c.get_if<ConvEquiv>()) {
        if (q->alpha > 0) return EtView{q->alpha, std::nullopt, true};
        return std::nullopt;  // CE_0 is handled as heavy, not exponential-tailed
    }
    if (const auto* w = c.get_if<WeibullType>())
        if (w->beta == 1) return EtView{w->alpha, w->gamma, false};
    return std::nullopt;
}

Ordering compare_et(const EtView& a, const EtView& b) {
    if (a.alpha != b.alpha) return lighter_if(a.alpha > b.alpha);
    if (a.beta && b.beta) {
        if (*a.beta != *b.beta) return lighter_if(*a.beta < *b.beta);
        return Ordering::SameScale;
    }
    // CE_alpha is lighter than gamma-tailed ET_{alpha,beta>-1}
    if (a.conv_equiv && b.beta && *b.beta > -1) return Ordering::StrictlyLighter;
    if (b.conv_equiv && a.beta && *a.beta > -1) return Ordering::StrictlyHeavier;
    if (!a.beta && !b.beta) return Ordering::SameScale;  // only rates known
    return Ordering::Incomparable;
}

struct RvView {
    double alpha;
    std::optional<double> gamma;  // log-scale prefactor index when carried
};

std::optional<RvView> rv_view(const TailClass& c) {
    if (const auto* r = c.get_if<RegVarInf>()) {
        if (r->alpha > 0) return RvView{r->alpha, std::nullopt};
        return std::nullopt;
    }
    if (const auto* l = c.get_if<LogWeibullType>())
        if (l->beta == 1) return RvView{l->alpha, l->gamma};
    return std::nullopt;
}

// bounded-support comparison: smaller endpoint lighter; at equal endpoints a
// Gumbel-type approach to the endpoint is lighter than any polynomial one.
Ordering compare_bounded(const TailClass& a, const TailClass& b) {
    const double ea = a.endpoint(), eb = b.endpoint();
    if (ea != eb) return lighter_if(ea < eb);
    const auto* na = a.get_if<NegWeibull>();
    const auto* nb = b.get_if<NegWeibull>();
    if (na && nb) {
        if (na->alpha != nb->alpha) return lighter_if(na->alpha > nb->alpha);
        return Ordering::SameScale;
    }
    const bool ga = a.is<GumbelGeneric>();
    const bool gb = b.is<GumbelGeneric>();
    if (ga && nb) return Ordering::StrictlyLighter;
    if (na && gb) return Ordering::StrictlyHeavier;
    return Ordering::Incomparable;  // two generic Gumbel classes
}

}  // namespace

Ordering dominates(const TailClass& a, const TailClass& b) {
    if (a == b) return Ordering::SameScale;

    const int ba = band(a);
    const int bb = band(b);
    if (ba == 100 || bb == 100) {
        // GumbelGeneric with infinite endpoint: decidable only against bounded
        // classes (heavier) and the heavy bands RV/SHT (lighter).
        if (ba == 100 && bb == 100) return Ordering::Incomparable;
        const int other = ba == 100 ? bb : ba;
        Ordering rel = Ordering::Incomparable;
        if (other == -1) rel = Ordering::StrictlyHeavier;
        else if (other >= 5) rel = Ordering::StrictlyLighter;
        return ba == 100 ? rel : flip(rel);
    }
    if (ba != bb) return lighter_if(ba < bb);

    switch (ba) {
        case -1: return compare_bounded(a, b);
        case 1:
        case 3: return compare_weibull_like(*a.get_if<WeibullType>(), *b.get_if<WeibullType>());
        case 2: {
            const auto va = et_view(a);
            const auto vb = et_view(b);
            if (va && vb) return compare_et(*va, *vb);
            return Ordering::Incomparable;
        }
        case 4:
            return compare_weibull_like(*a.get_if<LogWeibullType>(), *b.get_if<LogWeibullType>());
        case 5: {
            const auto va = rv_view(a);
            const auto vb = rv_view(b);
            if (!va || !vb) return Ordering::Incomparable;
            if (va->alpha != vb->alpha) return lighter_if(va->alpha > vb->alpha);
            if (va->gamma && vb->gamma && *va->gamma != *vb->gamma)
                return lighter_if(*va->gamma < *vb->gamma);
            return Ordering::SameScale;
        }
        case 6: {
            // compare on the log scale where both sides reduce to one
            auto log_of = [](const TailClass& c) -> std::optional<TailClass> {
                if (const auto* s = c.get_if<SuperHeavy>()) return *s->log_class;
                if (const auto* l = c.get_if<LogWeibullType>())
                    return TailClass(WeibullType{l->alpha, l->beta, l->gamma, l->ell_limit});
                return std::nullopt;
            };
            const auto la = log_of(a);
            const auto lb = log_of(b);
            if (la && lb) return dominates(*la, *lb);
            return Ordering::Incomparable;
        }
        default: return Ordering::Incomparable;
    }
}

TailClass log_transform(const TailClass& c) {
    if (const auto* r = c.get_if<RegVarInf>()) {
        if (r->alpha > 0) return TailClass(ExpTailed{r->alpha, std::nullopt});
        throw mapping_undefined_error("log_transform: RV with alpha=0 has no ET image");
    }
    if (const auto* e = c.get_if<ExpTailed>()) return TailClass(RegVarInf{e->alpha});
    if (const auto* l = c.get_if<LogWeibullType>())
        return TailClass(WeibullType{l->alpha, l->beta, l->gamma, l->ell_limit});
    if (const auto* w = c.get_if<WeibullType>())
        return TailClass(LogWeibullType{w->alpha, w->beta, w->gamma, w->ell_limit});
    if (const auto* s = c.get_if<SuperHeavy>()) return *s->log_class;
    throw mapping_undefined_error("log_transform: no correspondence for " + c.str());
}

TailClass independent_min_class(const TailClass& c) {
    // Fbar_min = Fbar^2 for independent identical margins.
    return std::visit(
        [&](const auto& a) -> TailClass {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, RegVarInf>) return TailClass(RegVarInf{2 * a.alpha});
            else if constexpr (std::is_same_v<T, ExpTailed>) {
                std::optional<double> beta2;
                if (a.beta) beta2 = 2 * *a.beta;
                return TailClass(ExpTailed{2 * a.alpha, beta2});
            } else if constexpr (std::is_same_v<T, ConvEquiv>)
                throw mapping_undefined_error("independent_min_class: CE class underdetermined");
            else if constexpr (std::is_same_v<T, WeibullType>) {
                std::optional<double> ell2;
                if (a.ell_limit) ell2 = *a.ell_limit * *a.ell_limit;
                return TailClass(WeibullType{2 * a.alpha, a.beta, 2 * a.gamma, ell2});
            } else if constexpr (std::is_same_v<T, LogWeibullType>) {
                std::optional<double> ell2;
                if (a.ell_limit) ell2 = *a.ell_limit * *a.ell_limit;
                return TailClass(LogWeibullType{2 * a.alpha, a.beta, 2 * a.gamma, ell2});
            } else if constexpr (std::is_same_v<T, NegWeibull>) {
                std::optional<double> ell2;
                if (a.ell_limit) ell2 = *a.ell_limit * *a.ell_limit;
                return TailClass(NegWeibull{a.endpoint, 2 * a.alpha, ell2});
            } else if constexpr (std::is_same_v<T, GumbelGeneric>)
                return TailClass(a);
            else
                return TailClass::super_heavy(independent_min_class(*a.log_class));
        },
        c.v());
}

TailClass gaussian_copula_min_class(const TailClass& c, double rho) {
    if (!(rho > -1.0) || !(rho < 1.0))
        throw invalid_params_error("gaussian_copula_min_class: rho in (-1,1)");
    const double f = 2.0 / (1.0 + rho);
    // Joint upper orthant of the Gaussian copula at equal thresholds z:
    //   P(both) ~ C(rho) z^{-2} exp(-z^2/(1+rho)),  z = Phi^{-1}(F_W(x)),
    // which in terms of L = -log Fbar_W(x) gives
    //   Fbar_min ~ C/2 (4 pi)^{1/(1+rho)} alpha^{-rho/(1+rho)}
    //              ell^{2/(1+rho)} T^{(2 gamma - rho beta)/(1+rho)}
    //              exp(-2 alpha T^beta / (1+rho)).
    auto transform_wt = [&](double alpha, double beta, double gamma,
                            const std::optional<double>& ell)
        -> std::tuple<double, double, double, std::optional<double>> {
        const double alpha2 = f * alpha;
        const double gamma2 = (2 * gamma - rho * beta) / (1.0 + rho);
        std::optional<double> ell2;
        if (ell) {
            const double C = std::pow(1.0 + rho, 1.5) /
                             (std::sqrt(1.0 - rho) * 2.0 * M_PI);
            ell2 = C * 0.5 * std::pow(4.0 * M_PI, 1.0 / (1.0 + rho)) *
                   std::pow(alpha, -rho / (1.0 + rho)) * std::pow(*ell, 2.0 / (1.0 + rho));
        }
        return {alpha2, beta, gamma2, ell2};
    };
    if (const auto* w = c.get_if<WeibullType>()) {
        auto [a2, b2, g2, e2] = transform_wt(w->alpha, w->beta, w->gamma, w->ell_limit);
        return TailClass(WeibullType{a2, b2, g2, e2});
    }
    if (const auto* l = c.get_if<LogWeibullType>()) {
        auto [a2, b2, g2, e2] = transform_wt(l->alpha, l->beta, l->gamma, l->ell_limit);
        return TailClass(LogWeibullType{a2, b2, g2, e2});
    }
    if (const auto* r = c.get_if<RegVarInf>()) {
        if (r->alpha > 0) {
            auto [a2, b2, g2, e2] = transform_wt(r->alpha, 1.0, 0.0, std::nullopt);
            (void)e2;
            return TailClass(LogWeibullType{a2, b2, g2, std::nullopt});
        }
    }
    if (const auto* n = c.get_if<NegWeibull>())
        // log-factors enter the slowly varying part, so no constant limit
        return TailClass(NegWeibull{n->endpoint, f * n->alpha, std::nullopt});
    throw mapping_undefined_error("gaussian_copula_min_class: unsupported margin class " + c.str());
}

namespace {

double get_param(const std::map<std::string, double>& params, const std::string& key,
                 std::optional<double> fallback = std::nullopt) {
    auto it = params.find(key);
    if (it != params.end()) return it->second;
    if (fallback) return *fallback;
    throw invalid_params_error("missing parameter '" + key + "'");
}

// rate-type entries accept either a rate or a scale (rate = 1/scale)
double get_rate(const std::map<std::string, double>& params) {
    if (auto it = params.find("rate"); it != params.end()) {
        if (!(it->second > 0)) throw invalid_params_error("rate must be positive");
        return it->second;
    }
    const double scl = get_param(params, "scl", 1.0);
    if (!(scl > 0)) throw invalid_params_error("scl must be positive");
    return 1.0 / scl;
}

}  // namespace

std::vector<std::string> catalog_families() {
    return {"normal", "log-normal", "exponential", "gamma",  "inverse-normal", "logistic",
            "log-logistic", "gumbel", "weibull",  "t",      "pareto",        "frechet",
            "stable",  "f",      "uniform", "beta", "triangular",    "gev"};
}

std::vector<TailClass> classify_parametric(const std::string& family,
                                           const std::map<std::string, double>& params) {
    auto positive = [](double v, const char* what) {
        if (!(v > 0)) throw invalid_params_error(std::string(what) + " must be positive");
        return v;
    };
    const double sqrt_2pi = std::sqrt(2.0 * M_PI);

    if (family == "normal") {
        const double scl = positive(get_param(params, "scl", 1.0), "scl");
        const double mean = get_param(params, "mean", 0.0);
        std::optional<double> ell;
        if (mean == 0.0) ell = scl / sqrt_2pi;
        return {TailClass(WeibullType{1.0 / (2 * scl * scl), 2.0, -1.0, ell})};
    }
    if (family == "log-normal") {
        const double sdlog = positive(get_param(params, "sdlog", 1.0), "sdlog");
        const double meanlog = get_param(params, "meanlog", 0.0);
        std::optional<double> ell;
        if (meanlog == 0.0) ell = sdlog / sqrt_2pi;
        return {TailClass(LogWeibullType{1.0 / (2 * sdlog * sdlog), 2.0, -1.0, ell})};
    }
    if (family == "exponential") {
        const double rate = get_rate(params);
        return {TailClass(WeibullType{rate, 1.0, 0.0, 1.0}), TailClass(ExpTailed{rate, 0.0})};
    }
    if (family == "gamma") {
        const double shp = positive(get_param(params, "shp"), "shp");
        const double rate = get_rate(params);
        const double ell = std::pow(rate, shp - 1.0) / std::tgamma(shp);
        return {TailClass(WeibullType{rate, 1.0, shp - 1.0, ell}),
                TailClass(ExpTailed{rate, shp - 1.0})};
    }
    if (family == "inverse-normal") {
        const double shp = positive(get_param(params, "shp"), "shp");
        const double mean = positive(get_param(params, "mean"), "mean");
        const double alpha = shp / (2.0 * mean * mean);
        return {TailClass(WeibullType{alpha, 1.0, -1.5, std::nullopt}),
                TailClass(ExpTailed{alpha, -1.5}), TailClass(ConvEquiv{alpha})};
    }
    if (family == "logistic") {
        const double rate = get_rate(params);
        const double loc = get_param(params, "loc", 0.0);
        return {TailClass(WeibullType{rate, 1.0, 0.0, std::exp(loc * rate)}),
                TailClass(ExpTailed{rate, 0.0})};
    }
    if (family == "log-logistic") {
        const double shp = positive(get_param(params, "shp"), "shp");
        const double scl = positive(get_param(params, "scl", 1.0), "scl");
        return {TailClass(RegVarInf{shp}),
                TailClass(LogWeibullType{shp, 1.0, 0.0, std::pow(scl, shp)})};
    }
    if (family == "gumbel") {
        const double rate = get_rate(params);
        const double loc = get_param(params, "loc", 0.0);
        return {TailClass(WeibullType{rate, 1.0, 0.0, std::exp(loc * rate)}),
                TailClass(ExpTailed{rate, 0.0})};
    }
    if (family == "weibull") {
        const double shp = positive(get_param(params, "shp"), "shp");
        const double scl = positive(get_param(params, "scl", 1.0), "scl");
        std::vector<TailClass> out{
            TailClass(WeibullType{std::pow(scl, -shp), shp, 0.0, 1.0})};
        if (shp == 1.0) out.push_back(TailClass(ExpTailed{1.0 / scl, 0.0}));
        return out;
    }
    if (family == "t") {
        const double shp = positive(get_param(params, "shp"), "shp");
        return {TailClass(RegVarInf{shp}), TailClass(LogWeibullType{shp, 1.0, 0.0, std::nullopt})};
    }
    if (family == "pareto") {
        const double shp = positive(get_param(params, "shp"), "shp");
        return {TailClass(RegVarInf{shp}), TailClass(LogWeibullType{shp, 1.0, 0.0, 1.0})};
    }
    if (family == "frechet") {
        const double shp = positive(get_param(params, "shp"), "shp");
        return {TailClass(RegVarInf{shp}), TailClass(LogWeibullType{shp, 1.0, 0.0, 1.0})};
    }
    if (family == "stable") {
        const double shp = positive(get_param(params, "shp"), "shp");
        if (shp > 2.0) throw invalid_params_error("stable: shp in (0,2]");
        const double scl = positive(get_param(params, "scl", 1.0), "scl");
        if (shp == 2.0)
            return {TailClass(WeibullType{1.0 / (4 * scl * scl), 2.0, -1.0, std::nullopt})};
        return {TailClass(RegVarInf{1.0 / shp}),
                TailClass(LogWeibullType{1.0 / shp, 1.0, 0.0, std::nullopt})};
    }
    if (family == "f") {
        const double shp2 = positive(get_param(params, "shp2"), "shp2");
        positive(get_param(params, "shp1"), "shp1");
        return {TailClass(RegVarInf{2.0 / shp2})};
    }
    if (family == "uniform") {
        return {TailClass(NegWeibull{1.0, 1.0, 1.0})};
    }
    if (family == "beta") {
        const double a = positive(get_param(params, "shp1"), "shp1");
        const double b = positive(get_param(params, "shp2"), "shp2");
        const double ell = 1.0 / (b * std::exp(log_beta(a, b)));
        return {TailClass(NegWeibull{1.0, b, ell})};
    }
    if (family == "triangular") {
        return {TailClass(NegWeibull{1.0, 2.0, 2.0})};
    }
    if (family == "gev") {
        const double shp = get_param(params, "shp");
        const double scl = positive(get_param(params, "scl", 1.0), "scl");
        const double loc = get_param(params, "loc", 0.0);
        if (shp == 0.0)
            return {TailClass(WeibullType{1.0 / scl, 1.0, 0.0, std::nullopt}),
                    TailClass(ExpTailed{1.0 / scl, 0.0})};
        if (shp > 0.0)
            return {TailClass(RegVarInf{1.0 / shp}),
                    TailClass(LogWeibullType{1.0 / shp, 1.0, 0.0, std::nullopt})};
        const double endpoint = loc + scl / (-shp);
        if (!(endpoint > 0)) throw invalid_params_error("gev: nonpositive upper endpoint");
        return {TailClass(NegWeibull{endpoint, -1.0 / shp, std::nullopt})};
    }
    throw unknown_family_error("unknown family '" + family + "'");
}

}  // namespace taildep
