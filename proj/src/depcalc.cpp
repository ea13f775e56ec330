#include "taildep/depcalc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "taildep/numeric.hpp"
#include "taildep/special.hpp"

namespace taildep {

Coefficient Coefficient::defined(double v) {
    if (!(v >= -1e-12) || !(v <= 1.0 + 1e-12))
        throw error("coefficient outside [0,1]: " + std::to_string(v));
    Coefficient c;
    c.kind_ = Kind::Defined;
    c.value_ = std::clamp(v, 0.0, 1.0);
    return c;
}

Coefficient Coefficient::not_defined() {
    Coefficient c;
    c.kind_ = Kind::NotDefined;
    return c;
}

Coefficient Coefficient::unknown(std::string reason) {
    Coefficient c;
    c.kind_ = Kind::Unknown;
    c.reason_ = std::move(reason);
    return c;
}

double Coefficient::value() const {
    if (kind_ != Kind::Defined) throw error("coefficient has no value");
    return value_;
}

DependenceSummary finalize(DependenceSummary s) {
    if (s.chi.is_defined() && s.chi.value() > 0.0) {
        if (!s.eta.is_defined() || s.eta.value() != 1.0)
            throw error("internal: chi > 0 must force eta = 1 (rule " + s.rule + ")");
    }
    return s;
}

// --- radial views -------------------------------------------------------------

ConstrainedRadial ConstrainedRadial::from_tail_class(const TailClass& c) {
    ConstrainedRadial r;
    if (const auto* rv = c.get_if<RegVarInf>()) {
        r.mda = Mda::Frechet;
        r.frechet_alpha = rv->alpha;
        return r;
    }
    if (const auto* nw = c.get_if<NegWeibull>()) {
        r.mda = Mda::NegWeibull;
        r.negweib_alpha = nw->alpha;
        r.endpoint = nw->endpoint;
        return r;
    }
    if (const auto* wt = c.get_if<WeibullType>()) {
        r.mda = Mda::Gumbel;
        r.log_tail_index = wt->beta;
        return r;
    }
    if (c.is<ExpTailed>() || c.is<ConvEquiv>()) {
        r.mda = Mda::Gumbel;
        r.log_tail_index = 1.0;
        return r;
    }
    if (const auto* lw = c.get_if<LogWeibullType>()) {
        if (lw->beta > 1.0) {
            r.mda = Mda::Gumbel;
            r.log_tail_index = 0.0;  // -log Fbar grows like a power of log
            return r;
        }
        if (lw->beta == 1.0) {
            r.mda = Mda::Frechet;
            r.frechet_alpha = lw->alpha;
            return r;
        }
        r.mda = Mda::Frechet;  // superheavy: slower than any power
        r.frechet_alpha = 0.0;
        return r;
    }
    if (const auto* g = c.get_if<GumbelGeneric>()) {
        r.mda = Mda::Gumbel;
        r.endpoint = g->endpoint;
        return r;
    }
    if (c.is<SuperHeavy>()) {
        r.mda = Mda::Frechet;
        r.frechet_alpha = 0.0;
        return r;
    }
    throw error("no MDA classification for " + c.str());
}

ConstrainedRadial ConstrainedRadial::gumbel_superexponential(double endpoint) {
    ConstrainedRadial r;
    r.mda = Mda::Gumbel;
    r.log_tail_superexp = true;
    r.endpoint = endpoint;
    return r;
}

// --- chi for regularly varying radial ----------------------------------------

Coefficient chi_frechet(double radial_alpha, const AngularModel& angular, long mc_budget,
                        std::uint64_t seed) {
    if (!(radial_alpha >= 0)) throw invalid_params_error("chi_frechet: alpha >= 0");
    if (angular.margin_survival(1e-12) < 1.0)
        return Coefficient::not_defined();  // P(W = 0) > 0: joint tail dies
    if (radial_alpha == 0.0) return Coefficient::defined(1.0);

    const TailClass wc = angular.margin_class();
    if (const auto* rv = wc.get_if<RegVarInf>()) {
        if (rv->alpha <= radial_alpha)
            throw precondition_error("chi_frechet: E(W^(alpha+eps)) infinite");
    }
    if (wc.is<SuperHeavy>()) throw precondition_error("chi_frechet: W superheavy");

    if (mc_budget > 0) {
        CounterRng rng(seed, 0);
        KahanSum smin, sm;
        for (long i = 0; i < mc_budget; ++i) {
            auto [w1, w2] = angular.sample(rng.uniform(i, 1), rng.uniform(i, 2));
            const double a = std::pow(w1, radial_alpha);
            const double b = std::pow(w2, radial_alpha);
            smin.add(std::min(a, b));
            sm.add(0.5 * (a + b));
        }
        const double est = smin.value() / sm.value();
        return Coefficient::defined(std::min(est, 1.0));
    }
    const double ew = angular.margin_moment(radial_alpha);
    const double ewmin = angular.min_moment(radial_alpha);
    return Coefficient::defined(std::min(ewmin / ew, 1.0));
}

// --- constrained dispatch ------------------------------------------------------

namespace {

Coefficient pointy_chi(const NormProfile& p) {
    if (!p.d_increasing || !p.d_decreasing)
        return Coefficient::unknown("one-sided tau derivatives at 1/2 unavailable");
    const double d1 = std::abs(*p.d_increasing);
    const double d2 = std::abs(*p.d_decreasing);
    return Coefficient::defined(2.0 * d2 / (d1 + d2));
}

}  // namespace

DependenceSummary coefficients_constrained(const ConstrainedRadial& radial,
                                           const NormProfile& profile, double pw1,
                                           const AngularModel* angular, long mc_budget) {
    DependenceSummary out;
    const bool zeta_one = std::abs(profile.zeta - 1.0) < 1e-12;

    switch (radial.mda) {
        case Mda::Frechet: {
            out.rule = "Prop1.Rrvchi";
            out.eta = Coefficient::defined(1.0);
            if (angular) {
                out.chi = chi_frechet(radial.frechet_alpha, *angular, mc_budget);
            } else {
                out.chi = Coefficient::unknown(
                    "chi = E[min(W1^a/E(W1^a), W2^a/E(W2^a))]; angular law required");
            }
            break;
        }
        case Mda::Gumbel: {
            if (!zeta_one) {
                out.chi = Coefficient::defined(0.0);
                if (radial.endpoint < inf) {
                    out.rule = "Prop2.1";
                    out.eta = Coefficient::not_defined();
                    out.notes = "finite radial endpoint: min has smaller endpoint";
                } else if (radial.log_tail_superexp) {
                    out.rule = "Prop2.1+Cor1";
                    out.eta = Coefficient::defined(0.0);
                } else if (radial.log_tail_index) {
                    out.rule = "Prop2.1+Cor1";
                    out.eta = Coefficient::defined(std::pow(profile.zeta, *radial.log_tail_index));
                } else {
                    out.rule = "Prop2.1";
                    out.eta = Coefficient::unknown("auxiliary function unspecified");
                }
            } else {
                out.rule = "Prop2.2";
                out.eta = Coefficient::defined(1.0);
                out.chi = pw1 > 0.0 ? Coefficient::defined(0.0) : pointy_chi(profile);
            }
            break;
        }
        case Mda::NegWeibull: {
            if (!zeta_one) {
                out.rule = "Prop3.1";
                out.chi = Coefficient::defined(0.0);
                out.eta = Coefficient::not_defined();
            } else {
                out.rule = "Prop3.2";
                if (pw1 > 0.0) {
                    out.chi = Coefficient::defined(0.0);
                    out.eta =
                        Coefficient::defined(radial.negweib_alpha / (1.0 + radial.negweib_alpha));
                } else {
                    out.chi = pointy_chi(profile);
                    out.eta = Coefficient::defined(1.0);
                }
            }
            break;
        }
    }
    return finalize(std::move(out));
}

// --- unconstrained dispatch -----------------------------------------------------

namespace {

bool is_superheavy(const TailClass& c) {
    if (c.is<SuperHeavy>()) return true;
    if (const auto* l = c.get_if<LogWeibullType>()) return l->beta < 1.0;
    if (const auto* r = c.get_if<RegVarInf>()) return r->alpha == 0.0;
    return false;
}

// view of a regularly varying class with the log-scale prefactor index when known
struct RvInfo {
    double alpha;
    std::optional<double> log_beta;
};

std::optional<RvInfo> rv_info(const TailClass& c) {
    if (const auto* r = c.get_if<RegVarInf>()) {
        if (r->alpha > 0) return RvInfo{r->alpha, std::nullopt};
        return std::nullopt;
    }
    if (const auto* l = c.get_if<LogWeibullType>())
        if (l->beta == 1.0) return RvInfo{l->alpha, l->gamma};
    return std::nullopt;
}

bool is_gumbel_mda_class(const TailClass& c) {
    if (c.is<WeibullType>() || c.is<ExpTailed>() || c.is<ConvEquiv>() || c.is<GumbelGeneric>())
        return true;
    if (const auto* l = c.get_if<LogWeibullType>()) return l->beta > 1.0;
    return false;
}

// scale of -log Fbar(exp(t)) for superheavy classes (power of t or of log t)
struct LogTailScale {
    enum Kind { PowerOfT, PowerOfLogT } kind;
    double beta;   // exponent (PowerOfT only)
    double alpha;  // coefficient
};

std::optional<LogTailScale> superheavy_log_scale(const TailClass& c) {
    if (const auto* l = c.get_if<LogWeibullType>())
        return LogTailScale{LogTailScale::PowerOfT, l->beta, l->alpha};
    if (const auto* s = c.get_if<SuperHeavy>()) {
        const TailClass& lc = *s->log_class;
        if (const auto* w = lc.get_if<WeibullType>())
            return LogTailScale{LogTailScale::PowerOfT, w->beta, w->alpha};
        if (const auto* r = lc.get_if<RegVarInf>())
            if (r->alpha > 0) return LogTailScale{LogTailScale::PowerOfLogT, 1.0, r->alpha};
    }
    return std::nullopt;
}

struct WtParams {
    double alpha, beta, gamma;
    std::optional<double> ell;
};

std::optional<WtParams> wt_params(const TailClass& c) {
    if (const auto* w = c.get_if<WeibullType>()) return WtParams{w->alpha, w->beta, w->gamma, w->ell_limit};
    return std::nullopt;
}
std::optional<WtParams> lwt_params(const TailClass& c) {
    if (const auto* l = c.get_if<LogWeibullType>())
        return WtParams{l->alpha, l->beta, l->gamma, l->ell_limit};
    return std::nullopt;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); }

// chi_W derived from the class pair (ratio of slowly varying parts where the
// principal orders match, zero where they do not).
Coefficient derive_chi_w(const TailClass& w, const TailClass& wmin) {
    auto from_params = [](const WtParams& pw, const WtParams& pm) -> Coefficient {
        if (!close(pm.beta, pw.beta)) return Coefficient::defined(0.0);
        if (!close(pm.alpha, pw.alpha)) return Coefficient::defined(0.0);
        if (!close(pm.gamma, pw.gamma)) return Coefficient::defined(0.0);
        if (pw.ell && pm.ell) return Coefficient::defined(std::min(*pm.ell / *pw.ell, 1.0));
        return Coefficient::unknown("slowly varying limit required for chi_W");
    };
    if (auto pw = wt_params(w))
        if (auto pm = wt_params(wmin)) return from_params(*pw, *pm);
    if (auto pw = lwt_params(w))
        if (auto pm = lwt_params(wmin)) return from_params(*pw, *pm);
    const auto* nw = w.get_if<NegWeibull>();
    const auto* nm = wmin.get_if<NegWeibull>();
    if (nw && nm && close(nw->endpoint, nm->endpoint)) {
        if (!close(nm->alpha, nw->alpha)) return Coefficient::defined(0.0);
        if (nw->ell_limit && nm->ell_limit)
            return Coefficient::defined(std::min(*nm->ell_limit / *nw->ell_limit, 1.0));
        return Coefficient::unknown("slowly varying limit required for chi_W");
    }
    if (dominates(wmin, w) == Ordering::StrictlyLighter) return Coefficient::defined(0.0);
    return Coefficient::unknown("chi_W not derivable from classes");
}

// eta_W = alpha_W / alpha_{W_min} for matched Weibull-type or bounded classes.
Coefficient derive_eta_w(const TailClass& w, const TailClass& wmin) {
    auto from_params = [](const WtParams& pw, const WtParams& pm) -> Coefficient {
        if (close(pm.beta, pw.beta)) return Coefficient::defined(pw.alpha / pm.alpha);
        if (pm.beta > pw.beta) return Coefficient::not_defined();
        return Coefficient::unknown("inconsistent Weibull indices");
    };
    if (auto pw = wt_params(w))
        if (auto pm = wt_params(wmin)) return from_params(*pw, *pm);
    if (auto pw = lwt_params(w))
        if (auto pm = lwt_params(wmin)) return from_params(*pw, *pm);
    const auto* nw = w.get_if<NegWeibull>();
    const auto* nm = wmin.get_if<NegWeibull>();
    if (nw && nm && close(nw->endpoint, nm->endpoint))
        return Coefficient::defined(nw->alpha / nm->alpha);
    auto rw = rv_info(w);
    auto rm = rv_info(wmin);
    if (rw && rm) return Coefficient::defined(rw->alpha / rm->alpha);
    return Coefficient::unknown("eta_W not derivable from classes");
}

Coefficient reconcile(const Coefficient& supplied, const Coefficient& derived, const char* what) {
    if (supplied.kind() == Coefficient::Kind::Unknown) return derived;
    if (derived.kind() == Coefficient::Kind::Unknown) return supplied;
    if (supplied.kind() != derived.kind())
        throw error(std::string("supplied and derived ") + what + " disagree in kind");
    if (supplied.is_defined() && std::abs(supplied.value() - derived.value()) > 1e-9)
        throw error(std::string("supplied and derived ") + what + " disagree beyond 1e-9");
    return supplied;
}

DependenceSummary unknown_summary(std::string rule, std::string reason) {
    DependenceSummary s;
    s.chi = Coefficient::unknown(reason);
    s.eta = Coefficient::unknown(reason);
    s.rule = std::move(rule);
    s.notes = std::move(reason);
    return s;
}

}  // namespace

DependenceSummary coefficients_unconstrained(const UnconstrainedInput& in) {
    const TailClass& r = in.r_class;
    const TailClass& w = in.w_class;
    const TailClass& wm = in.wmin_class;

    if (dominates(wm, w) == Ordering::StrictlyHeavier)
        throw invalid_params_error("W_min strictly heavier than W");

    const Coefficient chi_w = reconcile(in.chi_w, derive_chi_w(w, wm), "chi_W");
    const Coefficient eta_w = reconcile(in.eta_w, derive_eta_w(w, wm), "eta_W");

    const Ordering w_vs_r = dominates(w, r);
    const Ordering r_vs_wm = dominates(r, wm);

    // (a) superheavy radial with known tail ratio c = lim Fbar_W / Fbar_R
    if (is_superheavy(r)) {
        std::optional<double> c = in.tail_ratio_c;
        if (!c && w_vs_r == Ordering::StrictlyLighter) c = 0.0;
        if (c) {
            DependenceSummary s;
            s.rule = "Prop4.1";
            s.eta = Coefficient::defined(1.0);
            if (*c == 0.0) {
                s.chi = Coefficient::defined(1.0);
            } else if (chi_w.is_defined()) {
                s.chi = Coefficient::defined((1.0 + *c * chi_w.value()) / (1.0 + *c));
            } else {
                s.chi = Coefficient::unknown("chi_W required when c > 0");
            }
            return finalize(std::move(s));
        }
        if (!(is_superheavy(w) && w_vs_r != Ordering::StrictlyLighter))
            return unknown_summary("Prop4.1", "tail ratio c = lim Fbar_W/Fbar_R required");
    }

    // (b) superheavy angular dominating the radial
    if (is_superheavy(w) && dominates(r, w) == Ordering::StrictlyLighter) {
        DependenceSummary s;
        s.chi = chi_w;
        if (chi_w.is_defined() && chi_w.value() > 0.0) {
            s.rule = "Prop4.2";
            s.eta = Coefficient::defined(1.0);
            return finalize(std::move(s));
        }
        if (r_vs_wm == Ordering::StrictlyLighter || r_vs_wm == Ordering::SameScale) {
            s.rule = "Prop4.2a";
            s.eta = eta_w;
            return finalize(std::move(s));
        }
        if (r_vs_wm == Ordering::StrictlyHeavier) {
            s.rule = "Prop4.2b";
            const auto sw = superheavy_log_scale(w);
            const auto sr = superheavy_log_scale(r);
            if (sw && sr && sw->kind == sr->kind) {
                if (sw->kind == LogTailScale::PowerOfT && !close(sw->beta, sr->beta)) {
                    s.eta = sw->beta < sr->beta
                                ? Coefficient::defined(0.0)
                                : Coefficient::unknown("log-tail ratio diverges");
                } else {
                    s.eta = Coefficient::defined(std::min(sw->alpha / sr->alpha, 1.0));
                }
            } else if (sw && sr) {
                // power of log t is infinitely heavier than a power of t
                s.eta = sw->kind == LogTailScale::PowerOfLogT
                            ? Coefficient::defined(0.0)
                            : Coefficient::unknown("log-tail ratio diverges");
            } else {
                s.eta = Coefficient::unknown("limit of log Fbar_W / log Fbar_R indeterminate");
            }
            return finalize(std::move(s));
        }
        return unknown_summary("Prop4.2", "radial and W_min tails incomparable");
    }

    const auto rv_r = rv_info(r);
    const auto rv_w = rv_info(w);

    // (c) regularly varying radial, strictly lighter angular: Prop 1 route
    if (rv_r && w_vs_r == Ordering::StrictlyLighter) {
        DependenceSummary s;
        s.rule = "Prop1.Rrvchi";
        s.eta = Coefficient::defined(1.0);
        if (in.moments.ew_alpha && in.moments.ewmin_alpha) {
            s.chi = Coefficient::defined(
                std::min(*in.moments.ewmin_alpha / *in.moments.ew_alpha, 1.0));
        } else {
            s.chi = Coefficient::unknown(
                "chi = E(Wmin^a)/E(W^a) at a = alpha_R; moments E(W^a), E(Wmin^a) required");
        }
        s.notes = "asymptotic dependence driven by the heavy radial";
        return finalize(std::move(s));
    }

    // (d) regularly varying angular, strictly lighter radial
    if (rv_w && dominates(r, w) == Ordering::StrictlyLighter) {
        DependenceSummary s;
        s.rule = "Prop5";
        s.chi = chi_w;
        const double alpha_w = rv_w->alpha;
        const bool r_rv = rv_r.has_value();
        const double alpha_r = r_rv ? rv_r->alpha : inf;
        if (eta_w.is_defined() && eta_w.value() > 0.0) {
            const double threshold = alpha_w / eta_w.value();
            if (!r_rv) {
                s.eta = eta_w;
            } else if (close(alpha_r, threshold)) {
                s.eta = Coefficient::unknown("boundary alpha_R = alpha_W/eta_W not covered");
            } else if (alpha_r < threshold) {
                s.eta = Coefficient::defined(alpha_w / alpha_r);
            } else {
                s.eta = eta_w;
            }
        } else if (eta_w.kind() == Coefficient::Kind::NotDefined ||
                   (eta_w.is_defined() && eta_w.value() == 0.0)) {
            s.eta = r_rv ? Coefficient::defined(alpha_w / alpha_r)
                         : (eta_w.is_defined() ? Coefficient::defined(0.0)
                                               : Coefficient::not_defined());
        } else {
            s.eta = Coefficient::unknown("eta_W required");
        }
        return finalize(std::move(s));
    }

    // (e) both regularly varying with the same index
    if (rv_r && rv_w && close(rv_r->alpha, rv_w->alpha)) {
        DependenceSummary s;
        s.eta = Coefficient::defined(1.0);
        const double alpha = rv_w->alpha;
        const auto gr = rv_r->log_beta;
        const auto gw = rv_w->log_beta;
        if (!gr)
            return unknown_summary("Prop6", "prefactor index of log R required (ET_{a,b} form)");

        if (*gr < -1.0) {  // log R convolution-equivalent
            s.rule = "Prop6.1";
            std::optional<double> c = in.tail_ratio_c;
            if (!c && w_vs_r == Ordering::StrictlyLighter) c = 0.0;
            if (!c && gw && close(*gw, *gr)) {
                // same principal order: ratio of slowly varying limits if carried
                const auto lw = lwt_params(w);
                const auto lr = lwt_params(r);
                if (lw && lr && lw->ell && lr->ell) c = *lw->ell / *lr->ell;
            }
            if (!c) return unknown_summary("Prop6.1", "tail ratio c required");
            if (!in.moments.ew_alpha || !in.moments.ewmin_alpha)
                return unknown_summary("Prop6.1", "moments E(W^a), E(Wmin^a) required");
            if (*c == 0.0) {
                s.chi = Coefficient::defined(
                    std::min(*in.moments.ewmin_alpha / *in.moments.ew_alpha, 1.0));
            } else {
                if (!in.moments.er_alpha)
                    return unknown_summary("Prop6.1", "moment E(R^a) required");
                if (!chi_w.is_defined())
                    return unknown_summary("Prop6.1", "chi_W required");
                s.chi = Coefficient::defined(
                    (*in.moments.ewmin_alpha + *c * chi_w.value() * *in.moments.er_alpha) /
                    (*in.moments.ew_alpha + *c * *in.moments.er_alpha));
            }
            return finalize(std::move(s));
        }
        if (close(*gr, -1.0))
            return unknown_summary("Prop6", "borderline prefactor index -1: moment finiteness unspecified");

        // log R gamma-tailed (gr > -1)
        if (!gw)
            return unknown_summary("Prop6.3", "prefactor index of log W required");
        if (*gw > -1.0) {
            if (chi_w.is_defined() && chi_w.value() > 0.0) {
                s.rule = "Prop6.3a";
                s.chi = chi_w;
                return finalize(std::move(s));
            }
            // need E(Wmin^{a+eps}) < inf: W_min lighter or with integrable prefactor
            const auto rm = rv_info(wm);
            const bool wmin_ok =
                dominates(wm, TailClass(RegVarInf{alpha})) == Ordering::StrictlyLighter ||
                (rm && close(rm->alpha, alpha) && rm->log_beta && *rm->log_beta < -1.0);
            if (!chi_w.is_defined())
                return unknown_summary("Prop6.3", "chi_W required");
            if (wmin_ok) {
                s.rule = "Prop6.3c";
                s.chi = Coefficient::defined(0.0);
                return finalize(std::move(s));
            }
            return unknown_summary("Prop6.3c", "finiteness of E(Wmin^(a+eps)) undecided");
        }
        if (close(*gw, -1.0))
            return unknown_summary("Prop6.3", "borderline prefactor index -1 for log W");
        // gw < -1: E(W^a) finite
        s.rule = "Prop6.3b";
        if (!in.moments.ew_alpha || !in.moments.ewmin_alpha)
            return unknown_summary("Prop6.3b", "moments E(W^a), E(Wmin^a) required");
        s.chi =
            Coefficient::defined(std::min(*in.moments.ewmin_alpha / *in.moments.ew_alpha, 1.0));
        return finalize(std::move(s));
    }

    // (f) all log-Weibull with a common index beta > 1
    {
        const auto lr = lwt_params(r);
        const auto lw = lwt_params(w);
        const auto lm = lwt_params(wm);
        if (lr && lw && lm && lr->beta > 1.0 && close(lr->beta, lw->beta) &&
            close(lr->beta, lm->beta)) {
            if (!lr->ell || !lw->ell || !lm->ell)
                return unknown_summary(
                    "Prop7", "slowly varying parts not known to be asymptotically constant");
            DependenceSummary s;
            if (!chi_w.is_defined()) return unknown_summary("Prop7", "chi_W required");
            if (chi_w.value() > 0.0) {
                s.rule = "Prop7.1";
                s.chi = chi_w;
                s.eta = Coefficient::defined(1.0);
                return finalize(std::move(s));
            }
            s.rule = "Prop7.2";
            s.chi = Coefficient::defined(0.0);
            const double beta = lr->beta;
            const double e = 1.0 / (beta - 1.0);
            const double ratio = (std::pow(lm->alpha, e) + std::pow(lr->alpha, e)) /
                                 (std::pow(lw->alpha, e) + std::pow(lr->alpha, e));
            const double eta_w_val = lw->alpha / lm->alpha;
            if (eta_w.is_defined() && std::abs(eta_w.value() - eta_w_val) > 1e-9)
                throw error("supplied eta_W inconsistent with LWT parameters");
            s.eta = Coefficient::defined(eta_w_val * std::pow(ratio, beta - 1.0));
            return finalize(std::move(s));
        }
    }

    // (g) all Weibull-type
    {
        const auto pr = wt_params(r);
        const auto pw = wt_params(w);
        const auto pm = wt_params(wm);
        if (pr && pw && pm) {
            DependenceSummary s;
            if (close(pm.value().beta, pw->beta)) {
                if (close(pm->alpha, pw->alpha)) {
                    if (close(pm->gamma, pw->gamma)) {
                        s.rule = "Prop8.1";
                        if (!chi_w.is_defined()) return unknown_summary("Prop8.1", "chi_W required");
                        s.chi = chi_w;
                        s.eta = Coefficient::defined(1.0);
                        return finalize(std::move(s));
                    }
                    s.rule = "Prop8.2";
                    s.chi = Coefficient::defined(0.0);
                    s.eta = Coefficient::defined(1.0);
                    return finalize(std::move(s));
                }
                s.rule = "Prop8.3";
                s.chi = Coefficient::defined(0.0);
                const double expo = pr->beta / (pr->beta + pw->beta);
                s.eta = Coefficient::defined(std::pow(pw->alpha / pm->alpha, expo));
                return finalize(std::move(s));
            }
            s.rule = "Prop8.4";
            s.chi = Coefficient::defined(0.0);
            s.eta = Coefficient::defined(0.0);
            return finalize(std::move(s));
        }
    }

    // (h) negative Weibull interactions
    {
        const auto* nw = w.get_if<NegWeibull>();
        const auto* nm = wm.get_if<NegWeibull>();
        const auto* nr = r.get_if<NegWeibull>();
        if (!nr && is_gumbel_mda_class(r) && nw && nm && close(nw->endpoint, nm->endpoint)) {
            DependenceSummary s;
            s.rule = "Prop9.1";
            if (!chi_w.is_defined()) return unknown_summary("Prop9.1", "chi_W required");
            s.chi = chi_w;
            s.eta = Coefficient::defined(1.0);
            return finalize(std::move(s));
        }
        if (nr && !nw && is_gumbel_mda_class(w) && is_gumbel_mda_class(wm) &&
            close(w.endpoint(), wm.endpoint())) {
            DependenceSummary s;
            s.rule = "Prop9.2";
            if (!chi_w.is_defined()) return unknown_summary("Prop9.2", "chi_W required");
            s.chi = chi_w;
            s.eta = eta_w;
            if (s.chi.value() > 0.0) s.eta = Coefficient::defined(1.0);
            return finalize(std::move(s));
        }
        if (nr && nw && nm && close(nw->endpoint, nm->endpoint)) {
            DependenceSummary s;
            s.rule = "Prop9.3";
            if (close(nm->alpha, nw->alpha)) {
                if (!chi_w.is_defined()) return unknown_summary("Prop9.3", "chi_W required");
                s.chi = chi_w;
                s.eta = Coefficient::defined(1.0);
                return finalize(std::move(s));
            }
            s.chi = Coefficient::defined(0.0);
            s.eta = Coefficient::defined((nw->alpha + nr->alpha) / (nm->alpha + nr->alpha));
            return finalize(std::move(s));
        }
    }

    // (i) Weibull x log-Weibull: open problem
    {
        const bool r_wt = wt_params(r).has_value();
        const bool w_wt = wt_params(w).has_value();
        const auto lr = lwt_params(r);
        const auto lw = lwt_params(w);
        if ((r_wt && lw && lw->beta > 1.0) || (lr && lr->beta > 1.0 && w_wt))
            return unknown_summary("Table3.open", "open problem");
    }

    return unknown_summary("none", "no applicable rule for this class combination");
}

// --- model families ---------------------------------------------------------

DependenceSummary coefficients_model1(double theta, const TailClass& r_class) {
    if (!(theta >= 0.5)) throw invalid_params_error("model 1: theta >= 1/2");
    const ConstrainedRadial radial = ConstrainedRadial::from_tail_class(r_class);
    if (radial.mda != Mda::Gumbel || radial.endpoint < inf)
        throw invalid_params_error("model 1: radial must be Gumbel MDA with infinite endpoint");
    DependenceSummary s;
    s.rule = "Prop10";
    s.chi = Coefficient::defined(std::max(2.0 * (theta - 1.0) / (2.0 * theta - 1.0), 0.0));
    const double zeta = std::min(theta, 1.0);
    if (zeta == 1.0) {
        s.eta = Coefficient::defined(1.0);
    } else if (radial.log_tail_superexp) {
        s.eta = Coefficient::defined(0.0);
    } else if (radial.log_tail_index) {
        s.eta = Coefficient::defined(std::pow(zeta, *radial.log_tail_index));
    } else {
        s.eta = Coefficient::unknown("-log Fbar_R not regularly varying with known index");
    }
    return finalize(std::move(s));
}

DependenceSummary coefficients_model2(double xi, double alpha) {
    if (!(alpha > 0)) throw invalid_params_error("model 2: alpha > 0");
    DependenceSummary s;
    if (xi > 0) {
        s.rule = "Prop11.1";
        const double p = 1.0 / xi;
        double chi;
        if (alpha == 1.0) {
            chi = 2.0 * xi / (2.0 * xi + 1.0);
        } else {
            const double ew = std::exp(log_beta(alpha + p, alpha) - log_beta(alpha, alpha));
            const ModelPtr beta_w = make_beta(alpha, alpha);
            auto f = [&](double x) {
                const double sv = beta_w->survival(x);
                return p * std::pow(x, p - 1.0) * sv * sv;
            };
            QuadOptions opts;
            opts.rel_tol = 1e-11;
            const double ewmin = integrate_or_throw(f, 0.0, 1.0, opts, {0.5});
            chi = ewmin / ew;
        }
        s.chi = Coefficient::defined(chi);
        s.eta = Coefficient::defined(1.0);
    } else if (xi == 0.0) {
        s.rule = "Prop11.2";
        s.chi = Coefficient::defined(0.0);
        s.eta = Coefficient::defined(1.0);
    } else {
        s.rule = "Prop11.3";
        s.chi = Coefficient::defined(0.0);
        s.eta = Coefficient::defined((1.0 - xi * alpha) / (1.0 - 2.0 * xi * alpha));
    }
    return finalize(std::move(s));
}

DependenceSummary coefficients(const ConstructionSpec& spec) {
    if (spec.preset == "model1") {
        return coefficients_model1(spec.preset_params.at("theta"), spec.radial->tail_class());
    }
    if (spec.preset == "model2") {
        return coefficients_model2(spec.preset_params.at("xi"), spec.preset_params.at("alpha"));
    }
    if (auto cv = as_constrained(*spec.angular)) {
        const NormProfile profile = cv->norm->profile();
        const double pw1 = spec.angular->margin_atom();
        const ConstrainedRadial radial =
            ConstrainedRadial::from_tail_class(spec.radial->tail_class());
        return coefficients_constrained(radial, profile, pw1, spec.angular.get());
    }
    UnconstrainedInput in{spec.radial->tail_class(),
                          spec.angular->margin_class(),
                          spec.angular->margin_class(),  // replaced below
                          Coefficient::unknown("not supplied"),
                          Coefficient::unknown("not supplied"),
                          std::nullopt,
                          {}};
    const auto wmin = spec.angular->min_class();
    if (!wmin)
        return unknown_summary("none", "tail class of min(W1,W2) unavailable for this angular law");
    in.wmin_class = *wmin;
    if (auto cw = spec.angular->chi_w()) in.chi_w = Coefficient::defined(*cw);
    if (auto ew = spec.angular->eta_w()) in.eta_w = Coefficient::defined(*ew);
    // attach moments when the radial is regularly varying and they exist
    if (const auto rv = rv_info(in.r_class); rv && rv->alpha > 0) {
        bool finite = true;
        if (const auto wrv = rv_info(in.w_class)) finite = wrv->alpha > rv->alpha;
        if (finite) {
            try {
                in.moments.ew_alpha = spec.angular->margin_moment(rv->alpha);
                in.moments.ewmin_alpha = spec.angular->min_moment(rv->alpha);
            } catch (const error&) {
                // leave absent; the engine reports what is missing
            }
        }
    }
    return coefficients_unconstrained(in);
}

// --- exponent function and bounds --------------------------------------------

double exponent_function(const AngularModel& angular, double alpha, double x1, double x2) {
    if (!(alpha > 0) || !(x1 > 0) || !(x2 > 0))
        throw invalid_params_error("exponent_function: alpha, x1, x2 > 0");
    const double ew = angular.margin_moment(alpha);
    const double c1 = ew * x1;
    const double c2 = ew * x2;
    const double wstar = angular.margin_endpoint();
    if (!std::isfinite(wstar))
        throw invalid_params_error("exponent_function: unbounded angular support unsupported");
    const double t_top = std::pow(wstar, alpha) * std::max(1.0 / c1, 1.0 / c2);
    auto joint_cdf_at = [&](double t) {
        const double a = std::pow(t * c1, 1.0 / alpha);
        const double b = std::pow(t * c2, 1.0 / alpha);
        return angular.joint_cdf(a, b);
    };
    auto f = [&](double t) { return 1.0 - joint_cdf_at(t); };
    QuadOptions opts;
    opts.rel_tol = 1e-12;
    const double kink1 = std::pow(wstar, alpha) / c1;
    const double kink2 = std::pow(wstar, alpha) / c2;
    return integrate_or_throw(f, 0.0, t_top, opts, {0.5 * t_top, kink1, kink2});
}

double model2_exponent(double xi, double x1, double x2) {
    if (!(xi > 0)) throw invalid_params_error("model2_exponent: xi > 0");
    const double mn = std::min(x1, x2);
    const double mx = std::max(x1, x2);
    return 1.0 / mn + std::pow(mn / mx, xi) / ((2.0 * xi + 1.0) * mx);
}

std::pair<double, double> chi_bounds(const std::function<double(double)>& surv1,
                                     const std::function<double(double)>& surv2,
                                     const std::function<double(double)>& joint, double q) {
    if (!(q > 0) || !(q < 1)) throw invalid_params_error("chi_bounds: q in (0,1)");
    auto quantile_of = [&](const std::function<double(double)>& sv) {
        double hi = 1.0;
        while (sv(hi) > 1.0 - q && hi < 1e300) hi *= 2.0;
        double lo = hi > 1.0 ? hi / 2.0 : 0.0;
        while (lo > 1e-300 && sv(lo) < 1.0 - q) lo /= 2.0;
        return invert_monotone(sv, 1.0 - q, lo, hi, false, 0.0, 1e-13 * (1.0 - q) + 1e-300);
    };
    const double q1 = quantile_of(surv1);
    const double q2 = quantile_of(surv2);
    const double x_lo = std::min(q1, q2);
    const double x_hi = std::max(q1, q2);
    const double lower = joint(x_hi) / (1.0 - q);
    const double upper = joint(x_lo) / (1.0 - q);
    return {lower, upper};
}

}  // namespace taildep
