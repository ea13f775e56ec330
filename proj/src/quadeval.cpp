#include "taildep/quadeval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "taildep/numeric.hpp"
#include "taildep/tailclass.hpp"

namespace taildep {

namespace {

constexpr double underflow_floor = 1e-300;

// int g(x/r) dF_R(r) where g is a survival-type function vanishing above
// g_endpoint. Integration runs over u = log r, split at the support edge and
// the radial bulk; the infinite part goes through a rational map.
SurvivalResult mixture_integral(const UnivariateModel& radial,
                                const std::function<double(double)>& g, double g_endpoint,
                                double x) {
    SurvivalResult out;
    if (x <= 0.0) {
        out.value = 1.0;
        return out;
    }
    // degenerate radial: the mixture is g evaluated at a point
    if (radial.endpoint() == radial.support_lo()) {
        out.value = g(x / radial.endpoint());
        return out;
    }
    const double r_min = std::max(radial.support_lo(), x / g_endpoint);
    const double r_max = radial.endpoint();
    if (r_min >= r_max) return out;

    auto integrand_u = [&](double u) {
        const double r = std::exp(u);
        const double gv = g(x / r);
        if (gv <= 0.0) return 0.0;
        return gv * radial.density(r) * r;
    };

    QuadOptions opts;
    opts.rel_tol = 1e-10;
    opts.abs_tol = underflow_floor;

    const double u_lo = std::log(r_min);
    if (std::isfinite(r_max)) {
        const double u_hi = std::log(r_max);
        std::vector<double> brk;
        for (double f : {0.125, 0.25, 0.5, 0.75}) brk.push_back(u_lo + f * (u_hi - u_lo));
        QuadResult r = integrate(integrand_u, u_lo, u_hi, opts, brk);
        if (!r.converged) throw non_convergent_error("mixture quadrature (bounded radial)");
        out.value = std::max(r.value, 0.0);
        out.abs_err = r.abs_err;
        return out;
    }
    // unbounded radial: a finite window after the lower edge plus the tail
    const double u_mid = u_lo + 3.0;
    QuadResult head = integrate(integrand_u, u_lo, u_mid, opts,
                                {u_lo + 0.25, u_lo + 0.75, u_lo + 1.5});
    QuadResult tail = integrate_to_inf(integrand_u, u_mid, opts);
    if (!head.converged || !tail.converged)
        throw non_convergent_error("mixture quadrature (unbounded radial)");
    KahanSum s;
    s.add(head.value);
    s.add(tail.value);
    out.value = std::max(s.value(), 0.0);
    out.abs_err = head.abs_err + tail.abs_err;
    return out;
}

}  // namespace

SurvivalResult marginal_survival_err(const ConstructionSpec& spec, double x) {
    const AngularModel& a = *spec.angular;
    return mixture_integral(
        *spec.radial, [&a](double t) { return a.margin_survival(t); }, a.margin_endpoint(), x);
}

double marginal_survival(const ConstructionSpec& spec, double x) {
    return marginal_survival_err(spec, x).value;
}

SurvivalResult joint_min_survival_err(const ConstructionSpec& spec, double x) {
    const AngularModel& a = *spec.angular;
    return mixture_integral(
        *spec.radial, [&a](double t) { return a.min_survival(t); }, a.min_endpoint(), x);
}

double joint_min_survival(const ConstructionSpec& spec, double x) {
    return joint_min_survival_err(spec, x).value;
}

double quantile(const ConstructionSpec& spec, double q) {
    if (!(q > 0.0) || !(q < 1.0)) throw invalid_params_error("quantile: q in (0,1)");
    const double target = 1.0 - q;
    const double x_star = spec.radial->endpoint() * spec.angular->margin_endpoint();
    double lo, hi;
    if (std::isfinite(x_star)) {
        lo = 0.0;
        hi = x_star;
    } else {
        // geometric bracket growth from the medians
        double seed = spec.radial->quantile(0.5) * std::max(spec.angular->margin_endpoint(), 1.0);
        if (!(seed > 0.0) || !std::isfinite(seed)) seed = 1.0;
        hi = seed;
        while (marginal_survival(spec, hi) > target && hi < 1e300) hi *= 2.0;
        lo = hi / 2.0;
        while (lo > 1e-300 && marginal_survival(spec, lo) < target) lo /= 2.0;
    }
    const double ftol = std::max(1e-11, 1e-6 * target);
    return invert_monotone([&](double x) { return marginal_survival(spec, x); }, target, lo, hi,
                           false, 0.0, ftol);
}

ChiCurve chi_curve(const ConstructionSpec& spec, const std::vector<double>& q_grid,
                   int nthreads) {
    for (std::size_t i = 0; i + 1 < q_grid.size(); ++i)
        if (!(q_grid[i] < q_grid[i + 1]))
            throw invalid_params_error("chi_curve: q grid must ascend strictly");
    ChiCurve out;
    out.q_grid = q_grid;
    out.values.assign(q_grid.size(), 0.0);
    out.abs_err_est.assign(q_grid.size(), 0.0);
    parallel_for(
        q_grid.size(),
        [&](std::size_t i) {
            const double q = q_grid[i];
            const double xq = quantile(spec, q);
            const SurvivalResult joint = joint_min_survival_err(spec, xq);
            out.values[i] = joint.value / (1.0 - q);
            out.abs_err_est[i] = joint.abs_err / (1.0 - q);
        },
        nthreads);
    return out;
}

EtaDiagnostic eta_diagnostic(const ConstructionSpec& spec, const std::vector<double>& x_grid) {
    for (std::size_t i = 0; i + 1 < x_grid.size(); ++i)
        if (!(x_grid[i] < x_grid[i + 1]))
            throw invalid_params_error("eta_diagnostic: x grid must ascend strictly");
    EtaDiagnostic out;
    out.fit_form = "ratio(x) = eta + kappa / (-log joint_survival(x)), last three points";
    std::vector<double> inv_l;
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        const double x = x_grid[i];
        const double m = marginal_survival(spec, x);
        const double j = joint_min_survival(spec, x);
        if (m < underflow_floor || j < underflow_floor || m >= 1.0 || j <= 0.0) {
            out.dropped.push_back(i);
            continue;
        }
        out.x.push_back(x);
        out.ratio.push_back(std::log(m) / std::log(j));
        inv_l.push_back(-1.0 / std::log(j));
    }
    if (out.ratio.empty()) throw non_convergent_error("eta_diagnostic: all grid points dropped");
    const std::size_t n = out.ratio.size();
    if (n < 3) {
        out.extrapolated = out.ratio.back();
        return out;
    }
    std::vector<double> xs(inv_l.end() - 3, inv_l.end());
    std::vector<double> ys(out.ratio.end() - 3, out.ratio.end());
    const LineFit fit = fit_line(xs, ys);
    out.extrapolated = std::clamp(fit.intercept, 0.0, 1.0);
    return out;
}

double product_tail_approx(const UnivariateModel& r, const SEndpoint& s, double x) {
    if (!(s.s_star > 0) || !(s.alpha_s >= 0) || !(s.ell_limit > 0))
        throw invalid_params_error("product_tail_approx: invalid S endpoint data");
    if (s.alpha_s == 0.0) return r.survival(x / s.s_star);  // degenerate factor at s*
    const TailClass rc = r.tail_class();
    const ConstrainedRadial view = ConstrainedRadial::from_tail_class(rc);
    const double ga = std::exp(std::lgamma(1.0 + s.alpha_s));
    if (view.mda == Mda::Gumbel) {
        // Fbar_Y(x) ~ Gamma(1+a) Fbar_{S/s*}(1 - u) Fbar_{s*R}(x),
        // u = 1/(x b_{s*R}(x)), b_{s*R}(t) = b_R(t/s*)/s*
        const double b = r.aux_b(x / s.s_star) / s.s_star;
        const double u = 1.0 / (x * b);
        const double fbar_s = s.ell_limit * std::pow(s.s_star * u, s.alpha_s);
        return ga * fbar_s * r.survival(x / s.s_star);
    }
    if (view.mda == Mda::NegWeibull) {
        // Fbar_Y(y* - s) ~ [G(1+aS) G(1+aR) / G(1+aS+aR)] Fbar_{S/s*}(1-s/y*)
        //                  Fbar_{s*R}(y* - s), with y* = r* s*
        const auto* nw = rc.get_if<NegWeibull>();
        const double y_star = nw->endpoint * s.s_star;
        const double gap = y_star - x;
        if (!(gap > 0)) return 0.0;
        const double gr = std::exp(std::lgamma(1.0 + nw->alpha));
        const double gsum = std::exp(std::lgamma(1.0 + s.alpha_s + nw->alpha));
        const double fbar_s = s.ell_limit * std::pow(gap / nw->endpoint, s.alpha_s);
        return (ga * gr / gsum) * fbar_s * r.survival(nw->endpoint - gap / s.s_star);
    }
    throw unsupported_mda_error("product_tail_approx: radial must be Gumbel or negative Weibull MDA");
}

double breiman_check(const UnivariateModel& r, const UnivariateModel& w, double x) {
    const TailClass rc = r.tail_class();
    const auto* rv = rc.get_if<RegVarInf>();
    if (!rv || !(rv->alpha > 0))
        throw invalid_params_error("breiman_check: radial must be regularly varying");
    const TailClass wc = w.tail_class();
    if (const auto* wrv = wc.get_if<RegVarInf>())
        if (wrv->alpha <= rv->alpha)
            throw precondition_error("breiman_check: E(W^(alpha+eps)) infinite");
    ConstructionSpec spec;
    spec.radial = ModelPtr(ModelPtr{}, &r);  // non-owning alias, function scope only
    spec.angular = make_independent_pair(ModelPtr(ModelPtr{}, &w));
    const double lhs = marginal_survival(spec, x);
    const double rhs = w.moment(rv->alpha) * r.survival(x);
    return lhs / rhs;
}

std::string chi_curve_csv(const ChiCurve& c) {
    std::ostringstream os;
    os.precision(17);
    os << "q,one_minus_q,chi_q,abs_err_est\n";
    for (std::size_t i = 0; i < c.q_grid.size(); ++i)
        os << c.q_grid[i] << ',' << 1.0 - c.q_grid[i] << ',' << c.values[i] << ','
           << c.abs_err_est[i] << '\n';
    return os.str();
}

}  // namespace taildep
