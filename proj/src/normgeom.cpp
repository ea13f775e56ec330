#include "taildep/normgeom.hpp"

#include <algorithm>
#include <cmath>

#include "taildep/numeric.hpp"

namespace taildep {

double Norm::tau(double z) const {
    if (z <= 0.0) return 0.0;
    if (z >= 1.0) z = 1.0;
    const double v = nu(z, 1.0 - z);
    return std::min(z / v, 1.0);
}

double Norm::one_minus_tau(double z) const { return 1.0 - tau(z); }

double Norm::tau1_inv(double t) const {
    const NormProfile p = profile();
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return p.b1;
    return bisect_root([&](double z) { return tau(z) - t; }, 0.0, p.b1, 1e-14);
}

double Norm::tau2_inv(double t) const {
    const NormProfile p = profile();
    if (p.b2 >= 1.0) return 1.0;
    if (t >= 1.0) return p.b2;
    if (tau(1.0) >= t) return 1.0;
    return bisect_root([&](double z) { return t - tau(z); }, p.b2, 1.0, 1e-14);
}

NormProfile Norm::profile(double tol) const { return numeric_profile(*this, tol); }

namespace {

constexpr double plateau_merge_width = 1e-9;

class LpNorm final : public Norm {
   public:
    explicit LpNorm(double p) : p_(p) {
        if (!(p >= 1.0)) throw invalid_params_error("Lp norm: p >= 1");
    }
    std::string kind() const override { return "lp"; }
    std::vector<std::pair<std::string, double>> params() const override { return {{"p", p_}}; }
    double nu(double x, double y) const override {
        if (x == 0.0 && y == 0.0) return 0.0;
        const double m = std::max(x, y);
        const double r = std::min(x, y) / m;
        return m * std::pow(1.0 + std::pow(r, p_), 1.0 / p_);
    }
    double one_minus_tau(double z) const override {
        if (z <= 0.0) return 1.0;
        if (z >= 1.0) return 0.0;
        const double u = std::min(z, 1.0 - z) / std::max(z, 1.0 - z);
        const double lognu_over_max = std::log1p(std::pow(u, p_)) / p_;
        if (z >= 0.5) return -std::expm1(-lognu_over_max);
        // z below 1/2: tau = z / nu far from 1, direct form is fine
        return 1.0 - z / nu(z, 1.0 - z);
    }
    double tau1_inv(double t) const override {
        if (t <= 0.0) return 0.0;
        if (t >= 1.0) return 1.0;
        const double u = std::pow(std::pow(t, -p_) - 1.0, 1.0 / p_);
        return 1.0 / (1.0 + u);
    }
    double tau2_inv(double) const override { return 1.0; }
    NormProfile profile(double) const override {
        NormProfile pr;
        pr.zeta = std::pow(2.0, -1.0 / p_);
        pr.b1 = pr.b2 = 1.0;
        pr.gamma1 = 1.0 / p_;
        return pr;
    }

   private:
    double p_;
};

class LinfNorm final : public Norm {
   public:
    std::string kind() const override { return "linf"; }
    double nu(double x, double y) const override { return std::max(x, y); }
    double one_minus_tau(double z) const override {
        if (z >= 0.5) return 0.0;
        if (z <= 0.0) return 1.0;
        return (1.0 - 2.0 * z) / (1.0 - z);
    }
    double tau1_inv(double t) const override {
        if (t >= 1.0) return 0.5;
        if (t <= 0.0) return 0.0;
        return t / (1.0 + t);
    }
    double tau2_inv(double) const override { return 1.0; }
    NormProfile profile(double) const override {
        NormProfile pr;
        pr.zeta = 1.0;
        pr.b1 = 0.5;
        pr.b2 = 1.0;
        pr.gamma1 = 1.0;
        return pr;
    }
};

class ThetaMixNorm final : public Norm {
   public:
    explicit ThetaMixNorm(double theta) : theta_(theta) {
        if (!(theta >= 0.5)) throw invalid_params_error("theta-mix norm: theta >= 1/2");
        k_ = theta < 1.0 ? theta : 1.0;
    }
    std::string kind() const override { return "theta_mix"; }
    std::vector<std::pair<std::string, double>> params() const override {
        return {{"theta", theta_}};
    }
    double standardization_constant() const override { return k_; }
    double nu(double x, double y) const override {
        const double raw = theta_ * std::max(x, y) + (1.0 - theta_) * std::min(x, y);
        return raw / k_;
    }
    double one_minus_tau(double z) const override {
        if (z <= 0.0) return 1.0;
        if (z >= 1.0) z = 1.0;
        double num;  // nu*(z,1-z) - z, piecewise exact
        if (theta_ >= 1.0)
            num = z >= 0.5 ? (theta_ - 1.0) * (2.0 * z - 1.0) : theta_ * (1.0 - 2.0 * z);
        else
            num = z >= 0.5 ? (1.0 - theta_) * (1.0 - z) / theta_
                           : (theta_ + z * (1.0 - 3.0 * theta_)) / theta_;
        return num / nu(z, 1.0 - z);
    }
    double tau1_inv(double t) const override {
        if (t <= 0.0) return 0.0;
        if (theta_ >= 1.0) {
            // increasing piece on [0,1/2]: nu = theta(1-z) + (1-theta)z
            if (t >= 1.0) return 0.5;
            return std::min(t * theta_ / (1.0 + t * (2.0 * theta_ - 1.0)), 0.5);
        }
        // theta < 1 with nu/theta: increasing over all of [0,1], b1 = 1
        if (t >= 1.0) return 1.0;
        if (t <= theta_) return t / (1.0 + t * (2.0 - 1.0 / theta_));
        const double z = t * (1.0 - theta_) / (theta_ + t * (1.0 - 2.0 * theta_));
        return std::clamp(z, 0.5, 1.0);
    }
    double tau2_inv(double t) const override {
        if (theta_ < 1.0) return 1.0;
        if (theta_ == 1.0) return 1.0;
        const double lim = tau(1.0);  // 1/theta
        if (t <= lim) return 1.0;
        if (t >= 1.0) return 0.5;
        // z > 1/2: nu = theta z + (1-theta)(1-z)
        return t * (1.0 - theta_) / (1.0 - t * (2.0 * theta_ - 1.0));
    }
    NormProfile profile(double) const override {
        NormProfile pr;
        if (theta_ == 1.0) {
            pr.zeta = 1.0;
            pr.b1 = 0.5;
            pr.b2 = 1.0;
            pr.gamma1 = 1.0;
            return pr;
        }
        if (theta_ > 1.0) {
            pr.zeta = 1.0;
            pr.b1 = pr.b2 = 0.5;
            pr.gamma1 = 1.0;
            pr.gamma2 = 1.0;
            pr.d_increasing = 4.0 * theta_;
            pr.d_decreasing = -4.0 * (theta_ - 1.0);
            return pr;
        }
        pr.zeta = theta_;
        pr.b1 = pr.b2 = 1.0;
        pr.gamma1 = 1.0;
        return pr;
    }

   private:
    double theta_;
    double k_;
};

class MahalanobisNorm final : public Norm {
   public:
    explicit MahalanobisNorm(double rho) : rho_(rho) {
        if (!(rho > -1.0) || !(rho < 1.0))
            throw invalid_params_error("Mahalanobis norm: rho in (-1,1)");
    }
    std::string kind() const override { return "mahalanobis"; }
    std::vector<std::pair<std::string, double>> params() const override {
        return {{"rho", rho_}};
    }
    double nu(double x, double y) const override {
        const double q = x * x - 2.0 * rho_ * x * y + y * y;
        return std::sqrt(q / (1.0 - rho_ * rho_));
    }
    double one_minus_tau(double z) const override {
        if (z <= 0.0) return 1.0;
        const double y = 1.0 - z;
        const double v = nu(z, y);
        // nu^2 - z^2 = (rho z - y)^2 / (1-rho^2), exact, no cancellation
        const double d = rho_ * z - y;
        const double num = d * d / (1.0 - rho_ * rho_);
        return num / (v * (v + z));
    }
    NormProfile profile(double) const override {
        NormProfile pr;
        pr.zeta = std::sqrt(0.5 * (1.0 + rho_));
        const double zmax = rho_ > 0.0 ? 1.0 / (1.0 + rho_) : 1.0;
        pr.b1 = pr.b2 = zmax;
        pr.gamma1 = 0.5;
        if (pr.b2 < 1.0) pr.gamma2 = 0.5;
        return pr;
    }

   private:
    double rho_;
};

class CustomNorm final : public Norm {
   public:
    CustomNorm(std::function<double(double)> g, std::string name)
        : g_(std::move(g)), name_(std::move(name)) {
        validate();
        double k = inf;
        const int n = 4096;
        for (int i = 0; i <= n; ++i) {
            const double z = static_cast<double>(i) / n;
            const double ratio = g_(z) / std::max(z, 1.0 - z);
            k = std::min(k, ratio);
        }
        k_ = k;
        if (!(k_ > 0) || !std::isfinite(k_)) throw not_a_norm_error("custom norm: degenerate scale");
    }
    std::string kind() const override { return name_; }
    double standardization_constant() const override { return k_; }
    double nu(double x, double y) const override {
        const double s = x + y;
        if (s == 0.0) return 0.0;
        return s * g_(x / s) / k_;
    }

   private:
    void validate() const {
        const int n = 257;
        for (int i = 0; i <= n; ++i) {
            const double z = static_cast<double>(i) / n;
            const double a = g_(z);
            const double b = g_(1.0 - z);
            if (!(a > 0) || !std::isfinite(a)) throw not_a_norm_error("custom norm: g must be positive");
            if (std::abs(a - b) > 1e-9 * std::max(1.0, a))
                throw not_a_norm_error("custom norm: g not symmetric about 1/2");
        }
        // convexity of nu along the simplex chord: g((z1+z2)/2) <= (g(z1)+g(z2))/2
        for (int i = 0; i + 2 <= n; ++i) {
            const double z1 = static_cast<double>(i) / n;
            const double z2 = static_cast<double>(i + 2) / n;
            if (g_(0.5 * (z1 + z2)) > 0.5 * (g_(z1) + g_(z2)) + 1e-9)
                throw not_a_norm_error("custom norm: probe violates convexity");
        }
    }

    std::function<double(double)> g_;
    std::string name_;
    double k_ = 1.0;
};

// monotone (Fritsch-Carlson) cubic interpolation used for tabulated norms
class Pchip {
   public:
    Pchip(std::vector<double> xs, std::vector<double> ys) : x_(std::move(xs)), y_(std::move(ys)) {
        const std::size_t n = x_.size();
        if (n < 3) throw invalid_params_error("pchip: need >= 3 rows");
        std::vector<double> h(n - 1), d(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h[i] = x_[i + 1] - x_[i];
            if (!(h[i] > 0)) throw invalid_params_error("pchip: abscissae must ascend");
            d[i] = (y_[i + 1] - y_[i]) / h[i];
        }
        m_.assign(n, 0.0);
        m_[0] = d[0];
        m_[n - 1] = d[n - 2];
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (d[i - 1] * d[i] <= 0.0) {
                m_[i] = 0.0;
            } else {
                const double w1 = 2 * h[i] + h[i - 1];
                const double w2 = h[i] + 2 * h[i - 1];
                m_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
            }
        }
    }
    double operator()(double x) const {
        const std::size_t n = x_.size();
        if (x <= x_.front()) return y_.front();
        if (x >= x_.back()) return y_.back();
        std::size_t i = std::upper_bound(x_.begin(), x_.end(), x) - x_.begin() - 1;
        const double h = x_[i + 1] - x_[i];
        const double t = (x - x_[i]) / h;
        const double t2 = t * t, t3 = t2 * t;
        const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
        const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
        return h00 * y_[i] + h10 * h * m_[i] + h01 * y_[i + 1] + h11 * h * m_[i + 1];
    }

   private:
    std::vector<double> x_, y_, m_;
};

}  // namespace

NormPtr make_lp_norm(double p) { return std::make_shared<LpNorm>(p); }
NormPtr make_linf_norm() { return std::make_shared<LinfNorm>(); }
NormPtr make_theta_mix_norm(double theta) { return std::make_shared<ThetaMixNorm>(theta); }
NormPtr make_mahalanobis_norm(double rho) { return std::make_shared<MahalanobisNorm>(rho); }
NormPtr make_custom_norm(std::function<double(double)> g, const std::string& name) {
    return std::make_shared<CustomNorm>(std::move(g), name);
}
NormPtr make_custom_norm_from_table(const std::vector<std::pair<double, double>>& rows,
                                    const std::string& name) {
    std::vector<std::pair<double, double>> sorted = rows;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> xs, ys;
    for (const auto& [z, v] : sorted) {
        xs.push_back(z);
        ys.push_back(v);
    }
    if (xs.empty() || xs.front() > 1e-12 || xs.back() < 1.0 - 1e-12)
        throw invalid_params_error("tabulated norm must cover [0,1]");
    auto interp = std::make_shared<Pchip>(std::move(xs), std::move(ys));
    return std::make_shared<CustomNorm>([interp](double z) { return (*interp)(z); }, name);
}

NormProfile numeric_profile(const Norm& n, double tol) {
    NormProfile pr;
    pr.zeta = n.tau(0.5);

    // locate the maximum of tau on [1/2,1] (golden section; tau rises to the
    // plateau and falls after it)
    auto omt = [&n](double z) { return n.one_minus_tau(z); };
    double lo = 0.5, hi = 1.0;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = omt(x1), f2 = omt(x2);
    for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = omt(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = omt(x2);
        }
    }
    const double zpeak = 0.5 * (lo + hi);
    if (omt(zpeak) > tol && omt(0.5) > tol && omt(1.0) > tol)
        throw profile_unresolved_error("tau never reaches 1: norm not standardized");

    // plateau edges: first/last z with 1 - tau <= tol
    auto below = [&](double z) { return omt(z) <= tol; };
    double zin = below(zpeak) ? zpeak : (below(0.5) ? 0.5 : 1.0);
    if (below(0.5)) {
        pr.b1 = 0.5;
    } else {
        double a = 0.5, b = zin;
        for (int i = 0; i < 200 && b - a > 1e-15; ++i) {
            const double m = 0.5 * (a + b);
            (below(m) ? b : a) = m;
        }
        pr.b1 = 0.5 * (a + b);
    }
    if (below(1.0)) {
        pr.b2 = 1.0;
    } else {
        double a = zin, b = 1.0;
        for (int i = 0; i < 200 && b - a > 1e-15; ++i) {
            const double m = 0.5 * (a + b);
            (below(m) ? a : b) = m;
        }
        pr.b2 = 0.5 * (a + b);
    }
    if (pr.b2 - pr.b1 < plateau_merge_width) pr.b1 = pr.b2 = 0.5 * (pr.b1 + pr.b2);

    // gamma by log-log slope of 1 - tau over a geometric grid off the plateau
    auto gamma_fit = [&](int side) -> double {  // side -1: below b1, +1: above b2
        std::vector<double> lx, ly;
        const double base = side < 0 ? pr.b1 : pr.b2;
        for (int i = 0; i < 20; ++i) {
            const double s = 1e-8 * std::pow(1e5, i / 19.0);
            const double z = base + side * s;
            if (z <= 0.0 || z >= 1.0) continue;
            const double v = omt(z);
            if (v <= 1e-13) continue;
            lx.push_back(std::log(s));
            ly.push_back(std::log(v));
        }
        if (lx.size() < 8) throw profile_unresolved_error("gamma regression: too few usable points");
        const LineFit fit = fit_line(lx, ly);
        if (fit.r2 < 0.999)
            throw profile_unresolved_error("gamma regression: poor fit, (N2) may fail");
        return 1.0 / fit.slope;
    };
    pr.gamma1 = gamma_fit(-1);
    if (pr.b2 < 1.0) pr.gamma2 = gamma_fit(+1);

    if (pr.b1 == pr.b2 && std::abs(pr.b1 - 0.5) < 1e-12) {
        auto tauf = [&n](double z) { return n.tau(z); };
        pr.d_increasing = one_sided_derivative(tauf, 0.5, -1);
        pr.d_decreasing = one_sided_derivative(tauf, 0.5, +1);
    }
    return pr;
}

}  // namespace taildep
