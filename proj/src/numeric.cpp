#include "taildep/numeric.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace taildep {

namespace {

// Gauss-Kronrod 7-15 abscissae and weights on [-1,1] (QUADPACK dqk15).
constexpr double xgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
constexpr double wgk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.10479001032225018, 0.14065325971552592,
    0.16900472663926790, 0.19035057806478542, 0.20443294007529889, 0.20948214108472782};
constexpr double wg[4] = {
    0.12948496616886969, 0.27970539148927664, 0.38183005050511894, 0.41795918367346938};

struct Segment {
    double a, b;
    double value;
    double err;
};

Segment gk15(const Fn1& f, double a, double b, long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resg = fc * wg[3];
    double resk = fc * wgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        resk += wgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += wg[j / 2] * (f1 + f2);
    }
    evals += 15;
    const double value = resk * h;
    const double err = std::abs((resk - resg) * h);
    return {a, b, value, err};
}

QuadResult run_adaptive(const Fn1& f, std::vector<Segment> segs, const QuadOptions& opts,
                        long evals0) {
    QuadResult res;
    res.evals = evals0;
    auto totals = [&segs]() {
        KahanSum v, e;
        for (const auto& s : segs) {
            v.add(s.value);
            e.add(s.err);
        }
        return std::pair<double, double>(v.value(), e.value());
    };
    for (int iter = 0; iter < opts.max_splits; ++iter) {
        auto [val, err] = totals();
        const double tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(val));
        if (err <= tol || err == 0.0) {
            res.value = val;
            res.abs_err = err;
            res.converged = true;
            return res;
        }
        auto worst = std::max_element(segs.begin(), segs.end(),
                                      [](const Segment& x, const Segment& y) { return x.err < y.err; });
        const double a = worst->a, b = worst->b;
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) {  // interval at rounding resolution
            worst->err = 0.0;
            continue;
        }
        *worst = gk15(f, a, m, res.evals);
        segs.push_back(gk15(f, m, b, res.evals));
    }
    auto [val, err] = totals();
    res.value = val;
    res.abs_err = err;
    res.converged = err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(val));
    return res;
}

}  // namespace

QuadResult integrate(const Fn1& f, double a, double b, const QuadOptions& opts,
                     const std::vector<double>& breakpoints) {
    QuadResult res;
    if (!(b > a)) {
        res.converged = true;
        return res;
    }
    std::vector<double> pts{a};
    for (double p : breakpoints)
        if (p > a && p < b) pts.push_back(p);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    long evals = 0;
    std::vector<Segment> segs;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) segs.push_back(gk15(f, pts[i], pts[i + 1], evals));
    return run_adaptive(f, std::move(segs), opts, evals);
}

QuadResult integrate_to_inf(const Fn1& f, double a, const QuadOptions& opts) {
    auto g = [&f, a](double t) {
        const double om = 1.0 - t;
        const double x = a + t / om;
        return f(x) / (om * om);
    };
    // Keep away from t=1 where x overflows; the integrand must vanish there.
    return integrate(g, 0.0, 1.0 - 1e-14, opts, {0.5, 0.9, 0.99});
}

double integrate_or_throw(const Fn1& f, double a, double b, const QuadOptions& opts,
                          const std::vector<double>& breakpoints) {
    QuadResult r = integrate(f, a, b, opts, breakpoints);
    if (!r.converged) throw non_convergent_error("quadrature failed to converge");
    return r.value;
}

double integrate_to_inf_or_throw(const Fn1& f, double a, const QuadOptions& opts) {
    QuadResult r = integrate_to_inf(f, a, opts);
    if (!r.converged) throw non_convergent_error("quadrature failed to converge");
    return r.value;
}

double bisect_root(const Fn1& f, double lo, double hi, double xtol, int max_iter) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) throw error("bisect_root: endpoints do not bracket a root");
    for (int i = 0; i < max_iter && hi - lo > xtol; ++i) {
        const double m = 0.5 * (lo + hi);
        if (m <= lo || m >= hi) break;
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm > 0) == (flo > 0)) {
            lo = m;
            flo = fm;
        } else {
            hi = m;
        }
    }
    return 0.5 * (lo + hi);
}

double invert_monotone(const Fn1& f, double target, double lo, double hi, bool increasing,
                       double xtol, double ftol, int max_iter) {
    auto g = [&](double x) { return increasing ? f(x) - target : target - f(x); };
    double glo = g(lo);
    double ghi = g(hi);
    if (glo > 0 && ghi > 0) return lo;
    if (glo < 0 && ghi < 0) return hi;
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < max_iter; ++i) {
        const double gx = g(x);
        if (ftol > 0 && std::abs(gx) <= ftol) return x;
        if (gx == 0.0) return x;
        if (gx > 0) {
            hi = x;
            ghi = gx;
        } else {
            lo = x;
            glo = gx;
        }
        if (hi - lo <= xtol) break;
        // secant proposal inside the bracket, else midpoint
        double xs = x;
        if (ghi != glo) xs = (lo * ghi - hi * glo) / (ghi - glo);
        const double margin = 0.01 * (hi - lo);
        if (!(xs > lo + margin && xs < hi - margin) || (i % 3 == 2)) xs = 0.5 * (lo + hi);
        x = xs;
    }
    return 0.5 * (lo + hi);
}

double one_sided_derivative(const Fn1& f, double x, int dir, double h) {
    const double s = dir >= 0 ? 1.0 : -1.0;
    const double f0 = f(x);
    auto d = [&](double step) { return (f(x + s * step) - f0) / (s * step); };
    const double d1 = d(h);
    const double d2 = d(h / 2);
    const double d3 = d(h / 4);
    // two Richardson stages for the O(h) one-sided stencil
    const double e1 = 2 * d2 - d1;
    const double e2 = 2 * d3 - d2;
    return (4 * e2 - e1) / 3.0;
}

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    if (n < 2 || ys.size() != n) throw error("fit_line: need >= 2 points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    LineFit out;
    if (sxx == 0) throw error("fit_line: degenerate abscissae");
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    out.r2 = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return out;
}

int default_thread_count() {
    if (const char* env = std::getenv("TAILDEP_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int nthreads) {
    if (nthreads <= 0) nthreads = default_thread_count();
    const std::size_t workers = std::min<std::size_t>(std::max(nthreads, 1), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr eptr;
    std::mutex mu;
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!eptr) eptr = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (eptr) std::rethrow_exception(eptr);
}

}  // namespace taildep
