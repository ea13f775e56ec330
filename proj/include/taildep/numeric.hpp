#ifndef TAILDEP_NUMERIC_HPP
#define TAILDEP_NUMERIC_HPP

#include <functional>
#include <vector>

#include "taildep/common.hpp"

namespace taildep {

// Compensated (Kahan) accumulator.
class KahanSum {
   public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

   private:
    double s_ = 0.0;
    double c_ = 0.0;
};

struct QuadOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_splits = 4000;
};

struct QuadResult {
    double value = 0.0;
    double abs_err = 0.0;
    long evals = 0;
    bool converged = false;
};

using Fn1 = std::function<double(double)>;

// Adaptive Gauss-Kronrod (7,15) over [a,b], optionally split at interior
// breakpoints (integrand kinks). Worst-segment-first refinement.
QuadResult integrate(const Fn1& f, double a, double b, const QuadOptions& opts = {},
                     const std::vector<double>& breakpoints = {});

// \int_a^inf f, via t -> a + t/(1-t).
QuadResult integrate_to_inf(const Fn1& f, double a, const QuadOptions& opts = {});

// Same, but throws non_convergent_error unless converged.
double integrate_or_throw(const Fn1& f, double a, double b, const QuadOptions& opts = {},
                          const std::vector<double>& breakpoints = {});
double integrate_to_inf_or_throw(const Fn1& f, double a, const QuadOptions& opts = {});

// Plain bracketed bisection for f(x)=0 with f(lo), f(hi) of opposite sign.
double bisect_root(const Fn1& f, double lo, double hi, double xtol, int max_iter = 400);

// Inverts a monotone function: finds x in [lo,hi] with f(x)=target.
// Bisection with a secant acceleration step; robust to flat regions.
double invert_monotone(const Fn1& f, double target, double lo, double hi, bool increasing,
                       double xtol, double ftol = 0.0, int max_iter = 500);

// One-sided derivative at x in direction dir (+1 right, -1 left) with
// Richardson extrapolation over steps h, h/2, h/4.
double one_sided_derivative(const Fn1& f, double x, int dir, double h = 1e-4);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};
LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

// Runs fn(i) for i in [0,n) on up to nthreads threads (0 = hardware default,
// honoring TAILDEP_THREADS). Exceptions are rethrown on the caller thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int nthreads = 0);

int default_thread_count();

}  // namespace taildep

#endif
