#ifndef TAILDEP_SIMEST_HPP
#define TAILDEP_SIMEST_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "taildep/depcalc.hpp"
#include "taildep/distmodel.hpp"

namespace taildep {

// Seeded Monte Carlo batch of the construction. Sampling is counter-based
// (Philox keyed by the seed, one counter per sample), so a batch is bitwise
// reproducible for a given (spec, n, seed) regardless of thread count.
struct SampleBatch {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::vector<double> x1, x2;
    std::string spec_fingerprint;
};

SampleBatch sample(const ConstructionSpec& spec, std::size_t n, std::uint64_t seed,
                   int nthreads = 0);

struct Estimate {
    double value = 0.0;
    double std_err = 0.0;
};

// Rank-based empirical chi(q): exceedance proportion over the q-th rank
// quantile on both margins, with its binomial standard error.
Estimate empirical_chi(const SampleBatch& batch, double q);

// Hill estimate of eta from the structure variable T = min over margins of
// 1/(1 - U) on rank-based uniforms, over the top k order statistics.
Estimate hill_eta(const SampleBatch& batch, std::size_t k);

std::size_t default_hill_k(std::size_t n);  // floor(n^0.6)

struct VerifyBudget {
    std::size_t n = 1000000;
    double q = 0.999;
    std::size_t k = 0;  // 0: default_hill_k(n)
};

struct CoefficientCheck {
    bool applicable = false;
    double symbolic = 0.0;
    double estimate = 0.0;
    double std_err = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    std::string note;
};

struct VerifyReport {
    std::string spec_fingerprint;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double q = 0.0;
    std::size_t k = 0;
    CoefficientCheck chi;
    CoefficientCheck eta;
    bool skipped = false;
    bool pass = true;
};

// Monte Carlo verification of a symbolic summary; chi is additionally
// cross-checked against the quadrature chi(q) where the models support it.
VerifyReport verify(const ConstructionSpec& spec, const DependenceSummary& symbolic,
                    const VerifyBudget& budget, std::uint64_t seed);

std::string batch_csv(const SampleBatch& batch);
std::string spec_fingerprint(const ConstructionSpec& spec);

}  // namespace taildep

#endif
