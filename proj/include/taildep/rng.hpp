#ifndef TAILDEP_RNG_HPP
#define TAILDEP_RNG_HPP

#include <array>
#include <cstdint>

namespace taildep {

// Philox 4x32-10 counter-based generator. Stateless keyed block function:
// identical (key, counter) always produce identical output on any platform,
// so sample i of a batch can be drawn independently of every other sample.
std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        const std::array<std::uint32_t, 2>& key);

// Uniform in (0,1) from two 32-bit words (53-bit mantissa, never 0 or 1).
double uniform_from_bits(std::uint32_t hi, std::uint32_t lo);

// Stream of uniforms for one logical draw: seed keys the generator, stream
// separates independent substreams, index is the draw (sample) counter.
// Up to 4 uniforms per index are available.
class CounterRng {
   public:
    CounterRng(std::uint64_t seed, std::uint32_t stream = 0) : seed_(seed), stream_(stream) {}

    // j-th uniform of draw `index`, j in [0,4).
    double uniform(std::uint64_t index, unsigned j) const;

    std::uint64_t seed() const { return seed_; }
    std::uint32_t stream() const { return stream_; }

   private:
    std::uint64_t seed_;
    std::uint32_t stream_;
};

// Sequential convenience wrapper (used where a plain generator is wanted).
class SequentialRng {
   public:
    explicit SequentialRng(std::uint64_t seed, std::uint32_t stream = 0)
        : rng_(seed, stream) {}
    double next() {
        const double u = rng_.uniform(index_, j_);
        if (++j_ == 4) {
            j_ = 0;
            ++index_;
        }
        return u;
    }

   private:
    CounterRng rng_;
    std::uint64_t index_ = 0;
    unsigned j_ = 0;
};

}  // namespace taildep

#endif
