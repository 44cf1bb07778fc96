#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace levyexit {

// SplitMix64 step; used to derive independent sub-stream seeds from a master
// seed so that every stochastic task is reproducible bit-for-bit regardless
// of thread count.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
    std::uint64_t s = base ^ (salt * 0xD6E8FEB86659FD93ULL);
    return splitmix64(s);
}

// Seeded generator with the handful of variate kinds the library needs.
// Distributions are hand-rolled (not std::) so that sequences are stable
// across standard-library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // [0, 1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // strictly (0, 1)
    double uniform_open() {
        return (static_cast<double>(eng_() >> 12) + 0.5) * 0x1.0p-52;
    }

    // standard normal, Box-Muller with cached spare
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_open()));
        const double a = 2.0 * M_PI * uniform();
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // unit exponential
    double exponential() { return -std::log(uniform_open()); }

    // Poisson count by Knuth inversion; mean is small in this artifact
    // (lambda*dt), so the loop is short.
    int poisson(double mean) {
        const double limit = std::exp(-mean);
        int k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform_open();
        } while (p > limit);
        return k - 1;
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace levyexit
