#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace csframe {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace detail

// Small counter-style generator (SplitMix64). Chosen over <random> engines so
// that streams are identical across standard library implementations; all
// sampled reports record the seed they were produced from.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return detail::mix64(state_);
    }

    // Uniform in [0, 1) with 53 bits of mantissa.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi) {  // inclusive range
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<int>(next_u64() % span);
    }

    // Standard normal via Box-Muller (spare value cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 6.283185307179586 * uniform();
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    std::complex<double> complex_normal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Derives an independent per-trial seed from a campaign master seed. Trials
// may then run in any order (including concurrently) with identical results.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return detail::mix64(detail::mix64(master + 0x9e3779b97f4a7c15ULL) ^
                         (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
}

}  // namespace csframe
