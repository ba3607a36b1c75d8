#ifndef QCBO_RNG_HPP
#define QCBO_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace qcbo {

/// Deterministic random source. All draws are derived from the engine's
/// raw 64-bit output so that sequences are identical across platforms
/// and standard-library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform double in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + next_double() * (hi - lo); }

    /// Uniform in (lo, hi]: the left-open variant used for edge weights.
    double uniform_left_open(double lo, double hi) { return hi - next_double() * (hi - lo); }

    /// Log-uniform over (lo, hi], lo > 0: the exponent is uniform.
    double log_uniform(double lo, double hi);

    /// Uniform integer in [lo, hi] by rejection-free range reduction.
    int uniform_int(int lo, int hi);

    /// Poisson draw by inversion with sequential search. Chosen over
    /// std::poisson_distribution because the latter's algorithm is
    /// implementation-defined.
    int poisson(double mean);

    /// Fisher-Yates shuffle driven by this engine.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_int(0, static_cast<int>(i) - 1));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 eng_;
};

/// Mixes (seed, stream name, index) into a fresh engine seed. Named
/// substreams keep every pipeline stage independently reproducible.
std::uint64_t substream_seed(std::uint64_t seed, std::string_view stream, std::uint64_t index = 0);

inline Rng substream(std::uint64_t seed, std::string_view stream, std::uint64_t index = 0) {
    return Rng(substream_seed(seed, stream, index));
}

} // namespace qcbo

#endif // QCBO_RNG_HPP
