#include "qcbo/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace qcbo {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

std::uint64_t substream_seed(std::uint64_t seed, std::string_view stream, std::uint64_t index) {
    std::uint64_t s = splitmix64(seed);
    s = splitmix64(s ^ fnv1a(stream));
    s = splitmix64(s ^ index);
    return s;
}

double Rng::log_uniform(double lo, double hi) {
    if (!(lo > 0.0) || !(hi > lo)) {
        throw std::invalid_argument("log_uniform requires 0 < lo < hi");
    }
    double e = uniform_left_open(std::log10(lo), std::log10(hi));
    return std::pow(10.0, e);
}

int Rng::uniform_int(int lo, int hi) {
    if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
    auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    // 128-bit multiply maps the 64-bit draw onto [0, span) without bias
    // that would matter at these range sizes.
    unsigned __int128 wide = static_cast<unsigned __int128>(next_u64()) * span;
    return lo + static_cast<int>(wide >> 64);
}

int Rng::poisson(double mean) {
    if (!(mean > 0.0)) throw std::invalid_argument("poisson: mean must be positive");
    // Inversion by sequential search; fine for the small means used here.
    double p = std::exp(-mean);
    double cumulative = p;
    double u = next_double();
    int k = 0;
    while (u > cumulative) {
        ++k;
        p *= mean / k;
        cumulative += p;
        if (k > 10000) break; // numerically unreachable for small means
    }
    return k;
}

} // namespace qcbo
