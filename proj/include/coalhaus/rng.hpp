#pragma once

#include <cstdint>
#include <cmath>
#include <algorithm>
#include <vector>

namespace coalhaus {

/** splitmix64 mixing step. Used both as a standalone generator for seeding
 *  and as the hash behind replicate stream derivation. */
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/** Stateless 64-bit hash of (master, index) pairs; replicate r of a run with
 *  master seed s draws from a generator seeded with stream_seed(s, r), so
 *  replicate results do not depend on execution order. */
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master + 0x9E3779B97F4A7C15ull * (index + 1);
    (void)splitmix64(s);
    (void)splitmix64(s);
    return splitmix64(s);
}

/** xoshiro256++ (Blackman/Vigna). Chosen over std engines because its output
 *  and our inverse-CDF transforms are fully specified, keeping files
 *  byte-identical across standard library implementations. */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& w : state_) w = splitmix64(s);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /** Uniform on the open interval (0,1); never returns an endpoint, so
     *  log(u) and pow(u, -1/alpha) are always finite. */
    double u01() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

    /** Exponential holding time with the given positive rate. */
    double exponential(double rate) {
        return -std::log(u01()) / rate;
    }

    bool bernoulli(double p) { return u01() < p; }

    /** Uniform integer in [0, n). Lemire multiply-shift; the O(2^-64)
     *  modulo bias is far below anything our chi-square tests can see. */
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t state_[4];
};

/** Uniform m-subset of {1,...,n} by Floyd's algorithm, returned sorted.
 *  Rejection-free; expected cost O(m log m). */
inline std::vector<std::int64_t> sample_subset(std::int64_t n, std::int64_t m, Rng& rng) {
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(m));
    for (std::int64_t j = n - m + 1; j <= n; ++j) {
        std::int64_t t = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(j))) + 1;
        auto it = std::lower_bound(out.begin(), out.end(), t);
        if (it != out.end() && *it == t) {
            it = std::lower_bound(out.begin(), out.end(), j);
            out.insert(it, j);
        } else {
            out.insert(it, t);
        }
    }
    return out;
}

} // namespace coalhaus
