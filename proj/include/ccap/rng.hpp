#pragma once
#include <cstdint>
#include <cmath>
#include <vector>

namespace ccap {

// Deterministic, platform-independent generator. std:: distributions are
// implementation-defined, so all sampling is hand-rolled on top of splitmix64
// to keep seeded results bit-reproducible everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n).
    std::uint64_t uniform_int(std::uint64_t n) { return next_u64() % n; }

    double exponential() {
        double u = uniform();
        return -std::log(1.0 - u);
    }

    // Dirichlet(1,...,1): uniform over the probability simplex.
    std::vector<double> simplex_point(std::size_t dim) {
        std::vector<double> v(dim);
        double total = 0.0;
        for (auto& x : v) {
            x = exponential();
            total += x;
        }
        for (auto& x : v) x /= total;
        return v;
    }

    // Index sampled from a probability vector (assumed to sum to 1).
    std::size_t categorical(const std::vector<double>& probs) {
        double u = uniform();
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
            acc += probs[i];
            if (u < acc) return i;
        }
        return probs.empty() ? 0 : probs.size() - 1;
    }

  private:
    std::uint64_t state_;
};

// Stream derivation: independent generators for (master, index) pairs so
// per-trial / per-start streams never overlap and merging stays order-free.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    Rng mix(master ^ (a * 0xD1B54A32D192ED03ull) ^ (b * 0x8CB92BA72F3D8DD7ull));
    mix.next_u64();
    return mix.next_u64();
}

}  // namespace ccap
