#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

#include "qric/matrix.hpp"

namespace qric {

// Counter-based deterministic generator. A stream is addressed by
// (seed, label); draws depend only on the stream key and the draw counter,
// so every randomized quantity in a run can be replayed exactly from the
// config seed and the stream's name.
class StreamRng {
  public:
    StreamRng(std::uint64_t seed, std::string_view label) : key_(mix(seed ^ fnv1a(label))) {}

    std::uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9E3779B97F4A7C15ull); }

    // Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; no implementation-defined library
    // distributions so that replays are exact.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // Complex standard normal, E|z|^2 = 1.
    Complex complex_normal() {
        const double re = normal();
        const double im = normal();
        return Complex(re, im) / std::sqrt(2.0);
    }

    ComplexMatrix complex_gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
        ComplexMatrix m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = complex_normal();
        return m;
    }

    ComplexMatrix hermitian_gaussian_matrix(Eigen::Index n) {
        const ComplexMatrix g = complex_gaussian_matrix(n, n);
        return 0.5 * (g + g.adjoint());
    }

    ComplexVector complex_gaussian_vector(Eigen::Index n) {
        ComplexVector v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = complex_normal();
        return v;
    }

  private:
    static constexpr std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 0xCBF29CE484222325ull;
        for (const char c : s) {
            h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
            h *= 0x100000001B3ull;
        }
        return h;
    }

    // SplitMix64 finalizer.
    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace qric
