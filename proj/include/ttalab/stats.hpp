#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>

namespace ttalab::stats {

/// Streaming mean/variance accumulator (Welford).
class RunningStats {
public:
    void add(double x) {
        ++n_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }

    std::size_t count() const { return n_; }
    double mean() const { return mean_; }

    /// Unbiased sample variance; 0 for fewer than two samples.
    double variance() const {
        return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
    }

    double stddev() const { return std::sqrt(variance()); }

    /// Standard error of the mean.
    double stderr_mean() const {
        return n_ > 0 ? stddev() / std::sqrt(static_cast<double>(n_)) : 0.0;
    }

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

inline double mean(std::span<const double> xs) {
    RunningStats s;
    for (double x : xs) s.add(x);
    return s.mean();
}

/// Standard error of an empirical proportion p over n Bernoulli trials.
inline double binomial_stderr(double p, std::size_t n) {
    if (n == 0) return 0.0;
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

/// splitmix64 finalizer; used to decorrelate derived seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic per-run / per-point seed: hash of (master, index...).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x51ed270b7a2cce8fULL));
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return derive_seed(derive_seed(master, a), b);
}

} // namespace ttalab::stats
