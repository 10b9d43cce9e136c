#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace dpc {

using Seed = std::uint64_t;

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives an independent seed from a parent seed and a key.
constexpr Seed derive_seed(Seed parent, std::uint64_t key) noexcept
{
    return mix64(mix64(parent) ^ mix64(key + 0x632be59bd9b4e019ULL));
}

/// Small counter-based generator (SplitMix64). Its output sequence is fully
/// specified, so every run is reproducible across platforms and standard
/// libraries, which is not true of the <random> distributions.
class Stream {
public:
    constexpr explicit Stream(Seed seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() noexcept { return to_unit(next()); }

    /// Unbiased uniform integer in [0, n). n must be positive.
    std::uint64_t index(std::uint64_t n) noexcept
    {
        // Lemire's multiply-shift with rejection.
        auto m = static_cast<unsigned __int128>(next()) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next()) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool bernoulli(double p) noexcept { return uniform01() < p; }

    template <class T>
    void shuffle(std::span<T> items) noexcept
    {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(index(i));
            using std::swap;
            swap(items[i - 1], items[j]);
        }
    }

    static constexpr double to_unit(std::uint64_t x) noexcept
    {
        return static_cast<double>(x >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

} // namespace dpc
