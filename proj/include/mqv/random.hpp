#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace mqv {

/// Random stream used by every stochastic operation.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer; a bijective mixer of 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// A position in a tree of independent random streams.
///
/// Children are derived from the parent value and the child index only, never
/// from generator state, so a task's stream does not depend on which other
/// tasks ran before it or on which thread.
class Seed {
public:
    constexpr Seed() = default;
    constexpr explicit Seed(std::uint64_t value) : value_(mix64(value)) {}

    constexpr Seed child(std::uint64_t index) const noexcept {
        Seed s;
        s.value_ = mix64(value_ ^ mix64(index + 0x632be59bd9b4e019ULL));
        return s;
    }

    constexpr Seed child(std::initializer_list<std::uint64_t> path) const noexcept {
        Seed s = *this;
        for (auto i : path) s = s.child(i);
        return s;
    }

    constexpr std::uint64_t value() const noexcept { return value_; }

    Rng rng() const { return Rng(value_); }

private:
    std::uint64_t value_ = mix64(0);
};

}  // namespace mqv
