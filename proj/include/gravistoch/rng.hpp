#pragma once
#include <array>
#include <cstdint>

namespace gravistoch::rng {

// Philox 4x32-10 counter-based block cipher. Every random number is addressed
// by an explicit (counter, key) pair, so streams are reproducible bit-exactly
// under any parallel schedule.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

std::uint64_t splitmix64(std::uint64_t x);

// Draw-purpose tag; keeps initialization, step noise, and phase draws in
// disjoint counter subspaces.
enum class Domain : std::uint32_t {
    init = 0,
    noise = 1,
    phase = 2,
};

// One logical stream per (seed, ensemble member).
class CounterStream {
  public:
    CounterStream(std::uint64_t seed, std::uint64_t member);

    // Two independent uniforms in [0, 1), addressed by (domain, step, slot).
    std::array<double, 2> uniform2(Domain d, std::uint64_t step, std::uint32_t slot) const;

    // Two independent standard normals from the same address (Box-Muller).
    std::array<double, 2> normal2(Domain d, std::uint64_t step, std::uint32_t slot) const;

  private:
    std::array<std::uint32_t, 2> key_;
};

}  // namespace gravistoch::rng
