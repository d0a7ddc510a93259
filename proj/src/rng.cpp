#include "gravistoch/rng.hpp"

#include <cmath>
#include <numbers>

namespace gravistoch::rng {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::array<std::uint32_t, 4>& c, const std::array<std::uint32_t, 2>& k) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
    c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0],
         static_cast<std::uint32_t>(p1),
         static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1],
         static_cast<std::uint32_t>(p0)};
}

// 53-bit uniform in [0, 1) from two 32-bit words.
inline double to_unit_double(std::uint32_t a, std::uint32_t b) {
    const std::uint64_t mantissa = (static_cast<std::uint64_t>(a >> 5) << 26) | (b >> 6);
    return static_cast<double>(mantissa) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
    for (int r = 0; r < 10; ++r) {
        round_once(ctr, key);
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

CounterStream::CounterStream(std::uint64_t seed, std::uint64_t member) {
    const std::uint64_t k = splitmix64(splitmix64(seed) ^ (member + 0x9E3779B97F4A7C15ull));
    key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
}

std::array<double, 2> CounterStream::uniform2(Domain d, std::uint64_t step,
                                              std::uint32_t slot) const {
    const std::array<std::uint32_t, 4> ctr{static_cast<std::uint32_t>(step),
                                           static_cast<std::uint32_t>(step >> 32), slot,
                                           static_cast<std::uint32_t>(d)};
    const auto w = philox4x32(ctr, key_);
    return {to_unit_double(w[0], w[1]), to_unit_double(w[2], w[3])};
}

std::array<double, 2> CounterStream::normal2(Domain d, std::uint64_t step,
                                             std::uint32_t slot) const {
    const auto u = uniform2(d, step, slot);
    // 1 - u[0] lies in (0, 1], so the log is finite.
    const double r = std::sqrt(-2.0 * std::log(1.0 - u[0]));
    const double theta = 2.0 * std::numbers::pi * u[1];
    return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace gravistoch::rng
