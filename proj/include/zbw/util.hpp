#pragma once

#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

namespace zbw {

inline constexpr double pi = std::numbers::pi;

// Worker count for parallel loops: n >= 1 asks for exactly n workers, zero or
// negative asks for one per hardware thread. The answer never affects results,
// only wall time.
inline int resolve_threads(int threads) {
    if (threads >= 1) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// All precondition failures surface as std::domain_error whose message names
// the violated condition; the CLI maps them to exit code 3.
inline void require(bool ok, const std::string& precondition) {
    if (!ok) throw std::domain_error("precondition violated: " + precondition);
}

// splitmix64 finalizer. Used to derive independent sub-stream seeds so that
// sampled results do not depend on how work was partitioned across threads.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed + 0x9E3779B97F4A7C15ull * (stream + 1));
}

// Uniform double in [0,1) from the top 53 bits. We deliberately avoid
// std::uniform_real_distribution, whose output is implementation-defined;
// this mapping is identical on every platform.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace zbw
