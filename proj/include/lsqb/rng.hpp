#pragma once

#include <cstdint>
#include <random>

namespace lsqb {

enum class StreamRole : std::uint64_t { design = 1, noise = 2, pilot = 3, aux = 4 };

/// Identifies one independent random stream: (base seed, trial index, role).
struct SeedSpec {
    std::uint64_t base_seed = 0;
    std::uint64_t trial = 0;
    StreamRole role = StreamRole::noise;
};

// SplitMix64 finalizer; used to derive stream seeds from (base, trial, role).
std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive_seed(const SeedSpec& spec);

/// Random stream with platform-independent draws.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the standard.
/// The standard distribution classes are implementation-defined, so the
/// transforms to uniform, normal and sign draws are done here.
class Stream {
public:
    explicit Stream(const SeedSpec& spec) : engine_(derive_seed(spec)) {}
    explicit Stream(std::uint64_t raw_seed) : engine_(raw_seed) {}

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    // Uniform on [-1, 1).
    double uniform_pm1() { return 2.0 * uniform01() - 1.0; }
    // ±1 with equal probability.
    double sign() { return (engine_() >> 63) != 0 ? 1.0 : -1.0; }
    // Standard normal via Box-Muller; the second value of each pair is cached.
    double normal();

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace lsqb
