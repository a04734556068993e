#pragma once

#include "wncs/channel.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace wncs {

inline constexpr std::uint64_t kDefaultSamples = 1'000'000;
inline constexpr std::uint64_t kDefaultSeed = 42;

// Draws are split across `streams` xoshiro256** substreams (stream s is the
// seeded state jumped s times) and the success counts are summed, so an
// estimate depends only on (samples, seed, streams) and the scenario inputs.
struct McConfig {
    std::uint64_t samples = kDefaultSamples;
    std::uint64_t seed = kDefaultSeed;
    unsigned streams = 1;

    void validate() const;
};

struct McEstimate {
    double p_hat = 0.0;
    double std_error = 0.0;  // sqrt(p_hat (1 - p_hat) / samples)
    std::uint64_t samples = 0;

    static McEstimate from_counts(std::uint64_t successes, std::uint64_t samples);
};

// Empirical Pr(log2(1 + SNR) >= log2 Pi) with Rayleigh amplitudes, counted in
// the equivalent form SNR >= Pi - 1.
McEstimate estimate_beta_noise(const ChannelParams& params, double unstable_product, const McConfig& mc);

// Empirical Pr(SIR_i >= Pi - 1) with independent unit-mean exponential gains.
McEstimate estimate_alpha_interference(const LoopTopology& topology, std::size_t i, double unstable_product,
                                       const McConfig& mc);

// One grid point: either a noise-limited link or an interference topology.
struct McPoint {
    ChannelParams channel;
    LoopTopology topology;
    std::size_t loop = 0;
    double unstable_product = 1.0;
};

using McEstimator = std::function<McEstimate(const McPoint&, const McConfig&)>;

McEstimate noise_estimator(const McPoint& point, const McConfig& mc);
McEstimate interference_estimator(const McPoint& point, const McConfig& mc);

// Evaluates every point with the same McConfig.
// Each point restarts the seeded streams, so results do not depend on grid
// order or evaluation order.
std::vector<McEstimate> sweep(const McEstimator& estimator, const std::vector<McPoint>& grid, const McConfig& mc);

}  // namespace wncs
