#include "wncs/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace wncs {

namespace {

// Runs `count(rng, n)` on each substream and sums the success counts. Streams
// run on their own threads; the sum is order-insensitive.
template <typename Counter>
std::uint64_t count_over_streams(const McConfig& mc, Counter count) {
    mc.validate();
    const std::uint64_t streams = mc.streams;
    std::vector<std::uint64_t> counts(streams, 0);
    auto run = [&](std::uint64_t s) {
        const std::uint64_t n = mc.samples / streams + (s < mc.samples % streams ? 1 : 0);
        Xoshiro256 rng = Xoshiro256::substream(mc.seed, s);
        counts[s] = count(rng, n);
    };
    if (streams == 1) {
        run(0);
    } else {
        std::vector<std::jthread> workers;
        workers.reserve(streams);
        for (std::uint64_t s = 0; s < streams; ++s) workers.emplace_back(run, s);
    }
    std::uint64_t total = 0;
    for (std::uint64_t c : counts) total += c;
    return total;
}

}  // namespace

void McConfig::validate() const {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (streams < 1) throw std::invalid_argument("streams must be >= 1");
}

McEstimate McEstimate::from_counts(std::uint64_t successes, std::uint64_t samples) {
    if (samples == 0 || successes > samples) throw std::invalid_argument("invalid Monte Carlo counts");
    McEstimate e;
    e.samples = samples;
    e.p_hat = static_cast<double>(successes) / static_cast<double>(samples);
    e.std_error = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(samples));
    return e;
}

McEstimate estimate_beta_noise(const ChannelParams& params, double unstable_product, const McConfig& mc) {
    params.validate();
    if (!(unstable_product >= 1.0)) throw std::invalid_argument("unstable product must be >= 1");
    const double threshold = unstable_product - 1.0;
    const std::uint64_t hits = count_over_streams(mc, [&](Xoshiro256& rng, std::uint64_t n) {
        std::uint64_t k = 0;
        for (std::uint64_t t = 0; t < n; ++t) {
            if (snr(params, sample_rayleigh_amplitude(params.omega, rng)) >= threshold) ++k;
        }
        return k;
    });
    return McEstimate::from_counts(hits, mc.samples);
}

McEstimate estimate_alpha_interference(const LoopTopology& topology, std::size_t i, double unstable_product,
                                       const McConfig& mc) {
    topology.validate();
    if (i >= topology.loops()) throw std::invalid_argument("loop index out of range");
    if (!(unstable_product >= 1.0)) throw std::invalid_argument("unstable product must be >= 1");
    const double threshold = unstable_product - 1.0;
    const std::size_t k_loops = topology.loops();
    const std::uint64_t hits = count_over_streams(mc, [&](Xoshiro256& rng, std::uint64_t n) {
        std::vector<double> gains(k_loops);
        std::uint64_t k = 0;
        for (std::uint64_t t = 0; t < n; ++t) {
            for (;;) {
                for (double& g : gains) g = sample_exponential_gain(rng);
                try {
                    if (sir(topology, i, gains) >= threshold) ++k;
                    break;
                } catch (const undefined_sir_error&) {
                    // every interferer drew u = 1 exactly; redraw
                }
            }
        }
        return k;
    });
    return McEstimate::from_counts(hits, mc.samples);
}

McEstimate noise_estimator(const McPoint& point, const McConfig& mc) {
    return estimate_beta_noise(point.channel, point.unstable_product, mc);
}

McEstimate interference_estimator(const McPoint& point, const McConfig& mc) {
    return estimate_alpha_interference(point.topology, point.loop, point.unstable_product, mc);
}

std::vector<McEstimate> sweep(const McEstimator& estimator, const std::vector<McPoint>& grid, const McConfig& mc) {
    if (grid.empty()) throw std::invalid_argument("sweep grid must not be empty");
    std::vector<McEstimate> out;
    out.reserve(grid.size());
    for (const McPoint& point : grid) out.push_back(estimator(point, mc));
    return out;
}

}  // namespace wncs
