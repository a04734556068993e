#include "wncs/channel.hpp"

#include <cmath>
#include <string>

namespace wncs {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be finite and > 0");
}

}  // namespace

void ChannelParams::validate() const {
    require_positive(p_t, "p_t");
    require_positive(n0, "n0");
    require_positive(l0, "l0");
    require_positive(eta, "eta");
    require_positive(omega, "omega");
    if (!(d >= 1.0) || !std::isfinite(d)) throw std::invalid_argument("d must be finite and >= 1 (reference distance)");
}

void LoopTopology::validate() const {
    require_positive(eta, "eta");
    if (distances.size() < 2) throw std::invalid_argument("topology needs at least 2 loops");
    for (double d : distances) {
        if (!(d >= 1.0) || !std::isfinite(d)) throw std::invalid_argument("every loop distance must be finite and >= 1");
    }
}

double path_loss(const ChannelParams& params) {
    params.validate();
    return std::pow(params.d, params.eta) * params.l0;
}

double rayleigh_amplitude_from_uniform(double omega, double u) {
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be > 0");
    if (!(u > 0.0 && u <= 1.0)) throw std::invalid_argument("uniform variate must lie in (0, 1]");
    return std::sqrt(-omega * std::log(u));
}

double sample_rayleigh_amplitude(double omega, Xoshiro256& rng) {
    return rayleigh_amplitude_from_uniform(omega, rng.uniform_open_closed());
}

double sample_exponential_gain(Xoshiro256& rng) { return -std::log(rng.uniform_open_closed()); }

FadingSample sample_fading(double omega, Xoshiro256& rng) {
    const double a = sample_rayleigh_amplitude(omega, rng);
    return {a, a * a / omega};
}

double snr(const ChannelParams& params, double amplitude) {
    if (!(amplitude >= 0.0)) throw std::invalid_argument("amplitude must be >= 0");
    return amplitude * amplitude * params.p_t / (params.n0 * path_loss(params));
}

double sir(const LoopTopology& topology, std::size_t loop_index, std::span<const double> power_gains) {
    topology.validate();
    const std::size_t k = topology.loops();
    if (power_gains.size() != k) throw std::invalid_argument("need one power gain per loop");
    if (loop_index >= k) throw std::invalid_argument("loop index out of range");

    double interference = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        if (power_gains[j] < 0.0) throw std::invalid_argument("power gains must be >= 0");
        if (j != loop_index) interference += power_gains[j] * std::pow(topology.distances[j], -topology.eta);
    }
    if (!(interference > 0.0)) throw undefined_sir_error("undefined SIR: all interferer gains are zero");
    return power_gains[loop_index] * std::pow(topology.distances[loop_index], -topology.eta) / interference;
}

}  // namespace wncs
