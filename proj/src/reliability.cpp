#include "wncs/reliability.hpp"

#include <cmath>

namespace wncs {

namespace {

void require_product(double unstable_product) {
    if (!(unstable_product >= 1.0) || !std::isfinite(unstable_product)) {
        throw std::invalid_argument("unstable product must be finite and >= 1");
    }
}

// Normalised distance term d_j^-eta / d_i^-eta.
double relative_gain(const LoopTopology& topology, std::size_t i, std::size_t j) {
    return std::pow(topology.distances[j], -topology.eta) / std::pow(topology.distances[i], -topology.eta);
}

void require_loop(const LoopTopology& topology, std::size_t i) {
    topology.validate();
    if (i >= topology.loops()) throw std::invalid_argument("loop index out of range");
}

}  // namespace

std::string_view to_string(Method m) {
    switch (m) {
        case Method::closed_form_noise: return "closed_form_noise";
        case Method::closed_form_single_interf: return "closed_form_single_interf";
        case Method::closed_form_full_interf: return "closed_form_full_interf";
        case Method::exact_product_form: return "exact_product_form";
        case Method::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

ReliabilityResult alpha_noise(const ChannelParams& params, double unstable_product) {
    params.validate();
    require_product(unstable_product);
    const double exponent = params.n0 * path_loss(params) * (unstable_product - 1.0) / (params.omega * params.p_t);
    ReliabilityResult r{.method = Method::closed_form_noise};
    if (exponent > kExponentGuard) {
        r.underflow = true;
        return r;
    }
    r.value = std::exp(-exponent);
    return r;
}

double product_from_alpha(const ChannelParams& params, double alpha) {
    params.validate();
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::domain_error("alpha must lie in (0, 1]");
    return -(params.omega * params.p_t / (params.n0 * path_loss(params))) * std::log(alpha) + 1.0;
}

ReliabilityResult beta(const EigenAnalysis& plant_analysis, const ChannelParams& params) {
    return alpha_noise(params, plant_analysis.unstable_product);
}

ReliabilityResult alpha_single_interference(const LoopTopology& topology, std::size_t i, double unstable_product) {
    require_loop(topology, i);
    if (topology.loops() != 2) throw std::invalid_argument("single-interference case requires exactly K = 2 loops");
    require_product(unstable_product);
    const std::size_t j = 1 - i;
    const double ratio = std::pow(topology.distances[j] / topology.distances[i], -topology.eta);
    return {.value = 1.0 / (1.0 + (unstable_product - 1.0) * ratio), .method = Method::closed_form_single_interf};
}

ReliabilityResult alpha_full_interference(const LoopTopology& topology, std::size_t i, double unstable_product) {
    require_loop(topology, i);
    require_product(unstable_product);
    const double own = std::pow(topology.distances[i], -topology.eta);
    double others = 0.0;
    for (std::size_t j = 0; j < topology.loops(); ++j) {
        if (j != i) others += std::pow(topology.distances[j], -topology.eta) * (unstable_product - 1.0);
    }
    return {.value = own / (own + others), .method = Method::closed_form_full_interf};
}

ReliabilityResult alpha_full_interference_exact(const LoopTopology& topology, std::size_t i,
                                                double unstable_product) {
    require_loop(topology, i);
    require_product(unstable_product);
    double value = 1.0;
    for (std::size_t j = 0; j < topology.loops(); ++j) {
        if (j != i) value /= 1.0 + (unstable_product - 1.0) * relative_gain(topology, i, j);
    }
    return {.value = value, .method = Method::exact_product_form};
}

double required_power(const ChannelParams& params, double unstable_product, double target_alpha) {
    ChannelParams probe = params;
    probe.p_t = 1.0;
    probe.validate();
    if (!(target_alpha > 0.0 && target_alpha < 1.0)) throw std::domain_error("target alpha must lie in (0, 1)");
    if (!(unstable_product > 1.0) || !std::isfinite(unstable_product)) {
        throw std::domain_error("unstable product must be > 1 for a finite power requirement");
    }
    return -params.n0 * path_loss(probe) * (unstable_product - 1.0) / (params.omega * std::log(target_alpha));
}

}  // namespace wncs
