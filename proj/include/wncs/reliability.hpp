#pragma once

#include "wncs/channel.hpp"
#include "wncs/plant.hpp"

#include <string_view>

namespace wncs {

enum class Method {
    closed_form_noise,
    closed_form_single_interf,
    closed_form_full_interf,
    exact_product_form,
    monte_carlo,
};

std::string_view to_string(Method m);

// Link reliability alpha, which equals the probability of asymptotic
// stabilizability beta when evaluated at the plant's rate threshold.
struct ReliabilityResult {
    double value = 0.0;
    Method method = Method::closed_form_noise;
    double ci_halfwidth = 0.0;  // non-zero only for Monte Carlo results
    bool underflow = false;     // exponent beyond the guard; value clamped to 0
};

// |exponent| above this clamps alpha to zero rather than returning subnormals.
inline constexpr double kExponentGuard = 700.0;

// Noise-limited Rayleigh link:
//   alpha = exp(-N_0 L_0 d^eta (Pi - 1) / (Omega P_t)).
// With Omega = 2 the denominator is the familiar 2 P_t.
ReliabilityResult alpha_noise(const ChannelParams& params, double unstable_product);

// Inverse of alpha_noise in Pi:
//   Pi = -(Omega P_t / (N_0 L_0 d^eta)) ln alpha + 1.
double product_from_alpha(const ChannelParams& params, double alpha);

// alpha_noise evaluated at the plant's unstable-eigenvalue product.
ReliabilityResult beta(const EigenAnalysis& plant_analysis, const ChannelParams& params);

// Two interfering loops (K = 2), exponential power gains, noise neglected:
//   alpha_i = 1 / (1 + (Pi - 1) (d_j / d_i)^-eta).
ReliabilityResult alpha_single_interference(const LoopTopology& topology, std::size_t i, double unstable_product);

// All K loops interfering, evaluated in the published closed form
//   alpha_i = d_i^-eta / (d_i^-eta + sum_{j != i} d_j^-eta (Pi - 1)).
// For K > 2 this overestimates the true probability; see the exact form below.
ReliabilityResult alpha_full_interference(const LoopTopology& topology, std::size_t i, double unstable_product);

// Exact probability for independent unit-mean exponential gains:
//   prod_{j != i} 1 / (1 + (Pi - 1) d_j^-eta / d_i^-eta).
ReliabilityResult alpha_full_interference_exact(const LoopTopology& topology, std::size_t i,
                                                double unstable_product);

// Transmit power reaching target_alpha at the given unstable product; the
// p_t field of `params` is ignored.
double required_power(const ChannelParams& params, double unstable_product, double target_alpha);

}  // namespace wncs
