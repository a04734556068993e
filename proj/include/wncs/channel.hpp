#pragma once

#include "wncs/rng.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace wncs {

inline constexpr double kDefaultOmega = 2.0;

// One sensor->controller link. Parameters are plain numerals in a single
// consistent (linear) unit system; d is in meters with the path-loss reference
// at d0 = 1 m, so d must be at least 1.
struct ChannelParams {
    double p_t = 0.0;    // transmit power
    double n0 = 0.0;     // AWGN power
    double l0 = 0.0;     // path loss at d0
    double d = 1.0;      // sensor-controller distance
    double eta = 0.0;    // path-loss exponent
    double omega = kDefaultOmega;  // E[|h|^2]

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// K sensor->controller pairs sharing one band and one path-loss exponent.
struct LoopTopology {
    std::vector<double> distances;
    double eta = 0.0;

    std::size_t loops() const { return distances.size(); }
    void validate() const;
};

struct FadingSample {
    double amplitude = 0.0;   // |h|
    double power_gain = 0.0;  // unit-mean exponential
};

// Signalled instead of returning infinity when every interferer gain is zero.
class undefined_sir_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// L_d = d^eta * L_0.
double path_loss(const ChannelParams& params);

// Inverse transform of a (0, 1] uniform: sqrt(-omega ln u).
double rayleigh_amplitude_from_uniform(double omega, double u);
double sample_rayleigh_amplitude(double omega, Xoshiro256& rng);

// Unit-mean exponential power gain, -ln u.
double sample_exponential_gain(Xoshiro256& rng);

FadingSample sample_fading(double omega, Xoshiro256& rng);

// |h|^2 P_t / (N_0 L_0 d^eta).
double snr(const ChannelParams& params, double amplitude);

// h_i d_i^-eta / sum_{j != i} h_j d_j^-eta, with 0-based loop_index.
double sir(const LoopTopology& topology, std::size_t loop_index, std::span<const double> power_gains);

}  // namespace wncs
