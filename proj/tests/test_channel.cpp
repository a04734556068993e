#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "wncs/channel.hpp"

#include <cmath>
#include <random>

using namespace wncs;

namespace {

ChannelParams scenario1(double p_t = 100.0) {
    return {.p_t = p_t, .n0 = 0.01, .l0 = 0.1, .d = 10.0, .eta = 2.5, .omega = 2.0};
}

}  // namespace

TEST_CASE("path_loss") {
    ChannelParams p = scenario1();
    p.d = 1.0;
    for (double eta : {1.0, 2.5, 4.0}) {
        p.eta = eta;
        CHECK(path_loss(p) == doctest::Approx(0.1).epsilon(1e-15));
    }
    p.d = 10.0;
    p.eta = 2.5;
    CHECK(path_loss(p) == doctest::Approx(31.6227766).epsilon(1e-8));
    p.eta = 3.0;
    CHECK(path_loss(p) == doctest::Approx(100.0).epsilon(1e-14));
}

TEST_CASE("path_loss is strictly increasing in d and eta") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> ud(1.01, 100.0), ue(1.0, 5.0);
    for (int k = 0; k < 500; ++k) {
        ChannelParams p = scenario1();
        p.d = ud(gen);
        p.eta = ue(gen);
        const double base = path_loss(p);
        ChannelParams farther = p;
        farther.d *= 1.01;
        ChannelParams steeper = p;
        steeper.eta += 0.01;
        CHECK(path_loss(farther) > base);
        CHECK(path_loss(steeper) > base);
    }
}

TEST_CASE("channel validation") {
    ChannelParams p = scenario1();
    p.d = 0.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = scenario1();
    p.n0 = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = scenario1();
    p.omega = -2.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    CHECK_THROWS_AS((LoopTopology{{10.0}, 2.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((LoopTopology{{10.0, 0.9}, 2.0}.validate()), std::invalid_argument);
}

TEST_CASE("rayleigh inverse transform") {
    CHECK(rayleigh_amplitude_from_uniform(2.0, std::exp(-1.0)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(rayleigh_amplitude_from_uniform(2.0, 1.0) == 0.0);
    CHECK_THROWS_AS(rayleigh_amplitude_from_uniform(2.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(rayleigh_amplitude_from_uniform(0.0, 0.5), std::invalid_argument);
}

TEST_CASE("rayleigh sampler moments and CCDF") {
    constexpr std::uint64_t n = 1'000'000;
    const double omega = 2.0;
    const std::vector<double> probes = {0.5, 1.0, 2.0};
    Xoshiro256 rng(42);
    double sum_sq = 0.0;
    std::vector<std::uint64_t> above(probes.size(), 0);
    for (std::uint64_t t = 0; t < n; ++t) {
        const double a = sample_rayleigh_amplitude(omega, rng);
        sum_sq += a * a;
        for (std::size_t k = 0; k < probes.size(); ++k) above[k] += a >= probes[k];
    }
    CHECK(std::abs(sum_sq / n - omega) <= 0.01);
    for (std::size_t k = 0; k < probes.size(); ++k) {
        const double expect = oracle::rayleigh_tail_by_quadrature(probes[k], omega);
        CHECK(expect == doctest::Approx(std::exp(-probes[k] * probes[k] / omega)).epsilon(1e-9));
        const double p_hat = static_cast<double>(above[k]) / n;
        CHECK(std::abs(p_hat - expect) <= 3.0 * oracle::binomial_sigma(expect, n));
    }
}

TEST_CASE("fading sample carries the matching unit-mean power gain") {
    Xoshiro256 rng(1);
    for (int k = 0; k < 100; ++k) {
        const FadingSample s = sample_fading(2.0, rng);
        CHECK(s.amplitude >= 0.0);
        CHECK(s.power_gain == doctest::Approx(s.amplitude * s.amplitude / 2.0));
    }
}

TEST_CASE("snr") {
    const ChannelParams p = scenario1();
    CHECK(snr(p, 0.0) == 0.0);
    CHECK(snr(p, 1.0) == doctest::Approx(316.227766).epsilon(1e-8));
    CHECK(snr(scenario1(200.0), 1.0) == doctest::Approx(2.0 * snr(p, 1.0)).epsilon(1e-15));
    CHECK_THROWS_AS(snr(p, -1.0), std::invalid_argument);

    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    for (int k = 0; k < 200; ++k) {
        const double a = u(gen);
        const double back = snr(p, a) * p.l0 * std::pow(p.d, p.eta) * p.n0 / p.p_t;
        CHECK(back == doctest::Approx(a * a).epsilon(1e-12));
    }
}

TEST_CASE("sir") {
    const LoopTopology equal{{10.0, 10.0}, 2.5};
    const std::vector<double> ones = {1.0, 1.0};
    CHECK(sir(equal, 0, ones) == doctest::Approx(1.0));

    const LoopTopology near_far{{1.0, 2.0}, 2.0};
    CHECK(sir(near_far, 0, ones) == doctest::Approx(4.0));
    CHECK(sir(near_far, 1, ones) == doctest::Approx(0.25));

    const LoopTopology three{{5.0, 5.0, 5.0}, 3.0};
    const std::vector<double> gains = {2.0, 1.0, 1.0};
    CHECK(sir(three, 0, gains) == doctest::Approx(1.0));

    SUBCASE("scale invariance") {
        std::mt19937_64 gen(8);
        std::uniform_real_distribution<double> u(0.01, 3.0), ud(1.0, 50.0);
        for (int k = 0; k < 200; ++k) {
            LoopTopology t{{ud(gen), ud(gen), ud(gen), ud(gen)}, 2.0 + u(gen)};
            std::vector<double> g = {u(gen), u(gen), u(gen), u(gen)};
            const double c = u(gen) * 10.0;
            std::vector<double> scaled = g;
            for (double& x : scaled) x *= c;
            CHECK(sir(t, 2, scaled) == doctest::Approx(sir(t, 2, g)).epsilon(1e-12));
        }
    }
    SUBCASE("errors") {
        const std::vector<double> silent = {1.0, 0.0, 0.0};
        CHECK_THROWS_AS(sir(three, 0, silent), undefined_sir_error);
        CHECK_THROWS_AS(sir(three, 3, gains), std::invalid_argument);
        CHECK_THROWS_AS(sir(three, 0, ones), std::invalid_argument);
    }
}
