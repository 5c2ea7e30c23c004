#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ncms/config.hpp"
#include "ncms/rng.hpp"

namespace ncms {

// Charlie's energy detector operating point, preshared with Bob.
struct CrossoverProfile {
    double tau = 0.0;        // total-energy threshold
    double sigma0_sq = 0.0;  // per-antenna received variance, x=0
    double sigma1_sq = 0.0;  // per-antenna received variance, x=1
    double p01 = 0.0;        // P(decide 1 | x=0)
    double p10 = 0.0;        // P(decide 0 | x=1)
    double p00() const { return 1.0 - p01; }
    double p11() const { return 1.0 - p10; }
};

double charlie_sigma0_sq(const NetworkConfig& cfg);
double charlie_sigma1_sq(const NetworkConfig& cfg);

// Charlie's full-duplex reception of Alice's slot-k bit:
// sqrt(1-alpha) h_AC x + h_CC + n per antenna, h_CC ~ CN(0, alpha*rho).
std::vector<std::complex<double>> receive_at_charlie(int x_k, const NetworkConfig& cfg,
                                                     Rng& rng);

// Likelihood-ratio crossing point of the two Erlang-N_C total-energy
// densities under equal priors; minimizes (P01+P10)/2.
double optimal_threshold(double sigma0_sq, double sigma1_sq, int n_c);

// x_hat = 1 iff total energy strictly exceeds tau.
int detect_energy(std::span<const std::complex<double>> y_c, double tau);

// Erlang-N_C tail probabilities of the detector at threshold tau.
// p01 = Q(N_C, tau/sigma0_sq), p10 = P(N_C, tau/sigma1_sq).
std::pair<double, double> crossover_probabilities(double tau, double sigma0_sq,
                                                  double sigma1_sq, int n_c);

// Operating point for a validated config (threshold set optimally).
CrossoverProfile make_crossover_profile(const NetworkConfig& cfg);

// One half-frame of relaying: Charlie receives and detects every slot-k bit.
// Bundles the ground-truth bits with the decisions so downstream frame
// synthesis stays consistent with what Charlie actually saw.
struct RelayFrame {
    std::vector<std::uint8_t> alice_bits;
    std::vector<std::uint8_t> decisions;
    std::vector<std::vector<std::complex<double>>> charlie_obs;
};

RelayFrame relay_frame(std::span<const std::uint8_t> alice_bits, const NetworkConfig& cfg,
                       const CrossoverProfile& prof, Rng& rng);

}  // namespace ncms
