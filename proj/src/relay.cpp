#include "ncms/relay.hpp"

#include <cmath>
#include <stdexcept>

#include "ncms/math_util.hpp"

namespace ncms {

double charlie_sigma0_sq(const NetworkConfig& cfg) {
    return cfg.noise_power + cfg.alpha * cfg.rho;
}

double charlie_sigma1_sq(const NetworkConfig& cfg) {
    return charlie_sigma0_sq(cfg) + (1.0 - cfg.alpha) * cfg.sigma2_ac;
}

std::vector<std::complex<double>> receive_at_charlie(int x_k, const NetworkConfig& cfg,
                                                     Rng& rng) {
    std::vector<std::complex<double>> y(cfg.n_c);
    double a_amp = std::sqrt(1.0 - cfg.alpha);
    double li_var = cfg.alpha * cfg.rho;
    for (int i = 0; i < cfg.n_c; ++i) {
        std::complex<double> v = rng.cn(li_var) + rng.cn(cfg.noise_power);
        if (x_k) v += a_amp * rng.cn(cfg.sigma2_ac);
        y[i] = v;
    }
    return y;
}

double optimal_threshold(double sigma0_sq, double sigma1_sq, int n_c) {
    if (!(sigma1_sq > sigma0_sq) || !(sigma0_sq > 0.0))
        throw std::invalid_argument("optimal_threshold: non-identifiable variance pair");
    return double(n_c) * sigma0_sq * sigma1_sq * std::log(sigma1_sq / sigma0_sq) /
           (sigma1_sq - sigma0_sq);
}

int detect_energy(std::span<const std::complex<double>> y_c, double tau) {
    double e = 0.0;
    for (auto v : y_c) e += std::norm(v);
    return e > tau ? 1 : 0;
}

std::pair<double, double> crossover_probabilities(double tau, double sigma0_sq,
                                                  double sigma1_sq, int n_c) {
    double p01 = erlang_upper_reg(n_c, tau / sigma0_sq);
    double p10 = erlang_lower_reg(n_c, tau / sigma1_sq);
    return {p01, p10};
}

CrossoverProfile make_crossover_profile(const NetworkConfig& cfg) {
    CrossoverProfile prof;
    prof.sigma0_sq = charlie_sigma0_sq(cfg);
    prof.sigma1_sq = charlie_sigma1_sq(cfg);
    prof.tau = optimal_threshold(prof.sigma0_sq, prof.sigma1_sq, cfg.n_c);
    auto [p01, p10] = crossover_probabilities(prof.tau, prof.sigma0_sq, prof.sigma1_sq, cfg.n_c);
    prof.p01 = p01;
    prof.p10 = p10;
    return prof;
}

RelayFrame relay_frame(std::span<const std::uint8_t> alice_bits, const NetworkConfig& cfg,
                       const CrossoverProfile& prof, Rng& rng) {
    RelayFrame fr;
    fr.alice_bits.assign(alice_bits.begin(), alice_bits.end());
    fr.decisions.resize(alice_bits.size());
    fr.charlie_obs.resize(alice_bits.size());
    for (std::size_t k = 0; k < alice_bits.size(); ++k) {
        fr.charlie_obs[k] = receive_at_charlie(alice_bits[k], cfg, rng);
        fr.decisions[k] = std::uint8_t(detect_energy(fr.charlie_obs[k], prof.tau));
    }
    return fr;
}

}  // namespace ncms
