#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "ncms/config.hpp"

namespace ncms {

// Log-likelihoods of one slot pair under the adversary's three composite
// hypotheses for a candidate band: helper-style activity with the pour off
// (modified second slot), helper-style activity with the pour on (raised
// slot-k variance, unmodified second slot), and plain incumbent traffic.
// The data symbol is marginalized over the PSK constellation; the incumbent
// channel is known to the adversary from pilots, the pour channel is not.
struct CpdfTriplet {
    double log_d1;  // pour off, modified second slot
    double log_d2;  // pour on, unmodified second slot
    double log_d3;  // plain incumbent in both slots
};

CpdfTriplet cpdf_log_triplet(std::complex<double> y_k, std::complex<double> y_nk,
                             std::complex<double> h_k, std::complex<double> h_nk, double alpha,
                             double n0, int m);

// Fraction of the n slot pairs whose best helper-style hypothesis strictly
// beats the plain-traffic hypothesis. Spans must all have length cfg.n (the
// band's 2n slots split into k and n+k halves).
double classify_band(std::span<const std::complex<double>> y_k,
                     std::span<const std::complex<double>> y_nk,
                     std::span<const std::complex<double>> h_k,
                     std::span<const std::complex<double>> h_nk, const NetworkConfig& cfg);

struct BandScore {
    int band = 0;    // index within the adversary's candidate list
    double m = 0.0;  // match fraction in [0, 1]
    double p = 0.0;  // softmax posterior weight
};

struct EntropyReport {
    std::vector<BandScore> scores;
    double h_bits = 0.0;   // Shannon entropy of the posterior, bits
    double h_norm = 0.0;   // h_bits / log2(L - 1)
    double ideal = 0.0;    // log2(L_C + 1) / log2(L - 1)
};

// Softmax over d * m_l across the L - 1 candidate bands, then entropy.
// m must have exactly L - 1 entries.
EntropyReport score_and_entropy(std::span<const double> m, double d, int l, int l_c);

// Per-category sample means of the match fraction and the mean normalized
// entropy across frames. se_* are standard errors of the means; ci_h_norm is
// a 95% half-width.
struct AttackStats {
    long long frames = 0;
    double mean_h_norm = 0.0, ci_h_norm = 0.0;
    double mean_m_cb = 0.0, se_m_cb = 0.0;
    double mean_m_hb = 0.0, se_m_hb = 0.0;
    double mean_m_nh = 0.0, se_m_nh = 0.0;
};

// Synthesizes the adversary's view of all L - 1 candidate bands per frame
// (the victim band through the relay, L_C mimic bands, the rest plain) and
// scores them. No keystream material flows into any scoring input. Results
// are independent of the worker count.
AttackStats simulate_attack(const NetworkConfig& cfg, long long frames, std::uint64_t seed,
                            int workers = 0);

}  // namespace ncms
