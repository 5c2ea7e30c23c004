#pragma once

#include <cstdint>

#include "ncms/config.hpp"
#include "ncms/relay.hpp"

namespace ncms {

// Closed-form ingredients of the average-error upper bound. All terms are
// pairwise-error pieces built from a three-term exponential fit of the
// Gaussian Q-function; c* terms cover data-symbol confusions, v* terms cover
// pour/no-pour and modified/unmodified confusions.
struct BoundTerms {
    double c11, c12, c13, c14;
    double v11, v12, v13, v14;
    double c21, c22;
    double v21, v22, v23;
    double n1b;     // slot-k variance with a pour present: N0 + 1 - alpha
    double e_dist;  // distance between modified and unmodified relay symbols
};

// Per-band-category bound components. cb* cover the victim band (slot k and
// slot n+k), hb* cover one helper or mimic band. Slot-(n+k) victim terms are
// weighted by the relay crossover probabilities.
struct BoundComponents {
    double cb1, cb2;
    double hb1, hb2;
};

BoundTerms bound_terms(double alpha, double n0, int m);

BoundComponents pe_th_components(const BoundTerms& t, const CrossoverProfile& prof);

// Closed-form bound on a normal user's per-symbol error (coherent PSK over
// Rayleigh fading).
double pe_nh_th(double n0, int m);

// Network-average error bound:
//   (cb1 + cb2 + L_C (hb1 + hb2) + 2 (L - L_C - 2) pe_nh_th) / L
double pe_th_total(const NetworkConfig& cfg, const CrossoverProfile& prof);
double pe_th_total(const NetworkConfig& cfg);

// Monte Carlo estimate of the network-average decoding error. Rates are per
// decision: pe_ac averages the end-to-end bit and the two victim-band symbol
// decisions, pe_h the two helper-band symbol decisions, pe_nh the two normal
// slots. pe aggregates them with the band-count weights used by the bound.
struct ErrorStats {
    double pe_ac = 0.0, pe_h = 0.0, pe_nh = 0.0, pe = 0.0;
    // 95% binomial half-widths; ci_pe propagates the weighted combination
    double ci_ac = 0.0, ci_h = 0.0, ci_nh = 0.0, ci_pe = 0.0;
    long long trials = 0;  // slot pairs simulated per band category
    // a category saw fewer than 10 error events, so its interval is untrustworthy
    bool ci_degenerate = false;
};

// trials counts slot pairs; rounded up to whole frames of cfg.n pairs. Each
// frame simulates the victim band through the relay plus one helper band and
// one normal band, weighting categories analytically. Results are independent
// of the worker count (workers <= 0 picks the hardware concurrency).
ErrorStats simulate_pe(const NetworkConfig& cfg, long long trials, std::uint64_t seed,
                       int workers = 0);

}  // namespace ncms
