#pragma once

#include <complex>

#include "ncms/relay.hpp"

namespace ncms {

using cd = std::complex<double>;

// Eq.-(8)-style joint decision for one slot pair of the relayed band.
struct CbDecision {
    int r_hat;      // embedded-bit estimate
    int z_hat_k;    // symbol index, slot k
    int z_hat_nk;   // symbol index, slot n+k
};

// Hypothesis counts are the complexity contract of the decision rules.
constexpr int disjoint_hypothesis_count(int m) { return 2 * m; }
constexpr int jmap_hypothesis_count(int m) { return 2 * m * m; }
constexpr int mimic_hypothesis_count(int m) { return m; }

// Slot-k symbol decision on the relayed band: joint maximization over
// (x, s) of per-hypothesis Gaussian densities, no mixture. The Alice
// hypothesis only widens the variance, N0 vs N0+(1-alpha).
int decode_cb_slot_k(cd y, cd h, double alpha, int m, double n0);

// Slot-(n+k) joint decision (embedded bit, symbol). Bit hypotheses carry
// priors induced by equiprobable source bits through the crossover channel.
struct CbSlotNkDecision {
    int bit;
    int sym;
};
CbSlotNkDecision decode_cb_slot_nk(cd y, cd h, double alpha, int m, double n0,
                                   const CrossoverProfile& prof);

// Alice's end-to-end bit error event. The relay decision x_hat is part of
// the event chain (Bob detects x_hat, x_hat estimates x) but the error is
// r_bob vs the source bit; two wrongs cancel.
bool end_to_end_bit(int x_true, int x_hat_charlie, int r_bob);

// Exhaustive joint MAP over 2M^2 hypotheses with the exact slot-(n+k)
// crossover-weighted Gaussian mixture. Reference oracle; r_hat estimates
// Alice's bit directly.
CbDecision decode_jmap_reference(cd y_k, cd y_nk, cd h_k, cd h_nk, double alpha, int m,
                                 double n0, const CrossoverProfile& prof);

// Mimic-band slot-k decision. The poured term only adds a common variance
// when p=1, so the argmax does not depend on p; the parameter stays for the
// contract (Bob knows the pour key).
int decode_hb_slot_k(cd y, int p_k, cd h, double alpha, int m, double n0);

// Mimic-band slot-(n+k) coherent decision under the known key bit.
int decode_hb_slot_nk(cd y, int p_k, cd h, double alpha, int m, double n0);

// Plain coherent minimum-distance M-PSK.
int decode_coherent_psk(cd y, cd h, int m, double n0);

}  // namespace ncms
