#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "ncms/config.hpp"
#include "ncms/keystream.hpp"
#include "ncms/relay.hpp"
#include "ncms/rng.hpp"

namespace ncms {

enum class BandKind { CB, AB, HB, NORMAL };

enum class SlotPhase { K, NK };

// e^(-i 2 pi s / M)
std::complex<double> psk_symbol(int s, int m);

// One transmitter's additive part of a slot: amplitude * e^(i phase) * symbol,
// carried over that transmitter's own fading channel. role 0 is the band
// incumbent, role 1 the pouring partner.
struct Contribution {
    int role;
    double amplitude;
    std::complex<double> symbol;
    double phase;
    bool operator==(const Contribution&) const = default;
};

// A slot's transmit program. At most two users ever share a slot, so the
// contribution list is stored inline.
struct SlotTransmission {
    BandKind band_kind;
    SlotPhase slot_phase;
    int count = 0;
    Contribution parts[2];

    std::span<const Contribution> contributions() const { return {parts, std::size_t(count)}; }
    void add(const Contribution& c) { parts[count++] = c; }
    // on-air energy, sum of amplitude^2 (unit-modulus symbols)
    double energy() const;
};

// Same amplitude/phase program, band labels aside; the covertness premise.
bool same_program(const SlotTransmission& a, const SlotTransmission& b);

SlotTransmission tx_cb_slot_k(int x_k, int z_sym, double alpha, int m);
SlotTransmission tx_cb_slot_nk(int xhat_k, int z_sym, double alpha, int m);
SlotTransmission tx_ab_slot_k(int a_k, double alpha);
SlotTransmission tx_ab_slot_nk(int b_k);
SlotTransmission tx_hb_slot_k(int p_k, int u_sym, double alpha, int m);
SlotTransmission tx_hb_slot_nk(int p_k, int u_sym, double alpha, int m);
SlotTransmission tx_normal_slot(int w_sym, int m, SlotPhase phase);

// Per-band keystream inputs for frame synthesis. HB needs the band's pour
// sequence; AB needs the pour sequence and Alice's local slot-(n+k) OOK.
struct FrameKeys {
    const KeyMaterial* pour = nullptr;      // a (AB) or p (HB)
    const KeyMaterial* ab_local = nullptr;  // Alice's local n+k sequence (AB)
};

// A full 2n-slot observation of one band with ground truth.
// Slot pair k is (slot k, slot n+k); arrays are indexed by k in [0, n).
struct FrameObservation {
    BandKind kind = BandKind::NORMAL;
    int n = 0;
    // received samples
    std::vector<std::complex<double>> bob_k, bob_nk;
    std::vector<std::complex<double>> dave_k, dave_nk;
    std::vector<std::vector<std::complex<double>>> charlie;  // CB only
    // incumbent channels per receiver (genie CSI at Bob, pilot-known at Dave)
    std::vector<std::complex<double>> bob_h_k, bob_h_nk;
    std::vector<std::complex<double>> dave_h_k, dave_h_nk;
    // pour-side channels, ground truth only (zero where nothing poured);
    // no receiver decision rule may read these
    std::vector<std::complex<double>> bob_g_k, dave_g_k;
    // ground truth
    std::vector<std::uint8_t> ook_bits;     // x (CB), a (AB), p (HB)
    std::vector<std::uint8_t> ook_bits_nk;  // AB local n+k bits; empty otherwise
    std::vector<std::uint8_t> relay_bits;   // x_hat (CB); equals ook_bits on HB
    std::vector<int> sym_k, sym_nk;         // incumbent data symbols
};

// Synthesizes one band's frame. relay is required for CB (produced by the
// relay module; carries Alice's bits, Charlie's decisions and observations)
// and must cover n slot pairs. HB requires keys.pour of length n; AB requires
// keys.pour and keys.ab_local.
FrameObservation synthesize_frame(const NetworkConfig& cfg, BandKind kind,
                                  const FrameKeys& keys, Rng& rng,
                                  const RelayFrame* relay = nullptr);

// Debugging dump, one delimited record per slot.
void dump_frame(const FrameObservation& obs, std::ostream& out);

}  // namespace ncms
