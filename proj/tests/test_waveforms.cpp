#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "ncms/keystream.hpp"
#include "ncms/math_util.hpp"
#include "ncms/relay.hpp"
#include "ncms/rng.hpp"
#include "ncms/waveforms.hpp"
#include "test_util.hpp"

using ncms::BandKind;
using ncms::FrameKeys;
using ncms::NetworkConfig;
using ncms::SlotPhase;
using ncms::SlotTransmission;

namespace {
const double kAlpha = 0.9986;
}

TEST_CASE("psk symbols walk the unit circle clockwise") {
    CHECK(ncms::psk_symbol(0, 4) == std::complex<double>(1.0, 0.0));
    CHECK(std::abs(ncms::psk_symbol(1, 4) - std::complex<double>(0.0, -1.0)) < 1e-15);
    CHECK(std::abs(ncms::psk_symbol(2, 4) - std::complex<double>(-1.0, 0.0)) < 1e-15);
    for (int s = 0; s < 8; ++s) CHECK_REL(std::abs(ncms::psk_symbol(s, 8)), 1.0, 1e-14);
}

TEST_CASE("victim slot-k program splits energy across incumbent and pour") {
    SlotTransmission off = ncms::tx_cb_slot_k(0, 2, kAlpha, 4);
    CHECK(off.count == 1);
    CHECK(off.parts[0].role == 0);
    CHECK_REL(off.parts[0].amplitude, std::sqrt(kAlpha), 1e-15);
    CHECK(off.parts[0].phase == 0.0);
    CHECK(off.parts[0].symbol == ncms::psk_symbol(2, 4));
    CHECK_REL(off.energy(), kAlpha, 1e-13);

    SlotTransmission on = ncms::tx_cb_slot_k(1, 1, kAlpha, 4);
    CHECK(on.count == 2);
    CHECK(on.parts[1].role == 1);
    CHECK_REL(on.parts[1].amplitude, std::sqrt(1.0 - kAlpha), 1e-15);
    CHECK_REL(on.energy(), 1.0, 1e-13);  // pour restores unit slot energy
}

TEST_CASE("victim slot-nk program scales and rotates only on a zero decision") {
    SlotTransmission mod = ncms::tx_cb_slot_nk(0, 3, kAlpha, 4);
    CHECK(mod.count == 1);
    CHECK_REL(mod.parts[0].amplitude, std::sqrt(2.0 - kAlpha), 1e-15);
    CHECK_REL(mod.parts[0].phase, ncms::kPi / 4.0, 1e-15);
    CHECK_REL(mod.energy(), 2.0 - kAlpha, 1e-13);

    SlotTransmission plain = ncms::tx_cb_slot_nk(1, 3, kAlpha, 4);
    CHECK(plain.count == 1);
    CHECK(plain.parts[0].amplitude == 1.0);
    CHECK(plain.parts[0].phase == 0.0);
}

TEST_CASE("mimic programs are indistinguishable from the victim band programs") {
    for (int bit = 0; bit < 2; ++bit) {
        for (int sym = 0; sym < 4; ++sym) {
            CHECK(ncms::same_program(ncms::tx_hb_slot_k(bit, sym, kAlpha, 4),
                                     ncms::tx_cb_slot_k(bit, sym, kAlpha, 4)));
            CHECK(ncms::same_program(ncms::tx_hb_slot_nk(bit, sym, kAlpha, 4),
                                     ncms::tx_cb_slot_nk(bit, sym, kAlpha, 4)));
        }
    }
}

TEST_CASE("plain slots do not match the relocation programs") {
    CHECK(!ncms::same_program(ncms::tx_normal_slot(0, 4, SlotPhase::NK),
                              ncms::tx_cb_slot_nk(0, 0, kAlpha, 4)));
    CHECK(!ncms::same_program(ncms::tx_normal_slot(0, 4, SlotPhase::K),
                              ncms::tx_cb_slot_k(1, 0, kAlpha, 4)));
    // unmodified relay slot carries the same program as a plain slot
    CHECK(ncms::same_program(ncms::tx_normal_slot(2, 4, SlotPhase::NK),
                             ncms::tx_cb_slot_nk(1, 2, kAlpha, 4)));
}

TEST_CASE("vacated-band programs are bare on-off keying") {
    SlotTransmission on = ncms::tx_ab_slot_k(1, kAlpha);
    CHECK(on.count == 2);
    CHECK_REL(on.energy(), 1.0, 1e-13);
    SlotTransmission off = ncms::tx_ab_slot_k(0, kAlpha);
    CHECK(off.count == 0);
    CHECK(off.energy() == 0.0);
    CHECK(ncms::tx_ab_slot_nk(1).count == 1);
    CHECK(ncms::tx_ab_slot_nk(0).count == 0);
}

namespace {

NetworkConfig small_cfg() {
    NetworkConfig cfg;
    cfg.n = 16;
    cfg.f = 0;
    cfg = ncms::validate_config(cfg);
    return cfg;
}

}  // namespace

TEST_CASE("frame synthesis enforces its keying preconditions") {
    NetworkConfig cfg = small_cfg();
    ncms::Rng rng(1);
    CHECK_THROWS_AS(ncms::synthesize_frame(cfg, BandKind::CB, FrameKeys{}, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(ncms::synthesize_frame(cfg, BandKind::HB, FrameKeys{}, rng),
                    std::invalid_argument);
    ncms::KeyMaterial short_key = ncms::derive_bits("s", "short", 8);
    FrameKeys keys;
    keys.pour = &short_key;
    CHECK_THROWS_AS(ncms::synthesize_frame(cfg, BandKind::HB, keys, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(ncms::synthesize_frame(cfg, BandKind::AB, keys, rng),
                    std::invalid_argument);
}

TEST_CASE("relayed frame carries truth, decisions and matching sizes") {
    NetworkConfig cfg = small_cfg();
    const ncms::CrossoverProfile prof = ncms::make_crossover_profile(cfg);
    ncms::Rng rng(2);

    std::vector<std::uint8_t> alice(std::size_t(cfg.n));
    for (auto& b : alice) b = std::uint8_t(rng.bit());
    const ncms::RelayFrame relay = ncms::relay_frame(alice, cfg, prof, rng);
    const ncms::FrameObservation obs =
        ncms::synthesize_frame(cfg, BandKind::CB, FrameKeys{}, rng, &relay);

    CHECK(obs.kind == BandKind::CB);
    CHECK(obs.n == cfg.n);
    CHECK(obs.bob_k.size() == std::size_t(cfg.n));
    CHECK(obs.dave_nk.size() == std::size_t(cfg.n));
    CHECK(obs.charlie.size() == std::size_t(cfg.n));
    CHECK(obs.ook_bits == alice);
    CHECK(obs.relay_bits == relay.decisions);
    for (int k = 0; k < cfg.n; ++k) {
        CHECK(obs.sym_k[k] >= 0);
        CHECK(obs.sym_k[k] < cfg.m);
        CHECK(obs.charlie[k] == relay.charlie_obs[k]);
        // pour truth channel is zero exactly when nothing poured
        CHECK((std::abs(obs.bob_g_k[k]) > 0.0) == (alice[k] == 1));
    }
}

TEST_CASE("mimic frame pours exactly on its key bits") {
    NetworkConfig cfg = small_cfg();
    ncms::Rng rng(3);
    const ncms::KeyMaterial pour = ncms::derive_bits("s", "hb/0", std::size_t(cfg.n));
    FrameKeys keys;
    keys.pour = &pour;
    const ncms::FrameObservation obs = ncms::synthesize_frame(cfg, BandKind::HB, keys, rng);
    for (int k = 0; k < cfg.n; ++k) {
        CHECK(obs.ook_bits[k] == pour.bits[std::size_t(k)]);
        CHECK(obs.relay_bits[k] == obs.ook_bits[k]);
        CHECK((std::abs(obs.bob_g_k[k]) > 0.0) == (pour.bits[std::size_t(k)] == 1));
    }
}

TEST_CASE("plain frame needs no keys and never pours") {
    NetworkConfig cfg = small_cfg();
    ncms::Rng rng(4);
    const ncms::FrameObservation obs =
        ncms::synthesize_frame(cfg, BandKind::NORMAL, FrameKeys{}, rng);
    for (int k = 0; k < cfg.n; ++k) {
        CHECK(obs.ook_bits[k] == 0);
        CHECK(obs.bob_g_k[k] == std::complex<double>(0.0, 0.0));
        CHECK(obs.dave_g_k[k] == std::complex<double>(0.0, 0.0));
    }
}

TEST_CASE("frame dump is one line per slot plus a header") {
    NetworkConfig cfg = small_cfg();
    ncms::Rng rng(5);
    const ncms::FrameObservation obs =
        ncms::synthesize_frame(cfg, BandKind::NORMAL, FrameKeys{}, rng);
    std::ostringstream out;
    ncms::dump_frame(obs, out);
    const std::string text = out.str();
    CHECK(!text.empty());
    int lines = 0;
    for (char c : text) lines += c == '\n';
    CHECK(lines >= cfg.n);
}
