#include "ncms/waveforms.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "ncms/math_util.hpp"

namespace ncms {

std::complex<double> psk_symbol(int s, int m) {
    return std::polar(1.0, -2.0 * kPi * double(s) / double(m));
}

double SlotTransmission::energy() const {
    double e = 0.0;
    for (int i = 0; i < count; ++i) e += parts[i].amplitude * parts[i].amplitude;
    return e;
}

bool same_program(const SlotTransmission& a, const SlotTransmission& b) {
    if (a.count != b.count) return false;
    for (int i = 0; i < a.count; ++i)
        if (!(a.parts[i] == b.parts[i])) return false;
    return true;
}

SlotTransmission tx_cb_slot_k(int x_k, int z_sym, double alpha, int m) {
    SlotTransmission t{BandKind::CB, SlotPhase::K};
    t.add({0, std::sqrt(alpha), psk_symbol(z_sym, m), 0.0});
    if (x_k) t.add({1, std::sqrt(1.0 - alpha), {1.0, 0.0}, 0.0});
    return t;
}

SlotTransmission tx_cb_slot_nk(int xhat_k, int z_sym, double alpha, int m) {
    SlotTransmission t{BandKind::CB, SlotPhase::NK};
    if (xhat_k)
        t.add({0, 1.0, psk_symbol(z_sym, m), 0.0});
    else
        t.add({0, std::sqrt(2.0 - alpha), psk_symbol(z_sym, m), kPi / double(m)});
    return t;
}

SlotTransmission tx_ab_slot_k(int a_k, double alpha) {
    SlotTransmission t{BandKind::AB, SlotPhase::K};
    if (a_k) {
        t.add({0, std::sqrt(alpha), {1.0, 0.0}, 0.0});
        t.add({1, std::sqrt(1.0 - alpha), {1.0, 0.0}, 0.0});
    }
    return t;
}

SlotTransmission tx_ab_slot_nk(int b_k) {
    SlotTransmission t{BandKind::AB, SlotPhase::NK};
    if (b_k) t.add({0, 1.0, {1.0, 0.0}, 0.0});
    return t;
}

// Mimic bands reproduce the f_CB programs bit for bit; delegation keeps the
// structural-equality invariant true by construction.
SlotTransmission tx_hb_slot_k(int p_k, int u_sym, double alpha, int m) {
    SlotTransmission t = tx_cb_slot_k(p_k, u_sym, alpha, m);
    t.band_kind = BandKind::HB;
    return t;
}

SlotTransmission tx_hb_slot_nk(int p_k, int u_sym, double alpha, int m) {
    SlotTransmission t = tx_cb_slot_nk(p_k, u_sym, alpha, m);
    t.band_kind = BandKind::HB;
    return t;
}

SlotTransmission tx_normal_slot(int w_sym, int m, SlotPhase phase) {
    SlotTransmission t{BandKind::NORMAL, phase};
    t.add({0, 1.0, psk_symbol(w_sym, m), 0.0});
    return t;
}

namespace {

std::complex<double> on_air(const Contribution& c) {
    return c.amplitude * std::polar(1.0, c.phase) * c.symbol;
}

// Receives one slot at one receiver: each contribution rides its own unit-
// variance Rayleigh channel. Returns the sample plus the channels used.
struct SlotRx {
    std::complex<double> y;
    std::complex<double> h_inc;   // role-0 channel (drawn even when silent)
    std::complex<double> h_pour;  // role-1 channel, zero if no pour
};

SlotRx receive_slot(const SlotTransmission& t, double noise_power, Rng& rng) {
    SlotRx r;
    r.h_inc = rng.cn(1.0);
    r.h_pour = {0.0, 0.0};
    std::complex<double> y = rng.cn(noise_power);
    for (const auto& c : t.contributions()) {
        if (c.role == 0) {
            y += on_air(c) * r.h_inc;
        } else {
            r.h_pour = rng.cn(1.0);
            y += on_air(c) * r.h_pour;
        }
    }
    r.y = y;
    return r;
}

}  // namespace

FrameObservation synthesize_frame(const NetworkConfig& cfg, BandKind kind,
                                  const FrameKeys& keys, Rng& rng,
                                  const RelayFrame* relay) {
    const int n = cfg.n;
    if (kind == BandKind::CB) {
        if (!relay || int(relay->alice_bits.size()) != n || int(relay->decisions.size()) != n)
            throw std::invalid_argument("synthesize_frame: CB band requires relay decisions for n slot pairs");
    }
    if (kind == BandKind::HB && (!keys.pour || int(keys.pour->bits.size()) < n))
        throw std::invalid_argument("synthesize_frame: HB band requires pour key of length n");
    if (kind == BandKind::AB &&
        (!keys.pour || int(keys.pour->bits.size()) < n || !keys.ab_local ||
         int(keys.ab_local->bits.size()) < n))
        throw std::invalid_argument("synthesize_frame: AB band requires pour and local keys");

    FrameObservation obs;
    obs.kind = kind;
    obs.n = n;
    obs.bob_k.resize(n); obs.bob_nk.resize(n);
    obs.dave_k.resize(n); obs.dave_nk.resize(n);
    obs.bob_h_k.resize(n); obs.bob_h_nk.resize(n);
    obs.dave_h_k.resize(n); obs.dave_h_nk.resize(n);
    obs.bob_g_k.resize(n); obs.dave_g_k.resize(n);
    obs.ook_bits.resize(n);
    obs.relay_bits.resize(n);
    obs.sym_k.resize(n); obs.sym_nk.resize(n);
    if (kind == BandKind::CB) obs.charlie.resize(n);
    if (kind == BandKind::AB) obs.ook_bits_nk.resize(n);

    for (int k = 0; k < n; ++k) {
        SlotTransmission tk, tnk;
        switch (kind) {
            case BandKind::CB: {
                int x = relay->alice_bits[k];
                int xh = relay->decisions[k];
                int zk = rng.index(cfg.m);
                int znk = rng.index(cfg.m);
                obs.ook_bits[k] = std::uint8_t(x);
                obs.relay_bits[k] = std::uint8_t(xh);
                obs.sym_k[k] = zk;
                obs.sym_nk[k] = znk;
                obs.charlie[k] = relay->charlie_obs[k];
                tk = tx_cb_slot_k(x, zk, cfg.alpha, cfg.m);
                tnk = tx_cb_slot_nk(xh, znk, cfg.alpha, cfg.m);
                break;
            }
            case BandKind::HB: {
                int p = keys.pour->bits[k];
                int uk = rng.index(cfg.m);
                int unk = rng.index(cfg.m);
                obs.ook_bits[k] = std::uint8_t(p);
                obs.relay_bits[k] = std::uint8_t(p);
                obs.sym_k[k] = uk;
                obs.sym_nk[k] = unk;
                tk = tx_hb_slot_k(p, uk, cfg.alpha, cfg.m);
                tnk = tx_hb_slot_nk(p, unk, cfg.alpha, cfg.m);
                break;
            }
            case BandKind::AB: {
                int a = keys.pour->bits[k];
                int b = keys.ab_local->bits[k];
                obs.ook_bits[k] = std::uint8_t(a);
                obs.ook_bits_nk[k] = std::uint8_t(b);
                obs.relay_bits[k] = std::uint8_t(a);
                obs.sym_k[k] = 0;
                obs.sym_nk[k] = 0;
                tk = tx_ab_slot_k(a, cfg.alpha);
                tnk = tx_ab_slot_nk(b);
                break;
            }
            case BandKind::NORMAL: {
                int wk = rng.index(cfg.m);
                int wnk = rng.index(cfg.m);
                obs.ook_bits[k] = 0;
                obs.relay_bits[k] = 0;
                obs.sym_k[k] = wk;
                obs.sym_nk[k] = wnk;
                tk = tx_normal_slot(wk, cfg.m, SlotPhase::K);
                tnk = tx_normal_slot(wnk, cfg.m, SlotPhase::NK);
                break;
            }
        }
        SlotRx bk = receive_slot(tk, cfg.noise_power, rng);
        SlotRx bnk = receive_slot(tnk, cfg.noise_power, rng);
        SlotRx dk = receive_slot(tk, cfg.noise_power, rng);
        SlotRx dnk = receive_slot(tnk, cfg.noise_power, rng);
        obs.bob_k[k] = bk.y;   obs.bob_h_k[k] = bk.h_inc;  obs.bob_g_k[k] = bk.h_pour;
        obs.bob_nk[k] = bnk.y; obs.bob_h_nk[k] = bnk.h_inc;
        obs.dave_k[k] = dk.y;  obs.dave_h_k[k] = dk.h_inc; obs.dave_g_k[k] = dk.h_pour;
        obs.dave_nk[k] = dnk.y; obs.dave_h_nk[k] = dnk.h_inc;
    }
    return obs;
}

void dump_frame(const FrameObservation& obs, std::ostream& out) {
    static const char* names[] = {"CB", "AB", "HB", "NORMAL"};
    out << "# band\tslot\tphase\took_bit\trelay_bit\tsym\tbob_re\tbob_im\tdave_re\tdave_im\n";
    for (int k = 0; k < obs.n; ++k) {
        out << names[int(obs.kind)] << '\t' << k << "\tk\t" << int(obs.ook_bits[k]) << '\t'
            << int(obs.relay_bits[k]) << '\t' << obs.sym_k[k] << '\t' << obs.bob_k[k].real()
            << '\t' << obs.bob_k[k].imag() << '\t' << obs.dave_k[k].real() << '\t'
            << obs.dave_k[k].imag() << '\n';
    }
    for (int k = 0; k < obs.n; ++k) {
        int nk_bit = obs.kind == BandKind::AB ? int(obs.ook_bits_nk[k]) : int(obs.relay_bits[k]);
        out << names[int(obs.kind)] << '\t' << k << "\tnk\t" << nk_bit << '\t'
            << int(obs.relay_bits[k]) << '\t' << obs.sym_nk[k] << '\t' << obs.bob_nk[k].real()
            << '\t' << obs.bob_nk[k].imag() << '\t' << obs.dave_nk[k].real() << '\t'
            << obs.dave_nk[k].imag() << '\n';
    }
}

}  // namespace ncms
