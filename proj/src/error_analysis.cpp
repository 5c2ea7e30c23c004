#include "ncms/error_analysis.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ncms/decoders.hpp"
#include "ncms/keystream.hpp"
#include "ncms/math_util.hpp"
#include "ncms/rng.hpp"
#include "ncms/waveforms.hpp"

namespace ncms {

namespace {

// three-term exponential fit of Q(x): Q(x) ~ sum_i k_i exp(-t_i x^2)
constexpr double kFitK[3] = {0.168, 0.144, 0.002};
constexpr double kFitT[3] = {0.876, 0.525, 0.603};

// sum_i k_i / (t_i x + 1): Rayleigh average of the fitted Q-function
double fit_tail(double x) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) acc += kFitK[i] / (kFitT[i] * x + 1.0);
    return acc;
}

constexpr double kZ95 = 1.959963984540054;

double halfwidth(double p, long long den) {
    if (den <= 0) return 0.0;
    double var = p * (1.0 - p);
    if (var < 0.0) var = 0.0;
    return kZ95 * std::sqrt(var / static_cast<double>(den));
}

struct ErrorCounts {
    long long bit = 0, zk = 0, znk = 0;  // victim band
    long long uk = 0, unk = 0;           // helper band
    long long sk = 0, snk = 0;           // normal band
    void add(const ErrorCounts& o) {
        bit += o.bit;
        zk += o.zk;
        znk += o.znk;
        uk += o.uk;
        unk += o.unk;
        sk += o.sk;
        snk += o.snk;
    }
};

}  // namespace

BoundTerms bound_terms(double alpha, double n0, int m) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("bound_terms: alpha must lie in (0,1)");
    if (!(n0 > 0.0)) throw std::invalid_argument("bound_terms: n0 must be positive");
    if (m < 2) throw std::invalid_argument("bound_terms: m must be at least 2");

    BoundTerms t{};
    t.n1b = n0 + 1.0 - alpha;
    t.e_dist = std::sqrt(3.0 - alpha - 2.0 * std::sqrt(2.0 - alpha) * std::cos(kPi / m));

    t.c11 = fit_tail(alpha / n0);
    t.c12 = fit_tail(2.0 * alpha / n0);
    t.c13 = fit_tail(alpha / t.n1b);
    t.c14 = fit_tail(2.0 * alpha / t.n1b);

    const double one_ma = 1.0 - alpha;
    t.v13 = 1.0 / (t.n1b * std::sqrt(alpha) / (one_ma * one_ma) + 1.0);
    t.v14 = 1.0 / (t.n1b * std::sqrt(2.0 * alpha) / (one_ma * one_ma) + 1.0);
    const double ratio_pow = std::pow(n0 / t.n1b, t.n1b / one_ma);
    t.v11 = ratio_pow * t.v13;
    t.v12 = ratio_pow * t.v14;

    t.c21 = fit_tail(1.0 / (2.0 * n0));
    t.c22 = fit_tail((2.0 - alpha) / n0);
    t.v21 = fit_tail(t.e_dist / (2.0 * n0));
    t.v22 = fit_tail(2.0 * (2.0 - alpha) / n0);
    t.v23 = fit_tail(2.0 / n0);
    return t;
}

BoundComponents pe_th_components(const BoundTerms& t, const CrossoverProfile& prof) {
    BoundComponents c{};
    c.cb1 = (2.0 * (t.c11 + t.c13 + t.v11 + t.v13) + t.c12 + t.v12 + t.c14 + t.v14) / 2.0;
    c.hb1 = (2.0 * (t.c11 + t.c13) + t.c12 + t.c14) / 2.0;
    c.cb2 = 0.5 * (2.0 * prof.p11() * (t.v21 + t.c21) + 2.0 * prof.p00() * (t.v21 + t.c22) +
                   (prof.p01 + prof.p10) * (1.0 - t.v21));
    c.hb2 = (2.0 * (t.c21 + t.c22) + t.v22 + t.v23) / 2.0;
    return c;
}

double pe_nh_th(double n0, int m) {
    if (!(n0 > 0.0)) throw std::invalid_argument("pe_nh_th: n0 must be positive");
    if (m < 2) throw std::invalid_argument("pe_nh_th: m must be at least 2");
    const double s = std::sin(kPi / m);
    return 2.0 * fit_tail(2.0 * s * s / n0);
}

double pe_th_total(const NetworkConfig& cfg, const CrossoverProfile& prof) {
    const double n0 = cfg.noise_power > 0.0 ? cfg.noise_power : snr_to_noise_power(cfg.snr_db);
    const BoundTerms t = bound_terms(cfg.alpha, n0, cfg.m);
    const BoundComponents c = pe_th_components(t, prof);
    const double nh = pe_nh_th(n0, cfg.m);
    const int normal_bands = cfg.l - cfg.l_c - 2;
    return (c.cb1 + c.cb2 + cfg.l_c * (c.hb1 + c.hb2) + 2.0 * normal_bands * nh) / cfg.l;
}

double pe_th_total(const NetworkConfig& cfg) {
    NetworkConfig v = cfg;
    v = validate_config(v);
    return pe_th_total(v, make_crossover_profile(v));
}

ErrorStats simulate_pe(const NetworkConfig& cfg_in, long long trials, std::uint64_t seed,
                       int workers) {
    NetworkConfig cfg = cfg_in;
    cfg = validate_config(cfg);
    if (trials <= 0) throw std::invalid_argument("simulate_pe: trials must be positive");

    const int n = cfg.n;
    const long long frames = (trials + n - 1) / n;
    const long long pairs = frames * n;
    const double n0 = cfg.noise_power;
    const CrossoverProfile prof = make_crossover_profile(cfg);
    const int normal_bands = cfg.l - cfg.l_c - 2;
    const bool want_hb = cfg.l_c > 0;
    const bool want_nh = normal_bands > 0;
    const std::string master = "pe:" + std::to_string(seed);

    auto run_frame = [&](std::uint64_t frame_idx, ErrorCounts& c) {
        Rng rng = RngFactory(seed).stream(stream::kSimPe, frame_idx);

        std::vector<std::uint8_t> alice(static_cast<std::size_t>(n));
        for (auto& b : alice) b = static_cast<std::uint8_t>(rng.bit());
        const RelayFrame relay = relay_frame(alice, cfg, prof, rng);
        const FrameObservation cb = synthesize_frame(cfg, BandKind::CB, FrameKeys{}, rng, &relay);
        for (int k = 0; k < n; ++k) {
            const int s_hat = decode_cb_slot_k(cb.bob_k[k], cb.bob_h_k[k], cfg.alpha, cfg.m, n0);
            c.zk += (s_hat != cb.sym_k[k]);
            const CbSlotNkDecision d =
                decode_cb_slot_nk(cb.bob_nk[k], cb.bob_h_nk[k], cfg.alpha, cfg.m, n0, prof);
            c.znk += (d.sym != cb.sym_nk[k]);
            c.bit += end_to_end_bit(cb.ook_bits[k], cb.relay_bits[k], d.bit);
        }

        if (want_hb) {
            const KeyMaterial pour =
                derive_bits(master, "hb/" + std::to_string(frame_idx), static_cast<std::size_t>(n));
            FrameKeys keys;
            keys.pour = &pour;
            const FrameObservation hb = synthesize_frame(cfg, BandKind::HB, keys, rng);
            for (int k = 0; k < n; ++k) {
                const int p_k = hb.ook_bits[k];
                c.uk += (decode_hb_slot_k(hb.bob_k[k], p_k, hb.bob_h_k[k], cfg.alpha, cfg.m, n0) !=
                         hb.sym_k[k]);
                c.unk += (decode_hb_slot_nk(hb.bob_nk[k], p_k, hb.bob_h_nk[k], cfg.alpha, cfg.m,
                                            n0) != hb.sym_nk[k]);
            }
        }

        if (want_nh) {
            const FrameObservation nh = synthesize_frame(cfg, BandKind::NORMAL, FrameKeys{}, rng);
            for (int k = 0; k < n; ++k) {
                c.sk += (decode_coherent_psk(nh.bob_k[k], nh.bob_h_k[k], cfg.m, n0) != nh.sym_k[k]);
                c.snk +=
                    (decode_coherent_psk(nh.bob_nk[k], nh.bob_h_nk[k], cfg.m, n0) != nh.sym_nk[k]);
            }
        }
    };

    int w = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
    if (w < 1) w = 1;
    if (static_cast<long long>(w) > frames) w = static_cast<int>(frames);

    ErrorCounts total;
    if (w == 1) {
        for (long long f = 0; f < frames; ++f) run_frame(static_cast<std::uint64_t>(f), total);
    } else {
        std::vector<ErrorCounts> parts(static_cast<std::size_t>(w));
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(w));
        for (int t = 0; t < w; ++t) {
            threads.emplace_back([&, t] {
                for (long long f = t; f < frames; f += w)
                    run_frame(static_cast<std::uint64_t>(f), parts[static_cast<std::size_t>(t)]);
            });
        }
        for (auto& th : threads) th.join();
        for (const auto& p : parts) total.add(p);
    }

    ErrorStats out;
    out.trials = pairs;
    const long long ac_den = 3 * pairs;
    const long long h_den = want_hb ? 2 * pairs : 0;
    const long long nh_den = want_nh ? 2 * pairs : 0;
    const long long ac_err = total.bit + total.zk + total.znk;
    const long long h_err = total.uk + total.unk;
    const long long nh_err = total.sk + total.snk;

    out.pe_ac = static_cast<double>(ac_err) / static_cast<double>(ac_den);
    out.pe_h = h_den > 0 ? static_cast<double>(h_err) / static_cast<double>(h_den) : 0.0;
    out.pe_nh = nh_den > 0 ? static_cast<double>(nh_err) / static_cast<double>(nh_den) : 0.0;
    out.pe = (out.pe_ac + cfg.l_c * out.pe_h + normal_bands * out.pe_nh) / cfg.l;

    out.ci_ac = halfwidth(out.pe_ac, ac_den);
    out.ci_h = halfwidth(out.pe_h, h_den);
    out.ci_nh = halfwidth(out.pe_nh, nh_den);
    out.ci_pe = std::sqrt(out.ci_ac * out.ci_ac + cfg.l_c * cfg.l_c * out.ci_h * out.ci_h +
                          static_cast<double>(normal_bands) * normal_bands * out.ci_nh * out.ci_nh) /
                cfg.l;

    out.ci_degenerate = (ac_err < 10) || (want_hb && h_err < 10) || (want_nh && nh_err < 10);
    return out;
}

}  // namespace ncms
