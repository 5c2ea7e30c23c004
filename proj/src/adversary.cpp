#include "ncms/adversary.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ncms/keystream.hpp"
#include "ncms/math_util.hpp"
#include "ncms/relay.hpp"
#include "ncms/rng.hpp"
#include "ncms/waveforms.hpp"

namespace ncms {

namespace {

using cd = std::complex<double>;

constexpr int kMaxM = 64;
constexpr double kZ95 = 1.959963984540054;

// log of (1/m) sum_s CN(y; mean0 * w^s, var) with w the PSK step
double logmix(cd y, cd mean0, double var, int m) {
    const cd step = std::polar(1.0, -2.0 * kPi / m);
    double e[kMaxM];
    double mx = -1.0 / 0.0;
    cd mu = mean0;
    for (int s = 0; s < m; ++s) {
        e[s] = -std::norm(y - mu) / var;
        if (e[s] > mx) mx = e[s];
        mu *= step;
    }
    double acc = 0.0;
    for (int s = 0; s < m; ++s) acc += std::exp(e[s] - mx);
    return mx + std::log(acc) - std::log(static_cast<double>(m)) - std::log(kPi * var);
}

struct Welford {
    long long n = 0;
    double sum = 0.0, sumsq = 0.0;
    void push(double x) {
        ++n;
        sum += x;
        sumsq += x * x;
    }
    double mean() const { return n > 0 ? sum / static_cast<double>(n) : 0.0; }
    double se() const {
        if (n < 2) return 0.0;
        const double m = mean();
        double var = (sumsq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
        if (var < 0.0) var = 0.0;
        return std::sqrt(var / static_cast<double>(n));
    }
};

}  // namespace

CpdfTriplet cpdf_log_triplet(cd y_k, cd y_nk, cd h_k, cd h_nk, double alpha, double n0, int m) {
    if (m < 2 || m > kMaxM) throw std::invalid_argument("cpdf_log_triplet: unsupported constellation size");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("cpdf_log_triplet: alpha must lie in (0,1)");
    if (!(n0 > 0.0)) throw std::invalid_argument("cpdf_log_triplet: n0 must be positive");

    const double var_pour = n0 + 1.0 - alpha;
    const cd mod = std::sqrt(2.0 - alpha) * std::polar(1.0, kPi / m);

    CpdfTriplet t{};
    t.log_d1 = logmix(y_k, std::sqrt(alpha) * h_k, n0, m) + logmix(y_nk, mod * h_nk, n0, m);
    t.log_d2 = logmix(y_k, std::sqrt(alpha) * h_k, var_pour, m) + logmix(y_nk, h_nk, n0, m);
    t.log_d3 = logmix(y_k, h_k, n0, m) + logmix(y_nk, h_nk, n0, m);
    return t;
}

double classify_band(std::span<const cd> y_k, std::span<const cd> y_nk, std::span<const cd> h_k,
                     std::span<const cd> h_nk, const NetworkConfig& cfg) {
    const std::size_t n = static_cast<std::size_t>(cfg.n);
    if (y_k.size() != n || y_nk.size() != n || h_k.size() != n || h_nk.size() != n)
        throw std::invalid_argument("classify_band: frame must cover exactly 2n slots");
    const double n0 = cfg.noise_power > 0.0 ? cfg.noise_power : snr_to_noise_power(cfg.snr_db);

    long long hits = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const CpdfTriplet t =
            cpdf_log_triplet(y_k[k], y_nk[k], h_k[k], h_nk[k], cfg.alpha, n0, cfg.m);
        const double helper = t.log_d1 > t.log_d2 ? t.log_d1 : t.log_d2;
        hits += (helper > t.log_d3);
    }
    return static_cast<double>(hits) / static_cast<double>(n);
}

EntropyReport score_and_entropy(std::span<const double> m, double d, int l, int l_c) {
    if (l < 4) throw std::invalid_argument("score_and_entropy: L must be at least 4");
    if (l_c < 0 || l_c > l - 2) throw std::invalid_argument("score_and_entropy: L_C out of range");
    if (m.size() != static_cast<std::size_t>(l - 1))
        throw std::invalid_argument("score_and_entropy: need one match fraction per candidate band");

    EntropyReport rep;
    rep.scores.resize(m.size());

    double mx = -1.0 / 0.0;
    for (double v : m) mx = v > mx ? v : mx;
    double z = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        rep.scores[i].band = static_cast<int>(i);
        rep.scores[i].m = m[i];
        rep.scores[i].p = std::exp(d * (m[i] - mx));
        z += rep.scores[i].p;
    }
    double h = 0.0;
    for (auto& s : rep.scores) {
        s.p /= z;
        if (s.p > 0.0) h -= s.p * std::log2(s.p);
    }
    rep.h_bits = h;
    rep.h_norm = h / std::log2(static_cast<double>(l - 1));
    rep.ideal = std::log2(static_cast<double>(l_c + 1)) / std::log2(static_cast<double>(l - 1));
    return rep;
}

AttackStats simulate_attack(const NetworkConfig& cfg_in, long long frames, std::uint64_t seed,
                            int workers) {
    NetworkConfig cfg = cfg_in;
    cfg = validate_config(cfg);
    if (frames <= 0) throw std::invalid_argument("simulate_attack: frames must be positive");

    const int n = cfg.n;
    const int nh_bands = cfg.l - cfg.l_c - 2;
    const CrossoverProfile prof = make_crossover_profile(cfg);
    const std::string master = "attack:" + std::to_string(seed);

    struct FrameOut {
        double h = 0.0, cb = 0.0, hb = 0.0, nh = 0.0;
    };

    auto run_frame = [&](std::uint64_t frame_idx, FrameOut& out) {
        Rng rng = RngFactory(seed).stream(stream::kAttack, frame_idx);
        std::vector<double> m;
        m.reserve(static_cast<std::size_t>(cfg.l - 1));

        std::vector<std::uint8_t> alice(static_cast<std::size_t>(n));
        for (auto& b : alice) b = static_cast<std::uint8_t>(rng.bit());
        const RelayFrame relay = relay_frame(alice, cfg, prof, rng);
        const FrameObservation cb = synthesize_frame(cfg, BandKind::CB, FrameKeys{}, rng, &relay);
        const double m_cb = classify_band(cb.dave_k, cb.dave_nk, cb.dave_h_k, cb.dave_h_nk, cfg);
        m.push_back(m_cb);

        double hb_sum = 0.0;
        for (int b = 0; b < cfg.l_c; ++b) {
            const KeyMaterial pour = derive_bits(
                master, "hb/" + std::to_string(frame_idx) + "/" + std::to_string(b),
                static_cast<std::size_t>(n));
            FrameKeys keys;
            keys.pour = &pour;
            const FrameObservation hb = synthesize_frame(cfg, BandKind::HB, keys, rng);
            const double v = classify_band(hb.dave_k, hb.dave_nk, hb.dave_h_k, hb.dave_h_nk, cfg);
            hb_sum += v;
            m.push_back(v);
        }

        double nh_sum = 0.0;
        for (int b = 0; b < nh_bands; ++b) {
            const FrameObservation nh = synthesize_frame(cfg, BandKind::NORMAL, FrameKeys{}, rng);
            const double v = classify_band(nh.dave_k, nh.dave_nk, nh.dave_h_k, nh.dave_h_nk, cfg);
            nh_sum += v;
            m.push_back(v);
        }

        const EntropyReport rep = score_and_entropy(m, cfg.d, cfg.l, cfg.l_c);
        out.h = rep.h_norm;
        out.cb = m_cb;
        if (cfg.l_c > 0) out.hb = hb_sum / cfg.l_c;
        if (nh_bands > 0) out.nh = nh_sum / nh_bands;
    };

    int w = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
    if (w < 1) w = 1;
    if (static_cast<long long>(w) > frames) w = static_cast<int>(frames);

    // Per-frame outputs land in fixed slots and are reduced in frame order,
    // so the statistics are bitwise identical for every worker count.
    std::vector<FrameOut> results(static_cast<std::size_t>(frames));
    if (w == 1) {
        for (long long f = 0; f < frames; ++f)
            run_frame(static_cast<std::uint64_t>(f), results[static_cast<std::size_t>(f)]);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(w));
        for (int t = 0; t < w; ++t) {
            threads.emplace_back([&, t] {
                for (long long f = t; f < frames; f += w)
                    run_frame(static_cast<std::uint64_t>(f), results[static_cast<std::size_t>(f)]);
            });
        }
        for (auto& th : threads) th.join();
    }

    struct Acc {
        Welford h, cb, hb, nh;
    } total;
    for (long long f = 0; f < frames; ++f) {
        const FrameOut& r = results[static_cast<std::size_t>(f)];
        total.h.push(r.h);
        total.cb.push(r.cb);
        if (cfg.l_c > 0) total.hb.push(r.hb);
        if (nh_bands > 0) total.nh.push(r.nh);
    }

    AttackStats out;
    out.frames = frames;
    out.mean_h_norm = total.h.mean();
    out.ci_h_norm = kZ95 * total.h.se();
    out.mean_m_cb = total.cb.mean();
    out.se_m_cb = total.cb.se();
    out.mean_m_hb = total.hb.mean();
    out.se_m_hb = total.hb.se();
    out.mean_m_nh = total.nh.mean();
    out.se_m_nh = total.nh.se();
    return out;
}

}  // namespace ncms
