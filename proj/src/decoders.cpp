#include "ncms/decoders.hpp"

#include <cmath>
#include <stdexcept>

#include "ncms/math_util.hpp"
#include "ncms/waveforms.hpp"

namespace ncms {

namespace {

// rotation step between adjacent PSK hypotheses, e^(-i 2 pi / M)
inline cd psk_step(int m) { return std::polar(1.0, -2.0 * kPi / double(m)); }

}  // namespace

int decode_cb_slot_k(cd y, cd h, double alpha, int m, double n0) {
    const double v0 = n0;
    const double v1 = n0 + (1.0 - alpha);
    const double lv0 = std::log(kPi * v0);
    const double lv1 = std::log(kPi * v1);
    const cd step = psk_step(m);
    cd mean = std::sqrt(alpha) * h;  // s = 0
    int best = 0;
    double best_score = -INFINITY;
    for (int s = 0; s < m; ++s) {
        double d2 = std::norm(y - mean);
        double sc = std::max(-d2 / v0 - lv0, -d2 / v1 - lv1);
        if (sc > best_score) {
            best_score = sc;
            best = s;
        }
        mean *= step;
    }
    return best;
}

CbSlotNkDecision decode_cb_slot_nk(cd y, cd h, double alpha, int m, double n0,
                                   const CrossoverProfile& prof) {
    // bit priors of the embedded decision under equiprobable source bits
    const double pr0 = 0.5 * (prof.p00() + prof.p10);
    const double pr1 = 0.5 * (prof.p01 + prof.p11());
    const double lpr0 = pr0 > 0.0 ? std::log(pr0) : -INFINITY;
    const double lpr1 = pr1 > 0.0 ? std::log(pr1) : -INFINITY;
    const cd step = psk_step(m);
    const cd mod = std::sqrt(2.0 - alpha) * std::polar(1.0, kPi / double(m));
    cd mean1 = h;        // bit 1: unmodified
    cd mean0 = mod * h;  // bit 0: scaled and rotated
    int best_s = 0, best_bit = 0;
    double best_score = -INFINITY;
    for (int s = 0; s < m; ++s) {
        double sc0 = lpr0 - std::norm(y - mean0) / n0;
        double sc1 = lpr1 - std::norm(y - mean1) / n0;
        if (sc0 > best_score) { best_score = sc0; best_s = s; best_bit = 0; }
        if (sc1 > best_score) { best_score = sc1; best_s = s; best_bit = 1; }
        mean0 *= step;
        mean1 *= step;
    }
    return {best_bit, best_s};
}

bool end_to_end_bit(int x_true, int /*x_hat_charlie*/, int r_bob) {
    return r_bob != x_true;
}

CbDecision decode_jmap_reference(cd y_k, cd y_nk, cd h_k, cd h_nk, double alpha, int m,
                                 double n0, const CrossoverProfile& prof) {
    if (m > 64) throw std::invalid_argument("decode_jmap_reference: M > 64 unsupported");
    const double v0 = n0;
    const double v1 = n0 + (1.0 - alpha);
    const double lv0 = std::log(kPi * v0);
    const double lv1 = std::log(kPi * v1);
    const cd step = psk_step(m);
    const cd mod = std::sqrt(2.0 - alpha) * std::polar(1.0, kPi / double(m));

    // slot-(n+k) log densities under each transmit case, per symbol
    double lnk0[64], lnk1[64];
    cd mean0 = mod * h_nk, mean1 = h_nk;
    for (int s = 0; s < m; ++s) {
        lnk0[s] = -std::norm(y_nk - mean0) / n0 - std::log(kPi * n0);
        lnk1[s] = -std::norm(y_nk - mean1) / n0 - std::log(kPi * n0);
        mean0 *= step;
        mean1 *= step;
    }

    auto logmix = [](double w0, double l0, double w1, double l1) {
        // log(w0 e^l0 + w1 e^l1) with zero-weight terms dropped
        if (w0 <= 0.0) return std::log(w1) + l1;
        if (w1 <= 0.0) return std::log(w0) + l0;
        double a = std::log(w0) + l0, b = std::log(w1) + l1;
        double mx = a > b ? a : b;
        return mx + std::log(std::exp(a - mx) + std::exp(b - mx));
    };

    CbDecision best{0, 0, 0};
    double best_score = -INFINITY;
    cd mean_k = std::sqrt(alpha) * h_k;
    for (int sk = 0; sk < m; ++sk) {
        double d2 = std::norm(y_k - mean_k);
        double lk[2] = {-d2 / v0 - lv0, -d2 / v1 - lv1};
        for (int snk = 0; snk < m; ++snk) {
            for (int r = 0; r < 2; ++r) {
                // P(x_hat | x = r) weights the slot-(n+k) mixture
                double w0 = r == 0 ? prof.p00() : prof.p10;
                double w1 = r == 0 ? prof.p01 : prof.p11();
                double sc = lk[r] + logmix(w0, lnk0[snk], w1, lnk1[snk]);
                if (sc > best_score) {
                    best_score = sc;
                    best = {r, sk, snk};
                }
            }
        }
        mean_k *= step;
    }
    return best;
}

int decode_hb_slot_k(cd y, int /*p_k*/, cd h, double alpha, int m, double /*n0*/) {
    const cd step = psk_step(m);
    cd mean = std::sqrt(alpha) * h;
    int best = 0;
    double best_d2 = INFINITY;
    for (int s = 0; s < m; ++s) {
        double d2 = std::norm(y - mean);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = s;
        }
        mean *= step;
    }
    return best;
}

int decode_hb_slot_nk(cd y, int p_k, cd h, double alpha, int m, double /*n0*/) {
    const cd step = psk_step(m);
    cd mean = p_k ? h : std::sqrt(2.0 - alpha) * std::polar(1.0, kPi / double(m)) * h;
    int best = 0;
    double best_d2 = INFINITY;
    for (int s = 0; s < m; ++s) {
        double d2 = std::norm(y - mean);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = s;
        }
        mean *= step;
    }
    return best;
}

int decode_coherent_psk(cd y, cd h, int m, double /*n0*/) {
    const cd step = psk_step(m);
    cd mean = h;
    int best = 0;
    double best_d2 = INFINITY;
    for (int s = 0; s < m; ++s) {
        double d2 = std::norm(y - mean);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = s;
        }
        mean *= step;
    }
    return best;
}

}  // namespace ncms
