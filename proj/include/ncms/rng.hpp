#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace ncms {

namespace detail {

// splitmix64; used only to derive seeds, never as the sampling engine.
inline std::uint64_t splitmix64(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(const char* s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (; *s; ++s) h = (h ^ std::uint64_t(static_cast<unsigned char>(*s))) * 0x100000001b3ULL;
    return h;
}

}  // namespace detail

// Sampling engine with explicit bit-to-double conversion so the draw
// sequence is identical on every platform (std distributions are not
// pinned by the standard; mt19937_64 is).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // [0, 1)
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // (0, 1]
    double uniform_pos() { return double((next_u64() >> 11) + 1) * 0x1.0p-53; }

    int bit() { return int(next_u64() >> 63); }

    // uniform over {0, ..., n-1}; n is a small constellation/index bound
    int index(int n) { return int(uniform() * double(n)); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        double t = 2.0 * 3.14159265358979323846 * uniform();
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    // circularly-symmetric complex Gaussian, E|z|^2 = var
    std::complex<double> cn(double var) {
        double s = std::sqrt(var * 0.5);
        double re = s * normal();
        double im = s * normal();
        return {re, im};
    }

  private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Stream identifiers; fixed values are part of the reproducibility contract.
namespace stream {
inline constexpr std::uint64_t kSimPe = 1;
inline constexpr std::uint64_t kAttack = 2;
inline constexpr std::uint64_t kRelay = 3;
inline constexpr std::uint64_t kOptimizer = 4;
inline constexpr std::uint64_t kHarness = 5;
}  // namespace stream

// Fans one master seed out to independent substreams keyed by
// (domain, index, subindex). Same inputs, same stream, always.
class RngFactory {
  public:
    explicit RngFactory(std::uint64_t master) : master_(master) {}

    Rng stream(std::uint64_t domain, std::uint64_t i0 = 0, std::uint64_t i1 = 0) const {
        std::uint64_t s = master_;
        std::uint64_t a = detail::splitmix64(s);
        s ^= domain;
        std::uint64_t b = detail::splitmix64(s);
        s ^= i0;
        std::uint64_t c = detail::splitmix64(s);
        s ^= i1;
        std::uint64_t d = detail::splitmix64(s);
        return Rng(a ^ (b * 0x9e3779b97f4a7c15ULL) ^ (c << 1) ^ d);
    }

    std::uint64_t master() const { return master_; }

  private:
    std::uint64_t master_;
};

}  // namespace ncms
