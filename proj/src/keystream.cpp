#include "ncms/keystream.hpp"

#include <stdexcept>

#include "ncms/rng.hpp"

namespace ncms {

KeyMaterial derive_bits(const std::string& master_secret, const std::string& key_id,
                        std::size_t length) {
    if (length == 0) throw std::invalid_argument("derive_bits: zero length");
    std::uint64_t s = detail::fnv1a64(master_secret.c_str());
    std::uint64_t a = detail::splitmix64(s);
    s ^= detail::fnv1a64(key_id.c_str());
    std::uint64_t b = detail::splitmix64(s);

    KeyMaterial km;
    km.key_id = key_id;
    km.bits.resize(length);
    // counter mode: block i is a keyed mix of the counter, one bit per block
    std::uint64_t key = a ^ (b * 0x9e3779b97f4a7c15ULL);
    for (std::size_t i = 0; i < length; ++i) {
        std::uint64_t ctr = key ^ (std::uint64_t(i) * 0xd1342543de82ef95ULL);
        km.bits[i] = std::uint8_t(detail::splitmix64(ctr) >> 63);
    }
    return km;
}

double key_rate_overhead(int l_c) {
    if (l_c < 0 || l_c % 2 != 0)
        throw std::invalid_argument("key_rate_overhead: L_C must be even and nonnegative");
    return 0.5 * double(l_c);
}

}  // namespace ncms
