#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ncms {

struct KeyMaterial {
    std::string key_id;
    std::vector<std::uint8_t> bits;
};

// Deterministic bit sequence keyed by (master_secret, key_id).
// Counter-mode PRG; statistical uniformity only, no cryptographic claim.
// Distinct key_ids give statistically independent streams.
KeyMaterial derive_bits(const std::string& master_secret, const std::string& key_id,
                        std::size_t length);

// Shared-key consumption of the mimicry layer: one 0.5 bit/use stream per
// mimic pair, L_C/2 pairs. L_C must be even and nonnegative.
double key_rate_overhead(int l_c);

}  // namespace ncms
