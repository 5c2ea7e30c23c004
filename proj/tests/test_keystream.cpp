#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "ncms/keystream.hpp"
#include "test_util.hpp"

using ncms::derive_bits;
using ncms::KeyMaterial;

TEST_CASE("derived bits are deterministic in (secret, id)") {
    KeyMaterial a = derive_bits("secret", "band/0", 128);
    KeyMaterial b = derive_bits("secret", "band/0", 128);
    CHECK(a.bits == b.bits);
    CHECK(a.key_id == "band/0");
    CHECK(a.bits.size() == 128);
}

TEST_CASE("distinct ids and distinct secrets give distinct streams") {
    KeyMaterial a = derive_bits("secret", "band/0", 256);
    KeyMaterial b = derive_bits("secret", "band/1", 256);
    KeyMaterial c = derive_bits("terces", "band/0", 256);
    CHECK(a.bits != b.bits);
    CHECK(a.bits != c.bits);
}

TEST_CASE("derived bits are bits, roughly balanced") {
    KeyMaterial k = derive_bits("s", "balance", 10000);
    int ones = 0;
    for (auto b : k.bits) {
        CHECK((b == 0 || b == 1));
        ones += b;
    }
    CHECK(std::fabs(ones / 10000.0 - 0.5) <= 4.0 * 0.5 / std::sqrt(10000.0));
}

TEST_CASE("zero-length requests are rejected") {
    CHECK_THROWS_AS(derive_bits("s", "k", 0), std::invalid_argument);
}

TEST_CASE("key consumption is half a bit per use per mimic band") {
    for (int lc = 0; lc <= 40; lc += 2) CHECK(ncms::key_rate_overhead(lc) == lc / 2.0);
    CHECK_THROWS_AS(ncms::key_rate_overhead(3), std::invalid_argument);
    CHECK_THROWS_AS(ncms::key_rate_overhead(-2), std::invalid_argument);
}
