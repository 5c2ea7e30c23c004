#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncms {

// Scenario parameters shared by every module. Field names mirror the CLI
// flags and the key=value config file format.
struct NetworkConfig {
    int l = 42;               // total user count
    int l_c = 10;             // mimic user count, even
    int n_c = 4;              // Charlie receive antenna count
    int m = 4;                // PSK order, power of two
    double alpha = 0.9986;    // energy-splitting factor, open (0,1)
    double snr_db = 35.0;     // SNR in dB
    double noise_power = 0.0; // N0, derived: 10^(-snr_db/10)
    double rho = 1e-4;        // residual loop-interference parameter
    double sigma2_ac = 4.0;   // Alice->Charlie channel variance
    int n = 100;              // half-frame length in slot pairs
    int f = 200;              // adversary observation window, must equal 2n
    double d = 10.0;          // softmax scaling factor
    std::uint64_t seed = 1;   // master RNG seed

    bool operator==(const NetworkConfig&) const = default;
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg, std::vector<std::string> errs = {})
        : std::runtime_error(msg), errors(std::move(errs)) {}
    std::vector<std::string> errors;
};

double snr_to_noise_power(double snr_db);

// All invariant violations, empty when cfg is valid. Does not mutate cfg.
std::vector<std::string> config_errors(const NetworkConfig& cfg);

// Returns cfg with derived fields filled (noise_power, f when left 0);
// throws ConfigError carrying the full violation list otherwise.
// Idempotent: validating a validated config returns it unchanged.
NetworkConfig validate_config(NetworkConfig cfg);

// key=value text, one pair per line, '#' comments. Unknown keys are errors.
NetworkConfig parse_config_text(const std::string& text, NetworkConfig base = {});
NetworkConfig load_config_file(const std::string& path, NetworkConfig base = {});

// Canonical serialization; identical configs produce identical text.
std::string config_to_text(const NetworkConfig& cfg);

// Content hash of the canonical serialization, hex string.
std::string config_hash(const NetworkConfig& cfg);

}  // namespace ncms
