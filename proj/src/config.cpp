#include "ncms/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ncms/rng.hpp"

namespace ncms {

double snr_to_noise_power(double snr_db) {
    return std::pow(10.0, -snr_db / 10.0);
}

std::vector<std::string> config_errors(const NetworkConfig& cfg) {
    std::vector<std::string> errs;
    if (cfg.l < 4) errs.push_back("L must be at least 4");
    if (cfg.l_c < 0) errs.push_back("L_C must be nonnegative");
    if (cfg.l_c % 2 != 0) errs.push_back("L_C must be even");
    if (cfg.l_c > cfg.l - 2) errs.push_back("L_C must not exceed L-2");
    if (cfg.n_c < 1) errs.push_back("N_C must be at least 1");
    if (cfg.m < 2 || (cfg.m & (cfg.m - 1)) != 0)
        errs.push_back("M must be a power of two, at least 2");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
        errs.push_back("alpha must lie strictly in (0,1)");
    if (!std::isfinite(cfg.snr_db)) errs.push_back("snr_db must be finite");
    if (!(cfg.rho > 0.0 && cfg.rho < 1.0))
        errs.push_back("rho must lie strictly in (0,1)");
    if (!(cfg.sigma2_ac > 0.0)) errs.push_back("sigma2_ac must be positive");
    if (cfg.n < 1) errs.push_back("n must be at least 1");
    if (cfg.f != 0 && cfg.f != 2 * cfg.n)
        errs.push_back("f must equal 2n");
    if (!(cfg.d > 0.0)) errs.push_back("d must be positive");
    return errs;
}

NetworkConfig validate_config(NetworkConfig cfg) {
    auto errs = config_errors(cfg);
    if (!errs.empty()) {
        std::string msg = "invalid config:";
        for (const auto& e : errs) msg += "\n  " + e;
        throw ConfigError(msg, std::move(errs));
    }
    cfg.noise_power = snr_to_noise_power(cfg.snr_db);
    cfg.f = 2 * cfg.n;
    return cfg;
}

namespace {

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool set_field(NetworkConfig& cfg, const std::string& key, const std::string& val) {
    auto as_int = [&] { return std::stoi(val); };
    auto as_dbl = [&] { return std::stod(val); };
    if (key == "l") cfg.l = as_int();
    else if (key == "l_c") cfg.l_c = as_int();
    else if (key == "n_c") cfg.n_c = as_int();
    else if (key == "m") cfg.m = as_int();
    else if (key == "alpha") cfg.alpha = as_dbl();
    else if (key == "snr_db") cfg.snr_db = as_dbl();
    else if (key == "noise_power") cfg.noise_power = as_dbl();  // derived; validation recomputes it
    else if (key == "rho") cfg.rho = as_dbl();
    else if (key == "sigma2_ac") cfg.sigma2_ac = as_dbl();
    else if (key == "n") cfg.n = as_int();
    else if (key == "f") cfg.f = as_int();
    else if (key == "d") cfg.d = as_dbl();
    else if (key == "seed") cfg.seed = std::stoull(val);
    else return false;
    return true;
}

}  // namespace

NetworkConfig parse_config_text(const std::string& text, NetworkConfig base) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> errs;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            errs.push_back("line " + std::to_string(lineno) + ": expected key=value");
            continue;
        }
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        try {
            if (!set_field(base, key, val))
                errs.push_back("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        } catch (const std::exception&) {
            errs.push_back("line " + std::to_string(lineno) + ": bad value for '" + key + "'");
        }
    }
    if (!errs.empty()) {
        std::string msg = "config parse failed:";
        for (const auto& e : errs) msg += "\n  " + e;
        throw ConfigError(msg, std::move(errs));
    }
    return base;
}

NetworkConfig load_config_file(const std::string& path, NetworkConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), base);
}

std::string config_to_text(const NetworkConfig& cfg) {
    std::ostringstream out;
    out << "l=" << cfg.l << '\n'
        << "l_c=" << cfg.l_c << '\n'
        << "n_c=" << cfg.n_c << '\n'
        << "m=" << cfg.m << '\n'
        << "alpha=" << fmt_double(cfg.alpha) << '\n'
        << "snr_db=" << fmt_double(cfg.snr_db) << '\n'
        << "noise_power=" << fmt_double(cfg.noise_power) << '\n'
        << "rho=" << fmt_double(cfg.rho) << '\n'
        << "sigma2_ac=" << fmt_double(cfg.sigma2_ac) << '\n'
        << "n=" << cfg.n << '\n'
        << "f=" << cfg.f << '\n'
        << "d=" << fmt_double(cfg.d) << '\n'
        << "seed=" << cfg.seed << '\n';
    return out.str();
}

std::string config_hash(const NetworkConfig& cfg) {
    std::string text = config_to_text(cfg);
    std::uint64_t h = detail::fnv1a64(text.c_str());
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace ncms
