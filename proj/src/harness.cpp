#include "ncms/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "ncms/adversary.hpp"
#include "ncms/error_analysis.hpp"
#include "ncms/optimizer.hpp"

namespace ncms {

namespace {

std::string fmt_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_key(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

using Setter = std::function<void(NetworkConfig&, double)>;

Setter field_setter(const std::string& name) {
    auto as_int = [](double v) { return static_cast<int>(std::llround(v)); };
    if (name == "alpha") return [](NetworkConfig& c, double v) { c.alpha = v; };
    if (name == "snr_db") return [](NetworkConfig& c, double v) { c.snr_db = v; };
    if (name == "rho") return [](NetworkConfig& c, double v) { c.rho = v; };
    if (name == "sigma2_ac") return [](NetworkConfig& c, double v) { c.sigma2_ac = v; };
    if (name == "d") return [](NetworkConfig& c, double v) { c.d = v; };
    if (name == "l") return [as_int](NetworkConfig& c, double v) { c.l = as_int(v); };
    if (name == "l_c") return [as_int](NetworkConfig& c, double v) { c.l_c = as_int(v); };
    if (name == "n_c") return [as_int](NetworkConfig& c, double v) { c.n_c = as_int(v); };
    if (name == "m") return [as_int](NetworkConfig& c, double v) { c.m = as_int(v); };
    if (name == "n") return [as_int](NetworkConfig& c, double v) {
        c.n = as_int(v);
        c.f = 0;  // refilled as 2n by validation
    };
    throw std::invalid_argument("unknown sweep parameter: " + name);
}

constexpr double kSnrGrid[4] = {20.0, 25.0, 30.0, 35.0};
constexpr int kLcGrid[4] = {10, 20, 30, 40};
constexpr int kLGrid[4] = {50, 100, 150, 200};

double ideal_entropy(int l, int l_c) {
    return std::log2(static_cast<double>(l_c + 1)) / std::log2(static_cast<double>(l - 1));
}

// per-(L_C, snr) operating point: the bound-minimizing energy split
double operating_alpha(const NetworkConfig& b, int lc, double snr) {
    return minimize_alpha_bound(b.l, lc, b.n_c, snr, b.m).first;
}

void add_point(ResultBundle& out, std::string key, std::function<std::vector<double>()> fn) {
    PointRecord rec;
    rec.key = std::move(key);
    try {
        rec.values = fn();
    } catch (const std::exception& e) {
        rec.failed = true;
        rec.error = e.what();
        out.any_failed = true;
    }
    out.points.push_back(std::move(rec));
}

void run_fig3(const ExperimentSpec& spec, ResultBundle& out) {
    NetworkConfig b = spec.base;
    b.l = 42;
    b.l_c = 10;
    b.n_c = 4;
    b.snr_db = 35.0;
    b.noise_power = 0.0;
    b = validate_config(b);
    out.columns = {"alpha", "pe", "pe_th", "ci_pe"};
    for (int i = 0; i <= 20; ++i) {
        const double a = 0.99 + i * (0.9999 - 0.99) / 20.0;
        add_point(out, "alpha" + fmt_key(a), [&, a] {
            NetworkConfig c = b;
            c.alpha = a;
            c = validate_config(c);
            const ErrorStats st = simulate_pe(c, spec.trials, spec.seed, spec.workers);
            return std::vector<double>{a, st.pe, pe_th_total(c), st.ci_pe};
        });
    }
}

void run_fig4(const ExperimentSpec& spec, ResultBundle& out) {
    NetworkConfig b = spec.base;
    b.l = 42;
    b.noise_power = 0.0;
    out.columns = {"snr_db", "l_c", "alpha", "pe", "ci_pe"};
    for (double snr : kSnrGrid) {
        for (int lc : kLcGrid) {
            add_point(out, "snr" + fmt_key(snr) + "/lc" + std::to_string(lc), [&, snr, lc] {
                NetworkConfig c = b;
                c.snr_db = snr;
                c.l_c = lc;
                c.noise_power = 0.0;
                c.alpha = operating_alpha(b, lc, snr);
                c = validate_config(c);
                const ErrorStats st = simulate_pe(c, spec.trials, spec.seed, spec.workers);
                return std::vector<double>{snr, static_cast<double>(lc), c.alpha, st.pe, st.ci_pe};
            });
        }
    }
}

void run_fig5(const ExperimentSpec& spec, ResultBundle& out) {
    NetworkConfig b = spec.base;
    b.l = 42;
    b.noise_power = 0.0;
    out.columns = {"snr_db", "l_c", "h_norm", "ideal", "ci_h_norm"};
    for (double snr : kSnrGrid) {
        for (int lc : kLcGrid) {
            add_point(out, "snr" + fmt_key(snr) + "/lc" + std::to_string(lc), [&, snr, lc] {
                NetworkConfig c = b;
                c.snr_db = snr;
                c.l_c = lc;
                c.noise_power = 0.0;
                c.alpha = operating_alpha(b, lc, snr);
                c = validate_config(c);
                const AttackStats st = simulate_attack(c, spec.frames, spec.seed, spec.workers);
                return std::vector<double>{snr, static_cast<double>(lc), st.mean_h_norm,
                                           ideal_entropy(c.l, lc), st.ci_h_norm};
            });
        }
    }
}

void run_fig6(const ExperimentSpec& spec, ResultBundle& out) {
    NetworkConfig b = spec.base;
    b.noise_power = 0.0;
    out.columns = {"l", "snr_db", "l_c", "alpha", "pe", "pe_th", "ci_pe"};
    const double delta = 0.7;
    for (int l : kLGrid) {
        for (double snr : kSnrGrid) {
            add_point(out, "l" + std::to_string(l) + "/snr" + fmt_key(snr), [&, l, snr] {
                const OptimizationSolution sol = solve_problem2(l, b.n_c, snr, delta, b.m);
                NetworkConfig c = b;
                c.l = l;
                c.l_c = sol.lc_opt;
                c.snr_db = snr;
                c.alpha = sol.alpha_opt;
                c.noise_power = 0.0;
                c = validate_config(c);
                const ErrorStats st = simulate_pe(c, spec.trials, spec.seed, spec.workers);
                return std::vector<double>{static_cast<double>(l),
                                           snr,
                                           static_cast<double>(sol.lc_opt),
                                           sol.alpha_opt,
                                           st.pe,
                                           sol.objective,
                                           st.ci_pe};
            });
        }
    }
}

void run_table1(const ExperimentSpec& spec, ResultBundle& out) {
    NetworkConfig b = spec.base;
    b.l = 42;
    b.n_c = 4;
    b.noise_power = 0.0;
    out.columns = {"alpha", "lc", "objective", "constraint", "snr_db", "delta"};
    const double deltas30[4] = {0.658, 0.8117, 0.9062, 0.9746};
    const double deltas35[4] = {0.6351, 0.8043, 0.9066, 0.9801};
    for (int row = 0; row < 2; ++row) {
        const double snr = row == 0 ? 30.0 : 35.0;
        const double* deltas = row == 0 ? deltas30 : deltas35;
        for (int i = 0; i < 4; ++i) {
            const double delta = deltas[i];
            const std::string stem = "snr" + fmt_key(snr) + "/delta" + fmt_key(delta);
            add_point(out, stem + "/bound", [&, snr, delta] {
                const OptimizationSolution s = solve_problem2(42, b.n_c, snr, delta, b.m);
                return std::vector<double>{s.alpha_opt, static_cast<double>(s.lc_opt),
                                           s.objective, s.constraint_value, snr, delta};
            });
            if (spec.simulated_columns) {
                add_point(out, stem + "/sim", [&, snr, delta] {
                    NetworkConfig c = b;
                    c.snr_db = snr;
                    c.noise_power = 0.0;
                    c = validate_config(c);
                    const OptimizationSolution s = solve_problem1(c, delta, spec.trials, spec.seed);
                    if (s.budget_exhausted)
                        throw std::runtime_error("no feasible mimic count within budget");
                    return std::vector<double>{s.alpha_opt, static_cast<double>(s.lc_opt),
                                               s.objective, s.constraint_value, snr, delta};
                });
            }
        }
    }
}

void run_table2(const ExperimentSpec& spec, ResultBundle& out) {
    NetworkConfig b = spec.base;
    b.noise_power = 0.0;
    out.columns = {"alpha", "lc", "objective", "constraint", "l", "snr_db"};
    const double delta = 0.7;
    for (int l : kLGrid) {
        for (double snr : kSnrGrid) {
            add_point(out, "l" + std::to_string(l) + "/snr" + fmt_key(snr), [&, l, snr] {
                const OptimizationSolution s = solve_problem2(l, b.n_c, snr, delta, b.m);
                return std::vector<double>{s.alpha_opt, static_cast<double>(s.lc_opt),
                                           s.objective, s.constraint_value,
                                           static_cast<double>(l), snr};
            });
        }
    }
}

void run_custom(const ExperimentSpec& spec, ResultBundle& out) {
    if (spec.sweep.empty()) throw std::invalid_argument("custom experiment needs sweep axes");
    std::vector<Setter> setters;
    setters.reserve(spec.sweep.size());
    for (const auto& [name, values] : spec.sweep) {
        if (values.empty()) throw std::invalid_argument("empty sweep axis: " + name);
        setters.push_back(field_setter(name));
        out.columns.push_back(name);
    }
    out.columns.insert(out.columns.end(), {"pe", "pe_th", "ci_pe"});

    std::vector<std::size_t> idx(spec.sweep.size(), 0);
    for (;;) {
        NetworkConfig c = spec.base;
        c.noise_power = 0.0;
        std::string key;
        std::vector<double> axis_vals;
        for (std::size_t a = 0; a < idx.size(); ++a) {
            const double v = spec.sweep[a].second[idx[a]];
            setters[a](c, v);
            axis_vals.push_back(v);
            if (!key.empty()) key += "/";
            key += spec.sweep[a].first + fmt_key(v);
        }
        add_point(out, key, [&] {
            c = validate_config(c);
            const ErrorStats st = simulate_pe(c, spec.trials, spec.seed, spec.workers);
            std::vector<double> row = axis_vals;
            row.insert(row.end(), {st.pe, pe_th_total(c), st.ci_pe});
            return row;
        });

        std::size_t a = idx.size();
        while (a > 0) {
            --a;
            if (++idx[a] < spec.sweep[a].second.size()) break;
            idx[a] = 0;
            if (a == 0) return;
        }
    }
}

}  // namespace

ResultBundle run(const ExperimentSpec& spec) {
    if (spec.trials < 1000) throw std::invalid_argument("trial budget must be at least 1000");
    if (spec.frames < 1) throw std::invalid_argument("frame budget must be positive");

    ResultBundle out;
    out.spec = spec;
    NetworkConfig resolved = spec.base;
    resolved = validate_config(resolved);
    out.spec.base = resolved;
    out.config_hash = config_hash(resolved);

    const auto t0 = std::chrono::steady_clock::now();
    if (spec.id == "fig3")
        run_fig3(spec, out);
    else if (spec.id == "fig4")
        run_fig4(spec, out);
    else if (spec.id == "fig5")
        run_fig5(spec, out);
    else if (spec.id == "fig6")
        run_fig6(spec, out);
    else if (spec.id == "table1")
        run_table1(spec, out);
    else if (spec.id == "table2")
        run_table2(spec, out);
    else if (spec.id == "custom")
        run_custom(spec, out);
    else
        throw std::invalid_argument("unknown experiment id: " + spec.id);
    const auto t1 = std::chrono::steady_clock::now();
    out.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    return out;
}

std::vector<std::string> write_bundle(const ResultBundle& bundle) {
    namespace fs = std::filesystem;
    const std::string dir = bundle.spec.out_dir.empty() ? default_out_dir() : bundle.spec.out_dir;
    fs::create_directories(dir);

    const std::string tsv_path = dir + "/" + bundle.spec.id + ".tsv";
    {
        std::ofstream f(tsv_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + tsv_path);
        f << "# experiment=" << bundle.spec.id << "\n";
        f << "# seed=" << bundle.spec.seed << "\n";
        f << "# trials=" << bundle.spec.trials << "\n";
        f << "# frames=" << bundle.spec.frames << "\n";
        f << "# config_hash=" << bundle.config_hash << "\n";
        std::istringstream cfg_text(config_to_text(bundle.spec.base));
        for (std::string line; std::getline(cfg_text, line);) f << "# " << line << "\n";
        f << "key";
        for (const auto& c : bundle.columns) f << "\t" << c;
        f << "\n";
        for (const auto& p : bundle.points) {
            if (p.failed) {
                f << "# FAILED " << p.key << ": " << p.error << "\n";
                continue;
            }
            f << p.key;
            for (double v : p.values) f << "\t" << fmt_full(v);
            f << "\n";
        }
    }

    const std::string json_path = dir + "/" + bundle.spec.id + "_summary.json";
    {
        nlohmann::json j;
        j["experiment"] = bundle.spec.id;
        j["seed"] = bundle.spec.seed;
        j["trials"] = bundle.spec.trials;
        j["frames"] = bundle.spec.frames;
        j["config_hash"] = bundle.config_hash;
        j["config"] = config_to_text(bundle.spec.base);
        j["columns"] = bundle.columns;
        j["wall_seconds"] = bundle.wall_seconds;
        j["any_failed"] = bundle.any_failed;
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& p : bundle.points) {
            nlohmann::json jp;
            jp["key"] = p.key;
            jp["values"] = p.values;
            if (p.failed) jp["error"] = p.error;
            pts.push_back(std::move(jp));
        }
        j["points"] = std::move(pts);
        std::ofstream f(json_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + json_path);
        f << j.dump(2) << "\n";
    }
    return {tsv_path, json_path};
}

CompareReport compare_to_reference(const ResultBundle& bundle,
                                   const std::vector<ReferenceCell>& ref) {
    CompareReport rep;
    int alpha_col = -1, lc_col = -1;
    for (std::size_t i = 0; i < bundle.columns.size(); ++i) {
        if (bundle.columns[i] == "alpha") alpha_col = static_cast<int>(i);
        if (bundle.columns[i] == "lc") lc_col = static_cast<int>(i);
    }

    char buf[256];
    for (const auto& cell : ref) {
        ++rep.checked;
        const PointRecord* found = nullptr;
        for (const auto& p : bundle.points)
            if (p.key == cell.key && !p.failed) {
                found = &p;
                break;
            }
        if (found == nullptr || alpha_col < 0 || lc_col < 0 ||
            found->values.size() <= static_cast<std::size_t>(std::max(alpha_col, lc_col))) {
            ++rep.missing;
            rep.lines.push_back("MISS " + cell.key);
            continue;
        }
        const double a = found->values[static_cast<std::size_t>(alpha_col)];
        const int lc = static_cast<int>(std::llround(found->values[static_cast<std::size_t>(lc_col)]));
        const bool ok = std::fabs(a - cell.alpha) <= cell.tol_alpha &&
                        std::abs(lc - cell.lc) <= cell.tol_lc;
        std::snprintf(buf, sizeof(buf),
                      "%s %s alpha=%.5f ref=%.4f (tol %.4f) lc=%d ref=%d (tol %d)",
                      ok ? "PASS" : "FAIL", cell.key.c_str(), a, cell.alpha, cell.tol_alpha, lc,
                      cell.lc, cell.tol_lc);
        rep.lines.push_back(buf);
        if (ok) ++rep.passed;
    }
    rep.all_pass = rep.checked > 0 && rep.passed == rep.checked && rep.missing == 0;
    return rep;
}

std::string default_out_dir() {
    const char* env = std::getenv("NCMS_OUT_DIR");
    return env != nullptr && env[0] != '\0' ? env : ".";
}

}  // namespace ncms
