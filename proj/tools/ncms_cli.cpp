#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ncms/adversary.hpp"
#include "ncms/config.hpp"
#include "ncms/error_analysis.hpp"
#include "ncms/harness.hpp"
#include "ncms/optimizer.hpp"
#include "ncms/relay.hpp"

namespace {

using nlohmann::json;

struct ConfigFlags {
    std::string config_path;
    std::optional<int> l, lc, nc, m, n;
    std::optional<double> alpha, snr, rho, sigma2_ac, d;
    std::optional<std::uint64_t> seed;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "key=value config file");
        cmd->add_option("-L,--bands", l, "total number of bands L");
        cmd->add_option("--lc", lc, "mimic band count L_C (even)");
        cmd->add_option("--nc", nc, "relay antenna count N_C");
        cmd->add_option("-M,--psk", m, "PSK constellation size");
        cmd->add_option("--alpha", alpha, "incumbent energy share in (0,1)");
        cmd->add_option("--snr", snr, "SNR in dB");
        cmd->add_option("--rho", rho, "residual self-interference fraction");
        cmd->add_option("--sigma2-ac", sigma2_ac, "victim-to-relay link variance");
        cmd->add_option("-n,--pairs", n, "slot pairs per frame");
        cmd->add_option("-d,--sharpness", d, "adversary softmax sharpness");
        cmd->add_option("--seed", seed, "RNG seed");
    }

    ncms::NetworkConfig resolve() const {
        ncms::NetworkConfig cfg;
        if (!config_path.empty()) cfg = ncms::load_config_file(config_path);
        if (l) cfg.l = *l;
        if (lc) cfg.l_c = *lc;
        if (nc) cfg.n_c = *nc;
        if (m) cfg.m = *m;
        if (alpha) cfg.alpha = *alpha;
        if (snr) {
            cfg.snr_db = *snr;
            cfg.noise_power = 0.0;
        }
        if (rho) cfg.rho = *rho;
        if (sigma2_ac) cfg.sigma2_ac = *sigma2_ac;
        if (n) {
            cfg.n = *n;
            cfg.f = 0;
        }
        if (d) cfg.d = *d;
        if (seed) cfg.seed = *seed;
        cfg = ncms::validate_config(cfg);
        return cfg;
    }
};

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + out_path);
    f << j.dump(2) << "\n";
}

json solution_json(const ncms::OptimizationSolution& s) {
    return json{{"alpha", s.alpha_opt},
                {"lc", s.lc_opt},
                {"objective", s.objective},
                {"objective_ci", s.objective_ci},
                {"constraint", s.constraint_value},
                {"grid_resolution", s.grid_resolution},
                {"evaluations", s.evaluations},
                {"budget_exhausted", s.budget_exhausted}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"link-level simulator for covert band relocation behind an energy-splitting relay"};
    app.require_subcommand(1);
    int rc = 0;

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte Carlo network-average decoding error");
    ConfigFlags sim_cfg;
    sim_cfg.attach(sim);
    long long sim_trials = 100000;
    int sim_workers = 0;
    std::string sim_out;
    sim->add_option("--trials", sim_trials, "slot pairs to simulate");
    sim->add_option("--workers", sim_workers, "worker threads (0 = hardware)");
    sim->add_option("--out", sim_out, "write JSON here instead of stdout");
    sim->callback([&] {
        const ncms::NetworkConfig cfg = sim_cfg.resolve();
        const std::uint64_t seed = sim_cfg.seed.value_or(cfg.seed);
        const ncms::ErrorStats st = ncms::simulate_pe(cfg, sim_trials, seed, sim_workers);
        emit(json{{"pe", st.pe},
                  {"pe_ac", st.pe_ac},
                  {"pe_h", st.pe_h},
                  {"pe_nh", st.pe_nh},
                  {"ci_pe", st.ci_pe},
                  {"ci_ac", st.ci_ac},
                  {"ci_h", st.ci_h},
                  {"ci_nh", st.ci_nh},
                  {"trials", st.trials},
                  {"ci_degenerate", st.ci_degenerate},
                  {"seed", seed}},
             sim_out);
    });

    // bound
    auto* bnd = app.add_subcommand("bound", "closed-form error upper bound and its pieces");
    ConfigFlags bnd_cfg;
    bnd_cfg.attach(bnd);
    std::string bnd_out;
    bnd->add_option("--out", bnd_out, "write JSON here instead of stdout");
    bnd->callback([&] {
        const ncms::NetworkConfig cfg = bnd_cfg.resolve();
        const ncms::CrossoverProfile prof = ncms::make_crossover_profile(cfg);
        const ncms::BoundTerms t = ncms::bound_terms(cfg.alpha, cfg.noise_power, cfg.m);
        const ncms::BoundComponents c = ncms::pe_th_components(t, prof);
        emit(json{{"pe_th", ncms::pe_th_total(cfg, prof)},
                  {"cb1", c.cb1},
                  {"cb2", c.cb2},
                  {"hb1", c.hb1},
                  {"hb2", c.hb2},
                  {"pe_nh_th", ncms::pe_nh_th(cfg.noise_power, cfg.m)},
                  {"tau", prof.tau},
                  {"p01", prof.p01},
                  {"p10", prof.p10}},
             bnd_out);
    });

    // attack
    auto* atk = app.add_subcommand("attack", "adversary band scoring and residual entropy");
    ConfigFlags atk_cfg;
    atk_cfg.attach(atk);
    long long atk_frames = 10000;
    int atk_workers = 0;
    std::string atk_out;
    atk->add_option("--frames", atk_frames, "frames to observe");
    atk->add_option("--workers", atk_workers, "worker threads (0 = hardware)");
    atk->add_option("--out", atk_out, "write JSON here instead of stdout");
    atk->callback([&] {
        const ncms::NetworkConfig cfg = atk_cfg.resolve();
        const std::uint64_t seed = atk_cfg.seed.value_or(cfg.seed);
        const ncms::AttackStats st = ncms::simulate_attack(cfg, atk_frames, seed, atk_workers);
        emit(json{{"mean_h_norm", st.mean_h_norm},
                  {"ci_h_norm", st.ci_h_norm},
                  {"ideal",
                   std::log2(static_cast<double>(cfg.l_c + 1)) /
                       std::log2(static_cast<double>(cfg.l - 1))},
                  {"mean_m_cb", st.mean_m_cb},
                  {"se_m_cb", st.se_m_cb},
                  {"mean_m_hb", st.mean_m_hb},
                  {"se_m_hb", st.se_m_hb},
                  {"mean_m_nh", st.mean_m_nh},
                  {"se_m_nh", st.se_m_nh},
                  {"frames", st.frames},
                  {"seed", seed}},
             atk_out);
    });

    // optimize
    auto* opt = app.add_subcommand("optimize", "solve the reliability-vs-covertness problem");
    ConfigFlags opt_cfg;
    opt_cfg.attach(opt);
    int opt_problem = 2;
    double opt_delta = 0.7;
    long long opt_trials = 100000;
    std::string opt_out;
    opt->add_option("--problem", opt_problem, "1 = measured-entropy constraint, 2 = ideal")
        ->check(CLI::IsMember({1, 2}));
    opt->add_option("--delta", opt_delta, "entropy floor in [0,1]")->required();
    opt->add_option("--trials", opt_trials, "slot pairs per simulated evaluation (problem 1)");
    opt->add_option("--out", opt_out, "write JSON here instead of stdout");
    opt->callback([&] {
        const ncms::NetworkConfig cfg = opt_cfg.resolve();
        ncms::OptimizationSolution sol;
        if (opt_problem == 2) {
            sol = ncms::solve_problem2(cfg.l, cfg.n_c, cfg.snr_db, opt_delta, cfg.m);
        } else {
            const std::uint64_t seed = opt_cfg.seed.value_or(cfg.seed);
            sol = ncms::solve_problem1(cfg, opt_delta, opt_trials, seed);
        }
        json j = solution_json(sol);
        j["problem"] = opt_problem;
        j["delta"] = opt_delta;
        emit(j, opt_out);
    });

    // reproduce
    auto* rep = app.add_subcommand("reproduce", "regenerate a published curve or table");
    ConfigFlags rep_cfg;
    rep_cfg.attach(rep);
    std::string rep_id;
    long long rep_trials = 100000, rep_frames = 10000;
    int rep_workers = 0;
    std::string rep_out;
    bool rep_skip_sim = false;
    rep->add_option("experiment", rep_id, "fig3|fig4|fig5|fig6|table1|table2")->required();
    rep->add_option("--trials", rep_trials, "slot pairs per error point");
    rep->add_option("--frames", rep_frames, "frames per entropy point");
    rep->add_option("--workers", rep_workers, "worker threads per point");
    rep->add_option("--out", rep_out, "output directory (default $NCMS_OUT_DIR or .)");
    rep->add_flag("--skip-sim", rep_skip_sim, "table1: skip the simulation-constrained solver");
    rep->callback([&] {
        ncms::ExperimentSpec spec;
        spec.id = rep_id;
        spec.base = rep_cfg.resolve();
        spec.trials = rep_trials;
        spec.frames = rep_frames;
        spec.workers = rep_workers;
        spec.out_dir = rep_out;
        spec.seed = rep_cfg.seed.value_or(spec.base.seed);
        spec.simulated_columns = !rep_skip_sim;
        const ncms::ResultBundle bundle = ncms::run(spec);
        for (const auto& path : ncms::write_bundle(bundle)) std::cout << path << "\n";
        for (const auto& p : bundle.points)
            if (p.failed) std::cerr << "point failed: " << p.key << ": " << p.error << "\n";
        if (bundle.any_failed) rc = 1;
    });

    // compare
    auto* cmp = app.add_subcommand("compare", "regenerate tables and gate against published cells");
    ConfigFlags cmp_cfg;
    cmp_cfg.attach(cmp);
    long long cmp_trials = 100000;
    bool cmp_fast = false;
    std::string cmp_out;
    cmp->add_option("--trials", cmp_trials, "slot pairs per simulated evaluation");
    cmp->add_flag("--fast", cmp_fast, "bound-constrained cells only (skips the slow solver)");
    cmp->add_option("--out", cmp_out, "also persist the regenerated bundles here");
    cmp->callback([&] {
        ncms::ExperimentSpec s1;
        s1.id = "table1";
        s1.base = cmp_cfg.resolve();
        s1.trials = cmp_trials;
        s1.simulated_columns = !cmp_fast;
        s1.seed = cmp_cfg.seed.value_or(s1.base.seed);
        s1.out_dir = cmp_out;
        const ncms::ResultBundle b1 = ncms::run(s1);

        ncms::ExperimentSpec s2 = s1;
        s2.id = "table2";
        const ncms::ResultBundle b2 = ncms::run(s2);

        if (!cmp_out.empty()) {
            ncms::write_bundle(b1);
            ncms::write_bundle(b2);
        }

        std::vector<ncms::ReferenceCell> ref1;
        for (const auto& cell : ncms::table1_reference())
            if (!cmp_fast || cell.key.find("/sim") == std::string::npos) ref1.push_back(cell);

        const ncms::CompareReport r1 = ncms::compare_to_reference(b1, ref1);
        const ncms::CompareReport r2 = ncms::compare_to_reference(b2, ncms::table2_reference());
        for (const auto& line : r1.lines) std::cout << line << "\n";
        for (const auto& line : r2.lines) std::cout << line << "\n";
        std::cout << "checked " << (r1.checked + r2.checked) << ", passed "
                  << (r1.passed + r2.passed) << ", missing " << (r1.missing + r2.missing) << "\n";
        if (!(r1.all_pass && r2.all_pass)) rc = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ncms::ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        for (const auto& msg : e.errors) std::cerr << "  " << msg << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
