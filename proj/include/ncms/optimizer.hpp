#pragma once

#include <cstdint>
#include <utility>

#include "ncms/config.hpp"

namespace ncms {

// Joint (alpha, L_C) solution of either optimization problem. objective is
// the minimized error quantity (simulated pe for the measured-entropy
// problem, the closed-form bound for the ideal-entropy problem);
// constraint_value is the entropy figure the solution was checked against
// after the search (measured mean normalized entropy or the ideal value).
struct OptimizationSolution {
    double alpha_opt = 0.0;
    int lc_opt = 0;
    double objective = 0.0;
    double constraint_value = 0.0;
    double objective_ci = 0.0;     // 95% half-width when the objective is simulated
    double grid_resolution = 0.0;  // finest alpha step used
    long long evaluations = 0;     // objective evaluations performed
    bool budget_exhausted = false;
};

// Smallest even L_C with log2(L_C + 1) / log2(L - 1) >= delta. Throws when
// the constraint needs more than L - 2 mimic bands.
int min_even_lc(int l, double delta);

// 1-D minimization of the error bound over alpha in (0,1): coarse 1e-3 grid
// (densified near 1) then golden-section refinement below 1e-5. The relay
// crossover profile is recomputed at every alpha. Returns (alpha, bound).
std::pair<double, double> minimize_alpha_bound(int l, int l_c, int n_c, double snr_db, int m);

// Bound-constrained problem: L_C from the ideal-entropy constraint, alpha
// from minimize_alpha_bound. The bound is nondecreasing in L_C whenever one
// mimic band's penalty exceeds twice the normal-user bound; that is checked
// at the solution, and a scan over larger even L_C runs if it fails.
OptimizationSolution solve_problem2(int l, int n_c, double snr_db, double delta, int m);

// Simulation-constrained problem: ascending scan over even L_C candidates,
// accepting the first whose measured mean normalized entropy (at that
// candidate's bound-optimal alpha) reaches delta; then a common-random-number
// alpha grid around the bound optimum minimizes simulated pe, and the
// constraint is re-measured at the final point. trial_budget is the slot-pair
// budget per simulated evaluation. If no candidate satisfies the constraint,
// the best effort is returned with budget_exhausted set.
OptimizationSolution solve_problem1(const NetworkConfig& base, double delta,
                                    long long trial_budget, std::uint64_t seed);

}  // namespace ncms
