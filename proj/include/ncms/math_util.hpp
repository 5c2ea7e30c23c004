#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace ncms {

inline constexpr double kPi = 3.14159265358979323846;

// log(sum(exp(v))) without overflow; empty input yields -inf.
inline double log_sum_exp(std::span<const double> v) {
    double mx = -INFINITY;
    for (double x : v)
        if (x > mx) mx = x;
    if (!std::isfinite(mx)) return mx;
    double acc = 0.0;
    for (double x : v) acc += std::exp(x - mx);
    return mx + std::log(acc);
}

// Regularized upper incomplete gamma Q(k, x) at integer shape k >= 1:
// the upper tail of an Erlang-k variable with unit scale.
// Computed as the Poisson partial sum exp(-x) * sum_{j<k} x^j / j!,
// accumulated in log space so large x does not underflow term by term.
inline double erlang_upper_reg(int k, double x) {
    if (x <= 0.0) return 1.0;
    // log of sum_{j<k} exp(j ln x - lgamma(j+1))
    double lx = std::log(x);
    double mx = -INFINITY;
    double lt = 0.0;  // j = 0 term
    for (int j = 0; j < k; ++j) {
        if (j > 0) lt += lx - std::log(double(j));
        if (lt > mx) mx = lt;
    }
    lt = 0.0;
    double acc = 0.0;
    for (int j = 0; j < k; ++j) {
        if (j > 0) lt += lx - std::log(double(j));
        acc += std::exp(lt - mx);
    }
    double v = -x + mx + std::log(acc);
    return v > 0.0 ? 1.0 : std::exp(v);
}

// Regularized lower incomplete gamma P(k, x) = 1 - Q(k, x).
// Accurate to ~1e-16 absolute, which is all the Monte Carlo work needs.
inline double erlang_lower_reg(int k, double x) {
    return 1.0 - erlang_upper_reg(k, x);
}

}  // namespace ncms
