#pragma once

#include <vector>

namespace qff {

// Chebyshev expansion of x^t: x^t = sum_l p_l T_l(x), with p_l the
// probability that a t-step +-1 walk ends at l (folded to l >= 0).
// Truncating at tau keeps mass 1 - tail; q renormalizes the kept part.
struct FFCoefficients {
    int t = 0;
    int tau = 0;
    std::vector<double> p;  // p[0..tau]
    double tail = 0.0;      // sum of p_l for l > tau
    std::vector<double> q;  // p_l / (1 - tail)
};

// full list p_0..p_t, log-gamma evaluation; p_l = 0 when l and t differ
// in parity
std::vector<double> coefficients(int t);

// ceil(sqrt(2 t ln(2/eps))) capped at t; requires 0 < eps < 2
int truncation_order(int t, double eps_prime);

// sum of p_l over tau < l <= t
double tail_mass(int t, int tau);

FFCoefficients make_ff_coefficients(int t, double eps_prime);

// truncation order given directly; tau above t is clamped (expansion is
// exact there)
FFCoefficients make_ff_coefficients_tau(int t, int tau);

// sum_{l <= tau} p_l cos(l theta); callers wanting the q-weighted value
// divide by (1 - tail)
double approx_eigenfunction(const FFCoefficients& c, double theta);

}  // namespace qff
