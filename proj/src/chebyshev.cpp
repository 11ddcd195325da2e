#include "qff/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qff {

std::vector<double> coefficients(int t) {
    if (t < 0) throw std::invalid_argument("coefficients: t >= 0");
    if (t > 1000000) throw std::invalid_argument("coefficients: t too large");
    std::vector<double> p(t + 1, 0.0);
    if (t == 0) {
        p[0] = 1.0;
        return p;
    }
    const double ln2 = std::log(2.0);
    const double lg_t = std::lgamma(t + 1.0);
    for (int l = t; l >= 1; l -= 2) {
        double lg = (1 - t) * ln2 + lg_t - std::lgamma((t - l) / 2 + 1.0) -
                    std::lgamma((t + l) / 2 + 1.0);
        p[l] = std::exp(lg);
    }
    if (t % 2 == 0) {
        double lg = -t * ln2 + lg_t - 2.0 * std::lgamma(t / 2 + 1.0);
        p[0] = std::exp(lg);
    }
    return p;
}

int truncation_order(int t, double eps_prime) {
    if (t < 0) throw std::invalid_argument("truncation_order: t >= 0");
    if (!(eps_prime > 0.0 && eps_prime < 2.0))
        throw std::invalid_argument("truncation_order: eps in (0,2)");
    if (t == 0) return 0;
    double raw = std::sqrt(2.0 * t * std::log(2.0 / eps_prime));
    int tau = static_cast<int>(std::ceil(raw));
    return std::min(tau, t);
}

double tail_mass(int t, int tau) {
    if (tau < 0 || tau > t) throw std::invalid_argument("tail_mass: 0 <= tau <= t");
    auto p = coefficients(t);
    double s = 0.0;
    for (int l = t; l > tau; --l) s += p[l];
    return s;
}

FFCoefficients make_ff_coefficients(int t, double eps_prime) {
    FFCoefficients c;
    c.t = t;
    c.tau = truncation_order(t, eps_prime);
    auto full = coefficients(t);
    c.p.assign(full.begin(), full.begin() + c.tau + 1);
    c.tail = 0.0;
    for (int l = t; l > c.tau; --l) c.tail += full[l];
    c.q = c.p;
    double keep = 1.0 - c.tail;
    for (auto& v : c.q) v /= keep;
    return c;
}

FFCoefficients make_ff_coefficients_tau(int t, int tau) {
    if (t < 0) throw std::invalid_argument("make_ff_coefficients_tau: t >= 0");
    if (tau < 0) throw std::invalid_argument("make_ff_coefficients_tau: tau >= 0");
    FFCoefficients c;
    c.t = t;
    c.tau = std::min(tau, t);
    auto full = coefficients(t);
    c.p.assign(full.begin(), full.begin() + c.tau + 1);
    c.tail = 0.0;
    for (int l = t; l > c.tau; --l) c.tail += full[l];
    c.q = c.p;
    double keep = 1.0 - c.tail;
    for (auto& v : c.q) v /= keep;
    return c;
}

double approx_eigenfunction(const FFCoefficients& c, double theta) {
    double s = 0.0;
    for (int l = 0; l <= c.tau; ++l)
        if (c.p[l] != 0.0) s += c.p[l] * std::cos(l * theta);
    return s;
}

}  // namespace qff
