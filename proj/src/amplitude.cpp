#include "qff/amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qff {

namespace {
constexpr double kPi = 3.14159265358979323846;

double cheb_T(int n, double x) {
    if (std::abs(x) <= 1.0) return std::cos(n * std::acos(x));
    double v = std::cosh(n * std::acosh(std::abs(x)));
    return (x < 0.0 && n % 2 == 1) ? -v : v;
}
}  // namespace

Preparer make_w_tau_preparer(const WalkOperators& ops, const FFCoefficients& c,
                             const std::vector<double>& v) {
    Preparer A;
    A.start = QWState::flat(v, c.tau + 1);
    A.unit_cost = static_cast<std::uint64_t>(c.tau);
    A.apply = [&ops, c](QWState& s, CostLedger& led) { apply_W_tau(s, ops, c, led); };
    A.apply_dagger = [&ops, c](QWState& s, CostLedger& led) { apply_W_tau_dagger(s, ops, c, led); };
    return A;
}

AmplificationPlan plan_amplification(double flat_norm) {
    if (!(flat_norm > 0.0)) throw std::invalid_argument("plan_amplification: zero overlap");
    AmplificationPlan p;
    p.theta = std::asin(std::min(flat_norm, 1.0));
    p.m = static_cast<int>(std::floor(kPi / (4.0 * p.theta)));
    return p;
}

double grover_amplitude(double theta, int m) { return std::sin((2 * m + 1) * theta); }

QWState amplitude_amplify(const Preparer& A, int m, CostLedger& led) {
    QWState s = A.start;
    A.apply(s, led);
    for (int j = 0; j < m; ++j) {
        reflect_flat0(s);
        A.apply_dagger(s, led);
        reflect_about(s, A.start);
        led.initial_reflections += 1;
        A.apply(s, led);
        for (auto& a : s.amp) a = -a;
    }
    return s;
}

FixedPointPlan plan_fixed_point_for_L(int L, double delta) {
    if (L < 0) throw std::invalid_argument("fixed point: L >= 0");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("fixed point: delta in (0,1)");
    FixedPointPlan plan;
    plan.L = L;
    plan.delta = delta;
    int Ldeg = 2 * L + 1;
    plan.gamma = 1.0 / std::cosh(std::acosh(1.0 / delta) / Ldeg);
    double s = std::sqrt(1.0 - plan.gamma * plan.gamma);
    plan.alpha.resize(L);
    plan.beta.resize(L);
    for (int j = 1; j <= L; ++j) {
        double t = std::tan(2.0 * kPi * j / Ldeg) * s;
        plan.alpha[j - 1] = 2.0 * (kPi / 2.0 - std::atan(t));
    }
    for (int j = 1; j <= L; ++j) plan.beta[j - 1] = plan.alpha[L - j];
    return plan;
}

FixedPointPlan plan_fixed_point(double lambda, double delta) {
    if (!(lambda > 0.0 && lambda <= 1.0)) throw std::invalid_argument("fixed point: lambda in (0,1]");
    int L = static_cast<int>(std::ceil(std::log(2.0 / delta) / lambda));
    return plan_fixed_point_for_L(L, delta);
}

double fixed_point_success(double lambda, int L, double delta) {
    int Ldeg = 2 * L + 1;
    double x = std::cosh(std::acosh(1.0 / delta) / Ldeg) * std::sqrt(1.0 - lambda * lambda);
    double T = cheb_T(Ldeg, x);
    return 1.0 - delta * delta * T * T;
}

TwoDState fixed_point_2d(double lambda, const FixedPointPlan& plan) {
    TwoDState a{lambda, std::sqrt(std::max(0.0, 1.0 - lambda * lambda))};
    const double pg = lambda, pb = a.bad.real();  // the prepared state, real
    for (int j = 0; j < plan.L; ++j) {
        a.good *= std::exp(cd(0.0, plan.beta[j]));
        cd ov = pg * a.good + pb * a.bad;
        cd f = 1.0 - std::exp(cd(0.0, plan.alpha[j]));
        a.good -= f * ov * pg;
        a.bad -= f * ov * pb;
        a.good = -a.good;
        a.bad = -a.bad;
    }
    return a;
}

QWState fixed_point_amplify(const Preparer& A, const FixedPointPlan& plan,
                            FixedPointMode mode, CostLedger& led) {
    QWState s = A.start;
    A.apply(s, led);
    if (mode == FixedPointMode::phased) {
        for (int j = 0; j < plan.L; ++j) {
            phase_flat0(s, plan.beta[j]);
            A.apply_dagger(s, led);
            phase_about(s, A.start, plan.alpha[j]);
            led.initial_reflections += 1;
            A.apply(s, led);
            for (auto& a : s.amp) a = -a;
        }
        return s;
    }
    // idealized: exact rotation in the plane of the prepared state and its
    // flat part, same ledger charges as the phased pipeline
    led.qw_steps += 2ULL * plan.L * A.unit_cost;
    led.initial_reflections += static_cast<std::uint64_t>(plan.L);
    FlatProjection fp = project_flat(s);
    double lambda = fp.norm;
    if (!(lambda > 0.0)) throw std::invalid_argument("fixed_point_amplify: zero overlap");
    TwoDState coef = fixed_point_2d(lambda, plan);
    double cb = std::sqrt(std::max(0.0, 1.0 - lambda * lambda));
    QWState out = s;
    for (std::size_t i = 0; i < out.amp.size(); ++i) {
        cd good = fp.state.amp[i];
        cd bad = cb > 0.0 ? (s.amp[i] - lambda * good) / cb : cd(0.0);
        out.amp[i] = coef.good * good + coef.bad * bad;
    }
    return out;
}

int ae_grid(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("ae_grid: eps in (0,1)");
    int M = static_cast<int>(std::ceil(3.0 * kPi / eps));
    if (M % 2 == 1) ++M;
    return M;
}

int ae_shots(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("ae_shots: delta in (0,1)");
    return static_cast<int>(std::ceil(18.0 * std::log(1.0 / delta)));
}

double kernel_value(double r, int M) {
    double s = std::sin(kPi * r);
    if (std::abs(s) < 1e-15) return 1.0;
    double q = std::sin(kPi * M * r) / (M * s);
    return q * q;
}

namespace {

// one branch centered at phase w in [0,1): nearest grid point plus a
// heavy-tailed offset proposal, rejection against the exact kernel
int sample_branch(int M, double w, Rng& rng) {
    int ystar = static_cast<int>(std::floor(w * M + 0.5));
    double r0 = w - static_cast<double>(ystar) / M;
    const double env_mass = 1.0 + kPi * kPi / 4.0;
    for (;;) {
        double u = rng.uniform01() * env_mass;
        long long j = 0;
        if (u >= 1.0) {
            int sign = rng.uniform01() < 0.5 ? 1 : -1;
            long long k = 0;
            for (;;) {
                double uu = rng.uniform01();
                if (uu <= 0.0) continue;
                double x = 0.5 / uu;
                if (x > 1e15) continue;  // tail guard
                k = static_cast<long long>(std::ceil(x));
                double t = (1.0 / ((k - 0.5) * (k - 0.5))) / (kPi * kPi / 2.0);
                double p = (k == 1) ? 0.5 : 0.5 * (1.0 / (k - 1) - 1.0 / static_cast<double>(k));
                if (rng.uniform01() < t / (1.6211 * p)) break;
            }
            j = sign * k;
        }
        if (!(-0.5 * M < j && j <= 0.5 * M)) continue;
        double r = static_cast<double>(j) / M - r0;
        double env = (j == 0) ? 1.0
                              : 1.0 / (4.0 * (std::llabs(j) - 0.5) * (std::llabs(j) - 0.5));
        if (rng.uniform01() < kernel_value(r, M) / env) {
            long long y = (ystar + j) % M;
            if (y < 0) y += M;
            return static_cast<int>(y);
        }
    }
}

}  // namespace

int sample_ae_outcome(int M, double theta, Rng& rng) {
    double w = theta / kPi;
    if (rng.uniform01() < 0.5) return sample_branch(M, w, rng);
    double w2 = 1.0 - w;
    if (w2 >= 1.0) w2 -= 1.0;
    return sample_branch(M, w2, rng);
}

EstimationResult amplitude_estimate(double amp, double eps, double delta,
                                    std::uint64_t prep_cost, Rng& rng, CostLedger& led) {
    amp = std::clamp(amp, 0.0, 1.0);
    EstimationResult res;
    res.M = ae_grid(eps);
    res.T = ae_shots(delta);
    double theta = std::asin(amp);
    res.shots.reserve(res.T);
    for (int i = 0; i < res.T; ++i) {
        int y = sample_ae_outcome(res.M, theta, rng);
        res.shots.push_back(std::sin(kPi * y / res.M));
    }
    std::vector<double> sorted = res.shots;
    std::sort(sorted.begin(), sorted.end());
    res.estimate = sorted[res.T / 2];
    led.qw_steps += static_cast<std::uint64_t>(res.T) * prep_cost * (1 + 2ULL * res.M);
    led.initial_reflections += static_cast<std::uint64_t>(res.T) * res.M;
    return res;
}

EstimationResult amplitude_estimate_flat(const QWState& s, double eps, double delta,
                                         std::uint64_t prep_cost, Rng& rng, CostLedger& led) {
    return amplitude_estimate(project_flat(s).norm, eps, delta, prep_cost, rng, led);
}

SwapTestState swap_test_state(const QWState& u, const QWState& v) {
    if (u.amp.size() != v.amp.size())
        throw std::invalid_argument("swap_test_state: dimension mismatch");
    std::size_t d = u.amp.size();
    if (d > 2048) throw std::invalid_argument("swap_test_state: materialization capped at 2048");
    SwapTestState out;
    out.dim = d;
    out.amp.assign(2 * d * d, cd(0.0));
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            cd uv = u.amp[a] * v.amp[b];
            cd vu = v.amp[a] * u.amp[b];
            out.amp[a * d + b] = 0.5 * (uv + vu);
            out.amp[d * d + a * d + b] = 0.5 * (uv - vu);
        }
    return out;
}

double swap_p1(const SwapTestState& s) {
    double p = 0.0;
    for (std::size_t i = s.dim * s.dim; i < 2 * s.dim * s.dim; ++i) p += std::norm(s.amp[i]);
    return p;
}

double swap_overlap_p1(const QWState& u, const QWState& v) {
    cd ov = cdot(u.amp, v.amp);
    return 0.5 * (1.0 - std::norm(ov));
}

}  // namespace qff
