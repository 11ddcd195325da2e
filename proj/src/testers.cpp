#include "qff/testers.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

#include "qff/amplitude.hpp"
#include "qff/vec.hpp"

namespace qff {

namespace {

void check_node(const Graph& g, int s, const char* who) {
    if (s < 0 || s >= g.n) throw std::invalid_argument(std::string(who) + ": node out of range");
}

void check_eps_delta(double eps, double delta, const char* who) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument(std::string(who) + ": eps in (0,1)");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument(std::string(who) + ": delta in (0,1)");
}

std::vector<double> basis_vec(int n, int s) {
    std::vector<double> e(n, 0.0);
    e[s] = 1.0;
    return e;
}

}  // namespace

NormEstimate estimate_norm(const Graph& g, int s, int t, double eps, double delta, Rng& rng) {
    check_node(g, s, "estimate_norm");
    check_eps_delta(eps, delta, "estimate_norm");
    if (t < 0) throw std::invalid_argument("estimate_norm: t >= 0");
    NormEstimate est;
    est.eps = eps;
    est.delta = delta;
    est.t = t;
    est.mode = NormMode::additive;
    TransitionMatrix P = lazy_walk(g);
    Discriminant D = discriminant(P);
    FFCoefficients c = make_ff_coefficients(t, eps / (4.0 * std::sqrt(double(g.n))));
    est.tau = c.tau;
    std::vector<double> phi = lcu_flat_vector(D, c, basis_vec(g.n, s));
    double amp = std::min(1.0, norm2(phi));
    auto res = amplitude_estimate(amp, eps / 2.0, delta, std::uint64_t(c.tau), rng, est.ledger);
    est.a = std::clamp(res.estimate, 0.0, 1.0);
    return est;
}

NormEstimate estimate_norm_multiplicative(const Graph& g, int s, int t, double eps, double delta,
                                          Rng& rng) {
    check_node(g, s, "estimate_norm_multiplicative");
    check_eps_delta(eps, delta, "estimate_norm_multiplicative");
    NormEstimate est;
    est.eps = eps;
    est.delta = delta;
    est.t = t;
    est.mode = NormMode::multiplicative;
    int levels = std::max(1, int(std::ceil(0.5 * std::log2(double(g.n)))));
    double dprime = delta / levels;
    for (int k = 1; k <= levels; ++k) {
        NormEstimate sub =
            estimate_norm(g, s, t, eps * std::pow(2.0, -(k + 2)), dprime, rng);
        est.ledger.add(sub.ledger);
        est.a = sub.a;
        est.tau = sub.tau;
        est.abort_level = k;
        if (sub.a >= (1.0 + eps) * std::pow(2.0, -k)) return est;
    }
    est.warning = true;
    return est;
}

ResolvedExpansion resolve_expansion(const Graph& g, const ExpansionParams& p) {
    if (!(p.upsilon > 0.0)) throw std::invalid_argument("resolve_expansion: upsilon > 0");
    if (!(p.eps > 0.0 && p.eps < 1.0)) throw std::invalid_argument("resolve_expansion: eps in (0,1)");
    if (!(p.mu > 0.0 && p.mu < 0.25))
        throw std::invalid_argument("resolve_expansion: mu in (0, 1/4)");
    ResolvedExpansion r;
    double n = double(g.n);
    r.m_threshold = p.m_threshold > 0.0 ? p.m_threshold : std::sqrt((1.0 + 1.0 / n) / n);
    if (p.mode == TesterMode::paper) {
        r.t = std::max(1, int(std::ceil(16.0 * g.d * g.d / (p.upsilon * p.upsilon) * std::log(n))));
        r.eps_prime = std::pow(n, -0.5 - p.mu) / (16.0 * std::sqrt(2.0));
        r.trials = int(std::ceil(90.0 / p.eps));
        r.delta = p.eps / 300.0;
    } else {
        if (p.t <= 0 || p.eps_prime <= 0.0 || p.trials <= 0 || p.delta <= 0.0)
            throw std::invalid_argument(
                "resolve_expansion: desk mode needs t, eps_prime, trials, delta");
        r.t = p.t;
        r.eps_prime = p.eps_prime;
        r.trials = p.trials;
        r.delta = p.delta;
    }
    return r;
}

ExpansionReport test_expansion(const Graph& g, const ExpansionParams& p, Rng& rng) {
    ExpansionReport rep;
    rep.resolved = resolve_expansion(g, p);
    rep.degree_warning = g.d < 3;
    double thr = rep.resolved.m_threshold + rep.resolved.eps_prime;
    for (int i = 0; i < rep.resolved.trials; ++i) {
        ExpansionTrial tr;
        tr.node = int(rng.uniform_below(std::uint64_t(g.n)));
        NormEstimate ne =
            estimate_norm(g, tr.node, rep.resolved.t, rep.resolved.eps_prime, rep.resolved.delta, rng);
        rep.ledger.add(ne.ledger);
        tr.estimate = ne.a;
        tr.threshold = thr;
        tr.exceeded = ne.a > thr;
        rep.trials.push_back(tr);
        if (tr.exceeded) {
            rep.accept = false;
            break;
        }
    }
    return rep;
}

ExpansionParams desk_expansion_defaults(const std::string& family, ExpansionParams base) {
    base.mode = TesterMode::desk;
    int t;
    double ep;
    if (family == "complete" || family == "edgeless") {
        t = 8;
        ep = 0.02;
    } else if (family == "regular" || family == "cycle") {
        t = 32;
        ep = 0.02;
    } else if (family == "dumbbell") {
        t = 16;
        ep = 0.022;
    } else {
        throw std::invalid_argument("desk_expansion_defaults: unknown family " + family);
    }
    if (base.t <= 0) base.t = t;
    if (base.eps_prime <= 0.0) base.eps_prime = ep;
    if (base.trials <= 0) base.trials = 8;
    if (base.delta <= 0.0) base.delta = 0.01;
    return base;
}

GRParams desk_gr_defaults(const std::string& family, GRParams base) {
    base.mode = TesterMode::desk;
    ExpansionParams probe;
    probe = desk_expansion_defaults(family, probe);
    if (base.t <= 0) base.t = probe.t;
    return base;
}

DistanceEstimate estimate_distance(const Graph& g, int u, int v, int t, double eps, double delta,
                                   Rng& rng) {
    check_node(g, u, "estimate_distance");
    check_node(g, v, "estimate_distance");
    if (u == v) throw std::invalid_argument("estimate_distance: u != v");
    check_eps_delta(eps, delta, "estimate_distance");
    if (t < 0) throw std::invalid_argument("estimate_distance: t >= 0");

    DistanceEstimate de;
    de.t = t;
    de.eps = eps;
    de.delta = delta;

    NormEstimate a1 = estimate_norm_multiplicative(g, u, t, 0.25, delta / 4.0, rng);
    NormEstimate b1 = estimate_norm_multiplicative(g, v, t, 0.25, delta / 4.0, rng);
    de.ledger.add(a1.ledger);
    de.ledger.add(b1.ledger);
    double hi = std::max(a1.a, b1.a);
    if (hi <= 0.0) throw std::runtime_error("estimate_distance: vanishing norm estimate");
    de.mu = std::min(1.0, 9.0 * eps / (16.0 * hi * hi)) / 26.0;

    NormEstimate a2 = estimate_norm_multiplicative(g, u, t, de.mu, delta / 4.0, rng);
    NormEstimate b2 = estimate_norm_multiplicative(g, v, t, de.mu, delta / 4.0, rng);
    de.ledger.add(a2.ledger);
    de.ledger.add(b2.ledger);
    de.alpha = a2.a;
    de.beta = b2.a;
    if (std::min(de.alpha, de.beta) <= 0.0)
        throw std::runtime_error("estimate_distance: vanishing norm estimate");

    de.nu = de.mu * de.mu / 11.0;
    de.lambda = std::min(de.alpha, de.beta) / (1.0 + de.nu);
    de.L = int(std::ceil(std::log(2.0 / de.nu) / de.lambda));
    if (de.L > 50000000) throw std::runtime_error("estimate_distance: schedule too long");
    de.tau = std::min(
        t, int(std::ceil(std::sqrt(2.0 * t) * std::sqrt(std::log(4.0 / (de.lambda * de.nu))))));
    FixedPointPlan plan = plan_fixed_point_for_L(de.L, de.nu);

    TransitionMatrix P = lazy_walk(g);
    Discriminant D = discriminant(P);
    FFCoefficients c = make_ff_coefficients_tau(t, de.tau);
    std::vector<double> fu = lcu_flat_vector(D, c, basis_vec(g.n, u));
    std::vector<double> fv = lcu_flat_vector(D, c, basis_vec(g.n, v));
    double lu = std::min(1.0, norm2(fu));
    double lv = std::min(1.0, norm2(fv));
    TwoDState su = fixed_point_2d(lu, plan);
    TwoDState sv = fixed_point_2d(lv, plan);

    // the two preparations share one unitary, so start-state orthogonality
    // makes every cross term vanish except through the flat overlap
    double G = 0.0;
    if (lu > 0.0 && lv > 0.0) {
        G = dot(fu, fv) / (lu * lv);
        G = std::clamp(G, -1.0, 1.0);
    }
    double cu = std::sqrt(std::max(0.0, 1.0 - lu * lu));
    double cv = std::sqrt(std::max(0.0, 1.0 - lv * lv));
    cd ov = std::conj(su.good) * sv.good * G;
    if (cu > 0.0 && cv > 0.0)
        ov += std::conj(su.bad) * sv.bad * (-(lu * lv) / (cu * cv)) * G;
    double p1 = std::sqrt(std::max(0.0, (1.0 - std::norm(ov)) / 2.0));

    std::uint64_t prep = 2ULL * (2ULL * std::uint64_t(de.L) + 1ULL) * std::uint64_t(de.tau);
    auto res = amplitude_estimate(std::min(1.0, p1), de.nu / 2.0, delta / 2.0, prep, rng, de.ledger);
    de.ledger.initial_reflections +=
        std::uint64_t(res.T) * (1ULL + 2ULL * std::uint64_t(res.M)) * 2ULL * std::uint64_t(de.L);
    de.gamma = 2.0 * res.estimate;
    de.a = de.alpha * de.alpha + de.beta * de.beta -
           2.0 * de.alpha * de.beta * std::sqrt(std::max(0.0, 1.0 - de.gamma * de.gamma / 2.0));

    std::vector<double> du = exact_power_apply(D, t, basis_vec(g.n, u));
    std::vector<double> dv = exact_power_apply(D, t, basis_vec(g.n, v));
    double nrmu = norm2(du);
    double nrmv = norm2(dv);
    de.norm_hi = std::max(nrmu, nrmv);
    de.norm_lo = std::min(nrmu, nrmv);
    double d2 = 0.0;
    for (int i = 0; i < g.n; ++i) d2 += (du[i] - dv[i]) * (du[i] - dv[i]);
    de.true_dist2 = d2;
    de.middle_band = d2 > 1.0 / (4.0 * g.n) && d2 < 1.0 / g.n;
    return de;
}

ClassifyReport classify_nodes(const Graph& g, int u, int v, const ClusterParams& p, Rng& rng) {
    check_node(g, u, "classify_nodes");
    check_node(g, v, "classify_nodes");
    if (p.k < 1) throw std::invalid_argument("classify_nodes: k >= 1");
    if (p.t_override <= 0 && !(p.phi_in > 0.0))
        throw std::invalid_argument("classify_nodes: phi_in > 0");
    ClassifyReport rep;
    rep.midpoint = 5.0 / (8.0 * g.n);
    rep.t = p.t_override > 0
                ? p.t_override
                : std::max(1, int(std::ceil(p.cprime * std::pow(double(p.k), 4.0) /
                                            (p.phi_in * p.phi_in) * std::log(double(g.n)))));
    if (u == v) {
        rep.verdict = PairVerdict::same_cluster;
        return rep;
    }
    DistanceEstimate de = estimate_distance(g, u, v, rep.t, 3.0 / (8.0 * g.n), 1.0 / 3.0, rng);
    rep.ledger = de.ledger;
    rep.estimate = de.a;
    rep.middle_band = de.middle_band;
    rep.verdict = de.a < rep.midpoint ? PairVerdict::same_cluster : PairVerdict::different_cluster;
    return rep;
}

ClusterReport test_clusterability(const Graph& g, int k, const ClusterParams& p, Rng& rng) {
    if (k < 1) throw std::invalid_argument("test_clusterability: k >= 1");
    ClusterParams q = p;
    q.k = k;
    ClusterReport rep;
    int count = int(std::ceil(4.0 * k * std::log(k + 1.0)));
    for (int i = 0; i < count; ++i)
        rep.samples.push_back(int(rng.uniform_below(std::uint64_t(g.n))));

    std::vector<int> parent(count);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    for (int i = 0; i < count; ++i)
        for (int j = i + 1; j < count; ++j) {
            bool same;
            if (rep.samples[i] == rep.samples[j]) {
                same = true;
            } else {
                ClassifyReport cr = classify_nodes(g, rep.samples[i], rep.samples[j], q, rng);
                rep.ledger.add(cr.ledger);
                same = cr.verdict == PairVerdict::same_cluster;
            }
            if (same) {
                rep.similar.emplace_back(i, j);
                parent[find(i)] = find(j);
            }
        }

    rep.components = 0;
    for (int i = 0; i < count; ++i)
        if (find(i) == i) ++rep.components;
    rep.accept = rep.components <= k;
    return rep;
}

CollisionEstimate classical_norm_collisions(const Graph& g, int s, int t, int m, Rng& rng,
                                            CostLedger& led) {
    check_node(g, s, "classical_norm_collisions");
    if (m < 2) throw std::invalid_argument("classical_norm_collisions: m >= 2");
    if (t < 0) throw std::invalid_argument("classical_norm_collisions: t >= 0");
    TransitionMatrix P = lazy_walk(g);
    std::vector<std::uint64_t> cnt(g.n, 0);
    for (int w = 0; w < m; ++w) {
        int x = s;
        for (int step = 0; step < t; ++step) {
            double r = rng.uniform01();
            double cum = 0.0;
            const auto& col = P.cols[x];
            int nxt = col.back().first;
            for (const auto& [i, val] : col) {
                cum += val;
                if (r < cum) {
                    nxt = i;
                    break;
                }
            }
            x = nxt;
        }
        ++cnt[x];
    }
    led.classical_rw_steps += std::uint64_t(m) * std::uint64_t(t);
    CollisionEstimate ce;
    ce.m = m;
    for (std::uint64_t c : cnt) ce.collisions += c * (c - 1) / 2;
    ce.estimate = double(ce.collisions) / (double(m) * (m - 1) / 2.0);
    return ce;
}

ResolvedGR resolve_gr(const Graph& g, const GRParams& p) {
    if (!(p.upsilon > 0.0)) throw std::invalid_argument("resolve_gr: upsilon > 0");
    if (!(p.eps > 0.0 && p.eps < 1.0)) throw std::invalid_argument("resolve_gr: eps in (0,1)");
    if (!(p.mu > 0.0 && p.mu < 0.25)) throw std::invalid_argument("resolve_gr: mu in (0, 1/4)");
    ResolvedGR r;
    double n = double(g.n);
    if (p.mode == TesterMode::paper) {
        r.t = std::max(1, int(std::ceil(16.0 * g.d * g.d / (p.upsilon * p.upsilon) * std::log(n))));
        r.walkers = std::max(2, int(std::ceil(std::pow(n, 0.5 + p.mu))));
        r.trials = int(std::ceil(2.0 / p.eps));
        r.threshold = 3.0 * (double(r.walkers) * (r.walkers - 1) / 2.0) / n;
    } else {
        if (p.t <= 0) throw std::invalid_argument("resolve_gr: desk mode needs t");
        r.t = p.t;
        r.walkers = std::max(2, int(std::ceil(p.walker_mult * std::pow(n, 0.5 + p.mu))));
        r.trials = 4;
        r.threshold = p.threshold_mult * (double(r.walkers) * (r.walkers - 1) / 2.0) / n;
    }
    if (p.t > 0) r.t = p.t;
    if (p.walkers > 1) r.walkers = p.walkers;
    if (p.trials > 0) r.trials = p.trials;
    if (p.threshold > 0.0) r.threshold = p.threshold;
    return r;
}

GRReport classical_gr_expansion(const Graph& g, const GRParams& p, Rng& rng) {
    GRReport rep;
    rep.resolved = resolve_gr(g, p);
    if (g.n < 2) {
        // degenerate: every walk sits on the one node, maximal concentration
        GRTrial tr;
        tr.node = 0;
        std::uint64_t pairs =
            std::uint64_t(rep.resolved.walkers) * (rep.resolved.walkers - 1) / 2;
        tr.collisions = pairs;
        tr.estimate = 1.0;
        tr.exceeded = true;
        rep.trials.push_back(tr);
        rep.accept = false;
        return rep;
    }
    for (int i = 0; i < rep.resolved.trials; ++i) {
        GRTrial tr;
        tr.node = int(rng.uniform_below(std::uint64_t(g.n)));
        CollisionEstimate ce =
            classical_norm_collisions(g, tr.node, rep.resolved.t, rep.resolved.walkers, rng, rep.ledger);
        tr.collisions = ce.collisions;
        tr.estimate = ce.estimate;
        tr.exceeded = double(ce.collisions) > rep.resolved.threshold;
        rep.trials.push_back(tr);
        if (tr.exceeded) {
            rep.accept = false;
            break;
        }
    }
    return rep;
}

}  // namespace qff
