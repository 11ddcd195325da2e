// norm/distance estimators, expansion and cluster testers, classical baselines

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "qff/graph.hpp"
#include "qff/markov.hpp"
#include "qff/rng.hpp"
#include "qff/testers.hpp"
#include "qff/vec.hpp"

using namespace qff;

namespace {

std::vector<double> basis(int n, int i) {
    std::vector<double> v(n, 0.0);
    v[i] = 1.0;
    return v;
}

double true_norm(const Graph& g, int s, int t) {
    Discriminant D = discriminant(lazy_walk(g));
    return norm2(exact_power_apply(D, t, basis(g.n, s)));
}

double true_dist2(const Graph& g, int u, int v, int t) {
    Discriminant D = discriminant(lazy_walk(g));
    std::vector<double> a = exact_power_apply(D, t, basis(g.n, u));
    std::vector<double> b = exact_power_apply(D, t, basis(g.n, v));
    axpy(a, -1.0, b);
    return dot(a, a);
}

}  // namespace

// norm estimation -----------------------------------------------------------

TEST_CASE("norm estimate on a single edge") {
    Graph g = gen_complete(2);
    double want = true_norm(g, 0, 4);
    CHECK(want == doctest::Approx(1.0 / std::sqrt(2.0)));

    Rng rng(101);
    int ok = 0;
    const int reps = 400;
    for (int i = 0; i < reps; ++i) {
        NormEstimate r = estimate_norm(g, 0, 4, 0.02, 0.05, rng);
        if (std::abs(r.a - want) <= 0.02) ++ok;
    }
    // confidence contract is 95 percent
    CHECK(ok >= int(reps * 0.95));
}

TEST_CASE("norm estimate fields and ledger") {
    Graph g = gen_complete(3);
    Rng rng(5);
    NormEstimate r = estimate_norm(g, 0, 1, 0.05, 0.1, rng);
    CHECK(std::abs(r.a - std::sqrt(3.0 / 8.0)) <= 0.05);
    CHECK(r.t == 1);
    CHECK(r.mode == NormMode::additive);
    // truncation order carries the 8 sqrt(N) / eps certificate
    CHECK(r.tau == truncation_order(1, 0.05 / (4.0 * std::sqrt(3.0))));

    std::uint64_t T = ae_shots(0.1);
    std::uint64_t M = ae_grid(0.05 / 2);
    CHECK(r.ledger.qw_steps == T * std::uint64_t(r.tau) * (1 + 2 * M));
    CHECK(r.ledger.initial_reflections == T * M);
}

TEST_CASE("norm estimate at zero steps is one") {
    Rng rng(9);
    NormEstimate r = estimate_norm(gen_cycle(8), 3, 0, 0.05, 0.1, rng);
    CHECK(std::abs(r.a - 1.0) <= 0.05);
}

TEST_CASE("norm estimate input validation") {
    Rng rng(1);
    Graph g = gen_complete(3);
    CHECK_THROWS_AS(estimate_norm(g, 5, 1, 0.1, 0.1, rng), std::invalid_argument);
    CHECK_THROWS_AS(estimate_norm(g, 0, 1, 0.0, 0.1, rng), std::invalid_argument);
    CHECK_THROWS_AS(estimate_norm(g, 0, 1, 0.1, 1.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(estimate_norm(g, 0, -1, 0.1, 0.1, rng), std::invalid_argument);
}

TEST_CASE("multiplicative estimate aborts at the right level") {
    Rng rng(31);

    // norm 1: the very first level already exceeds
    NormEstimate a = estimate_norm_multiplicative(gen_complete(2), 0, 0, 0.2, 0.1, rng);
    CHECK(a.abort_level == 1);
    CHECK_FALSE(a.warning);
    CHECK(a.mode == NormMode::multiplicative);

    // norm 1/sqrt(2) still beats (1+eps)/2
    NormEstimate b = estimate_norm_multiplicative(gen_complete(2), 0, 4, 0.2, 0.1, rng);
    CHECK(b.abort_level == 1);

    // dumbbell norm around 0.2 survives to the third halving
    NormEstimate c = estimate_norm_multiplicative(gen_dumbbell(16, 3, 1, 7), 0, 16, 0.25, 0.1, rng);
    CHECK(c.abort_level == 3);
    CHECK_FALSE(c.warning);
}

TEST_CASE("multiplicative estimate hits the relative target") {
    Graph g = gen_dumbbell(16, 3, 1, 7);
    double want = true_norm(g, 0, 16);
    Rng rng(71);
    int ok = 0;
    const int reps = 40;
    for (int i = 0; i < reps; ++i) {
        NormEstimate r = estimate_norm_multiplicative(g, 0, 16, 0.25, 0.1, rng);
        if (std::abs(r.a - want) <= 0.25 * want) ++ok;
    }
    CHECK(ok >= int(reps * 0.9));
}

TEST_CASE("multiplicative estimate warns when no level aborts") {
    // uniform norm on K16 is 1/4, in the blind spot of the last level
    Rng rng(13);
    NormEstimate r = estimate_norm_multiplicative(gen_complete(16), 0, 8, 0.05, 0.1, rng);
    CHECK(r.warning);
    CHECK(r.abort_level == 2);  // levels = ceil(log2(16)/2)
}

// expansion tester ------------------------------------------------------------

TEST_CASE("paper mode resolution formulas") {
    Graph g = gen_complete(16);
    ExpansionParams p;
    p.mode = TesterMode::paper;
    ResolvedExpansion r = resolve_expansion(g, p);
    // 16 d^2 ln N / upsilon^2 with d = 15, upsilon = 1/2
    CHECK(r.t == 39926);
    CHECK(r.eps_prime == doctest::Approx(std::pow(16.0, -0.6) / (16 * std::sqrt(2.0))));
    CHECK(r.trials == 900);
    CHECK(r.delta == doctest::Approx(0.1 / 300));
    CHECK(r.m_threshold == doctest::Approx(std::sqrt((1.0 + 1.0 / 16) / 16)));
}

TEST_CASE("desk mode refuses to guess the schedule") {
    Graph g = gen_complete(16);
    ExpansionParams p;  // desk by default, nothing filled
    Rng rng(1);
    CHECK_THROWS_AS(test_expansion(g, p, rng), std::invalid_argument);

    p.t = 8;
    p.eps_prime = 0.02;
    CHECK_THROWS_AS(test_expansion(g, p, rng), std::invalid_argument);  // still no trials/delta
}

TEST_CASE("mu outside the allowed band is rejected") {
    Graph g = gen_complete(16);
    ExpansionParams p;
    p.mode = TesterMode::paper;
    p.mu = 0.3;
    CHECK_THROWS_AS(resolve_expansion(g, p), std::invalid_argument);
    p.mu = 0.0;
    CHECK_THROWS_AS(resolve_expansion(g, p), std::invalid_argument);
}

TEST_CASE("calibrated desk verdicts on the stock families") {
    struct Row {
        const char* family;
        Graph g;
        bool want_accept;
    };
    std::vector<Row> table = {
        {"complete", gen_complete(16), true},
        {"regular", gen_random_regular(32, 8, 40), true},
        {"cycle", gen_cycle(64), false},
        {"dumbbell", gen_dumbbell(16, 3, 1, 40), false},
        {"edgeless", gen_edgeless(16), false},
    };
    for (const auto& row : table) {
        ExpansionParams p = desk_expansion_defaults(row.family);
        int agree = 0;
        for (int run = 0; run < 6; ++run) {
            Rng rng(derive_seed(909, run));
            ExpansionReport rep = test_expansion(row.g, p, rng);
            if (rep.accept == row.want_accept) ++agree;
            CHECK(rep.resolved.trials == 8);
            CHECK(int(rep.trials.size()) <= rep.resolved.trials);
            if (!rep.accept) CHECK(rep.trials.back().exceeded);
        }
        CHECK(agree >= 5);
    }
    CHECK_THROWS_AS(desk_expansion_defaults("mystery"), std::invalid_argument);
}

TEST_CASE("expansion report flags low degree") {
    ExpansionParams p = desk_expansion_defaults("cycle");
    Rng rng(3);
    ExpansionReport rep = test_expansion(gen_cycle(64), p, rng);
    CHECK(rep.degree_warning);  // guarantee needs d >= 3

    ExpansionParams q = desk_expansion_defaults("complete");
    Rng rng2(3);
    ExpansionReport rep2 = test_expansion(gen_complete(16), q, rng2);
    CHECK_FALSE(rep2.degree_warning);
}

TEST_CASE("expansion runs are seed deterministic") {
    Graph g = gen_dumbbell(16, 3, 1, 40);
    ExpansionParams p = desk_expansion_defaults("dumbbell");
    Rng r1(77), r2(77);
    ExpansionReport a = test_expansion(g, p, r1);
    ExpansionReport b = test_expansion(g, p, r2);
    REQUIRE(a.trials.size() == b.trials.size());
    for (std::size_t i = 0; i < a.trials.size(); ++i) {
        CHECK(a.trials[i].node == b.trials[i].node);
        CHECK(a.trials[i].estimate == b.trials[i].estimate);
    }
    CHECK(a.ledger.qw_steps == b.ledger.qw_steps);
}

// distance estimator ----------------------------------------------------------

TEST_CASE("distance of a symmetric pair is near zero") {
    Graph g = gen_complete(8);
    Rng rng(21);
    DistanceEstimate r = estimate_distance(g, 0, 1, 16, 0.25, 0.2, rng);
    CHECK(r.a <= 0.25);
    CHECK(r.alpha == doctest::Approx(r.beta).epsilon(0.05));
    CHECK(r.true_dist2 < 1e-10);
    CHECK_FALSE(r.middle_band);
    CHECK(r.a == doctest::Approx(r.alpha * r.alpha + r.beta * r.beta -
                                 2 * r.alpha * r.beta *
                                     std::sqrt(std::max(0.0, 1 - r.gamma * r.gamma / 2))));
}

TEST_CASE("distance on an edgeless graph is the full two") {
    Rng rng(5);
    DistanceEstimate r = estimate_distance(gen_edgeless(8), 0, 1, 8, 0.25, 0.2, rng);
    CHECK(std::abs(r.a - 2.0) <= 0.25);
    CHECK(r.true_dist2 == doctest::Approx(2.0));
}

TEST_CASE("distance across the dumbbell bridge") {
    Graph g = gen_dumbbell(8, 3, 1, 9);
    double want = true_dist2(g, 0, 12, 32);
    for (std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
        Rng rng(seed);
        DistanceEstimate r = estimate_distance(g, 0, 12, 32, 0.3, 0.2, rng);
        CHECK(std::abs(r.a - want) <= 0.3);
        CHECK(r.true_dist2 == doctest::Approx(want));
        CHECK(r.gamma >= 0.0);
        CHECK(r.gamma <= std::sqrt(2.0) + 1e-9);
        CHECK(r.L >= 1);
        CHECK(r.tau <= 32);
        CHECK(r.ledger.initial_reflections > 0);
    }
}

TEST_CASE("distance diagnostics flag the ambiguous band") {
    Graph g = gen_dumbbell(8, 3, 1, 9);
    double want = true_dist2(g, 0, 12, 32);
    // this fixture sits inside (1/(4N), 1/N)
    CHECK(want > 1.0 / (4 * 16));
    CHECK(want < 1.0 / 16);
    Rng rng(11);
    DistanceEstimate r = estimate_distance(g, 0, 12, 32, 0.3, 0.2, rng);
    CHECK(r.middle_band);
}

TEST_CASE("distance stage parameters are recorded coherently") {
    Rng rng(31);
    DistanceEstimate r = estimate_distance(gen_complete(8), 0, 1, 16, 0.25, 0.2, rng);
    CHECK(r.t == 16);
    CHECK(r.eps == 0.25);
    CHECK(r.delta == 0.2);
    CHECK(r.mu > 0);
    CHECK(r.nu == doctest::Approx(r.mu * r.mu / 11));
    CHECK(r.lambda > 0);
    CHECK(r.norm_hi >= r.norm_lo);
    CHECK(r.norm_hi == doctest::Approx(true_norm(gen_complete(8), 0, 16)).epsilon(1e-9));
}

// node classification ----------------------------------------------------------

TEST_CASE("classify walk length formula and midpoint") {
    Graph g = gen_complete(16);
    ClusterParams p;
    p.k = 2;
    p.phi_in = 0.4;
    // same node short circuits before any quantum work
    Rng rng(1);
    ClassifyReport rep = classify_nodes(g, 3, 3, p, rng);
    CHECK(rep.verdict == PairVerdict::same_cluster);
    CHECK(rep.t == 278);  // ceil(k^4 phi^{-2} ln N)
    CHECK(rep.midpoint == doctest::Approx(5.0 / 128));
    CHECK(rep.ledger.qw_steps == 0);
}

TEST_CASE("classify separates the dumbbell halves") {
    Graph g = gen_dumbbell(8, 3, 1, 5);
    ClusterParams p;
    p.k = 2;
    p.phi_in = 0.4;
    p.t_override = 32;
    for (std::uint64_t seed : {13ULL, 14ULL, 15ULL}) {
        Rng r1(seed);
        ClassifyReport same = classify_nodes(g, 0, 3, p, r1);
        CHECK(same.verdict == PairVerdict::same_cluster);
        CHECK(same.estimate < same.midpoint);

        Rng r2(seed);
        ClassifyReport diff = classify_nodes(g, 0, 12, p, r2);
        CHECK(diff.verdict == PairVerdict::different_cluster);
        CHECK(diff.estimate > diff.midpoint);
    }
}

TEST_CASE("classify input validation") {
    Graph g = gen_complete(4);
    ClusterParams p;
    p.k = 0;
    Rng rng(1);
    CHECK_THROWS_AS(classify_nodes(g, 0, 1, p, rng), std::invalid_argument);
    ClusterParams q;
    q.phi_in = 0.0;
    CHECK_THROWS_AS(classify_nodes(g, 0, 1, q, rng), std::invalid_argument);
}

// clusterability ----------------------------------------------------------------

TEST_CASE("sample budget follows the k log k rule") {
    Graph g = gen_complete(16);
    ClusterParams p;
    p.t_override = 16;
    Rng rng(3);
    ClusterReport r1 = test_clusterability(g, 1, p, rng);
    CHECK(r1.samples.size() == 3);
    ClusterReport r2 = test_clusterability(g, 2, p, rng);
    CHECK(r2.samples.size() == 9);
    ClusterReport r3 = test_clusterability(g, 3, p, rng);
    CHECK(r3.samples.size() == 17);
}

TEST_CASE("one expander cluster is accepted") {
    Graph g = gen_complete(16);
    ClusterParams p;
    p.t_override = 16;
    for (std::uint64_t seed : {21ULL, 22ULL, 23ULL, 24ULL, 25ULL}) {
        Rng rng(seed);
        ClusterReport r = test_clusterability(g, 1, p, rng);
        CHECK(r.accept);
        CHECK(r.components == 1);
    }
}

TEST_CASE("dumbbell needs two clusters") {
    Graph g = gen_dumbbell(8, 3, 1, 5);
    ClusterParams p;
    p.phi_in = 0.4;
    p.t_override = 32;
    for (std::uint64_t seed : {31ULL, 32ULL, 33ULL, 34ULL, 35ULL}) {
        Rng rng(seed);
        ClusterReport r = test_clusterability(g, 2, p, rng);
        CHECK(r.accept);
        CHECK(r.components <= 2);
    }
}

TEST_CASE("edgeless graph rejects a single cluster") {
    Graph g = gen_edgeless(16);
    ClusterParams p;
    p.t_override = 8;
    for (std::uint64_t seed : {41ULL, 42ULL, 43ULL}) {
        Rng rng(seed);
        ClusterReport r = test_clusterability(g, 1, p, rng);
        CHECK_FALSE(r.accept);
        CHECK(r.components >= 2);
    }
}

TEST_CASE("component count matches the similarity pairs") {
    Graph g = gen_dumbbell(8, 3, 1, 5);
    ClusterParams p;
    p.phi_in = 0.4;
    p.t_override = 32;
    Rng rng(55);
    ClusterReport r = test_clusterability(g, 2, p, rng);

    // recompute components by naive closure over the reported pairs
    int n = int(r.samples.size());
    std::vector<int> comp(n);
    for (int i = 0; i < n; ++i) comp[i] = i;
    bool moved = true;
    while (moved) {
        moved = false;
        for (auto [a, b] : r.similar) {
            int lo = std::min(comp[a], comp[b]);
            if (comp[a] != lo || comp[b] != lo) {
                comp[a] = comp[b] = lo;
                moved = true;
            }
        }
    }
    std::set<int> roots;
    for (int i = 0; i < n; ++i) {
        int x = i;
        while (comp[x] != x) x = comp[x];
        roots.insert(x);
    }
    CHECK(int(roots.size()) == r.components);
}

// classical baselines -------------------------------------------------------------

TEST_CASE("collision frequency estimates the squared norm") {
    Rng rng(61);
    CostLedger led;

    CollisionEstimate a = classical_norm_collisions(gen_complete(2), 0, 4, 10000, rng, led);
    CHECK(std::abs(a.estimate - 0.5) < 0.02);
    CHECK(led.classical_rw_steps == 40000);

    CollisionEstimate b = classical_norm_collisions(gen_complete(3), 0, 1, 10000, rng, led);
    CHECK(std::abs(b.estimate - 0.375) < 0.02);

    // walks on an edgeless graph never leave the start
    CollisionEstimate c = classical_norm_collisions(gen_edgeless(5), 2, 7, 50, rng, led);
    CHECK(c.estimate == 1.0);
    CHECK(c.collisions == 50ULL * 49 / 2);

    CHECK_THROWS_AS(classical_norm_collisions(gen_complete(3), 0, 1, 1, rng, led),
                    std::invalid_argument);
}

TEST_CASE("classical tester paper resolution") {
    Graph g = gen_complete(16);
    GRParams p;
    p.mode = TesterMode::paper;
    ResolvedGR r = resolve_gr(g, p);
    CHECK(r.walkers == 6);  // ceil(16^{0.6})
    CHECK(r.threshold == doctest::Approx(3.0 * 15 / 16));
    CHECK(r.trials == 20);
    CHECK(r.t == 39926);
}

TEST_CASE("classical tester desk resolution and overrides") {
    Graph g = gen_complete(16);
    GRParams p = desk_gr_defaults("complete");
    ResolvedGR r = resolve_gr(g, p);
    CHECK(r.t == 8);
    CHECK(r.walkers == 43);  // ceil(8 * 16^{0.6})
    CHECK(r.threshold == doctest::Approx(1.4 * (43.0 * 42 / 2) / 16));
    CHECK(r.trials == 4);

    p.walkers = 10;
    p.threshold = 5.0;
    p.trials = 2;
    ResolvedGR o = resolve_gr(g, p);
    CHECK(o.walkers == 10);
    CHECK(o.threshold == 5.0);
    CHECK(o.trials == 2);
}

TEST_CASE("classical tester verdicts on the stock families") {
    struct Row {
        const char* family;
        Graph g;
        bool want_accept;
    };
    std::vector<Row> table = {
        {"complete", gen_complete(16), true},
        {"regular", gen_random_regular(32, 8, 40), true},
        {"dumbbell", gen_dumbbell(16, 3, 1, 40), false},
        {"edgeless", gen_edgeless(16), false},
    };
    for (const auto& row : table) {
        GRParams p = desk_gr_defaults(row.family);
        int agree = 0;
        for (int run = 0; run < 6; ++run) {
            Rng rng(derive_seed(505, run));
            GRReport rep = classical_gr_expansion(row.g, p, rng);
            if (rep.accept == row.want_accept) ++agree;
        }
        CHECK(agree >= 5);
    }
}

TEST_CASE("single node graph rejects immediately") {
    GRParams p = desk_gr_defaults("edgeless");
    Rng rng(1);
    GRReport rep = classical_gr_expansion(gen_edgeless(1), p, rng);
    CHECK_FALSE(rep.accept);
    REQUIRE(rep.trials.size() == 1);
    CHECK(rep.trials[0].exceeded);
}

TEST_CASE("classical ledger charges every walker step") {
    Graph g = gen_complete(16);
    GRParams p = desk_gr_defaults("complete");
    Rng rng(8);
    GRReport rep = classical_gr_expansion(g, p, rng);
    ResolvedGR r = resolve_gr(g, p);
    // accepting runs play out all trials
    if (rep.accept)
        CHECK(rep.ledger.classical_rw_steps ==
              std::uint64_t(rep.trials.size()) * r.walkers * r.t);
    CHECK(rep.ledger.qw_steps == 0);
}

// scaling -----------------------------------------------------------------------

TEST_CASE("quantum cost grows like the square root of t") {
    Graph g = gen_cycle(32);
    std::vector<int> ts{16, 64, 256, 1024};
    std::vector<double> quantum, classical;
    for (int t : ts) {
        Rng rng(derive_seed(3000, t));
        NormEstimate r = estimate_norm(g, 0, t, 0.1, 0.2, rng);
        quantum.push_back(double(r.ledger.qw_steps));
        CostLedger led;
        classical_norm_collisions(g, 0, t, 2000, rng, led);
        classical.push_back(double(led.classical_rw_steps));
    }
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        double qslope = std::log(quantum[i + 1] / quantum[i]) / std::log(4.0);
        double cslope = std::log(classical[i + 1] / classical[i]) / std::log(4.0);
        CHECK(qslope == doctest::Approx(0.5).epsilon(0.2));
        CHECK(cslope == doctest::Approx(1.0).epsilon(1e-12));
    }
}
