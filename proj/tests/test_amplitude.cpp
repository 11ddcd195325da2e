// amplitude amplification, fixed point variant, estimation, swap test

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "qff/amplitude.hpp"
#include "qff/fastforward.hpp"
#include "qff/graph.hpp"
#include "qff/markov.hpp"
#include "qff/rng.hpp"
#include "qff/vec.hpp"
#include "qff/walk.hpp"

using namespace qff;

namespace {

const double kPi = 3.14159265358979323846;

struct Fixture {
    Graph g;
    TransitionMatrix P;
    WalkOperators ops;
    QFFPipeline pl;
    Preparer A;

    Fixture(const Graph& graph, int t, double eps) : g(graph), P(lazy_walk(g)) {
        ops = build_walk(g, P);
        std::vector<double> v(g.n, 0.0);
        v[0] = 1.0;
        pl = prepare_qff(g, P, v, t, eps);
        A = make_w_tau_preparer(ops, pl.coeffs, v);
    }
};

double flat_norm_of(const QWState& s) { return project_flat(s).norm; }

}  // namespace

TEST_CASE("amplification plan") {
    AmplificationPlan p = plan_amplification(0.5);
    CHECK(p.theta == doctest::Approx(kPi / 6));
    CHECK(p.m == 1);
    CHECK(plan_amplification(1.0).m == 0);
    CHECK(plan_amplification(0.01).m == 78);
    CHECK_THROWS_AS(plan_amplification(0.0), std::invalid_argument);
    CHECK(grover_amplitude(kPi / 6, 1) == doctest::Approx(1.0));
}

TEST_CASE("amplified flat overlap follows the rotation formula") {
    Fixture f(gen_cycle(16), 64, 0.1);
    double theta = std::asin(f.pl.flat_norm);
    for (int m = 0; m <= 20; m += 4) {
        CostLedger led;
        QWState s = amplitude_amplify(f.A, m, led);
        CHECK(flat_norm_of(s) ==
              doctest::Approx(std::abs(grover_amplitude(theta, m))).epsilon(1e-9));
        CHECK(led.qw_steps == f.A.unit_cost * (2 * m + 1));
        CHECK(led.initial_reflections == static_cast<std::uint64_t>(m));
    }
}

TEST_CASE("amplified state keeps the flat direction") {
    Fixture f(gen_complete(4), 8, 0.05);
    CostLedger led;
    AmplificationPlan plan = plan_amplification(f.pl.flat_norm);
    QWState s = amplitude_amplify(f.A, plan.m, led);
    FlatProjection pr = project_flat(s);
    std::vector<cd> got = flat_component(pr.state);
    // prepared flat direction, unit normalized
    std::vector<double> want = f.pl.phi_hat;
    double phase_free = 0;
    for (int u = 0; u < f.g.n; ++u) phase_free += std::abs(std::abs(got[u]) - std::abs(want[u]));
    CHECK(phase_free < 1e-9);
}

TEST_CASE("estimation grid and shot counts") {
    CHECK(ae_grid(0.05) == 190);
    CHECK(ae_grid(0.1) == 96);
    CHECK(ae_grid(0.05) % 2 == 0);
    CHECK(ae_shots(0.05) == 54);
    CHECK(ae_shots(0.5) == 13);
}

TEST_CASE("kernel value") {
    CHECK(kernel_value(0.0, 16) == doctest::Approx(1.0));
    CHECK(kernel_value(1.0 / 16, 16) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(kernel_value(0.5 / 16, 16) == doctest::Approx(std::pow(1.0 / (16 * std::sin(kPi * 0.5 / 16)), 2)));
}

TEST_CASE("outcome sampler matches the exact distribution") {
    const int M = 32;
    const double theta = 0.7;
    const double w = theta / kPi;

    std::vector<double> pmf(M, 0.0);
    double total = 0;
    for (int y = 0; y < M; ++y) {
        pmf[y] = 0.5 * kernel_value(double(y) / M - w, M) +
                 0.5 * kernel_value(double(y) / M - (1.0 - w), M);
        total += pmf[y];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));

    Rng rng(2024);
    const int reps = 200000;
    std::vector<int> hist(M, 0);
    for (int i = 0; i < reps; ++i) ++hist[sample_ae_outcome(M, theta, rng)];
    double tv = 0;
    for (int y = 0; y < M; ++y) tv += std::abs(double(hist[y]) / reps - pmf[y]);
    CHECK(tv / 2 < 0.01);
}

TEST_CASE("estimator hits the additive target") {
    Rng rng(17);
    CostLedger led;
    for (double amp : {0.0, 0.3, 1.0 / std::sqrt(2.0), 1.0}) {
        int bad = 0;
        const int reps = 300;
        for (int i = 0; i < reps; ++i) {
            EstimationResult r = amplitude_estimate(amp, 0.05, 0.05, 1, rng, led);
            if (std::abs(r.estimate - amp) > 0.05) ++bad;
        }
        // failure rate is far below delta in practice; delta is the contract
        CHECK(double(bad) / reps <= 0.05);
    }
}

TEST_CASE("estimator ledger charges the full grover schedule") {
    Rng rng(3);
    CostLedger led;
    EstimationResult r = amplitude_estimate(0.4, 0.1, 0.2, 7, rng, led);
    std::uint64_t T = static_cast<std::uint64_t>(r.T);
    std::uint64_t M = static_cast<std::uint64_t>(r.M);
    CHECK(led.qw_steps == T * 7 * (1 + 2 * M));
    CHECK(led.initial_reflections == T * M);
    CHECK(r.T == ae_shots(0.2));
    CHECK(r.M == ae_grid(0.1));
}

TEST_CASE("flat variant estimates the projection norm") {
    Fixture f(gen_complete(3), 1, 0.3);
    CostLedger led;
    QWState s = f.A.start;
    f.A.apply(s, led);
    double lam = flat_norm_of(s);

    Rng r1(99), r2(99);
    EstimationResult a = amplitude_estimate_flat(s, 0.02, 0.1, 5, r1, led);
    EstimationResult b = amplitude_estimate(lam, 0.02, 0.1, 5, r2, led);
    CHECK(a.estimate == doctest::Approx(b.estimate));
    CHECK(std::abs(a.estimate - lam) < 0.02);
}

TEST_CASE("fixed point plan shapes") {
    FixedPointPlan p = plan_fixed_point(0.3, 0.1);
    CHECK(p.L == static_cast<int>(std::ceil(std::log(20.0) / 0.3)));
    CHECK(static_cast<int>(p.alpha.size()) == p.L);
    for (int j = 1; j <= p.L; ++j)
        CHECK(p.beta[j - 1] == doctest::Approx(p.alpha[p.L - j]));
    CHECK_THROWS_AS(plan_fixed_point(0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(plan_fixed_point_for_L(3, 1.5), std::invalid_argument);
}

TEST_CASE("closed form success tracks the two dimensional recursion") {
    for (double lam : {0.2, 0.3, 0.5, 0.8}) {
        for (double delta : {0.1, 0.5}) {
            FixedPointPlan plan = plan_fixed_point(lam, delta);
            TwoDState st = fixed_point_2d(lam, plan);
            double closed = fixed_point_success(lam, plan.L, delta);
            CHECK(std::norm(st.good) == doctest::Approx(closed).epsilon(1e-9));
            CHECK(std::norm(st.good) + std::norm(st.bad) == doctest::Approx(1.0).epsilon(1e-9));
            // the whole point: at or above the planned overlap, success >= 1 - delta^2
            CHECK(closed >= 1.0 - delta * delta - 1e-12);
        }
    }
}

TEST_CASE("phased pipeline agrees with the idealized rotation") {
    Fixture f(gen_cycle(12), 32, 0.1);
    double lam = f.pl.flat_norm;
    for (double delta : {0.1, 0.5}) {
        FixedPointPlan plan = plan_fixed_point(std::min(lam, 0.9), delta);

        CostLedger la, lb;
        QWState sa = fixed_point_amplify(f.A, plan, FixedPointMode::phased, la);
        QWState sb = fixed_point_amplify(f.A, plan, FixedPointMode::idealized, lb);

        double pa = flat_norm_of(sa);
        double pb = flat_norm_of(sb);
        double closed = std::sqrt(fixed_point_success(lam, plan.L, delta));
        CHECK(pa == doctest::Approx(closed).epsilon(1e-9));
        CHECK(pb == doctest::Approx(closed).epsilon(1e-9));
        CHECK(pa * pa >= 1.0 - delta * delta - 1e-9);

        // identical cost accounting in both modes
        CHECK(la.qw_steps == lb.qw_steps);
        CHECK(la.qw_steps == f.A.unit_cost * (2 * plan.L + 1));
        CHECK(la.initial_reflections == static_cast<std::uint64_t>(plan.L));
        CHECK(lb.initial_reflections == la.initial_reflections);
    }
}

TEST_CASE("swap test probabilities") {
    QWState u = QWState::flat_basis(3, 0);
    QWState v = QWState::flat_basis(3, 1);

    SwapTestState orth = swap_test_state(u, v);
    CHECK(swap_p1(orth) == doctest::Approx(0.5));
    CHECK(swap_overlap_p1(u, v) == doctest::Approx(0.5));

    SwapTestState same = swap_test_state(u, u);
    CHECK(swap_p1(same) == doctest::Approx(0.0));

    // overlap one half: p1 = (1 - 1/4)/2
    QWState w = u;
    for (auto& a : w.amp) a *= 0.5;
    w.amp[w.idx(1, 3, 0)] = std::sqrt(3.0) / 2.0;
    SwapTestState half = swap_test_state(u, w);
    CHECK(swap_p1(half) == doctest::Approx(3.0 / 8));
    CHECK(swap_overlap_p1(u, w) == doctest::Approx(3.0 / 8));

    // symmetric in the arguments
    CHECK(swap_p1(swap_test_state(w, u)) == doctest::Approx(swap_p1(half)));
}

TEST_CASE("swap test on walked states matches the analytic value") {
    Fixture f(gen_dumbbell(4, 3, 1, 9), 8, 0.1);
    CostLedger led;
    QWState a = f.A.start;
    f.A.apply(a, led);

    std::vector<double> v2(f.g.n, 0.0);
    v2[5] = 1.0;
    Preparer B = make_w_tau_preparer(f.ops, f.pl.coeffs, v2);
    QWState b = B.start;
    B.apply(b, led);

    SwapTestState st = swap_test_state(a, b);
    CHECK(swap_p1(st) == doctest::Approx(swap_overlap_p1(a, b)).epsilon(1e-12));
    double ov = std::abs(cdot(a.amp, b.amp));
    CHECK(swap_p1(st) == doctest::Approx((1 - ov * ov) / 2).epsilon(1e-12));
}
