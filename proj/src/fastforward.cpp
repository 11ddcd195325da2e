#include "qff/fastforward.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "qff/vec.hpp"

namespace qff {

std::vector<double> lcu_flat_vector(const Discriminant& D, const FFCoefficients& c,
                                    const std::vector<double>& v) {
    std::vector<double> acc(v.size(), 0.0);
    axpy(acc, c.q[0], v);
    if (c.tau == 0) return acc;
    std::vector<double> prev = v;
    std::vector<double> cur = D.apply(v);
    if (c.tau >= 1 && c.q[1] != 0.0) axpy(acc, c.q[1], cur);
    for (int l = 2; l <= c.tau; ++l) {
        std::vector<double> next = D.apply(cur);
        for (int i = 0; i < D.n; ++i) next[i] = 2.0 * next[i] - prev[i];
        prev = std::move(cur);
        cur = std::move(next);
        if (c.q[l] != 0.0) axpy(acc, c.q[l], cur);
    }
    return acc;
}

QFFPipeline prepare_qff(const Graph& g, const TransitionMatrix& P, const std::vector<double>& v,
                        int t, double eps, bool oracle_mode) {
    if (static_cast<int>(v.size()) != g.n) throw std::invalid_argument("prepare_qff: bad v");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("prepare_qff: eps in (0,1)");
    if (t < 0) throw std::invalid_argument("prepare_qff: t >= 0");
    double nv = norm2(v);
    if (std::abs(nv - 1.0) > 1e-9) throw std::invalid_argument("prepare_qff: v not unit");

    QFFPipeline pl;
    pl.t = t;
    pl.eps = eps;
    pl.oracle_mode = oracle_mode;
    pl.v = v;

    Discriminant D = discriminant(P);
    std::vector<double> dtv = exact_power_apply(D, t, v);
    pl.norm_dt = norm2(dtv);
    pl.dtv_hat = dtv;
    if (pl.norm_dt > 0.0) scale(pl.dtv_hat, 1.0 / pl.norm_dt);

    double base = oracle_mode ? pl.norm_dt : 1.0 / std::sqrt(static_cast<double>(g.n));
    if (!(base > 0.0)) throw std::invalid_argument("prepare_qff: D^t v vanishes");
    pl.eps_prime = base * eps / 2.0;
    pl.coeffs = make_ff_coefficients(t, pl.eps_prime);

    std::vector<double> phi = lcu_flat_vector(D, pl.coeffs, v);
    pl.flat_norm = norm2(phi);
    pl.phi_hat = phi;
    if (pl.flat_norm > 0.0) scale(pl.phi_hat, 1.0 / pl.flat_norm);

    auto plan = plan_amplification(pl.flat_norm);
    pl.m = plan.m;
    pl.success_plain = pl.flat_norm * pl.flat_norm;
    pl.success_amplified = std::pow(grover_amplitude(plan.theta, pl.m), 2);

    std::vector<double> diff = pl.phi_hat;
    axpy(diff, -1.0, pl.dtv_hat);
    pl.dist = norm2(diff);
    return pl;
}

namespace {

QFFRun base_run(const QFFPipeline& pl, FFAlgo algo) {
    QFFRun r;
    r.algo = algo;
    r.t = pl.t;
    r.eps = pl.eps;
    r.eps_prime = pl.eps_prime;
    r.tau = pl.coeffs.tau;
    r.m = pl.m;
    r.norm_dt = pl.norm_dt;
    return r;
}

}  // namespace

QFFRun sample_qff(const QFFPipeline& pl, Rng& rng) {
    QFFRun r = base_run(pl, FFAlgo::plain);
    r.predicted_success = pl.success_plain;
    r.ledger.qw_steps = static_cast<std::uint64_t>(pl.coeffs.tau);
    r.success = rng.uniform01() < pl.success_plain;
    if (r.success) {
        r.output = pl.phi_hat;
        r.dist_to_oracle = pl.dist;
    }
    return r;
}

QFFRun sample_qffg(const QFFPipeline& pl, Rng& rng) {
    QFFRun r = base_run(pl, FFAlgo::amplified);
    r.predicted_success = pl.success_amplified;
    r.ledger.qw_steps =
        static_cast<std::uint64_t>(pl.m) * 2 * pl.coeffs.tau + pl.coeffs.tau;
    r.ledger.initial_reflections = static_cast<std::uint64_t>(pl.m);
    r.success = rng.uniform01() < pl.success_amplified;
    if (r.success) {
        r.output = pl.phi_hat;
        r.dist_to_oracle = pl.dist;
    }
    return r;
}

QFFRun qff(const Graph& g, const TransitionMatrix& P, const std::vector<double>& v,
           int t, double eps, Rng& rng, bool oracle_mode) {
    return sample_qff(prepare_qff(g, P, v, t, eps, oracle_mode), rng);
}

QFFRun qffg(const Graph& g, const TransitionMatrix& P, const std::vector<double>& v,
            int t, double eps, Rng& rng, bool oracle_mode) {
    return sample_qffg(prepare_qff(g, P, v, t, eps, oracle_mode), rng);
}

LasVegasResult qff_las_vegas(const QFFPipeline& pl, Rng& rng, int max_attempts) {
    LasVegasResult res;
    for (int k = 0; k < max_attempts; ++k) {
        QFFRun r = sample_qffg(pl, rng);
        res.attempts = k + 1;
        res.total.qw_steps += r.ledger.qw_steps;
        res.total.initial_reflections += r.ledger.initial_reflections;
        if (r.success) {
            res.run = r;
            return res;
        }
    }
    throw std::runtime_error("qff_las_vegas: attempt budget exhausted");
}

QFFDiagnostics qff_diagnostics(const QFFRun& run) {
    QFFDiagnostics d;
    d.dist_to_oracle = run.dist_to_oracle;
    d.predicted_success = run.predicted_success;
    std::uint64_t tau = static_cast<std::uint64_t>(run.tau);
    d.expected_qw_steps =
        run.algo == FFAlgo::plain ? tau : static_cast<std::uint64_t>(run.m) * 2 * tau + tau;
    d.ledger_matches = run.ledger.qw_steps == d.expected_qw_steps;
    return d;
}

std::string run_to_json(const QFFRun& run) {
    nlohmann::json j;
    j["algo"] = run.algo == FFAlgo::plain ? "qff" : "qffg";
    j["t"] = run.t;
    j["eps"] = run.eps;
    j["eps_prime"] = run.eps_prime;
    j["tau"] = run.tau;
    j["m"] = run.m;
    j["success"] = run.success;
    j["predicted_success"] = run.predicted_success;
    j["norm_dt"] = run.norm_dt;
    j["dist_to_oracle"] = run.dist_to_oracle;
    j["ledger"] = {{"qw_steps", run.ledger.qw_steps},
                   {"initial_reflections", run.ledger.initial_reflections},
                   {"classical_rw_steps", run.ledger.classical_rw_steps}};
    if (run.success) j["output"] = run.output;
    return j.dump();
}

}  // namespace qff
