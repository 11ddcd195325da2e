#include "qff/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "qff/fastforward.hpp"
#include "qff/markov.hpp"
#include "qff/report.hpp"
#include "qff/rng.hpp"
#include "qff/testers.hpp"
#include "qff/vec.hpp"

namespace qff {

namespace {

constexpr std::uint64_t kGraphStream = 0x67726170;  // distinct sub-seed lane

long long parse_ll(const std::string& s, const char* what) {
    std::size_t used = 0;
    try {
        long long x = std::stoll(s, &used);
        if (used == s.size()) return x;
    } catch (const std::out_of_range&) {
        throw std::invalid_argument(std::string(what) + ": integer out of range: " + s);
    } catch (const std::invalid_argument&) {
    }
    throw std::invalid_argument(std::string(what) + ": not an integer: " + s);
}

std::vector<long long> parse_ll_list(const std::string& s) {
    std::vector<long long> xs;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::invalid_argument("bad integer list: " + s);
        xs.push_back(parse_ll(item, "bad integer list"));
    }
    return xs;
}

std::vector<double> basis_vec(int n, int s) {
    std::vector<double> e(n, 0.0);
    e[s] = 1.0;
    return e;
}

void check_range(const Graph& g, int node, const char* flag) {
    if (node < 0 || node >= g.n)
        throw std::invalid_argument(std::string(flag) + " out of range for N=" +
                                    std::to_string(g.n));
}

void emit(const nlohmann::json& rep, const std::string& out_path, std::ostream& out) {
    std::string text = rep.dump(2) + "\n";
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::string path = out_path;
    const char* dir = std::getenv("QFFLAB_OUT_DIR");
    if (dir && *dir && path.front() != '/') path = std::string(dir) + "/" + path;
    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot open output file " + path);
    f << text;
}

void emit_text(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::string path = out_path;
    const char* dir = std::getenv("QFFLAB_OUT_DIR");
    if (dir && *dir && path.front() != '/') path = std::string(dir) + "/" + path;
    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot open output file " + path);
    f << text;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

// fastforward ---------------------------------------------------------------

struct FFOpts {
    std::string graph;
    int t = 0;
    double eps = 0.1;
    std::string algo = "qff";
    int trials = 1;
    std::uint64_t seed = 0;
    int start = 0;
    bool blind = false;
    int max_attempts = 1000;
    std::string out_path;
};

void cmd_fastforward(const FFOpts& o, std::ostream& out) {
    Timer timer;
    if (o.t < 0) throw std::invalid_argument("--t must be >= 0");
    if (!(o.eps > 0.0 && o.eps < 1.0)) throw std::invalid_argument("--eps must be in (0,1)");
    if (o.trials < 1) throw std::invalid_argument("--trials must be >= 1");
    Graph g = resolve_graph(o.graph, o.seed);
    check_range(g, o.start, "--start");
    TransitionMatrix P = lazy_walk(g);
    QFFPipeline pl = prepare_qff(g, P, basis_vec(g.n, o.start), o.t, o.eps, !o.blind);

    nlohmann::json cfg{{"graph", o.graph},   {"t", o.t},         {"eps", o.eps},
                       {"algo", o.algo},     {"trials", o.trials}, {"start", o.start},
                       {"oracle_mode", !o.blind}};
    auto rep = report_envelope("fastforward", cfg, o.seed);
    rep["pipeline"] = {{"tau", pl.coeffs.tau},
                       {"eps_prime", pl.eps_prime},
                       {"m", pl.m},
                       {"norm_dt", pl.norm_dt},
                       {"flat_norm", pl.flat_norm},
                       {"success_plain", pl.success_plain},
                       {"success_amplified", pl.success_amplified}};

    auto trials = nlohmann::json::array();
    CostLedger total;
    std::vector<double> succ, dists, qws;
    for (int i = 0; i < o.trials; ++i) {
        Rng rng(derive_seed(o.seed, std::uint64_t(i)));
        nlohmann::json tr{{"trial", i}};
        if (o.algo == "lasvegas") {
            LasVegasResult lv = qff_las_vegas(pl, rng, o.max_attempts);
            total.add(lv.total);
            tr["attempts"] = lv.attempts;
            tr["success"] = true;
            tr["dist"] = lv.run.dist_to_oracle;
            tr["qw_steps"] = lv.total.qw_steps;
            succ.push_back(1.0);
            dists.push_back(lv.run.dist_to_oracle);
            qws.push_back(double(lv.total.qw_steps));
        } else {
            QFFRun r = o.algo == "qffg" ? sample_qffg(pl, rng) : sample_qff(pl, rng);
            total.add(r.ledger);
            tr["success"] = r.success;
            tr["dist"] = r.dist_to_oracle;
            tr["qw_steps"] = r.ledger.qw_steps;
            succ.push_back(r.success ? 1.0 : 0.0);
            if (r.success) dists.push_back(r.dist_to_oracle);
            qws.push_back(double(r.ledger.qw_steps));
        }
        trials.push_back(tr);
    }
    rep["trials"] = trials;
    rep["aggregates"] = {{"success", aggregate_to_json(aggregate(succ))},
                         {"dist_on_success", aggregate_to_json(aggregate(dists))},
                         {"qw_steps", aggregate_to_json(aggregate(qws))}};
    rep["ledger"] = ledger_to_json(total, g.d);
    rep["timing_ms"] = timer.ms();
    emit(rep, o.out_path, out);
}

// estimate -------------------------------------------------------------------

struct EstOpts {
    std::string graph;
    int s = 0;
    int u = -1, v = -1;
    int t = 0;
    double eps = 0.05;
    double delta = 0.05;
    int trials = 1;
    std::uint64_t seed = 0;
    std::string out_path;
};

void cmd_estimate(const std::string& kind, const EstOpts& o, std::ostream& out) {
    Timer timer;
    if (o.t < 0) throw std::invalid_argument("--t must be >= 0");
    if (o.trials < 1) throw std::invalid_argument("--trials must be >= 1");
    Graph g = resolve_graph(o.graph, o.seed);
    TransitionMatrix P = lazy_walk(g);
    Discriminant D = discriminant(P);

    nlohmann::json cfg{{"graph", o.graph}, {"t", o.t},           {"eps", o.eps},
                       {"delta", o.delta}, {"trials", o.trials}, {"kind", kind}};
    double truth = 0.0;
    if (kind == "distance") {
        check_range(g, o.u, "--u");
        check_range(g, o.v, "--v");
        cfg["u"] = o.u;
        cfg["v"] = o.v;
        auto du = exact_power_apply(D, o.t, basis_vec(g.n, o.u));
        auto dv = exact_power_apply(D, o.t, basis_vec(g.n, o.v));
        for (int i = 0; i < g.n; ++i) truth += (du[i] - dv[i]) * (du[i] - dv[i]);
    } else {
        check_range(g, o.s, "--s");
        cfg["s"] = o.s;
        truth = norm2(exact_power_apply(D, o.t, basis_vec(g.n, o.s)));
    }
    auto rep = report_envelope("estimate-" + kind, cfg, o.seed);
    rep["oracle"] = truth;

    auto trials = nlohmann::json::array();
    CostLedger total;
    std::vector<double> ests, errs, within;
    for (int i = 0; i < o.trials; ++i) {
        Rng rng(derive_seed(o.seed, std::uint64_t(i)));
        nlohmann::json tr{{"trial", i}};
        double a, tol;
        if (kind == "distance") {
            DistanceEstimate de = estimate_distance(g, o.u, o.v, o.t, o.eps, o.delta, rng);
            total.add(de.ledger);
            a = de.a;
            tol = o.eps;
            tr["alpha"] = de.alpha;
            tr["beta"] = de.beta;
            tr["gamma"] = de.gamma;
            tr["middle_band"] = de.middle_band;
            tr["qw_steps"] = de.ledger.qw_steps;
        } else if (kind == "norm-mult") {
            NormEstimate ne = estimate_norm_multiplicative(g, o.s, o.t, o.eps, o.delta, rng);
            total.add(ne.ledger);
            a = ne.a;
            tol = o.eps * truth;
            tr["abort_level"] = ne.abort_level;
            tr["warning"] = ne.warning;
            tr["qw_steps"] = ne.ledger.qw_steps;
        } else {
            NormEstimate ne = estimate_norm(g, o.s, o.t, o.eps, o.delta, rng);
            total.add(ne.ledger);
            a = ne.a;
            tol = o.eps;
            tr["tau"] = ne.tau;
            tr["qw_steps"] = ne.ledger.qw_steps;
        }
        double err = std::abs(a - truth);
        tr["estimate"] = a;
        tr["error"] = err;
        trials.push_back(tr);
        ests.push_back(a);
        errs.push_back(err);
        within.push_back(err <= tol ? 1.0 : 0.0);
    }
    rep["trials"] = trials;
    rep["aggregates"] = {{"estimate", aggregate_to_json(aggregate(ests))},
                         {"error", aggregate_to_json(aggregate(errs))},
                         {"within_tolerance", aggregate_to_json(aggregate(within))}};
    rep["ledger"] = ledger_to_json(total, g.d);
    rep["timing_ms"] = timer.ms();
    emit(rep, o.out_path, out);
}

// test ------------------------------------------------------------------------

struct TestOpts {
    std::string graph;
    double upsilon = 0.5;
    double eps = 0.1;
    double mu = 0.1;
    std::string mode = "desk";
    int t = -1;
    double eps_prime = -1.0;
    int inner_trials = -1;
    double delta = -1.0;
    double m_threshold = -1.0;
    int u = -1, v = -1;
    int k = 1;
    double phi_in = 0.5;
    double cprime = 1.0;
    int t_override = -1;
    int walkers = -1;
    double threshold = -1.0;
    double walker_mult = 8.0;
    double threshold_mult = 1.4;
    int runs = 1;
    std::uint64_t seed = 0;
    std::string out_path;
};

const char* verdict_name(PairVerdict v) {
    return v == PairVerdict::same_cluster ? "same-cluster" : "different-cluster";
}

void cmd_test(const std::string& kind, const TestOpts& o, std::ostream& out) {
    Timer timer;
    if (o.runs < 1) throw std::invalid_argument("--runs must be >= 1");
    Graph g = resolve_graph(o.graph, o.seed);
    nlohmann::json cfg{{"graph", o.graph}, {"kind", kind}, {"runs", o.runs}};
    auto trials = nlohmann::json::array();
    CostLedger total;
    std::vector<double> accepts;
    nlohmann::json resolved;

    if (kind == "expansion" || kind == "classical-gr") {
        cfg["upsilon"] = o.upsilon;
        cfg["eps"] = o.eps;
        cfg["mu"] = o.mu;
        cfg["mode"] = o.mode;
        bool desk = o.mode == "desk";
        if (!desk && o.mode != "paper") throw std::invalid_argument("--mode is paper or desk");
        std::string fam = generator_family(o.graph);
        if (kind == "expansion") {
            ExpansionParams p;
            p.upsilon = o.upsilon;
            p.eps = o.eps;
            p.mu = o.mu;
            p.mode = desk ? TesterMode::desk : TesterMode::paper;
            p.t = o.t;
            p.eps_prime = o.eps_prime;
            p.trials = o.inner_trials;
            p.delta = o.delta;
            p.m_threshold = o.m_threshold;
            if (desk && (p.t <= 0 || p.eps_prime <= 0.0 || p.trials <= 0 || p.delta <= 0.0)) {
                if (fam.empty())
                    throw std::invalid_argument(
                        "desk mode on a file graph needs --t, --eps-prime, --inner-trials, "
                        "--delta");
                p = desk_expansion_defaults(fam, p);
            }
            ResolvedExpansion r = resolve_expansion(g, p);
            resolved = {{"t", r.t},
                        {"eps_prime", r.eps_prime},
                        {"trials", r.trials},
                        {"delta", r.delta},
                        {"m_threshold", r.m_threshold}};
            for (int i = 0; i < o.runs; ++i) {
                Rng rng(derive_seed(o.seed, std::uint64_t(i)));
                ExpansionReport er = test_expansion(g, p, rng);
                total.add(er.ledger);
                auto recs = nlohmann::json::array();
                for (const auto& tr : er.trials)
                    recs.push_back({{"node", tr.node},
                                    {"estimate", tr.estimate},
                                    {"threshold", tr.threshold},
                                    {"exceeded", tr.exceeded}});
                trials.push_back({{"run", i},
                                  {"accept", er.accept},
                                  {"degree_warning", er.degree_warning},
                                  {"trials", recs},
                                  {"qw_steps", er.ledger.qw_steps}});
                accepts.push_back(er.accept ? 1.0 : 0.0);
            }
        } else {
            GRParams p;
            p.upsilon = o.upsilon;
            p.eps = o.eps;
            p.mu = o.mu;
            p.mode = desk ? TesterMode::desk : TesterMode::paper;
            p.t = o.t;
            p.walkers = o.walkers;
            p.trials = o.inner_trials;
            p.threshold = o.threshold;
            p.walker_mult = o.walker_mult;
            p.threshold_mult = o.threshold_mult;
            if (desk && p.t <= 0) {
                if (fam.empty()) throw std::invalid_argument("desk mode on a file graph needs --t");
                p = desk_gr_defaults(fam, p);
            }
            ResolvedGR r = resolve_gr(g, p);
            resolved = {{"t", r.t},
                        {"walkers", r.walkers},
                        {"trials", r.trials},
                        {"threshold", r.threshold}};
            for (int i = 0; i < o.runs; ++i) {
                Rng rng(derive_seed(o.seed, std::uint64_t(i)));
                GRReport gr = classical_gr_expansion(g, p, rng);
                total.add(gr.ledger);
                auto recs = nlohmann::json::array();
                for (const auto& tr : gr.trials)
                    recs.push_back({{"node", tr.node},
                                    {"collisions", tr.collisions},
                                    {"estimate", tr.estimate},
                                    {"exceeded", tr.exceeded}});
                trials.push_back({{"run", i},
                                  {"accept", gr.accept},
                                  {"trials", recs},
                                  {"classical_rw_steps", gr.ledger.classical_rw_steps}});
                accepts.push_back(gr.accept ? 1.0 : 0.0);
            }
        }
    } else if (kind == "classify" || kind == "clusterability") {
        ClusterParams cp;
        cp.k = o.k;
        cp.phi_in = o.phi_in;
        cp.cprime = o.cprime;
        cp.t_override = o.t_override;
        cfg["k"] = o.k;
        cfg["phi_in"] = o.phi_in;
        cfg["cprime"] = o.cprime;
        if (o.t_override > 0) cfg["t_override"] = o.t_override;
        if (kind == "classify") {
            check_range(g, o.u, "--u");
            check_range(g, o.v, "--v");
            cfg["u"] = o.u;
            cfg["v"] = o.v;
            for (int i = 0; i < o.runs; ++i) {
                Rng rng(derive_seed(o.seed, std::uint64_t(i)));
                ClassifyReport cr = classify_nodes(g, o.u, o.v, cp, rng);
                total.add(cr.ledger);
                trials.push_back({{"run", i},
                                  {"verdict", verdict_name(cr.verdict)},
                                  {"estimate", cr.estimate},
                                  {"midpoint", cr.midpoint},
                                  {"t", cr.t},
                                  {"middle_band", cr.middle_band},
                                  {"qw_steps", cr.ledger.qw_steps}});
                accepts.push_back(cr.verdict == PairVerdict::same_cluster ? 1.0 : 0.0);
            }
        } else {
            for (int i = 0; i < o.runs; ++i) {
                Rng rng(derive_seed(o.seed, std::uint64_t(i)));
                ClusterReport cr = test_clusterability(g, o.k, cp, rng);
                total.add(cr.ledger);
                trials.push_back({{"run", i},
                                  {"accept", cr.accept},
                                  {"components", cr.components},
                                  {"samples", cr.samples},
                                  {"qw_steps", cr.ledger.qw_steps}});
                accepts.push_back(cr.accept ? 1.0 : 0.0);
            }
        }
    } else {
        throw std::invalid_argument("unknown test kind " + kind);
    }

    auto rep = report_envelope("test-" + kind, cfg, o.seed);
    if (!resolved.is_null()) rep["resolved"] = resolved;
    rep["trials"] = trials;
    const char* rate_name = kind == "classify" ? "same_cluster_rate" : "accept_rate";
    rep["aggregates"] = {{rate_name, aggregate_to_json(aggregate(accepts))}};
    rep["ledger"] = ledger_to_json(total, g.d);
    rep["timing_ms"] = timer.ms();
    emit(rep, o.out_path, out);
}

// sweep ------------------------------------------------------------------------

struct SweepOpts {
    std::string graph;
    int s = 0;
    std::string t_grid;
    double eps = 0.05;
    double delta = 0.05;
    int walkers = 256;
    int trials = 8;
    std::uint64_t seed = 0;
    std::string out_path;
};

void cmd_sweep(const SweepOpts& o, std::ostream& out) {
    if (o.trials < 1) throw std::invalid_argument("--trials must be >= 1");
    if (o.walkers < 2) throw std::invalid_argument("--walkers must be >= 2");
    Graph g = resolve_graph(o.graph, o.seed);
    check_range(g, o.s, "--s");
    std::vector<int> grid = parse_t_grid(o.t_grid);
    TransitionMatrix P = lazy_walk(g);
    Discriminant D = discriminant(P);

    std::vector<std::vector<double>> rows;
    for (std::size_t pt = 0; pt < grid.size(); ++pt) {
        int t = grid[pt];
        double oracle = norm2(exact_power_apply(D, t, basis_vec(g.n, o.s)));
        std::uint64_t pseed = derive_seed(o.seed, std::uint64_t(pt));
        double est_sum = 0.0, qw_sum = 0.0, cls_est_sum = 0.0;
        for (int i = 0; i < o.trials; ++i) {
            Rng rng(derive_seed(pseed, std::uint64_t(i)));
            NormEstimate ne = estimate_norm(g, o.s, t, o.eps, o.delta, rng);
            est_sum += ne.a;
            qw_sum += double(ne.ledger.qw_steps);
            Rng crng(derive_seed(pseed, 0x10000ULL + std::uint64_t(i)));
            CostLedger cl;
            CollisionEstimate ce = classical_norm_collisions(g, o.s, t, o.walkers, crng, cl);
            cls_est_sum += ce.estimate;
        }
        double est = est_sum / o.trials;
        rows.push_back({double(t), est, oracle, std::abs(est - oracle), qw_sum / o.trials,
                        double(o.walkers) * t, cls_est_sum / o.trials});
    }
    std::string csv = csv_render({"t", "estimate", "oracle", "error", "qw_steps",
                                  "classical_rw_steps", "classical_estimate"},
                                 rows);
    emit_text(csv, o.out_path, out);
}

}  // namespace

std::string generator_family(const std::string& spec) {
    auto pos = spec.find(':');
    if (pos == std::string::npos) return "";
    std::string name = spec.substr(0, pos);
    if (name == "cycle" || name == "complete" || name == "edgeless" || name == "regular" ||
        name == "dumbbell")
        return name;
    return "";
}

Graph resolve_graph(const std::string& spec, std::uint64_t seed) {
    std::string fam = generator_family(spec);
    if (fam.empty()) return load_graph(spec);
    auto xs = parse_ll_list(spec.substr(spec.find(':') + 1));
    auto need = [&](std::size_t lo, std::size_t hi) {
        if (xs.size() < lo || xs.size() > hi)
            throw std::invalid_argument("graph spec " + spec + ": wrong argument count");
    };
    if (fam == "cycle") {
        need(1, 1);
        return gen_cycle(int(xs[0]));
    }
    if (fam == "complete") {
        need(1, 1);
        return gen_complete(int(xs[0]));
    }
    if (fam == "edgeless") {
        need(1, 1);
        return gen_edgeless(int(xs[0]));
    }
    if (fam == "regular") {
        need(2, 3);
        std::uint64_t gs = xs.size() == 3 ? std::uint64_t(xs[2]) : derive_seed(seed, kGraphStream);
        return gen_random_regular(int(xs[0]), int(xs[1]), gs);
    }
    need(3, 4);
    std::uint64_t gs = xs.size() == 4 ? std::uint64_t(xs[3]) : derive_seed(seed, kGraphStream);
    return gen_dumbbell(int(xs[0]), int(xs[1]), int(xs[2]), gs);
}

std::vector<int> parse_t_grid(const std::string& spec) {
    std::vector<int> grid;
    if (spec.find(':') != std::string::npos) {
        auto p1 = spec.find(':');
        auto p2 = spec.find(':', p1 + 1);
        if (p2 == std::string::npos)
            throw std::invalid_argument("t grid: expected lo:hi:xK, got " + spec);
        long long lo = parse_ll(spec.substr(0, p1), "t grid");
        long long hi = parse_ll(spec.substr(p1 + 1, p2 - p1 - 1), "t grid");
        std::string f = spec.substr(p2 + 1);
        if (f.size() < 2 || f[0] != 'x')
            throw std::invalid_argument("t grid: expected lo:hi:xK, got " + spec);
        long long k = parse_ll(f.substr(1), "t grid");
        if (lo < 0 || hi < lo || k < 2) throw std::invalid_argument("t grid: bad range " + spec);
        for (long long t = lo; t <= hi; t *= k) {
            grid.push_back(int(t));
            if (t == 0) break;
        }
    } else {
        for (long long x : parse_ll_list(spec)) {
            if (x < 0) throw std::invalid_argument("t grid: negative entry");
            grid.push_back(int(x));
        }
    }
    if (grid.empty()) throw std::invalid_argument("t grid: empty");
    return grid;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"seedable simulator and verification lab for quantum-walk fast-forwarding"};
    app.require_subcommand(1);

    FFOpts ff;
    auto* c_ff = app.add_subcommand("fastforward", "run qff / qffg / las-vegas trials");
    c_ff->add_option("--graph", ff.graph, "generator spec or graph file")->required();
    c_ff->add_option("--t", ff.t, "walk length")->required();
    c_ff->add_option("--eps", ff.eps, "accuracy");
    c_ff->add_option("--algo", ff.algo, "qff | qffg | lasvegas")
        ->check(CLI::IsMember({"qff", "qffg", "lasvegas"}));
    c_ff->add_option("--trials", ff.trials, "independent trials");
    c_ff->add_option("--seed", ff.seed, "master seed")->required();
    c_ff->add_option("--start", ff.start, "start node");
    c_ff->add_flag("--blind", ff.blind, "use the 1/sqrt(N) floor instead of the exact norm");
    c_ff->add_option("--max-attempts", ff.max_attempts, "las-vegas retry cap");
    c_ff->add_option("--out", ff.out_path, "write JSON here instead of stdout");

    EstOpts est;
    auto* c_est = app.add_subcommand("estimate", "norm / distance estimators");
    c_est->require_subcommand(1);
    std::vector<CLI::App*> est_subs;
    for (const char* name : {"norm", "norm-mult", "distance"}) {
        auto* sub = c_est->add_subcommand(name);
        sub->add_option("--graph", est.graph, "generator spec or graph file")->required();
        sub->add_option("--t", est.t, "walk length")->required();
        sub->add_option("--eps", est.eps, "target error");
        sub->add_option("--delta", est.delta, "failure probability");
        sub->add_option("--trials", est.trials, "independent trials");
        sub->add_option("--seed", est.seed, "master seed")->required();
        sub->add_option("--out", est.out_path, "write JSON here instead of stdout");
        if (std::string(name) == "distance") {
            sub->add_option("--u", est.u, "first node")->required();
            sub->add_option("--v", est.v, "second node")->required();
        } else {
            sub->add_option("--s", est.s, "start node");
        }
        est_subs.push_back(sub);
    }

    TestOpts to;
    auto* c_test = app.add_subcommand("test", "property testers");
    c_test->require_subcommand(1);
    std::vector<CLI::App*> test_subs;
    for (const char* name : {"expansion", "classify", "clusterability", "classical-gr"}) {
        auto* sub = c_test->add_subcommand(name);
        sub->add_option("--graph", to.graph, "generator spec or graph file")->required();
        sub->add_option("--runs", to.runs, "independent tester runs");
        sub->add_option("--seed", to.seed, "master seed")->required();
        sub->add_option("--out", to.out_path, "write JSON here instead of stdout");
        std::string n = name;
        if (n == "expansion" || n == "classical-gr") {
            sub->add_option("--upsilon", to.upsilon, "expansion parameter");
            sub->add_option("--eps", to.eps, "farness");
            sub->add_option("--mu", to.mu, "runtime exponent");
            sub->add_option("--mode", to.mode, "paper | desk")
                ->check(CLI::IsMember({"paper", "desk"}));
            sub->add_option("--t", to.t, "walk length (desk)");
            sub->add_option("--inner-trials", to.inner_trials, "trials inside one tester run");
        }
        if (n == "expansion") {
            sub->add_option("--eps-prime", to.eps_prime, "norm estimate error (desk)");
            sub->add_option("--delta", to.delta, "per-estimate failure probability (desk)");
            sub->add_option("--m-threshold", to.m_threshold, "mixing threshold override");
        }
        if (n == "classical-gr") {
            sub->add_option("--walkers", to.walkers, "walkers per trial");
            sub->add_option("--threshold", to.threshold, "collision threshold override");
            sub->add_option("--walker-mult", to.walker_mult, "desk walker multiplier");
            sub->add_option("--threshold-mult", to.threshold_mult, "desk threshold multiplier");
        }
        if (n == "classify" || n == "clusterability") {
            sub->add_option("--k", to.k, "cluster count");
            sub->add_option("--phi-in", to.phi_in, "inner conductance bound");
            sub->add_option("--cprime", to.cprime, "walk length constant");
            sub->add_option("--t-override", to.t_override, "walk length override");
        }
        if (n == "classify") {
            sub->add_option("--u", to.u, "first node")->required();
            sub->add_option("--v", to.v, "second node")->required();
        }
        test_subs.push_back(sub);
    }

    SweepOpts sw;
    auto* c_sw = app.add_subcommand("sweep", "norm-estimation scaling sweep, CSV out");
    c_sw->add_option("--graph", sw.graph, "generator spec or graph file")->required();
    c_sw->add_option("--s", sw.s, "start node");
    c_sw->add_option("--t-grid", sw.t_grid, "list 4,16,64 or range lo:hi:xK")->required();
    c_sw->add_option("--eps", sw.eps, "norm estimate error");
    c_sw->add_option("--delta", sw.delta, "failure probability");
    c_sw->add_option("--walkers", sw.walkers, "classical walkers per trial");
    c_sw->add_option("--trials", sw.trials, "trials per grid point");
    c_sw->add_option("--seed", sw.seed, "master seed")->required();
    c_sw->add_option("--out", sw.out_path, "write CSV here instead of stdout");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (c_ff->parsed()) cmd_fastforward(ff, out);
        if (c_est->parsed()) {
            const char* names[] = {"norm", "norm-mult", "distance"};
            for (std::size_t i = 0; i < est_subs.size(); ++i)
                if (est_subs[i]->parsed()) cmd_estimate(names[i], est, out);
        }
        if (c_test->parsed()) {
            const char* names[] = {"expansion", "classify", "clusterability", "classical-gr"};
            for (std::size_t i = 0; i < test_subs.size(); ++i)
                if (test_subs[i]->parsed()) cmd_test(names[i], to, out);
        }
        if (c_sw->parsed()) cmd_sweep(sw, out);
        return 0;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace qff
