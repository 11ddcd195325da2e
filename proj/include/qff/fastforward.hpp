#pragma once

#include <string>
#include <vector>

#include "qff/amplitude.hpp"
#include "qff/chebyshev.hpp"
#include "qff/graph.hpp"
#include "qff/markov.hpp"
#include "qff/rng.hpp"
#include "qff/walk.hpp"

namespace qff {

enum class FFAlgo { plain, amplified };

// One fast-forwarding run. The walk pipeline is deterministic given the
// configuration, so everything except the final measurement is carried by
// QFFPipeline; a run samples that measurement and snapshots the ledger.
struct QFFPipeline {
    int t = 0;
    double eps = 0.0;
    bool oracle_mode = true;    // eps' from the exact norm versus the 1/sqrt(N) floor
    double eps_prime = 0.0;
    FFCoefficients coeffs;      // tau lives here
    std::vector<double> v;
    double norm_dt = 0.0;       // |D^t v| (exact)
    std::vector<double> dtv_hat;
    double flat_norm = 0.0;     // |sum_l q_l T_l(D) v| = sin(theta)
    std::vector<double> phi_hat;
    int m = 0;                  // amplification rounds floor(pi/(4 theta))
    double dist = 0.0;          // |phi_hat - dtv_hat|
    double success_plain = 0.0;     // flat_norm^2
    double success_amplified = 0.0; // sin^2((2m+1) theta)
};

QFFPipeline prepare_qff(const Graph& g, const TransitionMatrix& P, const std::vector<double>& v,
                        int t, double eps, bool oracle_mode = true);

struct QFFRun {
    FFAlgo algo = FFAlgo::plain;
    int t = 0;
    double eps = 0.0, eps_prime = 0.0;
    int tau = 0, m = 0;
    bool success = false;
    std::vector<double> output;     // node-space flat vector, unit norm, on success
    double dist_to_oracle = -1.0;   // |output - D^t v / |D^t v||
    double predicted_success = 0.0;
    double norm_dt = 0.0;
    CostLedger ledger;
};

// final measurement of the prepared pipeline; ledger charges tau steps
QFFRun sample_qff(const QFFPipeline& pl, Rng& rng);

// with amplification; ledger charges m(2 tau) + tau steps and m reflections
QFFRun sample_qffg(const QFFPipeline& pl, Rng& rng);

// convenience wrappers (prepare + one sample)
QFFRun qff(const Graph& g, const TransitionMatrix& P, const std::vector<double>& v,
           int t, double eps, Rng& rng, bool oracle_mode = true);
QFFRun qffg(const Graph& g, const TransitionMatrix& P, const std::vector<double>& v,
            int t, double eps, Rng& rng, bool oracle_mode = true);

struct LasVegasResult {
    QFFRun run;          // the successful attempt
    int attempts = 0;
    CostLedger total;    // accumulated over all attempts
};

// repeats the amplified variant until success; throws after max_attempts
LasVegasResult qff_las_vegas(const QFFPipeline& pl, Rng& rng, int max_attempts = 1000);

struct QFFDiagnostics {
    double dist_to_oracle = 0.0;
    double predicted_success = 0.0;
    std::uint64_t expected_qw_steps = 0;
    bool ledger_matches = false;
};

QFFDiagnostics qff_diagnostics(const QFFRun& run);

// sum_l q_l T_l(D) v by one Chebyshev recursion pass
std::vector<double> lcu_flat_vector(const Discriminant& D, const FFCoefficients& c,
                                    const std::vector<double>& v);

std::string run_to_json(const QFFRun& run);

}  // namespace qff
