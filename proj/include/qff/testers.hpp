#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qff/fastforward.hpp"
#include "qff/graph.hpp"
#include "qff/markov.hpp"
#include "qff/rng.hpp"
#include "qff/walk.hpp"

namespace qff {

enum class TesterMode { paper, desk };

enum class NormMode { additive, multiplicative };

struct NormEstimate {
    double a = 0.0;
    double eps = 0.0;
    double delta = 0.0;
    int t = 0;
    int tau = 0;
    NormMode mode = NormMode::additive;
    int abort_level = 0;   // multiplicative: level k the loop stopped at
    bool warning = false;  // multiplicative loop ran out without aborting
    CostLedger ledger;
};

// |a - |P^t e_s|| <= eps with confidence 1-delta. Truncation order
// ceil(sqrt(2t ln(8 sqrt(N)/eps))), then amplitude estimation of the flat
// overlap to eps/2.
NormEstimate estimate_norm(const Graph& g, int s, int t, double eps, double delta, Rng& rng);

// halving loop k = 1..max(1, ceil(log2(N)/2)), per-level additive error
// eps 2^{-k-2} at confidence delta/levels, abort once a >= (1+eps) 2^{-k};
// final |a - |P^t e_s|| <= eps |P^t e_s|
NormEstimate estimate_norm_multiplicative(const Graph& g, int s, int t, double eps, double delta,
                                          Rng& rng);

// expansion tester ---------------------------------------------------------

struct ExpansionParams {
    double upsilon = 0.5;
    double eps = 0.1;
    double mu = 0.1;  // runtime exponent, < 1/4
    TesterMode mode = TesterMode::desk;
    // overrides; t, eps_prime, trials, delta are required in desk mode
    int t = -1;
    double eps_prime = -1.0;
    int trials = -1;
    double delta = -1.0;
    double m_threshold = -1.0;  // defaults to sqrt((1 + 1/N)/N)
};

struct ResolvedExpansion {
    int t = 0;
    double eps_prime = 0.0;
    int trials = 0;
    double delta = 0.0;
    double m_threshold = 0.0;
};

// paper mode: t = ceil(16 d^2 upsilon^{-2} ln N), eps' = N^{-1/2-mu}/(16 sqrt 2),
// trials = ceil(90/eps), delta = eps/300
ResolvedExpansion resolve_expansion(const Graph& g, const ExpansionParams& p);

struct ExpansionTrial {
    int node = -1;
    double estimate = 0.0;
    double threshold = 0.0;
    bool exceeded = false;
};

struct ExpansionReport {
    bool accept = true;
    std::vector<ExpansionTrial> trials;
    ResolvedExpansion resolved;
    bool degree_warning = false;  // the guarantee assumes d >= 3
    CostLedger ledger;
};

// samples uniform nodes, rejects once an estimated norm exceeds
// m_threshold + eps_prime
ExpansionReport test_expansion(const Graph& g, const ExpansionParams& p, Rng& rng);

// calibrated desk fills (t, eps_prime, trials, delta) for the stock generator
// families: complete, regular, cycle, dumbbell, edgeless. Fields already set
// in base win. Unknown family throws.
ExpansionParams desk_expansion_defaults(const std::string& family, ExpansionParams base = {});

// distance estimator --------------------------------------------------------

struct DistanceEstimate {
    double a = 0.0;  // alpha^2 + beta^2 - 2 alpha beta sqrt(1 - gamma^2/2)
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double mu = 0.0;
    double nu = 0.0;
    double lambda = 0.0;
    int L = 0;
    int tau = 0;
    int t = 0;
    double eps = 0.0;
    double delta = 0.0;
    double norm_hi = 0.0;    // max exact norm, diagnostic
    double norm_lo = 0.0;    // min exact norm, diagnostic
    double true_dist2 = 0.0; // exact squared distance, diagnostic
    bool middle_band = false;
    CostLedger ledger;
};

// |a - |P^t e_u - P^t e_v|^2| <= eps with confidence 1-delta. Two rounds of
// multiplicative norm estimation, then amplified states compared by a swap
// test whose one-side probability is read out with amplitude estimation.
DistanceEstimate estimate_distance(const Graph& g, int u, int v, int t, double eps, double delta,
                                   Rng& rng);

// node classification and clusterability ------------------------------------

struct ClusterParams {
    int k = 1;
    double phi_in = 0.5;
    double phi_out = 0.0;
    double cprime = 1.0;
    int t_override = -1;  // replaces ceil(cprime k^4 phi_in^{-2} ln N)
};

enum class PairVerdict { same_cluster, different_cluster };

struct ClassifyReport {
    PairVerdict verdict = PairVerdict::same_cluster;
    double estimate = 0.0;
    double midpoint = 0.0;  // 5/(8N)
    int t = 0;
    bool middle_band = false;
    CostLedger ledger;
};

// squared distance to additive error 3/(8N) at confidence 2/3; same-cluster
// iff the estimate lands below 5/(8N)
ClassifyReport classify_nodes(const Graph& g, int u, int v, const ClusterParams& p, Rng& rng);

struct ClusterReport {
    bool accept = false;
    int components = 0;
    std::vector<int> samples;
    std::vector<std::pair<int, int>> similar;  // sample-index pairs judged same
    CostLedger ledger;
};

// samples ceil(4 k ln(k+1)) nodes, links pairs classified same-cluster,
// accepts iff the similarity graph has at most k components
ClusterReport test_clusterability(const Graph& g, int k, const ClusterParams& p, Rng& rng);

// classical baselines --------------------------------------------------------

struct CollisionEstimate {
    double estimate = 0.0;  // collisions / C(m,2)
    std::uint64_t collisions = 0;
    int m = 0;
};

// endpoints of m independent lazy walks from s; pairwise collision frequency
// is unbiased for |P^t e_s|^2
CollisionEstimate classical_norm_collisions(const Graph& g, int s, int t, int m, Rng& rng,
                                            CostLedger& led);

struct GRParams {
    double upsilon = 0.5;
    double eps = 0.1;
    double mu = 0.1;
    TesterMode mode = TesterMode::desk;
    // overrides; t is required in desk mode
    int t = -1;
    int walkers = -1;
    int trials = -1;
    double threshold = -1.0;
    // desk defaults: m = ceil(walker_mult N^{1/2+mu}),
    // threshold = threshold_mult C(m,2)/N, 4 trials
    double walker_mult = 8.0;
    double threshold_mult = 1.4;
};

struct ResolvedGR {
    int t = 0;
    int walkers = 0;
    int trials = 0;
    double threshold = 0.0;
};

// paper mode: t as in resolve_expansion, m = ceil(N^{1/2+mu}),
// threshold = 3 C(m,2)/N, trials = ceil(2/eps)
ResolvedGR resolve_gr(const Graph& g, const GRParams& p);

struct GRTrial {
    int node = -1;
    std::uint64_t collisions = 0;
    double estimate = 0.0;
    bool exceeded = false;
};

struct GRReport {
    bool accept = true;
    std::vector<GRTrial> trials;
    ResolvedGR resolved;
    CostLedger ledger;
};

// collision-counting expansion tester; rejects once a trial's collision
// count exceeds the threshold
GRReport classical_gr_expansion(const Graph& g, const GRParams& p, Rng& rng);

// desk t per family, matching desk_expansion_defaults
GRParams desk_gr_defaults(const std::string& family, GRParams base = {});

}  // namespace qff
