#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qff/chebyshev.hpp"
#include "qff/graph.hpp"
#include "qff/markov.hpp"
#include "qff/rng.hpp"
#include "qff/vec.hpp"

namespace qff {

struct CostLedger {
    std::uint64_t qw_steps = 0;
    std::uint64_t initial_reflections = 0;
    std::uint64_t classical_rw_steps = 0;

    void add(const CostLedger& o) {
        qw_steps += o.qw_steps;
        initial_reflections += o.initial_reflections;
        classical_rw_steps += o.classical_rw_steps;
    }
};

// each walk step is charged ceil(sqrt(d)) graph queries
std::uint64_t charged_queries(const CostLedger& led, int d);

enum class CoinCompletion { gram_schmidt, householder };

// Per-node coin unitaries on the (n+1)-dim coin register. Coin slots 0..n-1
// are node symbols, slot n is the flat symbol. The column for the flat slot
// is psi_i with psi_i[j] = sqrt(P(j,i)); the other columns are an arbitrary
// orthonormal completion, so two modes ship:
//   gram_schmidt: canonical basis vectors orthogonalized in ascending index
//                 order (dense blocks)
//   householder:  the reflection through psi_i - flat, applied implicitly
struct CoinOperator {
    int n = 0;
    CoinCompletion mode = CoinCompletion::gram_schmidt;
    std::vector<std::vector<double>> block;  // (n+1)^2 row-major per node
    std::vector<std::vector<double>> psi;    // n+1 entries per node
};

CoinOperator build_coin(const TransitionMatrix& P,
                        CoinCompletion mode = CoinCompletion::gram_schmidt);

struct WalkOperators {
    Graph g;
    CoinOperator coin;
};

WalkOperators build_walk(const Graph& g, const TransitionMatrix& P,
                         CoinCompletion mode = CoinCompletion::gram_schmidt);

// State over node x coin registers, with an optional control register of
// size lcu (1 means absent). Index layout: (node*(n+1) + coin)*lcu + l.
// Control slot 0 is the branch the flat projector selects.
struct QWState {
    int n = 0;
    int lcu = 1;
    std::vector<cd> amp;

    std::size_t idx(int node, int coin, int l) const {
        return (static_cast<std::size_t>(node) * (n + 1) + coin) * lcu + l;
    }
    std::size_t dim() const { return amp.size(); }

    // |v> x |flat> x |0>
    static QWState flat_basis(int n, int v, int lcu = 1);
    // sum_v v[v] |v, flat, 0>
    static QWState flat(const std::vector<double>& v, int lcu = 1);
};

// coin on every node block (all control slices); dagger applies the transpose
void apply_coin(QWState& s, const WalkOperators& ops, bool dagger = false);

// swaps |i,j> and |j,i> on edges, identity elsewhere (flat slots included)
void apply_shift(QWState& s, const WalkOperators& ops);

// +1 on coin = flat, -1 elsewhere, every control slice
void reflect_coin_flat(QWState& s);

// U = coin^dag . shift . coin; involution
void apply_U(QWState& s, const WalkOperators& ops, CostLedger& led);

// W = reflect_coin_flat . U
void apply_W(QWState& s, const WalkOperators& ops, CostLedger& led);
void apply_W_dagger(QWState& s, const WalkOperators& ops, CostLedger& led);

// W_tau = Vq^dag . (controlled powers of W) . Vq on the control register;
// charges tau walk steps. The projected action on |v, flat, 0> is
// sum_l q_l T_l(D) v.
void apply_W_tau(QWState& s, const WalkOperators& ops, const FFCoefficients& c,
                 CostLedger& led);
void apply_W_tau_dagger(QWState& s, const WalkOperators& ops, const FFCoefficients& c,
                        CostLedger& led);

struct FlatProjection {
    double norm = 0.0;   // norm of the (coin = flat, l = 0) component
    QWState state;       // that component renormalized; zero state when norm = 0
};
FlatProjection project_flat(const QWState& s);

// node-space vector carried by the flat component (not renormalized)
std::vector<cd> flat_component(const QWState& s);

struct MeasureResult {
    bool flat = false;
    double prob_flat = 0.0;
};
// Born measurement of the flat projector; collapses s in place
MeasureResult measure_flat(QWState& s, Rng& rng);

// 2P - I for the (coin = flat, l = 0) projector
void reflect_flat0(QWState& s);

// s <- 2 <axis|s> axis - s
void reflect_about(QWState& s, const QWState& axis);

// s <- s - (1 - e^{i phi}) <axis|s> axis
void phase_about(QWState& s, const QWState& axis, double phi);

// e^{i phi} on the (coin = flat, l = 0) slice
void phase_flat0(QWState& s, double phi);

struct WatrousResult {
    bool success = false;
    int steps_done = 0;
    QWState state;
};

// t rounds of apply_U + flat measurement; success end-to-end with
// probability |D^t v|^2, conditioned state carries D^t v normalized
WatrousResult watrous_simulate(const std::vector<double>& v, const WalkOperators& ops,
                               int t, Rng& rng, CostLedger& led);

std::string state_to_json(const QWState& s);

}  // namespace qff
