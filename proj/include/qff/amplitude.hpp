#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qff/rng.hpp"
#include "qff/walk.hpp"

namespace qff {

// A state-preparation pipeline |psi> = apply(start) with its inverse and
// the walk-step cost one application charges.
struct Preparer {
    QWState start;
    std::function<void(QWState&, CostLedger&)> apply;
    std::function<void(QWState&, CostLedger&)> apply_dagger;
    std::uint64_t unit_cost = 0;
};

Preparer make_w_tau_preparer(const WalkOperators& ops, const FFCoefficients& c,
                             const std::vector<double>& v);

struct AmplificationPlan {
    double theta = 0.0;  // sin(theta) = flat overlap of the prepared state
    int m = 0;           // floor(pi / (4 theta))
};

// throws when the overlap is zero
AmplificationPlan plan_amplification(double flat_norm);

// flat amplitude after m rounds: sin((2m+1) theta)
double grover_amplitude(double theta, int m);

// prepare, then m rounds of -(R_psi R_flat); R_psi is realized as
// apply . reflect_about(start) . apply_dagger. Charges unit_cost (2m+1)
// walk steps and m initial reflections.
QWState amplitude_amplify(const Preparer& A, int m, CostLedger& led);

// fixed-point amplification ----------------------------------------------

struct FixedPointPlan {
    int L = 0;
    double delta = 0.0;
    double gamma = 0.0;
    std::vector<double> alpha;  // alpha[j-1] for j = 1..L
    std::vector<double> beta;   // beta[j-1] = alpha[L-j]
};

// L at the guarantee threshold ceil(ln(2/delta)/lambda)
FixedPointPlan plan_fixed_point(double lambda, double delta);
FixedPointPlan plan_fixed_point_for_L(int L, double delta);

// closed-form final flat overlap squared: 1 - delta^2 T^2_{2L+1}(x) with
// x = cosh(arccosh(1/delta)/(2L+1)) sqrt(1-lambda^2)
double fixed_point_success(double lambda, int L, double delta);

enum class FixedPointMode { phased, idealized };

// phased: the phase-sequence iteration (flat phase, then the conjugated
// phase about start, then a global sign per round). idealized: exact
// two-dimensional rotation to the same closed-form overlap; identical
// ledger charges.
QWState fixed_point_amplify(const Preparer& A, const FixedPointPlan& plan,
                            FixedPointMode mode, CostLedger& led);

// coefficients of the final state in the {flat part, rest} basis of the
// prepared state, by the exact two-dimensional recursion
struct TwoDState {
    cd good;
    cd bad;
};
TwoDState fixed_point_2d(double lambda, const FixedPointPlan& plan);

// amplitude estimation -----------------------------------------------------

struct EstimationResult {
    double estimate = 0.0;
    int M = 0;             // grid size (phase resolution), even
    int T = 0;             // shots
    std::vector<double> shots;
};

// ceil(pi/(eps/3)) rounded up to even
int ae_grid(double eps);
// ceil(18 ln(1/delta))
int ae_shots(double delta);

// squared Dirichlet kernel sin^2(pi M r) / (M sin(pi r))^2, value 1 at r = 0
double kernel_value(double r, int M);

// one outcome y in {0..M-1} of the canonical estimation circuit for angle
// theta, sampled exactly (rejection against the kernel)
int sample_ae_outcome(int M, double theta, Rng& rng);

// Semantic estimator: shots are drawn from the exact outcome distribution
// for the true amplitude, each mapped to sin(pi y/M), combined by median.
// Ledger is charged what the circuit would pay: per shot one preparation
// plus M Grover rounds of two preparer applications, and M reflections.
EstimationResult amplitude_estimate(double amp, double eps, double delta,
                                    std::uint64_t prep_cost, Rng& rng, CostLedger& led);

// same, for the flat overlap of an explicit state
EstimationResult amplitude_estimate_flat(const QWState& s, double eps, double delta,
                                         std::uint64_t prep_cost, Rng& rng, CostLedger& led);

// swap test ----------------------------------------------------------------

// joint state over ancilla x u x v after H.cswap.H; index (anc*dim + a)*dim + b
struct SwapTestState {
    std::size_t dim = 0;
    std::vector<cd> amp;
};

SwapTestState swap_test_state(const QWState& u, const QWState& v);

// squared norm of the ancilla-1 block
double swap_p1(const SwapTestState& s);

// analytic value (1 - |<u|v>|^2)/2
double swap_overlap_p1(const QWState& u, const QWState& v);

}  // namespace qff
