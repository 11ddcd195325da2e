#include "qff/walk.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qff {

std::uint64_t charged_queries(const CostLedger& led, int d) {
    std::uint64_t q = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(d))));
    while (q * q < static_cast<std::uint64_t>(d)) ++q;
    while (q > 1 && (q - 1) * (q - 1) >= static_cast<std::uint64_t>(d)) --q;
    return q * led.qw_steps;
}

namespace {

// extend seed vectors to an orthonormal basis with canonical candidates
std::vector<std::vector<double>> complete_basis(std::vector<std::vector<double>> basis, int dim) {
    for (int cand = 0; cand < dim && static_cast<int>(basis.size()) < dim; ++cand) {
        std::vector<double> r(dim, 0.0);
        r[cand] = 1.0;
        for (const auto& b : basis) {
            double ov = b[cand];  // <b, e_cand>
            for (int k = 0; k < dim; ++k) r[k] -= ov * b[k];
        }
        double nrm2 = 0.0;
        for (double x : r) nrm2 += x * x;
        double nrm = std::sqrt(nrm2);
        if (nrm <= 1e-8) continue;
        for (double& x : r) x /= nrm;
        // second pass keeps orthogonality tight
        for (const auto& b : basis) {
            double ov = 0.0;
            for (int k = 0; k < dim; ++k) ov += b[k] * r[k];
            for (int k = 0; k < dim; ++k) r[k] -= ov * b[k];
        }
        nrm2 = 0.0;
        for (double x : r) nrm2 += x * x;
        nrm = std::sqrt(nrm2);
        for (double& x : r) x /= nrm;
        basis.push_back(std::move(r));
    }
    if (static_cast<int>(basis.size()) != dim)
        throw std::runtime_error("coin completion failed to span");
    return basis;
}

}  // namespace

CoinOperator build_coin(const TransitionMatrix& P, CoinCompletion mode) {
    if (!is_column_stochastic(P, 1e-10))
        throw std::invalid_argument("build_coin: P not column-stochastic");
    int n = P.n;
    CoinOperator coin;
    coin.n = n;
    coin.mode = mode;
    coin.psi.assign(n, std::vector<double>(n + 1, 0.0));
    for (int i = 0; i < n; ++i)
        for (const auto& [j, val] : P.cols[i]) coin.psi[i][j] = std::sqrt(val);
    if (mode == CoinCompletion::householder) return coin;
    if (n > 256) throw std::invalid_argument("build_coin: dense completion capped at n = 256");
    coin.block.assign(n, {});
    for (int i = 0; i < n; ++i) {
        auto basis = complete_basis({coin.psi[i]}, n + 1);
        // column for coin slot n is psi_i, slots 0..n-1 take the completions
        auto& M = coin.block[i];
        M.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0.0);
        for (int r = 0; r <= n; ++r) {
            for (int c = 0; c < n; ++c) M[static_cast<std::size_t>(r) * (n + 1) + c] = basis[c + 1][r];
            M[static_cast<std::size_t>(r) * (n + 1) + n] = basis[0][r];
        }
    }
    return coin;
}

WalkOperators build_walk(const Graph& g, const TransitionMatrix& P, CoinCompletion mode) {
    if (P.n != g.n) throw std::invalid_argument("build_walk: dimension mismatch");
    return WalkOperators{g, build_coin(P, mode)};
}

QWState QWState::flat_basis(int n, int v, int lcu) {
    QWState s;
    s.n = n;
    s.lcu = lcu;
    s.amp.assign(static_cast<std::size_t>(n) * (n + 1) * lcu, cd(0.0));
    s.amp[s.idx(v, n, 0)] = 1.0;
    return s;
}

QWState QWState::flat(const std::vector<double>& v, int lcu) {
    QWState s;
    s.n = static_cast<int>(v.size());
    s.lcu = lcu;
    s.amp.assign(static_cast<std::size_t>(s.n) * (s.n + 1) * lcu, cd(0.0));
    for (int i = 0; i < s.n; ++i) s.amp[s.idx(i, s.n, 0)] = v[i];
    return s;
}

namespace {

void coin_slice(QWState& s, const WalkOperators& ops, int l_lo, bool dagger) {
    const int n = s.n;
    const int nc = n + 1;
    if (ops.coin.mode == CoinCompletion::householder) {
        // I - w w^T with w = psi - e_flat, |w|^2 = 2; self-adjoint
        for (int i = 0; i < n; ++i) {
            const auto& psi = ops.coin.psi[i];
            for (int l = l_lo; l < s.lcu; ++l) {
                cd wx = 0.0;
                for (int c = 0; c < n; ++c) wx += psi[c] * s.amp[s.idx(i, c, l)];
                wx -= s.amp[s.idx(i, n, l)];
                for (int c = 0; c < n; ++c) s.amp[s.idx(i, c, l)] -= wx * psi[c];
                s.amp[s.idx(i, n, l)] += wx;
            }
        }
        return;
    }
    std::vector<cd> x(nc), y(nc);
    for (int i = 0; i < n; ++i) {
        const auto& M = ops.coin.block[i];
        for (int l = l_lo; l < s.lcu; ++l) {
            for (int c = 0; c < nc; ++c) x[c] = s.amp[s.idx(i, c, l)];
            if (!dagger) {
                for (int r = 0; r < nc; ++r) {
                    cd acc = 0.0;
                    const double* row = &M[static_cast<std::size_t>(r) * nc];
                    for (int c = 0; c < nc; ++c) acc += row[c] * x[c];
                    y[r] = acc;
                }
            } else {
                for (int r = 0; r < nc; ++r) y[r] = 0.0;
                for (int c = 0; c < nc; ++c) {
                    const double* row = &M[static_cast<std::size_t>(c) * nc];
                    for (int r = 0; r < nc; ++r) y[r] += row[r] * x[c];
                }
            }
            for (int c = 0; c < nc; ++c) s.amp[s.idx(i, c, l)] = y[c];
        }
    }
}

void shift_slice(QWState& s, const WalkOperators& ops, int l_lo) {
    for (int i = 0; i < s.n; ++i)
        for (int j : ops.g.adj[i]) {
            if (j <= i) continue;
            for (int l = l_lo; l < s.lcu; ++l)
                std::swap(s.amp[s.idx(i, j, l)], s.amp[s.idx(j, i, l)]);
        }
}

void reflect_coin_flat_slice(QWState& s, int l_lo) {
    for (int i = 0; i < s.n; ++i)
        for (int c = 0; c < s.n; ++c)
            for (int l = l_lo; l < s.lcu; ++l) s.amp[s.idx(i, c, l)] = -s.amp[s.idx(i, c, l)];
}

void walk_step(QWState& s, const WalkOperators& ops, int l_lo) {
    coin_slice(s, ops, l_lo, false);
    shift_slice(s, ops, l_lo);
    coin_slice(s, ops, l_lo, true);
    reflect_coin_flat_slice(s, l_lo);
}

void walk_step_dagger(QWState& s, const WalkOperators& ops, int l_lo) {
    reflect_coin_flat_slice(s, l_lo);
    coin_slice(s, ops, l_lo, false);
    shift_slice(s, ops, l_lo);
    coin_slice(s, ops, l_lo, true);
}

// control-register unitary with first column sqrt(q_l)
std::vector<std::vector<double>> lcu_prep(const FFCoefficients& c) {
    std::vector<double> s0(c.tau + 1);
    for (int l = 0; l <= c.tau; ++l) s0[l] = std::sqrt(c.q[l]);
    return complete_basis({s0}, c.tau + 1);
}

void apply_lcu_prep(QWState& s, const std::vector<std::vector<double>>& Q, bool dagger) {
    const int m = static_cast<int>(Q.size());
    if (s.lcu != m) throw std::invalid_argument("control register size mismatch");
    std::vector<cd> x(m), y(m);
    const std::size_t pairs = static_cast<std::size_t>(s.n) * (s.n + 1);
    for (std::size_t p = 0; p < pairs; ++p) {
        std::size_t base = p * m;
        for (int l = 0; l < m; ++l) x[l] = s.amp[base + l];
        for (int r = 0; r < m; ++r) {
            cd acc = 0.0;
            if (!dagger) {
                // column l of the unitary is Q[l]
                for (int l = 0; l < m; ++l) acc += Q[l][r] * x[l];
            } else {
                for (int l = 0; l < m; ++l) acc += Q[r][l] * x[l];
            }
            y[r] = acc;
        }
        for (int l = 0; l < m; ++l) s.amp[base + l] = y[l];
    }
}

}  // namespace

void apply_coin(QWState& s, const WalkOperators& ops, bool dagger) {
    coin_slice(s, ops, 0, dagger);
}

void apply_shift(QWState& s, const WalkOperators& ops) { shift_slice(s, ops, 0); }

void reflect_coin_flat(QWState& s) { reflect_coin_flat_slice(s, 0); }

void apply_U(QWState& s, const WalkOperators& ops, CostLedger& led) {
    coin_slice(s, ops, 0, false);
    shift_slice(s, ops, 0);
    coin_slice(s, ops, 0, true);
    led.qw_steps += 1;
}

void apply_W(QWState& s, const WalkOperators& ops, CostLedger& led) {
    walk_step(s, ops, 0);
    led.qw_steps += 1;
}

void apply_W_dagger(QWState& s, const WalkOperators& ops, CostLedger& led) {
    walk_step_dagger(s, ops, 0);
    led.qw_steps += 1;
}

void apply_W_tau(QWState& s, const WalkOperators& ops, const FFCoefficients& c,
                 CostLedger& led) {
    if (s.lcu != c.tau + 1) throw std::invalid_argument("apply_W_tau: control register mismatch");
    auto Q = lcu_prep(c);
    apply_lcu_prep(s, Q, false);
    for (int j = 1; j <= c.tau; ++j) walk_step(s, ops, j);
    apply_lcu_prep(s, Q, true);
    led.qw_steps += static_cast<std::uint64_t>(c.tau);
}

void apply_W_tau_dagger(QWState& s, const WalkOperators& ops, const FFCoefficients& c,
                        CostLedger& led) {
    if (s.lcu != c.tau + 1) throw std::invalid_argument("apply_W_tau_dagger: control register mismatch");
    auto Q = lcu_prep(c);
    apply_lcu_prep(s, Q, false);
    for (int j = 1; j <= c.tau; ++j) walk_step_dagger(s, ops, j);
    apply_lcu_prep(s, Q, true);
    led.qw_steps += static_cast<std::uint64_t>(c.tau);
}

FlatProjection project_flat(const QWState& s) {
    FlatProjection out;
    out.state.n = s.n;
    out.state.lcu = s.lcu;
    out.state.amp.assign(s.amp.size(), cd(0.0));
    double p = 0.0;
    for (int v = 0; v < s.n; ++v) p += std::norm(s.amp[s.idx(v, s.n, 0)]);
    out.norm = std::sqrt(p);
    if (out.norm == 0.0) return out;
    for (int v = 0; v < s.n; ++v)
        out.state.amp[s.idx(v, s.n, 0)] = s.amp[s.idx(v, s.n, 0)] / out.norm;
    return out;
}

std::vector<cd> flat_component(const QWState& s) {
    std::vector<cd> x(s.n);
    for (int v = 0; v < s.n; ++v) x[v] = s.amp[s.idx(v, s.n, 0)];
    return x;
}

MeasureResult measure_flat(QWState& s, Rng& rng) {
    MeasureResult r;
    double p = 0.0;
    for (int v = 0; v < s.n; ++v) p += std::norm(s.amp[s.idx(v, s.n, 0)]);
    r.prob_flat = p;
    r.flat = rng.uniform01() < p;
    if (r.flat) {
        double nrm = std::sqrt(p);
        std::vector<cd> keep(s.n);
        for (int v = 0; v < s.n; ++v) keep[v] = s.amp[s.idx(v, s.n, 0)] / nrm;
        std::fill(s.amp.begin(), s.amp.end(), cd(0.0));
        for (int v = 0; v < s.n; ++v) s.amp[s.idx(v, s.n, 0)] = keep[v];
    } else {
        double nrm = std::sqrt(std::max(1.0 - p, 0.0));
        for (int v = 0; v < s.n; ++v) s.amp[s.idx(v, s.n, 0)] = 0.0;
        if (nrm > 0.0)
            for (auto& a : s.amp) a /= nrm;
    }
    return r;
}

void reflect_flat0(QWState& s) {
    for (auto& a : s.amp) a = -a;
    for (int v = 0; v < s.n; ++v) s.amp[s.idx(v, s.n, 0)] = -s.amp[s.idx(v, s.n, 0)];
}

void reflect_about(QWState& s, const QWState& axis) {
    if (s.amp.size() != axis.amp.size()) throw std::invalid_argument("reflect_about: dimension mismatch");
    cd ov = cdot(axis.amp, s.amp);
    for (std::size_t i = 0; i < s.amp.size(); ++i) s.amp[i] = 2.0 * ov * axis.amp[i] - s.amp[i];
}

void phase_about(QWState& s, const QWState& axis, double phi) {
    if (s.amp.size() != axis.amp.size()) throw std::invalid_argument("phase_about: dimension mismatch");
    cd ov = cdot(axis.amp, s.amp);
    cd f = 1.0 - std::exp(cd(0.0, phi));
    for (std::size_t i = 0; i < s.amp.size(); ++i) s.amp[i] -= f * ov * axis.amp[i];
}

void phase_flat0(QWState& s, double phi) {
    cd f = std::exp(cd(0.0, phi));
    for (int v = 0; v < s.n; ++v) s.amp[s.idx(v, s.n, 0)] *= f;
}

WatrousResult watrous_simulate(const std::vector<double>& v, const WalkOperators& ops,
                               int t, Rng& rng, CostLedger& led) {
    WatrousResult out;
    out.state = QWState::flat(v);
    for (int k = 0; k < t; ++k) {
        apply_U(out.state, ops, led);
        out.steps_done = k + 1;
        if (!measure_flat(out.state, rng).flat) return out;
    }
    out.success = true;
    return out;
}

std::string state_to_json(const QWState& s) {
    nlohmann::json j;
    j["n"] = s.n;
    j["lcu"] = s.lcu;
    auto arr = nlohmann::json::array();
    for (const auto& a : s.amp) arr.push_back({a.real(), a.imag()});
    j["amp"] = arr;
    return j.dump();
}

}  // namespace qff
