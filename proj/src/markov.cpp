#include "qff/markov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "json.hpp"
#include "qff/vec.hpp"

namespace qff {

double SparseMatrix::entry(int i, int j) const {
    const auto& c = cols[j];
    auto it = std::lower_bound(c.begin(), c.end(), i,
                               [](const std::pair<int, double>& e, int row) { return e.first < row; });
    if (it != c.end() && it->first == i) return it->second;
    return 0.0;
}

std::vector<double> SparseMatrix::apply(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != n) throw std::invalid_argument("apply: dimension mismatch");
    std::vector<double> y(n, 0.0);
    for (int j = 0; j < n; ++j) {
        double xj = x[j];
        if (xj == 0.0) continue;
        for (const auto& [i, val] : cols[j]) y[i] += val * xj;
    }
    return y;
}

TransitionMatrix lazy_walk(const Graph& g) {
    TransitionMatrix P;
    P.n = g.n;
    P.cols.assign(g.n, {});
    if (g.d == 0) {
        for (int v = 0; v < g.n; ++v) P.cols[v].emplace_back(v, 1.0);
        return P;
    }
    const double off = 1.0 / (2.0 * g.d);
    for (int v = 0; v < g.n; ++v) {
        auto& c = P.cols[v];
        double diag = 1.0 - g.degree(v) * off;
        bool placed = false;
        for (int u : g.adj[v]) {
            if (!placed && u > v) {
                c.emplace_back(v, diag);
                placed = true;
            }
            c.emplace_back(u, off);
        }
        if (!placed) c.emplace_back(v, diag);
    }
    return P;
}

Discriminant discriminant(const TransitionMatrix& P) {
    Discriminant D;
    D.n = P.n;
    D.cols.assign(P.n, {});
    for (int j = 0; j < P.n; ++j)
        for (const auto& [i, val] : P.cols[j]) {
            double w = std::sqrt(val * P.entry(j, i));
            if (w != 0.0) D.cols[j].emplace_back(i, w);
        }
    return D;
}

bool is_column_stochastic(const TransitionMatrix& P, double tol) {
    for (int j = 0; j < P.n; ++j) {
        double s = 0;
        for (const auto& [i, val] : P.cols[j]) {
            (void)i;
            if (val < 0.0 || val > 1.0) return false;
            s += val;
        }
        if (std::abs(s - 1.0) > tol) return false;
    }
    return true;
}

bool is_symmetric(const SparseMatrix& M, double tol) {
    for (int j = 0; j < M.n; ++j)
        for (const auto& [i, val] : M.cols[j])
            if (std::abs(val - M.entry(j, i)) > tol) return false;
    return true;
}

ReversibilityReport is_reversible(const TransitionMatrix& P) {
    ReversibilityReport rep;
    int n = P.n;
    std::vector<double> x(n, 1.0 / n);
    const int cap = 100000;
    for (int it = 0; it < cap; ++it) {
        std::vector<double> px = P.apply(x);
        double resid = 0;
        for (int i = 0; i < n; ++i) resid += std::abs(px[i] - x[i]);
        if (resid <= 1e-12) {
            rep.converged = true;
            break;
        }
        for (int i = 0; i < n; ++i) x[i] = 0.5 * (x[i] + px[i]);
    }
    double mass = 0;
    for (double v : x) mass += v;
    for (double& v : x) v /= mass;
    rep.pi = x;
    if (!rep.converged) return rep;
    rep.reversible = true;
    for (int j = 0; j < n && rep.reversible; ++j)
        for (const auto& [i, val] : P.cols[j])
            if (std::abs(x[j] * val - x[i] * P.entry(j, i)) > 1e-10) {
                rep.reversible = false;
                break;
            }
    return rep;
}

std::vector<double> exact_power_apply(const Discriminant& D, int t, std::vector<double> v) {
    if (t < 0) throw std::invalid_argument("exact_power_apply: t >= 0");
    for (int k = 0; k < t; ++k) v = D.apply(v);
    return v;
}

std::vector<double> chebyshev_apply(const Discriminant& D, int l, const std::vector<double>& v) {
    if (l < 0) throw std::invalid_argument("chebyshev_apply: l >= 0");
    if (l == 0) return v;
    std::vector<double> prev = v;
    std::vector<double> cur = D.apply(v);
    for (int k = 2; k <= l; ++k) {
        std::vector<double> next = D.apply(cur);
        for (int i = 0; i < D.n; ++i) next[i] = 2.0 * next[i] - prev[i];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

SpectralData spectral_decomp(const Discriminant& D) {
    if (D.n > 512) throw std::invalid_argument("spectral_decomp: n > 512");
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(D.n, D.n);
    for (int j = 0; j < D.n; ++j)
        for (const auto& [i, val] : D.cols[j]) M(i, j) = val;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M);
    if (solver.info() != Eigen::Success) throw std::runtime_error("spectral_decomp: eigensolve failed");
    SpectralData sd;
    sd.eigenvalues.resize(D.n);
    sd.vectors.assign(D.n, std::vector<double>(D.n));
    // Eigen returns ascending order
    for (int k = 0; k < D.n; ++k) {
        int src = D.n - 1 - k;
        sd.eigenvalues[k] = solver.eigenvalues()(src);
        for (int i = 0; i < D.n; ++i) sd.vectors[k][i] = solver.eigenvectors()(i, src);
    }
    return sd;
}

std::string matrix_to_json(const SparseMatrix& M) {
    nlohmann::json j;
    j["n"] = M.n;
    auto entries = nlohmann::json::array();
    for (int c = 0; c < M.n; ++c)
        for (const auto& [r, val] : M.cols[c]) entries.push_back({r, c, val});
    j["entries"] = entries;
    return j.dump();
}

}  // namespace qff
