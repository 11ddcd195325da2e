#pragma once

#include <string>
#include <vector>

#include "qff/graph.hpp"

namespace qff {

// sparse column-major real matrix; cols[j] holds (row, value) sorted by row
struct SparseMatrix {
    int n = 0;
    std::vector<std::vector<std::pair<int, double>>> cols;

    double entry(int i, int j) const;
    std::vector<double> apply(const std::vector<double>& x) const;
};

// column-stochastic convention throughout: entry (u,v) is the probability
// of moving from v to u, so columns sum to 1 and P acts on distributions
// by left multiplication.
using TransitionMatrix = SparseMatrix;
using Discriminant = SparseMatrix;

struct SpectralData {
    std::vector<double> eigenvalues;               // descending
    std::vector<std::vector<double>> vectors;      // vectors[k] orthonormal
};

struct ReversibilityReport {
    bool reversible = false;
    bool converged = false;
    std::vector<double> pi;
};

// P = I - L/(2d): off-diagonal 1/(2d) per edge, diagonal 1 - deg(v)/(2d)
TransitionMatrix lazy_walk(const Graph& g);

// D(i,j) = sqrt(P(i,j) * P(j,i))
Discriminant discriminant(const TransitionMatrix& P);

bool is_column_stochastic(const TransitionMatrix& P, double tol = 1e-12);
bool is_symmetric(const SparseMatrix& M, double tol = 1e-12);

// stationary distribution by damped power iteration x <- (x + Px)/2
// (same fixed points as P, immune to periodic chains), then the detailed
// balance check pi(v) P(u,v) = pi(u) P(v,u) within 1e-10
ReversibilityReport is_reversible(const TransitionMatrix& P);

// D^t v by t sequential sparse applies
std::vector<double> exact_power_apply(const Discriminant& D, int t, std::vector<double> v);

// T_l(D) v by the three-term recursion T_l = 2 D T_{l-1} - T_{l-2}
std::vector<double> chebyshev_apply(const Discriminant& D, int l, const std::vector<double>& v);

// dense symmetric eigensolve; refuses n > 512
SpectralData spectral_decomp(const Discriminant& D);

// coordinate-triple JSON {"n":..., "entries":[[i,j,val],...]}
std::string matrix_to_json(const SparseMatrix& M);

}  // namespace qff
