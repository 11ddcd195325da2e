#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qff/rng.hpp"

namespace qff {

// Simple undirected graph with a declared degree bound d. Node labels are
// 0..n-1, adjacency lists are kept sorted, no self loops, no multi edges.
struct Graph {
    int n = 0;
    int d = 0;
    std::vector<std::vector<int>> adj;

    int degree(int v) const { return static_cast<int>(adj[v].size()); }
    bool has_edge(int u, int v) const;
    std::size_t edge_count() const;
};

// access-counting bookkeeping for the classical testers
struct QueryCounter {
    std::uint64_t neighbor_queries = 0;
    std::uint64_t node_samples = 0;
};

// builds a graph from an explicit edge list; validates as it goes
Graph make_graph(int n, int d, const std::vector<std::pair<int, int>>& edges);

// text format: header line "N d", then one "u v" per line, '#' comments.
// Duplicate edge lines collapse to a single edge.
Graph load_graph_edgelist(const std::string& path);
Graph parse_graph_edgelist(const std::string& text);

// JSON format: {"n": ..., "d": ..., "edges": [[u,v], ...]}
Graph load_graph_json(const std::string& path);

// dispatches on extension (.json vs anything else)
Graph load_graph(const std::string& path);

std::string graph_to_json(const Graph& g);

// throws std::invalid_argument when a structural invariant fails
void validate_graph(const Graph& g);

// i-th neighbor of v in sorted order, 1-based i in [1, d]; nullopt when v
// has fewer than i neighbors. Counts one query.
std::optional<int> neighbor_query(const Graph& g, int v, int i, QueryCounter& qc);

int random_node(const Graph& g, Rng& rng, QueryCounter& qc);

// generators -----------------------------------------------------------

Graph gen_cycle(int n);
Graph gen_complete(int n);
// no edges at all; declared bound 1 so downstream degree formulas stay sane
Graph gen_edgeless(int n);
// circulant start randomized by double-edge swaps; n*d must be even
Graph gen_random_regular(int n, int d, std::uint64_t seed);
// two independent random d-regular halves of n_half nodes each, joined by
// `bridges` edges between mirrored pairs (k, n_half + k); declared bound d+1
Graph gen_dumbbell(int n_half, int d, int bridges, std::uint64_t seed);

// combinatorial quantities ----------------------------------------------

struct Ratio {
    long long num = 0;
    long long den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// min over nonempty S with |S| <= n/2 of |{v in S^c adjacent to S}| / |S|.
// Exhaustive over subsets; refuses n > 24.
Ratio vertex_expansion(const Graph& g);

// |E(S, S^c)| / (d |S|) with the graph's declared d
double conductance_set(const Graph& g, const std::vector<int>& S);

// min over nonempty T with |T| <= n/2 of conductance_set(T); n <= 24
Ratio conductance_graph(const Graph& g);

// conductance of the induced subgraph G[S], still normalized by the
// ambient degree bound d; exhaustive over subsets of S, |S| <= 24
Ratio induced_conductance(const Graph& g, const std::vector<int>& S);

// number of edges with exactly one endpoint in S
std::size_t cut_size(const Graph& g, const std::vector<int>& S);

bool is_connected(const Graph& g);

}  // namespace qff
