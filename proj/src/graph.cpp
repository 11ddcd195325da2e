#include "qff/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qff {

bool Graph::has_edge(int u, int v) const {
    const auto& a = adj[u];
    return std::binary_search(a.begin(), a.end(), v);
}

std::size_t Graph::edge_count() const {
    std::size_t s = 0;
    for (const auto& a : adj) s += a.size();
    return s / 2;
}

Graph make_graph(int n, int d, const std::vector<std::pair<int, int>>& edges) {
    if (n <= 0) throw std::invalid_argument("graph: n must be positive");
    if (d <= 0) throw std::invalid_argument("graph: d must be positive");
    Graph g;
    g.n = n;
    g.d = d;
    g.adj.assign(n, {});
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("graph: edge endpoint out of range");
        if (u == v) throw std::invalid_argument("graph: self loop");
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second) continue;
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& a : g.adj) std::sort(a.begin(), a.end());
    validate_graph(g);
    return g;
}

void validate_graph(const Graph& g) {
    if (g.n <= 0) throw std::invalid_argument("graph: n must be positive");
    if (g.d <= 0) throw std::invalid_argument("graph: d must be positive");
    if (static_cast<int>(g.adj.size()) != g.n)
        throw std::invalid_argument("graph: adjacency size mismatch");
    for (int v = 0; v < g.n; ++v) {
        const auto& a = g.adj[v];
        if (static_cast<int>(a.size()) > g.d)
            throw std::invalid_argument("graph: degree exceeds bound d");
        for (std::size_t i = 0; i < a.size(); ++i) {
            int u = a[i];
            if (u < 0 || u >= g.n) throw std::invalid_argument("graph: neighbor out of range");
            if (u == v) throw std::invalid_argument("graph: self loop");
            if (i > 0 && a[i - 1] >= u)
                throw std::invalid_argument("graph: adjacency not sorted unique");
            if (!g.has_edge(u, v)) throw std::invalid_argument("graph: asymmetric adjacency");
        }
    }
}

Graph parse_graph_edgelist(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int n = -1, d = -1;
    std::vector<std::pair<int, int>> edges;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        if (n < 0) {
            if (!(ls >> n >> d)) {
                // blank or comment-only line before the header
                std::istringstream probe(line);
                std::string tok;
                if (probe >> tok)
                    throw std::invalid_argument("graph parse: bad header at line " +
                                             std::to_string(lineno));
                n = -1;
                continue;
            }
            continue;
        }
        int u, v;
        if (!(ls >> u)) continue;
        if (!(ls >> v))
            throw std::invalid_argument("graph parse: bad edge at line " + std::to_string(lineno));
        edges.emplace_back(u, v);
    }
    if (n < 0) throw std::invalid_argument("graph parse: missing header");
    return make_graph(n, d, edges);
}

Graph load_graph_edgelist(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_graph_edgelist(buf.str());
}

Graph load_graph_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open " + path);
    int n = 0, d = 0;
    std::vector<std::pair<int, int>> edges;
    try {
        nlohmann::json j;
        f >> j;
        n = j.at("n").get<int>();
        d = j.at("d").get<int>();
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2)
                throw std::invalid_argument("graph json: edge must be a pair");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("graph json: " + std::string(e.what()));
    }
    return make_graph(n, d, edges);
}

Graph load_graph(const std::string& path) {
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        return load_graph_json(path);
    return load_graph_edgelist(path);
}

std::string graph_to_json(const Graph& g) {
    nlohmann::json j;
    j["n"] = g.n;
    j["d"] = g.d;
    auto edges = nlohmann::json::array();
    for (int v = 0; v < g.n; ++v)
        for (int u : g.adj[v])
            if (v < u) edges.push_back({v, u});
    j["edges"] = edges;
    return j.dump(2);
}

std::optional<int> neighbor_query(const Graph& g, int v, int i, QueryCounter& qc) {
    ++qc.neighbor_queries;
    if (v < 0 || v >= g.n) throw std::invalid_argument("neighbor_query: bad node");
    if (i < 1 || i > g.d) throw std::invalid_argument("neighbor_query: index out of [1,d]");
    if (i > static_cast<int>(g.adj[v].size())) return std::nullopt;
    return g.adj[v][i - 1];
}

int random_node(const Graph& g, Rng& rng, QueryCounter& qc) {
    ++qc.node_samples;
    return static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(g.n)));
}

// generators -----------------------------------------------------------

Graph gen_cycle(int n) {
    if (n < 3) throw std::invalid_argument("gen_cycle: n >= 3");
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    return make_graph(n, 2, edges);
}

Graph gen_complete(int n) {
    if (n < 2) throw std::invalid_argument("gen_complete: n >= 2");
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return make_graph(n, n - 1, edges);
}

Graph gen_edgeless(int n) {
    if (n < 1) throw std::invalid_argument("gen_edgeless: n >= 1");
    return make_graph(n, 1, {});
}

Graph gen_random_regular(int n, int d, std::uint64_t seed) {
    if (n <= d) throw std::invalid_argument("gen_random_regular: need n > d");
    if (d < 1) throw std::invalid_argument("gen_random_regular: d >= 1");
    if ((static_cast<long long>(n) * d) % 2 != 0)
        throw std::invalid_argument("gen_random_regular: n*d must be even");

    // circulant start, then randomize by double-edge swaps; this stays exact
    // on the degrees at any density, unlike the pairing model
    std::vector<std::pair<int, int>> edges;
    std::set<std::pair<int, int>> present;
    auto add = [&](int u, int v) {
        auto key = std::minmax(u, v);
        if (present.insert(key).second) edges.push_back(key);
    };
    for (int off = 1; off <= (d % 2 ? (d - 1) / 2 : d / 2); ++off)
        for (int v = 0; v < n; ++v) add(v, (v + off) % n);
    if (d % 2)
        for (int v = 0; v < n / 2; ++v) add(v, v + n / 2);

    Rng rng(seed);
    std::uint64_t attempts = 20ULL * edges.size();
    for (std::uint64_t k = 0; k < attempts; ++k) {
        std::size_t i = static_cast<std::size_t>(rng.uniform_below(edges.size()));
        std::size_t j = static_cast<std::size_t>(rng.uniform_below(edges.size()));
        if (i == j) continue;
        auto [a, b] = edges[i];
        auto [c, e] = edges[j];
        if (rng.bernoulli(0.5)) std::swap(c, e);
        if (a == c || a == e || b == c || b == e) continue;
        auto k1 = std::minmax(a, c);
        auto k2 = std::minmax(b, e);
        if (present.count(k1) || present.count(k2)) continue;
        present.erase(std::minmax(a, b));
        present.erase(std::minmax(c, e));
        present.insert(k1);
        present.insert(k2);
        edges[i] = k1;
        edges[j] = k2;
    }
    return make_graph(n, d, edges);
}

Graph gen_dumbbell(int n_half, int d, int bridges, std::uint64_t seed) {
    if (bridges < 1 || bridges > n_half)
        throw std::invalid_argument("gen_dumbbell: bridges in [1, n_half]");
    for (std::uint64_t salt = 0;; ++salt) {
        std::uint64_t s = derive_seed(seed, salt);
        Graph a = gen_random_regular(n_half, d, derive_seed(s, 0));
        Graph b = gen_random_regular(n_half, d, derive_seed(s, 1));
        std::vector<std::pair<int, int>> edges;
        for (int v = 0; v < n_half; ++v) {
            for (int u : a.adj[v])
                if (v < u) edges.emplace_back(v, u);
            for (int u : b.adj[v])
                if (v < u) edges.emplace_back(v + n_half, u + n_half);
        }
        for (int k = 0; k < bridges; ++k) edges.emplace_back(k, n_half + k);
        Graph g = make_graph(2 * n_half, d + 1, edges);
        if (is_connected(g)) return g;
        if (salt > 1000) throw std::runtime_error("gen_dumbbell: could not connect");
    }
}

// combinatorial quantities ----------------------------------------------

std::size_t cut_size(const Graph& g, const std::vector<int>& S) {
    std::vector<char> in(g.n, 0);
    for (int v : S) in.at(v) = 1;
    std::size_t cut = 0;
    for (int v : S)
        for (int u : g.adj[v])
            if (!in[u]) ++cut;
    return cut;
}

bool is_connected(const Graph& g) {
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int found = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : g.adj[v])
            if (!seen[u]) {
                seen[u] = 1;
                ++found;
                stack.push_back(u);
            }
    }
    return found == g.n;
}

namespace {

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

Ratio reduce(long long num, long long den) {
    long long g = gcd_ll(num, den);
    if (g == 0) return {0, 1};
    return {num / g, den / g};
}

// a/b < c/d for nonnegative fractions
bool frac_less(long long a, long long b, long long c, long long d) {
    return a * d < c * b;
}

}  // namespace

Ratio vertex_expansion(const Graph& g) {
    if (g.n > 24) throw std::invalid_argument("vertex_expansion: exhaustive search capped at n=24");
    long long best_num = -1, best_den = 1;
    const std::uint32_t full = (g.n == 32) ? 0xffffffffu : ((1u << g.n) - 1);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        int size = __builtin_popcount(mask);
        if (size == 0 || 2 * size > g.n) continue;
        int boundary = 0;
        for (int v = 0; v < g.n; ++v) {
            if (mask & (1u << v)) continue;
            for (int u : g.adj[v])
                if (mask & (1u << u)) {
                    ++boundary;
                    break;
                }
        }
        if (best_num < 0 || frac_less(boundary, size, best_num, best_den)) {
            best_num = boundary;
            best_den = size;
        }
    }
    return reduce(best_num, best_den);
}

double conductance_set(const Graph& g, const std::vector<int>& S) {
    if (S.empty()) throw std::invalid_argument("conductance_set: empty S");
    if (static_cast<int>(S.size()) == g.n)
        throw std::invalid_argument("conductance_set: S is the whole node set");
    return static_cast<double>(cut_size(g, S)) /
           (static_cast<double>(g.d) * static_cast<double>(S.size()));
}

Ratio conductance_graph(const Graph& g) {
    if (g.n > 24) throw std::invalid_argument("conductance_graph: exhaustive search capped at n=24");
    long long best_num = -1, best_den = 1;
    const std::uint32_t full = (1u << g.n) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        int size = __builtin_popcount(mask);
        if (size == 0 || 2 * size > g.n) continue;
        long long cut = 0;
        for (int v = 0; v < g.n; ++v) {
            if (!(mask & (1u << v))) continue;
            for (int u : g.adj[v])
                if (!(mask & (1u << u))) ++cut;
        }
        long long den = static_cast<long long>(g.d) * size;
        if (best_num < 0 || frac_less(cut, den, best_num, best_den)) {
            best_num = cut;
            best_den = den;
        }
    }
    return reduce(best_num, best_den);
}

Ratio induced_conductance(const Graph& g, const std::vector<int>& S) {
    int m = static_cast<int>(S.size());
    if (m < 2) throw std::invalid_argument("induced_conductance: need |S| >= 2");
    if (m > 24) throw std::invalid_argument("induced_conductance: exhaustive search capped at 24");
    std::vector<int> index(g.n, -1);
    for (int i = 0; i < m; ++i) index.at(S[i]) = i;
    // adjacency inside G[S], in local labels
    std::vector<std::vector<int>> local(m);
    for (int i = 0; i < m; ++i)
        for (int u : g.adj[S[i]])
            if (index[u] >= 0) local[i].push_back(index[u]);
    long long best_num = -1, best_den = 1;
    const std::uint32_t full = (1u << m) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        int size = __builtin_popcount(mask);
        if (size == 0 || 2 * size > m) continue;
        long long cut = 0;
        for (int i = 0; i < m; ++i) {
            if (!(mask & (1u << i))) continue;
            for (int j : local[i])
                if (!(mask & (1u << j))) ++cut;
        }
        long long den = static_cast<long long>(g.d) * size;
        if (best_num < 0 || frac_less(cut, den, best_num, best_den)) {
            best_num = cut;
            best_den = den;
        }
    }
    return reduce(best_num, best_den);
}

}  // namespace qff
