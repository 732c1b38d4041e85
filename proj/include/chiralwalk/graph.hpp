#pragma once

// Simple undirected graphs at desk scale: construction, standard families,
// cones and disjoint unions, degree/connectivity statistics, and the two
// combinatorial subroutines the phase-synthesis routes need (perfect
// matching via Edmonds' blossom algorithm, Eulerian orientation via
// Hierholzer traversal). Everything is an immutable value type.

#include <algorithm>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chiralwalk {

using Edge = std::pair<int, int>;  // canonical: first < second

struct GraphStats {
    std::vector<int> degrees;
    int min_degree = 0;
    int max_degree = 0;
    bool is_connected = false;
    bool is_regular = false;
    int regular_degree = -1;  // valid when is_regular
};

// Simple undirected graph. Vertices are 0..n-1; the edge list is kept
// sorted and canonicalized (u < v, no duplicates). The empty graph (n = 0)
// is allowed and acts as the identity for disjoint_union.
class Graph {
public:
    Graph() = default;

    // Canonicalizes the edge list. Duplicate pairs are collapsed and
    // flagged; loops and out-of-range endpoints are rejected.
    Graph(int n, const std::vector<Edge>& edge_list) : n_(n) {
        if (n < 0) throw std::invalid_argument("vertex count must be >= 0");
        std::set<Edge> canon;
        for (auto [u, v] : edge_list) {
            if (u == v)
                throw std::invalid_argument("loop edge (" + std::to_string(u) + "," +
                                            std::to_string(v) + ") not allowed");
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw std::invalid_argument("edge endpoint out of range: (" +
                                            std::to_string(u) + "," + std::to_string(v) + ")");
            Edge e{std::min(u, v), std::max(u, v)};
            if (!canon.insert(e).second) duplicates_collapsed_ = true;
        }
        edges_.assign(canon.begin(), canon.end());
        adj_.assign(n_, {});
        for (auto [u, v] : edges_) {
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
    }

    int n() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_.at(v); }
    int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }
    bool duplicates_collapsed() const { return duplicates_collapsed_; }

    bool has_edge(int u, int v) const {
        if (u > v) std::swap(u, v);
        return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
    }

    // Index of the canonical edge {u,v} in edges(), or -1.
    int edge_index(int u, int v) const {
        if (u > v) std::swap(u, v);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v});
        if (it == edges_.end() || *it != Edge{u, v}) return -1;
        return static_cast<int>(it - edges_.begin());
    }

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && edges_ == other.edges_;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    bool duplicates_collapsed_ = false;
};

inline Graph build_graph(int n, const std::vector<Edge>& edge_list) {
    return Graph(n, edge_list);
}

inline GraphStats analyze(const Graph& g) {
    GraphStats s;
    s.degrees.resize(g.n());
    for (int v = 0; v < g.n(); ++v) s.degrees[v] = g.degree(v);
    if (g.n() == 0) {
        s.is_connected = true;  // vacuously
        s.is_regular = true;
        s.regular_degree = 0;
        return s;
    }
    s.min_degree = *std::min_element(s.degrees.begin(), s.degrees.end());
    s.max_degree = *std::max_element(s.degrees.begin(), s.degrees.end());
    s.is_regular = (s.min_degree == s.max_degree);
    s.regular_degree = s.is_regular ? s.min_degree : -1;

    std::vector<char> seen(g.n(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : g.neighbors(v))
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                q.push(w);
            }
    }
    s.is_connected = (reached == g.n());
    return s;
}

// Connected components as sorted vertex lists, lowest-index component first.
inline std::vector<std::vector<int>> connected_components(const Graph& g) {
    std::vector<std::vector<int>> comps;
    std::vector<char> seen(g.n(), 0);
    for (int s = 0; s < g.n(); ++s) {
        if (seen[s]) continue;
        std::vector<int> comp;
        std::queue<int> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            comp.push_back(v);
            for (int w : g.neighbors(v))
                if (!seen[w]) {
                    seen[w] = 1;
                    q.push(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

// Subgraph induced on `vertices` (need not be sorted); vertex i of the
// result corresponds to the i-th entry of the sorted vertex list.
inline Graph induced_subgraph(const Graph& g, std::vector<int> vertices) {
    std::sort(vertices.begin(), vertices.end());
    std::vector<int> pos(g.n(), -1);
    for (size_t i = 0; i < vertices.size(); ++i) pos[vertices[i]] = static_cast<int>(i);
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges())
        if (pos[u] >= 0 && pos[v] >= 0) edges.push_back({pos[u], pos[v]});
    return Graph(static_cast<int>(vertices.size()), edges);
}

// ---------------------------------------------------------------------------
// Families and constructions. Convention: apex/center vertex is index 0.
// ---------------------------------------------------------------------------

// New apex vertex 0 joined to every vertex of g; original vertices shift +1.
inline Graph cone(const Graph& g) {
    std::vector<Edge> edges;
    for (int v = 0; v < g.n(); ++v) edges.push_back({0, v + 1});
    for (auto [u, v] : g.edges()) edges.push_back({u + 1, v + 1});
    return Graph(g.n() + 1, edges);
}

inline Graph disjoint_union(const Graph& g1, const Graph& g2) {
    std::vector<Edge> edges = g1.edges();
    for (auto [u, v] : g2.edges()) edges.push_back({u + g1.n(), v + g1.n()});
    return Graph(g1.n() + g2.n(), edges);
}

inline Graph edgeless(int n) { return Graph(n, {}); }

// Star with `leaves` >= 1 leaves; center is vertex 0.
inline Graph star(int leaves) {
    if (leaves < 1) throw std::invalid_argument("star: need at least 1 leaf");
    return cone(edgeless(leaves));
}

inline Graph cycle(int n) {
    if (n < 3) throw std::invalid_argument("cycle: need n >= 3");
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
    return Graph(n, edges);
}

inline Graph path(int n) {
    if (n < 1) throw std::invalid_argument("path: need n >= 1");
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    return Graph(n, edges);
}

inline Graph complete(int n) {
    if (n < 1) throw std::invalid_argument("complete: need n >= 1");
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
    return Graph(n, edges);
}

// Parts are 0..n1-1 and n1..n1+n2-1.
inline Graph complete_bipartite(int n1, int n2) {
    if (n1 < 1 || n2 < 1) throw std::invalid_argument("complete_bipartite: need n1, n2 >= 1");
    std::vector<Edge> edges;
    for (int u = 0; u < n1; ++u)
        for (int v = 0; v < n2; ++v) edges.push_back({u, n1 + v});
    return Graph(n1 + n2, edges);
}

// Cone over cycle(rim); apex 0, rim vertices 1..rim.
inline Graph wheel(int rim) { return cone(cycle(rim)); }

// Petersen graph: outer cycle 0..4, spokes, inner pentagram 5..9.
inline Graph petersen() {
    std::vector<Edge> edges;
    for (int i = 0; i < 5; ++i) {
        edges.push_back({i, (i + 1) % 5});
        edges.push_back({i, i + 5});
        edges.push_back({5 + i, 5 + (i + 2) % 5});
    }
    return Graph(10, edges);
}

// 3-cube Q_3: vertices are 3-bit strings, edges between strings at
// Hamming distance 1.
inline Graph cube_q3() {
    std::vector<Edge> edges;
    for (int u = 0; u < 8; ++u)
        for (int b = 0; b < 3; ++b)
            if (!(u & (1 << b))) edges.push_back({u, u | (1 << b)});
    return Graph(8, edges);
}

// 16-vertex cubic graph with no perfect matching: hub 0 joined to three
// blocks, each block a K_4 with one edge subdivided and the subdivision
// vertex attached to the hub. Deleting the hub leaves three odd
// components, so Tutte's condition fails.
inline Graph cubic_no_matching_16() {
    std::vector<Edge> edges;
    for (int b = 0; b < 3; ++b) {
        int a = 1 + 5 * b;  // block vertices a..a+4 = {p, q, r, s, sub}
        int p = a, q = a + 1, r = a + 2, t = a + 3, sub = a + 4;
        edges.push_back({p, r});
        edges.push_back({p, t});
        edges.push_back({q, r});
        edges.push_back({q, t});
        edges.push_back({r, t});
        edges.push_back({p, sub});
        edges.push_back({q, sub});
        edges.push_back({0, sub});
    }
    return Graph(16, edges);
}

inline Graph generate_family(const std::string& family, const std::vector<int>& params) {
    auto need = [&](size_t k) {
        if (params.size() != k)
            throw std::invalid_argument("family '" + family + "' expects " + std::to_string(k) +
                                        " parameter(s)");
    };
    if (family == "star") { need(1); return star(params[0]); }
    if (family == "cycle") { need(1); return cycle(params[0]); }
    if (family == "path") { need(1); return path(params[0]); }
    if (family == "complete") { need(1); return complete(params[0]); }
    if (family == "complete_bipartite") { need(2); return complete_bipartite(params[0], params[1]); }
    if (family == "wheel") { need(1); return wheel(params[0]); }
    if (family == "petersen") { need(0); return petersen(); }
    if (family == "cube") { need(0); return cube_q3(); }
    if (family == "cubic_no_matching_16") { need(0); return cubic_no_matching_16(); }
    throw std::invalid_argument("unknown graph family '" + family + "'");
}

// ---------------------------------------------------------------------------
// Perfect matching (Edmonds' blossom algorithm)
// ---------------------------------------------------------------------------

struct Matching {
    std::vector<Edge> pairs;  // canonical, disjoint

    bool covers(int n) const { return static_cast<int>(pairs.size()) * 2 == n; }
};

namespace detail {

// Maximum cardinality matching on a general graph, O(V^3). Returns mate[]
// with -1 for unmatched vertices. Adjacency lists are iterated in sorted
// order so the result is deterministic.
class Blossom {
public:
    explicit Blossom(const Graph& g) : g_(g), n_(g.n()), mate_(n_, -1) {}

    std::vector<int> run() {
        for (int v = 0; v < n_; ++v)
            if (mate_[v] == -1) {
                int u = find_augmenting_path(v);
                if (u != -1) augment(u);
            }
        return mate_;
    }

private:
    const Graph& g_;
    int n_;
    std::vector<int> mate_, parent_, base_;
    std::vector<char> used_, blossom_;

    int lca(int a, int b) {
        std::vector<char> mark(n_, 0);
        for (;;) {
            a = base_[a];
            mark[a] = 1;
            if (mate_[a] == -1) break;
            a = parent_[mate_[a]];
        }
        for (;;) {
            b = base_[b];
            if (mark[b]) return b;
            b = parent_[mate_[b]];
        }
    }

    void mark_path(int v, int b, int child) {
        while (base_[v] != b) {
            blossom_[base_[v]] = 1;
            blossom_[base_[mate_[v]]] = 1;
            parent_[v] = child;
            child = mate_[v];
            v = parent_[mate_[v]];
        }
    }

    int find_augmenting_path(int root) {
        used_.assign(n_, 0);
        parent_.assign(n_, -1);
        base_.resize(n_);
        for (int i = 0; i < n_; ++i) base_[i] = i;
        used_[root] = 1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int to : g_.neighbors(v)) {
                if (base_[v] == base_[to] || mate_[v] == to) continue;
                if (to == root || (mate_[to] != -1 && parent_[mate_[to]] != -1)) {
                    // Odd cycle found; contract the blossom.
                    int cur_base = lca(v, to);
                    blossom_.assign(n_, 0);
                    mark_path(v, cur_base, to);
                    mark_path(to, cur_base, v);
                    for (int i = 0; i < n_; ++i)
                        if (blossom_[base_[i]]) {
                            base_[i] = cur_base;
                            if (!used_[i]) {
                                used_[i] = 1;
                                q.push(i);
                            }
                        }
                } else if (parent_[to] == -1) {
                    parent_[to] = v;
                    if (mate_[to] == -1) return to;
                    used_[mate_[to]] = 1;
                    q.push(mate_[to]);
                }
            }
        }
        return -1;
    }

    void augment(int v) {
        while (v != -1) {
            int pv = parent_[v], ppv = mate_[pv];
            mate_[v] = pv;
            mate_[pv] = v;
            v = ppv;
        }
    }
};

}  // namespace detail

inline std::vector<int> maximum_matching_mates(const Graph& g) {
    return detail::Blossom(g).run();
}

// A perfect matching if one exists; absence is a valid result, not an error.
inline std::optional<Matching> perfect_matching(const Graph& g) {
    if (g.n() % 2 != 0) return std::nullopt;
    auto mate = maximum_matching_mates(g);
    Matching m;
    for (int v = 0; v < g.n(); ++v) {
        if (mate[v] == -1) return std::nullopt;
        if (v < mate[v]) m.pairs.push_back({v, mate[v]});
    }
    return m;
}

// ---------------------------------------------------------------------------
// Eulerian orientation (Hierholzer)
// ---------------------------------------------------------------------------

struct EulerianOrientation {
    std::vector<Edge> arcs;  // directed, one per undirected edge of the host
};

// Orients every edge so that out-degree equals in-degree at each vertex.
// Requires all degrees even; processes each nontrivial component with a
// Hierholzer closed-trail traversal, lowest-index edges first.
inline EulerianOrientation eulerian_circuit(const Graph& g) {
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) % 2 != 0)
            throw std::invalid_argument("eulerian_circuit: vertex " + std::to_string(v) +
                                        " has odd degree");
    int m = g.edge_count();
    std::vector<char> used(m, 0);
    // Incidence lists: (neighbor, edge index), neighbors ascending.
    std::vector<std::vector<std::pair<int, int>>> inc(g.n());
    for (int e = 0; e < m; ++e) {
        auto [u, v] = g.edges()[e];
        inc[u].push_back({v, e});
        inc[v].push_back({u, e});
    }
    std::vector<size_t> next(g.n(), 0);
    EulerianOrientation out;
    out.arcs.reserve(m);
    for (int s = 0; s < g.n(); ++s) {
        while (next[s] < inc[s].size()) {
            if (used[inc[s][next[s]].second]) {
                ++next[s];
                continue;
            }
            // Closed trail from s; every arc is recorded in traversal
            // direction, which balances out/in at every vertex.
            int v = s;
            do {
                while (next[v] < inc[v].size() && used[inc[v][next[v]].second]) ++next[v];
                auto [w, e] = inc[v][next[v]];
                used[e] = 1;
                out.arcs.push_back({v, w});
                v = w;
            } while (v != s);
        }
    }
    return out;
}

}  // namespace chiralwalk
