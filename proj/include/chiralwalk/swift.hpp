#pragma once

// Synthesis of swift phase configurations: edge phases that send every row
// of the chiral adjacency matrix to zero, so that the walk out of a cone
// apex over the graph departs at the quantum speed limit. Constructive
// routes cover all-even-degree graphs (Eulerian orientation), odd-regular
// graphs with a perfect matching, complete bipartite graphs and disjoint
// unions; a Gauss-Newton torus solver with random restarts handles the
// rest. Infeasibility is reported only on paper-certified criteria.

#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chiralwalk/chiral.hpp"
#include "chiralwalk/dynamics.hpp"
#include "chiralwalk/graph.hpp"

namespace chiralwalk {

enum class SwiftVerdict { feasible, infeasible, unknown };
enum class SwiftMethod {
    even_eulerian,
    odd_regular_matching,
    complete_bipartite,
    union_of_components,
    cone_theorem5,
    numeric,
    none
};

inline std::string to_string(SwiftVerdict v) {
    switch (v) {
        case SwiftVerdict::feasible: return "feasible";
        case SwiftVerdict::infeasible: return "infeasible";
        case SwiftVerdict::unknown: return "unknown";
    }
    return "?";
}

inline std::string to_string(SwiftMethod m) {
    switch (m) {
        case SwiftMethod::even_eulerian: return "even_eulerian";
        case SwiftMethod::odd_regular_matching: return "odd_regular_matching";
        case SwiftMethod::complete_bipartite: return "complete_bipartite";
        case SwiftMethod::union_of_components: return "union";
        case SwiftMethod::cone_theorem5: return "cone_theorem5";
        case SwiftMethod::numeric: return "numeric";
        case SwiftMethod::none: return "none";
    }
    return "?";
}

struct SwiftCertificate {
    std::optional<Matching> matching;
    std::optional<EulerianOrientation> orientation;
};

struct SwiftReport {
    SwiftVerdict verdict = SwiftVerdict::unknown;
    SwiftMethod method = SwiftMethod::none;
    std::optional<PhaseAssignment> phases;
    double residual = std::numeric_limits<double>::infinity();  // ||A~ 1||_2
    SwiftCertificate certificate;
    std::string reason;  // cited criterion for infeasible / failure note

    bool feasible() const { return verdict == SwiftVerdict::feasible; }
};

// True iff every row of H sums to zero within tol (infinity norm).
inline bool check_swift_configuration(const ChiralMatrix& H, double tol) {
    if (H.n() == 0) return true;
    return row_sums(H).cwiseAbs().maxCoeff() <= tol;
}

inline double swift_residual(const PhaseAssignment& phases) {
    if (phases.graph().n() == 0) return 0.0;
    return row_sums(build_chiral(phases.graph(), phases, MatrixKind::adjacency)).norm();
}

namespace detail {

inline SwiftReport finish_feasible(PhaseAssignment phases, SwiftMethod method,
                                   SwiftCertificate cert = {}) {
    SwiftReport r;
    r.verdict = SwiftVerdict::feasible;
    r.method = method;
    r.residual = swift_residual(phases);
    r.phases = std::move(phases);
    r.certificate = std::move(cert);
    return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Constructive routes
// ---------------------------------------------------------------------------

// All degrees even: orient every edge by Eulerian traversal and put
// theta = +pi/2 on each arc (i forward, -i backward). Per-vertex balance
// of the orientation cancels the row sums exactly.
inline SwiftReport synthesize_even_degree(const Graph& g) {
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) % 2 != 0) {
            SwiftReport r;
            r.verdict = SwiftVerdict::unknown;
            r.reason = "vertex " + std::to_string(v) + " has odd degree";
            return r;
        }
    EulerianOrientation orient = eulerian_circuit(g);
    PhaseAssignment phases(g);
    for (auto [u, v] : orient.arcs) phases.set(u, v, std::numbers::pi / 2.0);
    SwiftCertificate cert;
    cert.orientation = std::move(orient);
    return detail::finish_feasible(std::move(phases), SwiftMethod::even_eulerian, std::move(cert));
}

// d-regular with d odd: put phase 1 on a perfect matching and phase
// e^{+/- i phi} with cos(phi) = -1/(d-1) around an Eulerian orientation of
// the (d-1)-regular remainder; every row sums to 1 + (d-1) cos(phi) = 0.
// For d = 3 this is exactly the cubic construction (phi = 2 pi / 3) and a
// missing matching certifies infeasibility; for d > 3 a missing matching
// leaves the verdict unknown.
inline SwiftReport synthesize_odd_regular(const Graph& g) {
    GraphStats s = analyze(g);
    SwiftReport r;
    if (!s.is_regular || s.regular_degree % 2 == 0 || s.regular_degree < 3) {
        r.verdict = SwiftVerdict::unknown;
        r.reason = "graph is not odd-regular of degree >= 3";
        return r;
    }
    int d = s.regular_degree;
    std::optional<Matching> matching = perfect_matching(g);
    if (!matching) {
        if (d == 3) {
            r.verdict = SwiftVerdict::infeasible;
            r.reason = "3-regular graph has no perfect matching";
        } else {
            r.verdict = SwiftVerdict::unknown;
            r.reason = "no perfect matching; no criterion known for degree " + std::to_string(d);
        }
        return r;
    }
    std::vector<Edge> rest;
    for (auto e : g.edges())
        if (std::find(matching->pairs.begin(), matching->pairs.end(), e) ==
            matching->pairs.end())
            rest.push_back(e);
    Graph remainder(g.n(), rest);  // (d-1)-regular, all degrees even
    EulerianOrientation orient = eulerian_circuit(remainder);

    double phi = std::acos(-1.0 / (d - 1));
    PhaseAssignment phases(g);
    for (auto [u, v] : matching->pairs) phases.set(u, v, 0.0);
    for (auto [u, v] : orient.arcs) phases.set(u, v, phi);
    SwiftCertificate cert;
    cert.matching = std::move(*matching);
    cert.orientation = std::move(orient);
    return detail::finish_feasible(std::move(phases), SwiftMethod::odd_regular_matching,
                                   std::move(cert));
}

// K_{N1,N2} with parts 0..N1-1 and N1..N1+N2-1: cross phases
// theta(j -> k) = 2 pi (j/N1 + k/N2). Each row and column sum is a full
// sum of roots of unity, hence zero; needs N1, N2 >= 2 (a part of size 1
// leaves degree-1 vertices, which admit no swift configuration).
inline SwiftReport synthesize_complete_bipartite(int n1, int n2) {
    SwiftReport r;
    if (n1 < 1 || n2 < 1)
        throw std::invalid_argument("synthesize_complete_bipartite: parts must be nonempty");
    if (n1 < 2 || n2 < 2) {
        r.verdict = SwiftVerdict::infeasible;
        r.reason = "complete bipartite with a part of size 1 has degree-1 vertices";
        return r;
    }
    Graph g = complete_bipartite(n1, n2);
    PhaseAssignment phases(g);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (int j = 0; j < n1; ++j)
        for (int k = 0; k < n2; ++k)
            phases.set(j, n1 + k, two_pi * (double(j) / n1 + double(k) / n2));
    return detail::finish_feasible(std::move(phases), SwiftMethod::complete_bipartite);
}

// Concatenates per-component reports onto the disjoint union of their host
// graphs. Any non-feasible part propagates; the empty list is vacuously
// feasible on the empty graph.
inline SwiftReport synthesize_union(std::span<const SwiftReport> parts) {
    SwiftReport out;
    out.method = SwiftMethod::union_of_components;
    for (const auto& part : parts) {
        if (!part.feasible()) {
            out.verdict = part.verdict;
            out.reason = part.reason.empty() ? "component not feasible" : part.reason;
            return out;
        }
        if (!part.phases)
            throw std::invalid_argument("synthesize_union: feasible part without phases");
    }
    Graph g;  // empty
    std::vector<double> angles;
    SwiftCertificate cert;
    for (const auto& part : parts) {
        const Graph& h = part.phases->graph();
        int offset = g.n();
        g = disjoint_union(g, h);
        // disjoint_union appends h's edges after g's (both canonical sorted
        // and h's endpoints all above offset), so angle order is preserved.
        for (int e = 0; e < h.edge_count(); ++e) angles.push_back(part.phases->angle_by_index(e));
        if (part.certificate.matching) {
            if (!cert.matching) cert.matching.emplace();
            for (auto [u, v] : part.certificate.matching->pairs)
                cert.matching->pairs.push_back({u + offset, v + offset});
        }
        if (part.certificate.orientation) {
            if (!cert.orientation) cert.orientation.emplace();
            for (auto [u, v] : part.certificate.orientation->arcs)
                cert.orientation->arcs.push_back({u + offset, v + offset});
        }
    }
    PhaseAssignment phases(g);
    for (size_t e = 0; e < angles.size(); ++e) phases.set_by_index(static_cast<int>(e), angles[e]);
    out = detail::finish_feasible(std::move(phases), SwiftMethod::union_of_components,
                                  std::move(cert));
    return out;
}

// ---------------------------------------------------------------------------
// Numeric fallback: Gauss-Newton on the torus of edge angles
// ---------------------------------------------------------------------------

struct SolverOptions {
    int restarts = 50;
    int max_iters = 5000;
    double tol = 1e-10;  // feasible when ||A~ 1||_2 < tol
    std::uint64_t seed = 0;
};

namespace detail {

// Row sums r_u(theta) = sum over incident edges of e^{+/- i theta_e}.
inline Eigen::VectorXcd torus_row_sums(const Graph& g, const Eigen::VectorXd& theta) {
    Eigen::VectorXcd r = Eigen::VectorXcd::Zero(g.n());
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges()[e];
        Complex w = std::polar(1.0, theta(e));
        r(u) += w;
        r(v) += std::conj(w);
    }
    return r;
}

}  // namespace detail

// Minimizes f(theta) = ||A~(theta) 1||_2^2 by damped Gauss-Newton steps with
// backtracking, restarted from uniform random angles. Convergence below tol
// certifies feasibility; failure to converge proves nothing and yields
// verdict `unknown`. Deterministic for a fixed seed.
inline SwiftReport numeric_swift_solver(const Graph& g, const SolverOptions& opts = {}) {
    SwiftReport out;
    out.method = SwiftMethod::numeric;
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) == 1) {
            out.verdict = SwiftVerdict::infeasible;
            out.reason = "vertex " + std::to_string(v) + " has degree 1";
            return out;
        }
    int m = g.edge_count();
    if (m == 0) {
        PhaseAssignment phases(g);
        return detail::finish_feasible(std::move(phases), SwiftMethod::numeric);
    }

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
    const int n = g.n();
    double best_f = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_theta;
    const double target = opts.tol * opts.tol;

    for (int restart = 0; restart < opts.restarts; ++restart) {
        Eigen::VectorXd theta(m);
        for (int e = 0; e < m; ++e) theta(e) = uniform(rng);

        Eigen::VectorXcd r = detail::torus_row_sums(g, theta);
        double f = r.squaredNorm();
        double lambda = 1e-3;

        for (int iter = 0; iter < opts.max_iters && f >= target; ++iter) {
            // Real residual R = [Re r; Im r], Jacobian column per edge:
            // d r_u / d theta_e = i e^{i theta_e}, d r_v / d theta_e = -i e^{-i theta_e}.
            Eigen::VectorXd R(2 * n);
            R.head(n) = r.real();
            R.tail(n) = r.imag();
            Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, m);
            for (int e = 0; e < m; ++e) {
                auto [u, v] = g.edges()[e];
                Complex du = Complex(0, 1) * std::polar(1.0, theta(e));
                Complex dv = std::conj(du);  // derivative of conj entry
                J(u, e) += du.real();
                J(n + u, e) += du.imag();
                J(v, e) += dv.real();
                J(n + v, e) += dv.imag();
            }
            Eigen::VectorXd grad = J.transpose() * R;
            if (grad.lpNorm<Eigen::Infinity>() < 1e-14) break;  // stationary, restart

            Eigen::MatrixXd JtJ = J.transpose() * J;
            bool improved = false;
            for (int attempt = 0; attempt < 12 && !improved; ++attempt) {
                Eigen::MatrixXd damped = JtJ;
                damped.diagonal().array() += lambda;
                Eigen::VectorXd delta = damped.ldlt().solve(-grad);
                // Backtracking line search on the step.
                double alpha = 1.0;
                for (int bt = 0; bt < 20; ++bt, alpha *= 0.5) {
                    Eigen::VectorXd cand = theta + alpha * delta;
                    Eigen::VectorXcd rc = detail::torus_row_sums(g, cand);
                    double fc = rc.squaredNorm();
                    if (fc < f) {
                        theta = cand;
                        r = rc;
                        f = fc;
                        improved = true;
                        break;
                    }
                }
                if (!improved) lambda *= 10.0;
            }
            if (!improved) break;  // stuck, next restart
            lambda = std::max(lambda * 0.3, 1e-12);
        }

        if (f < best_f) {
            best_f = f;
            best_theta = theta;
        }
        if (f < target) break;
    }

    out.residual = std::sqrt(best_f);
    if (best_f < target) {
        PhaseAssignment phases(g);
        for (int e = 0; e < m; ++e) phases.set_by_index(e, wrap_angle(best_theta(e)));
        out.verdict = SwiftVerdict::feasible;
        out.phases = std::move(phases);
    } else {
        out.verdict = SwiftVerdict::unknown;
        out.reason = "solver did not reach tolerance; not an infeasibility proof";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dispatcher
// ---------------------------------------------------------------------------

namespace detail {

inline bool is_complete_bipartite(const Graph& g, int& n1_out, int& n2_out) {
    if (g.n() < 2 || g.edge_count() == 0) return false;
    // 2-color by BFS; it must cover the (connected) graph.
    std::vector<int> color(g.n(), -1);
    std::queue<int> q;
    color[0] = 0;
    q.push(0);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : g.neighbors(v)) {
            if (color[w] == -1) {
                color[w] = 1 - color[v];
                q.push(w);
            } else if (color[w] == color[v]) {
                return false;
            }
        }
    }
    int n1 = 0;
    for (int v = 0; v < g.n(); ++v) {
        if (color[v] == -1) return false;  // disconnected
        if (color[v] == 0) ++n1;
    }
    int n2 = g.n() - n1;
    if (g.edge_count() != n1 * n2) return false;
    n1_out = n1;
    n2_out = n2;
    return true;
}

// Synthesis for one connected component (or any graph handed to a single
// route). Tries the paper's constructive criteria in order, then the
// numeric solver.
inline SwiftReport synthesize_component(const Graph& g, const SolverOptions& opts) {
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) == 1) {
            SwiftReport r;
            r.verdict = SwiftVerdict::infeasible;
            r.reason = "vertex " + std::to_string(v) + " has degree 1";
            return r;
        }

    bool all_even = true;
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) % 2 != 0) all_even = false;
    if (all_even) return synthesize_even_degree(g);

    GraphStats s = analyze(g);
    if (s.is_regular && s.regular_degree % 2 == 1 && s.regular_degree >= 3) {
        SwiftReport r = synthesize_odd_regular(g);
        if (r.verdict != SwiftVerdict::unknown) return r;
    }

    int n1 = 0, n2 = 0;
    if (is_complete_bipartite(g, n1, n2)) {
        SwiftReport r = synthesize_complete_bipartite(n1, n2);
        if (r.feasible()) {
            // Remap the canonical K_{n1,n2} phases onto g's own numbering.
            std::vector<int> part_a, part_b;
            std::vector<int> color(g.n(), -1);
            std::queue<int> q;
            color[0] = 0;
            q.push(0);
            while (!q.empty()) {
                int v = q.front();
                q.pop();
                for (int w : g.neighbors(v))
                    if (color[w] == -1) {
                        color[w] = 1 - color[v];
                        q.push(w);
                    }
            }
            for (int v = 0; v < g.n(); ++v) (color[v] == 0 ? part_a : part_b).push_back(v);
            PhaseAssignment phases(g);
            constexpr double two_pi = 2.0 * std::numbers::pi;
            for (int j = 0; j < n1; ++j)
                for (int k = 0; k < n2; ++k)
                    phases.set(part_a[j], part_b[k], two_pi * (double(j) / n1 + double(k) / n2));
            return finish_feasible(std::move(phases), SwiftMethod::complete_bipartite);
        }
        return r;
    }

    return numeric_swift_solver(g, opts);
}

}  // namespace detail

// Tries, per connected component: degree-1 rejection, the even-degree
// route, the odd-regular route, complete-bipartite recognition, and
// finally the numeric solver; components are then recombined. The verdict
// is `unknown` only when every constructive route passes and the solver
// fails to converge on some component.
inline SwiftReport synthesize_auto(const Graph& g, const SolverOptions& opts = {}) {
    auto comps = connected_components(g);
    if (comps.size() <= 1) {
        SwiftReport r = detail::synthesize_component(g, opts);
        return r;
    }
    std::vector<SwiftReport> parts;
    std::vector<Graph> part_graphs;
    for (const auto& comp : comps) {
        Graph sub = induced_subgraph(g, comp);
        SwiftReport r = detail::synthesize_component(sub, opts);
        if (!r.feasible()) return r;
        parts.push_back(std::move(r));
        part_graphs.push_back(std::move(sub));
    }
    // Components are emitted in BFS order from vertex 0 upward with sorted
    // members, so the disjoint union reproduces g's vertex numbering iff
    // components occupy contiguous ranges. In general they do not; remap.
    SwiftReport merged = synthesize_union(parts);
    if (!merged.feasible()) return merged;
    PhaseAssignment phases(g);
    for (size_t c = 0; c < comps.size(); ++c) {
        const auto& comp = comps[c];
        const auto& part = *parts[c].phases;
        for (int e = 0; e < part.graph().edge_count(); ++e) {
            auto [u, v] = part.graph().edges()[e];
            phases.set(comp[u], comp[v], part.angle_by_index(e));
        }
    }
    SwiftReport out;
    out.verdict = SwiftVerdict::feasible;
    out.method = comps.size() > 1 ? SwiftMethod::union_of_components : merged.method;
    out.residual = swift_residual(phases);
    out.phases = std::move(phases);
    for (size_t c = 0; c < comps.size(); ++c) {
        const auto& comp = comps[c];
        const auto& cert = parts[c].certificate;
        if (cert.matching) {
            if (!out.certificate.matching) out.certificate.matching.emplace();
            for (auto [u, v] : cert.matching->pairs)
                out.certificate.matching->pairs.push_back({comp[u], comp[v]});
        }
        if (cert.orientation) {
            if (!out.certificate.orientation) out.certificate.orientation.emplace();
            for (auto [u, v] : cert.orientation->arcs)
                out.certificate.orientation->arcs.push_back({comp[u], comp[v]});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Swift cone walks on general graphs (two-condition construction)
// ---------------------------------------------------------------------------

struct ConeWalkResult {
    std::optional<ChiralMatrix> hamiltonian;
    // Set when some non-neighbor of v shares exactly one common neighbor
    // with v (condition (b) violated).
    std::optional<int> condition_b_witness;
    std::string failure_reason;
    SwiftReport neighbor_report;  // synthesis on the neighbor subgraph
};

// Swift walk from vertex v of a connected graph. Checks that every
// non-neighbor of v has 0 or >= 2 common neighbours with v, synthesizes a
// swift configuration on the subgraph induced by the neighbours of v, and
// fills each cross-block row with roots of unity so it sums to zero.
// Edges from v and among non-neighbours keep phase 0. The walk from v then
// stays in a two-dimensional subspace with return cos^2(sqrt(deg v) t).
inline ConeWalkResult synthesize_cone_walk(const Graph& g, int v,
                                           const SolverOptions& opts = {}) {
    if (v < 0 || v >= g.n()) throw std::invalid_argument("synthesize_cone_walk: vertex out of range");
    ConeWalkResult out;

    const std::vector<int>& nbrs = g.neighbors(v);
    if (nbrs.empty()) {
        out.failure_reason = "start vertex has no neighbors";
        return out;
    }
    std::vector<char> is_nbr(g.n(), 0);
    for (int w : nbrs) is_nbr[w] = 1;

    // Condition (b): common-neighbour count for every non-neighbour.
    for (int u = 0; u < g.n(); ++u) {
        if (u == v || is_nbr[u]) continue;
        int common = 0;
        for (int w : g.neighbors(u))
            if (is_nbr[w]) ++common;
        if (common == 1) {
            out.condition_b_witness = u;
            out.failure_reason =
                "vertex " + std::to_string(u) + " has exactly one common neighbor with " +
                std::to_string(v);
            return out;
        }
    }

    // Condition (a): swift configuration on the neighbour subgraph.
    std::vector<int> nbr_sorted = nbrs;  // already sorted
    Graph nbr_graph = induced_subgraph(g, nbr_sorted);
    out.neighbor_report = synthesize_auto(nbr_graph, opts);
    if (!out.neighbor_report.feasible()) {
        out.failure_reason = "no swift configuration on the neighbor subgraph: " +
                             out.neighbor_report.reason;
        return out;
    }

    PhaseAssignment phases(g);  // v-edges and non-neighbour edges stay 0
    const PhaseAssignment& inner = *out.neighbor_report.phases;
    for (int e = 0; e < nbr_graph.edge_count(); ++e) {
        auto [a, b] = nbr_graph.edges()[e];
        phases.set(nbr_sorted[a], nbr_sorted[b], inner.angle_by_index(e));
    }
    // Cross rows: the c >= 2 ones of each non-neighbour row become the
    // c-th roots of unity, filled in increasing column order.
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (int u = 0; u < g.n(); ++u) {
        if (u == v || is_nbr[u]) continue;
        std::vector<int> common;
        for (int w : g.neighbors(u))
            if (is_nbr[w]) common.push_back(w);
        int c = static_cast<int>(common.size());
        for (int s = 0; s < c; ++s) phases.set(u, common[s], two_pi * s / c);
    }
    out.hamiltonian = build_chiral(g, phases, MatrixKind::adjacency);
    return out;
}

}  // namespace chiralwalk
