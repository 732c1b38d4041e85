#pragma once

// Chiral generators: Hermitian matrices carrying unit-modulus phases on the
// edges of a host graph. Three kinds are supported — adjacency (zero
// diagonal), Laplacian (degree diagonal, off-diagonal = minus the phase)
// and general (free real diagonal). Also quasi-gauge transformations,
// cone gauge fixing and the spectral bound checks.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chiralwalk/graph.hpp"

namespace chiralwalk {

using Complex = std::complex<double>;

inline double wrap_angle(double theta) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double t = std::fmod(theta, two_pi);
    if (t < 0) t += two_pi;
    if (t == two_pi) t = 0.0;
    return t;
}

// Antisymmetric edge phases theta_{uv} on the edges of a host graph.
// Storage is per canonical edge (u < v): entry (u,v) of the chiral
// adjacency is e^{i theta}, entry (v,u) its conjugate.
class PhaseAssignment {
public:
    PhaseAssignment() = default;
    explicit PhaseAssignment(Graph g)
        : graph_(std::move(g)), theta_(graph_.edge_count(), 0.0) {}

    const Graph& graph() const { return graph_; }
    const std::vector<double>& angles() const { return theta_; }

    // Sets theta for the orientation u -> v (either order accepted).
    void set(int u, int v, double theta) {
        int idx = graph_.edge_index(u, v);
        if (idx < 0)
            throw std::invalid_argument("phase on non-edge (" + std::to_string(u) + "," +
                                        std::to_string(v) + ")");
        theta_[idx] = wrap_angle(u < v ? theta : -theta);
    }

    // Angle for the orientation u -> v.
    double get(int u, int v) const {
        int idx = graph_.edge_index(u, v);
        if (idx < 0)
            throw std::invalid_argument("phase queried on non-edge (" + std::to_string(u) + "," +
                                        std::to_string(v) + ")");
        return u < v ? theta_[idx] : wrap_angle(-theta_[idx]);
    }

    void set_by_index(int edge_idx, double theta) { theta_.at(edge_idx) = wrap_angle(theta); }
    double angle_by_index(int edge_idx) const { return theta_.at(edge_idx); }

    bool all_zero() const {
        for (double t : theta_)
            if (t != 0.0) return false;
        return true;
    }

private:
    Graph graph_;
    std::vector<double> theta_;
};

inline PhaseAssignment zero_phases(const Graph& g) { return PhaseAssignment(g); }

enum class MatrixKind { adjacency, laplacian, general };

inline std::string to_string(MatrixKind k) {
    switch (k) {
        case MatrixKind::adjacency: return "adjacency";
        case MatrixKind::laplacian: return "laplacian";
        case MatrixKind::general: return "general";
    }
    return "?";
}

// Hermitian generator on a host graph. Off-diagonal (j,k) is zero iff
// {j,k} is not an edge, and has unit modulus otherwise.
struct ChiralMatrix {
    Eigen::MatrixXcd mat;
    MatrixKind kind = MatrixKind::adjacency;
    Eigen::VectorXd diagonal;
    Graph graph;

    int n() const { return graph.n(); }

    // Recovers the edge phases (adjacency convention: entry = e^{i theta};
    // Laplacian entries carry an extra minus sign).
    PhaseAssignment phases() const {
        PhaseAssignment p(graph);
        double sign = (kind == MatrixKind::laplacian) ? -1.0 : 1.0;
        for (int e = 0; e < graph.edge_count(); ++e) {
            auto [u, v] = graph.edges()[e];
            p.set_by_index(e, std::arg(sign * mat(u, v)));
        }
        return p;
    }
};

inline ChiralMatrix build_chiral(const Graph& g, const PhaseAssignment& phases, MatrixKind kind,
                                 const std::optional<Eigen::VectorXd>& diagonal = std::nullopt) {
    if (!(phases.graph() == g))
        throw std::invalid_argument("build_chiral: phase assignment lives on a different graph");
    if (kind == MatrixKind::general) {
        if (!diagonal) throw std::invalid_argument("build_chiral: general kind needs a diagonal");
        if (diagonal->size() != g.n())
            throw std::invalid_argument("build_chiral: diagonal length mismatch");
    } else if (diagonal) {
        throw std::invalid_argument("build_chiral: diagonal only allowed for general kind");
    }

    ChiralMatrix H;
    H.kind = kind;
    H.graph = g;
    H.mat = Eigen::MatrixXcd::Zero(g.n(), g.n());

    double sign = (kind == MatrixKind::laplacian) ? -1.0 : 1.0;
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges()[e];
        Complex w = sign * std::polar(1.0, phases.angle_by_index(e));
        H.mat(u, v) = w;
        H.mat(v, u) = std::conj(w);
    }

    H.diagonal = Eigen::VectorXd::Zero(g.n());
    if (kind == MatrixKind::laplacian) {
        for (int v = 0; v < g.n(); ++v) H.diagonal(v) = g.degree(v);
    } else if (kind == MatrixKind::general) {
        H.diagonal = *diagonal;
    }
    for (int v = 0; v < g.n(); ++v) H.mat(v, v) = H.diagonal(v);
    return H;
}

inline ChiralMatrix classical_adjacency(const Graph& g) {
    return build_chiral(g, zero_phases(g), MatrixKind::adjacency);
}

inline ChiralMatrix classical_laplacian(const Graph& g) {
    return build_chiral(g, zero_phases(g), MatrixKind::laplacian);
}

inline Eigen::VectorXcd row_sums(const ChiralMatrix& H) {
    return H.mat * Eigen::VectorXcd::Ones(H.n());
}

// Per-vertex angles of a diagonal unitary U = diag(e^{i alpha_v}).
struct GaugeTransform {
    Eigen::VectorXd angles;

    GaugeTransform inverse() const { return {-angles}; }
};

// H' = U H U^dagger; shifts the phase of edge (j,k) by alpha_j - alpha_k
// while preserving kind, diagonal and support.
inline ChiralMatrix gauge_transform(const ChiralMatrix& H, const GaugeTransform& u) {
    if (u.angles.size() != H.n())
        throw std::invalid_argument("gauge_transform: dimension mismatch");
    ChiralMatrix out = H;
    for (auto [j, k] : H.graph.edges()) {
        Complex shift = std::polar(1.0, u.angles(j) - u.angles(k));
        out.mat(j, k) = H.mat(j, k) * shift;
        out.mat(k, j) = std::conj(out.mat(j, k));
    }
    return out;
}

// Gauge fixing for walks out of `apex`: returns the gauge-equivalent matrix
// whose apex-row off-diagonal entries are all exactly 1, plus the transform
// that maps the input to it. Vertices not adjacent to the apex keep angle 0.
inline std::pair<ChiralMatrix, GaugeTransform> gauge_fix_cone(const ChiralMatrix& H, int apex) {
    if (H.kind == MatrixKind::laplacian)
        throw std::invalid_argument("gauge_fix_cone: adjacency or general kind required");
    if (apex < 0 || apex >= H.n()) throw std::invalid_argument("gauge_fix_cone: apex out of range");
    if (H.graph.degree(apex) == 0)
        throw std::invalid_argument("gauge_fix_cone: apex has no neighbors");
    GaugeTransform u{Eigen::VectorXd::Zero(H.n())};
    // e^{i a_apex} H_{apex,k} e^{-i a_k} = 1 with a_apex = 0.
    for (int k : H.graph.neighbors(apex)) u.angles(k) = std::arg(H.mat(apex, k));
    ChiralMatrix fixed = gauge_transform(H, u);
    for (int k : H.graph.neighbors(apex)) {  // make the ones exact
        fixed.mat(apex, k) = 1.0;
        fixed.mat(k, apex) = 1.0;
    }
    return {fixed, u};
}

struct SpectralBoundReport {
    double max_abs_eigenvalue = 0.0;
    double bound = 0.0;
    bool pass = false;
};

// Checks |lambda| <= d_max for adjacency kind and |lambda| <= 2 d_max for
// Laplacian kind, d_max being the largest degree of the host graph. The
// general kind is rejected: no bound is claimed for free diagonals.
inline SpectralBoundReport verify_spectral_bounds(const ChiralMatrix& H, double slack = 1e-9) {
    if (H.kind == MatrixKind::general)
        throw std::invalid_argument("verify_spectral_bounds: no bound stated for general kind");
    SpectralBoundReport r;
    GraphStats s = analyze(H.graph);
    r.bound = (H.kind == MatrixKind::adjacency) ? s.max_degree : 2.0 * s.max_degree;
    if (H.n() == 0) {
        r.pass = true;
        return r;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.mat, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("verify_spectral_bounds: eigensolver failed");
    r.max_abs_eigenvalue = es.eigenvalues().cwiseAbs().maxCoeff();
    r.pass = r.max_abs_eigenvalue <= r.bound + slack;
    return r;
}

}  // namespace chiralwalk
