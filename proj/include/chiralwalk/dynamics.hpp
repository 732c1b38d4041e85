#pragma once

// Exact unitary dynamics for chiral generators: eigendecomposition-based
// propagation, transport and return probabilities, the 2x2 reduced-block
// machinery for cone walks, the closed-form reference profiles, quantum
// speed limits and the Laplacian sedentarity bound.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chiralwalk/chiral.hpp"
#include "chiralwalk/graph.hpp"

namespace chiralwalk {

// e^{-iHt} evaluated through a cached Hermitian eigendecomposition;
// diagonalize once, evaluate at any t.
class Propagator {
public:
    explicit Propagator(const ChiralMatrix& H) : n_(H.n()) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.mat);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("Propagator: Hermitian eigensolver failed");
        eigenvalues_ = es.eigenvalues();
        eigenvectors_ = es.eigenvectors();
    }

    int n() const { return n_; }
    const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
    double ground_energy() const { return eigenvalues_.minCoeff(); }

    // e^{-iHt} e_source
    Eigen::VectorXcd column(int source, double t) const {
        check_vertex(source);
        Eigen::VectorXcd coeffs = eigenvectors_.row(source).adjoint();  // V^dag e_source
        for (int j = 0; j < n_; ++j) coeffs(j) *= std::polar(1.0, -eigenvalues_(j) * t);
        return eigenvectors_ * coeffs;
    }

    Complex amplitude(int source, int target, double t) const {
        check_vertex(source);
        check_vertex(target);
        Complex a = 0.0;
        for (int j = 0; j < n_; ++j)
            a += eigenvectors_(target, j) * std::conj(eigenvectors_(source, j)) *
                 std::polar(1.0, -eigenvalues_(j) * t);
        return a;
    }

    // Return amplitude <v| e^{-iHt} |v> = sum_j |V_vj|^2 e^{-i lambda_j t}.
    Complex return_amplitude(int v, double t) const {
        check_vertex(v);
        Complex a = 0.0;
        for (int j = 0; j < n_; ++j)
            a += std::norm(eigenvectors_(v, j)) * std::polar(1.0, -eigenvalues_(j) * t);
        return a;
    }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw std::invalid_argument("Propagator: vertex out of range");
    }

    int n_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXcd eigenvectors_;
};

inline Eigen::VectorXcd propagator_column(const ChiralMatrix& H, int source, double t) {
    return Propagator(H).column(source, t);
}

inline double transport_probability(const Propagator& P, int j, int k, double t) {
    return std::norm(P.amplitude(j, k, t));
}

inline double transport_probability(const ChiralMatrix& H, int j, int k, double t) {
    return transport_probability(Propagator(H), j, k, t);
}

struct EvolutionSeries {
    std::vector<double> times;
    std::vector<double> values;  // probabilities
    int source = 0;
    int target = 0;
    std::string generator;

    double min_value() const {
        double m = 2.0;
        for (double v : values) m = std::min(m, v);
        return m;
    }
    double time_of_min() const {
        size_t best = 0;
        for (size_t i = 1; i < values.size(); ++i)
            if (values[i] < values[best]) best = i;
        return times[best];
    }
    // First grid time with value below `eps`, if any.
    std::optional<double> first_zero(double eps = 1e-9) const {
        for (size_t i = 0; i < values.size(); ++i)
            if (values[i] < eps) return times[i];
        return std::nullopt;
    }
};

struct SeriesPoint {
    double t = 0.0;
    double p = 0.0;
};

namespace detail {

// Parabola through the three samples around an interior local minimum.
inline SeriesPoint refine_parabolic(const EvolutionSeries& s, size_t i) {
    double pm = s.values[i - 1], p0 = s.values[i], pp = s.values[i + 1];
    double denom = pm - 2.0 * p0 + pp;
    if (denom <= 0.0) return {s.times[i], s.values[i]};
    double h = s.times[i + 1] - s.times[i];
    double shift = 0.5 * (pm - pp) / denom;
    return {s.times[i] + shift * h, p0 - 0.125 * (pm - pp) * (pm - pp) / denom};
}

}  // namespace detail

// Grid minimum refined by parabolic interpolation; exact grids are coarse
// relative to the quadratic dips of cos^2-type profiles.
inline SeriesPoint refined_minimum(const EvolutionSeries& s) {
    size_t best = 0;
    for (size_t i = 1; i < s.values.size(); ++i)
        if (s.values[i] < s.values[best]) best = i;
    if (best == 0 || best + 1 == s.values.size()) return {s.times[best], s.values[best]};
    SeriesPoint r = detail::refine_parabolic(s, best);
    return r.p < s.values[best] ? r : SeriesPoint{s.times[best], s.values[best]};
}

// First local minimum whose refined value drops below `eps`.
inline std::optional<SeriesPoint> refined_first_zero(const EvolutionSeries& s,
                                                     double eps = 1e-6) {
    for (size_t i = 1; i + 1 < s.values.size(); ++i) {
        if (s.values[i] > s.values[i - 1] || s.values[i] > s.values[i + 1]) continue;
        SeriesPoint r = detail::refine_parabolic(s, i);
        if (r.p < eps) return r;
    }
    return std::nullopt;
}

inline std::vector<double> uniform_grid(double t_max, int steps) {
    if (steps < 2) throw std::invalid_argument("time grid needs at least 2 samples");
    if (!(t_max > 0)) throw std::invalid_argument("t_max must be positive");
    std::vector<double> ts(steps);
    for (int i = 0; i < steps; ++i) ts[i] = t_max * i / (steps - 1);
    return ts;
}

inline EvolutionSeries return_series(const Propagator& P, int v, double t_max, int steps) {
    EvolutionSeries s;
    s.times = uniform_grid(t_max, steps);
    s.values.reserve(steps);
    for (double t : s.times) s.values.push_back(std::norm(P.return_amplitude(v, t)));
    s.source = s.target = v;
    return s;
}

inline EvolutionSeries return_series(const ChiralMatrix& H, int v, double t_max, int steps) {
    auto s = return_series(Propagator(H), v, t_max, steps);
    s.generator = to_string(H.kind);
    return s;
}

// ---------------------------------------------------------------------------
// Closed-form reference profiles
// ---------------------------------------------------------------------------

// Apex return probability of the adjacency walk on a cone over an
// m-regular graph of order N: the dynamics lives in the 2x2 block
// [[0, sqrt(N)], [sqrt(N), m]].
inline double closed_form_cone_adjacency(int m, int N, double t) {
    if (N < 1) throw std::invalid_argument("closed_form_cone_adjacency: N >= 1");
    if (m < 0) throw std::invalid_argument("closed_form_cone_adjacency: m >= 0");
    double omega = std::sqrt(double(m) * m + 4.0 * N);
    return 1.0 - (2.0 * N / (m * double(m) + 4.0 * N)) * (1.0 - std::cos(omega * t));
}

// Swift profile: cos^2(sqrt(N) t), N the degree of the start vertex.
inline double closed_form_swift(int N, double t) {
    if (N < 1) throw std::invalid_argument("closed_form_swift: N >= 1");
    double c = std::cos(std::sqrt(double(N)) * t);
    return c * c;
}

// Apex return of the classical Laplacian walk on any cone with apex degree
// N; forced by the universal reduced block [[N, -sqrt(N)], [-sqrt(N), 1]].
// Minimum over t is ((N-1)/(N+1))^2.
inline double closed_form_laplacian_cone(int N, double t) {
    if (N < 1) throw std::invalid_argument("closed_form_laplacian_cone: N >= 1");
    double np1 = N + 1.0;
    return 1.0 - (2.0 * N / (np1 * np1)) * (1.0 - std::cos(np1 * t));
}

// Return probability of the Laplacian-type reduced block
// [[N, sqrt(N)], [sqrt(N), k]]; k = N degenerates to the swift profile.
inline double closed_form_laplacian_reduced(double k, int N, double t) {
    if (N < 1) throw std::invalid_argument("closed_form_laplacian_reduced: N >= 1");
    double gap2 = (k - N) * (k - N) + 4.0 * N;
    return 1.0 - (2.0 * N / gap2) * (1.0 - std::cos(std::sqrt(gap2) * t));
}

// ---------------------------------------------------------------------------
// Grover-oracle Laplacian
// ---------------------------------------------------------------------------

// L - (N-1) P_apex: the classical Laplacian with the apex diagonal lowered
// by N-1 (N = apex degree). The apex must be adjacent to every other
// vertex; the apex return probability is then cos^2(sqrt(N) t).
inline ChiralMatrix grover_oracle_laplacian(const Graph& g, int apex) {
    if (apex < 0 || apex >= g.n())
        throw std::invalid_argument("grover_oracle_laplacian: apex out of range");
    if (g.degree(apex) != g.n() - 1)
        throw std::invalid_argument("grover_oracle_laplacian: apex must neighbor every vertex");
    int N = g.degree(apex);
    Eigen::VectorXd diag(g.n());
    for (int v = 0; v < g.n(); ++v) diag(v) = g.degree(v);
    diag(apex) -= (N - 1);
    // Off-diagonals of a Laplacian are -1 = e^{i pi}.
    PhaseAssignment pi_phases(g);
    for (int e = 0; e < g.edge_count(); ++e) pi_phases.set_by_index(e, std::numbers::pi);
    return build_chiral(g, pi_phases, MatrixKind::general, diag);
}

// ---------------------------------------------------------------------------
// Reduced 2x2 block
// ---------------------------------------------------------------------------

struct ReducedBlock {
    double a = 0.0;         // <e_v|H|e_v>
    double k = 0.0;         // <e_E|H|e_E>
    double coupling = 0.0;  // sqrt(deg v)
    Eigen::VectorXcd e_source;
    Eigen::VectorXcd e_flat;

    Eigen::Matrix2d matrix() const {
        Eigen::Matrix2d b;
        b << a, coupling, coupling, k;
        return b;
    }
};

// Builds e_E proportional to the off-diagonal part of column v and returns
// the 2x2 block only when span{e_v, e_E} is invariant under H (residual
// below `tol`); otherwise absent.
inline std::optional<ReducedBlock> reduce_to_block(const ChiralMatrix& H, int v,
                                                   double tol = 1e-10) {
    if (v < 0 || v >= H.n()) throw std::invalid_argument("reduce_to_block: vertex out of range");
    int deg = H.graph.degree(v);
    if (deg == 0) return std::nullopt;

    ReducedBlock blk;
    blk.e_source = Eigen::VectorXcd::Zero(H.n());
    blk.e_source(v) = 1.0;
    Eigen::VectorXcd w = H.mat.col(v);
    w(v) = 0.0;
    blk.coupling = w.norm();  // = sqrt(deg v), entries are unit modulus
    blk.e_flat = w / blk.coupling;
    blk.a = H.mat(v, v).real();
    blk.k = (blk.e_flat.adjoint() * H.mat * blk.e_flat)(0).real();

    // Invariance: H e_E must stay inside span{e_v, e_E}.
    Eigen::VectorXcd he = H.mat * blk.e_flat;
    Eigen::VectorXcd proj = blk.coupling * blk.e_source + blk.k * blk.e_flat;
    if ((he - proj).norm() > tol) return std::nullopt;
    return blk;
}

// ---------------------------------------------------------------------------
// Quantum speed limit
// ---------------------------------------------------------------------------

struct QslReport {
    double mean_energy = 0.0;    // <H> on the start vertex
    double delta_h = 0.0;        // energy standard deviation, = sqrt(deg v)
    double ground_energy = 0.0;  // E_0
    double tau_qsl = 0.0;        // max of the two orthogonalization bounds
    double tau_s = 0.0;          // pi / (2 sqrt(deg v))
};

// Moments come straight from the v-th row: <H> = H_vv and <H^2> is the
// squared row norm, so delta_h = sqrt(deg v) for every chiral generator
// with a real diagonal.
inline QslReport qsl(const ChiralMatrix& H, int v) {
    if (v < 0 || v >= H.n()) throw std::invalid_argument("qsl: vertex out of range");
    int deg = H.graph.degree(v);
    if (deg == 0) throw std::invalid_argument("qsl: start vertex has no neighbors");
    QslReport r;
    r.mean_energy = H.mat(v, v).real();
    double second_moment = H.mat.row(v).squaredNorm();
    r.delta_h = std::sqrt(std::max(0.0, second_moment - r.mean_energy * r.mean_energy));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.mat, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("qsl: eigensolver failed");
    r.ground_energy = es.eigenvalues().minCoeff();
    constexpr double pi = std::numbers::pi;
    double via_variance = pi / (2.0 * r.delta_h);
    double via_mean = (r.mean_energy > r.ground_energy)
                          ? pi / (2.0 * (r.mean_energy - r.ground_energy))
                          : std::numeric_limits<double>::infinity();
    r.tau_qsl = std::max(via_variance, via_mean);
    r.tau_s = pi / (2.0 * std::sqrt(double(deg)));
    return r;
}

// ---------------------------------------------------------------------------
// Sedentarity (Laplacian no-go bound)
// ---------------------------------------------------------------------------

struct SedentarityReport {
    double min_return = 1.0;
    int d_sup = 0;  // max full-graph degree among vertices other than the source
    std::optional<double> nogo_bound;  // 1 - sqrt(N)/(N - 2 d_sup), needs 2 d_sup < N
    bool bound_violated = false;       // must never be true
};

// Minimum grid return probability of a Laplacian-type walk against the
// analytic lower bound 1 - sqrt(N)/(N - 2 d^>). d^> is measured in the
// full graph over the non-source vertices.
inline SedentarityReport sedentarity_report(const ChiralMatrix& H, int v, double t_max,
                                            int steps) {
    if (H.kind != MatrixKind::laplacian)
        throw std::invalid_argument("sedentarity_report: Laplacian kind required");
    if (v < 0 || v >= H.n())
        throw std::invalid_argument("sedentarity_report: vertex out of range");
    SedentarityReport r;
    for (int u = 0; u < H.n(); ++u)
        if (u != v) r.d_sup = std::max(r.d_sup, H.graph.degree(u));
    int N = H.graph.degree(v);
    if (2 * r.d_sup < N) r.nogo_bound = 1.0 - std::sqrt(double(N)) / (N - 2.0 * r.d_sup);
    r.min_return = return_series(H, v, t_max, steps).min_value();
    if (r.nogo_bound) r.bound_violated = r.min_return < *r.nogo_bound - 1e-9;
    return r;
}

}  // namespace chiralwalk
