// Synthesize a swift phase configuration on the Petersen graph, lift it to
// the cone, and compare the apex return probability with cos^2(sqrt(10) t).

#include <cstdio>
#include <numbers>

#include "chiralwalk/chiralwalk.hpp"

using namespace chiralwalk;

int main() {
    Graph base = petersen();
    SwiftReport r = synthesize_auto(base);
    std::printf("synthesis on Petersen: %s via %s, residual %.3g\n",
                to_string(r.verdict).c_str(), to_string(r.method).c_str(), r.residual);
    if (!r.feasible()) return 1;

    Graph coned = cone(base);
    PhaseAssignment phases(coned);
    for (int e = 0; e < base.edge_count(); ++e) {
        auto [u, v] = base.edges()[e];
        phases.set(u + 1, v + 1, r.phases->angle_by_index(e));
    }
    ChiralMatrix H = build_chiral(coned, phases, MatrixKind::adjacency);
    Propagator P(H);

    int N = base.n();
    double tau_s = std::numbers::pi / (2.0 * std::sqrt(double(N)));
    std::printf("apex degree N = %d, tau_s = %.6f\n\n", N, tau_s);
    std::printf("%8s  %12s  %12s\n", "t", "simulated", "cos^2");
    for (double t : {0.0, 0.25 * tau_s, 0.5 * tau_s, tau_s, 2.0 * tau_s}) {
        double sim = std::norm(P.return_amplitude(0, t));
        std::printf("%8.4f  %12.9f  %12.9f\n", t, sim, closed_form_swift(N, t));
    }
    return 0;
}
