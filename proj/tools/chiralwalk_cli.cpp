// chiralwalk: build chiral walk generators from graph + phase files,
// synthesize swift phase configurations, simulate return probabilities and
// check the analytic bounds. One-line summaries go to stdout; data goes to
// the output files. Exit codes: 0 success (infeasible verdicts included),
// 1 usage or input error, 2 internal numerical failure.

#include <cmath>
#include <complex>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chiralwalk/chiralwalk.hpp"

namespace cw = chiralwalk;
using cw::json;

namespace {

struct RunConfig {
    std::string command;
    std::string graph_path;
    std::string phases_path;
    std::string generator = "adjacency";
    std::string family;
    std::string method = "auto";
    int from = 0;
    int swift_from = -1;  // synthesize: build a swift walk out of this vertex
    int n = 0, n1 = 0, n2 = 0;
    double t_max = 10.0;
    int steps = 1000;
    double tol = 1e-10;
    std::uint64_t seed = 0;
    int draws = 20;
    int restarts = 50;
    std::string out;

    json to_json() const {
        json j{{"command", command}, {"tol", tol}, {"seed", seed}};
        if (!graph_path.empty()) j["graph"] = graph_path;
        if (!phases_path.empty()) j["phases"] = phases_path;
        if (!family.empty()) j["family"] = family;
        if (command == "simulate" || command == "bound" || command == "verify") {
            j["generator"] = generator;
            j["from"] = from;
            j["t_max"] = t_max;
            j["steps"] = steps;
        }
        if (command == "synthesize") {
            j["method"] = method;
            j["restarts"] = restarts;
            if (swift_from >= 0) j["swift_from"] = swift_from;
        }
        if (command == "bound") j["draws"] = draws;
        if (!out.empty()) j["out"] = out;
        return j;
    }
};

json make_envelope(const RunConfig& cfg) {
    return json{{"version", cw::version}, {"config", cfg.to_json()}};
}

// sibling path: stem of `out` plus the given suffix
std::string sibling_path(const std::string& out, const std::string& suffix) {
    std::filesystem::path p(out);
    std::filesystem::path dir = p.parent_path();
    return (dir / (p.stem().string() + suffix)).string();
}

cw::ChiralMatrix build_generator(const RunConfig& cfg, const cw::Graph& g) {
    if (cfg.generator == "adjacency") return cw::classical_adjacency(g);
    if (cfg.generator == "laplacian") return cw::classical_laplacian(g);
    if (cfg.generator == "grover-oracle") return cw::grover_oracle_laplacian(g, cfg.from);
    if (cfg.generator == "chiral-adjacency" || cfg.generator == "chiral-laplacian") {
        if (cfg.phases_path.empty())
            throw std::invalid_argument("generator '" + cfg.generator + "' needs --phases");
        cw::PhaseAssignment p = cw::load_phases(cfg.phases_path, g);
        auto kind = cfg.generator == "chiral-adjacency" ? cw::MatrixKind::adjacency
                                                        : cw::MatrixKind::laplacian;
        return cw::build_chiral(g, p, kind);
    }
    throw std::invalid_argument("unknown generator '" + cfg.generator + "'");
}

int cmd_gen(const RunConfig& cfg) {
    std::vector<int> params;
    if (cfg.family == "complete_bipartite") {
        params = {cfg.n1, cfg.n2};
    } else if (cfg.family == "petersen" || cfg.family == "cube" ||
               cfg.family == "cubic_no_matching_16") {
        // no parameters
    } else {
        params = {cfg.n};
    }
    cw::Graph g = cw::generate_family(cfg.family, params);
    cw::save_graph(cfg.out, g);
    std::cout << "gen: " << cfg.family << " -> " << cfg.out << " (n=" << g.n()
              << ", m=" << g.edge_count() << ")\n";
    return 0;
}

int cmd_simulate(const RunConfig& cfg) {
    cw::Graph g = cw::load_graph(cfg.graph_path);
    if (cfg.from < 0 || cfg.from >= g.n())
        throw std::invalid_argument("--from vertex out of range");
    cw::ChiralMatrix H = build_generator(cfg, g);
    cw::EvolutionSeries series = cw::return_series(H, cfg.from, cfg.t_max, cfg.steps);
    cw::write_text_file(cfg.out, cw::series_to_csv(series));

    json summary = make_envelope(cfg);
    cw::SeriesPoint ref_min = cw::refined_minimum(series);
    summary["min_return"] = series.min_value();
    summary["t_of_min"] = series.time_of_min();
    summary["refined_min"] = {{"t", ref_min.t}, {"p", ref_min.p}};
    auto zero = cw::refined_first_zero(series, 1e-6);
    summary["first_zero"] = zero ? json{{"t", zero->t}, {"p", zero->p}} : json(nullptr);
    if (g.degree(cfg.from) > 0) summary["qsl"] = cw::qsl_report_to_json(cw::qsl(H, cfg.from));
    if (H.kind == cw::MatrixKind::laplacian)
        summary["sedentarity"] = cw::sedentarity_report_to_json(
            cw::sedentarity_report(H, cfg.from, cfg.t_max, cfg.steps));
    std::string summary_path = sibling_path(cfg.out, ".summary.json");
    cw::write_text_file(summary_path, summary.dump(2) + "\n");

    std::cout << "simulate: min p = " << ref_min.p << " at t = " << ref_min.t
              << (zero ? " (first zero at t = " + std::to_string(zero->t) + ")" : "") << " -> "
              << cfg.out << "\n";
    return 0;
}

int cmd_synthesize(const RunConfig& cfg) {
    cw::Graph g = cw::load_graph(cfg.graph_path);
    cw::SolverOptions opts;
    opts.tol = cfg.tol;
    opts.seed = cfg.seed;
    opts.restarts = cfg.restarts;

    if (cfg.swift_from >= 0) {
        // Phases on the whole graph making the walk out of --swift-from
        // swift (two-condition cone-walk construction).
        cw::ConeWalkResult res = cw::synthesize_cone_walk(g, cfg.swift_from, opts);
        json out = make_envelope(cfg);
        json rep;
        rep["method"] = "cone_theorem5";
        if (res.hamiltonian) {
            rep["verdict"] = "feasible";
            rep["residual"] = res.neighbor_report.residual;
            rep["phases"] = cw::phases_to_json(res.hamiltonian->phases());
        } else {
            rep["verdict"] = cw::to_string(res.condition_b_witness
                                               ? cw::SwiftVerdict::infeasible
                                               : res.neighbor_report.verdict);
            rep["reason"] = res.failure_reason;
            if (res.condition_b_witness) rep["condition_b_witness"] = *res.condition_b_witness;
        }
        out["report"] = rep;
        cw::write_text_file(cfg.out, out.dump(2) + "\n");
        if (res.hamiltonian)
            cw::save_phases(sibling_path(cfg.out, ".phases.json"), res.hamiltonian->phases());
        std::cout << "synthesize: swift walk from " << cfg.swift_from << " "
                  << rep["verdict"].get<std::string>() << " -> " << cfg.out << "\n";
        return 0;
    }

    cw::SwiftReport report;
    if (cfg.method == "auto") {
        report = cw::synthesize_auto(g, opts);
    } else if (cfg.method == "even") {
        report = cw::synthesize_even_degree(g);
    } else if (cfg.method == "odd-regular") {
        report = cw::synthesize_odd_regular(g);
    } else if (cfg.method == "bipartite") {
        if (!cw::analyze(g).is_connected)
            throw std::invalid_argument("--method bipartite needs a connected graph");
        report = cw::synthesize_auto(g, opts);
        if (report.method != cw::SwiftMethod::complete_bipartite)
            throw std::invalid_argument("graph is not a complete bipartite graph");
    } else if (cfg.method == "numeric") {
        report = cw::numeric_swift_solver(g, opts);
    } else {
        throw std::invalid_argument("unknown method '" + cfg.method + "'");
    }

    json out = make_envelope(cfg);
    out["report"] = cw::swift_report_to_json(report);
    cw::write_text_file(cfg.out, out.dump(2) + "\n");
    if (report.feasible() && report.phases)
        cw::save_phases(sibling_path(cfg.out, ".phases.json"), *report.phases);

    std::cout << "synthesize: " << cw::to_string(report.verdict) << " (method "
              << cw::to_string(report.method) << ", residual " << report.residual << ") -> "
              << cfg.out << "\n";
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    cw::Graph g = cw::load_graph(cfg.graph_path);
    if (cfg.from < 0 || cfg.from >= g.n())
        throw std::invalid_argument("--from vertex out of range");
    if (cfg.phases_path.empty()) throw std::invalid_argument("verify needs --phases");
    cw::PhaseAssignment phases = cw::load_phases(cfg.phases_path, g);
    cw::ChiralMatrix H = cw::build_chiral(g, phases, cw::MatrixKind::adjacency);
    int v = cfg.from;
    int deg = g.degree(v);
    if (deg == 0) throw std::invalid_argument("start vertex has no neighbors");

    json checks = json::array();
    bool all_pass = true;
    auto add_check = [&](const std::string& name, bool pass, double value, double tol) {
        checks.push_back({{"name", name}, {"pass", pass}, {"value", value}, {"tolerance", tol}});
        all_pass = all_pass && pass;
    };

    // Row sums in the fixed gauge: H w must collapse onto deg * e_v, where w
    // is the indicator of the neighbours of v.
    auto [fixed, gauge] = cw::gauge_fix_cone(H, v);
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(g.n());
    for (int k : g.neighbors(v)) w(k) = 1.0;
    Eigen::VectorXcd collapse = fixed.mat * w;
    collapse(v) -= double(deg);
    double row_residual = collapse.cwiseAbs().maxCoeff();
    add_check("swift_row_sums", row_residual <= cfg.tol, row_residual, cfg.tol);

    // Return profile against cos^2(sqrt(deg) t).
    cw::Propagator prop(H);
    double profile_dev = 0.0;
    for (double t : cw::uniform_grid(cfg.t_max, cfg.steps)) {
        double p = std::norm(prop.return_amplitude(v, t));
        profile_dev = std::max(profile_dev, std::abs(p - cw::closed_form_swift(deg, t)));
    }
    const double profile_tol = 1e-9;
    add_check("swift_profile", profile_dev <= profile_tol, profile_dev, profile_tol);

    // Spectral bound |lambda| <= d_max.
    auto spec = cw::verify_spectral_bounds(H);
    add_check("spectral_bound", spec.pass, spec.max_abs_eigenvalue, spec.bound + 1e-9);

    // Transport probabilities are unchanged under a random gauge.
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    Eigen::VectorXd alpha(g.n());
    for (int i = 0; i < g.n(); ++i) alpha(i) = ang(rng);
    cw::Propagator prop_g(cw::gauge_transform(H, cw::GaugeTransform{alpha}));
    double gauge_dev = 0.0;
    for (double t : cw::uniform_grid(std::min(cfg.t_max, 5.0), 20))
        for (int j = 0; j < g.n(); ++j)
            for (int k = 0; k < g.n(); ++k)
                gauge_dev = std::max(gauge_dev, std::abs(cw::transport_probability(prop, j, k, t) -
                                                         cw::transport_probability(prop_g, j, k, t)));
    add_check("gauge_invariance", gauge_dev <= 1e-12, gauge_dev, 1e-12);

    json out = make_envelope(cfg);
    out["checks"] = checks;
    out["all_pass"] = all_pass;
    if (!cfg.out.empty()) cw::write_text_file(cfg.out, out.dump(2) + "\n");

    std::cout << "verify: " << (all_pass ? "all checks pass" : "CHECKS FAILED") << " (row "
              << row_residual << ", profile " << profile_dev << ", gauge " << gauge_dev << ")\n";
    if (cfg.out.empty()) std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_bound(const RunConfig& cfg) {
    cw::Graph g = cw::load_graph(cfg.graph_path);
    if (cfg.from < 0 || cfg.from >= g.n())
        throw std::invalid_argument("--from vertex out of range");
    int v = cfg.from;
    bool laplacian_type =
        cfg.generator == "laplacian" || cfg.generator == "chiral-laplacian";

    json out = make_envelope(cfg);
    cw::ChiralMatrix base = laplacian_type ? cw::classical_laplacian(g)
                                           : cw::classical_adjacency(g);
    if (g.degree(v) > 0) out["qsl"] = cw::qsl_report_to_json(cw::qsl(base, v));

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    double observed_min = 1.0;
    std::optional<double> earliest_zero;
    for (int d = 0; d < cfg.draws; ++d) {
        cw::PhaseAssignment p(g);
        for (int e = 0; e < g.edge_count(); ++e) p.set_by_index(e, ang(rng));
        cw::ChiralMatrix H = cw::build_chiral(
            g, p, laplacian_type ? cw::MatrixKind::laplacian : cw::MatrixKind::adjacency);
        cw::EvolutionSeries s = cw::return_series(H, v, cfg.t_max, cfg.steps);
        observed_min = std::min(observed_min, s.min_value());
        if (auto z = s.first_zero(1e-9))
            earliest_zero = earliest_zero ? std::min(*earliest_zero, *z) : *z;
    }
    out["draws"] = cfg.draws;
    out["observed_min_return"] = observed_min;
    out["earliest_first_zero"] = earliest_zero ? json(*earliest_zero) : json(nullptr);

    std::string line;
    if (laplacian_type) {
        cw::SedentarityReport r = cw::sedentarity_report(base, v, cfg.t_max, cfg.steps);
        json nogo = cw::sedentarity_report_to_json(r);
        nogo.erase("min_return");  // the sampled minimum is reported above
        if (!r.nogo_bound) nogo["note"] = "2 d^> >= N: bound undefined, minimum only";
        out["nogo"] = nogo;
        line = "bound: nogo " +
               (r.nogo_bound ? std::to_string(*r.nogo_bound) : std::string("undefined")) +
               ", observed min " + std::to_string(observed_min);
    } else {
        double tau_s = std::numbers::pi / (2.0 * std::sqrt(double(g.degree(v))));
        out["tau_s"] = tau_s;
        line = "bound: tau_s " + std::to_string(tau_s) + ", observed min " +
               std::to_string(observed_min);
    }
    if (!cfg.out.empty()) cw::write_text_file(cfg.out, out.dump(2) + "\n");
    std::cout << line << " -> " << (cfg.out.empty() ? "(stdout)" : cfg.out) << "\n";
    if (cfg.out.empty()) std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chiral quantum walks: synthesis, simulation and bounds"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--tol", cfg.tol, "numerical tolerance")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "seed for randomized routines")
            ->capture_default_str();
    };
    auto add_grid = [&](CLI::App* sub) {
        sub->add_option("--t-max", cfg.t_max, "time grid endpoint")->capture_default_str();
        sub->add_option("--steps", cfg.steps, "time grid samples")->capture_default_str();
    };

    CLI::App* gen = app.add_subcommand("gen", "generate a named graph family");
    gen->add_option("--family", cfg.family,
                    "star|cycle|path|complete|complete_bipartite|wheel|petersen|cube|"
                    "cubic_no_matching_16")
        ->required();
    gen->add_option("--n", cfg.n, "size parameter");
    gen->add_option("--n1", cfg.n1, "first part size (complete_bipartite)");
    gen->add_option("--n2", cfg.n2, "second part size (complete_bipartite)");
    gen->add_option("--out", cfg.out, "output path (.json for the JSON mirror)")->required();

    CLI::App* sim = app.add_subcommand("simulate", "return-probability series for a walk");
    sim->add_option("--graph", cfg.graph_path, "graph file")->required();
    sim->add_option("--phases", cfg.phases_path, "phase file (chiral generators)");
    sim->add_option("--generator", cfg.generator,
                    "adjacency|laplacian|chiral-adjacency|chiral-laplacian|grover-oracle")
        ->capture_default_str();
    sim->add_option("--from", cfg.from, "start vertex")->capture_default_str();
    add_grid(sim);
    add_common(sim);
    sim->add_option("--out", cfg.out, "CSV output path (summary goes to <stem>.summary.json)")
        ->required();

    CLI::App* syn = app.add_subcommand("synthesize", "swift phase configuration for a graph");
    syn->add_option("--graph", cfg.graph_path, "graph file")->required();
    syn->add_option("--method", cfg.method, "auto|even|odd-regular|bipartite|numeric")
        ->capture_default_str();
    syn->add_option("--restarts", cfg.restarts, "numeric solver restarts")
        ->capture_default_str();
    syn->add_option("--swift-from", cfg.swift_from,
                    "instead of a whole-graph configuration, make the walk out of this vertex "
                    "swift (cone-walk construction)");
    add_common(syn);
    syn->add_option("--out", cfg.out,
                    "report JSON path (phases go to <stem>.phases.json when feasible)")
        ->required();

    CLI::App* ver = app.add_subcommand("verify", "check a claimed swift configuration");
    ver->add_option("--graph", cfg.graph_path, "graph file")->required();
    ver->add_option("--phases", cfg.phases_path, "phase file")->required();
    ver->add_option("--from", cfg.from, "start vertex")->required();
    add_grid(ver);
    add_common(ver);
    ver->add_option("--out", cfg.out, "report JSON path (optional)");

    CLI::App* bnd = app.add_subcommand("bound", "QSL / sedentarity bounds plus sampled minima");
    bnd->add_option("--graph", cfg.graph_path, "graph file")->required();
    bnd->add_option("--generator", cfg.generator, "adjacency|laplacian|...")
        ->capture_default_str();
    bnd->add_option("--from", cfg.from, "start vertex")->required();
    bnd->add_option("--draws", cfg.draws, "random phase configurations to sample")
        ->capture_default_str();
    add_grid(bnd);
    add_common(bnd);
    bnd->add_option("--out", cfg.out, "report JSON path (optional)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (gen->parsed()) {
            cfg.command = "gen";
            return cmd_gen(cfg);
        }
        if (sim->parsed()) {
            cfg.command = "simulate";
            return cmd_simulate(cfg);
        }
        if (syn->parsed()) {
            cfg.command = "synthesize";
            return cmd_synthesize(cfg);
        }
        if (ver->parsed()) {
            cfg.command = "verify";
            return cmd_verify(cfg);
        }
        if (bnd->parsed()) {
            cfg.command = "bound";
            return cmd_bound(cfg);
        }
        std::cerr << "error: no subcommand\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        // file-open problems are usage errors, eigensolver failures internal
        std::cerr << "error: " << e.what() << "\n";
        std::string msg = e.what();
        return msg.find("file") != std::string::npos ? 1 : 2;
    }
}
