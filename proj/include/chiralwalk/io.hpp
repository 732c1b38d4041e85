#pragma once

// Serialization: edge-list text and JSON graph formats, the phase file,
// swift/QSL/sedentarity reports and CSV series output. All floats are
// written with enough digits to round-trip.

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "chiralwalk/chiral.hpp"
#include "chiralwalk/dynamics.hpp"
#include "chiralwalk/graph.hpp"
#include "chiralwalk/swift.hpp"

namespace chiralwalk {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Graphs
// ---------------------------------------------------------------------------

// Text format: first line "n m", then m lines "u v". '#' starts a comment;
// blank lines are ignored.
inline Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    int n = 0, m = 0;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int a, b;
        if (!(ls >> a)) continue;  // blank / comment-only line
        std::string trailing;
        if (!(ls >> b) || (ls >> trailing))
            throw std::invalid_argument("edge list: expected two integers per line, got: " + line);
        if (!have_header) {
            if (a < 0 || b < 0) throw std::invalid_argument("edge list: bad header");
            n = a;
            m = b;
            have_header = true;
        } else {
            edges.push_back({a, b});
        }
    }
    if (!have_header) throw std::invalid_argument("edge list: missing header");
    if (static_cast<int>(edges.size()) != m)
        throw std::invalid_argument("edge list: header declares " + std::to_string(m) +
                                    " edges, found " + std::to_string(edges.size()));
    return Graph(n, edges);
}

inline std::string format_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.n() << " " << g.edge_count() << "\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
    return out.str();
}

inline Graph graph_from_json(const json& j) {
    if (!j.contains("n") || !j.contains("edges"))
        throw std::invalid_argument("graph json: need fields 'n' and 'edges'");
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("graph json: edges must be [u,v] pairs");
        edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    return Graph(j.at("n").get<int>(), edges);
}

inline json graph_to_json(const Graph& g) {
    json j;
    j["n"] = g.n();
    j["edges"] = json::array();
    for (auto [u, v] : g.edges()) j["edges"].push_back({u, v});
    return j;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

// Accepts either format: JSON when the first non-space byte is '{',
// otherwise the edge-list text format.
inline Graph load_graph(const std::string& path) {
    std::string text = read_text_file(path);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        return graph_from_json(json::parse(text));
    return parse_edge_list(text);
}

inline void save_graph(const std::string& path, const Graph& g) {
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        write_text_file(path, graph_to_json(g).dump(2) + "\n");
    else
        write_text_file(path, format_edge_list(g));
}

// ---------------------------------------------------------------------------
// Phase files
// ---------------------------------------------------------------------------

// {"edges": [{"u": int, "v": int, "theta": float}, ...]}, u < v, theta in
// radians for the orientation u -> v. The file must cover the host edge
// set exactly once.
inline json phases_to_json(const PhaseAssignment& p) {
    json j;
    j["edges"] = json::array();
    const Graph& g = p.graph();
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges()[e];
        j["edges"].push_back({{"u", u}, {"v", v}, {"theta", p.angle_by_index(e)}});
    }
    return j;
}

inline PhaseAssignment phases_from_json(const json& j, const Graph& g) {
    if (!j.contains("edges")) throw std::invalid_argument("phase json: missing 'edges'");
    PhaseAssignment p(g);
    std::vector<char> seen(g.edge_count(), 0);
    for (const auto& rec : j.at("edges")) {
        int u = rec.at("u").get<int>();
        int v = rec.at("v").get<int>();
        double theta = rec.at("theta").get<double>();
        if (!(u < v)) throw std::invalid_argument("phase json: edges must satisfy u < v");
        int idx = g.edge_index(u, v);
        if (idx < 0)
            throw std::invalid_argument("phase json: (" + std::to_string(u) + "," +
                                        std::to_string(v) + ") is not an edge of the graph");
        if (seen[idx])
            throw std::invalid_argument("phase json: duplicate edge (" + std::to_string(u) + "," +
                                        std::to_string(v) + ")");
        seen[idx] = 1;
        p.set_by_index(idx, theta);
    }
    for (int e = 0; e < g.edge_count(); ++e)
        if (!seen[e]) {
            auto [u, v] = g.edges()[e];
            throw std::invalid_argument("phase json: missing phase for edge (" +
                                        std::to_string(u) + "," + std::to_string(v) + ")");
        }
    return p;
}

inline PhaseAssignment load_phases(const std::string& path, const Graph& g) {
    return phases_from_json(json::parse(read_text_file(path)), g);
}

inline void save_phases(const std::string& path, const PhaseAssignment& p) {
    write_text_file(path, phases_to_json(p).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline json swift_report_to_json(const SwiftReport& r) {
    json j;
    j["verdict"] = to_string(r.verdict);
    j["method"] = to_string(r.method);
    j["residual"] = r.residual;
    if (!r.reason.empty()) j["reason"] = r.reason;
    if (r.phases) j["phases"] = phases_to_json(*r.phases);
    json cert = json::object();
    if (r.certificate.matching) {
        cert["matching"] = json::array();
        for (auto [u, v] : r.certificate.matching->pairs) cert["matching"].push_back({u, v});
    }
    if (r.certificate.orientation) {
        cert["orientation"] = json::array();
        for (auto [u, v] : r.certificate.orientation->arcs) cert["orientation"].push_back({u, v});
    }
    if (!cert.empty()) j["certificate"] = cert;
    return j;
}

inline json qsl_report_to_json(const QslReport& r) {
    return json{{"mean_energy", r.mean_energy},
                {"delta_h", r.delta_h},
                {"ground_energy", r.ground_energy},
                {"tau_qsl", r.tau_qsl},
                {"tau_s", r.tau_s}};
}

inline json sedentarity_report_to_json(const SedentarityReport& r) {
    json j{{"min_return", r.min_return}, {"d_sup", r.d_sup}, {"bound_violated", r.bound_violated}};
    if (r.nogo_bound)
        j["nogo_bound"] = *r.nogo_bound;
    else
        j["nogo_bound"] = nullptr;
    return j;
}

// CSV with header "t,p"; floats carry 17 significant digits.
inline std::string series_to_csv(const EvolutionSeries& s) {
    std::string out = "t,p\n";
    char buf[64];
    for (size_t i = 0; i < s.times.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", s.times[i], s.values[i]);
        out += buf;
    }
    return out;
}

}  // namespace chiralwalk
