#pragma once

// Machine-readable output: JSON documents (schema 1), per-pair CSV and SVG
// scatter plots, plus the polytope and cocycle/representation dumps.
// Everything here is deterministic: keys are sorted, no timestamps.

#include "coloring.hpp"
#include "gram_rep.hpp"
#include "graph_io.hpp"
#include "normalization.hpp"
#include "verifier.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#ifndef RACG_VERSION
#define RACG_VERSION "unknown"
#endif
#ifndef RACG_SOURCE_HASH
#define RACG_SOURCE_HASH "unknown"
#endif

namespace racg {

using json = nlohmann::json;

inline constexpr int report_schema = 1;

/// 64-bit FNV-1a, as 16 hex digits. Stable across platforms, unlike std::hash.
inline std::string fnv1a_hex(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string graph_hash(const CoxeterGraph& g) { return fnv1a_hex(graph_to_json(g).dump()); }

inline json version_json() { return {{"version", RACG_VERSION}, {"source_hash", RACG_SOURCE_HASH}}; }

/// {"schema": 1, "kind": kind, "library": {...}} to be filled in by the caller.
inline json report_header(const std::string& kind) { return {{"schema", report_schema}, {"kind", kind}, {"library", version_json()}}; }

inline json to_json(const Inertia& s) { return {{"positive", s.positive}, {"negative", s.negative}, {"zero", s.zero}}; }

inline json to_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

inline json to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const Eigen::VectorXd r = m.row(i).transpose();
        rows.push_back(to_json(r));
    }
    return rows;
}

/// Row-major flat list, the cocycle export layout.
inline json row_major(const Eigen::MatrixXd& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
    return out;
}

inline json exact_json(const RationalVector& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(x.str());
    return out;
}

inline json exact_json(const RationalMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(exact_json(m.row(i)));
    return rows;
}

inline json words_json(const std::vector<Word>& ws) {
    json out = json::array();
    for (const auto& w : ws) out.push_back(word_to_string(w));
    return out;
}

inline json to_json(const SignatureProfile& prof) {
    json ex = json::array();
    for (const auto& iv : prof.exceptional) ex.push_back({{"lo", iv.lo.str()}, {"hi", iv.hi.str()}, {"approx", iv.midpoint()}});
    json segs = json::array();
    for (const auto& s : prof.segments)
        segs.push_back({{"lo", s.unbounded_below ? json("-inf") : json(s.lo.str())},
                        {"hi", s.hi.str()},
                        {"sample", s.sample.str()},
                        {"signature", to_json(s.sig)}});
    std::ostringstream poly;
    poly << prof.det_poly;
    return {{"det_polynomial", poly.str()}, {"exceptional", ex}, {"segments", segs}};
}

inline json to_json(const PerronData& p) {
    return {{"lambda_pf", p.lambda_pf}, {"v_pf", to_json(p.v_pf)}, {"residual", p.residual}, {"iterations", p.iterations}};
}

inline json to_json(const PairRecord& r, const OrbitSample& orbit) {
    return {{"x", word_to_string(orbit.points[r.i].word)},
            {"y", word_to_string(orbit.points[r.j].word)},
            {"d_before", r.before},
            {"d_after", r.after},
            {"ratio", r.after / r.before}};
}

inline json to_json(const ContractionReport& r, const OrbitSample& orbit) {
    json worst = json::array();
    for (const auto& w : r.worst) worst.push_back(to_json(w, orbit));
    return {{"kind", r.kind},
            {"counts",
             {{"pairs", r.pair_count},
              {"spacelike", r.spacelike_count},
              {"used", r.used_count},
              {"classification_mismatches", r.classification_mismatches}}},
            {"threshold", r.threshold},
            {"max_ratio", r.max_ratio},
            {"max_ratio_all_spacelike", r.max_ratio_all},
            {"fitted_constants", {{"slope", r.fit_slope}, {"intercept", r.fit_intercept}}},
            {"worst_pairs", worst},
            {"verdict", r.verdict}};
}

inline json to_json(const QuadricReport& r) {
    json j = {{"samples", r.samples},
              {"vacuous", r.vacuous},
              {"max_identity_residual", r.max_identity_residual},
              {"min_margin", r.min_margin},
              {"verdict", r.verdict}};
    if (r.s) {
        j["s"] = r.s->str();
        j["min_expansion"] = r.min_expansion;
    }
    return j;
}

inline json to_json(const EscapeReport& r) {
    json md = json::array();
    for (std::size_t l = 1; l < r.min_distance.size(); ++l) md.push_back({{"length", l}, {"min_distance", r.min_distance[l]}});
    json j = {{"min_distance_by_length", md}, {"non_spacelike", r.non_spacelike}, {"monotone_from", r.monotone_from}, {"verdict", r.verdict}};
    if (r.witness) j["witness"] = word_to_string(*r.witness);
    return j;
}

inline json to_json(const AffineProbeReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"argmin", words_json(e.argmin)}, {"min_norm", e.min_norm}, {"argmin_length", e.argmin_length}, {"interior", e.interior}});
    json j = {{"entries", entries},
              {"equivariance_checked", r.equivariance_checked},
              {"equivariance_skipped", r.equivariance_skipped},
              {"equivariance_failures", r.equivariance_failures},
              {"verdict", r.verdict}};
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline json to_json(const GroupProbeReport& r) {
    json j = {{"words", r.words.size()},
              {"proximal", r.proximal_count},
              {"fitted_constants", {{"slope", r.slope}, {"intercept", r.intercept}}},
              {"max_lambda_excess", r.max_lambda_excess},
              {"verdict", r.verdict}};
    if (r.lambda_witness) j["lambda_witness"] = word_to_string(*r.lambda_witness);
    return j;
}

inline json to_json(const LipschitzSample& s) {
    return {{"pairs", s.pairs}, {"bound", s.bound}, {"max_ratio", s.max_ratio}, {"min_distance", s.min_distance}};
}

inline json to_json(const BallComparisonReport& r) {
    return {{"checks", r.checks}, {"violations", r.violations}, {"min_slack", r.min_slack}};
}

inline json to_json(const BanachEquivarianceReport& r) {
    return {{"samples", r.samples},
            {"constant", r.constant},
            {"max_residual", r.max_residual},
            {"max_iterations", r.max_iterations},
            {"bound_violations", r.bound_violations}};
}

inline json to_json(const ColoringReport& r) {
    return {{"polytope", r.name},
            {"faces", r.k},
            {"dimension", r.p},
            {"colors", r.m + 1},
            {"edges", r.edges},
            {"t", r.t},
            {"s", r.s},
            {"orthogonality_residual", r.orthogonality_residual},
            {"norm_residual", r.norm_residual},
            {"involution_residual", r.involution_residual},
            {"commutation_residual", r.commutation_residual},
            {"walls_disjoint", r.walls_disjoint},
            {"lipschitz", to_json(r.lipschitz)},
            {"equivariance_residual", r.equivariance_residual},
            {"cocycle_algebra_residual", r.cocycle_algebra_residual},
            {"cocycle_derivative", r.cocycle_derivative},
            {"verdict", r.verdict}};
}

inline json to_json(const FiveColoring& c) {
    return {{"class_sizes", c.class_sizes},
            {"proper", c.proper},
            {"neighbor_pairs", c.neighbor_pairs},
            {"neighbor_trace_failures", c.neighbor_trace_failures},
            {"neighbor_cycle_failures", c.neighbor_cycle_failures}};
}

// Polytopes: {"p", "normals": [[...]], "adjacency": [[i, j], ...], "coloring": [...]}.

inline json polytope_to_json(const ColoredPolytope& poly) {
    json normals = json::array();
    for (const auto& v : poly.normals) normals.push_back(to_json(v));
    json adj = json::array();
    for (int i = 0; i < poly.k(); ++i)
        for (int j = i + 1; j < poly.k(); ++j)
            if (poly.adjacent[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) adj.push_back({i, j});
    return {{"name", poly.name}, {"p", poly.p}, {"normals", normals}, {"adjacency", adj}, {"coloring", poly.coloring}};
}

inline ColoredPolytope polytope_from_json(const json& j) {
    ColoredPolytope poly;
    try {
        poly.name = j.value("name", std::string("user"));
        poly.p = j.at("p").get<int>();
        for (const auto& row : j.at("normals")) {
            const auto xs = row.get<std::vector<double>>();
            poly.normals.push_back(Eigen::Map<const Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size())));
        }
        const auto n = poly.normals.size();
        poly.adjacent.assign(n, std::vector<bool>(n, false));
        for (const auto& e : j.at("adjacency")) {
            const auto [a, b] = e.get<std::pair<int, int>>();
            if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n)
                throw ConfigError("adjacency entry (" + std::to_string(a) + ", " + std::to_string(b) + ") out of range");
            poly.adjacent[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
            poly.adjacent[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = true;
        }
        poly.coloring = j.at("coloring").get<std::vector<int>>();
    } catch (const json::exception& ex) {
        throw ConfigError(std::string("malformed polytope JSON: ") + ex.what());
    }
    poly.validate();
    return poly;
}

/// Normal form -> row-major u(w) in standard coordinates.
// The congruence used for iota_t; any iota with iota^T J iota = M_t would do.
inline constexpr const char* normalizer_variant = "iota_t = U diag(|1 + t nu|^(1/2)) V^T, i.e. P^(1/2) + Q^(1/2)";

inline json cocycle_export(const NormalizedRep& rep, const std::vector<Word>& words) {
    json values = json::object();
    for (const auto& w : words) values[word_to_string(normal_form(rep.family().graph, w))] = row_major(rep.cocycle(w));
    const auto& f = rep.form();
    json out = report_header("cocycle");
    out["t"] = rep.t().str();
    out["signature"] = {f.p(), f.q()};
    out["normalizer"] = normalizer_variant;
    out["graph_hash"] = graph_hash(rep.family().graph);
    out["graph"] = graph_to_json(rep.family().graph);
    out["values"] = values;
    return out;
}

/// Normal form -> exact rho_t(w) (rational strings, row-major rows).
inline json representation_export(const DeformedRep& rep, const std::vector<Word>& words) {
    json values = json::object();
    for (const auto& w : words) values[word_to_string(normal_form(rep.family().graph, w))] = exact_json(rep.represent(w));
    json out = report_header("representation");
    out["t"] = rep.t().str();
    out["signature"] = to_json(signature(rep.gram()));
    out["graph_hash"] = graph_hash(rep.family().graph);
    out["graph"] = graph_to_json(rep.family().graph);
    out["values"] = values;
    return out;
}

/// One line per used pair: d_before,d_after.
inline std::string pairs_csv(const ContractionReport& r, const OrbitSample& orbit) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "x,y,d_before,d_after\n";
    for (const auto& p : r.records)
        os << word_to_string(orbit.points[p.i].word) << ',' << word_to_string(orbit.points[p.j].word) << ',' << p.before << ',' << p.after
           << '\n';
    return os.str();
}

/// Scatter of (d_before, d_after) with the fitted line and, for maps, the
/// diagonal y = x.
inline std::string scatter_svg(const ContractionReport& r, const std::string& title) {
    constexpr double w = 640, h = 480, margin = 50;
    double xmax = 1e-9, ymin = 0, ymax = 1e-9;
    for (const auto& p : r.records) {
        xmax = std::max(xmax, p.before);
        ymin = std::min(ymin, p.after);
        ymax = std::max(ymax, p.after);
    }
    if (r.kind == "map") ymax = std::max(ymax, xmax);
    const double xs = (w - 2 * margin) / xmax, ys = (h - 2 * margin) / (ymax - ymin);
    auto px = [&](double x) { return margin + x * xs; };
    auto py = [&](double y) { return h - margin - (y - ymin) * ys; };

    std::ostringstream os;
    os << std::fixed << std::setprecision(2);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
    os << "<line x1=\"" << px(0) << "\" y1=\"" << py(ymin) << "\" x2=\"" << px(xmax) << "\" y2=\"" << py(ymin) << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << px(0) << "\" y1=\"" << py(ymin) << "\" x2=\"" << px(0) << "\" y2=\"" << py(ymax) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << w / 2 << "\" y=\"" << h - 12 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">d(x, y), max "
       << std::setprecision(3) << xmax << "</text>\n";
    os << "<text x=\"14\" y=\"" << h / 2 << "\" transform=\"rotate(-90 14 " << h / 2
       << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
       << (r.kind == "map" ? "d(f x, f y)" : "first variation") << ", range [" << ymin << ", " << ymax << "]</text>\n";
    os << std::setprecision(2);
    for (const auto& p : r.records)
        os << "<circle cx=\"" << px(p.before) << "\" cy=\"" << py(p.after) << "\" r=\"1.5\" fill=\"steelblue\" fill-opacity=\"0.5\"/>\n";
    if (r.kind == "map")
        os << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(xmax) << "\" y2=\"" << py(xmax)
           << "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
    const double x0 = r.threshold, x1 = xmax;
    os << "<line x1=\"" << px(x0) << "\" y1=\"" << py(r.fit_slope * x0 + r.fit_intercept) << "\" x2=\"" << px(x1) << "\" y2=\""
       << py(r.fit_slope * x1 + r.fit_intercept) << "\" stroke=\"crimson\" stroke-width=\"1.5\"/>\n";
    os << "<text x=\"" << w - margin << "\" y=\"" << margin << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"crimson\">"
       << "slope " << std::setprecision(4) << r.fit_slope << ", max ratio " << r.max_ratio << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace racg
