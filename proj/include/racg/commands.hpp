#pragma once

// The subcommands as pure functions from a RunConfig to a report. The
// executable only parses arguments and writes the result somewhere.

#include "banach.hpp"
#include "coloring.hpp"
#include "errors.hpp"
#include "gram_rep.hpp"
#include "graph_io.hpp"
#include "normalization.hpp"
#include "precise.hpp"
#include "report.hpp"
#include "verifier.hpp"

#include <charconv>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace racg {

struct RunConfig {
    std::string command;
    std::optional<std::string> preset;
    std::optional<std::string> graph_file;
    std::optional<std::string> t, s;  // "p/q" for the group pipeline, decimals for coloring
    std::optional<std::string> range;  // "lo:hi" for profile
    std::vector<std::string> words;    // rep: explicit words, "1.3.2"
    int max_length = 6;
    int probe_length = 5;   // group probe ball radius
    int samples = 1000;     // quadric samples, cocycle pairs
    int pairs = 10000;      // coloring Lipschitz pairs
    int banach_samples = 20;
    double threshold = 1.0;  // minimal pair distance in contraction estimates
    std::uint64_t seed = 1;
    int workers = 1;
    std::string format = "json";
    std::string export_kind = "cocycle";
    // coloring
    std::optional<int> kgon, margulis;
    bool cell120 = false;
    std::optional<std::string> polytope_file;

    void validate() const {
        if (!(threshold > 0)) throw ConfigError("threshold must be positive");
        if (max_length < 0) throw ConfigError("word length must be nonnegative");
        if (samples < 1 || pairs < 1 || banach_samples < 1) throw ConfigError("sample counts must be positive");
        if (workers < 1) throw ConfigError("worker count must be positive");
        if (format != "json" && format != "csv" && format != "svg") throw ConfigError("format must be json, csv or svg");
    }

    /// Everything that determines the result; workers is left out on purpose.
    json to_json() const {
        json j = {{"command", command}, {"seed", seed}};
        if (command == "orbit" || command == "cocycle" || command == "verify" || command == "export") j["max_length"] = max_length;
        if (preset) j["preset"] = *preset;
        if (graph_file) j["graph_file"] = *graph_file;
        if (t) j["t"] = *t;
        if (s) j["s"] = *s;
        if (range) j["range"] = *range;
        if (!words.empty()) j["words"] = words;
        if (command == "verify") {
            j["probe_length"] = probe_length;
            j["samples"] = samples;
            j["threshold"] = threshold;
        }
        if (command == "cocycle") j["samples"] = samples;
        if (command == "coloring") {
            j["pairs"] = pairs;
            j["banach_samples"] = banach_samples;
            if (kgon) j["kgon"] = *kgon;
            if (margulis) j["margulis"] = *margulis;
            if (cell120) j["cell120"] = true;
            if (polytope_file) j["polytope_file"] = *polytope_file;
        }
        if (command == "export") j["export"] = export_kind;
        return j;
    }
};

struct CommandResult {
    json report;
    bool verdict = true;
    std::vector<std::string> warnings;
    std::vector<std::string> summary;  // human-readable lines
    std::optional<std::string> csv, svg;
};

inline Rational parse_rational(const std::string& text, const std::string& what) {
    try {
        return Rational::parse(text);
    } catch (const std::exception& ex) {
        throw ConfigError(what + ": " + ex.what() + " (expected p/q)");
    }
}

inline double parse_decimal(const std::string& text, const std::string& what) {
    double v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ConfigError(what + ": malformed number '" + text + "'");
    return v;
}

inline CoxeterGraph resolve_graph(const RunConfig& cfg) {
    if (cfg.preset && cfg.graph_file) throw ConfigError("give either --preset or --graph, not both");
    if (cfg.preset) return preset_graph(*cfg.preset);
    if (cfg.graph_file) return load_graph_file(*cfg.graph_file);
    throw ConfigError("no graph given (use --preset or --graph)");
}

inline GramFamily resolve_family(const RunConfig& cfg, bool irreducible = true) {
    CoxeterGraph g = resolve_graph(cfg);
    if (irreducible && !is_irreducible(g)) throw ConfigError("graph is reducible (its infinity-edges are not connected)");
    return GramFamily(std::move(g));
}

inline Rational required_rational(const std::optional<std::string>& v, const std::string& name) {
    if (!v) throw ConfigError("--" + name + " is required");
    return parse_rational(*v, "--" + name);
}

inline json base_report(const RunConfig& cfg, const std::string& kind) {
    json r = report_header(kind);
    r["config"] = cfg.to_json();
    if (cfg.command == "orbit" || cfg.command == "verify") r["normalizer"] = normalizer_variant;
    return r;
}

inline CommandResult cmd_profile(const RunConfig& cfg) {
    const GramFamily fam = resolve_family(cfg, false);
    Rational lo, hi(-1);
    if (cfg.range) {
        const auto colon = cfg.range->find(':');
        if (colon == std::string::npos) throw ConfigError("--range must look like lo:hi");
        lo = parse_rational(cfg.range->substr(0, colon), "--range");
        hi = parse_rational(cfg.range->substr(colon + 1), "--range");
    } else {
        lo = -(root_bound(det_polynomial(fam.n)) + Rational(1));
        if (lo > Rational(-2)) lo = Rational(-2);
    }
    const SignatureProfile prof = signature_profile(fam, lo, hi);
    CommandResult out;
    out.report = base_report(cfg, "profile");
    out.report["graph"] = graph_to_json(fam.graph);
    out.report["range"] = {lo.str(), hi.str()};
    out.report["profile"] = to_json(prof);
    out.summary.push_back(std::to_string(prof.exceptional.size()) + " exceptional value(s) in [" + lo.str() + ", " + hi.str() + "]");
    for (const auto& iv : prof.exceptional)
        out.summary.push_back("  det M_t = 0 in [" + iv.lo.str() + ", " + iv.hi.str() + "] ~ " + std::to_string(iv.midpoint()));
    for (const auto& s : prof.segments)
        out.summary.push_back("  segment [" + s.lo.str() + ", " + s.hi.str() + "]: signature (" + std::to_string(s.sig.positive) + ", " +
                              std::to_string(s.sig.negative) + ")");
    if (is_irreducible(fam.graph)) {
        const SignatureSegment seg = leftmost_segment(fam);
        out.report["suggested_interval"] = {{"lo", "-inf"}, {"hi", seg.hi.str()}, {"signature", to_json(seg.sig)}};
        out.summary.push_back("suggested interval: (-inf, " + seg.hi.str() + "]");
    }
    return out;
}

inline CommandResult cmd_rep(const RunConfig& cfg) {
    const GramFamily fam = resolve_family(cfg, false);
    const Rational t = required_rational(cfg.t, "t");
    const DeformedRep rep(fam, t);
    std::vector<Word> words;
    if (cfg.words.empty()) {
        for (int i = 0; i < fam.k(); ++i) words.push_back({i});
    } else {
        for (const auto& w : cfg.words) words.push_back(word_from_string(w, fam.k()));
    }
    CommandResult out;
    out.report = base_report(cfg, "rep");
    out.report["gram"] = exact_json(rep.gram());
    out.report["signature"] = to_json(signature(rep.gram()));
    json mats = json::array();
    bool ok = true;
    const RationalMatrix id = RationalMatrix::identity(rep.dim());
    for (const auto& w : words) {
        const RationalMatrix g = rep.represent(w);
        const bool preserves = g.transpose() * rep.gram() * g == rep.gram();
        ok = ok && preserves;
        mats.push_back({{"word", word_to_string(w)}, {"matrix", exact_json(g)}, {"preserves_form", preserves}});
    }
    for (int i = 0; i < fam.k(); ++i) {
        const RationalMatrix g = rep.generator(i);
        ok = ok && g * g == id;
    }
    out.report["matrices"] = mats;
    out.report["verdict"] = ok;
    out.verdict = ok;
    out.summary.push_back("exact relations and form preservation: " + std::string(ok ? "ok" : "FAILED"));
    return out;
}

inline CommandResult cmd_perron(const RunConfig& cfg) {
    const GramFamily fam = resolve_family(cfg);
    const PerronData p = perron(fam);
    CommandResult out;
    out.report = base_report(cfg, "perron");
    out.report["perron"] = to_json(p);
    out.summary.push_back("lambda_pf = " + std::to_string(p.lambda_pf) + ", residual " + std::to_string(p.residual));
    return out;
}

inline CommandResult cmd_orbit(const RunConfig& cfg) {
    const GramFamily fam = resolve_family(cfg);
    const NormalizedRep rep(fam, required_rational(cfg.t, "t"));
    const OrbitSample orbit = build_orbit(rep, cfg.max_length, cfg.workers);
    CommandResult out;
    out.report = base_report(cfg, "orbit");
    out.report["base"] = exact_json(orbit.base_v);
    out.report["signature"] = {rep.form().p(), rep.form().q()};
    json pts = json::array();
    std::vector<int> per_length(static_cast<std::size_t>(cfg.max_length) + 1, 0);
    for (const auto& p : orbit.points) {
        ++per_length[p.word.size()];
        pts.push_back({{"word", word_to_string(p.word)}, {"v", exact_json(p.v)}, {"norm2", p.norm2.str()}, {"x", to_json(p.x)}});
    }
    out.report["count_by_length"] = per_length;
    out.report["points"] = pts;
    out.summary.push_back(std::to_string(orbit.points.size()) + " orbit points up to length " + std::to_string(cfg.max_length));
    return out;
}

inline CommandResult cmd_cocycle(const RunConfig& cfg) {
    const GramFamily fam = resolve_family(cfg);
    const NormalizedRep rep(fam, required_rational(cfg.t, "t"));
    const precise::PreciseCocycle pc(rep);
    std::mt19937_64 rng(cfg.seed);
    const std::vector<Word> ball = enumerate_ball(fam.graph, cfg.max_length);
    double identity = 0, algebra = 0;
    for (int i = 0; i < cfg.samples; ++i) {
        const Word a = detail::random_word(rng, fam.k(), 8), b = detail::random_word(rng, fam.k(), 8);
        identity = std::max(identity, pc.identity_residual(a, b));
        algebra = std::max(algebra, pc.algebra_residual(concat(a, b)));
    }
    CommandResult out;
    out.report = cocycle_export(rep, ball);
    out.report["config"] = cfg.to_json();
    out.verdict = identity < 1e-9 && algebra < 1e-9;
    out.report["checks"] = {{"pairs", cfg.samples}, {"identity_residual", identity}, {"algebra_residual", algebra}, {"verdict", out.verdict}};
    out.summary.push_back("cocycle identity residual " + std::to_string(identity) + ", algebra residual " + std::to_string(algebra));
    return out;
}

/// A few Killing fields of norm ~scale for the affine probe.
inline std::vector<Eigen::MatrixXd> probe_fields(const StandardForm& f, std::uint64_t seed, int count, double scale) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, scale);
    std::vector<Eigen::MatrixXd> out{Eigen::MatrixXd::Zero(f.dim(), f.dim())};
    const auto basis = algebra_basis(f);
    for (int i = 1; i < count; ++i) {
        Eigen::MatrixXd y = Eigen::MatrixXd::Zero(f.dim(), f.dim());
        for (const auto& b : basis) y += nd(rng) * b;
        out.push_back(y);
    }
    return out;
}

inline CommandResult cmd_verify(const RunConfig& cfg) {
    const GramFamily fam = resolve_family(cfg);
    const Rational t = required_rational(cfg.t, "t"), s = required_rational(cfg.s, "s");
    if (s < t) throw ConfigError("verify needs t <= s (got t = " + t.str() + ", s = " + s.str() + ")");
    if (cfg.max_length < 4) throw ConfigError("verify needs --len >= 4");
    require_same_segment(fam, t, s);

    CommandResult out;
    if (t == s) out.warnings.push_back("degenerate configuration: t == s, the deformation is the identity and every ratio is 1");
    const NormalizedRep rep_t(fam, t), rep_s(fam, s);
    const OrbitSample orbit = build_orbit(rep_t, cfg.max_length, cfg.workers);
    const Deformation def(rep_t, rep_s);
    const ContractionReport map = estimate_spacelike_lipschitz(def, orbit, cfg.threshold, cfg.workers);
    const ContractionReport vf = estimate_vf_lipschitz(rep_t, orbit, cfg.threshold, cfg.workers);
    const EscapeReport escape = spacelike_escape_check(orbit);
    const GroupProbeReport group = properness_probe_group(rep_t, rep_s, enumerate_ball(fam.graph, cfg.probe_length), cfg.workers);
    const AffineProbe probe(rep_t, orbit, cfg.workers);
    std::vector<Word> gammas;
    for (int i = 0; i < fam.k(); ++i) gammas.push_back({i});
    const AffineProbeReport affine = probe.run(probe_fields(rep_t.form(), cfg.seed, 4, 0.2), gammas);

    out.report = base_report(cfg, "verify");
    out.report["graph"] = graph_to_json(fam.graph);
    out.report["signature"] = {rep_t.form().p(), rep_t.form().q()};
    out.report["orbit_points"] = orbit.points.size();
    out.report["map"] = to_json(map, orbit);
    out.report["vector_field"] = to_json(vf, orbit);
    out.report["escape"] = to_json(escape);
    out.report["group_probe"] = to_json(group);
    out.report["affine_probe"] = to_json(affine);
    bool quadric_ok = true;
    if (t <= Rational(-1)) {
        const QuadricReport q = quadric_expansion_check(fam, t, cfg.samples, cfg.seed, s == t ? std::nullopt : std::optional<Rational>(s));
        out.report["quadric"] = to_json(q);
        quadric_ok = q.verdict;
    } else {
        out.report["quadric"] = {{"skipped", "needs t <= -1"}};
    }
    // An argmin on the sample boundary is inconclusive, not a failure.
    const bool affine_ok = affine.equivariance_failures == 0;
    out.verdict = map.verdict && vf.verdict && escape.verdict && group.verdict && quadric_ok && affine_ok;
    out.report["verdict"] = out.verdict;
    out.report["warnings"] = out.warnings;

    out.summary.push_back("map: max ratio " + std::to_string(map.max_ratio) + " over " + std::to_string(map.used_count) + " pairs");
    out.summary.push_back("vector field: max quotient " + std::to_string(vf.max_ratio));
    out.summary.push_back("group probe: mu slope " + std::to_string(group.slope) + ", max lambda excess " + std::to_string(group.max_lambda_excess));
    out.summary.push_back("escape monotone from length " + std::to_string(escape.monotone_from));
    if (!affine.note.empty()) out.summary.push_back("affine probe: " + affine.note);
    out.csv = pairs_csv(map, orbit);
    out.svg = scatter_svg(map, "d(f x, f y) against d(x, y), t = " + t.str() + ", s = " + s.str());
    return out;
}

inline ColoredPolytope resolve_polytope(const RunConfig& cfg, std::optional<FiveColoring>& five) {
    const int chosen = cfg.kgon.has_value() + cfg.margulis.has_value() + cfg.cell120 + cfg.polytope_file.has_value();
    if (chosen != 1) throw ConfigError("choose exactly one of --kgon, --120cell, --margulis, --polytope");
    if (cfg.kgon) return build_kgon(*cfg.kgon);
    if (cfg.margulis) return build_disjoint_walls(*cfg.margulis);
    if (cfg.cell120) {
        Cell120 cell = build_120cell();
        five = five_color_120cell(cell);
        return cell.polytope;
    }
    std::ifstream in(*cfg.polytope_file);
    if (!in) throw ConfigError("cannot open polytope file '" + *cfg.polytope_file + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& ex) {
        throw ConfigError("cannot parse '" + *cfg.polytope_file + "': " + ex.what());
    }
    return polytope_from_json(j);
}

inline CommandResult cmd_coloring(const RunConfig& cfg) {
    std::optional<FiveColoring> five;
    const ColoredPolytope poly = resolve_polytope(cfg, five);
    // Non-adjacent walls of the 120-cell start to meet near t = 0.1214.
    const double t0 = cfg.cell120 ? 0.08 : 0.3, s0 = cfg.cell120 ? 0.12 : 0.4;
    const double t = cfg.t ? parse_decimal(*cfg.t, "--t") : t0, s = cfg.s ? parse_decimal(*cfg.s, "--s") : s0;
    const ColoringReport rep = run_coloring_pipeline(poly, t, s, cfg.pairs, cfg.seed);
    const BallComparisonReport balls = ball_comparison_check(poly.p, {0.1, 0.3, 0.5, 0.7, 0.9}, 1000, cfg.seed + 3);

    CommandResult out;
    out.report = base_report(cfg, "coloring");
    out.report["pipeline"] = to_json(rep);
    out.report["ball_comparison"] = to_json(balls);
    bool ok = rep.verdict && balls.violations == 0;
    if (rep.walls_disjoint) {
        const BanachEquivarianceReport banach = banach_equivariance_check(LipschitzMap(poly, t, s), cfg.banach_samples, cfg.seed + 4);
        out.report["banach"] = to_json(banach);
        ok = ok && banach.bound_violations == 0 && banach.max_residual < 1e-8;
        out.summary.push_back("banach: max residual " + std::to_string(banach.max_residual) + ", max iterations " +
                              std::to_string(banach.max_iterations));
    } else {
        out.warnings.push_back("non-adjacent deformed walls meet, so P_t is not a fundamental domain; t is too large for this polytope");
        out.report["banach"] = {{"skipped", "deformed walls meet"}};
    }
    if (five) {
        std::vector<std::size_t> degrees;
        for (const auto& row : poly.adjacent) degrees.push_back(static_cast<std::size_t>(std::count(row.begin(), row.end(), true)));
        const bool regular = std::all_of(degrees.begin(), degrees.end(), [](std::size_t d) { return d == 12; });
        out.report["cell120"] = {{"vectors", poly.k()}, {"regular_degree", regular ? 12 : -1}, {"edges", poly.edge_count()}, {"five_coloring", to_json(*five)}};
        const bool classes = std::all_of(five->class_sizes.begin(), five->class_sizes.end(), [](int c) { return c == 24; });
        ok = ok && poly.k() == 120 && regular && poly.edge_count() == 720 && five->proper && classes;
        out.summary.push_back("120-cell: " + std::to_string(poly.k()) + " vectors, " + std::to_string(poly.edge_count()) + " edges, proper 5-coloring " +
                              (five->proper ? "yes" : "no"));
    }
    out.verdict = ok;
    out.report["verdict"] = ok;
    out.report["warnings"] = out.warnings;
    out.summary.push_back(poly.name + ": Lipschitz ratio " + std::to_string(rep.lipschitz.max_ratio) + " <= bound " + std::to_string(rep.lipschitz.bound));
    return out;
}

inline CommandResult cmd_export(const RunConfig& cfg) {
    CommandResult out;
    const auto& kind = cfg.export_kind;
    if (kind == "graph") {
        out.report = graph_to_json(resolve_graph(cfg));
        out.report["schema"] = report_schema;
    } else if (kind == "polytope") {
        std::optional<FiveColoring> five;
        out.report = polytope_to_json(resolve_polytope(cfg, five));
        out.report["schema"] = report_schema;
    } else if (kind == "rep" || kind == "cocycle") {
        const GramFamily fam = resolve_family(cfg, kind == "cocycle");
        const Rational t = required_rational(cfg.t, "t");
        const auto ball = enumerate_ball(fam.graph, cfg.max_length);
        if (kind == "rep") {
            out.report = representation_export(DeformedRep(fam, t), ball);
        } else {
            const NormalizedRep rep(fam, t);
            out.report = cocycle_export(rep, ball);
        }
    } else {
        throw ConfigError("unknown export kind '" + kind + "' (graph, polytope, rep, cocycle)");
    }
    out.summary.push_back("exported " + kind);
    return out;
}

inline CommandResult run_command(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.command == "profile") return cmd_profile(cfg);
    if (cfg.command == "rep") return cmd_rep(cfg);
    if (cfg.command == "perron") return cmd_perron(cfg);
    if (cfg.command == "orbit") return cmd_orbit(cfg);
    if (cfg.command == "cocycle") return cmd_cocycle(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "coloring") return cmd_coloring(cfg);
    if (cfg.command == "export") return cmd_export(cfg);
    throw ConfigError("unknown command '" + cfg.command + "'");
}

/// 0 pass, 2 verdict failed, 3 bad configuration, 4 numerical certification failed.
inline int exit_code_for(const std::exception& ex) {
    if (dynamic_cast<const ConfigError*>(&ex)) return 3;
    if (dynamic_cast<const NumericalError*>(&ex) || dynamic_cast<const ReductionError*>(&ex) || dynamic_cast<const BudgetError*>(&ex) ||
        dynamic_cast<const DomainError*>(&ex))
        return 4;
    return 1;
}

}  // namespace racg
