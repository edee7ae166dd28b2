// racg: command-line front end. Reports go to --output (or stdout), human
// summaries and warnings to stderr.

#include "racg/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

namespace {

void add_graph_options(CLI::App* sub, racg::RunConfig& cfg) {
    sub->add_option("--preset", cfg.preset, "free(k), cycle(k) or complete2(k)");
    sub->add_option("--graph", cfg.graph_file, "graph JSON file {\"k\": .., \"infinite_edges\": [[i, j], ..]}");
}

void add_common(CLI::App* sub, racg::RunConfig& cfg) {
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sub->add_option("--workers", cfg.workers, "worker threads")->capture_default_str();
}

int write_result(const racg::RunConfig& cfg, const racg::CommandResult& res, const std::string& output) {
    for (const auto& w : res.warnings) std::cerr << "warning: " << w << '\n';
    for (const auto& line : res.summary) std::cerr << line << '\n';

    std::string body;
    if (cfg.format == "json") {
        body = res.report.dump(2) + "\n";
    } else if (cfg.format == "csv") {
        if (!res.csv) throw racg::ConfigError("csv output is only available for verify");
        body = *res.csv;
    } else {
        if (!res.svg) throw racg::ConfigError("svg output is only available for verify");
        body = *res.svg;
    }
    if (output.empty() || output == "-") {
        std::cout << body;
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) throw racg::ConfigError("cannot write '" + output + "'");
        out << body;
    }
    std::cerr << "verdict: " << (res.verdict ? "pass" : "FAIL") << '\n';
    return res.verdict ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deformations of right-angled Coxeter group representations: exact Gram pipeline, contraction verifier, coloring construction"};
    app.set_version_flag("--version", std::string(RACG_VERSION) + " (" + RACG_SOURCE_HASH + ")");
    app.require_subcommand(1);

    racg::RunConfig cfg;
    cfg.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::string output;
    auto add_output = [&](CLI::App* sub, bool formats) {
        sub->add_option("-o,--output", output, "output file (default stdout)");
        if (formats) sub->add_option("--format", cfg.format, "json, csv or svg")->check(CLI::IsMember({"json", "csv", "svg"}))->capture_default_str();
    };

    auto* profile = app.add_subcommand("profile", "exceptional values and signature segments of M_t");
    add_graph_options(profile, cfg);
    profile->add_option("--range", cfg.range, "lo:hi with rationals p/q (default: down from the root bound to -1)");
    add_output(profile, false);

    auto* rep = app.add_subcommand("rep", "exact reflection matrices rho_t(w)");
    add_graph_options(rep, cfg);
    rep->add_option("--t", cfg.t, "parameter p/q")->required();
    rep->add_option("--word", cfg.words, "words like 1.3.2 (default: the generators)");
    add_output(rep, false);

    auto* perron = app.add_subcommand("perron", "Perron-Frobenius data of N");
    add_graph_options(perron, cfg);
    add_output(perron, false);

    auto* orbit = app.add_subcommand("orbit", "orbit of the base point up to a word length");
    add_graph_options(orbit, cfg);
    orbit->add_option("--t", cfg.t, "parameter p/q")->required();
    orbit->add_option("--len", cfg.max_length, "maximal word length")->capture_default_str();
    add_common(orbit, cfg);
    add_output(orbit, false);

    auto* cocycle = app.add_subcommand("cocycle", "cocycle values on a ball, with identity checks on random pairs");
    add_graph_options(cocycle, cfg);
    cocycle->add_option("--t", cfg.t, "parameter p/q")->required();
    cocycle->add_option("--len", cfg.max_length, "ball radius for the exported values")->capture_default_str();
    cocycle->add_option("--samples", cfg.samples, "random word pairs for the identity check")->capture_default_str();
    add_common(cocycle, cfg);
    add_output(cocycle, false);

    auto* verify = app.add_subcommand("verify", "contraction evidence for the deformation from t to s");
    add_graph_options(verify, cfg);
    verify->add_option("--t", cfg.t, "source parameter p/q")->required();
    verify->add_option("--s", cfg.s, "target parameter p/q, same segment, t <= s")->required();
    verify->add_option("--len", cfg.max_length, "orbit word length")->capture_default_str();
    verify->add_option("--probe-len", cfg.probe_length, "word length for the eigenvalue probe")->capture_default_str();
    verify->add_option("--samples", cfg.samples, "null-quadric samples")->capture_default_str();
    verify->add_option("--threshold", cfg.threshold, "minimal pair distance")->capture_default_str();
    add_common(verify, cfg);
    add_output(verify, true);

    auto* coloring = app.add_subcommand("coloring", "colored right-angled polytopes and the Lipschitz map between deformations");
    coloring->add_option("--kgon", cfg.kgon, "regular right-angled k-gon, k even >= 6");
    coloring->add_flag("--120cell", cfg.cell120, "right-angled 120-cell with its 5-coloring");
    coloring->add_option("--margulis", cfg.margulis, "k pairwise disjoint walls in H^2");
    coloring->add_option("--polytope", cfg.polytope_file, "polytope JSON file");
    coloring->add_option("--t", cfg.t, "deformation parameter (decimal, default 0.3)");
    coloring->add_option("--s", cfg.s, "target parameter (decimal, default 0.4)");
    coloring->add_option("--pairs", cfg.pairs, "random pairs for the Lipschitz ratio")->capture_default_str();
    coloring->add_option("--banach-samples", cfg.banach_samples, "group elements for the projection check")->capture_default_str();
    add_common(coloring, cfg);
    add_output(coloring, false);

    auto* exp = app.add_subcommand("export", "dump graph, polytope, representation or cocycle JSON");
    exp->add_option("kind", cfg.export_kind, "graph, polytope, rep or cocycle")->required();
    add_graph_options(exp, cfg);
    exp->add_option("--t", cfg.t, "parameter p/q (rep, cocycle)");
    exp->add_option("--len", cfg.max_length, "ball radius (rep, cocycle)")->capture_default_str();
    exp->add_option("--kgon", cfg.kgon, "regular right-angled k-gon");
    exp->add_flag("--120cell", cfg.cell120, "right-angled 120-cell");
    exp->add_option("--margulis", cfg.margulis, "k disjoint walls");
    exp->add_option("--polytope", cfg.polytope_file, "polytope JSON file (re-validated)");
    add_output(exp, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    if (cfg.command == "export") {
        const bool default_len = exp->count("--len") == 0;
        if (default_len) cfg.max_length = 2;
    }
    try {
        return write_result(cfg, racg::run_command(cfg), output);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return racg::exit_code_for(ex);
    }
}
