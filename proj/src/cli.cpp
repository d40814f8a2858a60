#include "qcbound/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "qcbound/campaign.hpp"
#include "qcbound/contextuality.hpp"
#include "qcbound/errors.hpp"
#include "qcbound/gram.hpp"
#include "qcbound/graph.hpp"
#include "qcbound/invariants.hpp"
#include "qcbound/io.hpp"
#include "qcbound/rays.hpp"
#include "qcbound/srg_screen.hpp"
#include "qcbound/theta.hpp"

namespace qcb {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdictFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

/// A graph argument is first matched against the named fixtures, then
/// treated as a path to an edge-list file.
Graph resolve_graph(const std::string& spec) {
    try {
        return named_graph(spec);
    } catch (const std::invalid_argument&) {
    }
    if (!std::filesystem::exists(spec)) {
        std::ostringstream msg;
        msg << "unknown graph '" << spec << "'; expected a file or one of:";
        for (const std::string& name : named_graph_list()) msg << ' ' << name;
        throw ParseError(msg.str());
    }
    return load_graph_file(spec);
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path.string() + "'");
    out << contents;
}

int cmd_graph_info(const std::string& graph_spec, bool quick) {
    const Graph g = resolve_graph(graph_spec);
    std::cout << graph_info_json(g, graph_spec, !quick);
    return kExitOk;
}

int cmd_theta(const std::string& graph_spec, double tol, bool matrices) {
    const Graph g = resolve_graph(graph_spec);
    ThetaOptions opts;
    opts.target_gap = tol;
    const ThetaCertificate cert = lovasz_theta(g, opts);
    std::cout << theta_json(cert, matrices);
    return cert.converged ? kExitOk : kExitResource;
}

int cmd_certify(const std::string& graph_spec, int contexts, double tol) {
    const Graph g = resolve_graph(graph_spec);
    ThetaOptions opts;
    opts.target_gap = tol;
    const ParadoxCertificate cert = certify_paradox(g, contexts, opts);
    std::cout << certificate_json(cert);
    switch (cert.status) {
    case CertifyStatus::pass: return kExitOk;
    case CertifyStatus::fail: return kExitVerdictFail;
    case CertifyStatus::inconclusive: return kExitResource;
    }
    return kExitResource;
}

int cmd_rays(const std::string& out_dir) {
    const GramCertificate gram = perkel_gram_certificate();
    const RayFamily family = extract_rays(gram.gram);
    const Graph exclusivity = named_graph("perkel-complement");

    double max_overlap = 0.0;
    for (const auto& [u, v] : exclusivity.edges())
        max_overlap = std::max(max_overlap,
                               std::abs(family.rays.row(u).dot(family.rays.row(v))));
    const double overlap_min = family.handle_overlaps.minCoeff();
    const double overlap_max = family.handle_overlaps.maxCoeff();
    const bool orthogonal = max_overlap <= 1e-8;

    std::ostringstream report;
    report << "{\n"
           << "  \"dimension\": " << family.dimension << ",\n"
           << "  \"events\": " << family.rays.rows() << ",\n"
           << "  \"exclusive_pairs\": " << exclusivity.edge_count() << ",\n"
           << "  \"max_exclusive_overlap\": " << std::setprecision(17) << max_overlap << ",\n"
           << "  \"handle_overlap_min\": " << overlap_min << ",\n"
           << "  \"handle_overlap_max\": " << overlap_max << ",\n"
           << "  \"reconstruction_error\": " << family.reconstruction_error << ",\n"
           << "  \"orthogonality_ok\": " << (orthogonal ? "true" : "false") << ",\n"
           << "  \"schema_version\": \"1\"\n"
           << "}\n";
    std::cout << report.str();

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ostringstream csv;
        csv << "vertex";
        for (int j = 0; j < family.dimension; ++j) csv << ",x" << j;
        csv << "\n" << std::setprecision(17);
        for (Eigen::Index i = 0; i < family.rays.rows(); ++i) {
            csv << i;
            for (int j = 0; j < family.dimension; ++j) csv << ',' << family.rays(i, j);
            csv << "\n";
        }
        write_file(std::filesystem::path(out_dir) / "rays.csv", csv.str());
        write_file(std::filesystem::path(out_dir) / "rays.json", rays_json(family));
    }
    return orthogonal ? kExitOk : kExitVerdictFail;
}

int cmd_screen(int c_max, const std::string& out_dir) {
    const ScreenReport report = screen_three_context(c_max);
    std::cout << "  c   k      n  reason                    value  note\n";
    for (const ScreenRecord& rec : report.records)
        for (const ScreenCandidate& cand : rec.candidates) {
            std::ostringstream line;
            line << std::setw(3) << cand.c << ' ' << std::setw(3) << cand.k << ' '
                 << std::setw(6) << cand.n << "  " << std::left << std::setw(24)
                 << to_string(cand.reason) << std::right;
            if (cand.verified_value != 0.0)
                line << ' ' << std::setw(6) << std::setprecision(4) << cand.verified_value;
            else
                line << "       ";
            if (!cand.note.empty()) line << "  " << cand.note;
            std::cout << line.str() << "\n";
        }
    std::cout << "survivors: " << report.survivors << "\n";
    std::cout << "verdict: " << report.verdict << "\n";
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_file(std::filesystem::path(out_dir) / "screen.json", screen_json(report));
    }
    return report.survivors == 0 ? kExitOk : kExitVerdictFail;
}

int cmd_simulate(const std::string& config_path, int trials, long long seed,
                 const std::string& out_dir, bool emit_traces, bool serial) {
    RunConfig config;
    if (!config_path.empty()) config = load_run_config_file(config_path);
    if (trials > 0) config.trials = trials;
    if (seed >= 0) {
        config.seed = static_cast<std::uint64_t>(seed);
        config.noise.rng_seed = config.seed;
    }

    const GramCertificate gram = perkel_gram_certificate();
    const RayFamily family = extract_rays(gram.gram);
    const Graph exclusivity = named_graph("perkel-complement");
    const ContextCover cover = context_cover(exclusivity, 3);

    const ExperimentResult result =
        run_experiment(exclusivity, family, cover, config,
                       serial ? ExecutionMode::serial : ExecutionMode::parallel);

    const std::string json = experiment_json(result, config);
    std::cout << json;
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_file(std::filesystem::path(out_dir) / "report.json", json);
        std::ostringstream defects;
        write_defect_csv(defects, result.defects);
        write_file(std::filesystem::path(out_dir) / "defects.csv", defects.str());
        if (emit_traces) {
            std::ostringstream trials_csv;
            write_trials_csv(trials_csv, result);
            write_file(std::filesystem::path(out_dir) / "trials.csv", trials_csv.str());
        }
    }
    const bool success = result.report.quantum_agreement && result.report.classical_refuted;
    return success ? kExitOk : kExitVerdictFail;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Exclusivity-graph paradox certification and optical-campaign simulation"};
    app.require_subcommand(1);

    std::string graph_spec;
    bool quick = false;
    CLI::App* info = app.add_subcommand("graph-info", "Invariants of a named or file graph");
    info->add_option("--graph", graph_spec, "Graph name or edge-list file")->required();
    info->add_flag("--quick", quick, "Skip the exact searches (independence and clique number)");

    std::string theta_graph;
    double theta_tol = 1e-5;
    bool theta_matrices = false;
    CLI::App* theta = app.add_subcommand("theta", "Two-sided spectral bound certificate");
    theta->add_option("--graph", theta_graph, "Graph name or edge-list file")->required();
    theta->add_option("--tol", theta_tol, "Target certificate gap")->check(CLI::PositiveNumber);
    theta->add_flag("--matrices", theta_matrices, "Embed the certificate matrices in the JSON");

    std::string certify_graph;
    int contexts = 3;
    double certify_tol = 1e-5;
    CLI::App* certify = app.add_subcommand("certify", "Certify the n-context paradox conditions");
    certify->add_option("--graph", certify_graph, "Graph name or edge-list file")->required();
    certify->add_option("--contexts", contexts, "Number of contexts n (must be at least 3)");
    certify->add_option("--tol", certify_tol, "Target certificate gap")->check(CLI::PositiveNumber);

    std::string rays_out;
    CLI::App* rays = app.add_subcommand(
        "rays", "Extract the 37-dimensional realization of the 57-event instance");
    rays->add_option("--out", rays_out, "Directory for rays.csv and rays.json");

    int c_max = 100;
    std::string screen_out;
    CLI::App* screen = app.add_subcommand(
        "screen-srg", "Screen strongly regular parameter sets for three-context hosts");
    screen->add_option("--c-max", c_max, "Largest common-neighbor count to cover");
    screen->add_option("--out", screen_out, "Directory for screen.json");

    std::string sim_config, sim_out;
    int sim_trials = 0;
    long long sim_seed = -1;
    bool emit_traces = false, serial = false;
    CLI::App* simulate = app.add_subcommand("simulate", "Simulated measurement campaign");
    simulate->add_option("--config", sim_config, "Run configuration file (key = value lines)");
    simulate->add_option("--trials", sim_trials, "Override the configured trial count")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim_seed, "Override the configured master seed")
        ->check(CLI::NonNegativeNumber);
    simulate->add_option("--out", sim_out, "Directory for report.json and defects.csv");
    simulate->add_flag("--emit-traces", emit_traces, "Also write per-trial context totals");
    simulate->add_flag("--serial", serial, "Run the trials on a single thread");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (info->parsed()) return cmd_graph_info(graph_spec, quick);
        if (theta->parsed()) return cmd_theta(theta_graph, theta_tol, theta_matrices);
        if (certify->parsed()) return cmd_certify(certify_graph, contexts, certify_tol);
        if (rays->parsed()) return cmd_rays(rays_out);
        if (screen->parsed()) return cmd_screen(c_max, screen_out);
        if (simulate->parsed())
            return cmd_simulate(sim_config, sim_trials, sim_seed, sim_out, emit_traces, serial);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    }
    return kExitUsage;
}

} // namespace qcb
