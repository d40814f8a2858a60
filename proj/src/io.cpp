#include "qcbound/io.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qcbound/invariants.hpp"

namespace qcb {

namespace {

using nlohmann::json; // object keys are kept sorted

json vector_json(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

json vector_json(const std::vector<double>& v) {
    json arr = json::array();
    for (double x : v) arr.push_back(x);
    return arr;
}

json matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string finish(json doc) {
    doc["schema_version"] = "1";
    return doc.dump(2) + "\n";
}

json theta_body(const ThetaCertificate& cert, bool with_matrices) {
    json j;
    j["vertices"] = cert.n;
    j["primal_value"] = cert.primal_value;
    j["dual_value"] = cert.dual_value;
    j["gap"] = cert.gap;
    j["converged"] = cert.converged;
    j["iterations"] = cert.iterations;
    j["primal_min_eigenvalue"] = cert.primal_min_eigenvalue;
    j["primal_trace_error"] = cert.primal_trace_error;
    j["primal_edge_abs_max"] = cert.primal_edge_abs_max;
    j["dual_family_abs_error"] = cert.dual_family_abs_error;
    if (with_matrices) {
        j["primal_matrix"] = matrix_json(cert.primal_matrix);
        j["dual_matrix"] = matrix_json(cert.dual_matrix);
    }
    return j;
}

json report_body(const ParadoxReport& r) {
    json j;
    j["context_sums"] = vector_json(r.context_sums);
    j["context_sum_stderr"] = vector_json(r.context_sum_stderr);
    j["probability_sum"] = r.probability_sum;
    j["defect_term"] = r.defect_term;
    j["defect_term_stderr"] = r.defect_term_stderr;
    j["inequality_lhs"] = r.inequality_lhs;
    j["classical_bound"] = r.classical_bound;
    j["corrected_bound"] = r.corrected_bound;
    j["quantum_bound"] = r.quantum_bound;
    j["margin"] = r.margin;
    j["margin_stderr"] = r.margin_stderr;
    j["sigma_level"] = r.sigma_level;
    j["mean_defect"] = r.mean_defect;
    j["quantum_agreement"] = r.quantum_agreement;
    j["classical_refuted"] = r.classical_refuted;
    return j;
}

json config_body(const RunConfig& c) {
    json noise;
    noise["sigma_ring_deg"] = c.noise.sigma_ring / NoiseModel::kDegree;
    noise["sigma_lo_deg"] = c.noise.sigma_lo / NoiseModel::kDegree;
    noise["reject_deg"] = c.noise.reject_threshold / NoiseModel::kDegree;
    if (c.noise.extinction_floor > 0.0)
        noise["extinction_db"] = -20.0 * std::log10(c.noise.extinction_floor);
    else
        noise["extinction_db"] = nullptr;
    noise["extinction_reference"] =
        c.noise.extinction_reference == ExtinctionReference::drive ? "drive" : "unit";
    noise["visibility"] = c.noise.visibility;

    json plan;
    plan["block_sizes"] = c.plan.block_sizes;
    plan["v_max"] = c.plan.v_max;
    plan["headroom"] = c.plan.headroom;

    json j;
    j["noise"] = std::move(noise);
    j["plan"] = std::move(plan);
    j["kernel"] = vector_json(c.kernel.coefficients);
    j["trials"] = c.trials;
    j["survey_trials"] = c.survey_trials;
    j["seed"] = c.seed;
    j["bootstrap_resamples"] = c.bootstrap_resamples;
    j["min_context_probability"] = c.thresholds.min_context_probability;
    j["refutation_sigma"] = c.thresholds.refutation_sigma;
    j["carrier_scale"] = c.carrier_scale;
    j["lock_cycle_hz"] = c.lock_cycle_hz;
    j["lock_period_us"] = c.lock_period_us;
    j["measure_period_us"] = c.measure_period_us;
    return j;
}

} // namespace

std::string graph_info_json(const Graph& g, const std::string& name, bool with_invariants,
                            SearchBudget budget) {
    json j;
    if (!name.empty()) j["name"] = name;
    j["vertices"] = g.vertex_count();
    j["edges"] = g.edge_count();
    j["min_degree"] = g.vertex_count() ? g.min_degree() : 0;
    j["max_degree"] = g.vertex_count() ? g.max_degree() : 0;
    j["regular"] = g.is_regular();
    j["bipartite"] = is_bipartite(g);
    if (auto p = is_srg(g)) {
        json srg;
        srg["n"] = p->n;
        srg["k"] = p->k;
        srg["a"] = p->a;
        srg["c"] = p->c;
        j["strongly_regular"] = std::move(srg);
    } else {
        j["strongly_regular"] = nullptr;
    }
    if (with_invariants) {
        j["independence_number"] = independence_number(g, budget);
        j["clique_number"] = max_clique(g, budget).size;
    }
    return finish(std::move(j));
}

std::string theta_json(const ThetaCertificate& cert, bool with_matrices) {
    return finish(theta_body(cert, with_matrices));
}

std::string certificate_json(const ParadoxCertificate& cert, bool with_matrices) {
    json j;
    j["status"] = to_string(cert.status);
    j["n_contexts"] = cert.n_contexts;
    j["independence_number"] = cert.independence_number;
    j["independence_ok"] = cert.alpha_ok;
    j["clique_cover_number"] =
        cert.cover_exceeds_limit ? json(nullptr) : json(cert.clique_cover_number);
    j["clique_cover_ok"] = cert.cover_ok;
    j["theta"] = theta_body(cert.theta, with_matrices);
    j["theta_ok"] = cert.theta_ok;
    j["theta_definitive_fail"] = cert.theta_definitive_fail;
    j["contexts"] = cert.contexts;
    return finish(std::move(j));
}

std::string gram_json(const GramCertificate& cert, bool with_matrix) {
    json j;
    j["vertices"] = cert.n;
    j["objective"] = cert.objective;
    j["rank"] = cert.rank;
    j["minimal_polynomial"] = cert.min_poly;
    j["multiplicities"] = cert.multiplicities;
    j["exact"] = cert.exact;
    if (with_matrix) j["gram"] = matrix_json(cert.gram);
    return finish(std::move(j));
}

std::string rays_json(const RayFamily& family) {
    json j;
    j["dimension"] = family.dimension;
    j["rays"] = matrix_json(family.rays);
    j["handle"] = vector_json(family.handle);
    j["handle_overlaps"] = vector_json(family.handle_overlaps);
    j["reconstruction_error"] = family.reconstruction_error;
    return finish(std::move(j));
}

std::string screen_json(const ScreenReport& report) {
    json records = json::array();
    for (const ScreenRecord& rec : report.records) {
        json candidates = json::array();
        for (const ScreenCandidate& cand : rec.candidates) {
            json c;
            c["c"] = cand.c;
            c["k"] = cand.k;
            c["n"] = cand.n;
            c["s"] = cand.s;
            c["s_integral"] = cand.s_integral;
            c["lambda1"] = cand.lambda1;
            c["lambda2"] = cand.lambda2;
            c["m1"] = cand.m1;
            c["m2"] = cand.m2;
            c["reason"] = to_string(cand.reason);
            c["verified_value"] = cand.verified_value;
            c["note"] = cand.note;
            candidates.push_back(std::move(c));
        }
        json r;
        r["c"] = rec.c;
        r["candidates"] = std::move(candidates);
        records.push_back(std::move(r));
    }
    json j;
    j["c_max"] = report.c_max;
    j["records"] = std::move(records);
    j["survivors"] = report.survivors;
    j["verdict"] = report.verdict;
    return finish(std::move(j));
}

std::string run_config_json(const RunConfig& config) {
    return finish(config_body(config));
}

std::string experiment_json(const ExperimentResult& result, const RunConfig& config) {
    json defects;
    defects["measured"] = static_cast<long long>(result.defects.count());
    defects["mean"] = result.defects.mean();
    defects["max"] = result.defects.max();

    json draws;
    draws["draws"] = result.draw_stats.draws;
    draws["rejected"] = result.draw_stats.rejected;
    draws["rejection_fraction"] =
        result.draw_stats.draws > 0
            ? static_cast<double>(result.draw_stats.rejected) /
                  static_cast<double>(result.draw_stats.draws)
            : 0.0;

    json j;
    j["report"] = report_body(result.report);
    j["probabilities"] = vector_json(result.probabilities);
    j["defects"] = std::move(defects);
    j["measured_pairs"] = result.measured_pairs;
    j["excluded_pairs"] = result.excluded_pairs;
    j["draw_stats"] = std::move(draws);
    j["config"] = config_body(config);
    return finish(std::move(j));
}

void write_defect_csv(std::ostream& out, const DefectMatrix& defects) {
    std::vector<std::pair<int, int>> ordered;
    ordered.reserve(defects.edges().size() * 2);
    for (const auto& [u, v] : defects.edges()) {
        ordered.emplace_back(u, v);
        ordered.emplace_back(v, u);
    }
    std::sort(ordered.begin(), ordered.end());
    out << "prepared,measured,defect,surveyed\n";
    out << std::setprecision(17);
    for (const auto& [u, v] : ordered) {
        const auto val = defects.get(u, v);
        out << u << ',' << v << ',' << (val ? *val : 0.0) << ',' << (val ? 1 : 0) << '\n';
    }
}

void write_trials_csv(std::ostream& out, const ExperimentResult& result) {
    out << "context,trial,value\n";
    out << std::setprecision(17);
    for (std::size_t j = 0; j < result.context_trial_sums.size(); ++j)
        for (std::size_t t = 0; t < result.context_trial_sums[j].size(); ++t)
            out << j << ',' << t << ',' << result.context_trial_sums[j][t] << '\n';
}

} // namespace qcb
