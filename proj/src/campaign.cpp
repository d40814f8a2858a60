#include "qcbound/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qcbound/errors.hpp"
#include "qcbound/graph.hpp"

namespace qcb {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void bad_line(int line_no, const std::string& detail) {
    throw ParseError("run config line " + std::to_string(line_no) + ": " + detail);
}

double parse_double(const std::string& value, int line_no) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) bad_line(line_no, "trailing characters after number '" + value + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        bad_line(line_no, "expected a number, got '" + value + "'");
    }
}

long long parse_integer(const std::string& value, int line_no) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(value, &used);
        if (used != value.size()) bad_line(line_no, "trailing characters after integer '" + value + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        bad_line(line_no, "expected an integer, got '" + value + "'");
    }
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> parts;
    std::string cur;
    std::stringstream ss(value);
    while (std::getline(ss, cur, ',')) parts.push_back(trim(cur));
    return parts;
}

} // namespace

void RunConfig::validate() const {
    noise.validate();
    kernel.validate();
    if (plan.block_sizes.empty())
        throw std::invalid_argument("run config: block_sizes must not be empty");
    for (int b : plan.block_sizes)
        if (b < 1) throw std::invalid_argument("run config: block sizes must be positive");
    if (!(plan.v_max > 0.0)) throw std::invalid_argument("run config: v_max must be positive");
    if (!(plan.headroom > 0.0 && plan.headroom <= 1.0))
        throw std::invalid_argument("run config: headroom must lie in (0, 1]");
    if (trials < 1) throw std::invalid_argument("run config: trials must be at least 1");
    if (survey_trials < 1) throw std::invalid_argument("run config: survey_trials must be at least 1");
    if (bootstrap_resamples < 0)
        throw std::invalid_argument("run config: bootstrap_resamples must be non-negative");
    if (!(thresholds.min_context_probability >= 0.0 && thresholds.min_context_probability <= 1.0))
        throw std::invalid_argument("run config: min_context_probability must lie in [0, 1]");
    if (!(thresholds.refutation_sigma > 0.0))
        throw std::invalid_argument("run config: refutation_sigma must be positive");
    if (!(carrier_scale > 0.0)) throw std::invalid_argument("run config: carrier_scale must be positive");
    if (!(lock_cycle_hz >= 0.0 && lock_period_us >= 0.0 && measure_period_us >= 0.0))
        throw std::invalid_argument("run config: lock metadata must be non-negative");
}

RunConfig load_run_config(std::istream& in) {
    RunConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) bad_line(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) bad_line(line_no, "empty key");
        if (value.empty()) bad_line(line_no, "empty value for key '" + key + "'");

        if (key == "sigma_ring_deg") {
            cfg.noise.sigma_ring = parse_double(value, line_no) * NoiseModel::kDegree;
        } else if (key == "sigma_lo_deg") {
            cfg.noise.sigma_lo = parse_double(value, line_no) * NoiseModel::kDegree;
        } else if (key == "reject_deg") {
            cfg.noise.reject_threshold = parse_double(value, line_no) * NoiseModel::kDegree;
        } else if (key == "extinction_db") {
            if (value == "none") {
                cfg.noise.extinction_floor = 0.0;
            } else {
                const double db = parse_double(value, line_no);
                if (!(db > 0.0)) bad_line(line_no, "extinction_db must be positive (or 'none')");
                cfg.noise.extinction_floor = std::pow(10.0, -db / 20.0);
            }
        } else if (key == "extinction_reference") {
            if (value == "drive") cfg.noise.extinction_reference = ExtinctionReference::drive;
            else if (value == "unit") cfg.noise.extinction_reference = ExtinctionReference::unit;
            else bad_line(line_no, "extinction_reference must be 'drive' or 'unit'");
        } else if (key == "visibility") {
            cfg.noise.visibility = parse_double(value, line_no);
        } else if (key == "trials") {
            cfg.trials = static_cast<int>(parse_integer(value, line_no));
        } else if (key == "survey_trials") {
            cfg.survey_trials = static_cast<int>(parse_integer(value, line_no));
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_integer(value, line_no));
            cfg.noise.rng_seed = cfg.seed;
        } else if (key == "bootstrap_resamples") {
            cfg.bootstrap_resamples = static_cast<int>(parse_integer(value, line_no));
        } else if (key == "block_sizes") {
            cfg.plan.block_sizes.clear();
            for (const std::string& part : split_list(value))
                cfg.plan.block_sizes.push_back(static_cast<int>(parse_integer(part, line_no)));
        } else if (key == "kernel") {
            cfg.kernel.coefficients.clear();
            for (const std::string& part : split_list(value))
                cfg.kernel.coefficients.push_back(parse_double(part, line_no));
        } else if (key == "v_max") {
            cfg.plan.v_max = parse_double(value, line_no);
        } else if (key == "headroom") {
            cfg.plan.headroom = parse_double(value, line_no);
        } else if (key == "min_context_probability") {
            cfg.thresholds.min_context_probability = parse_double(value, line_no);
        } else if (key == "refutation_sigma") {
            cfg.thresholds.refutation_sigma = parse_double(value, line_no);
        } else if (key == "carrier_scale") {
            cfg.carrier_scale = parse_double(value, line_no);
        } else if (key == "lock_cycle_hz") {
            cfg.lock_cycle_hz = parse_double(value, line_no);
        } else if (key == "lock_period_us") {
            cfg.lock_period_us = parse_double(value, line_no);
        } else if (key == "measure_period_us") {
            cfg.measure_period_us = parse_double(value, line_no);
        } else {
            bad_line(line_no, "unknown key '" + key + "'");
        }
    }
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return cfg;
}

RunConfig load_run_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open run config '" + path + "'");
    return load_run_config(in);
}

void save_run_config(std::ostream& out, const RunConfig& config) {
    out << std::setprecision(17);
    out << "sigma_ring_deg = " << config.noise.sigma_ring / NoiseModel::kDegree << "\n";
    out << "sigma_lo_deg = " << config.noise.sigma_lo / NoiseModel::kDegree << "\n";
    out << "reject_deg = " << config.noise.reject_threshold / NoiseModel::kDegree << "\n";
    if (config.noise.extinction_floor > 0.0)
        out << "extinction_db = " << -20.0 * std::log10(config.noise.extinction_floor) << "\n";
    else
        out << "extinction_db = none\n";
    out << "extinction_reference = "
        << (config.noise.extinction_reference == ExtinctionReference::drive ? "drive" : "unit")
        << "\n";
    out << "visibility = " << config.noise.visibility << "\n";
    out << "trials = " << config.trials << "\n";
    out << "survey_trials = " << config.survey_trials << "\n";
    out << "seed = " << config.seed << "\n";
    out << "bootstrap_resamples = " << config.bootstrap_resamples << "\n";
    out << "block_sizes = ";
    for (std::size_t i = 0; i < config.plan.block_sizes.size(); ++i)
        out << (i ? "," : "") << config.plan.block_sizes[i];
    out << "\n";
    out << "kernel = ";
    for (std::size_t i = 0; i < config.kernel.coefficients.size(); ++i)
        out << (i ? "," : "") << config.kernel.coefficients[i];
    out << "\n";
    out << "v_max = " << config.plan.v_max << "\n";
    out << "headroom = " << config.plan.headroom << "\n";
    out << "min_context_probability = " << config.thresholds.min_context_probability << "\n";
    out << "refutation_sigma = " << config.thresholds.refutation_sigma << "\n";
    out << "carrier_scale = " << config.carrier_scale << "\n";
    out << "lock_cycle_hz = " << config.lock_cycle_hz << "\n";
    out << "lock_period_us = " << config.lock_period_us << "\n";
    out << "measure_period_us = " << config.measure_period_us << "\n";
}

Eigen::MatrixXd context_basis(const RayFamily& rays, const std::vector<int>& members) {
    const int amb = rays.dimension;
    const int n = static_cast<int>(rays.rays.rows());
    std::vector<VectorXd> vecs;
    vecs.reserve(amb);
    for (int v : members) {
        if (v < 0 || v >= n) throw std::invalid_argument("context member out of range");
        vecs.push_back(rays.rays.row(v).transpose());
    }
    if (static_cast<int>(vecs.size()) > amb)
        throw std::invalid_argument("context has more members than the ambient dimension");
    for (int m = 0; m < amb && static_cast<int>(vecs.size()) < amb; ++m) {
        VectorXd e = VectorXd::Zero(amb);
        e(m) = 1.0;
        for (const VectorXd& u : vecs) e -= u.dot(e) * u;
        const double norm = e.norm();
        if (norm > 1e-8) vecs.push_back(e / norm);
    }
    if (static_cast<int>(vecs.size()) != amb)
        throw DecompositionError("context basis completion fell short of the ambient dimension");
    MatrixXd basis(amb, amb);
    for (int i = 0; i < amb; ++i) basis.row(i) = vecs[i].transpose();
    return basis;
}

namespace {

/// One scheduled readout series: prepare `prep`, project onto row `row` of
/// the basis adapted to context `ctx`, repeat `trials` times.  `stream` is
/// the procedure's global stream index.
struct Procedure {
    int stream = 0;
    int prep = 0; ///< -1 for the handle state
    int ctx = 0;
    int row = 0;
    int trials = 0;
    std::size_t offset = 0; ///< base index into the trial-major result array
};

double safe_ratio(double num, double den) { return num / std::max(den, 1e-300); }

double mean_of(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double sample_stddev(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    if (n < 2) return 0.0;
    const double m = mean_of(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(n - 1));
}

} // namespace

ExperimentResult run_experiment(const Graph& exclusivity, const RayFamily& rays,
                                const ContextCover& cover, const RunConfig& config,
                                ExecutionMode mode) {
    config.validate();
    const int nv = exclusivity.vertex_count();
    if (static_cast<int>(rays.rays.rows()) != nv)
        throw std::invalid_argument("ray family and exclusivity graph disagree on the event count");
    if (cover.total() != nv)
        throw std::invalid_argument("context cover does not cover every event");
    const int amb = rays.dimension;
    const int nc = static_cast<int>(cover.contexts.size());
    if (nc < 1) throw std::invalid_argument("empty context cover");
    config.plan.validate(amb, config.kernel);

    std::vector<int> ctx_of(nv, -1), pos_of(nv, -1);
    for (int j = 0; j < nc; ++j)
        for (int k = 0; k < static_cast<int>(cover.contexts[j].size()); ++k) {
            const int v = cover.contexts[j][k];
            if (v < 0 || v >= nv || ctx_of[v] != -1)
                throw std::invalid_argument("context cover is not a partition of the events");
            ctx_of[v] = j;
            pos_of[v] = k;
        }
    for (int v = 0; v < nv; ++v)
        if (ctx_of[v] < 0) throw std::invalid_argument("context cover misses an event");
    for (const auto& [u, v] : exclusivity.edges())
        if (std::abs(rays.rays.row(u).dot(rays.rays.row(v))) > 1e-6)
            throw std::invalid_argument("an exclusive pair is not realized orthogonally");
    if (rays.handle.size() != amb || !(std::abs(rays.handle.norm() - 1.0) < 1e-9))
        throw std::invalid_argument("ray family carries no unit handle state");

    std::vector<MatrixXd> bases;
    bases.reserve(nc);
    for (int j = 0; j < nc; ++j) bases.push_back(context_basis(rays, cover.contexts[j]));

    // Events realized as standard basis vectors are prepared exactly by the
    // source, so pairs touching them are recorded as exact and not surveyed.
    std::vector<char> basis_state(nv, 0);
    for (int v = 0; v < nv; ++v)
        if (rays.rays.row(v).cwiseAbs().maxCoeff() > 1.0 - 1e-9) basis_state[v] = 1;

    // Survey groups: one per (prepared event, partner context).
    std::map<std::pair<int, int>, std::vector<int>> group_targets;
    int excluded_pairs = 0;
    for (const auto& [u, v] : exclusivity.edges()) {
        if (basis_state[u] || basis_state[v]) {
            ++excluded_pairs;
            continue;
        }
        group_targets[{u, ctx_of[v]}].push_back(v);
    }
    struct Group {
        int prep;
        int ctx;
        std::vector<int> targets;
    };
    std::vector<Group> groups;
    groups.reserve(group_targets.size());
    for (auto& [key, targets] : group_targets)
        groups.push_back(Group{key.first, key.second, std::move(targets)});

    const int t1 = config.trials;
    const int t2 = config.survey_trials;
    const int handle_procs = nc * amb;

    std::vector<Procedure> procs;
    procs.reserve(static_cast<std::size_t>(handle_procs) + groups.size() * amb);
    std::size_t offset = 0;
    for (int j = 0; j < nc; ++j)
        for (int r = 0; r < amb; ++r) {
            procs.push_back(Procedure{j * amb + r, -1, j, r, t1, offset});
            offset += static_cast<std::size_t>(t1);
        }
    for (int g = 0; g < static_cast<int>(groups.size()); ++g)
        for (int r = 0; r < amb; ++r) {
            procs.push_back(Procedure{handle_procs + g * amb + r, groups[g].prep,
                                      groups[g].ctx, r, t2, offset});
            offset += static_cast<std::size_t>(t2);
        }

    std::vector<double> reads(offset, 0.0);
    std::vector<long long> item_draws(procs.size(), 0), item_rejected(procs.size(), 0);

    const Rng master(config.seed);
    const auto run_item = [&](int p) {
        const Procedure& proc = procs[static_cast<std::size_t>(p)];
        const VectorXd prepared =
            proc.prep < 0 ? rays.handle : VectorXd(rays.rays.row(proc.prep).transpose());
        const VectorXd direction = bases[proc.ctx].row(proc.row).transpose();
        const Rng stream = master.derive(static_cast<std::uint64_t>(proc.stream));
        DrawStats stats;
        for (int t = 0; t < proc.trials; ++t) {
            Rng r = stream.derive(static_cast<std::uint64_t>(t));
            reads[proc.offset + static_cast<std::size_t>(t)] =
                run_projection(prepared, direction, config.plan, config.kernel, config.noise, r,
                               &stats);
        }
        item_draws[static_cast<std::size_t>(p)] = stats.draws;
        item_rejected[static_cast<std::size_t>(p)] = stats.rejected;
    };

    const int total_items = static_cast<int>(procs.size());
#ifdef _OPENMP
    if (mode == ExecutionMode::parallel) {
#pragma omp parallel for schedule(dynamic, 4)
        for (int p = 0; p < total_items; ++p) run_item(p);
    } else {
        for (int p = 0; p < total_items; ++p) run_item(p);
    }
#else
    (void)mode;
    for (int p = 0; p < total_items; ++p) run_item(p);
#endif

    ExperimentResult result;
    result.defects = DefectMatrix(exclusivity);
    result.excluded_pairs = excluded_pairs;
    for (int p = 0; p < total_items; ++p) {
        result.draw_stats.draws += item_draws[static_cast<std::size_t>(p)];
        result.draw_stats.rejected += item_rejected[static_cast<std::size_t>(p)];
    }

    // --- state analysis aggregation -------------------------------------
    const auto handle_read = [&](int j, int r, int t) {
        return reads[(static_cast<std::size_t>(j) * amb + r) * t1 + static_cast<std::size_t>(t)];
    };
    // Per-trial probability of each event within its context run, and the
    // per-trial normalized context totals.
    std::vector<std::vector<double>> event_trials(nv);
    result.context_trial_sums.assign(nc, std::vector<double>(t1, 0.0));
    for (int j = 0; j < nc; ++j) {
        const auto& members = cover.contexts[j];
        for (int v : members) event_trials[v].assign(t1, 0.0);
        for (int t = 0; t < t1; ++t) {
            double den = 0.0;
            for (int r = 0; r < amb; ++r) {
                const double x = handle_read(j, r, t);
                den += x * x;
            }
            double num = 0.0;
            for (int k = 0; k < static_cast<int>(members.size()); ++k) {
                const double x = handle_read(j, k, t);
                const double q = safe_ratio(x * x, den);
                event_trials[members[k]][t] = q;
                num += x * x;
            }
            result.context_trial_sums[j][t] = safe_ratio(num, den);
        }
    }
    result.probabilities.assign(nv, 0.0);
    for (int v = 0; v < nv; ++v) result.probabilities[v] = mean_of(event_trials[v]);

    // --- defect survey aggregation --------------------------------------
    const int ngroups = static_cast<int>(groups.size());
    const auto survey_read = [&](int g, int r, int t) {
        const std::size_t base = static_cast<std::size_t>(handle_procs) * t1;
        return reads[base + (static_cast<std::size_t>(g) * amb + r) * t2 +
                     static_cast<std::size_t>(t)];
    };
    // Per-pair per-trial defect estimates, in group order.
    std::vector<std::pair<std::pair<int, int>, std::vector<double>>> pair_trials;
    for (int g = 0; g < ngroups; ++g) {
        std::vector<double> den(t2, 0.0);
        for (int t = 0; t < t2; ++t) {
            double s = 0.0;
            for (int r = 0; r < amb; ++r) {
                const double x = survey_read(g, r, t);
                s += x * x;
            }
            den[t] = s;
        }
        for (int v : groups[g].targets) {
            std::vector<double> eps(t2, 0.0);
            for (int t = 0; t < t2; ++t) {
                const double x = survey_read(g, pos_of[v], t);
                eps[t] = safe_ratio(x * x, den[t]);
            }
            pair_trials.push_back({{groups[g].prep, v}, std::move(eps)});
        }
    }
    for (const auto& [pair, eps] : pair_trials)
        result.defects.set(pair.first, pair.second, mean_of(eps));
    result.measured_pairs = static_cast<int>(pair_trials.size());

    // --- report ----------------------------------------------------------
    result.report = evaluate_paradox(cover, result.probabilities, result.defects,
                                     static_cast<double>(nc), config.thresholds);

    // --- bootstrap standard errors ---------------------------------------
    const int B = config.bootstrap_resamples;
    if (B >= 2) {
        Rng boot = master.derive(0x626f6f74ull); // distinct from all procedure streams
        std::vector<std::vector<double>> ctx_stats(nc, std::vector<double>(B, 0.0));
        std::vector<double> defect_stats(B, 0.0), margin_stats(B, 0.0);
        std::vector<double> p_boot(nv, 0.0);
        std::vector<int> idx(std::max(t1, t2), 0);
        for (int b = 0; b < B; ++b) {
            // Handle trials: one resample per context, shared by its members.
            for (int j = 0; j < nc; ++j) {
                for (int s = 0; s < t1; ++s)
                    idx[s] = static_cast<int>(boot.uniform() * t1);
                for (int v : cover.contexts[j]) {
                    double acc = 0.0;
                    for (int s = 0; s < t1; ++s) acc += event_trials[v][idx[s]];
                    p_boot[v] = acc / static_cast<double>(t1);
                }
                double sum = 0.0;
                for (int v : cover.contexts[j]) sum += p_boot[v];
                ctx_stats[j][b] = sum;
            }
            // Survey trials: one resample per group, shared by its targets.
            double defect = 0.0;
            std::size_t cursor = 0;
            for (int g = 0; g < ngroups; ++g) {
                for (int s = 0; s < t2; ++s)
                    idx[s] = static_cast<int>(boot.uniform() * t2);
                for (std::size_t k = 0; k < groups[g].targets.size(); ++k, ++cursor) {
                    const auto& eps = pair_trials[cursor].second;
                    double acc = 0.0;
                    for (int s = 0; s < t2; ++s) acc += eps[idx[s]];
                    const int u = pair_trials[cursor].first.first;
                    defect += 0.5 * p_boot[u] * (acc / static_cast<double>(t2));
                }
            }
            defect_stats[b] = defect;
            double psum = 0.0;
            for (int j = 0; j < nc; ++j) psum += ctx_stats[j][b];
            margin_stats[b] = psum - (result.report.classical_bound + defect);
        }
        result.report.context_sum_stderr.assign(nc, 0.0);
        for (int j = 0; j < nc; ++j)
            result.report.context_sum_stderr[j] = sample_stddev(ctx_stats[j]);
        result.report.defect_term_stderr = sample_stddev(defect_stats);
        result.report.margin_stderr = sample_stddev(margin_stats);
    }
    apply_verdicts(result.report, config.thresholds);
    return result;
}

} // namespace qcb
