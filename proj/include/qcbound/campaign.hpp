#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qcbound/contextuality.hpp"
#include "qcbound/optics.hpp"
#include "qcbound/rays.hpp"

namespace qcb {

class Graph;

/// Everything needed to reproduce a simulated measurement campaign.  The
/// trailing fields describe the physical apparatus for the record (carrier
/// amplitude, stabilization duty cycle) and do not influence the simulated
/// statistics.
struct RunConfig {
    NoiseModel noise;
    SubspacePlan plan;
    ConvolutionKernel kernel = ConvolutionKernel::standard();
    int trials = 300;         ///< repetitions per state-analysis readout
    int survey_trials = 60;   ///< repetitions per defect-survey readout
    std::uint64_t seed = 1;   ///< master stream for all draws and resampling
    int bootstrap_resamples = 200;
    VerdictThresholds thresholds;

    // Recorded metadata.
    double carrier_scale = 1.014e4; ///< displacement unit in vacuum amplitudes
    double lock_cycle_hz = 1.0e4;   ///< stabilization duty cycle frequency
    double lock_period_us = 98.5;   ///< per cycle: interval spent locking
    double measure_period_us = 1.5; ///< per cycle: interval spent measuring

    void validate() const;
};

/// Parse the plain-text key/value run description (one `key = value` per
/// line, `#` comments).  Unknown keys and malformed values raise ParseError
/// with the offending line.  Keys: sigma_ring_deg, sigma_lo_deg, reject_deg,
/// extinction_db, extinction_reference (drive|unit), visibility, trials,
/// survey_trials, seed, bootstrap_resamples, block_sizes (comma list),
/// kernel (comma list), v_max, headroom, min_context_probability,
/// refutation_sigma, carrier_scale, lock_cycle_hz, lock_period_us,
/// measure_period_us.
RunConfig load_run_config(std::istream& in);
RunConfig load_run_config_file(const std::string& path);

/// Write a config in the same format (round-trips through load_run_config).
void save_run_config(std::ostream& out, const RunConfig& config);

/// Parallel runs distribute the readouts across threads; both modes fill the
/// same trial-major arrays and aggregate in a fixed order, so their results
/// are identical bit for bit.
enum class ExecutionMode { serial, parallel };

struct ExperimentResult {
    ParadoxReport report;
    DefectMatrix defects;              ///< mean defect per measured ordered pair
    std::vector<double> probabilities; ///< per-event survival probability
    /// Per-trial normalized context totals, [context][trial]; the mean over
    /// trials is report.context_sums.
    std::vector<std::vector<double>> context_trial_sums;
    int measured_pairs = 0; ///< exclusive pairs surveyed
    int excluded_pairs = 0; ///< pairs skipped (a member is a basis state)
    DrawStats draw_stats;   ///< pooled phase-draw acceptance counts
};

/// Orthonormal basis of the ambient space adapted to one context: the rows
/// of the members' rays come first, followed by Gram-Schmidt completions of
/// the standard basis vectors taken in index order (vectors whose residual
/// norm falls below 1e-8 are skipped).  Throws DecompositionError if the
/// completion does not reach the ambient dimension.
Eigen::MatrixXd context_basis(const RayFamily& rays, const std::vector<int>& members);

/// Simulate the full campaign on a realized instance.
///
/// State analysis: for every context, the shared handle state is read out
/// against all basis directions `trials` times; per-trial totals over the
/// context members, normalized by the per-trial total over the whole basis,
/// give the context sums.  Defect survey: every exclusive pair whose members
/// both have genuinely multi-component rays is surveyed `survey_trials`
/// times by preparing the lower-index ray and reading the partner's context
/// basis; pairs touching a standard basis state are recorded as exact and
/// skipped.  Standard errors come from seeded bootstrap resampling over
/// trials, and the verdict thresholds are applied to the finished report.
///
/// Every readout draws from an independent stream derived from config.seed,
/// its procedure index and its trial index, so results do not depend on the
/// execution order or thread count.
ExperimentResult run_experiment(const Graph& exclusivity, const RayFamily& rays,
                                const ContextCover& cover, const RunConfig& config,
                                ExecutionMode mode = ExecutionMode::parallel);

} // namespace qcb
