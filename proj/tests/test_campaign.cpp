#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcbound/campaign.hpp"
#include "qcbound/errors.hpp"
#include "qcbound/gram.hpp"
#include "qcbound/graph.hpp"
#include "qcbound/io.hpp"
#include "qcbound/rays.hpp"

using namespace qcb;
using Eigen::MatrixXd;

namespace {

struct Instance {
    RayFamily family;
    Graph exclusivity;
    ContextCover cover;
};

const Instance& certified_instance() {
    static const Instance inst = [] {
        const GramCertificate gram = perkel_gram_certificate();
        return Instance{extract_rays(gram.gram), named_graph("perkel-complement"),
                        context_cover(named_graph("perkel-complement"), 3)};
    }();
    return inst;
}

} // namespace

TEST_CASE("context basis starts with the member rays and is orthonormal") {
    const Instance& inst = certified_instance();
    for (int j = 0; j < 3; ++j) {
        const auto& members = inst.cover.contexts[static_cast<std::size_t>(j)];
        REQUIRE(members.size() == 19);
        const MatrixXd basis = context_basis(inst.family, members);
        REQUIRE(basis.rows() == 37);
        REQUIRE(basis.cols() == 37);
        for (int r = 0; r < 19; ++r) {
            const int v = members[static_cast<std::size_t>(r)];
            CHECK((basis.row(r) - inst.family.rays.row(v)).norm() < 1e-12);
        }
        const MatrixXd gram = basis * basis.transpose();
        CHECK((gram - MatrixXd::Identity(37, 37)).norm() < 1e-9);
    }
}

TEST_CASE("run config defaults record the apparatus and pass validation") {
    const RunConfig cfg;
    CHECK(cfg.trials == 300);
    CHECK(cfg.survey_trials == 60);
    CHECK(cfg.seed == 1);
    CHECK(cfg.bootstrap_resamples == 200);
    CHECK(cfg.thresholds.min_context_probability == 0.98);
    CHECK(cfg.thresholds.refutation_sigma == 3.0);
    CHECK(cfg.carrier_scale == 1.014e4);
    CHECK(cfg.lock_cycle_hz == 1.0e4);
    CHECK(cfg.lock_period_us == 98.5);
    CHECK(cfg.measure_period_us == 1.5);
    CHECK_NOTHROW(cfg.validate());

    RunConfig bad;
    bad.trials = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = RunConfig{};
    bad.survey_trials = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = RunConfig{};
    bad.bootstrap_resamples = -1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = RunConfig{};
    bad.thresholds.refutation_sigma = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = RunConfig{};
    bad.carrier_scale = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = RunConfig{};
    bad.plan.block_sizes.clear();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("run config parsing: units, extinction off-switch, lists") {
    std::istringstream in(
        "# simulated lab run\n"
        "sigma_ring_deg = 1.5\n"
        "sigma_lo_deg = 2.0\n"
        "reject_deg = 6.0\n"
        "extinction_db = 30\n"
        "extinction_reference = unit\n"
        "visibility = 0.97\n"
        "\n"
        "trials = 25\n"
        "survey_trials = 4\n"
        "seed = 99\n"
        "bootstrap_resamples = 12\n"
        "block_sizes = 5, 2\n"
        "kernel = 1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125, "
        "0.00390625, 0.001953125, 0.0009765625, 0.00048828125\n"
        "v_max = 0.3\n"
        "headroom = 0.9\n"
        "min_context_probability = 0.95\n"
        "refutation_sigma = 2.5\n"
        "carrier_scale = 5000\n"
        "lock_cycle_hz = 12000\n"
        "lock_period_us = 90\n"
        "measure_period_us = 2\n");
    const RunConfig cfg = load_run_config(in);
    CHECK(cfg.noise.sigma_ring == doctest::Approx(1.5 * NoiseModel::kDegree).epsilon(1e-15));
    CHECK(cfg.noise.sigma_lo == doctest::Approx(2.0 * NoiseModel::kDegree).epsilon(1e-15));
    CHECK(cfg.noise.reject_threshold == doctest::Approx(6.0 * NoiseModel::kDegree).epsilon(1e-15));
    CHECK(cfg.noise.extinction_floor == doctest::Approx(std::pow(10.0, -30.0 / 20.0)).epsilon(1e-12));
    CHECK(cfg.noise.extinction_reference == ExtinctionReference::unit);
    CHECK(cfg.noise.visibility == 0.97);
    CHECK(cfg.trials == 25);
    CHECK(cfg.survey_trials == 4);
    CHECK(cfg.seed == 99);
    CHECK(cfg.bootstrap_resamples == 12);
    CHECK(cfg.plan.block_sizes == std::vector<int>{5, 2});
    CHECK(cfg.kernel.length() == 12);
    CHECK(cfg.kernel.coefficients[1] == 0.5);
    CHECK(cfg.plan.v_max == 0.3);
    CHECK(cfg.plan.headroom == 0.9);
    CHECK(cfg.thresholds.min_context_probability == 0.95);
    CHECK(cfg.thresholds.refutation_sigma == 2.5);
    CHECK(cfg.carrier_scale == 5000.0);
    CHECK(cfg.lock_cycle_hz == 12000.0);
    CHECK(cfg.lock_period_us == 90.0);
    CHECK(cfg.measure_period_us == 2.0);

    std::istringstream off("extinction_db = none\n");
    CHECK(load_run_config(off).noise.extinction_floor == 0.0);
}

TEST_CASE("run config parsing reports the offending line") {
    std::istringstream unknown("trials = 10\nshenanigans = 3\n");
    try {
        load_run_config(unknown);
        FAIL("unknown key must raise");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        CHECK(std::string(e.what()).find("shenanigans") != std::string::npos);
    }

    std::istringstream bad_value("trials = many\n");
    try {
        load_run_config(bad_value);
        FAIL("malformed value must raise");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }

    std::istringstream no_equals("trials\n");
    CHECK_THROWS_AS(load_run_config(no_equals), ParseError);
    std::istringstream bad_ref("extinction_reference = maybe\n");
    CHECK_THROWS_AS(load_run_config(bad_ref), ParseError);
}

TEST_CASE("run config round-trips through save and load") {
    RunConfig cfg;
    cfg.noise.sigma_ring = 1.1 * NoiseModel::kDegree;
    cfg.noise.extinction_floor = 0.0; // saved as the off-switch
    cfg.noise.visibility = 0.93;
    cfg.trials = 17;
    cfg.survey_trials = 5;
    cfg.seed = 424242;
    cfg.plan.block_sizes = {4, 3};
    cfg.plan.v_max = 0.21;
    cfg.thresholds.min_context_probability = 0.9;

    std::ostringstream out;
    save_run_config(out, cfg);
    std::istringstream back(out.str());
    const RunConfig again = load_run_config(back);
    CHECK(again.noise.sigma_ring == doctest::Approx(cfg.noise.sigma_ring).epsilon(1e-12));
    CHECK(again.noise.extinction_floor == 0.0);
    CHECK(again.noise.visibility == doctest::Approx(0.93).epsilon(1e-12));
    CHECK(again.trials == 17);
    CHECK(again.survey_trials == 5);
    CHECK(again.seed == 424242);
    CHECK(again.plan.block_sizes == std::vector<int>{4, 3});
    CHECK(again.plan.v_max == doctest::Approx(0.21).epsilon(1e-12));
    CHECK(again.thresholds.min_context_probability == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(again.kernel.length() == cfg.kernel.length());
}

TEST_CASE("quiet campaign realizes the ideal paradox") {
    const Instance& inst = certified_instance();
    RunConfig cfg;
    cfg.noise = NoiseModel::quiet();
    cfg.trials = 3;
    cfg.survey_trials = 2;
    cfg.bootstrap_resamples = 16;
    cfg.seed = 2;

    const ExperimentResult res =
        run_experiment(inst.exclusivity, inst.family, inst.cover, cfg, ExecutionMode::serial);
    REQUIRE(res.report.context_sums.size() == 3);
    for (double p : res.report.context_sums) CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res.report.probability_sum == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(res.report.defect_term == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(res.report.mean_defect == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(res.report.classical_bound == 2.0);
    CHECK(res.report.quantum_bound == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(res.report.margin == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(res.report.quantum_agreement);
    CHECK(res.report.classical_refuted);
    CHECK(res.draw_stats.rejected == 0);

    // Every probability is an event survival estimate over 57 events.
    CHECK(res.probabilities.size() == 57);
    REQUIRE(res.context_trial_sums.size() == 3);
    for (const auto& row : res.context_trial_sums) CHECK(row.size() == 3);
}

TEST_CASE("default-noise campaign regression under the frozen seed") {
    const Instance& inst = certified_instance();
    RunConfig cfg;
    cfg.trials = 1000;
    cfg.seed = 7;
    cfg.noise.rng_seed = 7;

    const ExperimentResult res =
        run_experiment(inst.exclusivity, inst.family, inst.cover, cfg, ExecutionMode::serial);

    // Values frozen from this configuration's own deterministic output; the
    // bands absorb floating-point re-association across compilers.
    CHECK(res.report.context_sums[0] == doctest::Approx(0.9918317371768965).epsilon(1e-6));
    CHECK(res.report.context_sums[1] == doctest::Approx(0.9900053790451445).epsilon(1e-6));
    CHECK(res.report.context_sums[2] == doctest::Approx(0.9957613440787763).epsilon(1e-6));
    CHECK(res.report.defect_term == doctest::Approx(0.024285081850837283).epsilon(1e-6));
    CHECK(res.report.margin == doctest::Approx(0.9533133784499803).epsilon(1e-6));
    CHECK(res.report.mean_defect == doctest::Approx(0.0008830794772288468).epsilon(1e-4));
    CHECK(res.report.sigma_level > 1000.0);
    CHECK(res.report.quantum_agreement);
    CHECK(res.report.classical_refuted);
    CHECK(res.measured_pairs == 1053);
    CHECK(res.excluded_pairs == 372);

    const double reject =
        static_cast<double>(res.draw_stats.rejected) / static_cast<double>(res.draw_stats.draws);
    CHECK(reject > 0.030);
    CHECK(reject < 0.035);

    // Per-trial context totals average to the reported sums.
    for (int j = 0; j < 3; ++j) {
        const auto& row = res.context_trial_sums[static_cast<std::size_t>(j)];
        REQUIRE(row.size() == 1000);
        double mean = 0.0;
        for (double v : row) mean += v;
        mean /= static_cast<double>(row.size());
        CHECK(mean == doctest::Approx(res.report.context_sums[static_cast<std::size_t>(j)])
                          .epsilon(1e-12));
    }
}

TEST_CASE("campaign results are execution-order and thread-count invariant") {
    const Instance& inst = certified_instance();
    RunConfig cfg;
    cfg.trials = 40;
    cfg.survey_trials = 8;
    cfg.bootstrap_resamples = 32;
    cfg.seed = 3;

    const ExperimentResult serial =
        run_experiment(inst.exclusivity, inst.family, inst.cover, cfg, ExecutionMode::serial);
    const ExperimentResult parallel =
        run_experiment(inst.exclusivity, inst.family, inst.cover, cfg, ExecutionMode::parallel);
    CHECK(experiment_json(serial, cfg) == experiment_json(parallel, cfg));

    const ExperimentResult again =
        run_experiment(inst.exclusivity, inst.family, inst.cover, cfg, ExecutionMode::parallel);
    CHECK(experiment_json(parallel, cfg) == experiment_json(again, cfg));

    RunConfig other = cfg;
    other.seed = 4;
    const ExperimentResult different =
        run_experiment(inst.exclusivity, inst.family, inst.cover, other, ExecutionMode::serial);
    CHECK(serial.report.context_sums != different.report.context_sums);
}
