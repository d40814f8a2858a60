// Timing comparison of the serial and multithreaded campaign runners on the
// 57-event instance.  Also checks that the two modes produce identical
// results, since the trial streams are indexed rather than shared.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qcbound/campaign.hpp"
#include "qcbound/gram.hpp"
#include "qcbound/graph.hpp"
#include "qcbound/io.hpp"
#include "qcbound/rays.hpp"

using namespace qcb;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    RunConfig config;
    config.trials = argc > 1 ? std::stoi(argv[1]) : 300;
    config.survey_trials = argc > 2 ? std::stoi(argv[2]) : 60;
    config.seed = 7;

    const GramCertificate gram = perkel_gram_certificate();
    const RayFamily family = extract_rays(gram.gram);
    const Graph exclusivity = named_graph("perkel-complement");
    const ContextCover cover = context_cover(exclusivity, 3);

    std::printf("campaign benchmark: trials=%d survey_trials=%d seed=%llu\n", config.trials,
                config.survey_trials, static_cast<unsigned long long>(config.seed));
#ifdef _OPENMP
    std::printf("threads available: %d\n", omp_get_max_threads());
#else
    std::printf("threads available: 1 (built without OpenMP)\n");
#endif

    auto t0 = std::chrono::steady_clock::now();
    const ExperimentResult serial =
        run_experiment(exclusivity, family, cover, config, ExecutionMode::serial);
    const double t_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const ExperimentResult parallel =
        run_experiment(exclusivity, family, cover, config, ExecutionMode::parallel);
    const double t_parallel = seconds_since(t0);

    const std::string a = experiment_json(serial, config);
    const std::string b = experiment_json(parallel, config);
    const bool identical = a == b;

    std::printf("serial:   %8.3f s\n", t_serial);
    std::printf("parallel: %8.3f s  (speedup %.2fx)\n", t_parallel,
                t_parallel > 0 ? t_serial / t_parallel : 0.0);
    std::printf("results identical: %s\n", identical ? "yes" : "NO");
    std::printf("margin: %.6f +- %.6f  mean defect: %.6f\n", serial.report.margin,
                serial.report.margin_stderr, serial.report.mean_defect);
    return identical ? 0 : 1;
}
