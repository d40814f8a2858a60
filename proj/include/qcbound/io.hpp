#pragma once

#include <iosfwd>
#include <string>

#include "qcbound/campaign.hpp"
#include "qcbound/contextuality.hpp"
#include "qcbound/gram.hpp"
#include "qcbound/graph.hpp"
#include "qcbound/rays.hpp"
#include "qcbound/srg_screen.hpp"
#include "qcbound/theta.hpp"

namespace qcb {

/// All JSON documents share the same conventions: two-space indentation,
/// lexicographically sorted keys, a top-level "schema_version" of "1" and a
/// trailing newline, so byte-identical reruns diff cleanly.

/// Graph summary (order, size, degrees, regularity and, when applicable,
/// strongly-regular parameters).  Exact invariants that need a search
/// (independence number, clique number) are included only when
/// `with_invariants` is set.
std::string graph_info_json(const Graph& g, const std::string& name, bool with_invariants,
                            SearchBudget budget = {});

/// Two-sided spectral certificate.  The primal and dual matrices are large;
/// they are embedded only when `with_matrices` is set.
std::string theta_json(const ThetaCertificate& cert, bool with_matrices = false);

/// Paradox certification verdict with the nested spectral certificate.
std::string certificate_json(const ParadoxCertificate& cert, bool with_matrices = false);

/// Exact Gram certificate; the matrix itself is embedded only on request.
std::string gram_json(const GramCertificate& cert, bool with_matrix = false);

/// Realized rays, the handle state and its overlaps.
std::string rays_json(const RayFamily& family);

/// Parameter-screen report with one record per common-neighbor count.
std::string screen_json(const ScreenReport& report);

/// Run configuration as a JSON object (the plain-text format remains the
/// canonical input; this is for embedding in result documents).
std::string run_config_json(const RunConfig& config);

/// Full simulated-campaign outcome: report, verdicts, defect summary and the
/// configuration that produced it.
std::string experiment_json(const ExperimentResult& result, const RunConfig& config);

/// Defect matrix as CSV with header `prepared,measured,defect,surveyed`.
/// Every ordered exclusive pair appears once, sorted; pairs that were not
/// surveyed carry defect 0 and surveyed 0.
void write_defect_csv(std::ostream& out, const DefectMatrix& defects);

/// Per-trial normalized context totals as CSV with header
/// `context,trial,value`.
void write_trials_csv(std::ostream& out, const ExperimentResult& result);

} // namespace qcb
