#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "brieragg/experiment.hpp"
#include "brieragg/odds.hpp"

namespace brieragg {

// Everything needed to report one completed run.
struct RunResult {
  std::string algorithm;
  std::optional<double> parameter;
  std::size_t outcome_count = 0;
  std::vector<std::string> expert_names;
  Trajectory trajectory;

  std::string label() const;  // "saa" or "wdaa(c=5.33...)" when parameterized
};

// The additive regret bound, when one of that form exists: ln(K)/eta for saa,
// 8(1-1/n)ln(K) for wdaa at the bound-optimal c. Everything else has none.
std::optional<double> theoretical_bound(std::string_view algorithm,
                                        std::optional<double> parameter,
                                        std::size_t outcome_count, std::size_t expert_count);

// Marker used in place of a missing bound: "no additive bound" for algorithms
// with only weaker guarantees (wkaa, hedge, saa_ha, wdaa off the optimal c),
// "none" for the unguarded ones (follow_leader, simple_average, bma).
std::string bound_marker(std::string_view algorithm);

enum class ReportFormat { csv, json };

ReportFormat parse_report_format(std::string_view text);  // throws on unknown tag

struct ReportInputs {
  std::vector<RunResult> runs;
  std::vector<std::pair<std::string, SweepResult>> sweeps;        // label, result
  std::vector<std::pair<std::string, Histogram>> histograms;      // label, histogram
};

// Summary rows (algorithm, max difference, bound) plus plot-ready regret
// curves, sweep curves, and histogram bins. CSV output is sectioned with
// '# <section>' comment lines; JSON is a single object.
std::string emit_report(const ReportInputs& inputs, ReportFormat format);

// Self-contained JSON artifact for one run, loadable by the report command.
void save_run_json(std::ostream& out, const RunResult& run);
RunResult load_run_json(std::istream& in);

}  // namespace brieragg
