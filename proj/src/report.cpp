#include "brieragg/report.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "brieragg/baselines.hpp"
#include "brieragg/numeric.hpp"

namespace brieragg {

using nlohmann::json;

std::string RunResult::label() const {
  if (!parameter) return algorithm;
  std::string knob = algorithm == "saa" ? "eta" : (algorithm == "wdaa" || algorithm == "wkaa") ? "c" : "beta";
  return algorithm + "(" + knob + "=" + format_double(*parameter) + ")";
}

std::optional<double> theoretical_bound(std::string_view algorithm,
                                        std::optional<double> parameter,
                                        std::size_t outcome_count, std::size_t expert_count) {
  if (algorithm == "saa") {
    const double eta = parameter.value_or(1.0);
    return std::log(double(expert_count)) / eta;
  }
  if (algorithm == "wdaa") {
    const double opt = wdaa_optimal_c(outcome_count);
    if (parameter && std::abs(*parameter - opt) <= 1e-9) {
      return opt * std::log(double(expert_count));
    }
    return std::nullopt;
  }
  return std::nullopt;
}

std::string bound_marker(std::string_view algorithm) {
  if (algorithm == "follow_leader" || algorithm == "simple_average" || algorithm == "bma") {
    return "none";
  }
  return "no additive bound";
}

ReportFormat parse_report_format(std::string_view text) {
  if (text == "csv") return ReportFormat::csv;
  if (text == "json") return ReportFormat::json;
  throw std::invalid_argument("unknown report format '" + std::string(text) +
                              "' (expected csv or json)");
}

namespace {

void emit_summary_csv(std::ostream& out, const std::vector<RunResult>& runs) {
  out << "# summary\n";
  out << "algorithm,parameter,max_difference,theoretical_bound\n";
  for (const RunResult& run : runs) {
    const auto bound = theoretical_bound(run.algorithm, run.parameter, run.outcome_count,
                                         run.trajectory.expert_count());
    out << run.algorithm << ',';
    if (run.parameter) out << format_double(*run.parameter);
    out << ',' << format_double(max_difference(run.trajectory)) << ',';
    if (bound) out << format_double(*bound);
    else out << bound_marker(run.algorithm);
    out << '\n';
  }
}

void emit_curves_csv(std::ostream& out, const RunResult& run) {
  out << "# regret_curve " << run.label() << '\n';
  out << "step";
  for (const std::string& name : run.expert_names) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < run.trajectory.step_count(); ++i) {
    out << (i + 1);
    for (std::size_t k = 0; k < run.trajectory.expert_count(); ++k) {
      out << ','
          << format_double(run.trajectory.expert_cumulative[i][k] -
                           run.trajectory.learner_cumulative[i]);
    }
    out << '\n';
  }
}

void emit_sweep_csv(std::ostream& out, const std::string& label, const SweepResult& sweep) {
  out << "# sweep " << label << '\n';
  out << "parameter,max_difference\n";
  for (std::size_t i = 0; i < sweep.parameter_values.size(); ++i) {
    out << format_double(sweep.parameter_values[i]) << ','
        << format_double(sweep.max_differences[i]) << '\n';
  }
  for (const std::string& diag : sweep.diagnostics) {
    out << "# dropped: " << diag << '\n';
  }
}

void emit_histogram_csv(std::ostream& out, const std::string& label, const Histogram& h) {
  out << "# histogram " << label << '\n';
  out << "bin_lo,bin_hi,count\n";
  const double width = (h.hi - h.lo) / double(h.bin_count);
  for (std::size_t b = 0; b < h.bin_count; ++b) {
    out << format_double(h.lo + width * double(b)) << ','
        << format_double(b + 1 == h.bin_count ? h.hi : h.lo + width * double(b + 1)) << ','
        << h.counts[b] << '\n';
  }
}

json run_to_json(const RunResult& run) {
  json j;
  j["algorithm"] = run.algorithm;
  if (run.parameter) j["parameter"] = *run.parameter;
  else j["parameter"] = nullptr;
  j["outcome_count"] = run.outcome_count;
  j["expert_names"] = run.expert_names;
  j["steps"] = run.trajectory.step_count();
  j["max_difference"] = max_difference(run.trajectory);
  const auto bound = theoretical_bound(run.algorithm, run.parameter, run.outcome_count,
                                       run.trajectory.expert_count());
  if (bound) {
    j["theoretical_bound"] = *bound;
  } else {
    j["theoretical_bound"] = nullptr;
    j["bound_note"] = bound_marker(run.algorithm);
  }
  j["learner_cumulative"] = run.trajectory.learner_cumulative;
  j["expert_cumulative"] = run.trajectory.expert_cumulative;
  return j;
}

}  // namespace

std::string emit_report(const ReportInputs& inputs, ReportFormat format) {
  if (inputs.runs.empty() && inputs.sweeps.empty() && inputs.histograms.empty()) {
    throw std::invalid_argument("emit_report: nothing to report");
  }

  if (format == ReportFormat::csv) {
    std::ostringstream out;
    if (!inputs.runs.empty()) emit_summary_csv(out, inputs.runs);
    for (const RunResult& run : inputs.runs) {
      out << '\n';
      emit_curves_csv(out, run);
    }
    for (const auto& [label, sweep] : inputs.sweeps) {
      out << '\n';
      emit_sweep_csv(out, label, sweep);
    }
    for (const auto& [label, hist] : inputs.histograms) {
      out << '\n';
      emit_histogram_csv(out, label, hist);
    }
    return out.str();
  }

  json j;
  j["summary"] = json::array();
  j["regret_curves"] = json::object();
  for (const RunResult& run : inputs.runs) {
    json row = run_to_json(run);
    json curves;
    curves["experts"] = run.expert_names;
    json series = json::array();
    for (std::size_t k = 0; k < run.trajectory.expert_count(); ++k) {
      series.push_back(regret_curve(run.trajectory, k));
    }
    curves["series"] = series;
    j["regret_curves"][run.label()] = curves;
    row.erase("learner_cumulative");
    row.erase("expert_cumulative");
    j["summary"].push_back(row);
  }
  j["sweeps"] = json::object();
  for (const auto& [label, sweep] : inputs.sweeps) {
    json s;
    s["parameter_values"] = sweep.parameter_values;
    s["max_differences"] = sweep.max_differences;
    s["diagnostics"] = sweep.diagnostics;
    j["sweeps"][label] = s;
  }
  j["histograms"] = json::object();
  for (const auto& [label, hist] : inputs.histograms) {
    json h;
    h["bin_count"] = hist.bin_count;
    h["lo"] = hist.lo;
    h["hi"] = hist.hi;
    h["counts"] = hist.counts;
    j["histograms"][label] = h;
  }
  return j.dump(2) + "\n";
}

void save_run_json(std::ostream& out, const RunResult& run) {
  out << run_to_json(run).dump(2) << '\n';
}

RunResult load_run_json(std::istream& in) {
  json j = json::parse(in);
  RunResult run;
  run.algorithm = j.at("algorithm").get<std::string>();
  if (!j.at("parameter").is_null()) run.parameter = j.at("parameter").get<double>();
  run.outcome_count = j.at("outcome_count").get<std::size_t>();
  run.expert_names = j.at("expert_names").get<std::vector<std::string>>();
  run.trajectory.learner_cumulative = j.at("learner_cumulative").get<std::vector<double>>();
  run.trajectory.expert_cumulative =
      j.at("expert_cumulative").get<std::vector<std::vector<double>>>();
  if (run.trajectory.expert_cumulative.size() != run.trajectory.learner_cumulative.size()) {
    throw std::invalid_argument("run artifact: trajectory lengths disagree");
  }
  return run;
}

}  // namespace brieragg
