#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "brieragg/brier_core.hpp"

namespace brieragg {

// Decimal (continental) betting odds: the payout per unit stake for each
// outcome. Every component must exceed 1 (the stake is not returned).
class OddsVector {
 public:
  explicit OddsVector(std::vector<double> a);

  std::size_t size() const { return a_.size(); }
  double operator[](std::size_t i) const { return a_[i]; }
  const std::vector<double>& values() const { return a_; }

 private:
  std::vector<double> a_;
};

// Normalized inverse odds p_i = (1/a_i) / sum_j (1/a_j): the probability
// forecast implied by the quoted odds.
ProbVector odds_to_probs(const OddsVector& a);

// sum_i 1/a_i - 1: the margin embedded in the quoted odds. Usually positive;
// near-fair books can dip below zero.
double overround(const OddsVector& a);

// One observed event: the outcome plus each bookmaker's quoted odds.
struct MatchRecord {
  std::string date;   // ISO-8601, YYYY-MM-DD
  std::string group;  // league/tournament key; may be empty
  std::size_t outcome = 0;  // 1..n
  std::vector<OddsVector> odds;  // one vector per expert, all of size n
};

struct Diagnostic {
  enum class Severity { warning, error };
  Severity severity;
  std::size_t row;  // 1-based line number in the source
  std::string message;
};

struct MatchData {
  MatchData(OutcomeSpace space, std::vector<std::string> expert_names)
      : space(space), expert_names(std::move(expert_names)) {}

  OutcomeSpace space;
  std::vector<std::string> expert_names;
  std::vector<MatchRecord> records;
};

struct ParseResult {
  MatchData data;
  std::vector<Diagnostic> diagnostics;

  bool has_errors() const;
};

// Column layout of the canonical CSV: `date,group,outcome` followed by
// `<expert>_a1..<expert>_an` blocks, one per expert.
struct CsvSchema {
  std::vector<std::string> expert_names;
  std::vector<std::vector<std::size_t>> odds_columns;  // [expert][outcome]
  std::size_t outcome_count = 0;
  std::size_t column_count = 0;

  // Derives the schema from a header row. outcome_count_hint (0 = infer) and
  // expert_filter (empty = take every expert, in header order) narrow it.
  static CsvSchema from_header(const std::vector<std::string>& header,
                               std::size_t outcome_count_hint = 0,
                               const std::vector<std::string>& expert_filter = {});
};

// Parses canonical CSV. Malformed rows are skipped with an error diagnostic;
// kept rows with a negative overround get a warning diagnostic. Data is never
// silently dropped.
ParseResult parse_matches(std::istream& in, std::size_t outcome_count_hint = 0,
                          const std::vector<std::string>& expert_filter = {});
ParseResult parse_matches_file(const std::string& path, std::size_t outcome_count_hint = 0,
                               const std::vector<std::string>& expert_filter = {});

// Writes records back in the canonical CSV layout; odds are emitted in
// shortest round-trip form, so parse(write(x)) == x.
void write_matches(std::ostream& out, const MatchData& data);

struct Histogram {
  std::size_t bin_count = 0;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::size_t> counts;
};

// Equal-width bins spanning [min(values), max(values)]; a value equal to the
// upper edge lands in the last bin. A degenerate range puts everything in
// bin 0.
Histogram build_histogram(std::span<const double> values, std::size_t bin_count);

}  // namespace brieragg
