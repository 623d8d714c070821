#include "brieragg/odds.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "brieragg/numeric.hpp"

namespace brieragg {

OddsVector::OddsVector(std::vector<double> a) : a_(std::move(a)) {
  if (a_.size() < 2) {
    throw std::invalid_argument("OddsVector: need odds for at least 2 outcomes");
  }
  for (double ai : a_) {
    if (!(ai > 1.0)) {
      throw std::invalid_argument("OddsVector: every betting odds value must exceed 1, got " +
                                  format_double(ai));
    }
  }
}

ProbVector odds_to_probs(const OddsVector& a) {
  std::vector<double> inv(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) inv[i] = 1.0 / a[i];
  const double total = neumaier_sum(inv);
  for (double& p : inv) p /= total;
  return ProbVector(std::move(inv));
}

double overround(const OddsVector& a) {
  std::vector<double> inv(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) inv[i] = 1.0 / a[i];
  return neumaier_sum(inv) - 1.0;
}

bool ParseResult::has_errors() const {
  return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) {
    return d.severity == Diagnostic::Severity::error;
  });
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  for (std::string& f : fields) {
    const auto b = f.find_first_not_of(" \t");
    const auto e = f.find_last_not_of(" \t");
    f = (b == std::string::npos) ? std::string() : f.substr(b, e - b + 1);
  }
  return fields;
}

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && !s.empty();
}

bool parse_size(const std::string& s, std::size_t& out) {
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && !s.empty();
}

bool valid_iso_date(const std::string& s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  const int month = (s[5] - '0') * 10 + (s[6] - '0');
  const int day = (s[8] - '0') * 10 + (s[9] - '0');
  return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

// Splits "<name>_a<k>" into (name, k); returns false when the field does not
// match that shape.
bool split_odds_header(const std::string& field, std::string& name, std::size_t& k) {
  const auto pos = field.rfind("_a");
  if (pos == std::string::npos || pos == 0) return false;
  const std::string suffix = field.substr(pos + 2);
  if (!parse_size(suffix, k) || k == 0) return false;
  name = field.substr(0, pos);
  return true;
}

}  // namespace

CsvSchema CsvSchema::from_header(const std::vector<std::string>& header,
                                 std::size_t outcome_count_hint,
                                 const std::vector<std::string>& expert_filter) {
  if (header.size() < 3 || header[0] != "date" || header[1] != "group" ||
      header[2] != "outcome") {
    throw std::invalid_argument(
        "csv header must start with 'date,group,outcome' followed by "
        "<expert>_a1..<expert>_a<n> columns");
  }

  // Map expert name -> (outcome label -> column), preserving header order.
  std::vector<std::string> names;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> cols;  // (k, col)
  for (std::size_t col = 3; col < header.size(); ++col) {
    std::string name;
    std::size_t k = 0;
    if (!split_odds_header(header[col], name, k)) {
      throw std::invalid_argument("unrecognized odds column '" + header[col] +
                                  "' (expected <expert>_a<k>)");
    }
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
      names.push_back(name);
      cols.emplace_back();
      it = names.end() - 1;
    }
    cols[std::size_t(it - names.begin())].emplace_back(k, col);
  }
  if (names.empty()) {
    throw std::invalid_argument("csv header declares no expert odds columns");
  }

  // Every expert must cover outcomes 1..n for one shared n.
  std::size_t n = 0;
  for (std::size_t e = 0; e < names.size(); ++e) {
    std::sort(cols[e].begin(), cols[e].end());
    if (n == 0) n = cols[e].size();
    if (cols[e].size() != n) {
      throw std::invalid_argument("expert '" + names[e] + "' has " +
                                  std::to_string(cols[e].size()) +
                                  " odds columns, others have " + std::to_string(n));
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (cols[e][k].first != k + 1) {
        throw std::invalid_argument("expert '" + names[e] + "' odds columns are not a1..a" +
                                    std::to_string(n));
      }
    }
  }
  if (n < 2) {
    throw std::invalid_argument("need odds for at least 2 outcomes per expert");
  }
  if (outcome_count_hint != 0 && outcome_count_hint != n) {
    throw std::invalid_argument("header declares " + std::to_string(n) +
                                " outcomes, expected " + std::to_string(outcome_count_hint));
  }

  CsvSchema schema;
  schema.outcome_count = n;
  schema.column_count = header.size();
  const std::vector<std::string>& wanted = expert_filter.empty() ? names : expert_filter;
  for (const std::string& name : wanted) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
      throw std::invalid_argument("expert '" + name + "' not present in the csv header");
    }
    const std::size_t e = std::size_t(it - names.begin());
    schema.expert_names.push_back(name);
    std::vector<std::size_t> columns(n);
    for (std::size_t k = 0; k < n; ++k) columns[k] = cols[e][k].second;
    schema.odds_columns.push_back(std::move(columns));
  }
  return schema;
}

ParseResult parse_matches(std::istream& in, std::size_t outcome_count_hint,
                          const std::vector<std::string>& expert_filter) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("parse_matches: missing header row");
  }
  const CsvSchema schema =
      CsvSchema::from_header(split_csv_line(line), outcome_count_hint, expert_filter);

  ParseResult result{MatchData(OutcomeSpace(schema.outcome_count), schema.expert_names), {}};
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = split_csv_line(line);
    auto reject = [&](const std::string& why) {
      result.diagnostics.push_back({Diagnostic::Severity::error, row, why});
    };
    if (fields.size() != schema.column_count) {
      reject("expected " + std::to_string(schema.column_count) + " fields, got " +
             std::to_string(fields.size()));
      continue;
    }

    MatchRecord rec;
    rec.date = fields[0];
    rec.group = fields[1];
    if (!valid_iso_date(rec.date)) {
      reject("invalid date '" + rec.date + "' (expected YYYY-MM-DD)");
      continue;
    }
    if (!parse_size(fields[2], rec.outcome) || rec.outcome < 1 ||
        rec.outcome > schema.outcome_count) {
      reject("outcome '" + fields[2] + "' outside 1.." + std::to_string(schema.outcome_count));
      continue;
    }

    bool ok = true;
    for (std::size_t e = 0; e < schema.expert_names.size() && ok; ++e) {
      std::vector<double> a(schema.outcome_count);
      for (std::size_t k = 0; k < schema.outcome_count; ++k) {
        const std::string& field = fields[schema.odds_columns[e][k]];
        if (!parse_double(field, a[k])) {
          reject("expert '" + schema.expert_names[e] + "': missing or unparseable odds '" +
                 field + "'");
          ok = false;
          break;
        }
        if (!(a[k] > 1.0)) {
          reject("expert '" + schema.expert_names[e] + "': odds " + field +
                 " not greater than 1");
          ok = false;
          break;
        }
      }
      if (ok) rec.odds.emplace_back(std::move(a));
    }
    if (!ok) continue;

    for (std::size_t e = 0; e < rec.odds.size(); ++e) {
      if (overround(rec.odds[e]) < 0.0) {
        result.diagnostics.push_back({Diagnostic::Severity::warning, row,
                                      "expert '" + schema.expert_names[e] +
                                          "': negative overround (near-fair or arbitrage odds)"});
      }
    }
    result.data.records.push_back(std::move(rec));
  }
  return result;
}

ParseResult parse_matches_file(const std::string& path, std::size_t outcome_count_hint,
                               const std::vector<std::string>& expert_filter) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  return parse_matches(in, outcome_count_hint, expert_filter);
}

void write_matches(std::ostream& out, const MatchData& data) {
  out << "date,group,outcome";
  for (const std::string& name : data.expert_names) {
    for (std::size_t k = 1; k <= data.space.size(); ++k) {
      out << ',' << name << "_a" << k;
    }
  }
  out << '\n';
  for (const MatchRecord& rec : data.records) {
    out << rec.date << ',' << rec.group << ',' << rec.outcome;
    for (const OddsVector& a : rec.odds) {
      for (double ai : a.values()) out << ',' << format_double(ai);
    }
    out << '\n';
  }
}

Histogram build_histogram(std::span<const double> values, std::size_t bin_count) {
  if (bin_count < 1) throw std::invalid_argument("build_histogram: need at least 1 bin");
  if (values.empty()) throw std::invalid_argument("build_histogram: empty input");

  Histogram h;
  h.bin_count = bin_count;
  h.lo = *std::min_element(values.begin(), values.end());
  h.hi = *std::max_element(values.begin(), values.end());
  h.counts.assign(bin_count, 0);

  const double width = (h.hi - h.lo) / double(bin_count);
  for (double v : values) {
    std::size_t bin = 0;
    if (width > 0.0) {
      if (v >= h.hi) {
        bin = bin_count - 1;
      } else {
        bin = std::min(bin_count - 1, std::size_t((v - h.lo) / width));
      }
    }
    ++h.counts[bin];
  }
  return h;
}

}  // namespace brieragg
