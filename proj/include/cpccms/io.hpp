#pragma once

// File formats: POM JSON, predictions / timings / scores / corpus CSV.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cpccms/cpc.hpp"
#include "cpccms/decision.hpp"
#include "cpccms/metrics.hpp"
#include "json.hpp"

namespace cpccms::io {

using Json = nlohmann::ordered_json;

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws InputError when absent.
  std::size_t column(std::string_view name) const;
};

/// RFC 4180 style: comma separated, double-quoted fields with "" escapes,
/// LF or CRLF line ends. A leading UTF-8 BOM is skipped, blank lines are
/// ignored. Throws InputError on ragged rows or an unterminated quote.
CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);

std::string csv_field(std::string_view value);
std::string csv_line(const std::vector<std::string>& fields);

std::string read_text(const std::filesystem::path& path);
/// Writes through a temporary file and rename.
void write_text(const std::filesystem::path& path, std::string_view text);

/// Shortest text that parses back to the same double.
std::string format_double(double value);

/// `value` rounded half away from zero to `decimals` places.
double round_to(double value, int decimals);

// --- POM ------------------------------------------------------------------

/// {"kappa": 8, "criteria": [...], "entries": [[...], ...]}; kappa defaults
/// to 8. Structural problems throw StructuralError; invariant violations
/// throw InputError whose details list every offending cell.
cpc::PairwiseOppositeMatrix pom_from_json(const Json& doc);
cpc::PairwiseOppositeMatrix load_pom(const std::filesystem::path& path);
Json pom_to_json(const cpc::PairwiseOppositeMatrix& pom);

// --- metrics ----------------------------------------------------------------

struct LabelPairs {
  std::vector<std::string> truth;
  std::vector<std::string> predicted;
};

/// Header true_label,predicted_label.
LabelPairs parse_predictions(const CsvTable& table);
std::string predictions_csv(const LabelPairs& pairs);

/// Header model,seconds.
metrics::TimingSet parse_timings(const CsvTable& table);
std::string timings_csv(const metrics::TimingSet& timings);

Json scores_to_json(const std::string& model, const metrics::CriterionScores& scores,
                    int decimals);

// --- decision ---------------------------------------------------------------

/// Header model,<criterion>,...
decision::DecisionMatrix parse_decision_matrix(const CsvTable& table);
std::string decision_matrix_csv(const decision::DecisionMatrix& matrix);

/// {"models": [...], "criteria": [...], "scores": [[...], ...]}
decision::DecisionMatrix decision_matrix_from_json(const Json& doc);
Json decision_matrix_to_json(const decision::DecisionMatrix& matrix);

/// [{"model": ..., "seconds": ...}, ...]
metrics::TimingSet timings_from_json(const Json& doc);
Json timings_to_json(const metrics::TimingSet& timings);

// --- reports ----------------------------------------------------------------

/// Utilities, weights, ranks by weight, accordance index and verdict. The
/// top-level numbers are rounded to `decimals` (AI to one more place); the
/// "exact" block keeps full precision.
Json weights_report(const cpc::WeightReport& report, int decimals);

/// {"weights", "accordance_index", "verdict", "results", "best", "exact"}.
Json ranking_report(const decision::Evaluation& eval, int decimals);

// --- corpus -----------------------------------------------------------------

struct RawDocument {
  std::string text;
  std::string label;
};

/// Header text,label.
std::vector<RawDocument> parse_corpus(const CsvTable& table);

}  // namespace cpccms::io
