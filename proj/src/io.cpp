#include "cpccms/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cpccms/competition.hpp"
#include "cpccms/error.hpp"

namespace cpccms::io {

namespace fs = std::filesystem;

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw InputError("CSV is missing column '" + std::string(name) + "'");
}

CsvTable parse_csv(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;  // distinguishes "" (one empty field) from a blank line
  std::size_t line = 1;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    if (record.empty() && !field_started && field.empty()) return;  // blank line
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        field_started = true;
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        ++line;
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (in_quotes) throw InputError("unterminated quoted field near line " + std::to_string(line));
  end_record();

  CsvTable table;
  if (records.empty()) throw InputError("CSV has no header");
  table.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.header.size()) {
      throw InputError("CSV record " + std::to_string(r) + " has " +
                       std::to_string(records[r].size()) + " fields, header has " +
                       std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CsvTable read_csv(const fs::path& path) { return parse_csv(read_text(path)); }

void write_text(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += '\n';
  return out;
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double round_to(double value, int decimals) {
  if (decimals < 0) return value;
  return static_cast<double>(tie_key(value, decimals)) / std::pow(10.0, decimals);
}

namespace {

double parse_number(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  while (begin < end && *begin == ' ') ++begin;
  while (end > begin && end[-1] == ' ') --end;
  // from_chars rejects a leading '+'.
  if (begin < end && *begin == '+') ++begin;
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw InputError("cannot parse " + what + " '" + text + "' as a number");
  }
  return v;
}

std::string trim_seconds_suffix(std::string s) {
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (!s.empty() && s.back() == 's') s.pop_back();
  return s;
}

}  // namespace

cpc::PairwiseOppositeMatrix pom_from_json(const Json& doc) {
  if (!doc.is_object()) throw StructuralError("POM document must be a JSON object");
  if (!doc.contains("criteria") || !doc["criteria"].is_array()) {
    throw StructuralError("POM document needs a 'criteria' array");
  }
  if (!doc.contains("entries") || !doc["entries"].is_array()) {
    throw StructuralError("POM document needs an 'entries' array");
  }
  double kappa = cpc::kDefaultKappa;
  if (doc.contains("kappa")) {
    if (!doc["kappa"].is_number()) throw StructuralError("'kappa' must be a number");
    kappa = doc["kappa"].get<double>();
  }
  std::vector<std::string> criteria;
  for (const auto& c : doc["criteria"]) {
    if (!c.is_string()) throw StructuralError("criterion names must be strings");
    criteria.push_back(c.get<std::string>());
  }
  std::vector<std::vector<double>> rows;
  for (const auto& row : doc["entries"]) {
    if (!row.is_array()) throw StructuralError("each entries row must be an array");
    auto& out = rows.emplace_back();
    for (const auto& v : row) {
      if (!v.is_number()) throw StructuralError("matrix entries must be numbers");
      out.push_back(v.get<double>());
    }
  }
  cpc::PairwiseOppositeMatrix pom(std::move(criteria), kappa, std::move(rows));
  cpc::require_valid(pom);
  return pom;
}

cpc::PairwiseOppositeMatrix load_pom(const fs::path& path) {
  Json doc;
  try {
    doc = Json::parse(read_text(path));
  } catch (const Json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return pom_from_json(doc);
}

Json pom_to_json(const cpc::PairwiseOppositeMatrix& pom) {
  Json doc;
  doc["kappa"] = pom.kappa();
  doc["criteria"] = pom.criteria();
  doc["entries"] = pom.rows();
  return doc;
}

LabelPairs parse_predictions(const CsvTable& table) {
  const std::size_t t = table.column("true_label");
  const std::size_t p = table.column("predicted_label");
  LabelPairs out;
  for (const auto& row : table.rows) {
    out.truth.push_back(row[t]);
    out.predicted.push_back(row[p]);
  }
  return out;
}

std::string predictions_csv(const LabelPairs& pairs) {
  std::string out = csv_line({"true_label", "predicted_label"});
  for (std::size_t i = 0; i < pairs.truth.size(); ++i) {
    out += csv_line({pairs.truth[i], pairs.predicted[i]});
  }
  return out;
}

metrics::TimingSet parse_timings(const CsvTable& table) {
  const std::size_t m = table.column("model");
  const std::size_t s = table.column("seconds");
  metrics::TimingSet out;
  for (const auto& row : table.rows) {
    out.push_back({row[m], parse_number(trim_seconds_suffix(row[s]), "running time")});
  }
  metrics::validate_timings(out);
  return out;
}

std::string timings_csv(const metrics::TimingSet& timings) {
  std::string out = csv_line({"model", "seconds"});
  for (const auto& t : timings) out += csv_line({t.model, format_double(t.seconds)});
  return out;
}

Json scores_to_json(const std::string& model, const metrics::CriterionScores& scores,
                    int decimals) {
  Json doc;
  doc["model"] = model;
  const auto values = scores.values();
  const auto& names = metrics::CriterionScores::names();
  for (std::size_t i = 0; i < names.size(); ++i) doc[names[i]] = round_to(values[i], decimals);
  return doc;
}

decision::DecisionMatrix parse_decision_matrix(const CsvTable& table) {
  if (table.header.size() < 2 || table.header[0] != "model") {
    throw InputError("decision matrix CSV header must be model,<criterion>,...");
  }
  std::vector<std::string> criteria(table.header.begin() + 1, table.header.end());
  std::vector<std::string> models;
  std::vector<std::vector<double>> rows;
  for (const auto& row : table.rows) {
    models.push_back(row[0]);
    auto& out = rows.emplace_back();
    for (std::size_t c = 1; c < row.size(); ++c) {
      out.push_back(parse_number(row[c], "score for '" + row[0] + "'"));
    }
  }
  return {std::move(models), std::move(criteria), std::move(rows)};
}

std::string decision_matrix_csv(const decision::DecisionMatrix& matrix) {
  std::vector<std::string> header{"model"};
  header.insert(header.end(), matrix.criteria().begin(), matrix.criteria().end());
  std::string out = csv_line(header);
  for (std::size_t i = 0; i < matrix.num_models(); ++i) {
    std::vector<std::string> fields{matrix.models()[i]};
    for (double v : matrix.scores()[i]) fields.push_back(format_double(v));
    out += csv_line(fields);
  }
  return out;
}

decision::DecisionMatrix decision_matrix_from_json(const Json& doc) {
  try {
    return {doc.at("models").get<std::vector<std::string>>(),
            doc.at("criteria").get<std::vector<std::string>>(),
            doc.at("scores").get<std::vector<std::vector<double>>>()};
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed decision matrix: ") + e.what());
  }
}

Json decision_matrix_to_json(const decision::DecisionMatrix& matrix) {
  Json doc;
  doc["models"] = matrix.models();
  doc["criteria"] = matrix.criteria();
  doc["scores"] = matrix.scores();
  return doc;
}

metrics::TimingSet timings_from_json(const Json& doc) {
  metrics::TimingSet out;
  try {
    for (const auto& item : doc) {
      out.push_back({item.at("model").get<std::string>(), item.at("seconds").get<double>()});
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed timings: ") + e.what());
  }
  if (!doc.is_array()) throw InputError("timings must be an array of {model, seconds}");
  metrics::validate_timings(out);
  return out;
}

Json timings_to_json(const metrics::TimingSet& timings) {
  Json doc = Json::array();
  for (const auto& t : timings) doc.push_back({{"model", t.model}, {"seconds", t.seconds}});
  return doc;
}

Json weights_report(const cpc::WeightReport& report, int decimals) {
  const auto& names = report.weights.criteria;
  Json utilities = Json::object();
  Json weights = Json::object();
  Json ranks = Json::object();
  Json exact_weights = Json::object();
  Json exact_utilities = Json::object();
  for (std::size_t i = 0; i < names.size(); ++i) {
    utilities[names[i]] = round_to(report.utilities.values[i], decimals);
    weights[names[i]] = round_to(report.weights.weights[i], decimals);
    ranks[names[i]] = report.ranks[i];
    exact_utilities[names[i]] = report.utilities.values[i];
    exact_weights[names[i]] = report.weights.weights[i];
  }
  Json doc;
  doc["criteria"] = names;
  doc["utilities"] = utilities;
  doc["weights"] = weights;
  doc["ranks"] = ranks;
  doc["accordance_index"] = round_to(report.accordance.ai, decimals < 0 ? decimals : decimals + 1);
  doc["verdict"] = std::string(cpc::to_string(report.accordance.verdict));
  doc["warnings"] = report.warnings;
  doc["exact"] = {{"utilities", exact_utilities},
                  {"weights", exact_weights},
                  {"accordance_index", report.accordance.ai}};
  return doc;
}

Json ranking_report(const decision::Evaluation& eval, int decimals) {
  const auto& w = eval.weights;
  Json weights = Json::object();
  Json exact_weights = Json::object();
  for (std::size_t i = 0; i < w.weights.criteria.size(); ++i) {
    weights[w.weights.criteria[i]] = round_to(w.weights.weights[i], decimals);
    exact_weights[w.weights.criteria[i]] = w.weights.weights[i];
  }
  Json results = Json::array();
  Json exact_scores = Json::object();
  for (const auto& e : eval.ranking.entries) {
    results.push_back({{"model", e.model}, {"score", round_to(e.score, decimals)}, {"rank", e.rank}});
  }
  for (const auto& s : eval.scores) exact_scores[s.model] = s.score;
  Json doc;
  doc["weights"] = weights;
  doc["accordance_index"] = round_to(w.accordance.ai, decimals < 0 ? decimals : decimals + 1);
  doc["verdict"] = std::string(cpc::to_string(w.accordance.verdict));
  doc["results"] = results;
  doc["best"] = eval.ranking.best;
  doc["exact"] = {{"weights", exact_weights},
                  {"scores", exact_scores},
                  {"accordance_index", w.accordance.ai}};
  return doc;
}

std::vector<RawDocument> parse_corpus(const CsvTable& table) {
  const std::size_t t = table.column("text");
  const std::size_t l = table.column("label");
  std::vector<RawDocument> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) out.push_back({row[t], row[l]});
  return out;
}

}  // namespace cpccms::io
