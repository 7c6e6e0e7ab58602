// cpccms: batch front end for weighting, ranking, metrics, the demo pipeline
// and the HTTP service.

#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cpccms/cpc.hpp"
#include "cpccms/decision.hpp"
#include "cpccms/error.hpp"
#include "cpccms/io.hpp"
#include "cpccms/metrics.hpp"
#include "cpccms/pipeline.hpp"
#include "cpccms/service.hpp"

namespace {

using namespace cpccms;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNeedsRevision = 2;

void emit(const io::Json& doc, const std::string& out) {
  const std::string text = doc.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    io::write_text(out, text);
  }
}

int verdict_exit(cpc::Verdict v) {
  return v == cpc::Verdict::kNeedsRevision ? kExitNeedsRevision : kExitOk;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<double> parse_doubles(const std::string& text, std::size_t count, const char* what) {
  const auto parts = split_list(text);
  if (parts.size() != count) {
    throw InputError(std::string(what) + " needs " + std::to_string(count) + " comma-separated values");
  }
  std::vector<double> out;
  for (const auto& p : parts) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(p, &used));
      if (used != p.size()) throw std::invalid_argument(p);
    } catch (const std::exception&) {
      throw InputError(std::string(what) + ": cannot parse '" + p + "'");
    }
  }
  return out;
}

struct Args {
  std::string pom, scores, timings, pred, classes, data, out, out_dir = "demo_out";
  std::string split = "0.8,0.1,0.1", ngrams = "1,2", model = "model";
  std::string host = "127.0.0.1", state_dir, static_dir;
  bool with_efficiency = false, keep_punctuation = false, no_stem = false, balanced = false;
  int precision = decision::kReportDecimals;
  int port = 8080;
  double alpha = 0.1;
  std::uint64_t seed = 101;
};

int cmd_weights(const Args& a) {
  const auto pom = io::load_pom(a.pom);
  const auto report = cpc::derive_weights(pom);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  emit(io::weights_report(report, a.precision), a.out);
  return verdict_exit(report.accordance.verdict);
}

int cmd_rank(const Args& a) {
  const auto pom = io::load_pom(a.pom);
  const auto scores = io::parse_decision_matrix(io::read_csv(a.scores));
  std::optional<metrics::TimingSet> timings;
  if (!a.timings.empty()) timings = io::parse_timings(io::read_csv(a.timings));
  const auto eval = decision::evaluate(pom, scores, timings, a.with_efficiency);
  for (const auto& w : eval.weights.warnings) std::cerr << "warning: " << w << "\n";
  io::Json doc = io::ranking_report(eval, a.precision);
  doc["include_efficiency"] = a.with_efficiency;
  emit(doc, a.out);
  return verdict_exit(eval.weights.accordance.verdict);
}

int cmd_metrics(const Args& a) {
  const auto pairs = io::parse_predictions(io::read_csv(a.pred));
  std::vector<std::string> classes;
  if (a.classes.empty()) {
    // Without an explicit list every label seen in either column is a class.
    std::set<std::string> seen(pairs.truth.begin(), pairs.truth.end());
    seen.insert(pairs.predicted.begin(), pairs.predicted.end());
    classes.assign(seen.begin(), seen.end());
  } else {
    classes = split_list(a.classes);
  }
  const auto cm = metrics::confusion_from_labels(pairs.truth, pairs.predicted, classes);
  const auto scores = metrics::criterion_scores(cm);
  io::Json doc = io::scores_to_json(a.model, scores, a.precision);
  io::Json exact = io::Json::object();
  const auto values = scores.values();
  for (std::size_t i = 0; i < values.size(); ++i) exact[metrics::CriterionScores::names()[i]] = values[i];
  doc["support"] = cm.total();
  doc["exact"] = exact;
  emit(doc, a.out);
  return kExitOk;
}

int cmd_demo(const Args& a) {
  pipeline::DemoOptions options;
  options.alpha = a.alpha;
  options.seed = a.seed;
  const auto f = parse_doubles(a.split, 3, "--split");
  options.fractions = {f[0], f[1], f[2]};
  const auto n = parse_doubles(a.ngrams, 2, "--ngrams");
  if (n[0] < 1 || n[1] < n[0] || n[0] != static_cast<std::size_t>(n[0]) ||
      n[1] != static_cast<std::size_t>(n[1])) {
    throw InputError("--ngrams must be two integers 1 <= min <= max");
  }
  options.text.ngram_min = static_cast<std::size_t>(n[0]);
  options.text.ngram_max = static_cast<std::size_t>(n[1]);
  options.text.keep_punctuation = a.keep_punctuation;
  options.text.stem = !a.no_stem;
  options.prior_mode = a.balanced ? nb::PriorMode::kBalanced : nb::PriorMode::kEmpirical;

  const auto corpus = io::parse_corpus(io::read_csv(a.data));
  const auto result = pipeline::run_demo(corpus, options);
  pipeline::write_demo_outputs(result, options, a.out_dir);
  std::cout << io::read_text(std::filesystem::path(a.out_dir) / "scores.json");
  return kExitOk;
}

int cmd_serve(const Args& a) {
  std::optional<std::filesystem::path> state;
  if (!a.state_dir.empty()) state = a.state_dir;
  std::optional<std::filesystem::path> statics;
  if (!a.static_dir.empty()) statics = a.static_dir;
  service::SessionStore store(state);
  std::cerr << "listening on " << a.host << ":" << a.port << "\n";
  service::serve(store, a.host, a.port, statics);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CPC weighting and multi-criteria model ranking"};
  app.require_subcommand(1);
  Args a;

  auto* weights = app.add_subcommand("weights", "Criterion weights and accordance index from a POM");
  weights->add_option("--pom", a.pom, "POM JSON file")->required()->check(CLI::ExistingFile);
  weights->add_option("--out", a.out, "Output JSON (default stdout)");
  weights->add_option("--precision", a.precision, "Decimals in the report")->check(CLI::Range(0, 17));

  auto* rank = app.add_subcommand("rank", "Rank models with CPC weights");
  rank->add_option("--pom", a.pom, "POM JSON file")->required()->check(CLI::ExistingFile);
  rank->add_option("--scores", a.scores, "Decision matrix CSV (model,<criteria>)")
      ->required()
      ->check(CLI::ExistingFile);
  rank->add_option("--timings", a.timings, "Timing CSV (model,seconds)")->check(CLI::ExistingFile);
  rank->add_flag("--with-efficiency", a.with_efficiency, "Include the efficiency criterion");
  rank->add_option("--out", a.out, "Output JSON (default stdout)");
  rank->add_option("--precision", a.precision, "Decimals in the report")->check(CLI::Range(0, 17));

  auto* metrics = app.add_subcommand("metrics", "Evaluation criteria from predictions");
  metrics->add_option("--pred", a.pred, "Predictions CSV (true_label,predicted_label)")
      ->required()
      ->check(CLI::ExistingFile);
  metrics->add_option("--classes", a.classes, "Comma-separated class labels (default: sorted labels seen)");
  metrics->add_option("--model", a.model, "Model name in the report");
  metrics->add_option("--out", a.out, "Output JSON (default stdout)");
  metrics->add_option("--precision", a.precision, "Decimals in the report")->check(CLI::Range(0, 17));

  auto* demo = app.add_subcommand("demo", "Train and evaluate Bernoulli naive Bayes on a corpus");
  demo->add_option("--data", a.data, "Corpus CSV (text,label)")->required()->check(CLI::ExistingFile);
  demo->add_option("--alpha", a.alpha, "Smoothing")->check(CLI::PositiveNumber);
  demo->add_option("--seed", a.seed, "Shuffle seed");
  demo->add_option("--split", a.split, "train,validation,test fractions");
  demo->add_option("--ngrams", a.ngrams, "min,max n-gram length");
  demo->add_flag("--keep-punctuation", a.keep_punctuation, "Keep non-alphabetic characters");
  demo->add_flag("--no-stem", a.no_stem, "Skip Porter stemming");
  demo->add_flag("--balanced-prior", a.balanced, "Uniform class prior");
  demo->add_option("--out-dir", a.out_dir, "Output directory");

  auto* serve = app.add_subcommand("serve", "Run the elicitation HTTP service");
  serve->add_option("--port", a.port, "Port")->check(CLI::Range(0, 65535));
  serve->add_option("--host", a.host, "Bind address");
  serve->add_option("--state-dir", a.state_dir, "Session snapshot directory");
  serve->add_option("--static-dir", a.static_dir, "UI assets directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*weights) return cmd_weights(a);
    if (*rank) return cmd_rank(a);
    if (*metrics) return cmd_metrics(a);
    if (*demo) return cmd_demo(a);
    if (*serve) return cmd_serve(a);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& d : e.details()) std::cerr << "  " << d << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
