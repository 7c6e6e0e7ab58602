#include "cpccms/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "cpccms/error.hpp"
#include "cpccms/tfidf.hpp"

namespace cpccms::pipeline {

namespace {

struct Prepared {
  std::vector<std::string> terms;
  std::string label;
};

io::LabelPairs predict_all(const nb::NbModel& model, const std::vector<Prepared>& docs,
                           const tfidf::CorpusStats& stats) {
  io::LabelPairs out;
  for (const auto& d : docs) {
    out.truth.push_back(d.label);
    out.predicted.push_back(model.predict(tfidf::tfidf_vector(d.terms, stats)).label);
  }
  return out;
}

metrics::CriterionScores score(const io::LabelPairs& pairs, const std::vector<std::string>& classes) {
  return metrics::criterion_scores(
      metrics::confusion_from_labels(pairs.truth, pairs.predicted, classes));
}

}  // namespace

DemoResult run_demo(const std::vector<io::RawDocument>& corpus, const DemoOptions& options) {
  if (corpus.size() < 10) {
    throw InputError("demo corpus needs at least 10 documents, got " + std::to_string(corpus.size()));
  }
  std::set<std::string> labels;
  for (const auto& d : corpus) labels.insert(d.label);
  if (labels.size() < 2) throw InputError("demo corpus needs at least 2 classes");

  const auto parts = split::split_corpus(corpus, options.fractions, options.seed);
  if (parts.train.empty() || parts.test.empty()) {
    throw InputError("split leaves the training or test set empty");
  }

  auto prepare = [&](const std::vector<io::RawDocument>& docs) {
    std::vector<Prepared> out;
    out.reserve(docs.size());
    for (const auto& d : docs) out.push_back({text::to_terms(d.text, options.text), d.label});
    return out;
  };
  const auto train = prepare(parts.train);
  const auto validation = prepare(parts.validation);
  const auto test = prepare(parts.test);

  DemoResult result;
  result.classes.assign(labels.begin(), labels.end());
  result.train_size = train.size();

  const auto start = std::chrono::steady_clock::now();

  std::vector<std::vector<std::string>> train_terms;
  for (const auto& d : train) train_terms.push_back(d.terms);
  const auto stats = tfidf::fit_corpus_stats(train_terms);

  std::set<std::string> train_labels;
  std::vector<nb::LabeledFeatures> features;
  for (const auto& d : train) {
    train_labels.insert(d.label);
    features.push_back({nb::binarize(tfidf::tfidf_vector(d.terms, stats)), d.label});
  }
  nb::TrainOptions train_options;
  train_options.alpha = options.alpha;
  train_options.prior_mode = options.prior_mode;
  train_options.classes = std::vector<std::string>(train_labels.begin(), train_labels.end());
  const auto model = nb::nb_train(stats.vocabulary(), features, train_options);

  result.validation = predict_all(model, validation, stats);
  result.test = predict_all(model, test, stats);

  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.vocabulary_size = stats.vocabulary().size();

  if (!result.validation.truth.empty()) {
    result.validation_scores = score(result.validation, result.classes);
  }
  result.test_scores = score(result.test, result.classes);
  return result;
}

void write_demo_outputs(const DemoResult& result, const DemoOptions& options,
                        const std::filesystem::path& dir) {
  io::write_text(dir / "predictions.csv", io::predictions_csv(result.test));
  io::write_text(dir / "validation_predictions.csv", io::predictions_csv(result.validation));

  io::Json doc;
  doc["model"] = result.model;
  doc["seed"] = options.seed;
  doc["alpha"] = options.alpha;
  doc["split"] = {options.fractions.train, options.fractions.validation, options.fractions.test};
  doc["ngrams"] = {options.text.ngram_min, options.text.ngram_max};
  doc["classes"] = result.classes;
  doc["sizes"] = {{"train", result.train_size},
                  {"validation", result.validation.truth.size()},
                  {"test", result.test.truth.size()}};
  doc["vocabulary_size"] = result.vocabulary_size;
  auto block = [](const metrics::CriterionScores& s) {
    io::Json b = io::Json::object();
    const auto values = s.values();
    const auto& names = metrics::CriterionScores::names();
    for (std::size_t i = 0; i < names.size(); ++i) b[names[i]] = values[i];
    return b;
  };
  if (!result.validation.truth.empty()) doc["validation"] = block(result.validation_scores);
  doc["test"] = block(result.test_scores);
  io::write_text(dir / "scores.json", doc.dump(2) + "\n");

  decision::DecisionMatrix record({result.model}, metrics::CriterionScores::names(),
                                  {result.test_scores.values()});
  io::write_text(dir / "record.csv", io::decision_matrix_csv(record));
  io::write_text(dir / "timing.csv", io::timings_csv({{result.model, result.seconds}}));
}

}  // namespace cpccms::pipeline
