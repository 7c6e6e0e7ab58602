#pragma once

// Desk-scale text classification run that produces an evaluation record:
// clean, tokenize, stem, n-grams, TF-IDF fit on the training split, Bernoulli
// naive Bayes, predictions on validation and test.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cpccms/io.hpp"
#include "cpccms/metrics.hpp"
#include "cpccms/naive_bayes.hpp"
#include "cpccms/split.hpp"
#include "cpccms/text.hpp"

namespace cpccms::pipeline {

inline constexpr const char* kDemoModelName = "Bernoulli Naive Bayes";

struct DemoOptions {
  double alpha = 0.1;
  std::uint64_t seed = 101;
  split::Fractions fractions;
  text::PipelineOptions text;
  nb::PriorMode prior_mode = nb::PriorMode::kEmpirical;
};

struct DemoResult {
  std::string model = kDemoModelName;
  /// Every label in the corpus, sorted.
  std::vector<std::string> classes;
  std::size_t train_size = 0;
  std::size_t vocabulary_size = 0;
  io::LabelPairs validation;
  io::LabelPairs test;
  metrics::CriterionScores validation_scores;
  metrics::CriterionScores test_scores;
  /// Wall-clock seconds for train + validate + test.
  double seconds = 0.0;
};

/// Throws InputError for fewer than 10 documents, fewer than 2 classes, or
/// splits that leave training or test empty.
DemoResult run_demo(const std::vector<io::RawDocument>& corpus, const DemoOptions& options);

/// Writes predictions.csv (test split), validation_predictions.csv,
/// scores.json, record.csv (decision matrix row of the test scores) and
/// timing.csv under `dir`. Everything except timing.csv is a pure function of
/// the corpus and options.
void write_demo_outputs(const DemoResult& result, const DemoOptions& options,
                        const std::filesystem::path& dir);

}  // namespace cpccms::pipeline
