#pragma once

// Document cleaning and tokenization for the bag-of-words pipeline.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cpccms::text {

struct CleanDocument {
  std::string text;
  bool kept_punctuation = false;

  friend bool operator==(const CleanDocument&, const CleanDocument&) = default;
};

/// Cleaning steps, in order:
///   1. drop "RT" retweet markers, @mentions, #tags and links
///   2. lowercase (ASCII)
///   3. unless `keep_punctuation`, delete everything but a-z and whitespace
///   4. collapse whitespace runs to one space, trim
///   5. decode HTML character references
/// The steps repeat until the text stops changing, so clean() is idempotent
/// even when decoding produces characters an earlier step would remove.
CleanDocument clean(std::string_view raw, bool keep_punctuation);

/// Replaces named (HTML 4 set) and numeric character references with UTF-8.
/// Unknown or malformed references are copied verbatim.
std::string decode_html_entities(std::string_view text);

/// Splits on ASCII whitespace and ASCII punctuation; separators are dropped.
std::vector<std::string> tokenize(std::string_view text);

inline std::vector<std::string> tokenize(const CleanDocument& doc) { return tokenize(doc.text); }

/// Classic Porter stemmer. Tokens that are not purely a-z, or shorter than
/// three letters, come back unchanged.
std::string porter_stem(std::string_view token);

std::vector<std::string> stem_all(const std::vector<std::string>& tokens);

/// All contiguous n-grams for n in [min_n, max_n], joined with single spaces.
/// Unigrams first, then bigrams, each in document order. Throws InputError
/// unless 1 <= min_n <= max_n.
std::vector<std::string> expand_ngrams(const std::vector<std::string>& tokens, std::size_t min_n,
                                       std::size_t max_n);

struct PipelineOptions {
  bool keep_punctuation = false;
  bool stem = true;
  std::size_t ngram_min = 1;
  std::size_t ngram_max = 2;
};

/// clean -> tokenize -> stem -> n-grams.
std::vector<std::string> to_terms(std::string_view raw, const PipelineOptions& options);

}  // namespace cpccms::text
