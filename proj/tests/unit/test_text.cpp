#include <fstream>
#include <random>
#include <sstream>

#include "cpccms/error.hpp"
#include "cpccms/io.hpp"
#include "cpccms/text.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cpccms;

namespace {

io::Json cleaning_fixture() {
  return io::Json::parse(io::read_text(oracle::fixture("cleaning.json")));
}

std::string fuzz_document(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces{
      "RT ", "@user ", "#tag ", "http://x.co/ab ", "https://t.co/Z9 ", "www.example.com ",
      "&amp;", "&lt;", "&gt;", "&quot;", "&#39;", "&#x41;", "&amp;amp;", "&bogus;", "&nbsp;",
      "Hello", "WORLD", "don't", "  ", "\t", "\n", "...", "!!", "123", "café", "é", "#", "@",
      "&", ";", "RT", "rt", "a#b", "x@y", "&#", "&#64;", "&#35;x", "&commat;"};
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<int> len(0, 25);
  std::string out;
  for (int k = len(rng); k > 0; --k) out += pieces[pick(rng)];
  return out;
}

}  // namespace

TEST_CASE("cleaning reproduces both published variants byte for byte") {
  const auto fx = cleaning_fixture();
  const std::string raw = fx["original"];
  CHECK(text::clean(raw, false).text == fx["cleaned_alpha"].get<std::string>());
  CHECK(text::clean(raw, true).text == fx["cleaned_punct"].get<std::string>());
}

TEST_CASE("tokenize splits on spaces and punctuation") {
  const auto fx = cleaning_fixture();
  const auto tokens = fx["tokens"].get<std::vector<std::string>>();
  CHECK(text::tokenize(text::clean(fx["original"].get<std::string>(), false)) == tokens);
  CHECK(text::tokenize(text::clean(fx["original"].get<std::string>(), true)) == tokens);
  CHECK(text::tokenize("a,b;;c  d") == std::vector<std::string>{"a", "b", "c", "d"});
  CHECK(text::tokenize("").empty());
}

TEST_CASE("cleaning strips retweets, mentions, hashtags and links") {
  CHECK(text::clean("RT @someone: Great #News http://t.co/abc today", false).text == "great today");
  CHECK(text::clean("see https://example.com/x?y=1 and www.site.org now", false).text == "see and now");
  CHECK(text::clean("it's 100% GOOD", false).text == "its good");
  CHECK(text::clean("it's 100% GOOD", true).text == "it's 100% good");
  CHECK(text::clean("fish &amp; chips", true).text == "fish & chips");
  CHECK(text::clean("  many    spaces\t\nhere ", false).text == "many spaces here");
  CHECK(text::clean("", false).text.empty());
}

TEST_CASE("html entities decode named and numeric forms") {
  CHECK(text::decode_html_entities("&lt;b&gt; &amp; &quot;q&quot; &#39;s&#x27;") == "<b> & \"q\" 's'");
  CHECK(text::decode_html_entities("&eacute;") == "\xC3\xA9");
  CHECK(text::decode_html_entities("&unknown; &") == "&unknown; &");
  CHECK(text::decode_html_entities("&#xZZ;") == "&#xZZ;");
}

TEST_CASE("clean is idempotent on a fuzz corpus") {
  std::mt19937_64 rng(2024);
  for (int doc = 0; doc < 100; ++doc) {
    const std::string raw = fuzz_document(rng);
    for (bool keep : {false, true}) {
      const auto once = text::clean(raw, keep);
      const auto twice = text::clean(once.text, keep);
      CHECK_MESSAGE(once.text == twice.text, "input: " << raw);
    }
  }
}

TEST_CASE("porter stemming of the published example") {
  const auto fx = cleaning_fixture();
  const auto stems = text::stem_all(fx["tokens"].get<std::vector<std::string>>());
  std::string joined;
  for (const auto& s : stems) joined += (joined.empty() ? "" : " ") + s;
  CHECK(joined == fx["stemmed"].get<std::string>());
  CHECK(text::porter_stem("chaos") == "chao");
  CHECK(text::porter_stem("solution") == "solut");
  CHECK(text::porter_stem("direction") == "direct");
  CHECK(text::porter_stem("is") == "is");
}

TEST_CASE("porter stemmer agrees with the frozen reference list") {
  std::ifstream in(oracle::source_dir() / "tests" / "data" / "porter_reference.tsv");
  REQUIRE(in);
  std::string line;
  int checked = 0;
  while (std::getline(in, line)) {
    const auto tab = line.find('\t');
    const std::string word = line.substr(0, tab);
    const std::string stem = line.substr(tab + 1);
    CHECK_MESSAGE(text::porter_stem(word) == stem, word);
    ++checked;
  }
  CHECK(checked > 2000);
}

TEST_CASE("porter leaves short and non-alphabetic tokens alone") {
  CHECK(text::porter_stem("as") == "as");
  CHECK(text::porter_stem("don't") == "don't");
  CHECK(text::porter_stem("2019s") == "2019s");
  CHECK(text::porter_stem("") == "");
}

TEST_CASE("n-gram expansion") {
  const std::vector<std::string> t{"a", "b", "c"};
  CHECK(text::expand_ngrams(t, 1, 2) == std::vector<std::string>{"a", "b", "c", "a b", "b c"});
  CHECK(text::expand_ngrams(t, 2, 3) == std::vector<std::string>{"a b", "b c", "a b c"});
  CHECK(text::expand_ngrams(t, 4, 4).empty());
  CHECK_THROWS_AS(text::expand_ngrams(t, 0, 1), InputError);
  CHECK_THROWS_AS(text::expand_ngrams(t, 3, 2), InputError);
}

TEST_CASE("to_terms runs the whole pipeline") {
  text::PipelineOptions options;
  const auto terms = text::to_terms("Chaos, no SOLUTION!", options);
  CHECK(terms == std::vector<std::string>{"chao", "no", "solut", "chao no", "no solut"});
  options.stem = false;
  options.ngram_max = 1;
  CHECK(text::to_terms("Chaos, no SOLUTION!", options) ==
        std::vector<std::string>{"chaos", "no", "solution"});
}
