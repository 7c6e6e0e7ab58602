#include "cpccms/text.hpp"

#include <algorithm>
#include <cstdint>

#include "cpccms/error.hpp"
#include "html_entities.hpp"

namespace cpccms::text {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_alpha(char c) { return is_lower(c) || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_word(char c) { return is_alpha(c) || is_digit(c) || c == '_'; }
bool is_ascii_punct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (u >= 33 && u <= 47) || (u >= 58 && u <= 64) || (u >= 91 && u <= 96) ||
         (u >= 123 && u <= 126);
}

bool starts_with_ci(std::string_view text, std::size_t pos, std::string_view prefix) {
  if (text.size() - pos < prefix.size()) return false;
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    char c = text[pos + k];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c != prefix[k]) return false;
  }
  return true;
}

// Step 1: retweet markers, mentions, hashtags and links become a space.
std::string strip_social(std::string_view in) {
  std::string out;
  out.reserve(in.size());
  std::size_t i = 0;
  while (i < in.size()) {
    const char c = in[i];
    const bool at_boundary = i == 0 || is_space(in[i - 1]);
    if (at_boundary && (starts_with_ci(in, i, "http://") || starts_with_ci(in, i, "https://") ||
                        starts_with_ci(in, i, "www."))) {
      while (i < in.size() && !is_space(in[i])) ++i;
      out += ' ';
      continue;
    }
    if (at_boundary && in.compare(i, 2, "RT") == 0 &&
        (i + 2 == in.size() || is_space(in[i + 2]) || in[i + 2] == ':')) {
      i += 2;
      if (i < in.size() && in[i] == ':') ++i;
      out += ' ';
      continue;
    }
    // "&#" opens a numeric character reference, not a hashtag.
    const bool entity_hash = c == '#' && i > 0 && in[i - 1] == '&';
    if (c == '@' || (c == '#' && !entity_hash)) {
      ++i;
      while (i < in.size() && is_word(in[i])) ++i;
      out += ' ';
      continue;
    }
    out += c;
    ++i;
  }
  return out;
}

std::string lowercase(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

std::string letters_only(std::string_view in) {
  std::string out;
  out.reserve(in.size());
  for (char c : in) {
    if (is_lower(c) || is_space(c)) out += c;
  }
  return out;
}

std::string collapse_spaces(std::string_view in) {
  std::string out;
  out.reserve(in.size());
  bool pending = false;
  for (char c : in) {
    if (is_space(c)) {
      pending = !out.empty();
      continue;
    }
    if (pending) out += ' ';
    pending = false;
    out += c;
  }
  return out;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

bool valid_codepoint(std::uint64_t cp) {
  return cp > 0 && cp <= 0x10FFFF && !(cp >= 0xD800 && cp <= 0xDFFF);
}

// Parses the reference starting at text[pos] == '&'. Returns the number of
// bytes consumed, 0 if it is not a reference we decode.
std::size_t decode_one(std::string_view text, std::size_t pos, std::string& out) {
  const std::size_t semi = text.find(';', pos + 1);
  if (semi == std::string_view::npos || semi - pos > 32) return 0;
  const std::string_view body = text.substr(pos + 1, semi - pos - 1);
  if (body.empty()) return 0;
  if (body[0] == '#') {
    std::uint64_t cp = 0;
    const bool hex = body.size() > 1 && (body[1] == 'x' || body[1] == 'X');
    const std::string_view digits = body.substr(hex ? 2 : 1);
    if (digits.empty() || digits.size() > 8) return 0;
    for (char c : digits) {
      int d;
      if (is_digit(c)) {
        d = c - '0';
      } else if (hex && c >= 'a' && c <= 'f') {
        d = c - 'a' + 10;
      } else if (hex && c >= 'A' && c <= 'F') {
        d = c - 'A' + 10;
      } else {
        return 0;
      }
      cp = cp * (hex ? 16 : 10) + static_cast<std::uint64_t>(d);
    }
    if (!valid_codepoint(cp)) return 0;
    append_utf8(out, static_cast<std::uint32_t>(cp));
    return semi - pos + 1;
  }
  const auto& table = detail::kHtmlEntities;
  const auto it = std::lower_bound(table.begin(), table.end(), body,
                                   [](const detail::HtmlEntity& e, std::string_view key) {
                                     return e.name < key;
                                   });
  if (it == table.end() || it->name != body) return 0;
  append_utf8(out, it->codepoint);
  return semi - pos + 1;
}

std::string clean_pass(std::string_view in, bool keep_punctuation) {
  std::string s = lowercase(strip_social(in));
  if (!keep_punctuation) s = letters_only(s);
  return decode_html_entities(collapse_spaces(s));
}

}  // namespace

std::string decode_html_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '&') {
      if (const std::size_t used = decode_one(text, i, out)) {
        i += used;
        continue;
      }
    }
    out += text[i++];
  }
  return out;
}

CleanDocument clean(std::string_view raw, bool keep_punctuation) {
  std::string current(raw);
  // Every pass that changes the text either shortens it or only lowercases
  // it, so this settles quickly; the cap is a backstop.
  for (int pass = 0; pass < 64; ++pass) {
    std::string next = clean_pass(current, keep_punctuation);
    if (next == current) break;
    current = std::move(next);
  }
  return {std::move(current), keep_punctuation};
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : text) {
    if (is_space(c) || is_ascii_punct(c)) {
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

std::vector<std::string> stem_all(const std::vector<std::string>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(porter_stem(t));
  return out;
}

std::vector<std::string> expand_ngrams(const std::vector<std::string>& tokens, std::size_t min_n,
                                       std::size_t max_n) {
  if (min_n < 1 || min_n > max_n) {
    throw InputError("n-gram range must satisfy 1 <= min <= max");
  }
  std::vector<std::string> out;
  for (std::size_t n = min_n; n <= max_n; ++n) {
    if (n > tokens.size()) break;
    for (std::size_t start = 0; start + n <= tokens.size(); ++start) {
      std::string gram = tokens[start];
      for (std::size_t k = 1; k < n; ++k) {
        gram += ' ';
        gram += tokens[start + k];
      }
      out.push_back(std::move(gram));
    }
  }
  return out;
}

std::vector<std::string> to_terms(std::string_view raw, const PipelineOptions& options) {
  auto tokens = tokenize(clean(raw, options.keep_punctuation));
  if (options.stem) tokens = stem_all(tokens);
  return expand_ngrams(tokens, options.ngram_min, options.ngram_max);
}

}  // namespace cpccms::text
