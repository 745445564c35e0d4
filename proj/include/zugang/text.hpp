#ifndef ZUGANG_TEXT_HPP
#define ZUGANG_TEXT_HPP

// Raw advertisement -> TokenizedDocument: <p> extraction, sentence
// splitting and tokenization for German prose. Offsets are UTF-8 byte
// offsets into the extracted text.

#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "zugang/error.hpp"
#include "zugang/unicode.hpp"

namespace zugang {

inline constexpr std::array<std::string_view, 8> kDefaultAbbreviations = {
    "mind.", "bzw.", "z.B.", "ggf.", "evtl.", "inkl.", "ca.", "u.a."};

// Everything that influences token boundaries. Documents and lexicon
// matchers record the fingerprint of the config they were built with.
class TokenizerConfig {
 public:
  TokenizerConfig() : TokenizerConfig(kDefaultAbbreviations) {}

  template <typename Range>
  explicit TokenizerConfig(const Range& abbreviations) {
    for (const auto& a : abbreviations) add_abbreviation(a);
  }

  TokenizerConfig(std::initializer_list<std::string_view> abbreviations) {
    for (auto a : abbreviations) add_abbreviation(a);
  }

  void add_abbreviation(std::string_view a) {
    auto t = trim(a);
    if (!t.empty()) abbreviations_.insert(fold_case(t));
  }

  // `folded_word` must already be case-folded.
  bool is_abbreviation(std::string_view folded_word) const {
    return abbreviations_.contains(std::string(folded_word));
  }

  const std::set<std::string>& abbreviations() const { return abbreviations_; }

  std::string fingerprint() const {
    std::uint64_t h = fnv1a("zugang-tokenizer-v1\n");
    for (const auto& a : abbreviations_) {
      h = fnv1a(a, h);
      h = fnv1a("\n", h);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

 private:
  std::set<std::string> abbreviations_;
};

// One abbreviation per line; '#' starts a comment line.
inline TokenizerConfig parse_abbreviations(std::istream& in) {
  TokenizerConfig cfg(std::initializer_list<std::string_view>{});
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    cfg.add_abbreviation(t);
  }
  return cfg;
}

inline TokenizerConfig load_abbreviations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path);
  return parse_abbreviations(in);
}

struct SentenceRange {
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const SentenceRange&, const SentenceRange&) = default;
};

struct Token {
  std::string surface;
  std::string lower;
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t sentence_index = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

struct TokenizedDocument {
  std::string doc_id;
  std::string raw;
  std::string text;
  std::vector<SentenceRange> sentences;
  std::vector<Token> tokens;
  std::string tokenizer_fingerprint;
};

namespace detail {

inline char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

inline bool iequals_ascii(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (ascii_lower(a[i]) != ascii_lower(b[i])) return false;
  }
  return true;
}

inline void decode_entity(std::string_view name, std::string& out, bool& ok) {
  struct Named {
    std::string_view name;
    std::string_view value;
  };
  static constexpr Named kNamed[] = {
      {"amp", "&"},         {"lt", "<"},          {"gt", ">"},          {"quot", "\""},
      {"apos", "'"},        {"nbsp", " "},        {"auml", "\xC3\xA4"}, {"ouml", "\xC3\xB6"},
      {"uuml", "\xC3\xBC"}, {"Auml", "\xC3\x84"}, {"Ouml", "\xC3\x96"}, {"Uuml", "\xC3\x9C"},
      {"szlig", "\xC3\x9F"}, {"sect", "\xC2\xA7"}, {"euro", "\xE2\x82\xAC"},
      {"ndash", "\xE2\x80\x93"}, {"mdash", "\xE2\x80\x94"}, {"bdquo", "\xE2\x80\x9E"},
      {"ldquo", "\xE2\x80\x9C"}, {"rdquo", "\xE2\x80\x9D"}, {"lsquo", "\xE2\x80\x98"},
      {"rsquo", "\xE2\x80\x99"}, {"hellip", "\xE2\x80\xA6"}, {"shy", ""}};
  ok = false;
  if (name.size() > 1 && name[0] == '#') {
    std::uint32_t cp = 0;
    bool hex = name[1] == 'x' || name[1] == 'X';
    auto digits = name.substr(hex ? 2 : 1);
    if (digits.empty() || digits.size() > 7) return;
    for (char c : digits) {
      unsigned v;
      if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
      else if (hex && c >= 'a' && c <= 'f') v = static_cast<unsigned>(c - 'a' + 10);
      else if (hex && c >= 'A' && c <= 'F') v = static_cast<unsigned>(c - 'A' + 10);
      else return;
      cp = cp * (hex ? 16 : 10) + v;
    }
    if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return;
    if (cp == 0xA0) cp = ' ';
    append_utf8(out, static_cast<UChar32>(cp));
    ok = true;
    return;
  }
  for (const auto& n : kNamed) {
    if (n.name == name) {
      out.append(n.value);
      ok = true;
      return;
    }
  }
}

inline std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '&') {
      auto semi = s.find(';', i + 1);
      if (semi != std::string_view::npos && semi - i <= 10) {
        bool ok = false;
        decode_entity(s.substr(i + 1, semi - i - 1), out, ok);
        if (ok) {
          i = semi;
          continue;
        }
      }
    }
    out.push_back(s[i]);
  }
  return out;
}

struct HtmlTag {
  std::string name;  // lower case
  bool closing = false;
};

inline bool is_block_tag(std::string_view name) {
  static constexpr std::string_view kBlock[] = {
      "p", "br", "div", "li", "ul", "ol", "tr", "table", "h1", "h2", "h3", "h4", "h5", "h6",
      "section", "article", "header", "footer", "dd", "dt", "dl", "blockquote", "hr"};
  for (auto b : kBlock) {
    if (b == name) return true;
  }
  return false;
}

// Forgiving scanner: calls on_text(view) for character data and
// on_tag(tag) for every tag. Comments, <script> and <style> bodies are
// skipped. A '<' that does not start a tag is treated as text.
template <typename OnText, typename OnTag>
void scan_html(std::string_view html, OnText on_text, OnTag on_tag) {
  std::size_t i = 0;
  std::size_t text_start = 0;
  auto flush = [&](std::size_t end) {
    if (end > text_start) on_text(html.substr(text_start, end - text_start));
  };
  while (i < html.size()) {
    if (html[i] != '<') {
      ++i;
      continue;
    }
    if (html.substr(i).starts_with("<!--")) {
      flush(i);
      auto close = html.find("-->", i + 4);
      i = close == std::string_view::npos ? html.size() : close + 3;
      text_start = i;
      continue;
    }
    std::size_t j = i + 1;
    bool closing = false;
    if (j < html.size() && html[j] == '/') {
      closing = true;
      ++j;
    }
    std::size_t name_start = j;
    while (j < html.size() && (std::isalnum(static_cast<unsigned char>(html[j])))) ++j;
    bool looks_like_tag = j > name_start || (j < html.size() && html[j] == '!' && !closing);
    auto gt = html.find('>', j);
    if (!looks_like_tag || gt == std::string_view::npos) {
      ++i;
      continue;
    }
    flush(i);
    HtmlTag tag;
    for (auto c : html.substr(name_start, j - name_start)) tag.name.push_back(ascii_lower(c));
    tag.closing = closing;
    i = gt + 1;
    text_start = i;
    if (!closing && (tag.name == "script" || tag.name == "style")) {
      std::string end_tag = "</" + tag.name;
      std::size_t k = i;
      for (; k + end_tag.size() <= html.size(); ++k) {
        if (iequals_ascii(html.substr(k, end_tag.size()), end_tag)) break;
      }
      if (k + end_tag.size() > html.size()) {
        i = html.size();
      } else {
        auto gt2 = html.find('>', k);
        i = gt2 == std::string_view::npos ? html.size() : gt2 + 1;
      }
      text_start = i;
      continue;
    }
    on_tag(tag);
  }
  flush(html.size());
}

inline std::string join_clean_lines(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    auto line = normalize_space(decode_entities(p));
    if (line.empty()) continue;
    if (!out.empty()) out.push_back('\n');
    out += line;
  }
  return out;
}

}  // namespace detail

// Text content of all <p> elements, one paragraph per line, tags stripped
// and entities decoded. Without any <p>, the whole input is tag-stripped
// instead (block tags become line breaks). Input without '<' is plain text
// and comes back unchanged.
inline std::string extract_access_text(std::string_view html) {
  if (html.find('<') == std::string_view::npos) return std::string(html);

  bool has_p = false;
  detail::scan_html(html, [](std::string_view) {},
                    [&](const detail::HtmlTag& t) { has_p |= (t.name == "p" && !t.closing); });

  std::vector<std::string> parts;
  if (has_p) {
    bool in_p = false;
    detail::scan_html(
        html,
        [&](std::string_view text) {
          if (in_p) parts.back().append(text);
        },
        [&](const detail::HtmlTag& t) {
          if (t.name == "p") {
            in_p = !t.closing;
            if (in_p) parts.emplace_back();
          } else if (in_p && detail::is_block_tag(t.name)) {
            parts.back().push_back(' ');
          }
        });
  } else {
    parts.emplace_back();
    detail::scan_html(
        html, [&](std::string_view text) { parts.back().append(text); },
        [&](const detail::HtmlTag& t) {
          if (detail::is_block_tag(t.name)) parts.emplace_back();
          else if (t.name == "td" || t.name == "th") parts.back().push_back(' ');
        });
    // Text nodes may carry their own line breaks.
    std::vector<std::string> lines;
    for (const auto& p : parts) {
      std::size_t start = 0;
      while (start <= p.size()) {
        auto nl = p.find('\n', start);
        lines.push_back(p.substr(start, nl == std::string::npos ? std::string::npos : nl - start));
        if (nl == std::string::npos) break;
        start = nl + 1;
      }
    }
    parts = std::move(lines);
  }
  return detail::join_clean_lines(parts);
}

namespace detail {

inline bool is_terminal(char c) { return c == '.' || c == '!' || c == '?' || c == ';'; }

inline bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

inline constexpr std::string_view kSectionSign = "\xC2\xA7";

// Does the period at `dot` end a sentence?
inline bool period_ends_sentence(std::string_view text, std::size_t dot,
                                 const TokenizerConfig& cfg) {
  if (dot + 1 < text.size() && !is_space(text[dot + 1])) return false;
  std::size_t ws = dot;
  while (ws > 0 && !is_space(text[ws - 1])) --ws;
  auto word = text.substr(ws, dot + 1 - ws);
  while (!word.empty() && (word.front() == '(' || word.front() == '"' || word.front() == '\'')) {
    word.remove_prefix(1);
  }
  if (cfg.is_abbreviation(fold_case(word))) return false;
  if (is_digits(word.substr(0, word.size() - 1))) return false;
  if (word.starts_with(kSectionSign)) return false;
  // "§ 66." : previous word is a bare section sign
  std::size_t p = ws;
  while (p > 0 && is_space(text[p - 1])) --p;
  std::size_t q = p;
  while (q > 0 && !is_space(text[q - 1])) --q;
  if (text.substr(q, p - q) == kSectionSign) return false;
  return true;
}

}  // namespace detail

// Sentence boundaries at . ! ? ; and newlines. A period does not split after
// a configured abbreviation, an ordinal number ("3.") or a section-sign
// reference. Ranges are trimmed and empty ones dropped.
inline std::vector<SentenceRange> split_sentences(std::string_view text,
                                                  const TokenizerConfig& cfg = {}) {
  std::vector<SentenceRange> out;
  std::size_t seg_start = 0;
  auto close = [&](std::size_t a, std::size_t b) {
    while (a < b && is_space(text[a])) ++a;
    while (b > a && is_space(text[b - 1])) --b;
    if (b > a) out.push_back({a, b});
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\n') {
      close(seg_start, i);
      seg_start = i + 1;
      continue;
    }
    bool boundary = false;
    if (c == '!' || c == '?' || c == ';') boundary = true;
    else if (c == '.') boundary = detail::period_ends_sentence(text, i, cfg);
    if (!boundary) continue;
    std::size_t end = i + 1;
    while (end < text.size() && detail::is_terminal(text[end])) ++end;
    close(seg_start, end);
    seg_start = end;
    i = end - 1;
  }
  close(seg_start, text.size());
  return out;
}

namespace detail {

inline bool is_punct(char c) {
  switch (c) {
    case ',': case '.': case ';': case ':': case '!': case '?':
    case '(': case ')': case '"': case '/':
      return true;
    default:
      return false;
  }
}

// A slash that belongs to the word: gendered suffixes ("Fachberater/innen",
// "Kaufmann/-frau") and hyphenated compounds ("Bau-/Heimwerkerbedarf").
inline bool slash_is_attached(std::string_view text, std::size_t pos) {
  UChar32 left = code_point_before(text, pos);
  UChar32 right = code_point_at(text, pos + 1);
  if (is_letter(left) && (is_lower_letter(right) || right == '-')) return true;
  return left == '-' && is_letter(right);
}

inline void tokenize_chunk(std::string_view text, std::size_t b, std::size_t e,
                           std::size_t sentence, const TokenizerConfig& cfg,
                           std::vector<Token>& out) {
  auto emit = [&](std::size_t s, std::size_t t) {
    std::string surface(text.substr(s, t - s));
    out.push_back({surface, fold_case(surface), s, t, sentence});
  };
  while (b < e && is_punct(text[b])) {
    emit(b, b + 1);
    ++b;
  }
  std::vector<std::size_t> trailing;
  while (e > b && !cfg.is_abbreviation(fold_case(text.substr(b, e - b))) && is_punct(text[e - 1])) {
    trailing.push_back(e - 1);
    --e;
  }
  if (b < e) {
    if (cfg.is_abbreviation(fold_case(text.substr(b, e - b)))) {
      emit(b, e);
    } else {
      std::size_t word = b;
      for (std::size_t i = b; i < e; ++i) {
        if (!is_punct(text[i])) continue;
        if (text[i] == '/' && slash_is_attached(text, i)) continue;
        if (i > word) emit(word, i);
        emit(i, i + 1);
        word = i + 1;
      }
      if (e > word) emit(word, e);
    }
  }
  for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) emit(*it, *it + 1);
}

}  // namespace detail

// Whitespace tokenization within each sentence; punctuation becomes separate
// tokens except attached slashes and periods of configured abbreviations.
inline std::vector<Token> tokenize(std::string_view text, const std::vector<SentenceRange>& sentences,
                                   const TokenizerConfig& cfg = {}) {
  std::vector<Token> out;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    std::size_t i = sentences[s].start;
    const std::size_t end = sentences[s].end;
    while (i < end) {
      while (i < end && is_space(text[i])) ++i;
      std::size_t j = i;
      while (j < end && !is_space(text[j])) ++j;
      if (j > i) detail::tokenize_chunk(text, i, j, s, cfg, out);
      i = j;
    }
  }
  return out;
}

// Tokens of a lexicon surface form: the whole string is one sentence.
inline std::vector<Token> tokenize_phrase(std::string_view phrase, const TokenizerConfig& cfg = {}) {
  std::vector<SentenceRange> one;
  if (!phrase.empty()) one.push_back({0, phrase.size()});
  return tokenize(phrase, one, cfg);
}

enum class InputFormat { html, text };

inline TokenizedDocument make_document(std::string doc_id, std::string raw, InputFormat format,
                                       const TokenizerConfig& cfg = {}) {
  TokenizedDocument doc;
  doc.doc_id = std::move(doc_id);
  doc.text = format == InputFormat::html ? extract_access_text(raw) : raw;
  doc.raw = std::move(raw);
  doc.sentences = split_sentences(doc.text, cfg);
  doc.tokens = tokenize(doc.text, doc.sentences, cfg);
  doc.tokenizer_fingerprint = cfg.fingerprint();
  return doc;
}

}  // namespace zugang

#endif  // ZUGANG_TEXT_HPP
