#ifndef ZUGANG_RULES_HPP
#define ZUGANG_RULES_HPP

// Declarative token-pattern rules with polarity. A rule is an ordered list
// of token predicates; each predicate tests the case-folded token and carries
// a quantifier. Rule packs are line-delimited JSON:
//
//   {"id":"pa_neg","category":"PA","polarity":"negative",
//    "pattern":[{"in":["keine","ohne"]},
//               {"regex":".*","quantifier":"zero_or_more","max_gap":3},
//               {"regex":".*ausbildung"}]}
//
// Predicate keys: "lower" (exact), "in" (set), "prefix", "regex" (ICU syntax,
// full match against the case-folded token, so write "ss" for "ß").
// Optional rule keys: "canonical_id", "scope" ("sentence" or "document";
// document scope is for negative rules only).

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <memory>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_set>
#include <vector>

#include <json.hpp>
#include <unicode/regex.h>

#include "zugang/annotation.hpp"
#include "zugang/error.hpp"
#include "zugang/text.hpp"
#include "zugang/unicode.hpp"

namespace zugang {

inline constexpr std::size_t kMaxGap = 5;

enum class MatchOn { lower_exact, lower_in_set, prefix, regex };
enum class Quantifier { one, optional, zero_or_more };

struct TokenPredicate {
  MatchOn match_on = MatchOn::lower_exact;
  std::vector<std::string> values;  // one value except for lower_in_set
  Quantifier quantifier = Quantifier::one;
  std::size_t max_gap = kMaxGap;  // zero_or_more only

  friend bool operator==(const TokenPredicate&, const TokenPredicate&) = default;
};

struct RuleSpec {
  std::string rule_id;
  Category category = Category::ED;
  Polarity polarity = Polarity::positive;
  std::vector<TokenPredicate> pattern;
  std::optional<std::string> canonical_id;
  bool document_scope = false;

  friend bool operator==(const RuleSpec&, const RuleSpec&) = default;
};

namespace detail {

inline std::string json_string(const nlohmann::json& j, const char* key, const std::string& rule) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw RuleCompileError(rule, std::string("missing string field '") + key + "'");
  }
  return j[key].get<std::string>();
}

inline TokenPredicate parse_predicate(const nlohmann::json& j, const std::string& rule) {
  if (!j.is_object()) throw RuleCompileError(rule, "pattern element is not an object");
  TokenPredicate p;
  int kinds = 0;
  if (j.contains("lower")) {
    p.match_on = MatchOn::lower_exact;
    p.values = {json_string(j, "lower", rule)};
    ++kinds;
  }
  if (j.contains("in")) {
    p.match_on = MatchOn::lower_in_set;
    if (!j["in"].is_array()) throw RuleCompileError(rule, "'in' must be an array");
    p.values.clear();
    for (const auto& v : j["in"]) {
      if (!v.is_string()) throw RuleCompileError(rule, "'in' members must be strings");
      p.values.push_back(v.get<std::string>());
    }
    ++kinds;
  }
  if (j.contains("prefix")) {
    p.match_on = MatchOn::prefix;
    p.values = {json_string(j, "prefix", rule)};
    ++kinds;
  }
  if (j.contains("regex")) {
    p.match_on = MatchOn::regex;
    p.values = {json_string(j, "regex", rule)};
    ++kinds;
  }
  if (kinds != 1) {
    throw RuleCompileError(rule, "pattern element needs exactly one of lower/in/prefix/regex");
  }
  if (j.contains("quantifier")) {
    auto q = json_string(j, "quantifier", rule);
    if (q == "one") p.quantifier = Quantifier::one;
    else if (q == "optional" || q == "?") p.quantifier = Quantifier::optional;
    else if (q == "zero_or_more" || q == "*") p.quantifier = Quantifier::zero_or_more;
    else throw RuleCompileError(rule, "unknown quantifier '" + q + "'");
  }
  if (j.contains("max_gap")) {
    if (!j["max_gap"].is_number_unsigned()) {
      throw RuleCompileError(rule, "'max_gap' must be a non-negative integer");
    }
    p.max_gap = j["max_gap"].get<std::size_t>();
  }
  return p;
}

}  // namespace detail

// Parses one rule object. Structural problems throw RuleCompileError.
inline RuleSpec parse_rule_spec(const nlohmann::json& j) {
  if (!j.is_object()) throw RuleCompileError("?", "rule is not a JSON object");
  RuleSpec r;
  r.rule_id = j.contains("id") && j["id"].is_string() ? j["id"].get<std::string>() : "";
  if (r.rule_id.empty()) throw RuleCompileError("?", "missing rule id");
  auto cat = detail::json_string(j, "category", r.rule_id);
  auto c = parse_category(cat);
  if (!c) throw RuleCompileError(r.rule_id, "unknown category '" + cat + "'");
  r.category = *c;
  auto pol = detail::json_string(j, "polarity", r.rule_id);
  auto p = parse_polarity(pol);
  if (!p) throw RuleCompileError(r.rule_id, "unknown polarity '" + pol + "'");
  r.polarity = *p;
  if (j.contains("canonical_id") && !j["canonical_id"].is_null()) {
    r.canonical_id = detail::json_string(j, "canonical_id", r.rule_id);
  }
  if (j.contains("scope")) {
    auto s = detail::json_string(j, "scope", r.rule_id);
    if (s == "document") r.document_scope = true;
    else if (s != "sentence") throw RuleCompileError(r.rule_id, "unknown scope '" + s + "'");
  }
  if (!j.contains("pattern") || !j["pattern"].is_array()) {
    throw RuleCompileError(r.rule_id, "missing 'pattern' array");
  }
  for (const auto& e : j["pattern"]) r.pattern.push_back(detail::parse_predicate(e, r.rule_id));
  return r;
}

// One rule per line; blank lines and lines starting with '#' are skipped.
inline std::vector<RuleSpec> parse_rule_pack(std::istream& in, const std::string& source = "<stream>") {
  std::vector<RuleSpec> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(t);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(source, line_no, std::string("invalid JSON: ") + e.what());
    }
    try {
      out.push_back(parse_rule_spec(j));
    } catch (const RuleCompileError& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return out;
}

inline std::vector<RuleSpec> load_rule_pack(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path);
  return parse_rule_pack(in, path);
}

class RuleSet {
 public:
  struct CompiledPredicate {
    TokenPredicate spec;
    std::vector<std::string> folded;  // folded values; sorted for sets
    std::shared_ptr<const icu::RegexPattern> re;

    bool test(const std::string& lower) const {
      switch (spec.match_on) {
        case MatchOn::lower_exact: return lower == folded.front();
        case MatchOn::lower_in_set: return std::binary_search(folded.begin(), folded.end(), lower);
        case MatchOn::prefix: return lower.starts_with(folded.front());
        case MatchOn::regex: {
          UErrorCode status = U_ZERO_ERROR;
          auto input = icu::UnicodeString::fromUTF8(lower);
          std::unique_ptr<icu::RegexMatcher> m(re->matcher(input, status));
          return U_SUCCESS(status) && m->matches(status) && U_SUCCESS(status);
        }
      }
      return false;
    }
  };

  struct CompiledRule {
    RuleSpec spec;
    std::vector<CompiledPredicate> predicates;
  };

  const std::vector<CompiledRule>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }

 private:
  friend RuleSet compile_rules(const std::vector<RuleSpec>&);
  std::vector<CompiledRule> rules_;
};

inline RuleSet compile_rules(const std::vector<RuleSpec>& specs) {
  RuleSet rs;
  std::unordered_set<std::string> ids;
  for (const auto& spec : specs) {
    if (spec.rule_id.empty()) throw RuleCompileError("?", "empty rule id");
    if (!ids.insert(spec.rule_id).second) throw RuleCompileError(spec.rule_id, "duplicate rule id");
    if (spec.pattern.empty()) throw RuleCompileError(spec.rule_id, "empty pattern");
    if (spec.canonical_id && trim(*spec.canonical_id).empty()) {
      throw RuleCompileError(spec.rule_id, "empty canonical_id");
    }
    if (spec.document_scope && spec.polarity != Polarity::negative) {
      throw RuleCompileError(spec.rule_id, "document scope is only allowed on negative rules");
    }
    bool consumes = false;
    RuleSet::CompiledRule rule{spec, {}};
    for (const auto& p : spec.pattern) {
      RuleSet::CompiledPredicate cp{p, {}, nullptr};
      if (p.values.empty()) throw RuleCompileError(spec.rule_id, "predicate without value");
      if (p.match_on != MatchOn::lower_in_set && p.values.size() != 1) {
        throw RuleCompileError(spec.rule_id, "predicate takes exactly one value");
      }
      if (p.quantifier == Quantifier::zero_or_more && p.max_gap > kMaxGap) {
        throw RuleCompileError(spec.rule_id, "max_gap above " + std::to_string(kMaxGap));
      }
      consumes |= p.quantifier == Quantifier::one;
      if (p.match_on == MatchOn::regex) {
        UErrorCode status = U_ZERO_ERROR;
        UParseError where;
        std::shared_ptr<const icu::RegexPattern> re(
            icu::RegexPattern::compile(icu::UnicodeString::fromUTF8(p.values.front()), where, status));
        if (U_FAILURE(status) || !re) {
          throw RuleCompileError(spec.rule_id, "invalid regex '" + p.values.front() + "': " +
                                                   u_errorName(status));
        }
        cp.re = std::move(re);
        cp.folded = p.values;
      } else {
        for (const auto& v : p.values) {
          auto f = fold_case(trim(v));
          if (f.empty()) throw RuleCompileError(spec.rule_id, "empty predicate value");
          cp.folded.push_back(std::move(f));
        }
        std::sort(cp.folded.begin(), cp.folded.end());
        cp.folded.erase(std::unique(cp.folded.begin(), cp.folded.end()), cp.folded.end());
      }
      rule.predicates.push_back(std::move(cp));
    }
    if (!consumes) {
      throw RuleCompileError(spec.rule_id, "pattern can match an empty token sequence");
    }
    rs.rules_.push_back(std::move(rule));
  }
  return rs;
}

namespace detail {

// End of the longest match of predicates[pi..] starting at token `pos`, or
// nullopt. `limit` is the end of the sentence.
inline std::optional<std::size_t> longest_match(const std::vector<RuleSet::CompiledPredicate>& preds,
                                                std::size_t pi, std::size_t pos, std::size_t limit,
                                                const std::vector<Token>& tokens) {
  if (pi == preds.size()) return pos;
  const auto& p = preds[pi];
  std::optional<std::size_t> best;
  auto consider = [&](std::optional<std::size_t> e) {
    if (e && (!best || *e > *best)) best = e;
  };
  switch (p.spec.quantifier) {
    case Quantifier::one:
      if (pos < limit && p.test(tokens[pos].lower)) consider(longest_match(preds, pi + 1, pos + 1, limit, tokens));
      break;
    case Quantifier::optional:
      if (pos < limit && p.test(tokens[pos].lower)) consider(longest_match(preds, pi + 1, pos + 1, limit, tokens));
      consider(longest_match(preds, pi + 1, pos, limit, tokens));
      break;
    case Quantifier::zero_or_more:
      for (std::size_t k = 0; k <= p.spec.max_gap; ++k) {
        consider(longest_match(preds, pi + 1, pos + k, limit, tokens));
        if (pos + k >= limit || !p.test(tokens[pos + k].lower)) break;
      }
      break;
  }
  return best;
}

}  // namespace detail

// Hits of a single rule: leftmost-longest, non-overlapping, per sentence.
inline std::vector<Span> match_rule(const RuleSet::CompiledRule& rule, const TokenizedDocument& doc) {
  std::vector<Span> out;
  const auto& toks = doc.tokens;
  std::size_t i = 0;
  while (i < toks.size()) {
    std::size_t sentence_end = i;
    while (sentence_end < toks.size() && toks[sentence_end].sentence_index == toks[i].sentence_index) {
      ++sentence_end;
    }
    std::size_t s = i;
    while (s < sentence_end) {
      auto e = detail::longest_match(rule.predicates, 0, s, sentence_end, toks);
      if (e && *e > s) {
        out.push_back({s, *e});
        s = *e;
      } else {
        ++s;
      }
    }
    i = sentence_end;
  }
  return out;
}

// Evaluates every rule within sentence boundaries. Overlapping hits that
// agree on category, polarity, canonical id and scope are collapsed to the
// leftmost-longest one (earlier rule wins ties), so that a pack may hold
// several phrasings of one requirement without double counting.
inline std::vector<Annotation> match_rules(const RuleSet& rs, const TokenizedDocument& doc) {
  struct Hit {
    Span span;
    std::size_t rule;
  };
  std::vector<Hit> hits;
  for (std::size_t r = 0; r < rs.rules().size(); ++r) {
    for (auto span : match_rule(rs.rules()[r], doc)) hits.push_back({span, r});
  }
  auto key = [&](const Hit& h) {
    const auto& s = rs.rules()[h.rule].spec;
    return std::make_tuple(s.category, s.polarity, s.canonical_id, s.document_scope);
  };
  std::sort(hits.begin(), hits.end(), [&](const Hit& a, const Hit& b) {
    auto ka = key(a);
    auto kb = key(b);
    if (ka != kb) return ka < kb;
    if (a.span.start != b.span.start) return a.span.start < b.span.start;
    if (a.span.end != b.span.end) return a.span.end > b.span.end;
    return a.rule < b.rule;
  });

  std::vector<Annotation> out;
  const Hit* last = nullptr;
  for (const auto& h : hits) {
    if (last && key(*last) == key(h) && h.span.start < last->span.end) continue;
    last = &h;
    const auto& spec = rs.rules()[h.rule].spec;
    const auto& first = doc.tokens[h.span.start];
    const auto& final_tok = doc.tokens[h.span.end - 1];
    Annotation a;
    a.doc_id = doc.doc_id;
    a.category = spec.category;
    a.polarity = spec.polarity;
    if (spec.canonical_id) a.canonical_ids = {*spec.canonical_id};
    a.token_span = h.span;
    a.char_span = {first.start, final_tok.end};
    a.sentence_index = first.sentence_index;
    a.source = AnnotationSource::rule;
    a.rule_id = spec.rule_id;
    a.document_scope = spec.document_scope;
    a.text = doc.text.substr(first.start, final_tok.end - first.start);
    out.push_back(std::move(a));
  }
  std::sort(out.begin(), out.end(), reading_order_less);
  return out;
}

}  // namespace zugang

#endif  // ZUGANG_RULES_HPP
