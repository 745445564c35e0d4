#ifndef ZUGANG_EXTRACT_HPP
#define ZUGANG_EXTRACT_HPP

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zugang/annotation.hpp"
#include "zugang/error.hpp"
#include "zugang/lexicon_matcher.hpp"
#include "zugang/rules.hpp"
#include "zugang/text.hpp"

namespace zugang {

// KldB only knows "Deutsch - verschiedene Niveaustufen"; every language
// requirement maps there regardless of the level mentioned.
inline constexpr std::string_view kGermanLanguageId = "A 8.11";

struct ExtractionResult {
  std::string doc_id;
  std::vector<Annotation> raw_annotations;
  std::vector<Annotation> requirements;
};

inline std::vector<Annotation> map_language_requirements(std::vector<Annotation> raw) {
  for (auto& a : raw) {
    if (a.category == Category::LANG) a.canonical_ids = {std::string(kGermanLanguageId)};
  }
  return raw;
}

// A negative annotation removes every positive of its category in the same
// sentence, or in the whole document when the negative is document-scoped.
// Negatives are never part of the output.
inline std::vector<Annotation> resolve_polarity(const std::vector<Annotation>& raw) {
  std::set<std::pair<Category, std::size_t>> sentence_neg;
  std::set<Category> document_neg;
  for (const auto& a : raw) {
    if (a.polarity != Polarity::negative) continue;
    if (a.document_scope) document_neg.insert(a.category);
    sentence_neg.insert({a.category, a.sentence_index});
  }
  std::vector<Annotation> out;
  for (const auto& a : raw) {
    if (a.polarity != Polarity::positive) continue;
    if (document_neg.contains(a.category)) continue;
    if (sentence_neg.contains({a.category, a.sentence_index})) continue;
    out.push_back(a);
  }
  std::stable_sort(out.begin(), out.end(), reading_order_less);
  return out;
}

// Throws ConfigError when the document was tokenized with a different
// configuration than the lexicon matcher.
inline ExtractionResult extract(const TokenizedDocument& doc, const LexiconMatcher& m,
                                const RuleSet& rs) {
  if (doc.tokenizer_fingerprint != m.tokenizer_fingerprint()) {
    throw ConfigError("tokenizer fingerprint mismatch: document " + doc.tokenizer_fingerprint +
                      ", lexicon " + m.tokenizer_fingerprint());
  }
  ExtractionResult r;
  r.doc_id = doc.doc_id;
  r.raw_annotations = match_lexicon(m, doc);
  auto rule_hits = match_rules(rs, doc);
  r.raw_annotations.insert(r.raw_annotations.end(), std::make_move_iterator(rule_hits.begin()),
                           std::make_move_iterator(rule_hits.end()));
  std::stable_sort(r.raw_annotations.begin(), r.raw_annotations.end(), reading_order_less);
  r.requirements = resolve_polarity(map_language_requirements(r.raw_annotations));
  return r;
}

inline nlohmann::ordered_json requirement_to_json(const Annotation& a) {
  nlohmann::ordered_json j;
  j["category"] = category_name(a.category);
  j["polarity"] = polarity_name(a.polarity);
  j["canonical_ids"] = a.canonical_ids;
  j["text"] = a.text;
  j["char_span"] = {a.char_span.start, a.char_span.end};
  j["sentence"] = a.sentence_index;
  return j;
}

inline nlohmann::ordered_json to_json(const ExtractionResult& r) {
  nlohmann::ordered_json j;
  j["doc_id"] = r.doc_id;
  j["requirements"] = nlohmann::ordered_json::array();
  for (const auto& a : r.requirements) j["requirements"].push_back(requirement_to_json(a));
  return j;
}

// Reads back a record written by to_json. Only the fields the evaluation
// needs are required (doc_id, requirements[].category); a record carrying
// "error" has no requirements.
inline ExtractionResult extraction_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("doc_id") || !j["doc_id"].is_string()) {
    throw ValidationError("prediction record without string doc_id");
  }
  ExtractionResult r;
  r.doc_id = j["doc_id"].get<std::string>();
  if (!j.contains("requirements")) return r;
  if (!j["requirements"].is_array()) throw ValidationError("requirements of '" + r.doc_id + "' is not an array");
  for (const auto& q : j["requirements"]) {
    Annotation a;
    a.doc_id = r.doc_id;
    auto cat = q.contains("category") && q["category"].is_string() ? q["category"].get<std::string>() : "";
    auto c = parse_category(cat);
    if (!c) throw ValidationError("unknown category '" + cat + "' in '" + r.doc_id + "'");
    a.category = *c;
    if (q.contains("canonical_ids")) {
      for (const auto& id : q["canonical_ids"]) a.canonical_ids.push_back(id.get<std::string>());
    }
    if (q.contains("text") && q["text"].is_string()) a.text = q["text"].get<std::string>();
    if (q.contains("sentence") && q["sentence"].is_number_unsigned()) {
      a.sentence_index = q["sentence"].get<std::size_t>();
    }
    if (q.contains("char_span") && q["char_span"].is_array() && q["char_span"].size() == 2) {
      a.char_span = {q["char_span"][0].get<std::size_t>(), q["char_span"][1].get<std::size_t>()};
    }
    r.requirements.push_back(std::move(a));
  }
  return r;
}

}  // namespace zugang

#endif  // ZUGANG_EXTRACT_HPP
