#ifndef ZUGANG_ANNOTATION_HPP
#define ZUGANG_ANNOTATION_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "zugang/gazetteer.hpp"

namespace zugang {

// ED school/education degree, PE professional experience, PA prior
// apprenticeship, SKILL, OCC occupation, CPD continuing professional
// development, LANG German-language requirement.
enum class Category { ED, PE, PA, SKILL, OCC, CPD, LANG };

inline constexpr std::array<Category, 7> kAllCategories = {
    Category::ED,  Category::PE,  Category::PA,  Category::SKILL,
    Category::OCC, Category::CPD, Category::LANG};

inline std::string_view category_name(Category c) {
  switch (c) {
    case Category::ED: return "ED";
    case Category::PE: return "PE";
    case Category::PA: return "PA";
    case Category::SKILL: return "SKILL";
    case Category::OCC: return "OCC";
    case Category::CPD: return "CPD";
    case Category::LANG: return "LANG";
  }
  return "?";
}

inline std::optional<Category> parse_category(std::string_view s) {
  for (auto c : kAllCategories) {
    if (category_name(c) == s) return c;
  }
  if (s == "S") return Category::SKILL;
  return std::nullopt;
}

inline Category category_for(DatasetKind d) {
  switch (d) {
    case DatasetKind::A: return Category::ED;
    case DatasetKind::B: return Category::OCC;
    case DatasetKind::C: return Category::CPD;
    case DatasetKind::K: return Category::SKILL;
  }
  return Category::ED;
}

// Taxonomy ids start with their dataset letter ("B 27302-902").
inline std::optional<Category> category_for_id(std::string_view id) {
  if (id.size() < 2 || id[1] != ' ') return std::nullopt;
  auto d = parse_dataset(id.substr(0, 1));
  if (!d) return std::nullopt;
  return category_for(*d);
}

enum class Polarity { positive, negative };

inline std::string_view polarity_name(Polarity p) {
  return p == Polarity::positive ? "positive" : "negative";
}

inline std::optional<Polarity> parse_polarity(std::string_view s) {
  if (s == "positive" || s == "+") return Polarity::positive;
  if (s == "negative" || s == "-") return Polarity::negative;
  return std::nullopt;
}

enum class AnnotationSource { lexicon, rule };

inline std::string_view source_name(AnnotationSource s) {
  return s == AnnotationSource::lexicon ? "lexicon" : "rule";
}

struct Span {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive

  bool contains(const Span& o) const { return start <= o.start && o.end <= end; }
  bool overlaps(const Span& o) const { return start < o.end && o.start < end; }
  std::size_t length() const { return end - start; }

  friend bool operator==(const Span&, const Span&) = default;
  friend auto operator<=>(const Span&, const Span&) = default;
};

struct Annotation {
  std::string doc_id;
  Category category = Category::ED;
  Polarity polarity = Polarity::positive;
  std::vector<std::string> canonical_ids;  // sorted, unique
  Span token_span;
  Span char_span;
  std::size_t sentence_index = 0;
  AnnotationSource source = AnnotationSource::lexicon;
  std::string rule_id;           // empty for lexicon hits
  bool document_scope = false;   // negative rule hit that applies document-wide
  std::string text;              // matched surface

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

// Reading order: sentence, token start, then a total tie-break so that
// sorting is deterministic.
inline bool reading_order_less(const Annotation& a, const Annotation& b) {
  return std::tie(a.sentence_index, a.token_span.start, a.token_span.end, a.category,
                  a.polarity, a.source, a.rule_id, a.canonical_ids) <
         std::tie(b.sentence_index, b.token_span.start, b.token_span.end, b.category,
                  b.polarity, b.source, b.rule_id, b.canonical_ids);
}

}  // namespace zugang

#endif  // ZUGANG_ANNOTATION_HPP
