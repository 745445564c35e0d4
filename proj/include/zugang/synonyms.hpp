#ifndef ZUGANG_SYNONYMS_HPP
#define ZUGANG_SYNONYMS_HPP

// Surface-form expansion of gazetteer labels: degree synonyms, parenthetical
// splitting ("degree (school)") and male/female title splitting
// ("Koch/Köchin"). The result is the original labels plus every derived form,
// each pointing back at its entry id.

#include <algorithm>
#include <array>
#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "zugang/error.hpp"
#include "zugang/gazetteer.hpp"
#include "zugang/unicode.hpp"

namespace zugang {

// Groups of mutually substitutable degree terms. No term belongs to two
// groups and every group has at least two members.
class SynonymLexicon {
 public:
  SynonymLexicon() = default;

  explicit SynonymLexicon(std::vector<std::vector<std::string>> groups) {
    for (auto& g : groups) add_group(std::move(g));
  }

  // Throws ValidationError when the group breaks an invariant.
  void add_group(std::vector<std::string> members) {
    std::vector<std::string> clean;
    std::vector<std::string> folded;
    for (const auto& m : members) {
      auto t = normalize_space(m);
      if (t.empty()) throw ValidationError("empty synonym term");
      auto f = fold_case(t);
      if (std::find(folded.begin(), folded.end(), f) != folded.end()) {
        throw ValidationError("term '" + t + "' listed twice in one group");
      }
      if (owner_.contains(f)) {
        throw ValidationError("term '" + t + "' appears in more than one group");
      }
      clean.push_back(std::move(t));
      folded.push_back(std::move(f));
    }
    if (clean.size() < 2) {
      throw ValidationError("synonym group needs at least two members");
    }
    for (const auto& f : folded) owner_.emplace(f, groups_.size());
    groups_.push_back(std::move(clean));
    folded_.push_back(std::move(folded));
  }

  const std::vector<std::vector<std::string>>& groups() const { return groups_; }
  const std::vector<std::vector<std::string>>& folded_groups() const { return folded_; }
  std::size_t size() const { return groups_.size(); }
  bool empty() const { return groups_.empty(); }

  std::size_t term_count() const { return owner_.size(); }

 private:
  std::vector<std::vector<std::string>> groups_;
  std::vector<std::vector<std::string>> folded_;
  std::unordered_map<std::string, std::size_t> owner_;
};

// One group per line, members separated by '|'. Lines starting with '#' are
// comments.
inline SynonymLexicon parse_synonym_lexicon(std::istream& in,
                                            const std::string& source = "<stream>") {
  SynonymLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto view = trim(line);
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view = trim(view.substr(3));
    if (view.empty() || view.front() == '#') continue;
    std::vector<std::string> members;
    std::size_t start = 0;
    while (start <= view.size()) {
      auto bar = view.find('|', start);
      auto part = trim(view.substr(start, bar == std::string_view::npos ? view.npos : bar - start));
      if (!part.empty()) members.emplace_back(part);
      if (bar == std::string_view::npos) break;
      start = bar + 1;
    }
    try {
      lex.add_group(std::move(members));
    } catch (const ValidationError& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return lex;
}

inline SynonymLexicon load_synonym_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path);
  return parse_synonym_lexicon(in, path);
}

enum class VariantOrigin {
  original,
  synonym,
  parenthetical_outer,
  parenthetical_inner,
  male_form,
  female_form,
};

inline constexpr std::array<VariantOrigin, 6> kAllOrigins = {
    VariantOrigin::original,           VariantOrigin::synonym,
    VariantOrigin::parenthetical_outer, VariantOrigin::parenthetical_inner,
    VariantOrigin::male_form,          VariantOrigin::female_form};

inline std::string_view origin_name(VariantOrigin o) {
  switch (o) {
    case VariantOrigin::original: return "original";
    case VariantOrigin::synonym: return "synonym";
    case VariantOrigin::parenthetical_outer: return "parenthetical_outer";
    case VariantOrigin::parenthetical_inner: return "parenthetical_inner";
    case VariantOrigin::male_form: return "male_form";
    case VariantOrigin::female_form: return "female_form";
  }
  return "?";
}

inline std::optional<VariantOrigin> parse_origin(std::string_view s) {
  for (auto o : kAllOrigins) {
    if (origin_name(o) == s) return o;
  }
  return std::nullopt;
}

struct LabelVariant {
  std::string entry_id;
  std::string surface;
  VariantOrigin origin = VariantOrigin::original;

  friend bool operator==(const LabelVariant&, const LabelVariant&) = default;
};

struct ParentheticalSplit {
  std::string outer;
  std::string inner;
  bool unbalanced = false;
};

// Text before the first '(' and the text after it with every ')' removed.
// Precondition: label contains '('.
inline ParentheticalSplit split_parenthetical(std::string_view label) {
  auto open = label.find('(');
  if (open == std::string_view::npos) {
    throw std::invalid_argument("split_parenthetical: label has no '('");
  }
  ParentheticalSplit out;
  out.outer = normalize_space(label.substr(0, open));
  std::string inner;
  for (char c : label.substr(open + 1)) {
    if (c != ')') inner.push_back(c);
  }
  out.inner = normalize_space(inner);
  auto opens = std::count(label.begin(), label.end(), '(');
  auto closes = std::count(label.begin(), label.end(), ')');
  out.unbalanced = opens != closes;
  return out;
}

struct GenderSplit {
  std::string male;
  std::string female;
  bool multiple_slashes = false;
};

// Splits at the first '/'. When the part before the slash is a single word,
// only the head noun is gendered and any words following the female head are
// a shared suffix ("Fachpraktiker/Fachpraktikerin für X" gives
// "Fachpraktiker für X" and "Fachpraktikerin für X"). A multi-word part
// before the slash is already a complete title.
// Precondition: label contains '/'.
inline GenderSplit split_gender(std::string_view label) {
  auto slash = label.find('/');
  if (slash == std::string_view::npos) {
    throw std::invalid_argument("split_gender: label has no '/'");
  }
  GenderSplit out;
  out.multiple_slashes = label.find('/', slash + 1) != std::string_view::npos;
  auto before = normalize_space(label.substr(0, slash));
  auto after = normalize_space(label.substr(slash + 1));

  if (before.find(' ') != std::string::npos) {
    out.male = std::move(before);
    out.female = std::move(after);
    return out;
  }
  auto space = after.find(' ');
  if (space == std::string::npos) {
    out.male = std::move(before);
    out.female = std::move(after);
    return out;
  }
  std::string head = after.substr(0, space);
  std::string suffix = after.substr(space + 1);
  out.male = normalize_space(before + " " + suffix);
  out.female = normalize_space(head + " " + suffix);
  return out;
}

// Co-members of every lexicon term found in the label. A term is found when
// it occurs case-insensitively and is not glued to surrounding letters.
inline std::vector<std::string> inject_synonyms(std::string_view label,
                                                const SynonymLexicon& lexicon) {
  std::vector<std::string> out;
  auto folded_label = fold_case(normalize_space(label));
  const auto& groups = lexicon.groups();
  const auto& folded = lexicon.folded_groups();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t t = 0; t < folded[g].size(); ++t) {
      if (!contains_word(folded_label, folded[g][t])) continue;
      for (std::size_t m = 0; m < groups[g].size(); ++m) {
        if (m == t) continue;
        if (std::find(out.begin(), out.end(), groups[g][m]) == out.end()) {
          out.push_back(groups[g][m]);
        }
      }
    }
  }
  return out;
}

struct ExpansionWarning {
  std::string entry_id;
  std::string message;
};

inline std::vector<LabelVariant> expand_entry(const GazetteerEntry& entry,
                                              const SynonymLexicon& lexicon,
                                              std::vector<ExpansionWarning>* warnings = nullptr) {
  const std::string label = normalize_space(entry.label);
  std::vector<std::string> buckets[kAllOrigins.size()];
  auto bucket = [&](VariantOrigin o) -> std::vector<std::string>& {
    return buckets[static_cast<std::size_t>(o)];
  };
  auto warn = [&](std::string msg) {
    if (warnings) warnings->push_back({entry.id, std::move(msg)});
  };

  bucket(VariantOrigin::original).push_back(label);
  bucket(VariantOrigin::synonym) = inject_synonyms(label, lexicon);

  std::optional<std::string> outer;
  if (label.find('(') != std::string::npos) {
    auto p = split_parenthetical(label);
    if (p.unbalanced) warn("unbalanced parenthesis in '" + label + "'");
    bucket(VariantOrigin::parenthetical_outer).push_back(p.outer);
    bucket(VariantOrigin::parenthetical_inner).push_back(p.inner);
    outer = std::move(p.outer);
  }
  if (label.find('/') != std::string::npos) {
    auto s = split_gender(label);
    if (s.multiple_slashes) warn("more than one '/' in '" + label + "', split at the first");
    bucket(VariantOrigin::male_form).push_back(std::move(s.male));
    bucket(VariantOrigin::female_form).push_back(std::move(s.female));
  }
  // Gender split of the parenthetical outer part, so that titles with a
  // legal reference in brackets still yield clean male/female forms.
  if (outer && outer->find('/') != std::string::npos) {
    auto s = split_gender(*outer);
    bucket(VariantOrigin::male_form).push_back(std::move(s.male));
    bucket(VariantOrigin::female_form).push_back(std::move(s.female));
  }

  std::vector<LabelVariant> out;
  std::unordered_set<std::string> seen;
  for (auto origin : kAllOrigins) {
    for (auto& surface : bucket(origin)) {
      auto s = normalize_space(surface);
      if (s.empty() || !seen.insert(s).second) continue;
      out.push_back({entry.id, std::move(s), origin});
    }
  }
  return out;
}

// Each label followed by its derived variants, in gazetteer order. Expects
// preparation courses to be filtered out already.
inline std::vector<LabelVariant> expand_all(const Gazetteer& g, const SynonymLexicon& lexicon,
                                            std::vector<ExpansionWarning>* warnings = nullptr) {
  std::vector<LabelVariant> out;
  out.reserve(g.size() * 2);
  for (const auto& e : g.entries()) {
    auto v = expand_entry(e, lexicon, warnings);
    out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  }
  return out;
}

}  // namespace zugang

#endif  // ZUGANG_SYNONYMS_HPP
