#ifndef ZUGANG_LEXICON_MATCHER_HPP
#define ZUGANG_LEXICON_MATCHER_HPP

// Multi-pattern matcher over token sequences (Aho-Corasick with tokens as
// the alphabet). A surface of n tokens matches a run of n consecutive
// document tokens with equal case-folded forms, never across a sentence
// boundary.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <queue>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "zugang/annotation.hpp"
#include "zugang/error.hpp"
#include "zugang/synonyms.hpp"
#include "zugang/text.hpp"

namespace zugang {

// A raw hit before pruning: one token span and one pattern.
struct LexiconHit {
  Span tokens;
  std::size_t pattern = 0;

  friend bool operator==(const LexiconHit&, const LexiconHit&) = default;
};

class LexiconMatcher {
 public:
  struct Pattern {
    std::vector<std::string> tokens;  // folded
    std::vector<std::string> ids;     // sorted, unique
  };

  LexiconMatcher() : nodes_(1) {}

  const std::vector<Pattern>& patterns() const { return patterns_; }
  std::size_t state_count() const { return nodes_.size(); }
  const std::string& tokenizer_fingerprint() const { return fingerprint_; }

  // Every occurrence of every pattern in `doc`, in order of end token.
  std::vector<LexiconHit> find_all(const TokenizedDocument& doc) const {
    std::vector<LexiconHit> hits;
    std::int32_t state = 0;
    std::size_t sentence = static_cast<std::size_t>(-1);
    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
      const auto& tok = doc.tokens[i];
      if (tok.sentence_index != sentence) {
        sentence = tok.sentence_index;
        state = 0;
      }
      auto sym_it = vocab_.find(tok.lower);
      if (sym_it == vocab_.end()) {
        state = 0;
        continue;
      }
      const auto sym = sym_it->second;
      while (state != 0 && !nodes_[state].next.contains(sym)) state = nodes_[state].fail;
      auto nx = nodes_[state].next.find(sym);
      state = nx == nodes_[state].next.end() ? 0 : nx->second;

      for (auto s = nodes_[state].pattern >= 0 ? state : nodes_[state].output; s > 0;
           s = nodes_[s].output) {
        const auto p = static_cast<std::size_t>(nodes_[s].pattern);
        const auto len = patterns_[p].tokens.size();
        hits.push_back({{i + 1 - len, i + 1}, p});
      }
    }
    return hits;
  }

 private:
  friend LexiconMatcher build_lexicon_matcher(const std::vector<LabelVariant>&,
                                              const TokenizerConfig&);

  struct Node {
    std::unordered_map<std::int32_t, std::int32_t> next;
    std::int32_t fail = 0;
    std::int32_t output = 0;  // nearest proper suffix state that ends a pattern, 0 if none
    std::int32_t pattern = -1;
  };

  std::int32_t symbol(const std::string& tok) {
    auto [it, inserted] = vocab_.emplace(tok, static_cast<std::int32_t>(vocab_.size()));
    return it->second;
  }

  void link() {
    std::queue<std::int32_t> q;
    for (auto& [sym, child] : nodes_[0].next) {
      nodes_[child].fail = 0;
      q.push(child);
    }
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (auto& [sym, child] : nodes_[u].next) {
        auto f = nodes_[u].fail;
        while (f != 0 && !nodes_[f].next.contains(sym)) f = nodes_[f].fail;
        auto it = nodes_[f].next.find(sym);
        auto target = (it != nodes_[f].next.end() && it->second != child) ? it->second : 0;
        nodes_[child].fail = target;
        nodes_[child].output = nodes_[target].pattern >= 0 ? target : nodes_[target].output;
        q.push(child);
      }
    }
  }

  std::vector<Node> nodes_;
  std::unordered_map<std::string, std::int32_t> vocab_;
  std::vector<Pattern> patterns_;
  std::string fingerprint_;
};

// Throws ValidationError for a variant whose surface has no tokens or whose
// entry id does not name a dataset.
inline LexiconMatcher build_lexicon_matcher(const std::vector<LabelVariant>& variants,
                                            const TokenizerConfig& cfg = {}) {
  LexiconMatcher m;
  m.fingerprint_ = cfg.fingerprint();
  for (const auto& v : variants) {
    if (!category_for_id(v.entry_id)) {
      throw ValidationError("variant of '" + v.entry_id + "' has no dataset prefix");
    }
    auto toks = tokenize_phrase(v.surface, cfg);
    if (toks.empty()) {
      throw ValidationError("variant '" + v.surface + "' of '" + v.entry_id +
                            "' has no tokens");
    }
    std::int32_t state = 0;
    for (const auto& t : toks) {
      auto sym = m.symbol(t.lower);
      auto it = m.nodes_[state].next.find(sym);
      if (it == m.nodes_[state].next.end()) {
        auto id = static_cast<std::int32_t>(m.nodes_.size());
        m.nodes_[state].next.emplace(sym, id);
        m.nodes_.emplace_back();
        state = id;
      } else {
        state = it->second;
      }
    }
    auto& node = m.nodes_[state];
    if (node.pattern < 0) {
      node.pattern = static_cast<std::int32_t>(m.patterns_.size());
      LexiconMatcher::Pattern p;
      for (auto& t : toks) p.tokens.push_back(std::move(t.lower));
      m.patterns_.push_back(std::move(p));
    }
    auto& ids = m.patterns_[static_cast<std::size_t>(node.pattern)].ids;
    auto pos = std::lower_bound(ids.begin(), ids.end(), v.entry_id);
    if (pos == ids.end() || *pos != v.entry_id) ids.insert(pos, v.entry_id);
  }
  m.link();
  return m;
}

// Turns raw hits into one candidate per (token span, category); ids of the
// same span and category are merged.
inline std::vector<Annotation> lexicon_candidates(const LexiconMatcher& m,
                                                  const TokenizedDocument& doc,
                                                  const std::vector<LexiconHit>& hits) {
  std::map<std::pair<Span, Category>, std::vector<std::string>> grouped;
  for (const auto& h : hits) {
    for (const auto& id : m.patterns()[h.pattern].ids) {
      auto& ids = grouped[{h.tokens, *category_for_id(id)}];
      auto pos = std::lower_bound(ids.begin(), ids.end(), id);
      if (pos == ids.end() || *pos != id) ids.insert(pos, id);
    }
  }
  std::vector<Annotation> out;
  out.reserve(grouped.size());
  for (auto& [key, ids] : grouped) {
    const auto& first = doc.tokens[key.first.start];
    const auto& last = doc.tokens[key.first.end - 1];
    Annotation a;
    a.doc_id = doc.doc_id;
    a.category = key.second;
    a.polarity = Polarity::positive;
    a.canonical_ids = std::move(ids);
    a.token_span = key.first;
    a.char_span = {first.start, last.end};
    a.sentence_index = first.sentence_index;
    a.source = AnnotationSource::lexicon;
    a.text = doc.text.substr(first.start, last.end - first.start);
    out.push_back(std::move(a));
  }
  return out;
}

// Drops a candidate when a strictly larger candidate contains it and either
// starts at the same token (longest match wins) or carries the same id set.
// Overlaps between different ids that start elsewhere are kept.
inline std::vector<Annotation> prune_lexicon_matches(std::vector<Annotation> candidates) {
  const auto n = candidates.size();
  std::vector<bool> drop(n, false);

  // Longest per start token.
  std::map<std::size_t, std::size_t> longest_end;
  for (const auto& c : candidates) {
    auto& e = longest_end[c.token_span.start];
    e = std::max(e, c.token_span.end);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (candidates[i].token_span.end < longest_end[candidates[i].token_span.start]) drop[i] = true;
  }

  // Nested spans with identical id sets: sweep by (start asc, end desc).
  std::map<std::vector<std::string>, std::vector<std::size_t>> by_ids;
  for (std::size_t i = 0; i < n; ++i) by_ids[candidates[i].canonical_ids].push_back(i);
  for (auto& [ids, idx] : by_ids) {
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      const auto& sa = candidates[a].token_span;
      const auto& sb = candidates[b].token_span;
      return sa.start != sb.start ? sa.start < sb.start : sa.end > sb.end;
    });
    std::size_t max_end = 0;
    bool any = false;
    for (auto i : idx) {
      const auto& s = candidates[i].token_span;
      if (any && s.end <= max_end) drop[i] = true;
      if (!any || s.end > max_end) max_end = s.end;
      any = true;
    }
  }

  std::vector<Annotation> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!drop[i]) out.push_back(std::move(candidates[i]));
  }
  std::sort(out.begin(), out.end(), reading_order_less);
  return out;
}

inline std::vector<Annotation> match_lexicon(const LexiconMatcher& m, const TokenizedDocument& doc) {
  return prune_lexicon_matches(lexicon_candidates(m, doc, m.find_all(doc)));
}

}  // namespace zugang

#endif  // ZUGANG_LEXICON_MATCHER_HPP
