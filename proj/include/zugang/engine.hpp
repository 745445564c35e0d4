#ifndef ZUGANG_ENGINE_HPP
#define ZUGANG_ENGINE_HPP

#include <string>
#include <vector>

#include "zugang/config.hpp"
#include "zugang/extract.hpp"
#include "zugang/gazetteer.hpp"
#include "zugang/lexicon_matcher.hpp"
#include "zugang/rules.hpp"
#include "zugang/synonyms.hpp"
#include "zugang/text.hpp"

namespace zugang {

// Everything loaded from an EngineConfig. Immutable after load; `process`
// may be called from several threads at once.
struct Engine {
  TokenizerConfig tokenizer;
  Gazetteer gazetteer;  // preparation courses removed
  std::size_t preparation_dropped = 0;
  SynonymLexicon lexicon;
  std::vector<LabelVariant> variants;
  std::vector<ExpansionWarning> warnings;
  LexiconMatcher matcher;
  RuleSet rules;

  static Engine load(const EngineConfig& cfg) {
    cfg.validate();
    Engine e;
    if (!cfg.abbreviations.empty()) e.tokenizer = load_abbreviations(cfg.abbreviations);
    Gazetteer all;
    for (const auto& [d, path] : cfg.gazetteers) all.merge(load_gazetteer(path, d));
    e.gazetteer = filter_preparation(all);
    e.preparation_dropped = all.size() - e.gazetteer.size();
    if (!cfg.synonyms.empty()) e.lexicon = load_synonym_lexicon(cfg.synonyms);
    e.variants = expand_all(e.gazetteer, e.lexicon, &e.warnings);
    e.matcher = build_lexicon_matcher(e.variants, e.tokenizer);
    if (!cfg.rules.empty()) e.rules = compile_rules(load_rule_pack(cfg.rules));
    return e;
  }

  TokenizedDocument tokenize(std::string doc_id, std::string raw, InputFormat format) const {
    return make_document(std::move(doc_id), std::move(raw), format, tokenizer);
  }

  ExtractionResult process(std::string doc_id, std::string raw, InputFormat format) const {
    return extract(tokenize(std::move(doc_id), std::move(raw), format), matcher, rules);
  }
};

}  // namespace zugang

#endif  // ZUGANG_ENGINE_HPP
