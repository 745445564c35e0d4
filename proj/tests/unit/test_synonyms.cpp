#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "zugang/synonyms.hpp"

using namespace zugang;

namespace {

SynonymLexicon degree_lexicon() {
  return SynonymLexicon({{"Realschulabschluss", "mittlerer Schulabschluss", "Fachoberschulreife",
                          "Sekundarabschluss I", "mittlere Reife"},
                         {"Abitur", "allgemeine Hochschulreife"}});
}

std::vector<std::string> surfaces(const std::vector<LabelVariant>& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back(v.surface);
  return out;
}

}  // namespace

TEST(SynonymLexicon, RejectsSingletonAndSharedTerms) {
  SynonymLexicon lex;
  EXPECT_THROW(lex.add_group({"Abitur"}), ValidationError);
  lex.add_group({"Abitur", "allgemeine Hochschulreife"});
  EXPECT_THROW(lex.add_group({"ABITUR", "Reifeprüfung"}), ValidationError);
  EXPECT_THROW(lex.add_group({"Fachabitur", "fachabitur"}), ValidationError);
  EXPECT_EQ(lex.size(), 1u);
}

TEST(SynonymLexicon, ParseReportsLine) {
  std::istringstream in("# comment\nA | B\nC\n");
  try {
    parse_synonym_lexicon(in, "lex");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(SynonymLexicon, BundledLexiconLoads) {
  auto lex = load_synonym_lexicon(ZUGANG_DATA_DIR "/synonyms.txt");
  EXPECT_GE(lex.size(), 3u);
}

TEST(SplitParenthetical, OuterAndInner) {
  auto p = split_parenthetical("Fachpraktiker/Fachpraktikerin für Näherei und Schneiderei (§66 BBiG/§42r HwO)");
  EXPECT_EQ(p.outer, "Fachpraktiker/Fachpraktikerin für Näherei und Schneiderei");
  EXPECT_EQ(p.inner, "§66 BBiG/§42r HwO");
  EXPECT_FALSE(p.unbalanced);
}

TEST(SplitParenthetical, UnbalancedIsFlagged) {
  auto p = split_parenthetical("Ausbilder (AEVO");
  EXPECT_EQ(p.outer, "Ausbilder");
  EXPECT_EQ(p.inner, "AEVO");
  EXPECT_TRUE(p.unbalanced);
}

TEST(SplitParenthetical, RequiresParenthesis) {
  EXPECT_THROW(split_parenthetical("Koch"), std::invalid_argument);
}

TEST(SplitGender, FullTitles) {
  auto s = split_gender("Produktionstechnologe/Produktionstechnologin");
  EXPECT_EQ(s.male, "Produktionstechnologe");
  EXPECT_EQ(s.female, "Produktionstechnologin");
  EXPECT_FALSE(s.multiple_slashes);
}

TEST(SplitGender, SharedSuffix) {
  auto s = split_gender("Fachpraktiker/Fachpraktikerin für Näherei und Schneiderei");
  EXPECT_EQ(s.male, "Fachpraktiker für Näherei und Schneiderei");
  EXPECT_EQ(s.female, "Fachpraktikerin für Näherei und Schneiderei");
}

TEST(SplitGender, MultiWordTitleBeforeSlash) {
  auto s = split_gender("Kaufmann im Einzelhandel/Kauffrau im Einzelhandel");
  EXPECT_EQ(s.male, "Kaufmann im Einzelhandel");
  EXPECT_EQ(s.female, "Kauffrau im Einzelhandel");
}

TEST(SplitGender, MultipleSlashesSplitAtFirst) {
  auto s = split_gender("Fachverkäufer/ Fachberater / Fachverkäuferin/ Fachberaterin");
  EXPECT_TRUE(s.multiple_slashes);
  EXPECT_EQ(s.male, "Fachverkäufer / Fachverkäuferin/ Fachberaterin");
  EXPECT_EQ(s.female, "Fachberater / Fachverkäuferin/ Fachberaterin");
}

TEST(InjectSynonyms, WholeWordsOnly) {
  auto lex = degree_lexicon();
  EXPECT_EQ(inject_synonyms("Abitur", lex), (std::vector<std::string>{"allgemeine Hochschulreife"}));
  EXPECT_TRUE(inject_synonyms("Fachabitur", lex).empty());
  EXPECT_TRUE(inject_synonyms("Abiturvorbereitung", lex).empty());
  auto s = inject_synonyms("ALLGEMEINE HOCHSCHULREIFE (Gymnasium)", lex);
  EXPECT_EQ(s, (std::vector<std::string>{"Abitur"}));
}

TEST(ExpandEntry, RealschulabschlussGetsAllGroupMembers) {
  auto vs = expand_entry({"A 1.RSA", "Realschulabschluss", DatasetKind::A, false}, degree_lexicon());
  EXPECT_EQ(surfaces(vs), (std::vector<std::string>{"Realschulabschluss", "mittlerer Schulabschluss",
                                                     "Fachoberschulreife", "Sekundarabschluss I",
                                                     "mittlere Reife"}));
  EXPECT_EQ(vs[0].origin, VariantOrigin::original);
  for (std::size_t i = 1; i < vs.size(); ++i) EXPECT_EQ(vs[i].origin, VariantOrigin::synonym);
}

TEST(ExpandEntry, PlainLabelIsItsOnlyVariant) {
  auto vs = expand_entry({"B 1", "Koch", DatasetKind::B, false}, {});
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0], (LabelVariant{"B 1", "Koch", VariantOrigin::original}));
}

TEST(ExpandEntry, WarnsOnUnbalancedAndMultipleSlashes) {
  std::vector<ExpansionWarning> w;
  expand_entry({"C 1", "Ausbilder (AEVO", DatasetKind::C, false}, {}, &w);
  expand_entry({"B 2", "A/B/C", DatasetKind::B, false}, {}, &w);
  ASSERT_EQ(w.size(), 2u);
  EXPECT_EQ(w[0].entry_id, "C 1");
  EXPECT_EQ(w[1].entry_id, "B 2");
}

// Exact reproduction of the hand-derived expansion for the fixture gazetteer.
TEST(ExpandAll, MatchesHandDerivedFixture) {
  auto t0 = std::chrono::steady_clock::now();
  Gazetteer g = load_gazetteer(ZUGANG_FIXTURE_DIR "/expansion/A.txt", DatasetKind::A);
  g.merge(load_gazetteer(ZUGANG_FIXTURE_DIR "/expansion/B.txt", DatasetKind::B));
  auto lex = load_synonym_lexicon(ZUGANG_FIXTURE_DIR "/expansion/synonyms.txt");
  auto got = expand_all(filter_preparation(g), lex);
  auto elapsed = std::chrono::steady_clock::now() - t0;

  std::vector<LabelVariant> expected;
  std::ifstream in(ZUGANG_FIXTURE_DIR "/expansion/expected.jsonl");
  std::string line;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    expected.push_back({j["entry_id"], j["surface"], *parse_origin(j["origin"].get<std::string>())});
  }
  ASSERT_EQ(got.size(), expected.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i], expected[i]) << "variant " << i << ": " << got[i].surface;
  }
  EXPECT_LT(std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count(), 100);
}

// Properties over random labels built from a small alphabet of fragments.
TEST(ExpandEntry, Properties) {
  std::mt19937 rng(7);
  const std::vector<std::string> parts = {"Koch", "Köchin", "für", "(", ")", "/", "Abitur",
                                          "Bau", "-", "mittlere Reife", " ", "HwO", "§66"};
  std::uniform_int_distribution<std::size_t> pick(0, parts.size() - 1), len(1, 8);
  auto lex = degree_lexicon();
  for (int trial = 0; trial < 2000; ++trial) {
    std::string label;
    auto n = len(rng);
    for (std::size_t i = 0; i < n; ++i) label += parts[pick(rng)] + (i % 2 ? " " : "");
    if (normalize_space(label).empty()) continue;
    GazetteerEntry e{"B 9", label, DatasetKind::B, false};
    auto vs = expand_entry(e, lex);
    ASSERT_FALSE(vs.empty()) << label;
    EXPECT_EQ(vs[0].surface, normalize_space(label));
    EXPECT_EQ(vs[0].origin, VariantOrigin::original);
    std::set<std::string> seen;
    for (const auto& v : vs) {
      EXPECT_EQ(v.entry_id, "B 9");
      EXPECT_FALSE(v.surface.empty());
      EXPECT_TRUE(seen.insert(v.surface).second) << "duplicate " << v.surface;
    }
    bool has_paren = label.find('(') != std::string::npos;
    bool has_slash = label.find('/') != std::string::npos;
    for (const auto& v : vs) {
      if (v.origin == VariantOrigin::parenthetical_outer || v.origin == VariantOrigin::parenthetical_inner) {
        EXPECT_TRUE(has_paren) << label;
      }
      if (v.origin == VariantOrigin::male_form || v.origin == VariantOrigin::female_form) {
        EXPECT_TRUE(has_slash) << label;
      }
    }
    // Deterministic.
    EXPECT_EQ(expand_entry(e, lex), vs);
  }
}
