#include <sstream>

#include <gtest/gtest.h>

#include "zugang/gazetteer.hpp"

using namespace zugang;

namespace {

Gazetteer parse(const std::string& text, DatasetKind d = DatasetKind::B) {
  std::istringstream in(text);
  return parse_gazetteer(in, d, "test");
}

}  // namespace

TEST(Gazetteer, ParsesQuotedOccupationRecords) {
  auto g = parse(
      "B 27302-902|Produktionstechnologe/Produktionstechnologin|\n"
      "B 28222-905|Fachpraktiker/Fachpraktikerin für Näherei und Schneiderei (§66 BBiG/§42r HwO)|\n");
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g.entries()[0].id, "B 27302-902");
  EXPECT_EQ(g.entries()[0].label, "Produktionstechnologe/Produktionstechnologin");
  EXPECT_EQ(g.entries()[1].label,
            "Fachpraktiker/Fachpraktikerin für Näherei und Schneiderei (§66 BBiG/§42r HwO)");
  EXPECT_EQ(g.entries()[1].dataset, DatasetKind::B);
  EXPECT_FALSE(g.entries()[1].is_preparation);
}

TEST(Gazetteer, SkipsBlankLinesAndBom) {
  auto g = parse("\xEF\xBB\xBF" "B 1|Koch|\n\n   \nB 2|Bäcker\n", DatasetKind::B);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g.entries()[0].id, "B 1");
  EXPECT_EQ(g.entries()[1].label, "Bäcker");
}

TEST(Gazetteer, MissingPipeReportsLine) {
  try {
    parse("B 1|Koch|\nB 2 Bäcker\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Gazetteer, EmptyFieldsAreParseErrors) {
  EXPECT_THROW(parse("|Koch|\n"), ParseError);
  EXPECT_THROW(parse("B 1||\n"), ParseError);
}

TEST(Gazetteer, IdMustCarryDatasetPrefix) {
  EXPECT_THROW(parse("A 1.X|Abitur|\n", DatasetKind::B), ParseError);
  EXPECT_NO_THROW(parse("A 1.X|Abitur|\n", DatasetKind::A));
}

TEST(Gazetteer, DuplicateIdIsValidationError) {
  try {
    parse("B 1|Koch|\nB 1|Köchin|\n");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("B 1"), std::string::npos);
  }
}

TEST(Gazetteer, PreparationFlagIsCaseInsensitiveSubstring) {
  EXPECT_TRUE(is_preparation_label("Vorbereitung auf den Hauptschulabschluss"));
  EXPECT_TRUE(is_preparation_label("Abiturvorbereitungskurs"));
  EXPECT_TRUE(is_preparation_label("VORBEREITUNG"));
  EXPECT_FALSE(is_preparation_label("Vorbereiter"));
}

TEST(Gazetteer, FilterDropsExactlyThePreparationCourses) {
  auto g = load_gazetteer(ZUGANG_FIXTURE_DIR "/A_ten.txt", DatasetKind::A);
  ASSERT_EQ(g.size(), 10u);
  EXPECT_EQ(g.preparation_count(), 2u);
  auto f = filter_preparation(g);
  EXPECT_EQ(f.size(), 8u);
  for (const auto& e : f.entries()) EXPECT_FALSE(is_preparation_label(e.label)) << e.label;
  EXPECT_EQ(f.find("A 1.X03"), nullptr);
  EXPECT_NE(f.find("A 1.X04"), nullptr);
}

TEST(Gazetteer, FilterIsIdempotent) {
  auto g = load_gazetteer(ZUGANG_FIXTURE_DIR "/A_ten.txt", DatasetKind::A);
  auto once = filter_preparation(g);
  EXPECT_EQ(filter_preparation(once), once);
}

TEST(Gazetteer, WriteThenParseRoundTrips) {
  auto g = load_gazetteer(ZUGANG_DATA_DIR "/gazetteer/B.txt", DatasetKind::B);
  std::ostringstream out;
  write_gazetteer(out, g);
  EXPECT_EQ(parse(out.str(), DatasetKind::B), g);
}

TEST(Gazetteer, MergeRejectsCollisions) {
  auto a = parse("B 1|Koch|\n");
  auto b = parse("B 1|Koch|\n");
  EXPECT_THROW(a.merge(b), ValidationError);
}

TEST(Gazetteer, MissingFileIsIoError) {
  EXPECT_THROW(load_gazetteer("/nonexistent/B.txt", DatasetKind::B), IoError);
}

TEST(Gazetteer, BundledDataLoads) {
  for (auto d : kAllDatasets) {
    auto path = std::string(ZUGANG_DATA_DIR "/gazetteer/") + dataset_letter(d) + ".txt";
    auto g = load_gazetteer(path, d);
    EXPECT_GT(g.size(), 0u) << path;
    EXPECT_EQ(g.count(d), g.size());
  }
}
