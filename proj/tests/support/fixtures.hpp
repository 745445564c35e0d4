#ifndef ZUGANG_TEST_FIXTURES_HPP
#define ZUGANG_TEST_FIXTURES_HPP

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zugang/zugang.hpp"

namespace fixtures {

inline const zugang::Engine& bundled_engine() {
  static const zugang::Engine e = zugang::Engine::load(zugang::load_config(ZUGANG_DATA_DIR "/zugang.conf"));
  return e;
}

struct Expected {
  zugang::Category category;
  std::optional<std::vector<std::string>> ids;  // unchecked when absent
};

struct Phrase {
  std::string text;
  std::vector<Expected> expect;  // in reading order
};

inline void PrintTo(const Phrase& p, std::ostream* os) { *os << p.text; }

inline std::vector<Phrase> quoted_phrases() {
  std::vector<Phrase> out;
  std::ifstream in(ZUGANG_FIXTURE_DIR "/quoted_phrases.jsonl");
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line);
    Phrase p{j["text"], {}};
    for (const auto& e : j["expect"]) {
      Expected x{*zugang::parse_category(e["category"].get<std::string>()), std::nullopt};
      if (e.contains("ids")) x.ids = e["ids"].get<std::vector<std::string>>();
      p.expect.push_back(std::move(x));
    }
    out.push_back(std::move(p));
  }
  return out;
}

// Empty string when the requirements match, otherwise a description.
inline std::string check_phrase(const Phrase& p, const std::vector<zugang::Annotation>& got) {
  auto describe = [&] {
    std::string s = "got:";
    for (const auto& a : got) {
      s += " " + std::string(zugang::category_name(a.category)) + "'" + a.text + "'";
      for (const auto& id : a.canonical_ids) s += "[" + id + "]";
    }
    return s;
  };
  if (got.size() != p.expect.size()) return "expected " + std::to_string(p.expect.size()) + " requirements; " + describe();
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (got[i].category != p.expect[i].category) return "category mismatch at " + std::to_string(i) + "; " + describe();
    if (p.expect[i].ids && got[i].canonical_ids != *p.expect[i].ids) {
      return "id mismatch at " + std::to_string(i) + "; " + describe();
    }
  }
  return {};
}

}  // namespace fixtures

#endif  // ZUGANG_TEST_FIXTURES_HPP
