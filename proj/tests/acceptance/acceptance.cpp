// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <unistd.h>

#include <json.hpp>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "zugang/cli.hpp"

using namespace zugang;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome expansion_fidelity() {
  auto t0 = Clock::now();
  Gazetteer g = load_gazetteer(ZUGANG_FIXTURE_DIR "/expansion/A.txt", DatasetKind::A);
  g.merge(load_gazetteer(ZUGANG_FIXTURE_DIR "/expansion/B.txt", DatasetKind::B));
  auto lex = load_synonym_lexicon(ZUGANG_FIXTURE_DIR "/expansion/synonyms.txt");
  auto got = expand_all(filter_preparation(g), lex);
  double ms = ms_since(t0);

  std::vector<LabelVariant> expected;
  std::ifstream in(ZUGANG_FIXTURE_DIR "/expansion/expected.jsonl");
  std::string line;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    expected.push_back({j["entry_id"], j["surface"], *parse_origin(j["origin"].get<std::string>())});
  }
  Outcome o;
  o.detail = std::to_string(got.size()) + "/" + std::to_string(expected.size()) + " variants, " +
             fmt("%.2f ms", ms);
  if (got != expected) {
    o.ok = false;
    for (std::size_t i = 0; i < std::max(got.size(), expected.size()); ++i) {
      if (i >= got.size() || i >= expected.size() || !(got[i] == expected[i])) {
        o.detail += "; first difference at " + std::to_string(i) +
                    (i < got.size() ? " got '" + got[i].surface + "'" : " got nothing");
        break;
      }
    }
  }
  if (ms >= 100.0) o.ok = false;
  return o;
}

Outcome oracle_equivalence() {
  auto t0 = Clock::now();
  std::mt19937 rng(1);
  TokenizerConfig cfg;
  std::size_t bad = 0, matches = 0;
  for (int trial = 0; trial < 500; ++trial) {
    auto t = oracle::random_trial(rng);
    auto m = build_lexicon_matcher(t.variants, cfg);
    auto d = make_document("t", t.text, InputFormat::text, cfg);
    auto expected = oracle::all_matches(t.variants, d, cfg);
    matches += expected.size();
    if (oracle::keys(lexicon_candidates(m, d, m.find_all(d))) != expected) ++bad;
    if (oracle::keys(match_lexicon(m, d)) != oracle::prune(expected)) ++bad;
  }
  double ms = ms_since(t0);
  return {bad == 0 && ms < 10000.0, std::to_string(bad) + " discrepancies over 500 trials (" +
                                        std::to_string(matches) + " raw matches), " + fmt("%.0f ms", ms)};
}

Outcome polarity_properties() {
  std::mt19937 rng(2);
  std::size_t failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto raw = oracle::random_annotations(rng);
    auto out = resolve_polarity(raw);
    std::set<std::pair<Category, std::size_t>> neg;
    bool any_neg = false;
    for (const auto& a : raw) {
      if (a.polarity == Polarity::negative) {
        any_neg = true;
        neg.insert({a.category, a.sentence_index});
      }
    }
    bool ok = true;
    for (const auto& a : out) {
      ok &= a.polarity == Polarity::positive;
      ok &= !neg.contains({a.category, a.sentence_index});
    }
    if (!any_neg) {
      auto sorted = raw;
      std::stable_sort(sorted.begin(), sorted.end(), reading_order_less);
      ok &= out == sorted;
    }
    failures += !ok;
  }
  return {failures == 0, std::to_string(failures) + " failures over 1000 cases"};
}

Outcome quoted_phrases() {
  const auto& engine = fixtures::bundled_engine();
  auto phrases = fixtures::quoted_phrases();
  std::size_t passed = 0;
  std::string first_failure;
  for (const auto& p : phrases) {
    auto why = fixtures::check_phrase(p, engine.process("q", p.text, InputFormat::text).requirements);
    if (why.empty()) {
      ++passed;
    } else if (first_failure.empty()) {
      first_failure = "; '" + p.text + "': " + why;
    }
  }
  return {phrases.size() >= 10 && passed == phrases.size(),
          std::to_string(passed) + "/" + std::to_string(phrases.size()) + " phrases" + first_failure};
}

Outcome metric_formulas() {
  Outcome o;
  auto f = f1(0.99, 0.95);
  o.ok &= !f.degenerate && std::abs(f.value - 0.97) <= 0.005;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(1e-6, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double p = u(rng), r = u(rng);
    double lhs = 2.0 / f1(p, r).value, rhs = 1.0 / p + 1.0 / r;
    worst = std::max(worst, std::abs(lhs - rhs) / rhs);
  }
  o.ok &= worst <= 1e-12;
  bool flagged = precision(0, 0).degenerate && precision(0, 0).value == 0.0 && recall(0, 0).degenerate &&
                 recall(0, 0).value == 0.0 && f1(0, 0).degenerate && f1(0, 0).value == 0.0;
  o.ok &= flagged;
  o.detail = "f1(0.99,0.95)=" + fmt("%.4f", f.value) + ", worst relative identity error " + fmt("%.2e", worst) +
             ", zero denominators " + (flagged ? "flagged" : "NOT flagged");
  return o;
}

int extract_to(const std::filesystem::path& out_path, unsigned jobs) {
  auto cfg = load_config(ZUGANG_DATA_DIR "/zugang.conf");
  auto engine = Engine::load(cfg);
  std::ifstream in(ZUGANG_DATA_DIR "/corpus/mini_corpus.jsonl", std::ios::binary);
  std::ofstream out(out_path, std::ios::binary);
  std::ostringstream err;
  cli::ExtractOptions opt;
  opt.jobs = jobs;
  return cli::cmd_extract(engine, cfg, in, opt, out, err);
}

Outcome end_to_end(const std::filesystem::path& dir) {
  auto t0 = Clock::now();
  auto pred = dir / "pred.jsonl";
  int rc = extract_to(pred, 1);
  std::ostringstream out, err;
  int erc = cli::cmd_eval({{"mini", pred.string(), ZUGANG_DATA_DIR "/corpus/mini_gold.jsonl"}}, true, out, err);
  double ms = ms_since(t0);
  if (rc != 0 || erc != 0) return {false, "exit codes " + std::to_string(rc) + "/" + std::to_string(erc) + " " + err.str()};
  auto j = nlohmann::json::parse(out.str())[0]["overall"];
  double p = j["precision"], r = j["recall"], f = j["f1"];
  std::size_t docs = 0;
  std::ifstream gold(ZUGANG_DATA_DIR "/corpus/mini_gold.jsonl");
  for (std::string l; std::getline(gold, l);) docs += !l.empty();
  return {p == 1.0 && r == 1.0 && f == 1.0 && docs >= 20 && ms < 1000.0,
          std::to_string(docs) + " documents, P=" + fmt("%.3f", p) + " R=" + fmt("%.3f", r) + " F1=" + fmt("%.3f", f) +
              " (tp " + std::to_string(j["tp"].get<int>()) + ", fp " + std::to_string(j["fp"].get<int>()) + ", fn " +
              std::to_string(j["fn"].get<int>()) + "), " + fmt("%.0f ms", ms)};
}

Outcome determinism(const std::filesystem::path& dir) {
  auto a = dir / "run1.jsonl", b = dir / "run2.jsonl";
  int ra = extract_to(a, 4), rb = extract_to(b, 4);
  auto sa = read_file(a), sb = read_file(b);
  return {ra == 0 && rb == 0 && !sa.empty() && sa == sb,
          std::to_string(sa.size()) + " bytes, " + (sa == sb ? "identical" : "DIFFERENT")};
}

}  // namespace

int main() {
  auto dir = std::filesystem::temp_directory_path() / ("zugang_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 label expansion matches hand-derived fixture", expansion_fidelity},
      {"2 lexicon matcher equals brute-force oracle", oracle_equivalence},
      {"3 polarity suppression properties", polarity_properties},
      {"4 quoted advertisement phrases", quoted_phrases},
      {"5 metric formulas", metric_formulas},
      {"6 mini-corpus extract+eval is perfect", [&] { return end_to_end(dir); }},
      {"7 extraction is byte-for-byte deterministic", [&] { return determinism(dir); }},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %s: %s\n", o.ok ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    failed += !o.ok;
  }
  std::filesystem::remove_all(dir);
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
