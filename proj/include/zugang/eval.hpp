#ifndef ZUGANG_EVAL_HPP
#define ZUGANG_EVAL_HPP

// Label-level evaluation against a gold standard: per document, a predicted
// requirement is a true positive when an unmatched gold label of the same
// category agrees on the canonical id (or either side has no id).

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "zugang/annotation.hpp"
#include "zugang/error.hpp"
#include "zugang/extract.hpp"

namespace zugang {

struct GoldLabel {
  std::string doc_id;
  Category category = Category::ED;
  std::optional<std::string> canonical_id;

  friend bool operator==(const GoldLabel&, const GoldLabel&) = default;
};

// A document may legitimately have no labels, so gold data is grouped.
struct GoldDocument {
  std::string doc_id;
  std::vector<GoldLabel> labels;
};

inline GoldDocument gold_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("doc_id") || !j["doc_id"].is_string() ||
      j["doc_id"].get<std::string>().empty()) {
    throw ValidationError("gold record without doc_id");
  }
  GoldDocument d;
  d.doc_id = j["doc_id"].get<std::string>();
  if (!j.contains("labels")) return d;
  if (!j["labels"].is_array()) throw ValidationError("labels of '" + d.doc_id + "' is not an array");
  for (const auto& l : j["labels"]) {
    auto cat = l.contains("category") && l["category"].is_string() ? l["category"].get<std::string>() : "";
    auto c = parse_category(cat);
    if (!c) throw ValidationError("unknown category '" + cat + "' in gold '" + d.doc_id + "'");
    GoldLabel g{d.doc_id, *c, std::nullopt};
    if (l.contains("canonical_id") && l["canonical_id"].is_string()) {
      g.canonical_id = l["canonical_id"].get<std::string>();
    }
    d.labels.push_back(std::move(g));
  }
  return d;
}

inline nlohmann::ordered_json to_json(const GoldDocument& d) {
  nlohmann::ordered_json j;
  j["doc_id"] = d.doc_id;
  j["labels"] = nlohmann::ordered_json::array();
  for (const auto& l : d.labels) {
    nlohmann::ordered_json lj;
    lj["category"] = category_name(l.category);
    if (l.canonical_id) lj["canonical_id"] = *l.canonical_id;
    j["labels"].push_back(std::move(lj));
  }
  return j;
}

namespace detail {

template <typename T, typename Parse>
std::vector<T> read_jsonl(std::istream& in, const std::string& source, Parse parse) {
  std::vector<T> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      out.push_back(parse(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(source, line_no, e.what());
    } catch (const ValidationError& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return out;
}

}  // namespace detail

inline std::vector<GoldDocument> parse_gold(std::istream& in, const std::string& source = "<stream>") {
  return detail::read_jsonl<GoldDocument>(in, source, gold_from_json);
}

inline std::vector<GoldDocument> load_gold(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path);
  return parse_gold(in, path);
}

inline std::vector<ExtractionResult> parse_predictions(std::istream& in,
                                                       const std::string& source = "<stream>") {
  return detail::read_jsonl<ExtractionResult>(in, source, extraction_from_json);
}

inline std::vector<ExtractionResult> load_predictions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path);
  return parse_predictions(in, path);
}

struct Counts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  Counts& operator+=(const Counts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const Counts&, const Counts&) = default;
};

// A ratio whose denominator was zero is reported as 0 and flagged.
struct Ratio {
  double value = 0.0;
  bool degenerate = false;
};

inline Ratio precision(std::size_t tp, std::size_t fp) {
  if (tp + fp == 0) return {0.0, true};
  return {static_cast<double>(tp) / static_cast<double>(tp + fp), false};
}

inline Ratio recall(std::size_t tp, std::size_t fn) {
  if (tp + fn == 0) return {0.0, true};
  return {static_cast<double>(tp) / static_cast<double>(tp + fn), false};
}

// Harmonic mean of precision and recall.
inline Ratio f1(double p, double r) {
  if (p + r <= 0.0) return {0.0, true};
  return {2.0 * p * r / (p + r), false};
}

struct Scores {
  Counts counts;
  Ratio precision;
  Ratio recall;
  Ratio f1;
};

inline Scores score(const Counts& c) {
  Scores s;
  s.counts = c;
  s.precision = precision(c.tp, c.fp);
  s.recall = recall(c.tp, c.fn);
  s.f1 = f1(s.precision.value, s.recall.value);
  return s;
}

struct Comparison {
  std::map<Category, Counts> per_category;  // every category present
  std::vector<std::string> unscored_docs;   // predicted but absent from gold
};

namespace detail {

inline bool has_id(const Annotation& a, const std::string& id) {
  return std::find(a.canonical_ids.begin(), a.canonical_ids.end(), id) != a.canonical_ids.end();
}

inline void compare_document(const std::vector<Annotation>& predicted,
                             const std::vector<GoldLabel>& gold,
                             std::map<Category, Counts>& counts) {
  std::vector<bool> pred_used(predicted.size(), false);
  std::vector<bool> gold_used(gold.size(), false);
  // Pass 1: id agreement. Pass 2: category only, when either side has no id.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t p = 0; p < predicted.size(); ++p) {
      if (pred_used[p]) continue;
      const auto& pred = predicted[p];
      for (std::size_t g = 0; g < gold.size(); ++g) {
        if (gold_used[g] || gold[g].category != pred.category) continue;
        bool ok = pass == 0 ? (gold[g].canonical_id && has_id(pred, *gold[g].canonical_id))
                            : (!gold[g].canonical_id || pred.canonical_ids.empty());
        if (!ok) continue;
        pred_used[p] = gold_used[g] = true;
        ++counts[pred.category].tp;
        break;
      }
    }
  }
  for (std::size_t p = 0; p < predicted.size(); ++p) {
    if (!pred_used[p]) ++counts[predicted[p].category].fp;
  }
  for (std::size_t g = 0; g < gold.size(); ++g) {
    if (!gold_used[g]) ++counts[gold[g].category].fn;
  }
}

}  // namespace detail

// Throws ValidationError when a gold document has no prediction record or a
// doc id repeats.
inline Comparison compare(const std::vector<ExtractionResult>& predicted,
                          const std::vector<GoldDocument>& gold) {
  Comparison out;
  for (auto c : kAllCategories) out.per_category[c] = {};

  std::unordered_map<std::string, const ExtractionResult*> by_id;
  for (const auto& r : predicted) {
    if (!by_id.emplace(r.doc_id, &r).second) {
      throw ValidationError("duplicate prediction record for '" + r.doc_id + "'");
    }
  }
  std::unordered_set<std::string> gold_ids;
  std::vector<std::string> missing;
  for (const auto& d : gold) {
    if (!gold_ids.insert(d.doc_id).second) throw ValidationError("duplicate gold record for '" + d.doc_id + "'");
    if (!by_id.contains(d.doc_id)) missing.push_back(d.doc_id);
  }
  if (!missing.empty()) {
    std::string msg = "no prediction for gold document(s):";
    for (const auto& m : missing) msg += " " + m;
    throw ValidationError(msg);
  }
  for (const auto& d : gold) detail::compare_document(by_id[d.doc_id]->requirements, d.labels, out.per_category);
  for (const auto& r : predicted) {
    if (!gold_ids.contains(r.doc_id)) out.unscored_docs.push_back(r.doc_id);
  }
  return out;
}

struct EvalReport {
  std::string dataset_name;
  std::map<Category, Scores> per_category;
  Scores overall;
  std::vector<std::string> unscored_docs;
};

struct EvalDataset {
  std::string name;
  std::vector<ExtractionResult> predicted;
  std::vector<GoldDocument> gold;
};

inline EvalReport evaluate(const EvalDataset& ds) {
  auto cmp = compare(ds.predicted, ds.gold);
  EvalReport r;
  r.dataset_name = ds.name;
  Counts total;
  for (const auto& [cat, counts] : cmp.per_category) {
    r.per_category[cat] = score(counts);
    total += counts;
  }
  r.overall = score(total);
  r.unscored_docs = std::move(cmp.unscored_docs);
  return r;
}

inline std::vector<EvalReport> report(const std::vector<EvalDataset>& datasets) {
  std::vector<EvalReport> out;
  out.reserve(datasets.size());
  for (const auto& d : datasets) out.push_back(evaluate(d));
  return out;
}

namespace detail {

inline nlohmann::ordered_json scores_json(const Scores& s) {
  nlohmann::ordered_json j;
  j["tp"] = s.counts.tp;
  j["fp"] = s.counts.fp;
  j["fn"] = s.counts.fn;
  j["precision"] = s.precision.value;
  j["recall"] = s.recall.value;
  j["f1"] = s.f1.value;
  nlohmann::ordered_json degenerate = nlohmann::ordered_json::array();
  if (s.precision.degenerate) degenerate.push_back("precision");
  if (s.recall.degenerate) degenerate.push_back("recall");
  if (s.f1.degenerate) degenerate.push_back("f1");
  j["degenerate"] = std::move(degenerate);
  return j;
}

inline std::string fmt_ratio(const Ratio& r) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.2f%s", r.value, r.degenerate ? "*" : " ");
  return buf;
}

inline std::string table_row(const std::string& name, const Scores& s, std::size_t width) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-*s %10s %10s %10s %6zu %6zu %6zu\n", static_cast<int>(width),
                name.c_str(), fmt_ratio(s.precision).c_str(), fmt_ratio(s.recall).c_str(),
                fmt_ratio(s.f1).c_str(), s.counts.tp, s.counts.fp, s.counts.fn);
  return buf;
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["dataset"] = r.dataset_name;
  j["overall"] = detail::scores_json(r.overall);
  nlohmann::ordered_json per = nlohmann::ordered_json::object();
  for (const auto& [cat, s] : r.per_category) per[std::string(category_name(cat))] = detail::scores_json(s);
  j["per_category"] = std::move(per);
  j["unscored_docs"] = r.unscored_docs;
  return j;
}

// Data set | Precision | Recall | F1-score, with raw counts alongside and a
// per-category breakdown below. '*' marks a ratio with a zero denominator.
inline std::string render_table(const std::vector<EvalReport>& reports) {
  std::size_t width = 8;
  for (const auto& r : reports) width = std::max(width, r.dataset_name.size());
  std::ostringstream out;
  char head[160];
  std::snprintf(head, sizeof head, "%-*s %10s %10s %10s %6s %6s %6s\n", static_cast<int>(width),
                "Data set", "Precision", "Recall", "F1-score", "TP", "FP", "FN");
  out << head;
  for (const auto& r : reports) out << detail::table_row(r.dataset_name, r.overall, width);
  for (const auto& r : reports) {
    out << "\n" << r.dataset_name << " by category\n";
    std::snprintf(head, sizeof head, "%-*s %10s %10s %10s %6s %6s %6s\n", static_cast<int>(width),
                  "Category", "Precision", "Recall", "F1-score", "TP", "FP", "FN");
    out << head;
    for (const auto& [cat, s] : r.per_category) {
      if (s.counts.tp + s.counts.fp + s.counts.fn == 0) continue;
      out << detail::table_row(std::string(category_name(cat)), s, width);
    }
  }
  out << "\n* denominator was zero; reported as 0\n";
  return out.str();
}

}  // namespace zugang

#endif  // ZUGANG_EVAL_HPP
