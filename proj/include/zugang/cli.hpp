#ifndef ZUGANG_CLI_HPP
#define ZUGANG_CLI_HPP

// Subcommand bodies for the `zugang` tool. They take streams instead of
// touching stdout directly so tests can drive them in-process.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "zugang/config.hpp"
#include "zugang/engine.hpp"
#include "zugang/eval.hpp"

namespace zugang::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Loads and validates every configured resource and prints entry counts.
inline int cmd_ingest(const EngineConfig& cfg, std::ostream& out, std::ostream& err) {
  int status = kExitOk;
  for (const auto& m : cfg.missing_files()) {
    err << "error: missing file " << m << "\n";
    status = kExitData;
  }
  if (status != kExitOk) return status;

  auto attempt = [&](const std::string& what, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      err << "error: " << what << ": " << e.what() << "\n";
      status = kExitData;
    }
  };

  Gazetteer all;
  for (auto d : kAllDatasets) {
    auto it = cfg.gazetteers.find(d);
    if (it == cfg.gazetteers.end()) {
      err << "warning: dataset " << dataset_letter(d) << " not configured\n";
      continue;
    }
    attempt(std::string("dataset ") + dataset_letter(d), [&] {
      auto g = load_gazetteer(it->second, d);
      out << "dataset " << dataset_letter(d) << ": " << g.size() << " entries ("
          << g.preparation_count() << " preparation courses)\n";
      if (g.preparation_count() > 0) {
        err << "warning: dataset " << dataset_letter(d) << ": " << g.preparation_count()
            << " preparation course(s) will be omitted\n";
      }
      all.merge(g);
    });
  }
  out << "total: " << all.size() << " entries\n";
  if (!cfg.synonyms.empty()) {
    attempt("synonyms", [&] {
      auto lex = load_synonym_lexicon(cfg.synonyms);
      out << "synonyms: " << lex.size() << " groups, " << lex.term_count() << " terms\n";
    });
  } else {
    err << "warning: no synonym lexicon configured\n";
  }
  if (!cfg.rules.empty()) {
    attempt("rules", [&] {
      auto rs = compile_rules(load_rule_pack(cfg.rules));
      out << "rules: " << rs.size() << " rules\n";
    });
  } else {
    err << "warning: no rule pack configured\n";
  }
  if (!cfg.abbreviations.empty()) {
    attempt("abbreviations", [&] {
      auto t = load_abbreviations(cfg.abbreviations);
      out << "abbreviations: " << t.abbreviations().size() << "\n";
    });
  }
  return status;
}

inline nlohmann::ordered_json to_json(const LabelVariant& v) {
  nlohmann::ordered_json j;
  j["entry_id"] = v.entry_id;
  j["surface"] = v.surface;
  j["origin"] = origin_name(v.origin);
  return j;
}

// Variant dump as JSON lines on `out`; counts per origin on `err`.
inline int cmd_expand(const EngineConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    Gazetteer all;
    for (const auto& [d, path] : cfg.gazetteers) all.merge(load_gazetteer(path, d));
    auto filtered = filter_preparation(all);
    SynonymLexicon lex;
    if (!cfg.synonyms.empty()) lex = load_synonym_lexicon(cfg.synonyms);
    std::vector<ExpansionWarning> warnings;
    auto variants = expand_all(filtered, lex, &warnings);
    std::map<VariantOrigin, std::size_t> counts;
    for (const auto& v : variants) {
      out << to_json(v).dump() << "\n";
      ++counts[v.origin];
    }
    for (const auto& w : warnings) err << "warning: " << w.entry_id << ": " << w.message << "\n";
    err << "entries: " << filtered.size() << " (" << all.size() - filtered.size()
        << " preparation courses omitted)\n";
    for (auto o : kAllOrigins) err << origin_name(o) << ": " << counts[o] << "\n";
    err << "variants: " << variants.size() << "\n";
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

enum class ExtractInput { html, text, jsonl };

struct ExtractOptions {
  ExtractInput format = ExtractInput::jsonl;
  std::string doc_id = "stdin";  // html/text input is a single document
  unsigned jobs = 1;
  std::size_t batch = 256;
};

inline std::string render_result(const ExtractionResult& r, OutputFormat f) {
  if (f == OutputFormat::jsonl) return to_json(r).dump() + "\n";
  std::string out;
  for (const auto& a : r.requirements) {
    std::string ids;
    for (const auto& id : a.canonical_ids) ids += (ids.empty() ? "" : ",") + id;
    out += r.doc_id + "\t" + std::string(category_name(a.category)) + "\t" + ids + "\t" + a.text + "\n";
  }
  return out;
}

inline std::string error_record(const std::string& doc_id, const std::string& message) {
  nlohmann::ordered_json j;
  j["doc_id"] = doc_id;
  j["error"] = message;
  return j.dump() + "\n";
}

// Runs the full pipeline per document. JSON-lines input is streamed in
// batches; with jobs > 1 a batch is processed concurrently and written back
// in input order. Returns kExitData if any document failed; failed documents
// produce an error record instead of a result.
inline int cmd_extract(const Engine& engine, const EngineConfig& cfg, std::istream& in,
                       const ExtractOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.format != ExtractInput::jsonl) {
    std::ostringstream buf;
    buf << in.rdbuf();
    auto fmt = opt.format == ExtractInput::html ? InputFormat::html : InputFormat::text;
    try {
      out << render_result(engine.process(opt.doc_id, buf.str(), fmt), cfg.output_format);
      return kExitOk;
    } catch (const Error& e) {
      out << error_record(opt.doc_id, e.what());
      err << "error: " << opt.doc_id << ": " << e.what() << "\n";
      return kExitData;
    }
  }

  std::atomic<bool> failed{false};
  auto process_line = [&](std::size_t line_no, const std::string& line) -> std::string {
    std::string doc_id = "line:" + std::to_string(line_no);
    try {
      auto j = nlohmann::json::parse(line);
      if (!j.is_object() || !j.contains("doc_id") || !j["doc_id"].is_string()) {
        throw ValidationError("record without string doc_id");
      }
      doc_id = j["doc_id"].get<std::string>();
      if (!j.contains("text") || !j["text"].is_string()) throw ValidationError("record without string text");
      return render_result(engine.process(doc_id, j["text"].get<std::string>(), InputFormat::html),
                           cfg.output_format);
    } catch (const std::exception& e) {
      failed = true;
      return error_record(doc_id, e.what());
    }
  };

  const unsigned jobs = std::max(1u, opt.jobs);
  std::vector<std::pair<std::size_t, std::string>> batch;
  std::vector<std::string> results;
  auto flush = [&] {
    results.assign(batch.size(), {});
    if (jobs == 1 || batch.size() < 2) {
      for (std::size_t i = 0; i < batch.size(); ++i) results[i] = process_line(batch[i].first, batch[i].second);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::jthread> workers;
      for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
          for (auto i = next++; i < batch.size(); i = next++) {
            results[i] = process_line(batch[i].first, batch[i].second);
          }
        });
      }
    }
    for (const auto& r : results) out << r;
    batch.clear();
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    batch.emplace_back(line_no, line);
    if (batch.size() >= opt.batch * jobs) flush();
  }
  flush();
  if (failed) {
    err << "error: some documents failed; see error records\n";
    return kExitData;
  }
  return kExitOk;
}

struct EvalInput {
  std::string name;
  std::string predictions;
  std::string gold;
};

inline int cmd_eval(const std::vector<EvalInput>& inputs, bool json, std::ostream& out,
                    std::ostream& err) {
  std::vector<EvalReport> reports;
  try {
    for (const auto& in : inputs) {
      EvalDataset ds{in.name, load_predictions(in.predictions), load_gold(in.gold)};
      reports.push_back(evaluate(ds));
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  for (const auto& r : reports) {
    if (!r.unscored_docs.empty()) {
      err << "warning: " << r.dataset_name << ": " << r.unscored_docs.size()
          << " predicted document(s) not in gold, ignored\n";
    }
  }
  if (json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : reports) j.push_back(to_json(r));
    out << j.dump(2) << "\n";
  } else {
    out << render_table(reports);
  }
  return kExitOk;
}

}  // namespace zugang::cli

#endif  // ZUGANG_CLI_HPP
