#ifndef ZUGANG_CONFIG_HPP
#define ZUGANG_CONFIG_HPP

// Engine configuration file: one `key = value` per line, '#' comments,
// optional double quotes around values. Relative paths are resolved against
// the directory holding the config file.
//
//   gazetteer.A   = gazetteer/A.txt
//   gazetteer.B   = gazetteer/B.txt
//   synonyms      = synonyms.txt
//   rules         = rules.jsonl
//   abbreviations = abbreviations.txt
//   output_format = jsonl          # or: text

#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "zugang/error.hpp"
#include "zugang/gazetteer.hpp"
#include "zugang/unicode.hpp"

namespace zugang {

enum class OutputFormat { jsonl, text };

struct EngineConfig {
  std::map<DatasetKind, std::string> gazetteers;
  std::string synonyms;
  std::string rules;
  std::string abbreviations;
  OutputFormat output_format = OutputFormat::jsonl;

  // Every referenced path that does not exist.
  std::vector<std::string> missing_files() const {
    std::vector<std::string> out;
    auto check = [&](const std::string& p) {
      if (!p.empty() && !std::filesystem::exists(p)) out.push_back(p);
    };
    for (const auto& [d, p] : gazetteers) check(p);
    check(synonyms);
    check(rules);
    check(abbreviations);
    return out;
  }

  void validate() const {
    auto missing = missing_files();
    if (missing.empty()) return;
    std::string msg = "missing file(s):";
    for (const auto& m : missing) msg += " " + m;
    throw ConfigError(msg);
  }

  friend bool operator==(const EngineConfig&, const EngineConfig&) = default;
};

inline EngineConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {},
                                 const std::string& source = "<config>") {
  EngineConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  auto resolve = [&](std::string_view v) {
    std::filesystem::path p{std::string(v)};
    if (p.empty() || p.is_absolute() || base_dir.empty()) return p.string();
    return (base_dir / p).lexically_normal().string();
  };
  while (std::getline(in, line)) {
    ++line_no;
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string_view::npos) throw ParseError(source, line_no, "expected 'key = value'");
    auto key = trim(t.substr(0, eq));
    auto value = trim(t.substr(eq + 1));
    if (!value.starts_with('"')) {
      auto hash = value.find(" #");
      if (hash != std::string_view::npos) value = trim(value.substr(0, hash));
    } else {
      auto close = value.find('"', 1);
      if (close == std::string_view::npos) throw ParseError(source, line_no, "unterminated quote");
      value = value.substr(1, close - 1);
    }

    if (key.starts_with("gazetteer.")) {
      auto d = parse_dataset(key.substr(10));
      if (!d) throw ParseError(source, line_no, "unknown dataset in '" + std::string(key) + "'");
      cfg.gazetteers[*d] = resolve(value);
    } else if (key == "synonyms") {
      cfg.synonyms = resolve(value);
    } else if (key == "rules") {
      cfg.rules = resolve(value);
    } else if (key == "abbreviations") {
      cfg.abbreviations = resolve(value);
    } else if (key == "output_format") {
      if (value == "jsonl") cfg.output_format = OutputFormat::jsonl;
      else if (value == "text") cfg.output_format = OutputFormat::text;
      else throw ParseError(source, line_no, "output_format must be jsonl or text");
    } else {
      throw ParseError(source, line_no, "unknown key '" + std::string(key) + "'");
    }
  }
  return cfg;
}

inline EngineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path);
  return parse_config(in, std::filesystem::path(path).parent_path(), path);
}

inline void write_config(std::ostream& out, const EngineConfig& cfg) {
  for (const auto& [d, p] : cfg.gazetteers) {
    out << "gazetteer." << dataset_letter(d) << " = \"" << p << "\"\n";
  }
  if (!cfg.synonyms.empty()) out << "synonyms = \"" << cfg.synonyms << "\"\n";
  if (!cfg.rules.empty()) out << "rules = \"" << cfg.rules << "\"\n";
  if (!cfg.abbreviations.empty()) out << "abbreviations = \"" << cfg.abbreviations << "\"\n";
  out << "output_format = " << (cfg.output_format == OutputFormat::jsonl ? "jsonl" : "text") << "\n";
}

}  // namespace zugang

#endif  // ZUGANG_CONFIG_HPP
