#ifndef ZUGANG_GAZETTEER_HPP
#define ZUGANG_GAZETTEER_HPP

#include <array>
#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "zugang/error.hpp"
#include "zugang/unicode.hpp"

namespace zugang {

// The four taxonomy sections: A degrees, B occupations, C continuing
// professional development, K skills.
enum class DatasetKind { A, B, C, K };

inline constexpr std::array<DatasetKind, 4> kAllDatasets = {
    DatasetKind::A, DatasetKind::B, DatasetKind::C, DatasetKind::K};

inline char dataset_letter(DatasetKind d) {
  switch (d) {
    case DatasetKind::A: return 'A';
    case DatasetKind::B: return 'B';
    case DatasetKind::C: return 'C';
    case DatasetKind::K: return 'K';
  }
  return '?';
}

inline std::optional<DatasetKind> parse_dataset(std::string_view s) {
  if (s.size() != 1) return std::nullopt;
  switch (s[0]) {
    case 'A': case 'a': return DatasetKind::A;
    case 'B': case 'b': return DatasetKind::B;
    case 'C': case 'c': return DatasetKind::C;
    case 'K': case 'k': return DatasetKind::K;
    default: return std::nullopt;
  }
}

inline constexpr std::string_view kPreparationMarker = "vorbereitung";

inline bool is_preparation_label(std::string_view label) {
  return fold_case(label).find(kPreparationMarker) != std::string::npos;
}

struct GazetteerEntry {
  std::string id;
  std::string label;
  DatasetKind dataset = DatasetKind::A;
  bool is_preparation = false;

  friend bool operator==(const GazetteerEntry&, const GazetteerEntry&) = default;
};

// Immutable once loaded. Entries keep file order; ids are unique.
class Gazetteer {
 public:
  Gazetteer() = default;

  // Throws ValidationError on a duplicate id.
  void add(GazetteerEntry entry) {
    auto [it, inserted] = by_id_.emplace(entry.id, entries_.size());
    if (!inserted) throw ValidationError("duplicate id '" + entry.id + "'");
    entries_.push_back(std::move(entry));
  }

  void merge(const Gazetteer& other) {
    for (const auto& e : other.entries_) add(e);
  }

  const std::vector<GazetteerEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const GazetteerEntry* find(std::string_view id) const {
    auto it = by_id_.find(std::string(id));
    return it == by_id_.end() ? nullptr : &entries_[it->second];
  }

  std::size_t count(DatasetKind d) const {
    std::size_t n = 0;
    for (const auto& e : entries_) n += e.dataset == d;
    return n;
  }

  std::size_t preparation_count() const {
    std::size_t n = 0;
    for (const auto& e : entries_) n += e.is_preparation;
    return n;
  }

  friend bool operator==(const Gazetteer& a, const Gazetteer& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<GazetteerEntry> entries_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

// Parses `<id>|<label>|` records. Blank lines are skipped; the trailing pipe
// is optional. `source` only feeds error messages.
inline Gazetteer parse_gazetteer(std::istream& in, DatasetKind dataset,
                                 const std::string& source = "<stream>") {
  Gazetteer g;
  std::string line;
  std::size_t line_no = 0;
  const char letter = dataset_letter(dataset);
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    if (trim(view).empty()) continue;

    auto bar = view.find('|');
    if (bar == std::string_view::npos) throw ParseError(source, line_no, "missing '|' separator");
    auto id = trim(view.substr(0, bar));
    if (id.empty()) throw ParseError(source, line_no, "empty id");
    if (id.size() < 2 || id[0] != letter || id[1] != ' ') {
      throw ParseError(source, line_no,
                       "id '" + std::string(id) + "' does not start with '" +
                           std::string(1, letter) + " '");
    }

    auto rest = view.substr(bar + 1);
    auto bar2 = rest.find('|');
    auto label = trim(rest.substr(0, bar2));
    if (bar2 != std::string_view::npos && !trim(rest.substr(bar2 + 1)).empty()) {
      throw ParseError(source, line_no, "unexpected field after label");
    }
    if (label.empty()) throw ParseError(source, line_no, "empty label");

    GazetteerEntry entry{std::string(id), std::string(label), dataset,
                         is_preparation_label(label)};
    try {
      g.add(std::move(entry));
    } catch (const ValidationError&) {
      throw ValidationError(source + ":" + std::to_string(line_no) + ": duplicate id '" +
                            std::string(id) + "'");
    }
  }
  return g;
}

inline Gazetteer load_gazetteer(const std::string& path, DatasetKind dataset) {
  std::ifstream in(path);
  if (!in) throw IoError(path);
  return parse_gazetteer(in, dataset, path);
}

inline void write_gazetteer(std::ostream& out, const Gazetteer& g) {
  for (const auto& e : g.entries()) out << e.id << '|' << e.label << "|\n";
}

// Drops preparation courses; they do not confer the qualification itself.
inline Gazetteer filter_preparation(const Gazetteer& g) {
  Gazetteer out;
  for (const auto& e : g.entries()) {
    if (!e.is_preparation) out.add(e);
  }
  return out;
}

}  // namespace zugang

#endif  // ZUGANG_GAZETTEER_HPP
