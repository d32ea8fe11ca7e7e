#pragma once

// Raw-word extraction and the curated cast of names with their variants.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "chaplin/corpus.hpp"
#include "chaplin/errors.hpp"
#include "chaplin/unicode.hpp"

namespace chaplin {

struct ExtractionConstraints {
  std::size_t min_length = 3;
  bool capitalized_only = true;
  std::size_t min_count = 2;

  void validate() const {
    if (min_length < 1) throw ParameterError("min_length must be >= 1");
    if (min_count < 1) throw ParameterError("min_count must be >= 1");
  }

  friend bool operator==(const ExtractionConstraints&, const ExtractionConstraints&) = default;
};

struct RawWordEntry {
  std::string folded;
  std::size_t count = 0;
  std::string sample_surface;  // most frequent spelling; ties go to the smaller string

  friend bool operator==(const RawWordEntry&, const RawWordEntry&) = default;
};

inline std::vector<RawWordEntry> extract_raw_words(const Corpus& corpus, const ExtractionConstraints& constraints) {
  constraints.validate();
  struct Tally {
    std::size_t count = 0;
    bool capitalized = false;
    std::map<std::string, std::size_t> spellings;
  };
  std::unordered_map<std::string, Tally> tallies;
  for (const auto& unit : corpus.units) {
    for (const auto& tok : unit.tokens) {
      auto& t = tallies[tok.folded];
      ++t.count;
      t.capitalized = t.capitalized || unicode::starts_upper(tok.surface);
      ++t.spellings[tok.surface];
    }
  }

  std::vector<RawWordEntry> out;
  for (auto& [folded, t] : tallies) {
    if (t.count < constraints.min_count) continue;
    if (constraints.capitalized_only && !t.capitalized) continue;
    // Surface length; folding can change it (e.g. final sigma), so measure a spelling.
    const auto& first_spelling = t.spellings.begin()->first;
    if (unicode::length(first_spelling) < constraints.min_length) continue;
    const auto best = std::max_element(t.spellings.begin(), t.spellings.end(),
                                       [](const auto& a, const auto& b) { return a.second < b.second; });
    out.push_back(RawWordEntry{folded, t.count, best->first});
  }
  std::sort(out.begin(), out.end(), [](const RawWordEntry& a, const RawWordEntry& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.folded < b.folded;
  });
  return out;
}

// TSV lines: folded<TAB>count<TAB>sample_surface
inline std::string format_raw_words_tsv(const std::vector<RawWordEntry>& words) {
  std::string out;
  for (const auto& w : words) {
    out += w.folded;
    out += '\t';
    out += std::to_string(w.count);
    out += '\t';
    out += w.sample_surface;
    out += '\n';
  }
  return out;
}

inline nlohmann::ordered_json raw_words_to_json(const std::vector<RawWordEntry>& words) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& w : words) {
    arr.push_back({{"folded", w.folded}, {"count", w.count}, {"sample_surface", w.sample_surface}});
  }
  return arr;
}

enum class NameKind { character, place, motif };

inline std::string_view to_string(NameKind kind) {
  switch (kind) {
    case NameKind::place: return "place";
    case NameKind::motif: return "motif";
    case NameKind::character: break;
  }
  return "character";
}

inline std::optional<NameKind> parse_kind(std::string_view s) {
  if (s == "character") return NameKind::character;
  if (s == "place") return NameKind::place;
  if (s == "motif") return NameKind::motif;
  return std::nullopt;
}

inline constexpr std::size_t kMaxVariantWords = 4;

struct NameEntry {
  std::string canonical;
  NameKind kind = NameKind::character;
  std::vector<std::string> variants;  // verbatim phrases, words separated by one space

  friend bool operator==(const NameEntry&, const NameEntry&) = default;
};

namespace detail {

inline std::vector<std::string_view> split_words(std::string_view phrase) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < phrase.size()) {
    while (i < phrase.size() && (phrase[i] == ' ' || phrase[i] == '\t')) ++i;
    const std::size_t b = i;
    while (i < phrase.size() && phrase[i] != ' ' && phrase[i] != '\t') ++i;
    if (i > b) words.push_back(phrase.substr(b, i - b));
  }
  return words;
}

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

// Returns an error message, or nullopt when the phrase is a usable variant.
inline std::optional<std::string> variant_problem(std::string_view phrase) {
  const auto words = split_words(phrase);
  if (words.empty()) return "empty variant";
  if (words.size() > kMaxVariantWords) {
    return "variant \"" + std::string(phrase) + "\" has more than " + std::to_string(kMaxVariantWords) + " words";
  }
  for (auto w : words) {
    const auto toks = tokenize(w);
    if (toks.size() != 1 || toks.front().surface != w) {
      return "variant word \"" + std::string(w) + "\" is not a single word token";
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Case-folded match key of a variant: folded words joined by single spaces.
inline std::string variant_key(std::string_view phrase) {
  std::string key;
  for (auto w : detail::split_words(phrase)) {
    if (!key.empty()) key += ' ';
    key += unicode::fold(w);
  }
  return key;
}

class Cast;
inline Cast parse_cast_file(std::string_view text);

// An ordered, validated list of names. Construction enforces: unique canonical
// names (case-insensitive), non-empty variant lists, well-formed variants, and
// no variant shared between two entries.
class Cast {
 public:
  Cast() = default;

  explicit Cast(std::vector<NameEntry> entries) : entries_(std::move(entries)) {
    std::unordered_map<std::string, std::size_t> canon;
    std::unordered_map<std::string, std::size_t> owner;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      check_entry(i, canon, owner, 0);
    }
  }

  const std::vector<NameEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const NameEntry& operator[](std::size_t i) const { return entries_[i]; }

  std::optional<std::size_t> find(std::string_view canonical) const {
    const auto key = unicode::fold(canonical);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (unicode::fold(entries_[i].canonical) == key) return i;
    }
    return std::nullopt;
  }

  friend bool operator==(const Cast&, const Cast&) = default;

 private:
  friend Cast parse_cast_file(std::string_view text);

  struct Unchecked {};
  Cast(std::vector<NameEntry> entries, Unchecked) : entries_(std::move(entries)) {}

  void check_entry(std::size_t i, std::unordered_map<std::string, std::size_t>& canon,
                   std::unordered_map<std::string, std::size_t>& owner, std::size_t line) const {
    const auto& e = entries_[i];
    if (detail::trim(e.canonical) != e.canonical || e.canonical.empty() ||
        e.canonical.find_first_of(":@\r\n") != std::string::npos) {
      throw CastError("invalid canonical name \"" + e.canonical + "\"", line, 0, {e.canonical});
    }
    if (auto [it, fresh] = canon.emplace(unicode::fold(e.canonical), i); !fresh) {
      throw CastError("duplicate canonical name \"" + e.canonical + "\"", line, 0,
                      {entries_[it->second].canonical, e.canonical});
    }
    if (e.variants.empty()) throw CastError("entry " + e.canonical + " has no variants", line, 0, {e.canonical});
    for (const auto& v : e.variants) {
      if (auto problem = detail::variant_problem(v)) throw CastError(*problem + " in " + e.canonical, line, 0, {e.canonical});
      const auto key = variant_key(v);
      auto [it, fresh] = owner.emplace(key, i);
      if (fresh) continue;
      if (it->second == i) {
        throw CastError("duplicate variant \"" + v + "\" in " + e.canonical, line, 0, {e.canonical});
      }
      const auto& other = entries_[it->second].canonical;
      throw CastError("variant \"" + v + "\" claimed by both " + other + " and " + e.canonical, line, 0,
                      {other, e.canonical});
    }
  }

  std::vector<NameEntry> entries_;
};

// Cast file grammar, one entry per line:
//   CANONICAL [@place|@motif] : variant ( | variant )*
// '#' starts a comment line; blank lines are ignored.
inline Cast parse_cast_file(std::string_view text) {
  std::vector<NameEntry> entries;
  std::unordered_map<std::string, std::size_t> canon;
  std::unordered_map<std::string, std::size_t> owner;
  Cast cast({}, Cast::Unchecked{});

  auto column_of = [](std::string_view line, std::size_t byte) { return unicode::length(line.substr(0, byte)) + 1; };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;

    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw CastError("expected ':' after name", line_no, column_of(line, line.size()));
    }

    NameEntry entry;
    std::string_view head = detail::trim(line.substr(0, colon));
    if (const auto at = head.find('@'); at != std::string_view::npos) {
      const auto tag_col = column_of(line, static_cast<std::size_t>(head.data() - line.data()) + at);
      const auto tag = head.substr(at + 1);
      const auto kind = parse_kind(tag);
      if (!kind) throw CastError("unknown tag \"@" + std::string(tag) + "\"", line_no, tag_col);
      entry.kind = *kind;
      head = detail::trim(head.substr(0, at));
    }
    if (head.empty()) {
      throw CastError("missing canonical name", line_no, column_of(line, line.find_first_not_of(" \t")));
    }
    entry.canonical = std::string(head);

    std::size_t vb = colon + 1;
    while (true) {
      const auto bar = line.find('|', vb);
      const auto ve = bar == std::string_view::npos ? line.size() : bar;
      const auto raw = line.substr(vb, ve - vb);
      const auto phrase = detail::trim(raw);
      if (auto problem = detail::variant_problem(phrase)) {
        const auto lead = raw.find_first_not_of(" \t");
        throw CastError(*problem, line_no, column_of(line, lead == std::string_view::npos ? vb : vb + lead));
      }
      std::string normalized;
      for (auto w : detail::split_words(phrase)) {
        if (!normalized.empty()) normalized += ' ';
        normalized += w;
      }
      entry.variants.push_back(std::move(normalized));
      if (bar == std::string_view::npos) break;
      vb = bar + 1;
    }

    cast.entries_.push_back(std::move(entry));
    cast.check_entry(cast.entries_.size() - 1, canon, owner, line_no);
  }
  return cast;
}

inline std::string format_cast_file(const Cast& cast) {
  std::string out;
  for (const auto& e : cast.entries()) {
    out += e.canonical;
    if (e.kind != NameKind::character) {
      out += " @";
      out += to_string(e.kind);
    }
    out += ':';
    for (std::size_t i = 0; i < e.variants.size(); ++i) {
      out += i == 0 ? " " : " | ";
      out += e.variants[i];
    }
    out += '\n';
  }
  return out;
}

inline nlohmann::ordered_json cast_to_json(const Cast& cast) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& e : cast.entries()) {
    arr.push_back({{"canonical", e.canonical}, {"kind", to_string(e.kind)}, {"variants", e.variants}});
  }
  return arr;
}

// Accepts the array produced by cast_to_json. Throws CastError on shape or
// invariant problems.
inline Cast cast_from_json(const nlohmann::json& arr) {
  if (!arr.is_array()) throw CastError("cast must be a JSON array of entries");
  std::vector<NameEntry> entries;
  for (const auto& item : arr) {
    if (!item.is_object() || !item.contains("canonical") || !item["canonical"].is_string() ||
        !item.contains("variants") || !item["variants"].is_array()) {
      throw CastError("each entry needs a string \"canonical\" and an array \"variants\"");
    }
    NameEntry e;
    e.canonical = item["canonical"].get<std::string>();
    if (item.contains("kind")) {
      if (!item["kind"].is_string()) throw CastError("\"kind\" must be a string", 0, 0, {e.canonical});
      const auto kind = parse_kind(item["kind"].get<std::string>());
      if (!kind) throw CastError("unknown kind for " + e.canonical, 0, 0, {e.canonical});
      e.kind = *kind;
    }
    for (const auto& v : item["variants"]) {
      if (!v.is_string()) throw CastError("variants must be strings", 0, 0, {e.canonical});
      e.variants.push_back(std::string(detail::trim(v.get<std::string>())));
    }
    entries.push_back(std::move(e));
  }
  return Cast(std::move(entries));
}

}  // namespace chaplin
