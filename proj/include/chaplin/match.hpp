#pragma once

// Greedy longest-match scan of cast variants over the corpus tokens.

#include <algorithm>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "chaplin/cast.hpp"
#include "chaplin/corpus.hpp"

namespace chaplin {

struct Occurrence {
  std::size_t name_id = 0;     // index into the cast
  std::size_t unit_index = 0;  // 1-based
  std::size_t position = 0;    // first token of the matched phrase
  std::size_t span = 1;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

struct NameInfo {
  std::string canonical;
  NameKind kind = NameKind::character;
};

// Per unit, per name: position-sorted occurrences.
struct UnitOccurrences {
  std::size_t unit_index = 0;
  std::size_t token_count = 0;
  std::vector<std::vector<Occurrence>> by_name;
};

struct OccurrenceIndex {
  std::vector<NameInfo> names;
  std::vector<UnitOccurrences> units;  // same order as the corpus

  const UnitOccurrences* unit(std::size_t index) const {
    if (index == 0 || index > units.size()) return nullptr;
    return &units[index - 1];
  }

  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& u : units)
      for (const auto& list : u.by_name) n += list.size();
    return n;
  }
};

inline UnitOccurrences match_unit(const TextUnit& unit, const std::unordered_map<std::string, std::size_t>& phrases,
                                  std::size_t max_words, std::size_t name_count) {
  UnitOccurrences out{unit.index, unit.tokens.size(), std::vector<std::vector<Occurrence>>(name_count)};
  const auto& toks = unit.tokens;
  std::string key;
  std::size_t p = 0;
  while (p < toks.size()) {
    std::size_t matched = 0;
    for (std::size_t len = std::min(max_words, toks.size() - p); len >= 1; --len) {
      key = toks[p].folded;
      for (std::size_t k = 1; k < len; ++k) {
        key += ' ';
        key += toks[p + k].folded;
      }
      if (auto it = phrases.find(key); it != phrases.end()) {
        out.by_name[it->second].push_back(Occurrence{it->second, unit.index, p, len});
        matched = len;
        break;
      }
    }
    p += matched == 0 ? 1 : matched;
  }
  return out;
}

inline OccurrenceIndex match_occurrences(const Corpus& corpus, const Cast& cast) {
  OccurrenceIndex index;
  for (const auto& e : cast.entries()) index.names.push_back(NameInfo{e.canonical, e.kind});

  std::unordered_map<std::string, std::size_t> phrases;
  std::size_t max_words = 0;
  for (std::size_t i = 0; i < cast.size(); ++i) {
    for (const auto& v : cast[i].variants) {
      const auto key = variant_key(v);
      phrases.emplace(key, i);
      max_words = std::max(max_words, static_cast<std::size_t>(std::count(key.begin(), key.end(), ' ') + 1));
    }
  }

  index.units.reserve(corpus.units.size());
  for (const auto& unit : corpus.units) index.units.push_back(match_unit(unit, phrases, max_words, cast.size()));
  return index;
}

}  // namespace chaplin
