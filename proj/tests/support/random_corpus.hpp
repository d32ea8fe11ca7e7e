#pragma once

// Random toy corpora with known name positions.

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "chaplin/cast.hpp"
#include "chaplin/corpus.hpp"
#include "oracles.hpp"

namespace toy {

struct ToyCorpus {
  chaplin::Corpus corpus;
  chaplin::Cast cast;
  std::vector<oracle::UnitPositions> truth;  // per unit, per name
  std::vector<std::size_t> counts;           // per name, whole corpus
};

inline std::string random_word(std::mt19937_64& rng, const char* alphabet, std::size_t min_len, std::size_t max_len) {
  const std::string a = alphabet;
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, a.size() - 1);
  std::string w;
  const auto n = len(rng);
  for (std::size_t i = 0; i < n; ++i) w += a[pick(rng)];
  return w;
}

// Names all start with "q"; filler words never contain a q, so the two never
// collide after case folding.
inline ToyCorpus make(std::uint64_t seed, std::size_t max_tokens = 2000, std::size_t max_names = 10) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  std::bernoulli_distribution coin(0.5);

  const std::size_t n_names = uniform(1, max_names);
  std::vector<chaplin::NameEntry> entries;
  std::vector<std::vector<std::vector<std::string>>> forms;  // per name: variant word lists
  for (std::size_t k = 0; k < n_names; ++k) {
    std::string base;
    do {
      base = "Q" + random_word(rng, "abcdefghijklmnoprstuvwxyz", 2, 6);
      bool clash = false;
      for (const auto& e : entries) clash = clash || chaplin::unicode::fold(e.canonical) == chaplin::unicode::fold(base);
      if (!clash) break;
    } while (true);
    chaplin::NameEntry e;
    e.canonical = base;
    e.variants.push_back(base);
    std::vector<std::vector<std::string>> f{{base}};
    if (coin(rng)) {
      e.variants.push_back(base + "'s");
      f.push_back({base + "'s"});
    }
    if (coin(rng)) {
      e.variants.push_back("Sir " + base);
      f.push_back({"Sir", base});
    }
    entries.push_back(e);
    forms.push_back(f);
  }

  ToyCorpus out;
  out.cast = chaplin::Cast(entries);
  out.counts.assign(n_names, 0);

  const std::size_t n_units = uniform(1, 4);
  const std::size_t total = uniform(n_units, max_tokens);
  const double density = std::uniform_real_distribution<double>(0.02, 0.3)(rng);
  const char* seps[] = {" ", ", ", ". ", "\n", " -- ", "! ", "; "};

  for (std::size_t u = 0; u < n_units; ++u) {
    const std::size_t budget = total / n_units;
    oracle::UnitPositions positions(n_names);
    std::vector<std::string> words;
    while (words.size() < budget) {
      if (std::bernoulli_distribution(density)(rng) && words.size() + 2 <= budget) {
        const auto k = uniform(0, n_names - 1);
        const auto& form = forms[k][uniform(0, forms[k].size() - 1)];
        positions[k].push_back(words.size());
        ++out.counts[k];
        for (auto w : form) {
          if (coin(rng) && coin(rng)) w = oracle::ascii_lower(w);
          words.push_back(w);
        }
      } else {
        auto w = random_word(rng, "abcdefghijklmnoprstuvwxyz", 1, 8);
        if (w == "sir") w = "sirs";
        words.push_back(w);
      }
    }
    std::string text;
    for (const auto& w : words) {
      text += w;
      text += seps[uniform(0, std::size(seps) - 1)];
    }
    out.corpus.units.push_back(chaplin::make_unit("u" + std::to_string(u + 1), u + 1, text));
    out.truth.push_back(std::move(positions));
  }
  return out;
}

}  // namespace toy
