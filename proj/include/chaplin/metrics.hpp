#pragma once

// Narrative strength F (normalized occurrence counts) and interaction I
// (max-normalized sums of a proximity kernel over occurrence couples).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chaplin/defaults.hpp"
#include "chaplin/errors.hpp"
#include "chaplin/match.hpp"

namespace chaplin {

class AnalysisScope {
 public:
  static AnalysisScope whole(std::size_t unit_count) {
    AnalysisScope s;
    for (std::size_t i = 1; i <= unit_count; ++i) s.units_.push_back(i);
    s.label_ = "whole";
    return s;
  }

  static AnalysisScope unit(std::size_t index, std::string label = {}) {
    AnalysisScope s;
    s.units_.push_back(index);
    s.label_ = label.empty() ? "unit " + std::to_string(index) : std::move(label);
    return s;
  }

  // Sorted, de-duplicated 1-based indices.
  static AnalysisScope units(std::vector<std::size_t> indices, std::string label) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    AnalysisScope s;
    s.units_ = std::move(indices);
    s.label_ = std::move(label);
    return s;
  }

  const std::vector<std::size_t>& unit_indices() const noexcept { return units_; }
  const std::string& label() const noexcept { return label_; }

  void validate(const OccurrenceIndex& index) const {
    if (units_.empty()) throw ParameterError("analysis scope is empty");
    for (auto u : units_) {
      if (index.unit(u) == nullptr) throw ParameterError("unknown unit index " + std::to_string(u));
    }
  }

 private:
  std::vector<std::size_t> units_;
  std::string label_;
};

struct ProximityKernel {
  enum class Kind { rectangular, exponential };

  Kind kind = Kind::rectangular;
  std::size_t window = kDefaultWindow;
  double decay_length = kDefaultDecayLength;

  static ProximityKernel rectangular(std::size_t window) { return {Kind::rectangular, window, kDefaultDecayLength}; }
  static ProximityKernel exponential(double decay) { return {Kind::exponential, kDefaultWindow, decay}; }

  void validate() const {
    if (kind == Kind::rectangular && window < 1) throw ParameterError("window must be >= 1");
    if (kind == Kind::exponential && !(decay_length > 0.0 && std::isfinite(decay_length))) {
      throw ParameterError("decay length must be > 0");
    }
  }

  std::string describe() const {
    if (kind == Kind::rectangular) return "rect(window=" + std::to_string(window) + ")";
    char buf[64];
    std::snprintf(buf, sizeof buf, "exp(decay=%g)", decay_length);
    return buf;
  }
};

inline double proximity(std::size_t delta, const ProximityKernel& kernel) {
  if (kernel.kind == ProximityKernel::Kind::rectangular) return delta <= kernel.window ? 1.0 : 0.0;
  return std::exp(-static_cast<double>(delta) / kernel.decay_length);
}

struct FrequencyEntry {
  NameInfo name;
  std::size_t raw_count = 0;
  double score = 0.0;
};

// One entry per cast name, in cast order.
struct FrequencyTable {
  std::vector<FrequencyEntry> entries;

  const FrequencyEntry* find(std::string_view canonical) const {
    for (const auto& e : entries)
      if (e.name.canonical == canonical) return &e;
    return nullptr;
  }

  double score(std::string_view canonical) const {
    const auto* e = find(canonical);
    return e ? e->score : 0.0;
  }
};

// Upper-triangular storage over cast indices; never holds a diagonal.
class InteractionMatrix {
 public:
  struct Cell {
    double raw_weight = 0.0;
    double score = 0.0;
  };

  InteractionMatrix() = default;
  explicit InteractionMatrix(std::vector<NameInfo> names)
      : names_(std::move(names)), cells_(names_.size() * (names_.size() - (names_.empty() ? 0 : 1)) / 2) {}

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<NameInfo>& names() const noexcept { return names_; }

  // Symmetric access; a == b is not a pair.
  const Cell& at(std::size_t a, std::size_t b) const { return cells_[slot(a, b)]; }
  Cell& at(std::size_t a, std::size_t b) { return cells_[slot(a, b)]; }

  double score(std::size_t a, std::size_t b) const { return at(a, b).score; }
  double raw_weight(std::size_t a, std::size_t b) const { return at(a, b).raw_weight; }

  std::optional<double> score(std::string_view a, std::string_view b) const {
    const auto ia = index_of(a);
    const auto ib = index_of(b);
    if (!ia || !ib || *ia == *ib) return std::nullopt;
    return score(*ia, *ib);
  }

  std::optional<std::size_t> index_of(std::string_view canonical) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i].canonical == canonical) return i;
    return std::nullopt;
  }

 private:
  std::size_t slot(std::size_t a, std::size_t b) const {
    if (a == b || a >= names_.size() || b >= names_.size()) throw std::out_of_range("invalid name pair");
    if (a > b) std::swap(a, b);
    // Row a holds pairs (a, a+1) .. (a, n-1).
    const std::size_t n = names_.size();
    return a * (2 * n - a - 1) / 2 + (b - a - 1);
  }

  std::vector<NameInfo> names_;
  std::vector<Cell> cells_;
};

inline FrequencyTable compute_frequency(const OccurrenceIndex& index, const AnalysisScope& scope) {
  scope.validate(index);
  FrequencyTable table;
  for (const auto& n : index.names) table.entries.push_back(FrequencyEntry{n, 0, 0.0});
  for (auto u : scope.unit_indices()) {
    const auto& unit = *index.unit(u);
    for (std::size_t k = 0; k < unit.by_name.size(); ++k) table.entries[k].raw_count += unit.by_name[k].size();
  }
  std::size_t max_count = 0;
  for (const auto& e : table.entries) max_count = std::max(max_count, e.raw_count);
  if (max_count > 0) {
    for (auto& e : table.entries) e.score = static_cast<double>(e.raw_count) / static_cast<double>(max_count);
  }
  return table;
}

namespace detail {

// Number of couples (x in a, y in b) with |x - y| <= window; both lists sorted.
inline double rectangular_couples(const std::vector<Occurrence>& a, const std::vector<Occurrence>& b,
                                  std::size_t window) {
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::size_t total = 0;
  for (const auto& x : a) {
    const std::size_t low = x.position >= window ? x.position - window : 0;
    const std::size_t high = x.position + window;
    while (lo < b.size() && b[lo].position < low) ++lo;
    if (hi < lo) hi = lo;
    while (hi < b.size() && b[hi].position <= high) ++hi;
    total += hi - lo;
  }
  return static_cast<double>(total);
}

// Sum of exp(-|x - y| / decay) over all couples, in one merged pass. Each list
// carries a running sum of exp(-(p - y) / decay) over its elements y seen so
// far, where p is the current sweep position.
inline double exponential_couples(const std::vector<Occurrence>& a, const std::vector<Occurrence>& b, double decay) {
  double acc_a = 0.0;
  double acc_b = 0.0;
  double total = 0.0;
  std::size_t last = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    const bool take_a = j >= b.size() || (i < a.size() && a[i].position <= b[j].position);
    const std::size_t p = take_a ? a[i].position : b[j].position;
    const double step = std::exp(-static_cast<double>(p - last) / decay);
    acc_a *= step;
    acc_b *= step;
    last = p;
    if (take_a) {
      total += acc_b;
      acc_a += 1.0;
      ++i;
    } else {
      total += acc_a;
      acc_b += 1.0;
      ++j;
    }
  }
  return total;
}

}  // namespace detail

inline InteractionMatrix compute_interaction(const OccurrenceIndex& index, const AnalysisScope& scope,
                                             const ProximityKernel& kernel) {
  scope.validate(index);
  kernel.validate();
  InteractionMatrix m(index.names);
  const std::size_t n = index.names.size();
  for (auto u : scope.unit_indices()) {
    const auto& unit = *index.unit(u);
    for (std::size_t a = 0; a < n; ++a) {
      if (unit.by_name[a].empty()) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (unit.by_name[b].empty()) continue;
        m.at(a, b).raw_weight += kernel.kind == ProximityKernel::Kind::rectangular
                                     ? detail::rectangular_couples(unit.by_name[a], unit.by_name[b], kernel.window)
                                     : detail::exponential_couples(unit.by_name[a], unit.by_name[b], kernel.decay_length);
      }
    }
  }
  double max_weight = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) max_weight = std::max(max_weight, m.at(a, b).raw_weight);
  if (max_weight > 0.0) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) m.at(a, b).score = m.at(a, b).raw_weight / max_weight;
  }
  return m;
}

}  // namespace chaplin
