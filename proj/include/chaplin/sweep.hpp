#pragma once

// Rectangular-window sweep: top-ranked interactions of the whole corpus for a
// list of window sizes. Used to pick kDefaultWindow.

#include <cstddef>
#include <string>
#include <vector>

#include "chaplin/corpus.hpp"
#include "chaplin/match.hpp"
#include "chaplin/metrics.hpp"
#include "chaplin/network.hpp"

namespace chaplin {

inline const std::vector<std::size_t> kSweepWindows = {20, 40, 60, 80, 120, 160, 200};

struct SweepRow {
  std::size_t window = 0;
  std::vector<GraphEdge> top;  // highest I first
};

inline std::vector<SweepRow> window_sweep(const Corpus& corpus, const OccurrenceIndex& index,
                                          const std::vector<std::size_t>& windows, std::size_t top_k) {
  const auto scope = AnalysisScope::whole(corpus.units.size());
  const auto freq = compute_frequency(index, scope);
  std::vector<SweepRow> rows;
  for (auto w : windows) {
    const auto inter = compute_interaction(index, scope, ProximityKernel::rectangular(w));
    auto g = build_network(freq, inter, Thresholds{0.0, 0.0});
    if (g.edges.size() > top_k) g.edges.resize(top_k);
    rows.push_back(SweepRow{w, std::move(g.edges)});
  }
  return rows;
}

// 1-based rank of the pair among a row's edges, or 0 when absent.
inline std::size_t rank_of(const SweepRow& row, const std::string& a, const std::string& b) {
  for (std::size_t i = 0; i < row.top.size(); ++i) {
    const auto& e = row.top[i];
    if ((e.source == a && e.target == b) || (e.source == b && e.target == a)) return i + 1;
  }
  return 0;
}

inline std::string format_sweep_markdown(const std::vector<SweepRow>& rows, std::size_t top_k) {
  std::string out = "| window |";
  for (std::size_t i = 1; i <= top_k; ++i) out += " #" + std::to_string(i) + " |";
  out += "\n|---:|";
  for (std::size_t i = 0; i < top_k; ++i) out += "---|";
  out += "\n";
  for (const auto& row : rows) {
    out += "| " + std::to_string(row.window) + " |";
    for (std::size_t i = 0; i < top_k; ++i) {
      if (i < row.top.size()) {
        const auto& e = row.top[i];
        out += " " + e.source + "—" + e.target + " " + detail::fixed(e.i, 3) + " |";
      } else {
        out += " |";
      }
    }
    out += "\n";
  }
  return out;
}

}  // namespace chaplin
