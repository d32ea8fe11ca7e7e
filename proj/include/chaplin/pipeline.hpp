#pragma once

// The analysis path shared by the CLI and the HTTP service:
// occurrences -> F, I -> thresholded graph -> DOT / JSON / tables.

#include <cstddef>
#include <optional>
#include <string>

#include "chaplin/cast.hpp"
#include "chaplin/corpus.hpp"
#include "chaplin/match.hpp"
#include "chaplin/metrics.hpp"
#include "chaplin/network.hpp"

namespace chaplin {

struct AnalysisRequest {
  std::optional<std::size_t> unit;  // nullopt = whole corpus
  ProximityKernel kernel;
  Thresholds thresholds;

  void validate(const Corpus& corpus) const {
    kernel.validate();
    thresholds.validate();
    if (unit && corpus.unit(*unit) == nullptr) {
      throw ParameterError("unknown unit index " + std::to_string(*unit) + " (corpus has " +
                           std::to_string(corpus.units.size()) + " units)");
    }
  }
};

struct AnalysisOutput {
  NetworkGraph graph;
  std::string dot;
  std::string json;
  std::string tables;
};

inline AnalysisScope scope_for(const Corpus& corpus, const AnalysisRequest& request) {
  if (!request.unit) return AnalysisScope::whole(corpus.units.size());
  return AnalysisScope::unit(*request.unit, corpus.unit(*request.unit)->id);
}

inline AnalysisOutput analyze(const Corpus& corpus, const OccurrenceIndex& index, const AnalysisRequest& request) {
  request.validate(corpus);
  const auto scope = scope_for(corpus, request);
  const auto freq = compute_frequency(index, scope);
  const auto inter = compute_interaction(index, scope, request.kernel);
  AnalysisOutput out;
  out.graph = build_network(freq, inter, request.thresholds, GraphMeta{scope.label(), request.kernel.describe(), {}});
  out.dot = emit_dot(out.graph);
  out.json = emit_json(out.graph);
  out.tables = emit_tables(out.graph);
  return out;
}

inline AnalysisOutput analyze(const Corpus& corpus, const Cast& cast, const AnalysisRequest& request) {
  return analyze(corpus, match_occurrences(corpus, cast), request);
}

}  // namespace chaplin
