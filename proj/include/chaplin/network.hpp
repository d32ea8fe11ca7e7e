#pragma once

// Threshold filtering into a NetworkGraph, and its DOT, JSON and table
// renderings.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "chaplin/defaults.hpp"
#include "chaplin/errors.hpp"
#include "chaplin/metrics.hpp"

namespace chaplin {

struct Thresholds {
  double node_min = kDefaultNodeThreshold;
  double edge_min = kDefaultEdgeThreshold;

  void validate() const {
    auto ok = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!ok(node_min)) throw ParameterError("node threshold must be within [0, 1]");
    if (!ok(edge_min)) throw ParameterError("edge threshold must be within [0, 1]");
  }

  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

struct GraphNode {
  std::string name;
  NameKind kind = NameKind::character;
  double f = 0.0;

  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

// source < target (byte order of canonical names).
struct GraphEdge {
  std::string source;
  std::string target;
  double i = 0.0;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

struct GraphMeta {
  std::string scope;
  std::string kernel;
  Thresholds thresholds;

  friend bool operator==(const GraphMeta&, const GraphMeta&) = default;
};

struct NetworkGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  GraphMeta meta;

  const GraphNode* node(std::string_view name) const {
    for (const auto& n : nodes)
      if (n.name == name) return &n;
    return nullptr;
  }

  std::size_t degree(std::string_view name) const {
    return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [&](const GraphEdge& e) {
      return e.source == name || e.target == name;
    }));
  }
};

// Keeps names with F > 0 and F >= node_min, then pairs with I > 0 and
// I >= edge_min whose endpoints both survived.
inline NetworkGraph build_network(const FrequencyTable& freq, const InteractionMatrix& inter, const Thresholds& t,
                                  GraphMeta meta = {}) {
  t.validate();
  meta.thresholds = t;
  NetworkGraph g;
  g.meta = std::move(meta);

  std::vector<bool> kept(inter.size(), false);
  for (std::size_t k = 0; k < freq.entries.size(); ++k) {
    const auto& e = freq.entries[k];
    if (e.score > 0.0 && e.score >= t.node_min) {
      g.nodes.push_back(GraphNode{e.name.canonical, e.name.kind, e.score});
      if (auto idx = inter.index_of(e.name.canonical)) kept[*idx] = true;
    }
  }
  std::sort(g.nodes.begin(), g.nodes.end(), [](const GraphNode& a, const GraphNode& b) {
    if (a.f != b.f) return a.f > b.f;
    return a.name < b.name;
  });

  for (std::size_t a = 0; a < inter.size(); ++a) {
    for (std::size_t b = a + 1; b < inter.size(); ++b) {
      if (!kept[a] || !kept[b]) continue;
      const double s = inter.score(a, b);
      if (s > 0.0 && s >= t.edge_min) {
        auto first = inter.names()[a].canonical;
        auto second = inter.names()[b].canonical;
        if (second < first) std::swap(first, second);
        g.edges.push_back(GraphEdge{std::move(first), std::move(second), s});
      }
    }
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
    if (a.i != b.i) return a.i > b.i;
    return std::tie(a.source, a.target) < std::tie(b.source, b.target);
  });
  return g;
}

namespace detail {

inline std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

inline std::string emit_dot(const NetworkGraph& g) {
  std::string out = "graph chaplin {\n";
  for (const auto& n : g.nodes) {
    const auto quoted = detail::dot_quote(n.name);
    // The label is the quoted name with "\nF=..." spliced before the closing quote.
    out += "  " + quoted + " [label=" + quoted.substr(0, quoted.size() - 1) + "\\nF=" + detail::fixed(n.f, 3) +
           "\", fontsize=" + std::to_string(static_cast<long>(std::lround(10.0 + 14.0 * n.f)));
    if (n.kind == NameKind::place) out += ", shape=box";
    out += "];\n";
  }
  for (const auto& e : g.edges) {
    out += "  " + detail::dot_quote(e.source) + " -- " + detail::dot_quote(e.target) + " [label=\"" +
           detail::fixed(e.i, 3) + "\", penwidth=" + detail::fixed(1.0 + 4.0 * e.i, 2) + "];\n";
  }
  out += "}\n";
  return out;
}

// Ranked listing: "NAME: F=x.xxx" lines, a blank line, then "A\u2014B: I=x.xxx" (em dash separator).
inline std::string emit_tables(const NetworkGraph& g) {
  std::string out;
  for (const auto& n : g.nodes) out += n.name + ": F=" + detail::fixed(n.f, 3) + "\n";
  if (!g.nodes.empty() && !g.edges.empty()) out += "\n";
  for (const auto& e : g.edges) out += e.source + "—" + e.target + ": I=" + detail::fixed(e.i, 3) + "\n";
  return out;
}

inline nlohmann::ordered_json graph_to_json(const NetworkGraph& g) {
  nlohmann::ordered_json j;
  j["nodes"] = nlohmann::ordered_json::array();
  for (const auto& n : g.nodes) j["nodes"].push_back({{"name", n.name}, {"kind", to_string(n.kind)}, {"f", n.f}});
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : g.edges) j["edges"].push_back({{"source", e.source}, {"target", e.target}, {"i", e.i}});
  j["meta"] = {{"scope", g.meta.scope},
               {"kernel", g.meta.kernel},
               {"thresholds", {{"node", g.meta.thresholds.node_min}, {"edge", g.meta.thresholds.edge_min}}}};
  return j;
}

inline std::string emit_json(const NetworkGraph& g) { return graph_to_json(g).dump(); }

inline NetworkGraph graph_from_json(const nlohmann::json& j) {
  NetworkGraph g;
  for (const auto& n : j.at("nodes")) {
    const auto kind = parse_kind(n.at("kind").get<std::string>());
    if (!kind) throw ParameterError("unknown node kind");
    g.nodes.push_back(GraphNode{n.at("name").get<std::string>(), *kind, n.at("f").get<double>()});
  }
  for (const auto& e : j.at("edges")) {
    g.edges.push_back(
        GraphEdge{e.at("source").get<std::string>(), e.at("target").get<std::string>(), e.at("i").get<double>()});
  }
  const auto& m = j.at("meta");
  g.meta.scope = m.at("scope").get<std::string>();
  g.meta.kernel = m.at("kernel").get<std::string>();
  g.meta.thresholds.node_min = m.at("thresholds").at("node").get<double>();
  g.meta.thresholds.edge_min = m.at("thresholds").at("edge").get<double>();
  return g;
}

}  // namespace chaplin
