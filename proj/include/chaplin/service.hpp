#pragma once

// Local HTTP workbench: one loaded corpus, one editable versioned cast.
//
//   GET  /health          {"status":"ok"}
//   GET  /corpus/units    [{"id","index","tokens"}]
//   GET  /rawwords        ?minLen=&capitalized=&minCount=
//   GET  /cast            {"version","entries"}
//   PUT  /cast            {"entries", "ifVersion"?} -> {"version"}
//   POST /cast/save       {"path"?} -> writes the cast file
//   POST /analyze         {"unit"?, "kernel", "window", "decay", "node_min", "edge_min"}
//   GET  /graph.dot       DOT of the most recent analysis
//
// Session holds the request logic and is usable without a socket; HttpServer
// binds it to cpp-httplib.

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "chaplin/cast.hpp"
#include "chaplin/corpus.hpp"
#include "chaplin/errors.hpp"
#include "chaplin/match.hpp"
#include "chaplin/pipeline.hpp"

namespace chaplin {

struct Reply {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

inline std::string analysis_response_body(std::size_t cast_version, const AnalysisOutput& out) {
  nlohmann::ordered_json j;
  j["castVersion"] = cast_version;
  j["graph"] = graph_to_json(out.graph);
  j["tables"] = out.tables;
  j["dot"] = out.dot;
  return j.dump();
}

class Session {
 public:
  explicit Session(Corpus corpus, Cast cast = {}, std::optional<std::filesystem::path> cast_path = std::nullopt)
      : corpus_(std::move(corpus)),
        cast_(std::make_shared<const Cast>(std::move(cast))),
        cast_path_(std::move(cast_path)) {}

  const Corpus& corpus() const noexcept { return corpus_; }

  std::pair<std::shared_ptr<const Cast>, std::size_t> cast_snapshot() const {
    std::shared_lock lock(cast_mutex_);
    return {cast_, version_};
  }

  Reply health() const { return {200, R"({"status":"ok"})"}; }

  Reply units() const {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& u : corpus_.units) arr.push_back({{"id", u.id}, {"index", u.index}, {"tokens", u.tokens.size()}});
    return {200, arr.dump()};
  }

  Reply raw_words(const std::map<std::string, std::string>& query) {
    ExtractionConstraints c;
    try {
      if (auto it = query.find("minLen"); it != query.end()) c.min_length = parse_count(it->second, "minLen");
      if (auto it = query.find("minCount"); it != query.end()) c.min_count = parse_count(it->second, "minCount");
      if (auto it = query.find("capitalized"); it != query.end()) c.capitalized_only = parse_bool(it->second, "capitalized");
      c.validate();
    } catch (const ParameterError& e) {
      return error(400, e.what());
    }
    std::lock_guard lock(words_mutex_);
    for (const auto& [key, body] : words_cache_)
      if (key == c) return {200, body};
    words_cache_.emplace_back(c, raw_words_to_json(extract_raw_words(corpus_, c)).dump());
    return {200, words_cache_.back().second};
  }

  Reply get_cast() const {
    auto [cast, version] = cast_snapshot();
    nlohmann::ordered_json j;
    j["version"] = version;
    j["entries"] = cast_to_json(*cast);
    return {200, j.dump()};
  }

  Reply put_cast(std::string_view body) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      return error(400, std::string("invalid JSON: ") + e.what());
    }
    const nlohmann::json* entries = &j;
    std::optional<std::size_t> if_version;
    if (j.is_object()) {
      if (!j.contains("entries")) return error(400, "missing \"entries\"");
      entries = &j["entries"];
      if (j.contains("ifVersion") && !j["ifVersion"].is_null()) {
        if (!j["ifVersion"].is_number_unsigned()) return error(400, "\"ifVersion\" must be a non-negative integer");
        if_version = j["ifVersion"].get<std::size_t>();
      }
    }
    std::shared_ptr<const Cast> cast;
    try {
      cast = std::make_shared<const Cast>(cast_from_json(*entries));
    } catch (const CastError& e) {
      return error(400, e.what(), e.offenders());
    }
    std::unique_lock lock(cast_mutex_);
    if (if_version && *if_version != version_) {
      return error(409, "cast version mismatch: current is " + std::to_string(version_));
    }
    cast_ = std::move(cast);
    ++version_;
    nlohmann::ordered_json out;
    out["version"] = version_;
    return {200, out.dump()};
  }

  Reply save_cast(std::string_view body) {
    std::optional<std::filesystem::path> target = cast_path_;
    if (!body.empty()) {
      try {
        const auto j = nlohmann::json::parse(body);
        if (j.is_object() && j.contains("path")) {
          if (!j["path"].is_string()) return error(400, "\"path\" must be a string");
          target = j["path"].get<std::string>();
        }
      } catch (const nlohmann::json::exception& e) {
        return error(400, std::string("invalid JSON: ") + e.what());
      }
    }
    if (!target || target->empty()) return error(400, "no cast file path configured or supplied");
    auto [cast, version] = cast_snapshot();
    std::ofstream outf(*target, std::ios::binary | std::ios::trunc);
    if (!outf) return error(500, "cannot write " + target->string());
    outf << format_cast_file(*cast);
    if (!outf) return error(500, "write failed for " + target->string());
    nlohmann::ordered_json out;
    out["version"] = version;
    out["path"] = target->string();
    return {200, out.dump()};
  }

  Reply analyze(std::string_view body) {
    AnalysisRequest request;
    try {
      request = parse_analysis_request(body);
      request.validate(corpus_);
    } catch (const ParameterError& e) {
      return error(400, e.what());
    }
    auto [cast, version] = cast_snapshot();
    if (cast->empty()) return error(422, "cast is empty");

    std::shared_ptr<const OccurrenceIndex> index;
    {
      std::lock_guard lock(index_mutex_);
      if (!index_ || index_version_ != version) {
        index_ = std::make_shared<const OccurrenceIndex>(match_occurrences(corpus_, *cast));
        index_version_ = version;
      }
      index = index_;
    }
    const auto out = chaplin::analyze(corpus_, *index, request);
    {
      std::lock_guard lock(dot_mutex_);
      last_dot_ = out.dot;
    }
    return {200, analysis_response_body(version, out)};
  }

  Reply graph_dot() const {
    std::lock_guard lock(dot_mutex_);
    if (!last_dot_) return error(404, "no analysis has been run yet");
    return {200, *last_dot_, "text/vnd.graphviz"};
  }

  static AnalysisRequest parse_analysis_request(std::string_view body) {
    nlohmann::json j = nlohmann::json::object();
    if (!body.empty()) {
      try {
        j = nlohmann::json::parse(body);
      } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("invalid JSON: ") + e.what());
      }
    }
    if (!j.is_object()) throw ParameterError("analysis parameters must be a JSON object");
    AnalysisRequest r;
    if (j.contains("unit") && !j["unit"].is_null()) {
      if (!j["unit"].is_number_unsigned()) throw ParameterError("\"unit\" must be a positive integer");
      r.unit = j["unit"].get<std::size_t>();
    }
    if (j.contains("kernel")) {
      const auto& k = j["kernel"];
      if (k == "rect") {
        r.kernel.kind = ProximityKernel::Kind::rectangular;
      } else if (k == "exp") {
        r.kernel.kind = ProximityKernel::Kind::exponential;
      } else {
        throw ParameterError("\"kernel\" must be \"rect\" or \"exp\"");
      }
    }
    if (j.contains("window")) {
      if (!j["window"].is_number_unsigned()) throw ParameterError("\"window\" must be a positive integer");
      r.kernel.window = j["window"].get<std::size_t>();
    }
    auto number = [&](const char* key, double& dst) {
      if (!j.contains(key)) return;
      if (!j[key].is_number()) throw ParameterError(std::string("\"") + key + "\" must be a number");
      dst = j[key].get<double>();
    };
    number("decay", r.kernel.decay_length);
    number("node_min", r.thresholds.node_min);
    number("edge_min", r.thresholds.edge_min);
    return r;
  }

 private:
  static Reply error(int status, const std::string& message, const std::vector<std::string>& offenders = {}) {
    nlohmann::ordered_json j;
    j["error"] = message;
    if (!offenders.empty()) j["offenders"] = offenders;
    return {status, j.dump()};
  }

  static std::size_t parse_count(const std::string& s, const char* name) {
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) {
      throw ParameterError(std::string(name) + " must be a non-negative integer");
    }
    return v;
  }

  static bool parse_bool(const std::string& s, const char* name) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw ParameterError(std::string(name) + " must be true or false");
  }

  const Corpus corpus_;

  mutable std::shared_mutex cast_mutex_;
  std::shared_ptr<const Cast> cast_;
  std::size_t version_ = 1;
  std::optional<std::filesystem::path> cast_path_;

  std::mutex words_mutex_;
  std::vector<std::pair<ExtractionConstraints, std::string>> words_cache_;

  std::mutex index_mutex_;
  std::shared_ptr<const OccurrenceIndex> index_;
  std::size_t index_version_ = 0;

  mutable std::mutex dot_mutex_;
  std::optional<std::string> last_dot_;
};

class HttpServer {
 public:
  explicit HttpServer(Session& session, std::string cors_origin = "*") : session_(session) {
    // cpp-httplib defaults to SO_REUSEPORT, which would let a second server
    // share an occupied port.
    server_.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
    });
    server_.set_default_headers({{"Access-Control-Allow-Origin", cors_origin},
                                 {"Access-Control-Allow-Methods", "GET, PUT, POST, OPTIONS"},
                                 {"Access-Control-Allow-Headers", "Content-Type"}});
    server_.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    server_.Get("/health", wrap([this](const httplib::Request&) { return session_.health(); }));
    server_.Get("/corpus/units", wrap([this](const httplib::Request&) { return session_.units(); }));
    server_.Get("/rawwords", wrap([this](const httplib::Request& req) {
                  std::map<std::string, std::string> q;
                  for (const auto& [k, v] : req.params) q[k] = v;
                  return session_.raw_words(q);
                }));
    server_.Get("/cast", wrap([this](const httplib::Request&) { return session_.get_cast(); }));
    server_.Put("/cast", wrap([this](const httplib::Request& req) { return session_.put_cast(req.body); }));
    server_.Post("/cast/save", wrap([this](const httplib::Request& req) { return session_.save_cast(req.body); }));
    server_.Post("/analyze", wrap([this](const httplib::Request& req) { return session_.analyze(req.body); }));
    server_.Get("/graph.dot", wrap([this](const httplib::Request&) { return session_.graph_dot(); }));
  }

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Returns the bound port, or -1. Port 0 picks an ephemeral port.
  int bind(const std::string& host, int port) {
    if (port == 0) return server_.bind_to_any_port(host);
    return server_.bind_to_port(host, port) ? port : -1;
  }

  bool listen() { return server_.listen_after_bind(); }
  void stop() { server_.stop(); }
  void wait_until_ready() const { server_.wait_until_ready(); }

 private:
  template <typename F>
  static httplib::Server::Handler wrap(F f) {
    return [f](const httplib::Request& req, httplib::Response& res) {
      Reply r = f(req);
      res.status = r.status;
      res.set_content(r.body, r.content_type);
    };
  }

  Session& session_;
  httplib::Server server_;
};

}  // namespace chaplin
