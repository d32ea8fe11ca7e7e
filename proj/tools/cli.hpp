#pragma once

// `chaplin` command-line driver. Exit codes: 0 success, 1 usage or
// validation error, 2 I/O error.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <pthread.h>

#include <CLI11.hpp>

#include "chaplin/chaplin.hpp"
#include "chaplin/service.hpp"

namespace chaplin::cli {

enum Exit : int { kOk = 0, kUsage = 1, kIo = 2 };

struct KernelFlags {
  std::string kind = "rect";
  std::size_t window = kDefaultWindow;
  double decay = kDefaultDecayLength;

  ProximityKernel kernel() const {
    ProximityKernel k;
    k.kind = kind == "exp" ? ProximityKernel::Kind::exponential : ProximityKernel::Kind::rectangular;
    k.window = window;
    k.decay_length = decay;
    return k;
  }
};

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out << data;
  if (!out) throw IoError(path.string(), "write failed");
}

// out.dot -> out_act3.dot
inline std::filesystem::path unit_output_path(const std::filesystem::path& base, std::size_t unit) {
  auto p = base;
  p.replace_filename(base.stem().string() + "_act" + std::to_string(unit) + base.extension().string());
  return p;
}

inline Cast load_cast(const std::filesystem::path& path) {
  const auto text = read_text_file(path);
  if (auto bad = unicode::first_invalid_byte(text)) throw DecodeError(path.string(), *bad);
  try {
    return parse_cast_file(text);
  } catch (const CastError& e) {
    throw CastError(path.string() + ": " + e.what(), 0, 0, e.offenders());
  }
}

inline int serve_blocking(Session& session, const std::string& host, int port, std::ostream& out, std::ostream& err) {
  // SIGINT/SIGTERM are taken synchronously by a watcher thread; the server's
  // worker threads inherit the blocked mask.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  sigset_t previous;
  pthread_sigmask(SIG_BLOCK, &signals, &previous);

  HttpServer server(session);
  const int bound = server.bind(host, port);
  if (bound < 0) {
    pthread_sigmask(SIG_SETMASK, &previous, nullptr);
    err << "error: cannot bind " << host << ":" << port << " (port in use?)\n";
    return kIo;
  }
  out << "listening on http://" << host << ":" << bound << std::endl;

  std::thread watcher([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  const bool ok = server.listen();
  if (watcher.joinable()) {
    pthread_kill(watcher.native_handle(), SIGTERM);
    watcher.join();
  }
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);
  return ok ? kOk : kIo;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Character and place interaction networks from literary texts", "chaplin"};
  app.require_subcommand(1);

  std::string corpus_dir;
  std::string extension = ".txt";

  // words
  auto* words = app.add_subcommand("words", "List raw-word candidates as TSV (folded, count, sample spelling)");
  ExtractionConstraints constraints;
  std::string words_out;
  words->add_option("corpus", corpus_dir, "Directory of text files")->required();
  words->add_option("--min-len", constraints.min_length, "Minimum word length in characters")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  words->add_option("--min-count", constraints.min_count, "Minimum total occurrences")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  words->add_flag("--capitalized-only,!--any-case", constraints.capitalized_only,
                  "Require at least one capitalized occurrence (default on)");
  words->add_option("--ext", extension, "File extension to load")->capture_default_str();
  words->add_option("-o,--out", words_out, "Write TSV to this file instead of stdout");

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "Build the interaction network and emit DOT/JSON/tables");
  std::string cast_path;
  std::optional<std::size_t> unit;
  bool per_unit = false;
  KernelFlags kflags;
  Thresholds thresholds;
  std::string dot_path;
  std::string json_path;
  bool tables = false;
  analyze_cmd->add_option("corpus", corpus_dir, "Directory of text files")->required();
  analyze_cmd->add_option("--cast", cast_path, "Cast file")->required();
  auto* unit_opt = analyze_cmd->add_option("--unit", unit, "Analyze only this unit (1-based)");
  analyze_cmd->add_flag("--per-unit", per_unit, "Analyze every unit separately; outputs get an _actN suffix")
      ->excludes(unit_opt);
  analyze_cmd->add_option("--kernel", kflags.kind, "Proximity kernel")
      ->check(CLI::IsMember({"rect", "exp"}))
      ->capture_default_str();
  analyze_cmd->add_option("--window", kflags.window, "Rectangular window in tokens")->capture_default_str();
  analyze_cmd->add_option("--decay", kflags.decay, "Exponential decay length in tokens")->capture_default_str();
  analyze_cmd->add_option("--node-threshold", thresholds.node_min, "Minimum F for a node")->capture_default_str();
  analyze_cmd->add_option("--edge-threshold", thresholds.edge_min, "Minimum I for an edge")->capture_default_str();
  analyze_cmd->add_option("--dot", dot_path, "Write the DOT graph here");
  analyze_cmd->add_option("--json", json_path, "Write the JSON graph here");
  analyze_cmd->add_flag("--tables", tables, "Print ranked F and I tables to stdout");
  analyze_cmd->add_option("--ext", extension, "File extension to load")->capture_default_str();

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Top interactions of the whole corpus across rectangular windows");
  std::vector<std::size_t> windows = kSweepWindows;
  std::size_t top_k = 3;
  sweep_cmd->add_option("corpus", corpus_dir, "Directory of text files")->required();
  sweep_cmd->add_option("--cast", cast_path, "Cast file")->required();
  sweep_cmd->add_option("--windows", windows, "Window sizes")->delimiter(',')->capture_default_str();
  sweep_cmd->add_option("--top", top_k, "Edges listed per window")->capture_default_str();
  sweep_cmd->add_option("--ext", extension, "File extension to load")->capture_default_str();

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "Run the local HTTP service for the curation UI");
  int port = 8080;
  std::string host = "127.0.0.1";
  serve_cmd->add_option("corpus", corpus_dir, "Directory of text files");
  serve_cmd->add_option("--port", port, "Port; 0 picks a free one")->capture_default_str()->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--cast", cast_path, "Initial cast file (also the POST /cast/save target)");
  serve_cmd->add_option("--ext", extension, "File extension to load")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*words) {
      const auto corpus = load_corpus(corpus_dir, extension);
      const auto tsv = format_raw_words_tsv(extract_raw_words(corpus, constraints));
      if (words_out.empty()) {
        out << tsv;
      } else {
        write_text_file(words_out, tsv);
      }
      return kOk;
    }

    if (*analyze_cmd) {
      const auto kernel = kflags.kernel();
      kernel.validate();
      thresholds.validate();
      const auto cast = load_cast(cast_path);
      const auto corpus = load_corpus(corpus_dir, extension);
      const auto index = match_occurrences(corpus, cast);

      std::vector<std::optional<std::size_t>> scopes;
      if (per_unit) {
        for (const auto& u : corpus.units) scopes.emplace_back(u.index);
      } else {
        scopes.push_back(unit);
      }
      for (const auto& scope : scopes) {
        const AnalysisRequest request{scope, kernel, thresholds};
        const auto result = chaplin::analyze(corpus, index, request);
        if (!dot_path.empty()) write_text_file(per_unit ? unit_output_path(dot_path, *scope) : std::filesystem::path(dot_path), result.dot);
        if (!json_path.empty()) write_text_file(per_unit ? unit_output_path(json_path, *scope) : std::filesystem::path(json_path), result.json);
        if (tables) {
          if (per_unit) out << "== " << corpus.unit(*scope)->id << " ==\n";
          out << result.tables;
        }
      }
      return kOk;
    }

    if (*sweep_cmd) {
      const auto cast = load_cast(cast_path);
      const auto corpus = load_corpus(corpus_dir, extension);
      const auto rows = window_sweep(corpus, match_occurrences(corpus, cast), windows, top_k);
      out << format_sweep_markdown(rows, top_k);
      return kOk;
    }

    if (*serve_cmd) {
      Corpus corpus;
      if (!corpus_dir.empty()) corpus = load_corpus(corpus_dir, extension);
      Cast cast;
      std::optional<std::filesystem::path> save_path;
      if (!cast_path.empty()) {
        save_path = cast_path;
        if (std::filesystem::exists(cast_path)) cast = load_cast(cast_path);
      }
      Session session(std::move(corpus), std::move(cast), save_path);
      return serve_blocking(session, host, port, out, err);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const DecodeError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const CastError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace chaplin::cli
