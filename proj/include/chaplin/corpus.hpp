#pragma once

// Corpus ingestion: a directory of text files, one TextUnit per file, each
// split into a position-indexed token stream.

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "chaplin/errors.hpp"
#include "chaplin/unicode.hpp"

namespace chaplin {

struct Token {
  std::string surface;
  std::string folded;
  std::size_t position = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

struct TextUnit {
  std::string id;         // file stem
  std::size_t index = 0;  // 1-based
  std::vector<Token> tokens;
};

struct Corpus {
  std::vector<TextUnit> units;
  std::string source_path;

  std::size_t token_count() const {
    std::size_t n = 0;
    for (const auto& u : units) n += u.tokens.size();
    return n;
  }

  // Unit by 1-based index, or nullptr.
  const TextUnit* unit(std::size_t index) const {
    if (index == 0 || index > units.size()) return nullptr;
    return &units[index - 1];
  }
};

// Words are maximal runs of letters. A straight or curly apostrophe is kept
// only when it sits between two letters ("Hamlet's"); anything else
// separates.
inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    auto d = unicode::decode_at(text, i);
    if (!unicode::is_letter(d.cp)) {
      i += d.length;
      continue;
    }
    const std::size_t begin = i;
    std::size_t end = i + d.length;
    i = end;
    while (i < text.size()) {
      d = unicode::decode_at(text, i);
      if (unicode::is_letter(d.cp)) {
        i += d.length;
        end = i;
        continue;
      }
      if (unicode::is_apostrophe(d.cp) && i + d.length < text.size() &&
          unicode::is_letter(unicode::decode_at(text, i + d.length).cp)) {
        i += d.length;
        continue;
      }
      break;
    }
    std::string surface(text.substr(begin, end - begin));
    std::string folded = unicode::fold(surface);
    tokens.push_back(Token{std::move(surface), std::move(folded), tokens.size()});
    i = end;
  }
  return tokens;
}

inline TextUnit make_unit(std::string id, std::size_t index, std::string_view text) {
  return TextUnit{std::move(id), index, tokenize(text)};
}

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open file");
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError(path.string(), "read failed");
  return data;
}

}  // namespace detail

// Loads every regular file with the given extension, sorted by file name.
// Throws IoError for an unusable directory and DecodeError for a file that is
// not UTF-8.
inline Corpus load_corpus(const std::filesystem::path& dir, std::string_view extension = ".txt") {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::exists(dir, ec)) throw IoError(dir.string(), "no such directory");
  if (!fs::is_directory(dir, ec)) throw IoError(dir.string(), "not a directory");

  std::vector<fs::path> files;
  fs::directory_iterator it(dir, ec);
  if (ec) throw IoError(dir.string(), ec.message());
  for (const auto& entry : it) {
    if (entry.is_regular_file(ec) && entry.path().extension() == extension) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });

  Corpus corpus;
  corpus.source_path = dir.string();
  corpus.units.reserve(files.size());
  for (const auto& file : files) {
    const std::string data = detail::read_file(file);
    if (auto bad = unicode::first_invalid_byte(data)) throw DecodeError(file.string(), *bad);
    corpus.units.push_back(make_unit(file.stem().string(), corpus.units.size() + 1, data));
  }
  return corpus;
}

}  // namespace chaplin
