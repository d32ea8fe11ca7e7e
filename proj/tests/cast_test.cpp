#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "chaplin/cast.hpp"
#include "chaplin/corpus.hpp"
#include "oracles.hpp"
#include "random_corpus.hpp"

using namespace chaplin;

namespace {

Corpus corpus_of(std::initializer_list<std::string> texts) {
  Corpus c;
  for (const auto& t : texts) c.units.push_back(make_unit("u" + std::to_string(c.units.size() + 1), c.units.size() + 1, t));
  return c;
}

}  // namespace

TEST(RawWords, EmptyCorpus) { EXPECT_TRUE(extract_raw_words(Corpus{}, {}).empty()); }

TEST(RawWords, ConstraintsApplyTogether) {
  const auto words = extract_raw_words(corpus_of({"Anna met Bob. Anna left."}), {3, true, 2});
  ASSERT_EQ(words.size(), 1u);
  EXPECT_EQ(words[0], (RawWordEntry{"anna", 2, "Anna"}));
}

TEST(RawWords, OneCapitalizedOccurrenceSuffices) {
  const auto words = extract_raw_words(corpus_of({"rome ROME rome", "Verona verona"}), {3, true, 2});
  ASSERT_EQ(words.size(), 2u);
  EXPECT_EQ(words[0], (RawWordEntry{"rome", 3, "rome"}));
  EXPECT_EQ(words[1].folded, "verona");
  EXPECT_EQ(words[1].count, 2u);
}

TEST(RawWords, SortedByCountThenFolded) {
  const auto words = extract_raw_words(corpus_of({"Bee Ant Cat Ant Cat Dog"}), {1, false, 1});
  ASSERT_EQ(words.size(), 4u);
  EXPECT_EQ(words[0].folded, "ant");
  EXPECT_EQ(words[1].folded, "cat");
  EXPECT_EQ(words[2].folded, "bee");
  EXPECT_EQ(words[3].folded, "dog");
}

TEST(RawWords, LengthCountsCharactersNotBytes) {
  const auto words = extract_raw_words(corpus_of({"Éa Éa Ωb Ωb"}), {2, true, 1});
  EXPECT_EQ(words.size(), 2u);
  EXPECT_TRUE(extract_raw_words(corpus_of({"Éa Éa"}), {3, true, 1}).empty());
}

TEST(RawWords, RejectsZeroBounds) {
  EXPECT_THROW(extract_raw_words(Corpus{}, {0, true, 1}), ParameterError);
  EXPECT_THROW(extract_raw_words(Corpus{}, {1, true, 0}), ParameterError);
}

TEST(RawWords, UnconstrainedMatchesIndependentCounts) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::string> texts;
    for (int u = 0; u < 3; ++u) {
      std::string t;
      for (int k = 0; k < 200; ++k) {
        auto w = toy::random_word(rng, "abcAB", 1, 3);
        t += w + (k % 7 == 0 ? ". " : " ");
      }
      texts.push_back(t);
    }
    Corpus c;
    for (const auto& t : texts) c.units.push_back(make_unit("u", c.units.size() + 1, t));
    const auto expected = oracle::count_words(texts);
    const auto words = extract_raw_words(c, {1, false, 1});
    ASSERT_EQ(words.size(), expected.size());
    for (const auto& w : words) {
      ASSERT_TRUE(expected.count(w.folded)) << w.folded;
      EXPECT_EQ(w.count, expected.at(w.folded)) << w.folded;
    }
  }
}

// Claudius is never named in the dialogue; his occurrences come from "King".
TEST(RawWords, HamletFixtureContainsLeadingNames) {
  const auto c = load_corpus(std::filesystem::path(CHAPLIN_DATA_DIR) / "hamlet");
  const auto words = extract_raw_words(c, {});
  for (const char* name : {"hamlet", "horatio", "king", "polonius", "gertrude", "laertes", "ophelia", "rosencrantz"}) {
    const bool found =
        std::any_of(words.begin(), words.end(), [&](const RawWordEntry& w) { return w.folded == name; });
    EXPECT_TRUE(found) << name;
  }
}

TEST(RawWords, TsvFormat) {
  EXPECT_EQ(format_raw_words_tsv({{"anna", 2, "Anna"}, {"bob", 1, "BOB"}}), "anna\t2\tAnna\nbob\t1\tBOB\n");
}

TEST(CastFile, SingleEntryWithVariants) {
  const auto cast = parse_cast_file("HAMLET: Hamlet | Hamlet's");
  ASSERT_EQ(cast.size(), 1u);
  EXPECT_EQ(cast[0].canonical, "HAMLET");
  EXPECT_EQ(cast[0].kind, NameKind::character);
  EXPECT_EQ(cast[0].variants, (std::vector<std::string>{"Hamlet", "Hamlet's"}));
}

TEST(CastFile, PlaceTag) {
  const auto cast = parse_cast_file("ELSINORE @place: Elsinore");
  ASSERT_EQ(cast.size(), 1u);
  EXPECT_EQ(cast[0].kind, NameKind::place);
  EXPECT_EQ(parse_cast_file("SKULL @motif: skull")[0].kind, NameKind::motif);
}

TEST(CastFile, CommentsBlankLinesAndMultiWordVariants) {
  const auto cast = parse_cast_file(
      "# cast\n"
      "\n"
      "  CLAUDIUS :  King   Claudius |Claudius  \r\n"
      "   # indented comment\n"
      "GHOST: Ghost\n");
  ASSERT_EQ(cast.size(), 2u);
  EXPECT_EQ(cast[0].variants, (std::vector<std::string>{"King Claudius", "Claudius"}));
  EXPECT_EQ(cast[1].canonical, "GHOST");
}

TEST(CastFile, VariantClaimedTwice) {
  try {
    parse_cast_file("CLAUDIUS: King\nGHOST: King\n");
    FAIL();
  } catch (const CastError& e) {
    EXPECT_EQ(e.line(), 2u);
    const std::string msg = e.what();
    EXPECT_NE(msg.find("CLAUDIUS"), std::string::npos);
    EXPECT_NE(msg.find("GHOST"), std::string::npos);
    EXPECT_EQ(e.offenders(), (std::vector<std::string>{"CLAUDIUS", "GHOST"}));
  }
}

TEST(CastFile, VariantClashIsCaseInsensitive) {
  EXPECT_THROW(parse_cast_file("A: king\nB: KING\n"), CastError);
}

TEST(CastFile, DuplicateCanonical) {
  try {
    parse_cast_file("HAMLET: Hamlet\n\nhamlet: Ham\n");
    FAIL();
  } catch (const CastError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(CastFile, DuplicateVariantWithinEntry) { EXPECT_THROW(parse_cast_file("A: Bob | bob"), CastError); }

TEST(CastFile, SyntaxErrorsCarryLineAndColumn) {
  auto position = [](const std::string& text) {
    try {
      parse_cast_file(text);
    } catch (const CastError& e) {
      return std::make_pair(e.line(), e.column());
    }
    return std::make_pair(std::size_t{0}, std::size_t{0});
  };
  EXPECT_EQ(position("HAMLET Hamlet"), std::make_pair(std::size_t{1}, std::size_t{14}));
  EXPECT_EQ(position("A: x\nB: y ||z"), std::make_pair(std::size_t{2}, std::size_t{7}));
  EXPECT_EQ(position("A @castle: x"), std::make_pair(std::size_t{1}, std::size_t{3}));
  EXPECT_EQ(position("   : x"), std::make_pair(std::size_t{1}, std::size_t{4}));
  EXPECT_EQ(position("A: Hamlet."), std::make_pair(std::size_t{1}, std::size_t{4}));
  EXPECT_EQ(position("A: one two three four five"), std::make_pair(std::size_t{1}, std::size_t{4}));
  EXPECT_EQ(position("A:"), std::make_pair(std::size_t{1}, std::size_t{3}));
}

TEST(CastFile, FormatParsesBack) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto toy = toy::make(seed, 50);
    auto entries = toy.cast.entries();
    if (seed % 3 == 0) entries.front().kind = NameKind::place;
    if (seed % 5 == 0) entries.back().kind = NameKind::motif;
    const Cast cast(entries);
    EXPECT_EQ(parse_cast_file(format_cast_file(cast)), cast);
    EXPECT_EQ(cast_from_json(nlohmann::json::parse(cast_to_json(cast).dump())), cast);
  }
}

TEST(CastFile, ReferenceHamletCastParses) {
  std::ifstream in(std::filesystem::path(CHAPLIN_DATA_DIR) / "hamlet.cast");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto cast = parse_cast_file(text);
  EXPECT_GE(cast.size(), 8u);
  ASSERT_TRUE(cast.find("hamlet").has_value());
  EXPECT_EQ(cast[*cast.find("ELSINORE")].kind, NameKind::place);
}

TEST(CastJson, RejectsInvalidShapesAndInvariants) {
  EXPECT_THROW(cast_from_json(nlohmann::json::object()), CastError);
  EXPECT_THROW(cast_from_json(nlohmann::json::parse(R"([{"canonical":"A"}])")), CastError);
  EXPECT_THROW(cast_from_json(nlohmann::json::parse(R"([{"canonical":"A","variants":[]}])")), CastError);
  EXPECT_THROW(cast_from_json(nlohmann::json::parse(R"([{"canonical":"A","kind":"castle","variants":["a"]}])")),
               CastError);
  try {
    cast_from_json(nlohmann::json::parse(R"([{"canonical":"A","variants":["x"]},{"canonical":"B","variants":["X"]}])"));
    FAIL();
  } catch (const CastError& e) {
    EXPECT_EQ(e.offenders(), (std::vector<std::string>{"A", "B"}));
  }
}
