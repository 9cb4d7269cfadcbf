#include "gecrank/corpus_io.hpp"

#include <gtest/gtest.h>

#include <random>

#include "gecrank/error.hpp"
#include "test_support.hpp"

namespace gecrank {
namespace {

using testing::TempDir;

TEST(Tokenize, SplitsOnAnyWhitespace) {
  EXPECT_EQ(tokenize("  He  play\ta tennis "), (Tokens{"He", "play", "a", "tennis"}));
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_TRUE(tokenize("   ").empty());
}

TEST(ReadLines, TrailingNewlineAndBlankLines) {
  TempDir dir;
  EXPECT_EQ(read_lines(dir.write("a", "x\ny\n")).size(), 2u);
  EXPECT_EQ(read_lines(dir.write("b", "x\ny")).size(), 2u);
  EXPECT_EQ(read_lines(dir.write("c", "")).size(), 0u);
  EXPECT_EQ(read_lines(dir.write("d", "\n")), std::vector<std::string>{""});
  EXPECT_EQ(read_lines(dir.write("e", "x\r\n\r\n")), (std::vector<std::string>{"x", ""}));
  EXPECT_THROW(read_lines(dir.path() / "missing"), NotFound);
}

TEST(LoadCorpus, ToyCorpusShape) {
  TempDir dir;
  const auto corpus = load_corpus(read_corpus_manifest(testing::write_toy_corpus(dir)));
  EXPECT_EQ(corpus.sentence_count(), 2u);
  EXPECT_EQ(corpus.system_count(), 3u);
  EXPECT_EQ(corpus.system_names(), (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(corpus.references(0), std::vector<std::string>{"He plays tennis"});
}

TEST(LoadCorpus, ManifestKeepsSystemOrder) {
  TempDir dir;
  dir.write("s", "x\n");
  dir.write("z", "x\n");
  dir.write("a", "x\n");
  const auto m = dir.write("m.json", R"({"source": "s", "systems": {"zeta": "z", "alpha": "a"}})");
  const auto corpus = load_corpus(read_corpus_manifest(m));
  EXPECT_EQ(corpus.system_names(), (std::vector<std::string>{"zeta", "alpha"}));
  EXPECT_FALSE(corpus.has_references());
  EXPECT_THROW(corpus.references(0), MissingReference);
}

TEST(LoadCorpus, EmptySourceIsRejected) {
  TempDir dir;
  const auto src = dir.write("src", "");
  EXPECT_THROW(load_corpus(src, {}, {}), EmptyCorpus);
}

TEST(LoadCorpus, LengthMismatchNamesFile) {
  TempDir dir;
  const auto src = dir.write("src", "a\nb\n");
  const auto sys = dir.write("sys", "a\nb\nc\n");
  try {
    load_corpus(src, {{"S", sys}}, {});
    FAIL() << "expected LengthMismatch";
  } catch (const LengthMismatch& e) {
    EXPECT_EQ(e.expected(), 2u);
    EXPECT_EQ(e.actual(), 3u);
    EXPECT_EQ(e.file(), sys.string());
  }
  const auto ref = dir.write("ref", "a\n");
  EXPECT_THROW(load_corpus(src, {}, {ref}), LengthMismatch);
}

TEST(LoadCorpus, DuplicateAndEmptyNames) {
  TempDir dir;
  const auto src = dir.write("src", "a\n");
  EXPECT_THROW(load_corpus(src, {{"S", src}, {"S", src}}, {}), DuplicateSystemName);
  EXPECT_THROW(load_corpus(src, {{"", src}}, {}), DuplicateSystemName);
}

TEST(LoadCorpus, MultipleReferencesSkipBlankAlternatives) {
  TempDir dir;
  const auto src = dir.write("src", "a b\nc d\n\n");
  const auto r1 = dir.write("r1", "a c\n\n\n");
  const auto r2 = dir.write("r2", "a d\nc e\n\n");
  const auto corpus = load_corpus(src, {}, {r1, r2});
  EXPECT_EQ(corpus.references(0), (std::vector<std::string>{"a c", "a d"}));
  EXPECT_EQ(corpus.references(1), std::vector<std::string>{"c e"});
  // blank source with all-blank references keeps one empty reference
  EXPECT_EQ(corpus.references(2), std::vector<std::string>{""});

  const auto r3 = dir.write("r3", "a c\n\n\n");
  EXPECT_THROW(load_corpus(src, {}, {r1, r3}), MissingReference);
}

TEST(LoadCorpus, SingleReferenceFileKeepsBlankLines) {
  TempDir dir;
  const auto src = dir.write("src", "a\n");
  const auto ref = dir.write("ref", "\n");
  EXPECT_EQ(load_corpus(src, {}, {ref}).references(0), std::vector<std::string>{""});
}

TEST(LoadScores, ReadsMatrixInFileOrder) {
  TempDir dir;
  const auto a = dir.write("a", "0.8\n0.3\n");
  const auto b = dir.write("b", "1e-3\n  -2.5 \n");
  const auto m = load_scores({{"A", a}, {"B", b}}, 2);
  EXPECT_EQ(m.sentence_count(), 2u);
  EXPECT_EQ(m.system_count(), 2u);
  EXPECT_DOUBLE_EQ(m.at(0, 0), 0.8);
  EXPECT_DOUBLE_EQ(m.at(1, 0), 0.3);
  EXPECT_EQ(m.at(0, 1), 0.001);
  EXPECT_EQ(m.at(1, 1), -2.5);
}

TEST(LoadScores, Errors) {
  TempDir dir;
  EXPECT_THROW(load_scores({{"A", dir.write("nan", "0.1\nnan\n")}}, 2), NonFiniteScore);
  EXPECT_THROW(load_scores({{"A", dir.write("inf", "inf\n0.1\n")}}, 2), NonFiniteScore);
  EXPECT_THROW(load_scores({{"A", dir.write("short", "0.1\n")}}, 2), LengthMismatch);
  try {
    load_scores({{"A", dir.write("bad", "0.1\n0.2x\n")}}, 2);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(load_scores({{"A", dir.write("blank", "0.1\n\n")}}, 2), ParseError);
}

TEST(ScoreMatrix, RejectsNonFinite) {
  ScoreMatrix m({"A"}, 1);
  EXPECT_THROW(m.set(0, 0, std::numeric_limits<double>::quiet_NaN()), NonFiniteScore);
  EXPECT_THROW(ScoreMatrix({"A"}, 1, {std::numeric_limits<double>::infinity()}), NonFiniteScore);
}

// Writing a matrix and loading it back is entry-wise exact.
TEST(ScoreMatrix, WriteLoadRoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(-1e3, 1e3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 1 + rng() % 30;
    const std::size_t n = 1 + rng() % 5;
    std::vector<std::string> names;
    for (std::size_t k = 0; k < n; ++k) names.push_back("sys" + std::to_string(k));
    std::vector<double> values(m * n);
    for (auto& v : values) v = uni(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10);
    const ScoreMatrix original(names, m, values);
    TempDir dir;
    write_scores(original, dir.path());
    const auto manifest = read_score_manifest(dir.path() / "scores.json");
    EXPECT_EQ(load_scores(manifest, m), original);
  }
}

}  // namespace
}  // namespace gecrank
