#include "gecrank/metrics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gecrank/error.hpp"

namespace gecrank {
namespace {

Tokens toks(std::string_view s) { return tokenize(s); }
std::vector<Tokens> refs(std::initializer_list<std::string_view> list) {
  std::vector<Tokens> out;
  for (auto s : list) out.push_back(tokenize(s));
  return out;
}

const MetricConfig kDefaults{};

TEST(MetricConfig, Defaults) {
  EXPECT_EQ(kDefaults.n_max, 4);
  EXPECT_EQ(kDefaults.gleu_iterations, 500);
  EXPECT_EQ(kDefaults.gleu_seed, 42u);
  EXPECT_EQ(kDefaults.green_beta, 2.0);
  EXPECT_EQ(kDefaults.edit_beta, 0.5);
  EXPECT_NO_THROW(kDefaults.validate());
}

TEST(MetricConfig, Validation) {
  MetricConfig c;
  c.n_max = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.gleu_iterations = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.green_beta = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  EXPECT_EQ(parse_metric("green"), Metric::kGreen);
  EXPECT_THROW(parse_metric("bleu"), ConfigError);
}

TEST(NGrams, TotalCount) {
  const Tokens t = toks("a b a b c");
  for (int n = 1; n <= 6; ++n) {
    int total = 0;
    for (const auto& [g, c] : count_ngrams(t, n)) total += c;
    EXPECT_EQ(total, std::max(0, 5 - n + 1));
  }
  EXPECT_EQ(count_ngrams(t, 2).at("a\x1f" "b"), 2);
}

TEST(EditF, HypothesisEqualsReference) {
  EXPECT_EQ(edit_f_sentence(toks("He play a tennis"), toks("He plays tennis"), refs({"He plays tennis"}), kDefaults),
            1.0);
}

TEST(EditF, UncorrectedHypothesisScoresZero) {
  EXPECT_EQ(edit_f_sentence(toks("He play a tennis"), toks("He play a tennis"), refs({"He plays tennis"}), kDefaults),
            0.0);
}

TEST(EditF, EmptyEditConventions) {
  EXPECT_EQ(edit_f_sentence(toks("a b"), toks("a b"), refs({"a b"}), kDefaults), 1.0);
  EXPECT_EQ(edit_f_sentence(toks("a b"), toks("a c"), refs({"a b"}), kDefaults), 0.0);
}

// P = 1, R = 1/2 -> F0.5 = 5/6 (tests/oracles/derived_values.py)
TEST(EditF, PartialCorrection) {
  EXPECT_NEAR(edit_f_sentence(toks("He play a tennis"), toks("He plays a tennis"), refs({"He plays tennis"}), kDefaults),
              0.8333333333333334, 1e-15);
}

TEST(EditF, BestReferenceIsSelected) {
  const auto r = refs({"He played tennis", "He plays a tennis"});
  EXPECT_EQ(edit_f_sentence(toks("He play a tennis"), toks("He plays a tennis"), r, kDefaults), 1.0);
}

TEST(EditF, CorpusAccumulation) {
  const EvalCorpus corpus({"He play a tennis", "a b c"},
                          {{"S", {"He plays a tennis", "a x c"}}, {"Perfect", {"He plays tennis", "a b"}},
                           {"Lazy", {"He play a tennis", "a b c"}}},
                          {{"He plays tennis"}, {"a b"}});
  // (TP,FP,FN) = (1,0,1) + (0,1,1): P = 1/2, R = 1/3, F0.5 = 5/11
  EXPECT_NEAR(edit_f_corpus(corpus, "S", kDefaults), 5.0 / 11.0, 1e-15);
  EXPECT_EQ(edit_f_corpus(corpus, "Perfect", kDefaults), 1.0);
  EXPECT_EQ(edit_f_corpus(corpus, "Lazy", kDefaults), 0.0);
  EXPECT_THROW(edit_f_corpus(corpus, "Nope", kDefaults), UnknownSystem);
}

TEST(GleuPlus, PerfectHypothesis) {
  EXPECT_DOUBLE_EQ(gleu_plus_sentence(toks("the cat sit"), toks("the cat sits"), refs({"the cat sits"}), kDefaults),
                   1.0);
}

TEST(GleuPlus, NoOverlapIsSmoothingDominated) {
  EXPECT_LT(gleu_plus_sentence(toks("a b c"), toks("x y z"), refs({"d e f"}), kDefaults), 1e-6);
}

TEST(GleuPlus, CorrectionBeatsCopy) {
  const auto r = refs({"the cat sits"});
  const double corrected = gleu_plus_sentence(toks("the cat sit"), toks("the cat sits"), r, kDefaults);
  const double copied = gleu_plus_sentence(toks("the cat sit"), toks("the cat sit"), r, kDefaults);
  EXPECT_GT(corrected, copied);
}

TEST(GleuPlus, SourcePenaltyApplies) {
  // "sit" is in the source but not the reference: keeping it costs a unigram match.
  MetricConfig one_gram;
  one_gram.n_max = 1;
  const auto r = refs({"the cat sits"});
  EXPECT_NEAR(gleu_single_reference(toks("the cat sit"), toks("the cat sit"), r[0], one_gram), 1.0 / 3.0, 1e-15);
}

TEST(GleuPlus, SingleReferenceIgnoresIterations) {
  MetricConfig a, b;
  a.gleu_iterations = 1;
  b.gleu_iterations = 777;
  b.gleu_seed = 9;
  const auto r = refs({"a b d"});
  EXPECT_EQ(gleu_plus_sentence(toks("a b c"), toks("a d c"), r, a), gleu_plus_sentence(toks("a b c"), toks("a d c"), r, b));
}

TEST(GleuPlus, SampledMeanApproachesReferenceAverage) {
  MetricConfig c;
  c.gleu_iterations = 20000;
  const auto r = refs({"a b d e", "a c d e"});
  const Tokens src = toks("a b c e");
  const Tokens hyp = toks("a b d e");
  const double avg =
      (gleu_single_reference(src, hyp, r[0], c) + gleu_single_reference(src, hyp, r[1], c)) / 2.0;
  EXPECT_NEAR(gleu_plus_sentence(src, hyp, r, c), avg, 0.02);
}

TEST(Green, IdentityAndPerfectCorrection) {
  EXPECT_EQ(green_sentence(toks("a b c"), toks("a b c"), refs({"a b c"}), kDefaults), 1.0);
  EXPECT_EQ(green_sentence(toks("a b c"), toks("a x c"), refs({"a x c"}), kDefaults), 1.0);
}

TEST(Green, WrongSubstitution) {
  // unigram and bigram F are 0, trigram/4-gram have nothing to do (F = 1)
  EXPECT_EQ(green_order_f(toks("a b"), toks("a c"), toks("a b"), 1, 2.0), 0.0);
  EXPECT_NEAR(green_sentence(toks("a b"), toks("a c"), refs({"a b"}), kDefaults), std::sqrt(1e-9), 1e-18);
}

TEST(Metrics, MissingReferenceRejected) {
  EXPECT_THROW(edit_f_sentence(toks("a"), toks("a"), {}, kDefaults), MissingReference);
  EXPECT_THROW(green_sentence(toks("a"), toks("a"), {}, kDefaults), MissingReference);
  EXPECT_THROW(gleu_plus_sentence(toks("a"), toks("a"), {}, kDefaults), MissingReference);
}

class RandomTriples : public ::testing::Test {
 protected:
  Tokens random_tokens(std::size_t max_len = 7) {
    static const std::vector<std::string> vocab{"a", "b", "c", "d", "the", "cat"};
    Tokens t(rng_() % (max_len + 1));
    for (auto& w : t) w = vocab[rng_() % vocab.size()];
    return t;
  }
  std::mt19937 rng_{5};
};

TEST_F(RandomTriples, ScoresInUnitInterval) {
  MetricConfig multi;
  multi.gleu_iterations = 50;
  for (int i = 0; i < 300; ++i) {
    const Tokens s = random_tokens(), h = random_tokens();
    std::vector<Tokens> r{random_tokens(), random_tokens()};
    for (double v : {edit_f_sentence(s, h, r, multi), gleu_plus_sentence(s, h, r, multi), green_sentence(s, h, r, multi)}) {
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0);
    }
  }
}

TEST_F(RandomTriples, ReferenceOrderDoesNotMatter) {
  for (int i = 0; i < 200; ++i) {
    const Tokens s = random_tokens(), h = random_tokens();
    std::vector<Tokens> r{random_tokens(), random_tokens(), random_tokens()};
    const double e = edit_f_sentence(s, h, r, kDefaults);
    const double g = green_sentence(s, h, r, kDefaults);
    std::shuffle(r.begin(), r.end(), rng_);
    ASSERT_EQ(edit_f_sentence(s, h, r, kDefaults), e);
    ASSERT_EQ(green_sentence(s, h, r, kDefaults), g);
  }
}

TEST_F(RandomTriples, HypothesisMatchingAReferenceScoresOne) {
  for (int i = 0; i < 200; ++i) {
    const Tokens s = random_tokens();
    std::vector<Tokens> r{random_tokens(), random_tokens()};
    const Tokens h = r[rng_() % 2];
    ASSERT_EQ(edit_f_sentence(s, h, r, kDefaults), 1.0);
    ASSERT_EQ(green_sentence(s, h, r, kDefaults), 1.0);
    ASSERT_DOUBLE_EQ(gleu_single_reference(s, h, h, kDefaults), 1.0);
  }
}

TEST_F(RandomTriples, SpuriousEditNeverHelps) {
  for (int i = 0; i < 200; ++i) {
    const Tokens s = random_tokens();
    const std::vector<Tokens> r{random_tokens()};
    Tokens h = r[0];
    h.insert(h.begin() + static_cast<std::ptrdiff_t>(rng_() % (h.size() + 1)), "zzz");
    ASSERT_LE(edit_f_sentence(s, h, r, kDefaults), edit_f_sentence(s, r[0], r, kDefaults));
  }
}

EvalCorpus random_corpus(std::mt19937& rng, std::size_t m) {
  const std::vector<std::string> vocab{"a", "b", "c", "d"};
  auto sentence = [&] {
    std::string s;
    for (std::size_t k = rng() % 6; k > 0; --k) s += vocab[rng() % vocab.size()] + " ";
    return s;
  };
  std::vector<std::string> sources;
  std::vector<std::vector<std::string>> references;
  std::vector<SystemOutputs> systems{{"A", {}}, {"B", {}}, {"C", {}}};
  for (std::size_t i = 0; i < m; ++i) {
    sources.push_back(sentence());
    references.push_back({sentence(), sentence(), sentence()});
    for (auto& s : systems) s.hypotheses.push_back(sentence());
  }
  return EvalCorpus(sources, systems, references);
}

TEST(ScoreMatrix, ShapeDeterminismAndThreadIndependence) {
  std::mt19937 rng(1);
  const EvalCorpus corpus = random_corpus(rng, 40);
  for (Metric metric : {Metric::kEditF, Metric::kGleuPlus, Metric::kGreen}) {
    MetricConfig c;
    c.metric = metric;
    c.gleu_iterations = 25;
    const ScoreMatrix once = score_matrix(corpus, c, 1);
    EXPECT_EQ(once.sentence_count(), 40u);
    EXPECT_EQ(once.system_count(), 3u);
    EXPECT_EQ(score_matrix(corpus, c, 1), once);
    EXPECT_EQ(score_matrix(corpus, c, 4), once);
    for (std::size_t i = 0; i < 40; ++i)
      for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_GE(once.at(i, k), 0.0);
        EXPECT_LE(once.at(i, k), 1.0);
      }
  }
}

TEST(ScoreMatrix, RejectsExternalAndMissingReferences) {
  const EvalCorpus no_refs({"a"}, {{"A", {"a"}}});
  MetricConfig c;
  EXPECT_THROW(score_matrix(no_refs, c), MissingReference);
  c.metric = Metric::kExternal;
  EXPECT_THROW(score_matrix(no_refs, c), ConfigError);
}

TEST(DeriveSeed, DistinctStreams) {
  EXPECT_NE(derive_seed(42, 0), derive_seed(42, 1));
  EXPECT_NE(derive_seed(42, 0), derive_seed(43, 0));
  EXPECT_EQ(derive_seed(42, 7), derive_seed(42, 7));
}

}  // namespace
}  // namespace gecrank
