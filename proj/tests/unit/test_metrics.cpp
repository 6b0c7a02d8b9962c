#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "cf/common/error.hpp"
#include "cf/metrics/bleu.hpp"
#include "cf/metrics/chrf.hpp"
#include "cf/metrics/classification.hpp"
#include "cf/metrics/meteor.hpp"
#include "cf/metrics/rouge.hpp"
#include "cf/metrics/tokenize.hpp"
#include "ngram_oracle.hpp"

namespace cf::metrics {
namespace {

using Tokens = std::vector<std::string>;

TEST(Tokenize, SplitsPunctuationFromWords) {
  EXPECT_EQ(tokenize("Ciao, mondo!"), (Tokens{"Ciao", ",", "mondo", "!"}));
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_TRUE(tokenize("   ").empty());
  EXPECT_EQ(tokenize("abc", TokenScheme::chr), (Tokens{"a", "b", "c"}));
  EXPECT_EQ(tokenize("a è", TokenScheme::chr), (Tokens{"a", "è"}));
  EXPECT_EQ(tokenize("costa 3,50 euro."), (Tokens{"costa", "3,50", "euro", "."}));
  EXPECT_EQ(tokenize("anni 1990-2000"), (Tokens{"anni", "1990", "-", "2000"}));
  EXPECT_EQ(tokenize("l'azes &amp; (qcn.)"), (Tokens{"l'azes", "&", "(", "qcn", ".", ")"}));
  EXPECT_EQ(tokenize("a\nb"), (Tokens{"a", "b"}));
}

TEST(Bleu, Identity) {
  EXPECT_DOUBLE_EQ(sentence_bleu("al é gnü mia ora", "al é gnü mia ora"), 100.0);
  EXPECT_DOUBLE_EQ(sentence_bleu("ciao", "ciao"), 100.0);
  EXPECT_DOUBLE_EQ(sentence_bleu("a b", "a b"), 100.0);
}

TEST(Bleu, DisjointAndEmpty) {
  EXPECT_EQ(sentence_bleu("x y z", "a b c"), 0.0);
  EXPECT_EQ(sentence_bleu("", "a b c"), 0.0);
  EXPECT_THROW(sentence_bleu("a", ""), ValidationError);
  EXPECT_THROW(sentence_bleu("a", "  "), ValidationError);
}

TEST(Bleu, ShortHypothesis) {
  // 4/4, 3/3, 2/2, 1/1 precisions, brevity penalty exp(1 - 5/4)
  const double expected = 100.0 * std::exp(1.0 - 5.0 / 4.0);
  EXPECT_NEAR(sentence_bleu("a b c d", "a b c d e"), expected, 1e-12);
  EXPECT_EQ(sentence_bleu("a b c d", "a b c d e"), oracle::bleu("a b c d", "a b c d e"));
}

TEST(Bleu, SmoothsMissingHigherOrders) {
  // unigrams 2/3, bigrams 0/2 -> 1/(2*2), trigrams 0/1 -> 1/(4*1)
  const double expected = 100.0 * std::exp((std::log(2.0 / 3.0) + std::log(0.25) + std::log(0.25)) / 3.0);
  EXPECT_NEAR(sentence_bleu("a x b", "a b"), expected, 1e-12);
}

TEST(Bleu, CorpusPoolsStatistics) {
  const std::vector<std::string> hyps{"il gatto è sul tavolo", "una casa bianca al lago"};
  const std::vector<std::string> refs{"il gatto è sotto il tavolo", "una casa bianca sul lago"};
  EXPECT_DOUBLE_EQ(corpus_bleu(refs, refs), 100.0);
  auto pooled = bleu_stats(tokenize(hyps[0]), tokenize(refs[0]));
  pooled += bleu_stats(tokenize(hyps[1]), tokenize(refs[1]));
  EXPECT_EQ(corpus_bleu(hyps, refs), bleu_from_stats(pooled));

  const std::vector<std::string> rh{hyps[1], hyps[0]};
  const std::vector<std::string> rr{refs[1], refs[0]};
  EXPECT_EQ(corpus_bleu(rh, rr), corpus_bleu(hyps, refs));
  EXPECT_THROW(corpus_bleu(hyps, std::vector<std::string>{refs[0]}), ValidationError);
}

TEST(Bleu, SinglePairMatchesSentenceWithoutSmoothing) {
  const std::string h = "il gatto nero dorme sul divano rosso";
  const std::string r = "il gatto nero dorme sul divano blu";
  const std::vector<std::string> hs{h};
  const std::vector<std::string> rs{r};
  EXPECT_EQ(corpus_bleu(hs, rs), sentence_bleu(h, r));
}

std::string random_sentence(std::mt19937_64& rng, std::size_t max_tokens) {
  static const Tokens vocab = {"a", "b", "c", "d", "il", "lago", "casa", "Casa", "ora", "gnü", ".", ",", "!", "?"};
  std::string s;
  const auto n = 1 + rng() % max_tokens;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s += ' ';
    s += vocab[rng() % vocab.size()];
  }
  // keep the oracle's tokenisation valid: only ASCII survives the char oracle
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return static_cast<unsigned char>(c) >= 0x80; }), s.end());
  while (s.find("  ") != std::string::npos) s.erase(s.find("  "), 1);
  while (!s.empty() && s.front() == ' ') s.erase(0, 1);
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s.empty() ? "a" : s;
}

TEST(Oracle, SentenceBleuAndChrfAreBitEqual) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 300; ++i) {
    const auto h = random_sentence(rng, 12);
    const auto r = random_sentence(rng, 12);
    EXPECT_EQ(sentence_bleu(h, r), oracle::bleu(h, r)) << h << " | " << r;
    EXPECT_EQ(chrf_pp(h, r), oracle::chrf_pp(h, r)) << h << " | " << r;
  }
}

TEST(Chrf, IdentityDisjointAndOracle) {
  EXPECT_DOUBLE_EQ(chrf_pp("gnü mia ora", "gnü mia ora"), 100.0);
  EXPECT_EQ(chrf_pp("xyz", "abc"), 0.0);
  EXPECT_EQ(chrf_pp("", "abc"), 0.0);
  EXPECT_THROW(chrf_pp("a", " "), ValidationError);
  EXPECT_EQ(chrf_pp("abcd", "abce"), oracle::chrf_pp("abcd", "abce"));
  // char orders 1..4: 3/4, 2/3, 1/2, 0/1; orders 5, 6 empty; word unigram 0/1, bigram empty
  const double p = (0.75 + 2.0 / 3.0 + 0.5 + 0.0 + 0.0) / 5.0;
  EXPECT_NEAR(chrf_pp("abcd", "abce"), 100.0 * p, 1e-12);
}

TEST(Chrf, WordSplitDetachesOnePunctuationMarkTrailingFirst) {
  EXPECT_EQ(chrf_words("ciao, mondo! (sì) !"), (Tokens{"ciao", ",", "mondo", "!", "(sì", ")", "!"}));
}

TEST(Chrf, CorpusPoolsStatistics) {
  const std::vector<std::string> h{"abc def", "ghi"};
  const std::vector<std::string> r{"abc deg", "ghi"};
  auto s = chrf_stats(h[0], r[0]);
  s += chrf_stats(h[1], r[1]);
  EXPECT_EQ(corpus_chrf_pp(h, r), chrf_from_stats(s));
  EXPECT_DOUBLE_EQ(corpus_chrf_pp(r, r), 100.0);
}

TEST(Rouge, LcsF1) {
  EXPECT_DOUBLE_EQ(rouge_l("a c", "a b c"), 80.0);
  EXPECT_DOUBLE_EQ(rouge_l("a b c", "a b c"), 100.0);
  EXPECT_EQ(rouge_l("x y", "a b c"), 0.0);
  EXPECT_EQ(rouge_l("", "a"), 0.0);
  EXPECT_THROW(rouge_l("a", ""), ValidationError);
  EXPECT_EQ(lcs_length({"a", "b", "c", "d"}, {"b", "d", "a"}), 2u);
}

TEST(Meteor, HandComputedValues) {
  EXPECT_DOUBLE_EQ(meteor("ora", "ora"), 0.5);
  EXPECT_DOUBLE_EQ(meteor("a b c d e f g h i j", "a b c d e f g h i j"), 1.0 - 0.5 / 1000.0);
  EXPECT_EQ(meteor("x y", "a b"), 0.0);
  EXPECT_EQ(meteor("", "a b"), 0.0);
  EXPECT_THROW(meteor("a", ""), ValidationError);
}

TEST(Meteor, ChunksAndFragmentation) {
  // hyp "b a": two matches in two chunks; P = R = 1
  const double frag = 0.5 * std::pow(2.0 / 2.0, 3.0);
  EXPECT_DOUBLE_EQ(meteor("b a", "a b"), 1.0 - frag);
  const auto al = exact_alignment({"a", "x", "a", "b"}, {"a", "b", "a"});
  EXPECT_EQ(al, (Alignment{{0, 0}, {2, 2}, {3, 1}}));
  EXPECT_EQ(count_chunks(al), 3u);
  // P = 3/4, R = 1
  const double fmean = 0.75 / (0.9 * 0.75 + 0.1);
  EXPECT_NEAR(meteor_tokens({"a", "x", "a", "b"}, {"a", "b", "a"}), fmean * (1.0 - 0.5 * 1.0), 1e-15);
}

TEST(Classification, ConfusionFixture) {
  const std::vector<int> golds{0, 0, 1, 1};
  const std::vector<int> preds{0, 1, 1, 1};
  const auto s = classification_metrics(preds, golds, F1Mode::binary_positive);
  EXPECT_DOUBLE_EQ(s.balanced_accuracy, 0.75);
  EXPECT_NEAR(s.f1, 2.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(s.per_class_recall.at(0), 0.5);
  EXPECT_DOUBLE_EQ(s.per_class_recall.at(1), 1.0);
}

TEST(Classification, PerfectAndConstantPredictors) {
  const std::vector<int> golds{0, 1, 0, 1, 1, 0};
  const auto perfect = classification_metrics(golds, golds, F1Mode::binary_positive);
  EXPECT_EQ(perfect.balanced_accuracy, 1.0);
  EXPECT_EQ(perfect.f1, 1.0);
  const std::vector<int> constant(6, 1);
  EXPECT_DOUBLE_EQ(classification_metrics(constant, golds, F1Mode::binary_positive).balanced_accuracy, 0.5);
  EXPECT_EQ(classification_metrics(constant, golds, F1Mode::binary_positive).f1, 0.0);
}

TEST(Classification, MacroF1AndBalancedEqualsAccuracyWhenBalanced) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    std::vector<int> golds;
    for (int c = 0; c < 3; ++c)
      for (int k = 0; k < 7; ++k) golds.push_back(c);
    std::vector<int> preds(golds.size());
    for (auto& p : preds) p = static_cast<int>(rng() % 3);
    const auto s = classification_metrics(preds, golds, F1Mode::macro);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < golds.size(); ++i) correct += preds[i] == golds[i];
    EXPECT_NEAR(s.balanced_accuracy, static_cast<double>(correct) / golds.size(), 1e-12);
    double mean_f1 = 0.0;
    for (const auto& [_, f] : s.per_class_f1) mean_f1 += f;
    EXPECT_NEAR(s.f1, mean_f1 / s.per_class_f1.size(), 1e-12);
  }
}

TEST(Classification, Errors) {
  const std::vector<int> a{0, 1};
  const std::vector<int> b{0};
  EXPECT_THROW(classification_metrics(a, b, F1Mode::macro), ValidationError);
  EXPECT_THROW(classification_metrics(std::vector<int>{}, std::vector<int>{}, F1Mode::macro), ValidationError);
  // declared class 1 absent from golds: left out of balanced accuracy
  const std::vector<int> g{0, 0};
  const std::vector<int> p{0, 1};
  const auto s = classification_metrics(p, g, F1Mode::binary_positive, std::vector<int>{0, 1});
  EXPECT_DOUBLE_EQ(s.balanced_accuracy, 0.5);
  EXPECT_EQ(s.per_class_recall.count(1), 0u);
}

std::string random_utf8(std::mt19937_64& rng, bool ensure_content) {
  static const std::vector<std::string> pieces = {"a", "Z", "è", "ß", "中", "😀", " ", "  ", "\t", "\n", ".", ",",
                                                  "-", "&amp;", "\xff", "\xc3", "9", "'", "<skipped>", "\xe2\x80\x83"};
  std::string s;
  const auto n = rng() % 30;
  for (std::size_t i = 0; i < n; ++i) s += pieces[rng() % pieces.size()];
  if (ensure_content) s += "x";
  return s;
}

TEST(Fuzz, ScoresStayInRange) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 2000; ++i) {
    const auto h = random_utf8(rng, false);
    const auto r = random_utf8(rng, true);
    const double b = sentence_bleu(h, r);
    const double c = chrf_pp(h, r);
    const double l = rouge_l(h, r);
    const double m = meteor(h, r);
    EXPECT_TRUE(b >= 0.0 && b <= 100.0) << b;
    EXPECT_TRUE(c >= 0.0 && c <= 100.0) << c;
    EXPECT_TRUE(l >= 0.0 && l <= 100.0) << l;
    EXPECT_TRUE(m >= 0.0 && m <= 1.0) << m;
  }
}

TEST(Fuzz, IdentityReachesMaximum) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const auto x = random_utf8(rng, true);
    EXPECT_EQ(sentence_bleu(x, x), 100.0) << x;
    EXPECT_EQ(chrf_pp(x, x), 100.0) << x;
    EXPECT_EQ(rouge_l(x, x), 100.0) << x;
    const double m = static_cast<double>(tokenize(x).size());
    EXPECT_EQ(meteor(x, x), 1.0 - 0.5 / (m * m * m)) << x;
  }
}

}  // namespace
}  // namespace cf::metrics
