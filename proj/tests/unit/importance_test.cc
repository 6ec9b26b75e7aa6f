#include <gtest/gtest.h>

#include <random>

#include "advtext/importance.h"
#include "desk.h"
#include "oracles.h"

using namespace advtext;

TEST(DeletionImportance, SameLabel) {
  EXPECT_NEAR(deletion_importance({{0.9, 0.1}}, {{0.6, 0.4}}, 0), 0.3, 1e-12);
}

TEST(DeletionImportance, LabelFlips) {
  EXPECT_NEAR(deletion_importance({{0.6, 0.4}}, {{0.3, 0.7}}, 0), 0.6, 1e-12);
}

TEST(DeletionImportance, NoInfluence) {
  EXPECT_EQ(deletion_importance({{0.6, 0.4}}, {{0.6, 0.4}}, 0), 0.0);
}

TEST(DeletionImportance, ThreeLabels) {
  // Y = 0, deletion moves the top to label 2
  LabelDistribution full{{0.5, 0.2, 0.3}}, del{{0.3, 0.2, 0.5}};
  EXPECT_NEAR(deletion_importance(full, del, 0), 0.2 + 0.2, 1e-12);
}

TEST(RankWords, DescendingWithLeftmostTies) {
  StopWords none;
  auto doc = tokenize("alpha beta gamma");
  std::vector<ImportanceScore> s{{0, 0.1}, {1, 0.5}, {2, 0.3}};
  EXPECT_EQ(rank_words(s, doc, none), (std::vector<std::size_t>{1, 2, 0}));

  auto five = tokenize("a b c d e");
  std::vector<ImportanceScore> tie{{0, 0.0}, {1, 0.1}, {2, 0.4}, {3, 0.2}, {4, 0.4}};
  EXPECT_EQ(rank_words(tie, five, none), (std::vector<std::size_t>{2, 4, 3, 1, 0}));
}

TEST(RankWords, StopWordsFiltered) {
  auto stop = desk::nltk_stopwords();
  auto doc = tokenize("the film was when");
  std::vector<ImportanceScore> s{{0, 0.9}, {1, 0.1}, {2, 0.8}, {3, 0.7}};
  EXPECT_EQ(rank_words(s, doc, stop), (std::vector<std::size_t>{1}));
  auto all = tokenize("the was when");
  std::vector<ImportanceScore> t{{0, 0.9}, {1, 0.1}, {2, 0.8}};
  EXPECT_TRUE(rank_words(t, all, stop).empty());
}

TEST(ImportanceScores, MatchesOracleWithNPlusOneQueries) {
  auto model = desk::train(desk::training_corpus(7, 120));
  std::vector<std::string> vocab;
  for (const auto& [w, c] : model.word_counts()) vocab.push_back(w);
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1), len(1, 10);
  auto posterior = [&](const std::vector<std::string>& ws) {
    return oracle::nb_posterior(model.doc_counts(), model.word_counts(), model.alpha(), ws);
  };
  for (int i = 0; i < 30; ++i) {
    std::vector<std::string> words;
    for (auto k = len(rng); k > 0; --k) words.push_back(vocab[pick(rng)]);
    auto doc = tokenize(oracle::join_spaces(words));
    QueryCounter counter;
    auto r = importance_scores(doc, model, counter);
    EXPECT_EQ(counter.count(), words.size() + 1);
    auto want = oracle::deletion_scores(words, posterior);
    ASSERT_EQ(r.scores.size(), want.size());
    for (std::size_t k = 0; k < want.size(); ++k) {
      EXPECT_EQ(r.scores[k].token_index, k);
      EXPECT_NEAR(r.scores[k].score, want[k], 1e-9);
    }
  }
}

TEST(ImportanceScores, ContextNeverDeleted) {
  std::vector<LabeledText> corpus{{"boys play", std::string("two boys"), "yes"},
                                  {"girls sleep", std::string("a cat"), "no"}};
  auto model = train_bow_classifier(corpus);
  auto doc = tokenize("boys sleep");
  doc.context = tokenize("two boys").tokens;
  EXPECT_EQ(model_text(doc), entailment_compose("two boys", "boys sleep"));
  QueryCounter counter;
  auto r = importance_scores(doc, model, counter);
  EXPECT_EQ(r.scores.size(), 2u);
  EXPECT_EQ(counter.count(), 3u);
}
