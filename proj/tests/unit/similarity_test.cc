#include <gtest/gtest.h>

#include <cmath>

#include "advtext/errors.h"
#include "advtext/similarity.h"
#include "oracles.h"

using namespace advtext;

namespace {

EmbeddingStore plane() {
  EmbeddingStore s(2);
  s.add("x", std::vector<double>{1, 0});
  s.add("y", std::vector<double>{0, 1});
  s.add("good", std::vector<double>{3, 4});
  s.add("the", std::vector<double>{-1, 0});
  return s;
}

}  // namespace

TEST(EncodeAverage, SingleToken) {
  auto s = plane();
  auto v = encode_average(tokenize("good"), s);
  EXPECT_NEAR(v[0], 0.6, 1e-7);
  EXPECT_NEAR(v[1], 0.8, 1e-7);
}

TEST(EncodeAverage, NormalizedMean) {
  auto s = plane();
  auto v = encode_average(tokenize("x y"), s);
  EXPECT_NEAR(v[0], 0.70710678, 1e-7);
  EXPECT_NEAR(v[1], 0.70710678, 1e-7);
}

TEST(EncodeAverage, StopWordsSkippedUnlessNothingElse) {
  auto s = plane();
  StopWords stop({"the"});
  auto v = encode_average(tokenize("the x"), s, stop);
  EXPECT_NEAR(v[0], 1.0, 1e-7);
  auto only = encode_average(tokenize("the"), s, stop);
  EXPECT_NEAR(only[0], -1.0, 1e-7);
}

TEST(EncodeAverage, AllOovThrows) {
  auto s = plane();
  EXPECT_THROW(encode_average(tokenize("nothing here"), s), EncodingError);
  EXPECT_THROW(encode_average(tokenize(""), s), EncodingError);
}

TEST(SentenceSimilarity, IdentityAndDegenerate) {
  auto s = plane();
  StopWords stop;
  AverageEmbeddingEncoder enc(s, stop);
  auto a = tokenize("x good y");
  EXPECT_DOUBLE_EQ(sentence_similarity(a, a, enc).value, 1.0);
  auto r = sentence_similarity(a, tokenize("unknown words"), enc);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.value, 0.0);
}

TEST(SentenceSimilarity, HandComputed) {
  auto s = plane();
  StopWords stop;
  AverageEmbeddingEncoder enc(s, stop);
  // mean of x, good, y = (1.6, 1.8)/3; mean of x, good, x = (2.6, 0.8)/3
  double want = (1.6 * 2.6 + 1.8 * 0.8) / (std::hypot(1.6, 1.8) * std::hypot(2.6, 0.8));
  auto r = sentence_similarity(tokenize("x good y"), tokenize("x good x"), enc);
  EXPECT_FALSE(r.degenerate);
  EXPECT_NEAR(r.value, want, 1e-7);
  auto words = [](const char* t) { return oracle::split_spaces(t); };
  EXPECT_NEAR(r.value,
              oracle::cosine(oracle::mean_vector(words("x good y"), s, stop),
                             oracle::mean_vector(words("x good x"), s, stop)),
              1e-7);
}

TEST(SentenceSimilarity, ContextIgnored) {
  auto s = plane();
  StopWords stop;
  AverageEmbeddingEncoder enc(s, stop);
  auto a = tokenize("x");
  auto b = tokenize("x");
  b.context = tokenize("y y y").tokens;
  EXPECT_DOUBLE_EQ(sentence_similarity(a, b, enc).value, 1.0);
}

TEST(VectorSimilarity, ExactOneForIdentical) {
  Vector v{0.1, 0.2, 0.3};
  EXPECT_EQ(vector_similarity(v, v), 1.0);
}
