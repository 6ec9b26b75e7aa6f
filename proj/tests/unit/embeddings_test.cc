#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "advtext/embeddings.h"
#include "advtext/errors.h"
#include "desk.h"
#include "oracles.h"

using namespace advtext;

TEST(Embeddings, LoadNormalizes) {
  desk::TempDir tmp("emb");
  std::ofstream(tmp / "v.txt") << "a 1 0 0 0\nb 2 0 0 0\nc 0 3 4 0\n";
  auto s = EmbeddingStore::load(tmp / "v.txt");
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s.dimension(), 4u);
  auto b = *s.find("b");
  EXPECT_FLOAT_EQ(b[0], 1.0f);
  EXPECT_FLOAT_EQ(b[1], 0.0f);
  auto c = *s.find("c");
  EXPECT_FLOAT_EQ(c[1], 0.6f);
  EXPECT_FLOAT_EQ(c[2], 0.8f);
}

TEST(Embeddings, HeaderZeroVectorAndDuplicates) {
  desk::TempDir tmp("emb");
  std::ofstream(tmp / "v.txt") << "3 2\nx 1 0\nz 0 0\nx 0 1\n";
  auto s = EmbeddingStore::load(tmp / "v.txt");
  EXPECT_EQ(s.size(), 1u);
  EXPECT_FALSE(s.contains("z"));
  EXPECT_FLOAT_EQ((*s.find("x"))[0], 1.0f);
  EXPECT_FALSE(s.warnings().empty());
}

TEST(Embeddings, DimensionMismatchNamesLine) {
  desk::TempDir tmp("emb");
  std::ofstream(tmp / "v.txt") << "a 1 0 0\nb 1 0\n";
  try {
    EmbeddingStore::load(tmp / "v.txt");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(EmbeddingStore::load(tmp / "missing.txt"), Error);
}

TEST(Cosine, Examples) {
  std::vector<double> x{1, 0}, y{0, 1}, d{1, 1};
  EXPECT_DOUBLE_EQ(cosine(x, x), 1.0);
  EXPECT_DOUBLE_EQ(cosine(x, y), 0.0);
  EXPECT_NEAR(cosine(d, x), 0.70710678, 1e-8);
  std::vector<double> z{0, 0}, three{1, 0, 0};
  EXPECT_THROW(cosine(x, z), std::invalid_argument);
  EXPECT_THROW(cosine(x, three), std::invalid_argument);
}

namespace {

EmbeddingStore toy_store() {
  EmbeddingStore s(3);
  s.add("a", std::vector<double>{1, 0, 0});
  s.add("b", std::vector<double>{0.9, 0.1, 0});
  s.add("c", std::vector<double>{0.7, 0.7, 0});
  s.add("d", std::vector<double>{0, 0, 1});
  return s;
}

}  // namespace

TEST(NearestSynonyms, ToyStoreMatchesScan) {
  auto s = toy_store();
  for (std::size_t n : {1, 2, 3, 10}) {
    for (double delta : {0.0, 0.5, 0.7, 0.99}) {
      EXPECT_EQ(nearest_synonyms("a", s, n, delta), oracle::scan_synonyms("a", s, n, delta))
          << n << " " << delta;
    }
  }
  auto top = nearest_synonyms("a", s, 2, 0.0);
  ASSERT_EQ(top.size(), 2u);
  EXPECT_EQ(top[0].word, "b");
  EXPECT_EQ(top[1].word, "c");
}

TEST(NearestSynonyms, OovAndDeltaOne) {
  auto s = toy_store();
  EXPECT_TRUE(nearest_synonyms("zzz", s, 5, 0.0).empty());
  EXPECT_TRUE(nearest_synonyms("a", s, 5, 1.0).empty());
  EXPECT_TRUE(nearest_synonyms("a", s, 0, 0.0).empty());
}

TEST(NearestSynonyms, TiesByWord) {
  EmbeddingStore s(2);
  s.add("q", std::vector<double>{1, 0});
  s.add("zeta", std::vector<double>{1, 1});
  s.add("alpha", std::vector<double>{1, -1});
  auto r = nearest_synonyms("q", s, 5, 0.0);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].word, "alpha");
  EXPECT_EQ(r[1].word, "zeta");
}

TEST(NearestSynonyms, MonotoneInNAndDelta) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  EmbeddingStore s(8);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> v(8);
    for (auto& x : v) x = g(rng);
    s.add("w" + std::to_string(i), v);
  }
  for (int q = 0; q < 20; ++q) {
    std::string w = "w" + std::to_string(q * 7);
    auto prev = nearest_synonyms(w, s, 1, 0.1);
    for (std::size_t n = 2; n < 30; n += 3) {
      auto cur = nearest_synonyms(w, s, n, 0.1);
      ASSERT_GE(cur.size(), prev.size());
      for (std::size_t i = 0; i < prev.size(); ++i) EXPECT_EQ(cur[i], prev[i]);
      prev = cur;
    }
    EXPECT_LE(nearest_synonyms(w, s, 50, 0.3).size(), nearest_synonyms(w, s, 50, 0.2).size());
  }
}

TEST(SynonymCache, SameAsDirect) {
  auto s = toy_store();
  SynonymCache cache(s);
  EXPECT_EQ(cache.get("a", 3, 0.5), nearest_synonyms("a", s, 3, 0.5));
  EXPECT_EQ(cache.get("a", 3, 0.5), nearest_synonyms("a", s, 3, 0.5));
  EXPECT_EQ(cache.size(), 1u);
}
