#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "advtext/errors.h"
#include "advtext/text.h"
#include "desk.h"

using namespace advtext;

namespace {

std::vector<std::string> surfaces(const Document& d) {
  std::vector<std::string> out;
  for (const auto& t : d.tokens) out.push_back(t.surface);
  return out;
}

std::string squash(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

}  // namespace

TEST(Tokenize, WordsAndTrailingPunctuation) {
  auto d = tokenize("Good movie!");
  EXPECT_EQ(surfaces(d), (std::vector<std::string>{"Good", "movie", "!"}));
  EXPECT_EQ(d.tokens[0].normalized, "good");
  EXPECT_EQ(d.tokens[2].index, 2u);
  EXPECT_EQ(word_count(d.tokens), 2u);
}

TEST(Tokenize, Empty) {
  EXPECT_TRUE(tokenize("").tokens.empty());
  EXPECT_TRUE(tokenize("   \t ").tokens.empty());
  EXPECT_EQ(detokenize(std::vector<Token>{}), "");
}

TEST(Tokenize, ApostropheStaysInWord) {
  auto d = tokenize("don't stop");
  EXPECT_EQ(surfaces(d), (std::vector<std::string>{"don't", "stop"}));
  EXPECT_EQ(detokenize(d), "don't stop");
}

TEST(Tokenize, Detokenize) {
  EXPECT_EQ(detokenize(tokenize("Good movie!")), "Good movie!");
  EXPECT_EQ(detokenize(tokenize("(really) good , fine.")), "( really) good, fine.");
}

// Round trip modulo whitespace over random strings of words and punctuation.
TEST(Tokenize, RoundTripProperty) {
  std::mt19937_64 rng(3);
  const std::string alphabet = "abcXYZ'.,!?()-\"  ";
  for (int trial = 0; trial < 500; ++trial) {
    std::string s;
    std::uniform_int_distribution<int> len(0, 40), pick(0, int(alphabet.size()) - 1);
    for (int i = len(rng); i > 0; --i) s += alphabet[pick(rng)];
    auto d = tokenize(s);
    EXPECT_EQ(squash(detokenize(d)), squash(s)) << s;
    EXPECT_EQ(tokenize(detokenize(d)).tokens.size(), d.tokens.size()) << s;
    for (std::size_t i = 0; i < d.tokens.size(); ++i) EXPECT_EQ(d.tokens[i].index, i);
  }
}

TEST(Punctuation, Classification) {
  EXPECT_TRUE(is_punctuation("!"));
  EXPECT_TRUE(is_punctuation("..."));
  EXPECT_FALSE(is_punctuation("a."));
  EXPECT_FALSE(is_punctuation(""));
}

TEST(PosTagger, SuffixRulesAndLexicon) {
  auto tagger = LexiconTagger::load(desk::data_dir() / "pos_lexicon.tsv");
  EXPECT_EQ(tagger.tag_word("quickly"), PosTag::kAdv);
  EXPECT_EQ(tagger.tag_word("movie"), PosTag::kNoun);
  EXPECT_EQ(tagger.tag_word("zxqv"), PosTag::kOther);
  EXPECT_EQ(LexiconTagger::suffix_rule("jumping"), PosTag::kVerb);
  EXPECT_EQ(LexiconTagger::suffix_rule("wanted"), PosTag::kVerb);
  EXPECT_EQ(LexiconTagger::suffix_rule("famous"), PosTag::kAdj);
  EXPECT_EQ(LexiconTagger::suffix_rule("hopeful"), PosTag::kAdj);
  EXPECT_EQ(LexiconTagger::suffix_rule("massive"), PosTag::kAdj);
}

TEST(PosTagger, LexiconWinsOverSuffix) {
  LexiconTagger t;
  t.add("family", PosTag::kNoun);
  EXPECT_EQ(t.tag_word("family"), PosTag::kNoun);
  EXPECT_EQ(t.tag_word("badly"), PosTag::kAdv);
}

TEST(PosTagger, MissingLexiconIsConfigError) {
  EXPECT_THROW(LexiconTagger::load("/nonexistent/lexicon.tsv"), ConfigError);
}

TEST(PosTagger, TagNames) {
  EXPECT_EQ(parse_pos_tag("NNS"), PosTag::kNoun);
  EXPECT_EQ(parse_pos_tag("VBD"), PosTag::kVerb);
  EXPECT_EQ(parse_pos_tag("JJ"), PosTag::kAdj);
  EXPECT_EQ(parse_pos_tag("RB"), PosTag::kAdv);
  EXPECT_EQ(parse_pos_tag("DET"), PosTag::kOther);
  EXPECT_EQ(to_string(PosTag::kAdj), "ADJ");
}

TEST(PosTagger, PrecomputedTagsWithFallback) {
  auto fallback = std::make_shared<LexiconTagger>();
  PrecomputedTagger t(fallback);
  t.add("run fast", {PosTag::kNoun, PosTag::kVerb});
  auto d = tag_pos(tokenize("run fast"), t);
  EXPECT_EQ(d.tokens[0].pos, PosTag::kNoun);
  EXPECT_EQ(d.tokens[1].pos, PosTag::kVerb);
  auto other = tag_pos(tokenize("quickly run"), t);
  EXPECT_EQ(other.tokens[0].pos, PosTag::kAdv);
}

TEST(StopWords, NltkList) {
  auto stop = desk::nltk_stopwords();
  EXPECT_TRUE(is_stop(make_token("the", 0), stop));
  EXPECT_TRUE(is_stop(make_token("When", 0), stop));
  EXPECT_FALSE(is_stop(make_token("estranged", 0), stop));
}

TEST(StopWords, UnionAndComments) {
  desk::TempDir tmp("stop");
  {
    std::ofstream(tmp / "a.txt") << "# list\nfoo\n\nbar\n";
    std::ofstream(tmp / "b.txt") << "baz\n";
  }
  auto s = StopWords::load_union({tmp / "a.txt", tmp / "b.txt"});
  EXPECT_EQ(s.size(), 3u);
  EXPECT_TRUE(s.contains("baz"));
  EXPECT_FALSE(s.contains("# list"));
  EXPECT_THROW(StopWords::load(tmp / "missing.txt"), ConfigError);
}

TEST(PrepareDocument, MarksStopsAndContext) {
  LexiconTagger tagger;
  auto stop = desk::nltk_stopwords();
  auto d = prepare_document("the boys play", std::string("Two small boys"), tagger, stop);
  ASSERT_TRUE(d.has_context());
  EXPECT_EQ(d.context->size(), 3u);
  EXPECT_TRUE(d.tokens[0].is_stop);
  EXPECT_FALSE(d.tokens[1].is_stop);
}
