#ifndef ADVTEXT_TEXT_H_
#define ADVTEXT_TEXT_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace advtext {

// Coarse part-of-speech classes. Synonym filtering only needs tag equality,
// so five classes are enough.
enum class PosTag { kNoun, kVerb, kAdj, kAdv, kOther };

std::string_view to_string(PosTag tag);
// Accepts NOUN/VERB/ADJ/ADV/OTHER plus common Penn and universal tags
// (NN*, VB*, JJ*, RB*, PROPN, AUX). Anything else maps to kOther.
PosTag parse_pos_tag(std::string_view name);

struct Token {
  std::string surface;
  std::string normalized;  // lowercased surface
  PosTag pos = PosTag::kOther;
  bool is_stop = false;
  std::size_t index = 0;

  bool operator==(const Token&) const = default;
};

// One unit under attack. `tokens` is the mutable field; `context` holds an
// immutable premise for entailment-style inputs and is never edited.
struct Document {
  std::vector<Token> tokens;
  std::optional<std::vector<Token>> context;
  std::string raw;

  bool has_context() const { return context.has_value(); }
};

Token make_token(std::string surface, std::size_t index);

// Splits on ASCII whitespace, then peels leading and trailing ASCII
// punctuation off each chunk as single-character tokens. Punctuation inside
// a chunk ("don't", "a.b") stays with the word.
Document tokenize(std::string_view raw);
std::vector<Token> tokenize_tokens(std::string_view raw);

// Joins with single spaces; punctuation tokens attach to the preceding token.
std::string detokenize(const std::vector<Token>& tokens);
std::string detokenize(const Document& doc);

// True when every byte is ASCII punctuation.
bool is_punctuation(std::string_view surface);

std::string to_lower(std::string_view s);

// Count of tokens that are not pure punctuation.
std::size_t word_count(const std::vector<Token>& tokens);

// Reassigns 0..n-1 indices.
void reindex(std::vector<Token>& tokens);

class StopWords {
 public:
  StopWords() = default;
  explicit StopWords(std::unordered_set<std::string> words);

  // One word per line, '#' starts a comment, blank lines ignored.
  static StopWords load(const std::filesystem::path& path);
  static StopWords load_union(const std::vector<std::filesystem::path>& paths);

  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

bool is_stop(const Token& token, const StopWords& stoplist);
void mark_stop_words(Document& doc, const StopWords& stoplist);

class PosTagger {
 public:
  virtual ~PosTagger() = default;

  // Context-free tag for a single normalized word; used for candidates.
  virtual PosTag tag_word(std::string_view normalized) const = 0;

  // Tags every token of the mutable field and the context.
  virtual void tag(Document& doc) const;
};

// Lexicon lookup with suffix-rule fallback.
class LexiconTagger : public PosTagger {
 public:
  LexiconTagger() = default;
  explicit LexiconTagger(std::unordered_map<std::string, PosTag> lexicon);

  // Lines of "word<TAB>TAG"; '#' comments allowed. Missing file throws
  // ConfigError.
  static LexiconTagger load(const std::filesystem::path& path);

  PosTag tag_word(std::string_view normalized) const override;

  void add(std::string word, PosTag tag);
  std::size_t size() const { return lexicon_.size(); }

  static PosTag suffix_rule(std::string_view normalized);

 private:
  std::unordered_map<std::string, PosTag> lexicon_;
};

// Tags supplied per raw text by an external tagger. Documents whose raw text
// is unknown, or whose tag count does not match, fall back to `fallback`.
class PrecomputedTagger : public PosTagger {
 public:
  explicit PrecomputedTagger(std::shared_ptr<const PosTagger> fallback);

  void add(std::string raw, std::vector<PosTag> tags);

  PosTag tag_word(std::string_view normalized) const override;
  void tag(Document& doc) const override;

 private:
  std::shared_ptr<const PosTagger> fallback_;
  std::unordered_map<std::string, std::vector<PosTag>> tags_;
};

Document tag_pos(Document doc, const PosTagger& tagger);

// tokenize + tag + stop marks. `premise`, when given, becomes the context.
Document prepare_document(std::string_view text, const std::optional<std::string>& premise,
                          const PosTagger& tagger, const StopWords& stoplist);

}  // namespace advtext

#endif  // ADVTEXT_TEXT_H_
