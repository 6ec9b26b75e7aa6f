#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

#include "advtext/errors.h"
#include "advtext/text.h"
#include "line_reader.h"

namespace advtext {

std::string_view to_string(PosTag tag) {
  switch (tag) {
    case PosTag::kNoun: return "NOUN";
    case PosTag::kVerb: return "VERB";
    case PosTag::kAdj: return "ADJ";
    case PosTag::kAdv: return "ADV";
    case PosTag::kOther: return "OTHER";
  }
  return "OTHER";
}

PosTag parse_pos_tag(std::string_view name) {
  std::string up(name);
  for (char& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  auto starts = [&](std::string_view p) { return up.rfind(p, 0) == 0; };
  if (up == "NOUN" || up == "PROPN" || starts("NN")) return PosTag::kNoun;
  if (up == "VERB" || up == "AUX" || starts("VB") || up == "MD") return PosTag::kVerb;
  if (up == "ADJ" || starts("JJ")) return PosTag::kAdj;
  if (up == "ADV" || starts("RB") || up == "WRB") return PosTag::kAdv;
  return PosTag::kOther;
}

void PosTagger::tag(Document& doc) const {
  for (Token& t : doc.tokens) t.pos = tag_word(t.normalized);
  if (doc.context) {
    for (Token& t : *doc.context) t.pos = tag_word(t.normalized);
  }
}

LexiconTagger::LexiconTagger(std::unordered_map<std::string, PosTag> lexicon)
    : lexicon_(std::move(lexicon)) {}

LexiconTagger LexiconTagger::load(const std::filesystem::path& path) {
  auto in = internal::open_for_read(path, "POS lexicon");
  LexiconTagger tagger;
  std::string line;
  std::size_t lineno = 0;
  while (internal::read_line(in, line)) {
    ++lineno;
    auto body = internal::trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto tab = body.find('\t');
    if (tab == std::string_view::npos) {
      throw ParseError(path.string(), lineno, "expected word<TAB>TAG");
    }
    auto word = internal::trim(body.substr(0, tab));
    auto tag = internal::trim(body.substr(tab + 1));
    if (word.empty() || tag.empty()) {
      throw ParseError(path.string(), lineno, "empty word or tag");
    }
    // First entry wins so a lexicon can list a word's dominant reading first.
    tagger.lexicon_.emplace(to_lower(word), parse_pos_tag(tag));
  }
  return tagger;
}

void LexiconTagger::add(std::string word, PosTag tag) {
  lexicon_.insert_or_assign(to_lower(word), tag);
}

PosTag LexiconTagger::suffix_rule(std::string_view w) {
  struct Rule {
    std::string_view suffix;
    PosTag tag;
  };
  // Longer suffixes first; a rule needs at least three stem characters.
  static constexpr std::array<Rule, 17> kRules{{
      {"ously", PosTag::kAdv},  {"fully", PosTag::kAdv},  {"ness", PosTag::kNoun},
      {"ment", PosTag::kNoun},  {"tion", PosTag::kNoun},  {"sion", PosTag::kNoun},
      {"less", PosTag::kAdj},   {"able", PosTag::kAdj},   {"ible", PosTag::kAdj},
      {"ing", PosTag::kVerb},   {"ous", PosTag::kAdj},    {"ful", PosTag::kAdj},
      {"ive", PosTag::kAdj},    {"ity", PosTag::kNoun},   {"ize", PosTag::kVerb},
      {"ly", PosTag::kAdv},     {"ed", PosTag::kVerb},
  }};
  if (w.empty() || !std::all_of(w.begin(), w.end(), [](char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '-' || c == '\'';
      })) {
    return PosTag::kOther;
  }
  for (const Rule& r : kRules) {
    if (w.size() >= r.suffix.size() + 3 && w.substr(w.size() - r.suffix.size()) == r.suffix) {
      return r.tag;
    }
  }
  return PosTag::kOther;
}

PosTag LexiconTagger::tag_word(std::string_view normalized) const {
  if (auto it = lexicon_.find(std::string(normalized)); it != lexicon_.end()) return it->second;
  return suffix_rule(normalized);
}

PrecomputedTagger::PrecomputedTagger(std::shared_ptr<const PosTagger> fallback)
    : fallback_(std::move(fallback)) {}

void PrecomputedTagger::add(std::string raw, std::vector<PosTag> tags) {
  tags_.insert_or_assign(std::move(raw), std::move(tags));
}

PosTag PrecomputedTagger::tag_word(std::string_view normalized) const {
  return fallback_->tag_word(normalized);
}

void PrecomputedTagger::tag(Document& doc) const {
  fallback_->tag(doc);
  auto it = tags_.find(doc.raw);
  if (it == tags_.end() || it->second.size() != doc.tokens.size()) return;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) doc.tokens[i].pos = it->second[i];
}

}  // namespace advtext
