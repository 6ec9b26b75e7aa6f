#include "advtext/text.h"

#include <algorithm>
#include <cctype>

namespace advtext {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_punct(char c) {
  return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_punctuation(std::string_view surface) {
  return !surface.empty() && std::all_of(surface.begin(), surface.end(), is_punct);
}

Token make_token(std::string surface, std::size_t index) {
  Token t;
  t.normalized = to_lower(surface);
  t.surface = std::move(surface);
  t.index = index;
  return t;
}

std::vector<Token> tokenize_tokens(std::string_view raw) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < raw.size()) {
    while (i < raw.size() && is_space(raw[i])) ++i;
    std::size_t end = i;
    while (end < raw.size() && !is_space(raw[end])) ++end;
    if (end == i) break;
    std::string_view chunk = raw.substr(i, end - i);
    i = end;

    std::size_t lead = 0;
    while (lead < chunk.size() && is_punct(chunk[lead])) ++lead;
    if (lead == chunk.size()) {
      for (char c : chunk) tokens.push_back(make_token(std::string(1, c), tokens.size()));
      continue;
    }
    std::size_t trail = chunk.size();
    while (trail > lead && is_punct(chunk[trail - 1])) --trail;

    for (std::size_t k = 0; k < lead; ++k) {
      tokens.push_back(make_token(std::string(1, chunk[k]), tokens.size()));
    }
    tokens.push_back(make_token(std::string(chunk.substr(lead, trail - lead)), tokens.size()));
    for (std::size_t k = trail; k < chunk.size(); ++k) {
      tokens.push_back(make_token(std::string(1, chunk[k]), tokens.size()));
    }
  }
  return tokens;
}

Document tokenize(std::string_view raw) {
  Document doc;
  doc.raw = std::string(raw);
  doc.tokens = tokenize_tokens(raw);
  return doc;
}

std::string detokenize(const std::vector<Token>& tokens) {
  std::string out;
  for (const Token& t : tokens) {
    if (!out.empty() && !is_punctuation(t.surface)) out.push_back(' ');
    out += t.surface;
  }
  return out;
}

std::string detokenize(const Document& doc) { return detokenize(doc.tokens); }

std::size_t word_count(const std::vector<Token>& tokens) {
  return static_cast<std::size_t>(std::count_if(
      tokens.begin(), tokens.end(), [](const Token& t) { return !is_punctuation(t.surface); }));
}

void reindex(std::vector<Token>& tokens) {
  for (std::size_t i = 0; i < tokens.size(); ++i) tokens[i].index = i;
}

bool is_stop(const Token& token, const StopWords& stoplist) {
  return stoplist.contains(token.normalized);
}

void mark_stop_words(Document& doc, const StopWords& stoplist) {
  for (Token& t : doc.tokens) t.is_stop = is_stop(t, stoplist);
  if (doc.context) {
    for (Token& t : *doc.context) t.is_stop = is_stop(t, stoplist);
  }
}

Document tag_pos(Document doc, const PosTagger& tagger) {
  tagger.tag(doc);
  return doc;
}

Document prepare_document(std::string_view text, const std::optional<std::string>& premise,
                          const PosTagger& tagger, const StopWords& stoplist) {
  Document doc = tokenize(text);
  if (premise) doc.context = tokenize_tokens(*premise);
  tagger.tag(doc);
  mark_stop_words(doc, stoplist);
  return doc;
}

}  // namespace advtext
