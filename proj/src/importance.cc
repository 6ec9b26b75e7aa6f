#include "advtext/importance.h"

#include <algorithm>

#include "advtext/errors.h"

namespace advtext {

std::string model_text(const std::vector<Token>& tokens, const Document& shape) {
  if (shape.context) return entailment_compose(detokenize(*shape.context), detokenize(tokens));
  return detokenize(tokens);
}

std::string model_text(const Document& doc) { return model_text(doc.tokens, doc); }

double deletion_importance(const LabelDistribution& full, const LabelDistribution& deleted,
                           std::size_t label) {
  double score = full[label] - deleted[label];
  const std::size_t after = deleted.argmax();
  if (after != label) score += deleted[after] - full[after];
  return score;
}

ImportanceResult importance_scores(const Document& doc, const TargetModel& model,
                                   QueryCounter& counter) {
  const std::size_t n = doc.tokens.size();
  std::vector<std::string> texts;
  texts.reserve(n + 1);
  texts.push_back(model_text(doc));
  std::vector<Token> without;
  without.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    without.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) without.push_back(doc.tokens[j]);
    }
    texts.push_back(model_text(without, doc));
  }
  auto dists = predict_batch(model, texts, counter);

  ImportanceResult result;
  result.original = std::move(dists.front());
  result.label = result.original.argmax();
  result.scores.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    result.scores.push_back(
        {doc.tokens[i].index, deletion_importance(result.original, dists[i + 1], result.label)});
  }
  return result;
}

std::vector<std::size_t> rank_words(std::span<const ImportanceScore> scores, const Document& doc,
                                    const StopWords& stoplist) {
  std::vector<ImportanceScore> sorted(scores.begin(), scores.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.token_index < b.token_index;
  });
  std::vector<std::size_t> order;
  order.reserve(sorted.size());
  for (const auto& s : sorted) {
    if (s.token_index >= doc.tokens.size()) {
      throw std::out_of_range("importance score for token " + std::to_string(s.token_index) +
                              " outside the document");
    }
    if (!stoplist.contains(doc.tokens[s.token_index].normalized)) order.push_back(s.token_index);
  }
  return order;
}

}  // namespace advtext
