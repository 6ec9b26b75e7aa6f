#ifndef ADVTEXT_IMPORTANCE_H_
#define ADVTEXT_IMPORTANCE_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "advtext/target.h"
#include "advtext/text.h"

namespace advtext {

// The text sent to the model: the mutable tokens, composed with the premise
// when the document has one.
std::string model_text(const Document& doc);
std::string model_text(const std::vector<Token>& tokens, const Document& shape);

struct ImportanceScore {
  std::size_t token_index = 0;
  double score = 0.0;
};

struct ImportanceResult {
  LabelDistribution original;  // F(X)
  std::size_t label = 0;       // Y = argmax F(X)
  std::vector<ImportanceScore> scores;
};

// Change in the model's prediction when one token is deleted. With Y the
// original label and Y' the label after deletion:
//   Y' == Y: F_Y(X) - F_Y(X\w)
//   Y' != Y: F_Y(X) - F_Y(X\w) + F_Y'(X\w) - F_Y'(X)
double deletion_importance(const LabelDistribution& full, const LabelDistribution& deleted,
                           std::size_t label);

// Scores every mutable token (context tokens are never deleted) with one
// batched call of n + 1 texts.
ImportanceResult importance_scores(const Document& doc, const TargetModel& model,
                                   QueryCounter& counter);

// Non-stop token indices by descending score, ties leftmost first.
std::vector<std::size_t> rank_words(std::span<const ImportanceScore> scores, const Document& doc,
                                    const StopWords& stoplist);

}  // namespace advtext

#endif  // ADVTEXT_IMPORTANCE_H_
