#include "advtext/target.h"

#include <algorithm>
#include <cmath>

#include "advtext/errors.h"

namespace advtext {

std::size_t LabelDistribution::argmax() const {
  return static_cast<std::size_t>(
      std::max_element(probabilities.begin(), probabilities.end()) - probabilities.begin());
}

void validate_distribution(const LabelDistribution& dist, double tolerance) {
  if (dist.size() < 2) throw ContractError("label distribution needs at least 2 labels");
  double sum = 0.0;
  for (double p : dist.probabilities) {
    if (!(p >= 0.0 && p <= 1.0)) throw ContractError("probability outside [0, 1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > tolerance) {
    throw ContractError("probabilities sum to " + std::to_string(sum) + ", not 1");
  }
}

std::optional<std::size_t> TargetModel::label_id(std::string_view name) const {
  const auto& ls = labels();
  auto it = std::find(ls.begin(), ls.end(), name);
  if (it == ls.end()) return std::nullopt;
  return static_cast<std::size_t>(it - ls.begin());
}

std::vector<LabelDistribution> predict_batch(const TargetModel& model,
                                             std::span<const std::string> texts,
                                             QueryCounter& counter) {
  if (texts.empty()) return {};
  auto rows = model.predict_batch(texts);
  if (rows.size() != texts.size()) {
    throw ContractError(model.describe() + " returned " + std::to_string(rows.size()) +
                        " distributions for " + std::to_string(texts.size()) + " texts");
  }
  for (const auto& r : rows) {
    validate_distribution(r);
    if (r.size() != model.labels().size()) {
      throw ContractError(model.describe() + " returned a row of the wrong width");
    }
  }
  counter.add(texts.size());
  return rows;
}

LabelDistribution predict_one(const TargetModel& model, const std::string& text,
                              QueryCounter& counter) {
  return std::move(predict_batch(model, std::span<const std::string>(&text, 1), counter).front());
}

namespace {

void append_escaped(std::string& out, std::string_view field) {
  for (char c : field) {
    if (c == '\\' || c == '|') out.push_back('\\');
    out.push_back(c);
  }
}

std::string unescape(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field[i] == '\\' && i + 1 < field.size()) ++i;
    out.push_back(field[i]);
  }
  return out;
}

}  // namespace

std::string entailment_compose(std::string_view premise, std::string_view hypothesis) {
  std::string out;
  out.reserve(premise.size() + hypothesis.size() + kEntailmentSeparator.size());
  append_escaped(out, premise);
  out += kEntailmentSeparator;
  append_escaped(out, hypothesis);
  return out;
}

std::optional<std::pair<std::string, std::string>> entailment_split(std::string_view text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\\') {
      ++i;
      continue;
    }
    if (text.substr(i, kEntailmentSeparator.size()) == kEntailmentSeparator) {
      return std::make_pair(unescape(text.substr(0, i)),
                            unescape(text.substr(i + kEntailmentSeparator.size())));
    }
  }
  return std::nullopt;
}

}  // namespace advtext
