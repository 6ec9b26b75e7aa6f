#ifndef ADVTEXT_TARGET_H_
#define ADVTEXT_TARGET_H_

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "advtext/http.h"

namespace advtext {

struct LabelDistribution {
  std::vector<double> probabilities;

  std::size_t size() const { return probabilities.size(); }
  double operator[](std::size_t label) const { return probabilities[label]; }
  // Lowest label id among the maxima.
  std::size_t argmax() const;

  bool operator==(const LabelDistribution&) const = default;
};

// Throws ContractError unless there are >= 2 entries in [0, 1] summing to
// 1 within `tolerance`.
void validate_distribution(const LabelDistribution& dist, double tolerance = 1e-6);

// A black-box classifier: text in, label probabilities out. Implementations
// must be deterministic per text and safe for concurrent calls.
class TargetModel {
 public:
  virtual ~TargetModel() = default;

  virtual const std::vector<std::string>& labels() const = 0;
  virtual std::vector<LabelDistribution> predict_batch(std::span<const std::string> texts) const = 0;
  virtual std::string describe() const = 0;

  std::optional<std::size_t> label_id(std::string_view name) const;
};

// Counts scored texts, not round-trips.
class QueryCounter {
 public:
  void add(std::uint64_t n) { count_.fetch_add(n, std::memory_order_relaxed); }
  std::uint64_t count() const { return count_.load(std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> count_{0};
};

// Scores `texts` and advances `counter` by texts.size() once the model
// returns a well-formed answer. Row count and probability mass are checked.
std::vector<LabelDistribution> predict_batch(const TargetModel& model,
                                             std::span<const std::string> texts,
                                             QueryCounter& counter);
LabelDistribution predict_one(const TargetModel& model, const std::string& text,
                              QueryCounter& counter);

// Premise and hypothesis joined for a single query. Backslash and '|' inside
// a field are escaped, so the first unescaped separator splits the pair.
inline constexpr std::string_view kEntailmentSeparator = " ||| ";
std::string entailment_compose(std::string_view premise, std::string_view hypothesis);
std::optional<std::pair<std::string, std::string>> entailment_split(std::string_view text);

struct LabeledText {
  std::string text;
  std::optional<std::string> premise;
  std::string label;
};

struct BowConfig {
  double alpha = 1.0;  // additive smoothing
};

// Multinomial naive Bayes over lowercased tokens. Tokens never seen in
// training carry no evidence. Entailment inputs are split and both fields
// are pooled into one bag.
class BowClassifier : public TargetModel {
 public:
  BowClassifier(std::vector<std::string> labels, std::vector<std::uint64_t> doc_counts,
                std::map<std::string, std::vector<std::uint64_t>> word_counts, double alpha);

  const std::vector<std::string>& labels() const override { return labels_; }
  std::vector<LabelDistribution> predict_batch(std::span<const std::string> texts) const override;
  std::string describe() const override;

  LabelDistribution predict(std::string_view text) const;

  double alpha() const { return alpha_; }
  const std::vector<std::uint64_t>& doc_counts() const { return doc_counts_; }
  const std::map<std::string, std::vector<std::uint64_t>>& word_counts() const { return word_counts_; }

  // Versioned JSON file: format, version, labels, doc_counts, alpha, vocabulary.
  void save(const std::filesystem::path& path) const;
  static BowClassifier load(const std::filesystem::path& path);

  static std::vector<std::string> bag_of_words(std::string_view text);

 private:
  std::vector<std::string> labels_;
  std::vector<std::uint64_t> doc_counts_;
  std::map<std::string, std::vector<std::uint64_t>> word_counts_;
  double alpha_;

  std::vector<double> log_prior_;
  std::unordered_map<std::string, std::vector<double>> log_likelihood_;
};

// Labels are sorted by name. Throws TrainingError for fewer than two labels
// or a non-positive alpha.
BowClassifier train_bow_classifier(std::span<const LabeledText> corpus, const BowConfig& config = {});

// Client for a scoring service: POST {"texts": [...]} ->
// {"labels": [...], "probabilities": [[...], ...]}. One request per batch.
class RemoteScorer : public TargetModel {
 public:
  RemoteScorer(Endpoint endpoint, std::vector<std::string> labels, RetryPolicy policy = {});

  const std::vector<std::string>& labels() const override { return labels_; }
  std::vector<LabelDistribution> predict_batch(std::span<const std::string> texts) const override;
  std::string describe() const override { return "remote:" + endpoint_.to_string(); }

 private:
  Endpoint endpoint_;
  std::vector<std::string> labels_;
  RetryPolicy policy_;
};

RemoteScorer remote_scorer(std::string_view url, std::vector<std::string> labels,
                           RetryPolicy policy = {});

}  // namespace advtext

#endif  // ADVTEXT_TARGET_H_
