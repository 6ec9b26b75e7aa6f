#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "advtext/errors.h"
#include "advtext/target.h"
#include "advtext/text.h"

namespace advtext {

namespace {

constexpr std::string_view kFormat = "advtext-bow";
constexpr int kVersion = 1;

}  // namespace

std::vector<std::string> BowClassifier::bag_of_words(std::string_view text) {
  std::vector<std::string> words;
  auto add = [&](std::string_view part) {
    for (auto& t : tokenize_tokens(part)) words.push_back(std::move(t.normalized));
  };
  if (auto pair = entailment_split(text)) {
    add(pair->first);
    add(pair->second);
  } else {
    add(text);
  }
  return words;
}

BowClassifier::BowClassifier(std::vector<std::string> labels, std::vector<std::uint64_t> doc_counts,
                             std::map<std::string, std::vector<std::uint64_t>> word_counts,
                             double alpha)
    : labels_(std::move(labels)),
      doc_counts_(std::move(doc_counts)),
      word_counts_(std::move(word_counts)),
      alpha_(alpha) {
  const std::size_t k = labels_.size();
  if (k < 2) throw TrainingError("classifier needs at least 2 labels");
  if (doc_counts_.size() != k) throw TrainingError("doc_counts width differs from label count");
  if (!(alpha_ > 0.0)) throw TrainingError("smoothing constant must be positive");

  std::vector<double> totals(k, 0.0);
  for (const auto& [word, counts] : word_counts_) {
    if (counts.size() != k) throw TrainingError("word counts for '" + word + "' have wrong width");
    for (std::size_t c = 0; c < k; ++c) totals[c] += static_cast<double>(counts[c]);
  }
  double docs = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    if (doc_counts_[c] == 0) throw TrainingError("label '" + labels_[c] + "' has no documents");
    docs += static_cast<double>(doc_counts_[c]);
  }

  log_prior_.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    log_prior_[c] = std::log(static_cast<double>(doc_counts_[c]) / docs);
  }
  const double vocab = static_cast<double>(word_counts_.size());
  for (const auto& [word, counts] : word_counts_) {
    std::vector<double> ll(k);
    for (std::size_t c = 0; c < k; ++c) {
      ll[c] = std::log((static_cast<double>(counts[c]) + alpha_) / (totals[c] + alpha_ * vocab));
    }
    log_likelihood_.emplace(word, std::move(ll));
  }
}

LabelDistribution BowClassifier::predict(std::string_view text) const {
  std::vector<double> score = log_prior_;
  for (const auto& w : bag_of_words(text)) {
    auto it = log_likelihood_.find(w);
    if (it == log_likelihood_.end()) continue;
    for (std::size_t c = 0; c < score.size(); ++c) score[c] += it->second[c];
  }
  const double top = *std::max_element(score.begin(), score.end());
  double z = 0.0;
  for (double& s : score) {
    s = std::exp(s - top);
    z += s;
  }
  for (double& s : score) s /= z;
  return {std::move(score)};
}

std::vector<LabelDistribution> BowClassifier::predict_batch(std::span<const std::string> texts) const {
  std::vector<LabelDistribution> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(predict(t));
  return out;
}

std::string BowClassifier::describe() const {
  return "bow(labels=" + std::to_string(labels_.size()) +
         ", vocab=" + std::to_string(word_counts_.size()) + ")";
}

void BowClassifier::save(const std::filesystem::path& path) const {
  nlohmann::json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["labels"] = labels_;
  j["doc_counts"] = doc_counts_;
  j["alpha"] = alpha_;
  j["vocabulary"] = word_counts_;
  std::ofstream out(path);
  if (!out) throw IoError("cannot write model '" + path.string() + "'");
  out << j.dump() << '\n';
  if (!out) throw IoError("failed writing model '" + path.string() + "'");
}

BowClassifier BowClassifier::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open model '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
    if (j.at("format").get<std::string>() != kFormat) {
      throw ConfigError("'" + path.string() + "' is not a bag-of-words model file");
    }
    if (j.at("version").get<int>() != kVersion) {
      throw ConfigError("unsupported model version " + j.at("version").dump());
    }
    return BowClassifier(j.at("labels").get<std::vector<std::string>>(),
                         j.at("doc_counts").get<std::vector<std::uint64_t>>(),
                         j.at("vocabulary").get<std::map<std::string, std::vector<std::uint64_t>>>(),
                         j.at("alpha").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed model '" + path.string() + "': " + e.what());
  }
}

BowClassifier train_bow_classifier(std::span<const LabeledText> corpus, const BowConfig& config) {
  std::set<std::string> label_set;
  for (const auto& r : corpus) label_set.insert(r.label);
  if (label_set.size() < 2) {
    throw TrainingError("training corpus needs at least 2 labels, found " +
                        std::to_string(label_set.size()));
  }
  std::vector<std::string> labels(label_set.begin(), label_set.end());
  const std::size_t k = labels.size();
  std::vector<std::uint64_t> doc_counts(k, 0);
  std::map<std::string, std::vector<std::uint64_t>> word_counts;
  for (const auto& r : corpus) {
    auto c = static_cast<std::size_t>(std::lower_bound(labels.begin(), labels.end(), r.label) -
                                      labels.begin());
    ++doc_counts[c];
    std::string text = r.premise ? entailment_compose(*r.premise, r.text) : r.text;
    for (auto& w : BowClassifier::bag_of_words(text)) {
      auto& counts = word_counts[w];
      if (counts.empty()) counts.assign(k, 0);
      ++counts[c];
    }
  }
  return BowClassifier(std::move(labels), std::move(doc_counts), std::move(word_counts),
                       config.alpha);
}

}  // namespace advtext
