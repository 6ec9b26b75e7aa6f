#include <utility>

#include "advtext/errors.h"
#include "advtext/target.h"

namespace advtext {

RemoteScorer::RemoteScorer(Endpoint endpoint, std::vector<std::string> labels, RetryPolicy policy)
    : endpoint_(std::move(endpoint)), labels_(std::move(labels)), policy_(policy) {
  if (labels_.size() < 2) throw ConfigError("remote scorer needs at least 2 label names");
}

std::vector<LabelDistribution> RemoteScorer::predict_batch(std::span<const std::string> texts) const {
  if (texts.empty()) return {};
  nlohmann::json request = {{"texts", nlohmann::json::array()}};
  for (const auto& t : texts) request["texts"].push_back(t);

  nlohmann::json response = post_json(endpoint_, request, policy_);
  const std::string where = endpoint_.to_string();
  try {
    if (response.contains("labels")) {
      auto got = response.at("labels").get<std::vector<std::string>>();
      if (got != labels_) throw ContractError(where + ": label names differ from the configured set");
    }
    const auto& rows = response.at("probabilities");
    if (!rows.is_array() || rows.size() != texts.size()) {
      throw ContractError(where + ": expected " + std::to_string(texts.size()) +
                          " probability rows, got " +
                          (rows.is_array() ? std::to_string(rows.size()) : std::string("none")));
    }
    std::vector<LabelDistribution> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
      LabelDistribution d{row.get<std::vector<double>>()};
      if (d.size() != labels_.size()) throw ContractError(where + ": row width differs from label count");
      validate_distribution(d);
      out.push_back(std::move(d));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ContractError(where + ": malformed response: " + e.what());
  }
}

RemoteScorer remote_scorer(std::string_view url, std::vector<std::string> labels,
                           RetryPolicy policy) {
  return RemoteScorer(Endpoint::parse(url), std::move(labels), policy);
}

}  // namespace advtext
