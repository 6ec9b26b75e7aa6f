#include <utility>

#include "advtext/errors.h"
#include "advtext/similarity.h"

namespace advtext {

std::vector<Vector> remote_encode(std::span<const std::string> texts, const Endpoint& endpoint,
                                  const RetryPolicy& policy) {
  if (texts.empty()) return {};
  nlohmann::json request = {{"texts", nlohmann::json::array()}};
  for (const auto& t : texts) request["texts"].push_back(t);

  nlohmann::json response = post_json(endpoint, request, policy);
  const std::string where = endpoint.to_string();
  if (!response.is_object() || !response.contains("vectors") || !response["vectors"].is_array()) {
    throw TransportError(where + ": response lacks a \"vectors\" array");
  }
  const auto& rows = response["vectors"];
  if (rows.size() != texts.size()) {
    throw TransportError(where + ": expected " + std::to_string(texts.size()) + " vectors, got " +
                         std::to_string(rows.size()));
  }
  std::vector<Vector> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    if (!row.is_array() || row.empty()) throw TransportError(where + ": vector row is not a non-empty array");
    Vector v;
    v.reserve(row.size());
    for (const auto& x : row) {
      if (!x.is_number()) throw TransportError(where + ": non-numeric vector component");
      v.push_back(x.get<double>());
    }
    if (!out.empty() && v.size() != out.front().size()) {
      throw TransportError(where + ": vector dimension changes within one batch");
    }
    out.push_back(std::move(v));
  }
  return out;
}

RemoteEncoder::RemoteEncoder(Endpoint endpoint, RetryPolicy policy)
    : endpoint_(std::move(endpoint)), policy_(policy) {}

Vector RemoteEncoder::encode(const Document& doc) const {
  std::string text = detokenize(doc);
  auto v = remote_encode(std::span<const std::string>(&text, 1), endpoint_, policy_);
  double norm2 = 0.0;
  for (double x : v.front()) norm2 += x * x;
  if (norm2 == 0.0) throw EncodingError("remote encoder returned a zero vector");
  return std::move(v.front());
}

std::vector<std::optional<Vector>> RemoteEncoder::encode_batch(std::span<const Document> docs) const {
  std::vector<std::string> texts;
  texts.reserve(docs.size());
  for (const auto& d : docs) texts.push_back(detokenize(d));
  auto vectors = remote_encode(texts, endpoint_, policy_);
  std::vector<std::optional<Vector>> out;
  out.reserve(vectors.size());
  for (auto& v : vectors) {
    double norm2 = 0.0;
    for (double x : v) norm2 += x * x;
    if (norm2 == 0.0) {
      out.emplace_back(std::nullopt);
    } else {
      out.emplace_back(std::move(v));
    }
  }
  return out;
}

}  // namespace advtext
