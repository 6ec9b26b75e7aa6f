#include "advtext/similarity.h"

#include <cmath>

#include "advtext/errors.h"

namespace advtext {

std::vector<std::optional<Vector>> SentenceEncoder::encode_batch(
    std::span<const Document> docs) const {
  std::vector<std::optional<Vector>> out;
  out.reserve(docs.size());
  for (const Document& d : docs) {
    try {
      out.emplace_back(encode(d));
    } catch (const EncodingError&) {
      out.emplace_back(std::nullopt);
    }
  }
  return out;
}

AverageEmbeddingEncoder::AverageEmbeddingEncoder(const EmbeddingStore& store,
                                                 const StopWords& stoplist)
    : store_(&store), stoplist_(&stoplist) {}

Vector AverageEmbeddingEncoder::encode(const Document& doc) const {
  return encode_average(doc, *store_, *stoplist_);
}

Vector encode_average(const Document& doc, const EmbeddingStore& store,
                      const StopWords& stoplist) {
  if (doc.tokens.empty()) throw EncodingError("cannot encode an empty document");
  auto accumulate = [&](bool content_only) {
    Vector sum(store.dimension(), 0.0);
    std::size_t used = 0;
    for (const Token& t : doc.tokens) {
      if (content_only && stoplist.contains(t.normalized)) continue;
      auto v = store.find(t.normalized);
      if (!v) continue;
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += static_cast<double>((*v)[i]);
      ++used;
    }
    return std::make_pair(std::move(sum), used);
  };
  auto [sum, used] = accumulate(true);
  if (used == 0) std::tie(sum, used) = accumulate(false);
  if (used == 0) throw EncodingError("no token of '" + detokenize(doc) + "' is in the vocabulary");

  double norm2 = 0.0;
  for (double x : sum) norm2 += x * x;
  if (norm2 == 0.0) throw EncodingError("token vectors of '" + detokenize(doc) + "' cancel out");
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& x : sum) x *= inv;
  return sum;
}

double vector_similarity(const Vector& a, const Vector& b) {
  return cosine(std::span<const double>(a), std::span<const double>(b));
}

SimilarityScore sentence_similarity(const Document& a, const Document& b,
                                    const SentenceEncoder& encoder) {
  Vector ea, eb;
  try {
    ea = encoder.encode(a);
    eb = encoder.encode(b);
  } catch (const EncodingError&) {
    return {0.0, true};
  }
  return {vector_similarity(ea, eb), false};
}

}  // namespace advtext
