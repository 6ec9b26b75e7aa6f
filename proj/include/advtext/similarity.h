#ifndef ADVTEXT_SIMILARITY_H_
#define ADVTEXT_SIMILARITY_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "advtext/embeddings.h"
#include "advtext/http.h"
#include "advtext/text.h"

namespace advtext {

using Vector = std::vector<double>;

// Maps a document's mutable tokens to a dense vector. Context tokens are not
// encoded: for entailment pairs only the hypothesis is compared.
class SentenceEncoder {
 public:
  virtual ~SentenceEncoder() = default;

  // Throws EncodingError when the document cannot be encoded.
  virtual Vector encode(const Document& doc) const = 0;

  // nullopt marks a document that could not be encoded. Transport failures
  // of remote encoders propagate as exceptions.
  virtual std::vector<std::optional<Vector>> encode_batch(std::span<const Document> docs) const;

  // Recorded in campaign reports; absolute similarity values depend on it.
  virtual std::string name() const = 0;
};

// Unit-normalized mean of the vectors of in-vocabulary non-stop tokens,
// falling back to all in-vocabulary tokens when no content word is covered.
class AverageEmbeddingEncoder : public SentenceEncoder {
 public:
  AverageEmbeddingEncoder(const EmbeddingStore& store, const StopWords& stoplist);

  Vector encode(const Document& doc) const override;
  std::string name() const override { return "average-embedding"; }

 private:
  const EmbeddingStore* store_;
  const StopWords* stoplist_;
};

Vector encode_average(const Document& doc, const EmbeddingStore& store,
                      const StopWords& stoplist = {});

struct SimilarityScore {
  double value = 0.0;
  bool degenerate = false;  // an input could not be encoded; value is 0
};

SimilarityScore sentence_similarity(const Document& a, const Document& b,
                                    const SentenceEncoder& encoder);

// Cosine of two encodings; exactly 1 for identical vectors.
double vector_similarity(const Vector& a, const Vector& b);

// Encoder service: POST {"texts": [...]} -> {"vectors": [[...], ...]}.
std::vector<Vector> remote_encode(std::span<const std::string> texts, const Endpoint& endpoint,
                                  const RetryPolicy& policy = {});

class RemoteEncoder : public SentenceEncoder {
 public:
  explicit RemoteEncoder(Endpoint endpoint, RetryPolicy policy = {});

  Vector encode(const Document& doc) const override;
  std::vector<std::optional<Vector>> encode_batch(std::span<const Document> docs) const override;
  std::string name() const override { return "remote:" + endpoint_.to_string(); }

 private:
  Endpoint endpoint_;
  RetryPolicy policy_;
};

}  // namespace advtext

#endif  // ADVTEXT_SIMILARITY_H_
