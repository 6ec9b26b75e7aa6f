#ifndef ADVTEXT_EMBEDDINGS_H_
#define ADVTEXT_EMBEDDINGS_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace advtext {

// Cosine of two arbitrary nonzero vectors. Throws std::invalid_argument on a
// dimension mismatch or a zero vector.
double cosine(std::span<const double> u, std::span<const double> v);
double cosine(std::span<const float> u, std::span<const float> v);

struct SynonymCandidate {
  std::string word;
  double word_similarity = 0.0;

  bool operator==(const SynonymCandidate&) const = default;
};

// Word vectors, unit-normalized at insertion, stored row-major. Immutable
// once loaded; all queries are const and thread-safe.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  explicit EmbeddingStore(std::size_t dimension);

  // Text format: "word v1 ... vd" per line, optional "count dim" header.
  // Inconsistent dimensions throw ParseError naming the line. Zero vectors
  // are skipped and reported through warnings(). Duplicate words keep the
  // first occurrence.
  static EmbeddingStore load(const std::filesystem::path& path);

  // Returns false when the word already exists or the vector is zero.
  bool add(std::string word, std::span<const double> vector);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return words_.size(); }
  bool contains(std::string_view word) const;
  std::optional<std::size_t> index_of(std::string_view word) const;
  const std::string& word(std::size_t index) const { return words_[index]; }
  std::span<const float> vector(std::size_t index) const;
  std::optional<std::span<const float>> find(std::string_view word) const;
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Dot product of two stored rows (both unit length).
  double similarity(std::size_t a, std::size_t b) const;

 private:
  std::size_t dimension_ = 0;
  std::vector<std::string> words_;
  std::vector<float> data_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::string> warnings_;
};

// Exact top-n neighbors of `word` with similarity >= delta, excluding the word
// itself; descending similarity, ties by ascending word. Empty for OOV.
std::vector<SynonymCandidate> nearest_synonyms(std::string_view word, const EmbeddingStore& store,
                                               std::size_t n, double delta);

// Per-campaign memo of nearest_synonyms keyed by (word, n, delta). Safe for
// concurrent use; concurrent fills of one key compute the same value.
class SynonymCache {
 public:
  explicit SynonymCache(const EmbeddingStore& store) : store_(&store) {}

  std::vector<SynonymCandidate> get(std::string_view word, std::size_t n, double delta) const;
  std::size_t size() const;

 private:
  using Key = std::tuple<std::string, std::size_t, double>;

  const EmbeddingStore* store_;
  mutable std::shared_mutex mu_;
  mutable std::map<Key, std::vector<SynonymCandidate>> cache_;
};

}  // namespace advtext

#endif  // ADVTEXT_EMBEDDINGS_H_
