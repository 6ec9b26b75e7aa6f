#include "advtext/embeddings.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "advtext/errors.h"
#include "line_reader.h"

namespace advtext {

namespace {

template <typename T>
double cosine_impl(std::span<const T> u, std::span<const T> v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("cosine: dimension mismatch (" + std::to_string(u.size()) +
                                " vs " + std::to_string(v.size()) + ")");
  }
  double dot = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += static_cast<double>(u[i]) * static_cast<double>(v[i]);
    uu += static_cast<double>(u[i]) * static_cast<double>(u[i]);
    vv += static_cast<double>(v[i]) * static_cast<double>(v[i]);
  }
  if (uu == 0.0 || vv == 0.0) throw std::invalid_argument("cosine: zero vector");
  // sqrt(x*x) == x in IEEE arithmetic, so cosine(u, u) is exactly 1.
  double c = dot / std::sqrt(uu * vv);
  return std::clamp(c, -1.0, 1.0);
}

std::vector<std::string_view> split_spaces(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool is_unsigned(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

double cosine(std::span<const double> u, std::span<const double> v) { return cosine_impl(u, v); }
double cosine(std::span<const float> u, std::span<const float> v) { return cosine_impl(u, v); }

EmbeddingStore::EmbeddingStore(std::size_t dimension) : dimension_(dimension) {}

bool EmbeddingStore::add(std::string word, std::span<const double> vector) {
  if (dimension_ == 0) dimension_ = vector.size();
  if (vector.size() != dimension_) {
    throw std::invalid_argument("embedding for '" + word + "' has dimension " +
                                std::to_string(vector.size()) + ", expected " +
                                std::to_string(dimension_));
  }
  if (index_.count(word)) return false;
  double norm2 = 0.0;
  for (double x : vector) norm2 += x * x;
  if (norm2 == 0.0) return false;
  const double inv = 1.0 / std::sqrt(norm2);
  for (double x : vector) data_.push_back(static_cast<float>(x * inv));
  index_.emplace(word, words_.size());
  words_.push_back(std::move(word));
  return true;
}

EmbeddingStore EmbeddingStore::load(const std::filesystem::path& path) {
  auto in = internal::open_for_read(path, "embedding file");
  EmbeddingStore store;
  std::string line;
  std::size_t lineno = 0;
  std::vector<double> values;
  bool first_content = true;
  while (internal::read_line(in, line)) {
    ++lineno;
    auto fields = split_spaces(line);
    if (fields.empty()) continue;
    if (first_content) {
      first_content = false;
      if (fields.size() == 2 && is_unsigned(fields[0]) && is_unsigned(fields[1])) continue;
    }
    if (fields.size() < 2) {
      throw ParseError(path.string(), lineno, "expected a word followed by vector components");
    }
    values.clear();
    for (std::size_t k = 1; k < fields.size(); ++k) {
      double x = 0.0;
      if (!parse_double(fields[k], x)) {
        throw ParseError(path.string(), lineno,
                         "bad vector component '" + std::string(fields[k]) + "'");
      }
      values.push_back(x);
    }
    if (store.dimension_ != 0 && values.size() != store.dimension_) {
      throw ParseError(path.string(), lineno,
                       "inconsistent dimension " + std::to_string(values.size()) + ", expected " +
                           std::to_string(store.dimension_));
    }
    std::string word(fields[0]);
    if (std::all_of(values.begin(), values.end(), [](double x) { return x == 0.0; })) {
      if (store.dimension_ == 0) store.dimension_ = values.size();
      store.warnings_.push_back(path.string() + ":" + std::to_string(lineno) +
                                ": zero vector for '" + word + "' skipped");
      continue;
    }
    store.add(std::move(word), values);
  }
  return store;
}

bool EmbeddingStore::contains(std::string_view word) const {
  return index_.count(std::string(word)) != 0;
}

std::optional<std::size_t> EmbeddingStore::index_of(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const float> EmbeddingStore::vector(std::size_t index) const {
  return {data_.data() + index * dimension_, dimension_};
}

std::optional<std::span<const float>> EmbeddingStore::find(std::string_view word) const {
  auto idx = index_of(word);
  if (!idx) return std::nullopt;
  return vector(*idx);
}

double EmbeddingStore::similarity(std::size_t a, std::size_t b) const {
  const float* pa = data_.data() + a * dimension_;
  const float* pb = data_.data() + b * dimension_;
  double dot = 0.0;
  for (std::size_t i = 0; i < dimension_; ++i) {
    dot += static_cast<double>(pa[i]) * static_cast<double>(pb[i]);
  }
  return std::clamp(dot, -1.0, 1.0);
}

std::vector<SynonymCandidate> nearest_synonyms(std::string_view word, const EmbeddingStore& store,
                                               std::size_t n, double delta) {
  auto query = store.index_of(word);
  if (!query || n == 0) return {};
  std::vector<SynonymCandidate> hits;
  for (std::size_t i = 0; i < store.size(); ++i) {
    if (i == *query) continue;
    double s = store.similarity(*query, i);
    if (s >= delta) hits.push_back({store.word(i), s});
  }
  auto better = [](const SynonymCandidate& a, const SynonymCandidate& b) {
    if (a.word_similarity != b.word_similarity) return a.word_similarity > b.word_similarity;
    return a.word < b.word;
  };
  if (hits.size() > n) {
    std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(n), hits.end(),
                      better);
    hits.resize(n);
  } else {
    std::sort(hits.begin(), hits.end(), better);
  }
  return hits;
}

std::vector<SynonymCandidate> SynonymCache::get(std::string_view word, std::size_t n,
                                                double delta) const {
  Key key{std::string(word), n, delta};
  {
    std::shared_lock lock(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  auto value = nearest_synonyms(word, *store_, n, delta);
  std::unique_lock lock(mu_);
  return cache_.try_emplace(std::move(key), std::move(value)).first->second;
}

std::size_t SynonymCache::size() const {
  std::shared_lock lock(mu_);
  return cache_.size();
}

}  // namespace advtext
