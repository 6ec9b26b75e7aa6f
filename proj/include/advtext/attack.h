#ifndef ADVTEXT_ATTACK_H_
#define ADVTEXT_ATTACK_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "advtext/embeddings.h"
#include "advtext/similarity.h"
#include "advtext/target.h"
#include "advtext/text.h"

namespace advtext {

// Which text a candidate's sentence similarity is measured against.
enum class SimReference {
  kOriginal,  // the unmodified source document
  kCurrent,   // the adversarial document as edited so far
};

std::string_view to_string(SimReference ref);
SimReference parse_sim_reference(std::string_view name);

struct AttackConfig {
  std::size_t n_synonyms = 50;
  double delta = 0.7;
  // Sentence-similarity threshold. No default: validate() rejects an unset value.
  std::optional<double> epsilon;
  bool use_importance = true;  // false: visit words in seeded random order
  bool use_sim_constraint = true;
  bool use_pos_filter = true;
  SimReference sim_reference = SimReference::kOriginal;
  std::uint64_t random_seed = 0;
  // Cap on substituted words as a fraction of the mutable word count;
  // 1 means unlimited. Used to hold the perturbation budget fixed when
  // comparing word orderings.
  double max_perturb_ratio = 1.0;

  // Throws ConfigError.
  void validate() const;
  double threshold() const { return epsilon.value_or(0.0); }
};

struct Substitution {
  std::size_t token_index = 0;
  std::string original;     // surface form replaced
  std::string replacement;  // surface form inserted
  double similarity_at_accept = 0.0;
  std::size_t candidate_pool_size = 0;
  double confidence_after = 0.0;  // F_Y of the adversarial text after this step

  bool operator==(const Substitution&) const = default;
};

enum class AttackStatus { kSuccess, kFailed, kError };
std::string_view to_string(AttackStatus status);

struct AttackResult {
  AttackStatus status = AttackStatus::kFailed;
  std::optional<Document> adversarial;
  std::vector<Substitution> substitutions;
  std::uint64_t queries = 0;
  std::optional<double> final_similarity;
  std::size_t original_label = 0;
  std::optional<std::size_t> adversarial_label;
  double original_confidence = 0.0;
  std::string error;  // set for kError

  // Bookkeeping for the query bound: n + 1 + similarity_passing.
  std::size_t scored_tokens = 0;
  std::size_t similarity_passing = 0;

  bool success() const { return status == AttackStatus::kSuccess; }
};

// A candidate that passed the similarity gate and was scored by the model.
struct ScoredCandidate {
  std::string word;  // normalized candidate
  double word_similarity = 0.0;
  double similarity = 0.0;              // against the reference text
  double similarity_to_original = 0.0;  // against the source text
  std::size_t predicted_label = 0;      // Y_k
  double confidence = 0.0;              // P_k = F_{Y_k}(X')
  LabelDistribution distribution;
};

// Nearest synonyms of the token, optionally restricted to its POS class.
// The token's own normalized form never appears.
std::vector<SynonymCandidate> extract_candidates(const Token& token, const EmbeddingStore& store,
                                                 const AttackConfig& config,
                                                 const PosTagger& tagger,
                                                 const SynonymCache* cache = nullptr);

// Case pattern of `original` applied to `replacement`.
std::string match_case(std::string_view original, std::string_view replacement);

// `base` with the token at `token_index` replaced by `word`.
Document substitute(const Document& base, std::size_t token_index, std::string_view word);

struct SimilarityGate {
  const Document* reference = nullptr;  // Sim(X', reference) is gated
  const Document* original = nullptr;   // defaults to reference
  double epsilon = 0.0;
  bool enforce = true;  // false keeps every candidate regardless of score
};

// Builds X' for each candidate, keeps those with Sim(X', reference) >= epsilon
// and scores only the survivors, in one batch. Candidates that cannot be
// encoded are dropped while the gate is enforced.
std::vector<ScoredCandidate> filter_by_similarity(const Document& base, std::size_t token_index,
                                                  std::span<const SynonymCandidate> candidates,
                                                  const SimilarityGate& gate,
                                                  const SentenceEncoder& encoder,
                                                  const TargetModel& model, QueryCounter& counter);

struct Decision {
  enum class Kind { kTerminal, kContinue, kSkip };
  Kind kind = Kind::kSkip;
  std::size_t index = 0;  // into the pool; meaningless for kSkip
};

// (a) Some entry flips the label: the flipping entry with the highest
//     similarity to the source (ties: larger P_k - F_Y margin, then word).
// (b) Otherwise, if min P_k < current_confidence: the argmin entry
//     (ties: higher similarity, then word).
// (c) Otherwise skip.
Decision choose_replacement(std::span<const ScoredCandidate> pool, std::size_t original_label,
                            double current_confidence);

// Greedy synonym-substitution attack against a black-box model. Shared state
// is read-only, so one Attacker may serve concurrent runs.
class Attacker {
 public:
  Attacker(const EmbeddingStore& store, const SentenceEncoder& encoder, const PosTagger& tagger,
           const StopWords& stoplist, AttackConfig config);

  AttackResult run(const Document& doc, const TargetModel& model) const;
  AttackResult run(const Document& doc, const TargetModel& model, std::uint64_t seed) const;

  const AttackConfig& config() const { return config_; }

 private:
  const EmbeddingStore* store_;
  const SentenceEncoder* encoder_;
  const PosTagger* tagger_;
  const StopWords* stoplist_;
  AttackConfig config_;
  SynonymCache cache_;
};

AttackResult attack(const Document& doc, const TargetModel& model, const AttackConfig& config,
                    const EmbeddingStore& store, const SentenceEncoder& encoder,
                    const PosTagger& tagger, const StopWords& stoplist);

// Replays a substitution trace over the source document.
Document apply_substitutions(const Document& original, std::span<const Substitution> trace);

// Seeded Fisher-Yates with a fixed generator so orders are stable across
// standard-library implementations.
std::vector<std::size_t> shuffled_order(std::vector<std::size_t> items, std::uint64_t seed);

}  // namespace advtext

#endif  // ADVTEXT_ATTACK_H_
