#ifndef ADVTEXT_EVAL_H_
#define ADVTEXT_EVAL_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "advtext/attack.h"
#include "advtext/embeddings.h"
#include "advtext/similarity.h"
#include "advtext/target.h"
#include "advtext/text.h"

namespace advtext {

// UTF-8 TSV with a required header row "label<TAB>text[<TAB>premise]".
struct LabeledCorpus {
  std::vector<LabeledText> records;

  // Throws ParseError with the offending line number.
  static LabeledCorpus load(const std::filesystem::path& path);
  static LabeledCorpus parse(std::istream& in, const std::string& source);
  void save(const std::filesystem::path& path) const;

  bool has_premises() const;
  std::size_t size() const { return records.size(); }
};

struct SampleOutcome {
  std::size_t record_index = 0;
  bool processed = false;  // false when the campaign aborted first
  std::size_t original_prediction = 0;
  bool originally_correct = false;
  std::optional<AttackResult> attack;  // only for originally-correct records
  bool correct_after = false;
  std::optional<double> perturbation;  // successful attacks only
};

struct CampaignReport {
  double original_accuracy = 0.0;
  double after_attack_accuracy = 0.0;
  double perturbed_word_pct = 0.0;  // mean fraction over successes
  double avg_similarity = 0.0;      // mean over successes
  double avg_queries = 0.0;         // mean over attacked samples
  double success_rate = 0.0;        // wrong after attack / attacked

  std::size_t total = 0;
  std::size_t originally_correct = 0;
  std::size_t attacked = 0;
  std::size_t succeeded = 0;
  std::size_t failed = 0;
  std::size_t errors = 0;
  std::uint64_t total_queries = 0;

  bool incomplete = false;
  std::string abort_reason;
  std::string encoder;
  std::vector<SampleOutcome> per_sample;
};

struct CampaignDeps {
  const EmbeddingStore& store;
  const SentenceEncoder& encoder;
  const PosTagger& tagger;
  const StopWords& stoplist;
};

struct CampaignOptions {
  std::size_t workers = 1;
};

// Seed for one sample, derived from the campaign seed and record position.
std::uint64_t sample_seed(std::uint64_t campaign_seed, std::size_t record_index);

// Attacks every record the model originally classifies correctly. Results are
// ordered by record regardless of worker scheduling and are deterministic for
// a given seed. A transport failure stops the campaign and flags the report
// incomplete.
CampaignReport run_campaign(const LabeledCorpus& corpus, const TargetModel& model,
                            const AttackConfig& config, const CampaignDeps& deps,
                            const CampaignOptions& options = {});

// Substituted words over non-punctuation tokens of the mutable field.
double perturbation_rate(const AttackResult& result, const Document& doc);

// Recomputes the aggregate metrics from per_sample.
void summarize(CampaignReport& report);

// Entry (i, j): accuracy of model j on the adversaries crafted for model i.
// The diagonal and rows with no adversaries are nullopt. Label names must
// resolve in every model.
using TransferMatrix = std::vector<std::vector<std::optional<double>>>;
TransferMatrix transferability_matrix(std::span<const LabeledCorpus> adversaries,
                                      std::span<const TargetModel* const> models);

// Successful adversaries with their original ground-truth labels, in the
// corpus TSV format. Returns the number of records written.
std::size_t export_adversarial_training_set(std::span<const SampleOutcome> outcomes,
                                            const LabeledCorpus& corpus,
                                            const std::filesystem::path& path);
LabeledCorpus adversarial_training_set(std::span<const SampleOutcome> outcomes,
                                       const LabeledCorpus& corpus);

nlohmann::json config_to_json(const AttackConfig& config);
// `fixtures` is echoed verbatim (paths and checksums supplied by the caller).
nlohmann::json report_to_json(const CampaignReport& report, const AttackConfig& config,
                              const TargetModel& model, const nlohmann::json& fixtures = {});
std::string format_summary(const CampaignReport& report);

}  // namespace advtext

#endif  // ADVTEXT_EVAL_H_
