#include "advtext/eval.h"

#include <atomic>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include "advtext/errors.h"
#include "advtext/importance.h"

namespace advtext {

std::uint64_t sample_seed(std::uint64_t campaign_seed, std::size_t record_index) {
  // splitmix64 finalizer
  std::uint64_t z = campaign_seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(record_index) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double perturbation_rate(const AttackResult& result, const Document& doc) {
  const std::size_t words = word_count(doc.tokens);
  if (words == 0) return 0.0;
  return static_cast<double>(result.substitutions.size()) / static_cast<double>(words);
}

void summarize(CampaignReport& r) {
  r.total = r.per_sample.size();
  r.originally_correct = r.attacked = r.succeeded = r.failed = r.errors = 0;
  r.total_queries = 0;
  std::size_t processed = 0, correct_after = 0;
  double pert_sum = 0.0, sim_sum = 0.0;
  for (const auto& s : r.per_sample) {
    if (!s.processed) continue;
    ++processed;
    if (s.correct_after) ++correct_after;
    if (!s.originally_correct) continue;
    ++r.originally_correct;
    if (!s.attack) continue;
    ++r.attacked;
    r.total_queries += s.attack->queries;
    switch (s.attack->status) {
      case AttackStatus::kSuccess:
        ++r.succeeded;
        pert_sum += s.perturbation.value_or(0.0);
        sim_sum += s.attack->final_similarity.value_or(0.0);
        break;
      case AttackStatus::kFailed: ++r.failed; break;
      case AttackStatus::kError: ++r.errors; break;
    }
  }
  auto ratio = [](double num, std::size_t den) { return den == 0 ? 0.0 : num / static_cast<double>(den); };
  r.original_accuracy = ratio(static_cast<double>(r.originally_correct), processed);
  r.after_attack_accuracy = ratio(static_cast<double>(correct_after), processed);
  r.perturbed_word_pct = ratio(pert_sum, r.succeeded);
  r.avg_similarity = ratio(sim_sum, r.succeeded);
  r.avg_queries = ratio(static_cast<double>(r.total_queries), r.attacked);
  r.success_rate = ratio(static_cast<double>(r.succeeded), r.attacked);
}

CampaignReport run_campaign(const LabeledCorpus& corpus, const TargetModel& model,
                            const AttackConfig& config, const CampaignDeps& deps,
                            const CampaignOptions& options) {
  if (corpus.records.empty()) throw ConfigError("campaign corpus is empty");
  std::vector<std::size_t> truth(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto id = model.label_id(corpus.records[i].label);
    if (!id) {
      throw ConfigError("record " + std::to_string(i + 1) + " has label '" + corpus.records[i].label +
                        "' unknown to " + model.describe());
    }
    truth[i] = *id;
  }

  const Attacker attacker(deps.store, deps.encoder, deps.tagger, deps.stoplist, config);
  CampaignReport report;
  report.encoder = deps.encoder.name();
  report.per_sample.resize(corpus.size());

  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::mutex abort_mu;

  auto fail = [&](const std::string& reason) {
    std::lock_guard lock(abort_mu);
    if (!abort.exchange(true)) report.abort_reason = reason;
  };

  auto work = [&] {
    while (!abort.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= corpus.size()) return;
      const LabeledText& rec = corpus.records[i];
      SampleOutcome out;
      out.record_index = i;
      Document doc = prepare_document(rec.text, rec.premise, deps.tagger, deps.stoplist);
      try {
        QueryCounter eval_queries;
        auto dist = predict_one(model, model_text(doc), eval_queries);
        out.original_prediction = dist.argmax();
      } catch (const Error& e) {
        fail(e.what());
        return;
      }
      out.originally_correct = out.original_prediction == truth[i];
      out.correct_after = out.originally_correct;
      if (out.originally_correct) {
        AttackResult res = attacker.run(doc, model, sample_seed(config.random_seed, i));
        if (res.success()) {
          out.correct_after = false;
          out.perturbation = perturbation_rate(res, doc);
        }
        if (res.status == AttackStatus::kError) fail(res.error);
        out.attack = std::move(res);
      }
      out.processed = true;
      report.per_sample[i] = std::move(out);
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, options.workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (std::size_t i = 0; i < report.per_sample.size(); ++i) report.per_sample[i].record_index = i;
  report.incomplete = abort.load();
  summarize(report);
  return report;
}

TransferMatrix transferability_matrix(std::span<const LabeledCorpus> adversaries,
                                      std::span<const TargetModel* const> models) {
  if (models.size() < 2) throw ConfigError("transferability needs at least 2 models");
  if (adversaries.size() != models.size()) {
    throw ConfigError("need one adversary set per model (" + std::to_string(models.size()) +
                      " models, " + std::to_string(adversaries.size()) + " sets)");
  }
  const std::size_t m = models.size();
  TransferMatrix matrix(m, std::vector<std::optional<double>>(m));
  for (std::size_t i = 0; i < m; ++i) {
    const auto& records = adversaries[i].records;
    if (records.empty()) continue;
    std::vector<std::string> texts;
    texts.reserve(records.size());
    for (const auto& r : records) {
      texts.push_back(r.premise ? entailment_compose(*r.premise, r.text) : r.text);
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      QueryCounter counter;
      auto dists = predict_batch(*models[j], texts, counter);
      std::size_t correct = 0;
      for (std::size_t k = 0; k < records.size(); ++k) {
        auto id = models[j]->label_id(records[k].label);
        if (!id) {
          throw ConfigError("label '" + records[k].label + "' unknown to " + models[j]->describe());
        }
        if (dists[k].argmax() == *id) ++correct;
      }
      matrix[i][j] = static_cast<double>(correct) / static_cast<double>(records.size());
    }
  }
  return matrix;
}

LabeledCorpus adversarial_training_set(std::span<const SampleOutcome> outcomes,
                                       const LabeledCorpus& corpus) {
  LabeledCorpus out;
  for (const auto& s : outcomes) {
    if (!s.attack || !s.attack->success() || !s.attack->adversarial) continue;
    if (s.record_index >= corpus.size()) {
      throw std::out_of_range("outcome refers to record " + std::to_string(s.record_index) +
                              " beyond the corpus");
    }
    const LabeledText& src = corpus.records[s.record_index];
    out.records.push_back({detokenize(*s.attack->adversarial), src.premise, src.label});
  }
  return out;
}

std::size_t export_adversarial_training_set(std::span<const SampleOutcome> outcomes,
                                            const LabeledCorpus& corpus,
                                            const std::filesystem::path& path) {
  LabeledCorpus out = adversarial_training_set(outcomes, corpus);
  out.save(path);
  return out.size();
}

nlohmann::json config_to_json(const AttackConfig& c) {
  nlohmann::json j;
  j["n_synonyms"] = c.n_synonyms;
  j["delta"] = c.delta;
  j["epsilon"] = c.epsilon ? nlohmann::json(*c.epsilon) : nlohmann::json(nullptr);
  j["use_importance"] = c.use_importance;
  j["use_sim_constraint"] = c.use_sim_constraint;
  j["use_pos_filter"] = c.use_pos_filter;
  j["sim_reference"] = to_string(c.sim_reference);
  j["random_seed"] = c.random_seed;
  j["max_perturb_ratio"] = c.max_perturb_ratio;
  return j;
}

nlohmann::json report_to_json(const CampaignReport& r, const AttackConfig& config,
                              const TargetModel& model, const nlohmann::json& fixtures) {
  const auto& labels = model.labels();
  nlohmann::json j;
  j["original_accuracy"] = r.original_accuracy;
  j["after_attack_accuracy"] = r.after_attack_accuracy;
  j["perturbed_word_pct"] = r.perturbed_word_pct;
  j["avg_similarity"] = r.avg_similarity;
  j["avg_queries"] = r.avg_queries;
  j["success_rate"] = r.success_rate;
  j["counts"] = {{"total", r.total},         {"originally_correct", r.originally_correct},
                 {"attacked", r.attacked},   {"succeeded", r.succeeded},
                 {"failed", r.failed},       {"errors", r.errors},
                 {"total_queries", r.total_queries}};
  j["incomplete"] = r.incomplete;
  if (r.incomplete) j["abort_reason"] = r.abort_reason;
  j["metadata"] = {
      {"similarity_encoder", r.encoder},
      {"target_model", model.describe()},
      {"labels", labels},
      {"perturbation_denominator", "non-punctuation tokens of the mutable field"},
      {"perturbed_word_pct_unit", "fraction"},
      {"similarity_averaged_over", "successful attacks"},
      {"queries_averaged_over", "attacked samples"},
  };
  j["config"] = config_to_json(config);
  j["fixtures"] = fixtures.is_null() ? nlohmann::json::object() : fixtures;

  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : r.per_sample) {
    nlohmann::json e;
    e["index"] = s.record_index;
    e["processed"] = s.processed;
    if (s.processed) {
      e["original_prediction"] = labels.at(s.original_prediction);
      e["originally_correct"] = s.originally_correct;
      e["correct_after"] = s.correct_after;
    }
    if (s.attack) {
      const AttackResult& a = *s.attack;
      e["status"] = to_string(a.status);
      e["queries"] = a.queries;
      nlohmann::json subs = nlohmann::json::array();
      for (const auto& sub : a.substitutions) {
        subs.push_back({{"token_index", sub.token_index},
                        {"original", sub.original},
                        {"replacement", sub.replacement},
                        {"similarity_at_accept", sub.similarity_at_accept},
                        {"candidate_pool_size", sub.candidate_pool_size},
                        {"confidence_after", sub.confidence_after}});
      }
      e["substitutions"] = std::move(subs);
      if (a.success()) {
        e["adversarial_text"] = detokenize(*a.adversarial);
        e["adversarial_label"] = labels.at(*a.adversarial_label);
        e["final_similarity"] = *a.final_similarity;
        e["perturbation"] = s.perturbation.value_or(0.0);
      }
      if (a.status == AttackStatus::kError) e["error"] = a.error;
    }
    samples.push_back(std::move(e));
  }
  j["per_sample"] = std::move(samples);
  return j;
}

std::string format_summary(const CampaignReport& r) {
  char buf[512];
  std::ostringstream os;
  auto row = [&](const char* name, const char* fmt, double v) {
    std::snprintf(buf, sizeof buf, fmt, v);
    os << "  " << name;
    for (std::size_t k = std::char_traits<char>::length(name); k < 24; ++k) os << ' ';
    os << buf << '\n';
  };
  os << "Campaign summary" << (r.incomplete ? " (INCOMPLETE)" : "") << '\n';
  row("Original accuracy", "%6.1f%%", 100.0 * r.original_accuracy);
  row("After-attack accuracy", "%6.1f%%", 100.0 * r.after_attack_accuracy);
  row("% Perturbed words", "%6.1f%%", 100.0 * r.perturbed_word_pct);
  row("Semantic similarity", "%6.3f", r.avg_similarity);
  row("Query number", "%6.1f", r.avg_queries);
  row("Success rate", "%6.1f%%", 100.0 * r.success_rate);
  os << "  records " << r.total << ", attacked " << r.attacked << ", succeeded " << r.succeeded
     << ", failed " << r.failed << ", errors " << r.errors << '\n';
  os << "  similarity encoder: " << r.encoder << '\n';
  if (r.incomplete) os << "  aborted: " << r.abort_reason << '\n';
  return os.str();
}

}  // namespace advtext
