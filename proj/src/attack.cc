#include "advtext/attack.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>

#include "advtext/errors.h"
#include "advtext/importance.h"

namespace advtext {

std::string_view to_string(SimReference ref) {
  return ref == SimReference::kOriginal ? "original" : "current";
}

SimReference parse_sim_reference(std::string_view name) {
  std::string lower = to_lower(name);
  if (lower == "original") return SimReference::kOriginal;
  if (lower == "current") return SimReference::kCurrent;
  throw ConfigError("sim reference must be 'original' or 'current', got '" + std::string(name) + "'");
}

std::string_view to_string(AttackStatus status) {
  switch (status) {
    case AttackStatus::kSuccess: return "success";
    case AttackStatus::kFailed: return "failed";
    case AttackStatus::kError: return "error";
  }
  return "error";
}

void AttackConfig::validate() const {
  if (n_synonyms < 1) throw ConfigError("n_synonyms must be at least 1");
  if (!(delta >= 0.0 && delta <= 1.0)) throw ConfigError("delta must lie in [0, 1]");
  if (!epsilon) throw ConfigError("epsilon (sentence similarity threshold) must be set");
  if (!(*epsilon >= 0.0 && *epsilon <= 1.0)) throw ConfigError("epsilon must lie in [0, 1]");
  if (!(max_perturb_ratio > 0.0 && max_perturb_ratio <= 1.0)) {
    throw ConfigError("max_perturb_ratio must lie in (0, 1]");
  }
}

std::vector<SynonymCandidate> extract_candidates(const Token& token, const EmbeddingStore& store,
                                                 const AttackConfig& config,
                                                 const PosTagger& tagger,
                                                 const SynonymCache* cache) {
  auto neighbors = cache ? cache->get(token.normalized, config.n_synonyms, config.delta)
                         : nearest_synonyms(token.normalized, store, config.n_synonyms, config.delta);
  std::vector<SynonymCandidate> out;
  out.reserve(neighbors.size());
  for (auto& c : neighbors) {
    if (c.word == token.normalized) continue;
    if (config.use_pos_filter && tagger.tag_word(c.word) != token.pos) continue;
    out.push_back(std::move(c));
  }
  return out;
}

std::string match_case(std::string_view original, std::string_view replacement) {
  std::string out(replacement);
  auto is_upper = [](char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; };
  auto is_alpha = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; };
  bool any_alpha = std::any_of(original.begin(), original.end(), is_alpha);
  bool all_upper = any_alpha && std::all_of(original.begin(), original.end(), [&](char c) {
                     return !is_alpha(c) || is_upper(c);
                   });
  if (all_upper && original.size() > 1) {
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  } else if (!original.empty() && is_upper(original.front()) && !out.empty()) {
    out.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(out.front())));
  }
  return out;
}

Document substitute(const Document& base, std::size_t token_index, std::string_view word) {
  Document out = base;
  Token& t = out.tokens.at(token_index);
  t.surface = match_case(t.surface, word);
  t.normalized = to_lower(word);
  out.raw = detokenize(out.tokens);
  return out;
}

namespace {

double checked_similarity(const Vector& a, const Vector& b) {
  try {
    return vector_similarity(a, b);
  } catch (const std::invalid_argument& e) {
    throw TransportError(std::string("encoder returned inconsistent vectors: ") + e.what());
  }
}

}  // namespace

std::vector<ScoredCandidate> filter_by_similarity(const Document& base, std::size_t token_index,
                                                  std::span<const SynonymCandidate> candidates,
                                                  const SimilarityGate& gate,
                                                  const SentenceEncoder& encoder,
                                                  const TargetModel& model, QueryCounter& counter) {
  if (candidates.empty()) return {};
  if (gate.reference == nullptr) throw std::invalid_argument("similarity gate without reference");
  const Document& reference = *gate.reference;
  const Document& original = gate.original ? *gate.original : reference;
  const bool separate_original = &original != &reference;

  std::vector<Document> variants;
  variants.reserve(candidates.size());
  for (const auto& c : candidates) variants.push_back(substitute(base, token_index, c.word));

  std::optional<Vector> ref_vec, orig_vec;
  {
    std::vector<Document> anchors{reference};
    if (separate_original) anchors.push_back(original);
    auto enc = encoder.encode_batch(anchors);
    ref_vec = std::move(enc[0]);
    orig_vec = separate_original ? std::move(enc[1]) : ref_vec;
  }
  auto encoded = encoder.encode_batch(variants);

  std::vector<ScoredCandidate> pool;
  std::vector<std::string> texts;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const bool degenerate = !encoded[k] || !ref_vec;
    double sim = degenerate ? 0.0 : checked_similarity(*encoded[k], *ref_vec);
    if (gate.enforce && (degenerate || sim < gate.epsilon)) continue;
    double sim_orig = sim;
    if (separate_original) sim_orig = (!encoded[k] || !orig_vec) ? 0.0 : checked_similarity(*encoded[k], *orig_vec);

    ScoredCandidate sc;
    sc.word = candidates[k].word;
    sc.word_similarity = candidates[k].word_similarity;
    sc.similarity = sim;
    sc.similarity_to_original = sim_orig;
    pool.push_back(std::move(sc));
    texts.push_back(model_text(variants[k]));
  }
  if (pool.empty()) return pool;

  auto dists = predict_batch(model, texts, counter);
  for (std::size_t k = 0; k < pool.size(); ++k) {
    pool[k].predicted_label = dists[k].argmax();
    pool[k].confidence = dists[k][pool[k].predicted_label];
    pool[k].distribution = std::move(dists[k]);
  }
  return pool;
}

Decision choose_replacement(std::span<const ScoredCandidate> pool, std::size_t original_label,
                            double current_confidence) {
  std::optional<std::size_t> best;
  auto margin = [&](const ScoredCandidate& c) { return c.confidence - c.distribution[original_label]; };
  for (std::size_t k = 0; k < pool.size(); ++k) {
    const auto& c = pool[k];
    if (c.predicted_label == original_label) continue;
    if (!best) {
      best = k;
      continue;
    }
    const auto& b = pool[*best];
    if (c.similarity_to_original != b.similarity_to_original) {
      if (c.similarity_to_original > b.similarity_to_original) best = k;
    } else if (margin(c) != margin(b)) {
      if (margin(c) > margin(b)) best = k;
    } else if (c.word < b.word) {
      best = k;
    }
  }
  if (best) return {Decision::Kind::kTerminal, *best};

  for (std::size_t k = 0; k < pool.size(); ++k) {
    if (!best) {
      best = k;
      continue;
    }
    const auto& c = pool[k];
    const auto& b = pool[*best];
    if (c.confidence != b.confidence) {
      if (c.confidence < b.confidence) best = k;
    } else if (c.similarity != b.similarity) {
      if (c.similarity > b.similarity) best = k;
    } else if (c.word < b.word) {
      best = k;
    }
  }
  if (best && pool[*best].confidence < current_confidence) return {Decision::Kind::kContinue, *best};
  return {Decision::Kind::kSkip, 0};
}

std::vector<std::size_t> shuffled_order(std::vector<std::size_t> items, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(items[i - 1], items[j]);
  }
  return items;
}

Document apply_substitutions(const Document& original, std::span<const Substitution> trace) {
  Document out = original;
  for (const auto& s : trace) {
    Token& t = out.tokens.at(s.token_index);
    t.surface = s.replacement;
    t.normalized = to_lower(s.replacement);
  }
  out.raw = detokenize(out.tokens);
  return out;
}

Attacker::Attacker(const EmbeddingStore& store, const SentenceEncoder& encoder,
                   const PosTagger& tagger, const StopWords& stoplist, AttackConfig config)
    : store_(&store),
      encoder_(&encoder),
      tagger_(&tagger),
      stoplist_(&stoplist),
      config_(config),
      cache_(store) {
  config_.validate();
}

AttackResult Attacker::run(const Document& doc, const TargetModel& model) const {
  return run(doc, model, config_.random_seed);
}

AttackResult Attacker::run(const Document& doc, const TargetModel& model, std::uint64_t seed) const {
  QueryCounter counter;
  AttackResult result;
  try {
    std::vector<std::size_t> order;
    LabelDistribution original;
    if (config_.use_importance) {
      auto importance = importance_scores(doc, model, counter);
      original = std::move(importance.original);
      order = rank_words(importance.scores, doc, *stoplist_);
      result.scored_tokens = doc.tokens.size();
    } else {
      original = predict_one(model, model_text(doc), counter);
      std::vector<std::size_t> content;
      for (const Token& t : doc.tokens) {
        if (!stoplist_->contains(t.normalized)) content.push_back(t.index);
      }
      order = shuffled_order(std::move(content), seed);
    }
    const std::size_t label = original.argmax();
    result.original_label = label;
    result.original_confidence = original[label];

    std::size_t budget = order.size();
    if (config_.max_perturb_ratio < 1.0) {
      budget = static_cast<std::size_t>(
          std::ceil(config_.max_perturb_ratio * static_cast<double>(word_count(doc.tokens)) - 1e-9));
      budget = std::max<std::size_t>(budget, 1);
    }

    const double epsilon = config_.threshold();
    double current_confidence = original[label];
    Document adv = doc;
    for (std::size_t idx : order) {
      if (result.substitutions.size() >= budget) break;
      const Token& token = adv.tokens[idx];
      auto candidates = extract_candidates(token, *store_, config_, *tagger_, &cache_);
      if (candidates.empty()) continue;

      SimilarityGate gate;
      gate.reference = config_.sim_reference == SimReference::kOriginal ? &doc : &adv;
      gate.original = &doc;
      gate.epsilon = epsilon;
      gate.enforce = config_.use_sim_constraint;
      auto pool = filter_by_similarity(adv, idx, candidates, gate, *encoder_, model, counter);
      result.similarity_passing += pool.size();

      if (config_.use_sim_constraint && config_.sim_reference == SimReference::kCurrent) {
        // A terminal edit must still satisfy the similarity bound against the source.
        std::erase_if(pool, [&](const ScoredCandidate& c) {
          return c.predicted_label != label && c.similarity_to_original < epsilon;
        });
      }

      Decision d = choose_replacement(pool, label, current_confidence);
      if (d.kind == Decision::Kind::kSkip) continue;
      const ScoredCandidate& chosen = pool[d.index];
      Substitution sub;
      sub.token_index = idx;
      sub.original = token.surface;
      sub.replacement = match_case(token.surface, chosen.word);
      sub.similarity_at_accept = chosen.similarity;
      sub.candidate_pool_size = pool.size();
      sub.confidence_after = chosen.distribution[label];
      adv = substitute(adv, idx, chosen.word);
      result.substitutions.push_back(std::move(sub));

      if (d.kind == Decision::Kind::kTerminal) {
        result.status = AttackStatus::kSuccess;
        result.adversarial_label = chosen.predicted_label;
        result.final_similarity = chosen.similarity_to_original;
        result.adversarial = std::move(adv);
        result.queries = counter.count();
        return result;
      }
      current_confidence = chosen.distribution[label];
    }
    result.status = AttackStatus::kFailed;
    result.queries = counter.count();
    return result;
  } catch (const TransportError& e) {
    result.error = e.what();
  } catch (const ContractError& e) {
    result.error = e.what();
  }
  result.status = AttackStatus::kError;
  result.adversarial.reset();
  result.queries = counter.count();
  return result;
}

AttackResult attack(const Document& doc, const TargetModel& model, const AttackConfig& config,
                    const EmbeddingStore& store, const SentenceEncoder& encoder,
                    const PosTagger& tagger, const StopWords& stoplist) {
  return Attacker(store, encoder, tagger, stoplist, config).run(doc, model);
}

}  // namespace advtext
