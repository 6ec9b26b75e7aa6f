#include "cli.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "advtext/attack.h"
#include "advtext/errors.h"
#include "advtext/eval.h"
#include "advtext/similarity.h"
#include "advtext/target.h"
#include "advtext/text.h"
#include "manifest.h"

#ifndef ADVTEXT_DATA_DIR
#define ADVTEXT_DATA_DIR "data"
#endif

namespace advtext::cli {

namespace fs = std::filesystem;

namespace {

struct TrainArgs {
  std::string corpus;
  std::string model_out;
  double alpha = 1.0;
  double split = 0.0;
  std::uint64_t seed = 0;
  std::string manifest;
};

struct AttackArgs {
  std::string corpus;
  std::string model;
  std::string endpoint;
  std::string labels;
  std::string embeddings;
  std::vector<std::string> stopwords;
  std::string pos_lexicon = std::string(ADVTEXT_DATA_DIR) + "/pos_lexicon.tsv";
  std::string encoder_endpoint;
  std::optional<double> epsilon;
  double delta = 0.7;
  std::size_t n_synonyms = 50;
  bool no_importance = false;
  bool no_sim_constraint = false;
  bool no_pos_filter = false;
  std::string sim_reference = "original";
  double max_perturb_ratio = 1.0;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  int retries = 3;
  std::string out_dir;
};

struct TransferArgs {
  std::vector<std::string> adversaries;
  std::vector<std::string> models;
  std::string labels;
  int retries = 3;
  std::string out_dir;
};

struct ReplayArgs {
  std::string manifest;
  std::string out_dir;
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool is_url(const std::string& s) { return s.rfind("http://", 0) == 0; }

RetryPolicy retry_policy(int attempts) {
  RetryPolicy p;
  p.max_attempts = std::max(1, attempts);
  return p;
}

std::unique_ptr<TargetModel> open_model(const std::string& source, const std::string& labels,
                                        int retries) {
  if (is_url(source)) {
    auto names = split_commas(labels);
    if (names.size() < 2) throw ConfigError("remote model '" + source + "' needs --labels a,b[,...]");
    return std::make_unique<RemoteScorer>(Endpoint::parse(source), std::move(names),
                                          retry_policy(retries));
  }
  return std::make_unique<BowClassifier>(BowClassifier::load(source));
}

void write_text(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << body;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

int cmd_train(const TrainArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
  LabeledCorpus corpus = LabeledCorpus::load(a.corpus);
  if (a.split < 0.0 || a.split >= 1.0) throw ConfigError("--split must lie in [0, 1)");

  std::vector<std::size_t> idx(corpus.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::size_t held = 0;
  if (a.split > 0.0) {
    idx = shuffled_order(std::move(idx), a.seed);
    held = static_cast<std::size_t>(a.split * static_cast<double>(corpus.size()) + 0.5);
  }
  std::vector<LabeledText> train, test;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    (k < held ? test : train).push_back(corpus.records[idx[k]]);
  }
  BowClassifier model = train_bow_classifier(train, BowConfig{a.alpha});
  model.save(a.model_out);
  out << "trained " << model.describe() << " on " << train.size() << " records -> " << a.model_out
      << '\n';
  if (!test.empty()) {
    std::size_t correct = 0;
    for (const auto& r : test) {
      auto text = r.premise ? entailment_compose(*r.premise, r.text) : r.text;
      auto id = model.label_id(r.label);
      if (id && model.predict(text).argmax() == *id) ++correct;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", static_cast<double>(correct) / static_cast<double>(test.size()));
    out << "held-out accuracy " << buf << " (" << correct << "/" << test.size() << ")\n";
  }

  RunManifest m;
  m.subcommand = "train";
  m.command = argv;
  m.config = {{"alpha", a.alpha}, {"split", a.split}, {"seed", a.seed}};
  m.seed = a.seed;
  m.timestamp = utc_timestamp();
  m.add_fixture("corpus", a.corpus);
  m.add_fixture("model_out", a.model_out);
  m.save(a.manifest.empty() ? a.model_out + ".manifest.json" : a.manifest);
  return kOk;
}

int cmd_attack(const AttackArgs& a, const std::vector<std::string>& argv, std::ostream& out,
               std::ostream& err) {
  if (a.model.empty() == a.endpoint.empty()) {
    throw ConfigError("give exactly one of --model or --endpoint");
  }
  AttackConfig config;
  config.n_synonyms = a.n_synonyms;
  config.delta = a.delta;
  config.epsilon = a.epsilon;
  config.use_importance = !a.no_importance;
  config.use_sim_constraint = !a.no_sim_constraint;
  config.use_pos_filter = !a.no_pos_filter;
  config.sim_reference = parse_sim_reference(a.sim_reference);
  config.random_seed = a.seed;
  config.max_perturb_ratio = a.max_perturb_ratio;
  config.validate();

  std::vector<fs::path> stop_paths;
  for (const auto& s : a.stopwords) stop_paths.emplace_back(s);
  if (stop_paths.empty()) stop_paths.emplace_back(std::string(ADVTEXT_DATA_DIR) + "/stopwords_nltk.txt");

  LabeledCorpus corpus = LabeledCorpus::load(a.corpus);
  StopWords stoplist = StopWords::load_union(stop_paths);
  LexiconTagger tagger = LexiconTagger::load(a.pos_lexicon);
  EmbeddingStore store = EmbeddingStore::load(a.embeddings);
  for (const auto& w : store.warnings()) err << "warning: " << w << '\n';

  const std::string model_source = a.endpoint.empty() ? a.model : a.endpoint;
  auto model = open_model(model_source, a.labels, a.retries);
  std::unique_ptr<SentenceEncoder> encoder;
  if (a.encoder_endpoint.empty()) {
    encoder = std::make_unique<AverageEmbeddingEncoder>(store, stoplist);
  } else {
    encoder = std::make_unique<RemoteEncoder>(Endpoint::parse(a.encoder_endpoint), retry_policy(a.retries));
  }

  RunManifest m;
  m.subcommand = "attack";
  m.command = argv;
  m.config = config_to_json(config);
  m.config["model_source"] = model_source;
  m.config["similarity_encoder"] = encoder->name();
  m.seed = a.seed;
  m.timestamp = utc_timestamp();
  m.add_fixture("corpus", a.corpus);
  if (!is_url(model_source)) m.add_fixture("model", model_source);
  m.add_fixture("embeddings", a.embeddings);
  for (const auto& p : stop_paths) m.add_fixture("stopwords", p);
  m.add_fixture("pos_lexicon", a.pos_lexicon);

  fs::create_directories(a.out_dir);
  const fs::path dir(a.out_dir);

  CampaignReport report = run_campaign(corpus, *model, config,
                                       CampaignDeps{store, *encoder, tagger, stoplist},
                                       CampaignOptions{a.workers});
  nlohmann::json j = report_to_json(report, config, *model, m.fixtures_json());
  j["config"]["model_source"] = model_source;
  write_text(dir / "report.json", j.dump(2) + "\n");
  std::size_t exported = export_adversarial_training_set(report.per_sample, corpus, dir / "adversaries.tsv");
  m.save(dir / "manifest.json");

  out << format_summary(report);
  out << "wrote " << (dir / "report.json").string() << ", " << exported << " adversaries to "
      << (dir / "adversaries.tsv").string() << '\n';
  if (report.incomplete) {
    err << "error: campaign incomplete: " << report.abort_reason << '\n';
    return kRuntime;
  }
  return kOk;
}

int cmd_transfer(const TransferArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
  if (a.models.size() < 2) throw ConfigError("transfer needs at least 2 --model sources");
  if (a.adversaries.size() != a.models.size()) {
    throw ConfigError("give one --adversaries file per --model (in the same order)");
  }
  std::vector<std::unique_ptr<TargetModel>> models;
  std::vector<const TargetModel*> views;
  for (const auto& src : a.models) {
    models.push_back(open_model(src, a.labels, a.retries));
    views.push_back(models.back().get());
  }
  auto sorted_labels = [](const TargetModel& m) {
    auto l = m.labels();
    std::sort(l.begin(), l.end());
    return l;
  };
  for (std::size_t i = 1; i < views.size(); ++i) {
    if (sorted_labels(*views[i]) != sorted_labels(*views[0])) {
      throw ConfigError("label sets differ between '" + a.models[0] + "' and '" + a.models[i] + "'");
    }
  }
  std::vector<LabeledCorpus> sets;
  for (const auto& p : a.adversaries) sets.push_back(LabeledCorpus::load(p));

  TransferMatrix matrix = transferability_matrix(sets, views);

  nlohmann::json j;
  j["models"] = a.models;
  j["adversaries"] = a.adversaries;
  nlohmann::json rows = nlohmann::json::array();
  out << "Transferability (row: adversaries crafted for model i; column: accuracy of model j)\n";
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    out << "  [" << i << "]";
    for (std::size_t j2 = 0; j2 < matrix[i].size(); ++j2) {
      char buf[32];
      if (matrix[i][j2]) {
        std::snprintf(buf, sizeof buf, "%8.1f", 100.0 * *matrix[i][j2]);
        row.push_back(*matrix[i][j2]);
      } else {
        std::snprintf(buf, sizeof buf, "%8s", "---");
        row.push_back(nullptr);
      }
      out << buf;
    }
    out << "   (" << sets[i].size() << " adversaries)\n";
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);

  RunManifest m;
  m.subcommand = "transfer";
  m.command = argv;
  m.config = {{"models", a.models}};
  m.timestamp = utc_timestamp();
  for (const auto& p : a.adversaries) m.add_fixture("adversaries", p);
  for (const auto& src : a.models) {
    if (!is_url(src)) m.add_fixture("model", src);
  }
  j["fixtures"] = m.fixtures_json();

  fs::create_directories(a.out_dir);
  write_text(fs::path(a.out_dir) / "transfer.json", j.dump(2) + "\n");
  m.save(fs::path(a.out_dir) / "manifest.json");
  return kOk;
}

int cmd_replay(const ReplayArgs& a, std::ostream& out, std::ostream& err) {
  RunManifest m = RunManifest::load(a.manifest);
  auto problems = m.verify();
  // The trained model file is an output of `train`, so its checksum is
  // expected to be rewritten rather than matched.
  std::erase_if(problems, [&](const std::string& p) {
    return m.subcommand == "train" && p.rfind("model_out ", 0) == 0;
  });
  if (!problems.empty()) {
    for (const auto& p : problems) err << "error: fixture " << p << '\n';
    return kUsage;
  }
  std::vector<std::string> args = m.command;
  if (!a.out_dir.empty()) {
    auto it = std::find(args.begin(), args.end(), "--out-dir");
    if (it == args.end() || it + 1 == args.end()) {
      throw ConfigError("manifest command has no --out-dir to override");
    }
    *(it + 1) = a.out_dir;
  }
  return run(args, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Black-box synonym-substitution attacks on text classifiers", "advtext"};
  app.require_subcommand(1);

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train and save the built-in bag-of-words classifier");
  train_cmd->add_option("--corpus", train.corpus, "Training corpus TSV")->required();
  train_cmd->add_option("--model-out", train.model_out, "Model file to write")->required();
  train_cmd->add_option("--alpha", train.alpha, "Additive smoothing constant")->capture_default_str();
  train_cmd->add_option("--split", train.split, "Held-out fraction for accuracy reporting")->capture_default_str();
  train_cmd->add_option("--seed", train.seed, "Seed for the held-out split")->capture_default_str();
  train_cmd->add_option("--manifest", train.manifest, "Manifest path (default: <model-out>.manifest.json)");

  AttackArgs atk;
  auto* attack_cmd = app.add_subcommand("attack", "Run an attack campaign over a labeled corpus");
  attack_cmd->add_option("--corpus", atk.corpus, "Corpus TSV to attack")->required();
  attack_cmd->add_option("--model", atk.model, "Built-in model file");
  attack_cmd->add_option("--endpoint", atk.endpoint, "Remote scorer URL (http://host:port/path)");
  attack_cmd->add_option("--labels", atk.labels, "Comma-separated label names of a remote scorer");
  attack_cmd->add_option("--embeddings", atk.embeddings, "Word vectors in text format")->required();
  attack_cmd->add_option("--stopwords", atk.stopwords, "Stop-word list(s); repeat to take the union");
  attack_cmd->add_option("--pos-lexicon", atk.pos_lexicon, "POS lexicon TSV")->capture_default_str();
  attack_cmd->add_option("--encoder-endpoint", atk.encoder_endpoint, "Remote sentence encoder URL");
  attack_cmd->add_option("--epsilon", atk.epsilon, "Sentence similarity threshold (required)")->required();
  attack_cmd->add_option("--delta", atk.delta, "Word similarity threshold")->capture_default_str();
  attack_cmd->add_option("--n-synonyms", atk.n_synonyms, "Synonym candidates per word")->capture_default_str();
  attack_cmd->add_flag("--no-importance", atk.no_importance, "Visit words in seeded random order");
  attack_cmd->add_flag("--no-sim-constraint", atk.no_sim_constraint, "Disable the sentence similarity gate");
  attack_cmd->add_flag("--no-pos-filter", atk.no_pos_filter, "Keep candidates of any part of speech");
  attack_cmd->add_option("--sim-reference", atk.sim_reference, "original | current")->capture_default_str();
  attack_cmd->add_option("--max-perturb-ratio", atk.max_perturb_ratio,
                         "Cap on substituted words as a fraction of the text")->capture_default_str();
  attack_cmd->add_option("--seed", atk.seed, "Seed for all randomness")->capture_default_str();
  attack_cmd->add_option("--workers", atk.workers, "Parallel attack workers")->capture_default_str();
  attack_cmd->add_option("--retries", atk.retries, "Attempts per remote request")->capture_default_str();
  attack_cmd->add_option("--out-dir", atk.out_dir, "Directory for report.json, adversaries.tsv, manifest.json")->required();

  TransferArgs tr;
  auto* transfer_cmd = app.add_subcommand("transfer", "Evaluate adversaries of each model on the others");
  transfer_cmd->add_option("--adversaries", tr.adversaries, "Adversary TSV per model, in model order")->required();
  transfer_cmd->add_option("--model", tr.models, "Model file or remote URL; repeat per model")->required();
  transfer_cmd->add_option("--labels", tr.labels, "Comma-separated label names for remote models");
  transfer_cmd->add_option("--retries", tr.retries, "Attempts per remote request")->capture_default_str();
  transfer_cmd->add_option("--out-dir", tr.out_dir, "Directory for transfer.json and manifest.json")->required();

  ReplayArgs rp;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run a command from its manifest");
  replay_cmd->add_option("--manifest", rp.manifest, "manifest.json of an earlier run")->required();
  replay_cmd->add_option("--out-dir", rp.out_dir, "Write outputs here instead of the recorded directory");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*train_cmd) return cmd_train(train, args, out);
    if (*attack_cmd) return cmd_attack(atk, args, out, err);
    if (*transfer_cmd) return cmd_transfer(tr, args, out);
    if (*replay_cmd) return cmd_replay(rp, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const TrainingError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}

}  // namespace advtext::cli
