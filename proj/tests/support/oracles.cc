#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace oracle {

std::vector<std::string> split_spaces(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string join_spaces(const std::vector<std::string>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += ' ';
    out += words[i];
  }
  return out;
}

std::vector<double> nb_posterior(const std::vector<std::uint64_t>& doc_counts,
                                 const std::map<std::string, std::vector<std::uint64_t>>& word_counts,
                                 double alpha, const std::vector<std::string>& words) {
  const std::size_t k = doc_counts.size();
  long double docs = 0;
  for (auto d : doc_counts) docs += d;
  std::vector<long double> total(k, 0);
  for (const auto& [w, counts] : word_counts) {
    for (std::size_t c = 0; c < k; ++c) total[c] += counts[c];
  }
  const long double v = word_counts.size();
  std::vector<long double> logp(k);
  for (std::size_t c = 0; c < k; ++c) {
    long double lp = std::log(doc_counts[c] / docs);
    for (const auto& w : words) {
      auto it = word_counts.find(w);
      if (it == word_counts.end()) continue;
      lp += std::log((it->second[c] + (long double)alpha) / (total[c] + (long double)alpha * v));
    }
    logp[c] = lp;
  }
  long double top = *std::max_element(logp.begin(), logp.end());
  long double z = 0;
  for (auto& x : logp) z += (x = std::exp(x - top));
  std::vector<double> out(k);
  for (std::size_t c = 0; c < k; ++c) out[c] = static_cast<double>(logp[c] / z);
  return out;
}

namespace {

double dot_rows(const advtext::EmbeddingStore& store, std::size_t a, std::size_t b) {
  auto va = store.vector(a);
  auto vb = store.vector(b);
  double s = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) s += double(va[i]) * double(vb[i]);
  // cosine range; float rounding can push identical unit vectors past 1
  return std::min(1.0, std::max(-1.0, s));
}

}  // namespace

std::vector<advtext::SynonymCandidate> scan_synonyms(const std::string& word,
                                                     const advtext::EmbeddingStore& store,
                                                     std::size_t n, double delta) {
  std::optional<std::size_t> q;
  for (std::size_t i = 0; i < store.size(); ++i) {
    if (store.word(i) == word) q = i;
  }
  if (!q) return {};
  std::vector<advtext::SynonymCandidate> all;
  for (std::size_t i = 0; i < store.size(); ++i) {
    if (i == *q) continue;
    double s = dot_rows(store, *q, i);
    if (s >= delta) all.push_back({store.word(i), s});
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return a.word_similarity > b.word_similarity ||
           (a.word_similarity == b.word_similarity && a.word < b.word);
  });
  if (all.size() > n) all.resize(n);
  return all;
}

std::vector<double> mean_vector(const std::vector<std::string>& words,
                                const advtext::EmbeddingStore& store,
                                const advtext::StopWords& stoplist) {
  auto sum = [&](bool skip_stop) {
    std::vector<double> acc(store.dimension(), 0.0);
    int used = 0;
    for (const auto& w : words) {
      if (skip_stop && stoplist.contains(w)) continue;
      auto v = store.find(w);
      if (!v) continue;
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += (*v)[i];
      ++used;
    }
    return std::make_pair(acc, used);
  };
  auto r = sum(true);
  if (r.second == 0) r = sum(false);
  if (r.second == 0) return {};
  double n = 0.0;
  for (double x : r.first) n += x * x;
  n = std::sqrt(n);
  for (double& x : r.first) x /= n;
  return r.first;
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  return d / std::sqrt(aa * bb);
}

namespace {

std::size_t top_label(const std::vector<double>& p) {
  std::size_t y = 0;
  for (std::size_t c = 1; c < p.size(); ++c) {
    if (p[c] > p[y]) y = c;
  }
  return y;
}

struct Entry {
  std::string word;
  double sim;
  std::size_t label;
  double p;
  std::vector<double> dist;
};

}  // namespace

GreedyOutcome simulate_greedy(const std::vector<std::string>& words, const GreedySetup& s) {
  auto query = [&](const std::vector<std::string>& ws) {
    std::vector<std::string> t{join_spaces(ws)};
    return s.model->predict_batch(t).at(0).probabilities;
  };
  auto tag = [&](const std::string& w) {
    auto it = s.tags->find(w);
    return it == s.tags->end() ? advtext::PosTag::kOther : it->second;
  };

  auto full = query(words);
  const std::size_t y = top_label(full);
  double conf = full[y];
  auto scores = deletion_scores(words, query);

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (!s.stoplist->contains(words[i])) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  const auto reference = mean_vector(words, *s.store, *s.stoplist);
  GreedyOutcome out;
  auto adv = words;
  for (std::size_t i : order) {
    std::vector<Entry> pool;
    for (const auto& c : scan_synonyms(words[i], *s.store, s.n, s.delta)) {
      if (c.word == words[i]) continue;
      if (s.pos_filter && tag(c.word) != tag(words[i])) continue;
      auto variant = adv;
      variant[i] = c.word;
      auto enc = mean_vector(variant, *s.store, *s.stoplist);
      if (enc.empty() || reference.empty()) continue;
      double sim = cosine(enc, reference);
      if (sim < s.epsilon) continue;
      auto dist = query(variant);
      std::size_t lab = top_label(dist);
      pool.push_back({c.word, sim, lab, dist[lab], dist});
    }

    const Entry* best = nullptr;
    for (const auto& e : pool) {
      if (e.label == y) continue;
      if (!best) {
        best = &e;
        continue;
      }
      double me = e.p - e.dist[y], mb = best->p - best->dist[y];
      if (e.sim > best->sim || (e.sim == best->sim && (me > mb || (me == mb && e.word < best->word)))) {
        best = &e;
      }
    }
    if (best) {
      if (!out.first) out.first = {i, best->word};
      ++out.substitutions;
      out.success = true;
      return out;
    }
    for (const auto& e : pool) {
      if (!best || e.p < best->p ||
          (e.p == best->p && (e.sim > best->sim || (e.sim == best->sim && e.word < best->word)))) {
        best = &e;
      }
    }
    if (best && best->p < conf) {
      if (!out.first) out.first = {i, best->word};
      ++out.substitutions;
      adv[i] = best->word;
      conf = best->dist[y];
    }
  }
  return out;
}

double r_squared(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (syy == 0) return 1.0;
  return sxy * sxy / (sxx * syy);
}

}  // namespace oracle
