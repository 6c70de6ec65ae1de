#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "mixsent/error.hpp"
#include "mixsent/pipeline.hpp"

namespace mixsent {

/// 3x3 counts, rows = gold label, columns = predicted label, class order
/// [positive, negative, neutral].
class ConfusionMatrix {
 public:
  void add(Label gold, Label predicted, std::uint64_t n = 1) {
    counts_[label_index(gold)][label_index(predicted)] += n;
  }

  std::uint64_t at(Label gold, Label predicted) const {
    return counts_[label_index(gold)][label_index(predicted)];
  }

  std::uint64_t total() const {
    std::uint64_t sum = 0;
    for (const auto& row : counts_)
      for (auto v : row) sum += v;
    return sum;
  }

  std::uint64_t gold_count(Label label) const {
    std::uint64_t sum = 0;
    for (Label p : kAllLabels) sum += at(label, p);
    return sum;
  }

  std::uint64_t predicted_count(Label label) const {
    std::uint64_t sum = 0;
    for (Label g : kAllLabels) sum += at(g, label);
    return sum;
  }

  ConfusionMatrix& operator+=(const ConfusionMatrix& other) {
    for (std::size_t g = 0; g < kNumLabels; ++g)
      for (std::size_t p = 0; p < kNumLabels; ++p) counts_[g][p] += other.counts_[g][p];
    return *this;
  }

  bool operator==(const ConfusionMatrix&) const = default;

 private:
  std::array<std::array<std::uint64_t, kNumLabels>, kNumLabels> counts_{};
};

inline ConfusionMatrix confusion(std::span<const Label> gold,
                                 std::span<const Label> predicted) {
  if (gold.size() != predicted.size())
    throw ContractError("gold/predicted length mismatch");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < gold.size(); ++i) cm.add(gold[i], predicted[i]);
  return cm;
}

struct ClassPRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// P = TP/predicted, R = TP/gold, F = 2PR/(P+R); a 0/0 denominator yields 0.
inline std::array<ClassPRF, kNumLabels> per_class_prf(const ConfusionMatrix& cm) {
  std::array<ClassPRF, kNumLabels> out{};
  for (Label label : kAllLabels) {
    const auto tp = static_cast<double>(cm.at(label, label));
    const auto pred = static_cast<double>(cm.predicted_count(label));
    const auto gold = static_cast<double>(cm.gold_count(label));
    auto& prf = out[label_index(label)];
    prf.precision = pred > 0 ? tp / pred : 0.0;
    prf.recall = gold > 0 ? tp / gold : 0.0;
    prf.f1 = (prf.precision + prf.recall) > 0
                 ? 2.0 * prf.precision * prf.recall / (prf.precision + prf.recall)
                 : 0.0;
  }
  return out;
}

/// The contest metric: unweighted mean of the three per-class F-scores.
/// Deliberately NOT the harmonic mean of overall P and R; a system can have
/// overall P=0.606, R=0.524 (harmonic mean 0.562) and still score 0.504.
inline double macro_f(double f_positive, double f_negative, double f_neutral) {
  return (f_positive + f_negative + f_neutral) / 3.0;
}

struct EvalReport {
  ConfusionMatrix cm;
  std::array<ClassPRF, kNumLabels> per_class{};
  double precision_macro = 0.0;  // mean of per-class precision
  double recall_macro = 0.0;     // mean of per-class recall
  double macro_f = 0.0;          // mean of per-class F
  std::uint64_t total = 0;
};

inline EvalReport evaluate(const ConfusionMatrix& cm) {
  EvalReport report;
  report.cm = cm;
  report.per_class = per_class_prf(cm);
  const auto& pc = report.per_class;
  report.precision_macro = (pc[0].precision + pc[1].precision + pc[2].precision) / 3.0;
  report.recall_macro = (pc[0].recall + pc[1].recall + pc[2].recall) / 3.0;
  report.macro_f = macro_f(pc[0].f1, pc[1].f1, pc[2].f1);
  report.total = cm.total();
  return report;
}

namespace detail {

inline std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline std::string fmt17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline std::string format_report(const EvalReport& report) {
  std::string out;
  out += "confusion matrix (rows gold, cols predicted)\n";
  out += "              positive  negative   neutral\n";
  for (Label g : kAllLabels) {
    char line[128];
    std::snprintf(line, sizeof line, "  %-9s %9llu %9llu %9llu\n",
                  std::string(to_string(g)).c_str(),
                  static_cast<unsigned long long>(report.cm.at(g, Label::Positive)),
                  static_cast<unsigned long long>(report.cm.at(g, Label::Negative)),
                  static_cast<unsigned long long>(report.cm.at(g, Label::Neutral)));
    out += line;
  }
  out += "class      precision    recall        F1\n";
  for (Label label : kAllLabels) {
    const auto& prf = report.per_class[label_index(label)];
    char line[128];
    std::snprintf(line, sizeof line, "  %-9s %9s %9s %9s\n",
                  std::string(to_string(label)).c_str(), detail::fmt6(prf.precision).c_str(),
                  detail::fmt6(prf.recall).c_str(), detail::fmt6(prf.f1).c_str());
    out += line;
  }
  out += "overall    P " + detail::fmt6(report.precision_macro) + "  R " +
         detail::fmt6(report.recall_macro) + "  macro-F " + detail::fmt6(report.macro_f) +
         "  (n=" + std::to_string(report.total) + ")\n";
  return out;
}

// key<space>value lines, one metric per line, for harness consumption
inline std::string format_report_kv(const EvalReport& report) {
  std::string out;
  out += "total " + std::to_string(report.total) + "\n";
  for (Label label : kAllLabels) {
    const std::string name(to_string(label));
    const auto& prf = report.per_class[label_index(label)];
    out += "precision_" + name + " " + detail::fmt17(prf.precision) + "\n";
    out += "recall_" + name + " " + detail::fmt17(prf.recall) + "\n";
    out += "f1_" + name + " " + detail::fmt17(prf.f1) + "\n";
  }
  out += "precision_macro " + detail::fmt17(report.precision_macro) + "\n";
  out += "recall_macro " + detail::fmt17(report.recall_macro) + "\n";
  out += "macro_f " + detail::fmt17(report.macro_f) + "\n";
  return out;
}

// ---- cross validation ----

namespace detail {

// Unbiased bounded draw from the standard mt19937 stream, so fold shuffles
// are reproducible across platforms and standard libraries.
inline std::uint32_t bounded_rand(std::mt19937& gen, std::uint32_t bound) {
  const std::uint32_t limit = bound * (0xFFFFFFFFu / bound);
  std::uint32_t r;
  do {
    r = gen();
  } while (r >= limit);
  return r % bound;
}

inline void deterministic_shuffle(std::vector<std::size_t>& v, std::mt19937& gen) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[bounded_rand(gen, static_cast<std::uint32_t>(i))]);
}

}  // namespace detail

/// Seed-deterministic stratified fold assignment: per-class index lists are
/// shuffled, then dealt round-robin across folds, so each fold holds
/// count/k +-1 tweets of every class. Every class needs at least 2 examples
/// so that no training partition loses a class entirely.
inline std::vector<std::vector<std::size_t>> stratified_folds(
    std::span<const LabeledTweet> corpus, int k, std::uint64_t seed) {
  if (k < 2) throw ContractError("k must be >= 2");
  if (corpus.empty()) throw DataError("empty corpus");
  if (static_cast<std::size_t>(k) > corpus.size())
    throw DataError("k (" + std::to_string(k) + ") exceeds corpus size (" +
                    std::to_string(corpus.size()) + ")");

  std::array<std::vector<std::size_t>, kNumLabels> by_class;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!corpus[i].label) throw DataError("corpus contains unlabeled tweets");
    by_class[label_index(*corpus[i].label)].push_back(i);
  }
  for (Label label : kAllLabels) {
    const auto n = by_class[label_index(label)].size();
    if (n == 1)
      throw DataError("class '" + std::string(to_string(label)) +
                      "' has only 1 example; too few for stratified CV");
  }

  std::mt19937 gen(static_cast<std::mt19937::result_type>(seed));
  std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
  std::size_t cursor = 0;
  for (Label label : kAllLabels) {
    auto& members = by_class[label_index(label)];
    detail::deterministic_shuffle(members, gen);
    for (std::size_t idx : members) folds[cursor++ % static_cast<std::size_t>(k)].push_back(idx);
  }
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

struct CvResult {
  EvalReport mean;                 // metrics averaged over folds; cm summed
  std::vector<EvalReport> folds;
};

/// K-fold cross validation over the full pipeline. Augmentation is
/// label-independent and happens once; the vocabulary and model of each
/// fold are built strictly from that fold's training partition.
inline CvResult kfold_cv(std::span<const LabeledTweet> corpus,
                         const SentimentLexicon& en_lexicon,
                         const SentimentLexicon& bn_lexicon, int k, std::uint64_t seed,
                         ModelParams params) {
  const auto folds = stratified_folds(corpus, k, seed);
  const auto declared = labels_present(corpus);
  const auto class_map = detail::ClassIndexMap::from(declared);
  const auto streams = augment_corpus(corpus, en_lexicon, bn_lexicon);

  CvResult result;
  result.folds.reserve(folds.size());
  std::vector<bool> held_out(corpus.size());
  for (const auto& fold : folds) {
    held_out.assign(corpus.size(), false);
    for (std::size_t idx : fold) held_out[idx] = true;
    std::vector<std::size_t> train_idx;
    train_idx.reserve(corpus.size() - fold.size());
    for (std::size_t i = 0; i < corpus.size(); ++i)
      if (!held_out[i]) train_idx.push_back(i);

    const auto vocab =
        Vocabulary::build_subset(streams, train_idx, params.ngram_max, params.min_count);
    std::vector<TrainingExample> examples;
    examples.reserve(train_idx.size());
    for (std::size_t i : train_idx)
      examples.push_back(
          {vectorize(streams[i], vocab), class_map.index[label_index(*corpus[i].label)]});
    const auto model =
        train(examples, vocab, detail::class_names(declared), params.use_priors);

    ConfusionMatrix cm;
    for (std::size_t i : fold)
      cm.add(*corpus[i].label, predicted_label(model, vectorize(streams[i], model.vocab)));
    result.folds.push_back(evaluate(cm));
  }

  // Mean report: each metric is the arithmetic mean over folds (reports are
  // averaged, not recomputed from pooled counts).
  auto& mean = result.mean;
  const double nf = static_cast<double>(result.folds.size());
  for (const auto& fold : result.folds) {
    mean.cm += fold.cm;
    for (std::size_t c = 0; c < kNumLabels; ++c) {
      mean.per_class[c].precision += fold.per_class[c].precision;
      mean.per_class[c].recall += fold.per_class[c].recall;
      mean.per_class[c].f1 += fold.per_class[c].f1;
    }
  }
  for (std::size_t c = 0; c < kNumLabels; ++c) {
    mean.per_class[c].precision /= nf;
    mean.per_class[c].recall /= nf;
    mean.per_class[c].f1 /= nf;
  }
  mean.precision_macro = (mean.per_class[0].precision + mean.per_class[1].precision +
                          mean.per_class[2].precision) /
                         3.0;
  mean.recall_macro =
      (mean.per_class[0].recall + mean.per_class[1].recall + mean.per_class[2].recall) / 3.0;
  mean.macro_f = macro_f(mean.per_class[0].f1, mean.per_class[1].f1, mean.per_class[2].f1);
  mean.total = mean.cm.total();
  return result;
}

// ---- parameter grid search ----

struct TuneGrid {
  std::vector<int> ngram_max_values = {1, 2};
  std::vector<int> min_count_values = {1, 2, 3};
};

struct TuneCell {
  ModelParams params;
  double mean_macro_f = 0.0;
};

struct TuneResult {
  ModelParams best;
  double best_macro_f = 0.0;
  std::vector<TuneCell> cells;
};

/// Evaluates every grid cell with identical folds (same corpus, k, seed)
/// and returns the argmax by mean macro-F. Ties resolve to the smaller
/// ngram_max, then the smaller min_count, because cells are visited in that
/// order and only strict improvements displace the incumbent.
inline TuneResult grid_tune(std::span<const LabeledTweet> corpus,
                            const SentimentLexicon& en_lexicon,
                            const SentimentLexicon& bn_lexicon, const TuneGrid& grid,
                            int k, std::uint64_t seed, bool use_priors = true) {
  if (grid.ngram_max_values.empty() || grid.min_count_values.empty())
    throw ContractError("empty tuning grid");
  TuneResult result;
  bool first = true;
  for (int ngram_max : grid.ngram_max_values) {
    for (int min_count : grid.min_count_values) {
      const ModelParams params{ngram_max, min_count, use_priors};
      const auto cv = kfold_cv(corpus, en_lexicon, bn_lexicon, k, seed, params);
      result.cells.push_back({params, cv.mean.macro_f});
      if (first || cv.mean.macro_f > result.best_macro_f) {
        result.best = params;
        result.best_macro_f = cv.mean.macro_f;
        first = false;
      }
    }
  }
  return result;
}

}  // namespace mixsent
