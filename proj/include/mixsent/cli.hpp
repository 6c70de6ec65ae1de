#pragma once

#include <exception>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "mixsent/corpus.hpp"
#include "mixsent/eval.hpp"
#include "mixsent/lexicon.hpp"
#include "mixsent/nb.hpp"
#include "mixsent/pipeline.hpp"

namespace mixsent {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitInternal = 3;

struct RunConfig {
  int ngram_max = 2;
  int min_count = 2;
  bool use_priors = true;
  bool case_fold = true;           // lexicon matching case-insensitivity
  std::string lexicon_en_positive;
  std::string lexicon_en_negative;
  std::string lexicon_bn_positive;
  std::string lexicon_bn_negative;
  std::uint64_t seed = 1;
  int folds = 10;
  std::string model_path;
  std::string input_path;
  std::string output_path;
  std::string predictions_path;
};

namespace detail {

struct Lexicons {
  SentimentLexicon en;
  SentimentLexicon bn;
};

// Absent lexicons are valid: every lookup then yields UNK, which ablates
// the sentiment-tag feature without changing the pipeline shape.
inline Lexicons load_lexicons(const RunConfig& config) {
  const LexiconOptions opts{config.case_fold};
  Lexicons lex{SentimentLexicon::empty(Lang::EN, opts),
               SentimentLexicon::empty(Lang::BN, opts)};
  if (!config.lexicon_en_positive.empty() || !config.lexicon_en_negative.empty()) {
    if (config.lexicon_en_positive.empty() || config.lexicon_en_negative.empty())
      throw DataError("English lexicon needs both a positive and a negative word file");
    lex.en = SentimentLexicon::load_files(config.lexicon_en_positive,
                                          config.lexicon_en_negative, Lang::EN, opts);
  }
  if (!config.lexicon_bn_positive.empty() || !config.lexicon_bn_negative.empty()) {
    if (config.lexicon_bn_positive.empty() || config.lexicon_bn_negative.empty())
      throw DataError("Bengali lexicon needs both a positive and a negative word file");
    lex.bn = SentimentLexicon::load_files(config.lexicon_bn_positive,
                                          config.lexicon_bn_negative, Lang::BN, opts);
  }
  return lex;
}

inline void print_stats(const CorpusStats& stats, std::ostream& out) {
  out << "tweets    " << stats.total_tweets << " (labeled " << stats.labeled_tweets << ")\n";
  for (Label label : kAllLabels)
    out << "  " << to_string(label) << " " << stats.per_class[label_index(label)] << "\n";
  out << "tokens    " << stats.total_tokens << "\n";
  for (Lang lang : kAllLangs)
    out << "  " << to_string(lang) << " " << stats.per_lang_tokens[lang_index(lang)] << "\n";
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    fn();
    return kExitOk;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open output file for writing: " + path);
  return out;
}

}  // namespace detail

inline ModelParams model_params(const RunConfig& config) {
  return {config.ngram_max, config.min_count, config.use_priors};
}

/// train: labeled corpus -> model file. Prints corpus stats and the
/// vocabulary size.
inline int cmd_train(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto lexicons = detail::load_lexicons(config);
    const auto corpus = load_corpus_file(config.input_path, CorpusKind::Labeled);
    detail::print_stats(corpus_stats(corpus), out);
    const auto model = train_pipeline(corpus, lexicons.en, lexicons.bn, model_params(config));
    out << "vocabulary " << model.vocab.size() << "\n";
    save_model_file(model, config.model_path);
    out << "model written to " << config.model_path << "\n";
  });
}

/// predict: model + corpus -> `id<TAB>label` file, input order. Accepts
/// labeled input too (labels are ignored), so a training file can be fed
/// straight back for resubstitution checks.
inline int cmd_predict(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto model = load_model_file(config.model_path);
    const auto lexicons = detail::load_lexicons(config);
    const auto corpus = load_corpus_file(config.input_path, CorpusKind::Auto);
    const auto labels = predict_corpus(model, corpus, lexicons.en, lexicons.bn);

    std::vector<Prediction> predictions;
    predictions.reserve(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i)
      predictions.push_back({corpus[i].id, labels[i]});
    auto sink = detail::open_output(config.output_path);
    write_predictions(sink, predictions);
    sink.flush();
    if (!sink) throw DataError("write failure: " + config.output_path);
    out << predictions.size() << " predictions written to " << config.output_path << "\n";
  });
}

/// eval: gold labeled corpus + predictions file -> report. Gold and
/// predictions are aligned by id; anything missing or unknown is an error.
inline int cmd_eval(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto gold = load_corpus_file(config.input_path, CorpusKind::Labeled);
    const auto predictions = load_predictions_file(config.predictions_path);

    std::unordered_map<std::string, Label> by_id;
    by_id.reserve(predictions.size());
    for (const auto& p : predictions) by_id.emplace(p.id, p.label);

    std::vector<std::string> missing;
    ConfusionMatrix cm;
    for (const auto& tweet : gold) {
      auto it = by_id.find(tweet.id);
      if (it == by_id.end()) {
        missing.push_back(tweet.id);
        continue;
      }
      cm.add(*tweet.label, it->second);
      by_id.erase(it);
    }
    if (!missing.empty() || !by_id.empty()) {
      std::string msg = "gold/prediction id mismatch:";
      for (const auto& id : missing) msg += " missing prediction for '" + id + "'";
      for (const auto& [id, label] : by_id) msg += " prediction for unknown id '" + id + "'";
      throw DataError(msg);
    }

    const auto report = evaluate(cm);
    out << format_report(report);
    if (!config.output_path.empty()) {
      auto sink = detail::open_output(config.output_path);
      sink << format_report_kv(report);
    }
  });
}

/// cv: k-fold cross validation on a labeled corpus; prints per-fold macro-F
/// and the mean report.
inline int cmd_cv(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto lexicons = detail::load_lexicons(config);
    const auto corpus = load_corpus_file(config.input_path, CorpusKind::Labeled);
    const auto result = kfold_cv(corpus, lexicons.en, lexicons.bn, config.folds,
                                 config.seed, model_params(config));
    for (std::size_t f = 0; f < result.folds.size(); ++f) {
      const auto& fold = result.folds[f];
      out << "fold " << (f + 1) << ": macro-F " << detail::fmt6(fold.macro_f) << "  (P "
          << detail::fmt6(fold.precision_macro) << " R " << detail::fmt6(fold.recall_macro)
          << " n=" << fold.total << ")\n";
    }
    out << "mean over " << result.folds.size() << " folds:\n";
    out << format_report(result.mean);
    if (!config.output_path.empty()) {
      auto sink = detail::open_output(config.output_path);
      sink << format_report_kv(result.mean);
    }
  });
}

/// tune: grid search {ngram_max 1,2} x {min_count 1,2,3} by mean macro-F
/// over identical folds.
inline int cmd_tune(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto lexicons = detail::load_lexicons(config);
    const auto corpus = load_corpus_file(config.input_path, CorpusKind::Labeled);
    const auto result = grid_tune(corpus, lexicons.en, lexicons.bn, TuneGrid{},
                                  config.folds, config.seed, config.use_priors);
    for (const auto& cell : result.cells)
      out << "ngram_max=" << cell.params.ngram_max << " min_count=" << cell.params.min_count
          << "  macro-F " << detail::fmt6(cell.mean_macro_f) << "\n";
    out << "selected: ngram_max=" << result.best.ngram_max
        << " min_count=" << result.best.min_count << "  (macro-F "
        << detail::fmt6(result.best_macro_f) << ")\n";
  });
}

/// stats: dataset description of a labeled or unlabeled corpus file.
inline int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto corpus = load_corpus_file(config.input_path, CorpusKind::Auto);
    detail::print_stats(corpus_stats(corpus), out);
  });
}

}  // namespace mixsent
