#pragma once

// Shared synthetic corpora and small helpers for the test suites.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mixsent/mixsent.hpp"

namespace fixtures {

using namespace mixsent;

inline std::uint32_t bounded(std::mt19937& gen, std::uint32_t bound) {
  return gen() % bound;  // test-side helper; bias is irrelevant here
}

// One class-unique marker token appended to every tweet of its class, over
// a small shared filler pool. Separable by construction: the marker n-grams
// dominate any filler noise.
inline std::vector<LabeledTweet> separable_corpus(std::size_t per_class,
                                                  std::uint32_t seed,
                                                  bool with_markers = true) {
  static const std::array<std::string, kNumLabels> markers = {"markerpos", "markerneg",
                                                              "markerneu"};
  std::mt19937 gen(seed);
  std::vector<LabeledTweet> corpus;
  corpus.reserve(per_class * kNumLabels);
  std::size_t next_id = 0;
  for (Label label : kAllLabels) {
    for (std::size_t t = 0; t < per_class; ++t) {
      LabeledTweet tweet;
      tweet.id = "t" + std::to_string(next_id++);
      tweet.label = label;
      for (int w = 0; w < 5; ++w)
        tweet.tokens.push_back({"f" + std::to_string(bounded(gen, 20)), Lang::EN});
      if (with_markers) tweet.tokens.push_back({markers[label_index(label)], Lang::EN});
      corpus.push_back(std::move(tweet));
    }
  }
  return corpus;
}

// Identical constant filler plus one class marker per tweet: zero noise, so
// every reasonable parameter cell classifies it perfectly.
inline std::vector<LabeledTweet> marker_only_corpus(std::size_t per_class) {
  static const std::array<std::string, kNumLabels> markers = {"markerpos", "markerneg",
                                                              "markerneu"};
  std::vector<LabeledTweet> corpus;
  std::size_t next_id = 0;
  for (Label label : kAllLabels) {
    for (std::size_t t = 0; t < per_class; ++t) {
      LabeledTweet tweet;
      tweet.id = "m" + std::to_string(next_id++);
      tweet.label = label;
      tweet.tokens.push_back({"base", Lang::EN});
      tweet.tokens.push_back({markers[label_index(label)], Lang::EN});
      corpus.push_back(std::move(tweet));
    }
  }
  return corpus;
}

// Classes share an identical unigram multiset {A,B,C}; only token order
// (hence bigrams over the augmented stream) separates them.
inline std::vector<LabeledTweet> bigram_order_corpus(std::size_t per_class) {
  static const std::array<std::vector<std::string>, kNumLabels> orders = {{
      {"alpha", "beta", "gamma"},
      {"beta", "gamma", "alpha"},
      {"gamma", "alpha", "beta"},
  }};
  std::vector<LabeledTweet> corpus;
  std::size_t next_id = 0;
  for (Label label : kAllLabels) {
    for (std::size_t t = 0; t < per_class; ++t) {
      LabeledTweet tweet;
      tweet.id = "b" + std::to_string(next_id++);
      tweet.label = label;
      for (const auto& word : orders[label_index(label)])
        tweet.tokens.push_back({word, Lang::EN});
      corpus.push_back(std::move(tweet));
    }
  }
  return corpus;
}

// Table-like class balance (n_pos, n_neg, n_neu) with trivially distinct
// content per tweet so ids and vocab stay unique.
inline std::vector<LabeledTweet> shaped_corpus(std::size_t n_pos, std::size_t n_neg,
                                               std::size_t n_neu) {
  std::vector<LabeledTweet> corpus;
  std::size_t next_id = 0;
  auto emit = [&](Label label, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      LabeledTweet tweet;
      tweet.id = "s" + std::to_string(next_id++);
      tweet.label = label;
      tweet.tokens.push_back({"w" + std::to_string(i % 50), Lang::EN});
      tweet.tokens.push_back({"v" + std::to_string(i % 7), Lang::BN});
      corpus.push_back(std::move(tweet));
    }
  };
  emit(Label::Positive, n_pos);
  emit(Label::Negative, n_neg);
  emit(Label::Neutral, n_neu);
  return corpus;
}

inline std::string corpus_to_tsv(const std::vector<LabeledTweet>& corpus,
                                 bool with_labels = true) {
  std::string out;
  for (const auto& tweet : corpus) {
    out += tweet.id;
    if (with_labels && tweet.label) {
      out += '\t';
      out += to_string(*tweet.label);
    }
    out += '\t';
    out += format_tagged_line(tweet.tokens);
    out += '\n';
  }
  return out;
}

inline SentimentLexicon lexicon_from_words(Lang lang,
                                           const std::vector<std::string>& positive,
                                           const std::vector<std::string>& negative,
                                           bool case_fold = true) {
  std::string pos_text, neg_text;
  for (const auto& w : positive) pos_text += w + "\n";
  for (const auto& w : negative) neg_text += w + "\n";
  std::istringstream pos(pos_text), neg(neg_text);
  return SentimentLexicon::load(pos, neg, lang, {case_fold});
}

// The two-tweet corpus behind the smoothing spot values: one positive
// example {good:2}, one negative {bad:1}, vocabulary {bad, good}.
struct TinyModelFixture {
  Vocabulary vocab = Vocabulary::from_terms({"bad", "good"}, 1, 1);
  std::uint32_t bad_index = 0;
  std::uint32_t good_index = 1;
  std::vector<TrainingExample> examples{
      {SparseVector{{{1, 2}}}, 0},  // positive: good x2
      {SparseVector{{{0, 1}}}, 1},  // negative: bad x1
  };
  std::vector<std::string> classes{"positive", "negative"};

  NBModel train(bool use_priors = true) const {
    return mixsent::train(examples, vocab, classes, use_priors);
  }
};

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    auto base = std::filesystem::temp_directory_path();
    for (int i = 0; i < 10000; ++i) {
      auto candidate = base / ("mixsent_" + tag + "_" + std::to_string(i));
      std::error_code ec;
      if (std::filesystem::create_directory(candidate, ec)) {
        path_ = candidate;
        return;
      }
    }
    throw std::runtime_error("cannot create temp dir");
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path file(const std::string& name) const { return path_ / name; }

  std::filesystem::path write(const std::string& name, const std::string& content) const {
    auto p = file(name);
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace fixtures
