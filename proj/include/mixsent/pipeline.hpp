#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mixsent/augment.hpp"
#include "mixsent/corpus.hpp"
#include "mixsent/features.hpp"
#include "mixsent/nb.hpp"

namespace mixsent {

struct ModelParams {
  int ngram_max = 2;
  int min_count = 2;
  bool use_priors = true;
};

inline std::vector<std::vector<AugmentedToken>> augment_corpus(
    std::span<const LabeledTweet> corpus, const SentimentLexicon& en_lexicon,
    const SentimentLexicon& bn_lexicon) {
  std::vector<std::vector<AugmentedToken>> streams;
  streams.reserve(corpus.size());
  for (const auto& tweet : corpus)
    streams.push_back(augment_tweet(tweet, en_lexicon, bn_lexicon));
  return streams;
}

// Sentiment classes that actually occur in the corpus, in canonical order.
// Training declares exactly these; a class absent from the data would have
// an undefined (-inf) prior.
inline std::vector<Label> labels_present(std::span<const LabeledTweet> corpus) {
  std::array<bool, kNumLabels> seen{};
  for (const auto& tweet : corpus) {
    if (!tweet.label) throw DataError("corpus contains unlabeled tweets");
    seen[label_index(*tweet.label)] = true;
  }
  std::vector<Label> out;
  for (Label label : kAllLabels)
    if (seen[label_index(label)]) out.push_back(label);
  return out;
}

namespace detail {

// label -> class index among the declared classes
struct ClassIndexMap {
  std::array<std::uint32_t, kNumLabels> index{};

  static ClassIndexMap from(const std::vector<Label>& declared) {
    ClassIndexMap map;
    map.index.fill(kNumLabels);
    for (std::size_t i = 0; i < declared.size(); ++i)
      map.index[label_index(declared[i])] = static_cast<std::uint32_t>(i);
    return map;
  }
};

inline std::vector<std::string> class_names(const std::vector<Label>& labels) {
  std::vector<std::string> names;
  names.reserve(labels.size());
  for (Label label : labels) names.emplace_back(to_string(label));
  return names;
}

}  // namespace detail

/// Full training path: augment, build the vocabulary from the training
/// corpus only, vectorize, and fit the classifier.
inline NBModel train_pipeline(std::span<const LabeledTweet> corpus,
                              const SentimentLexicon& en_lexicon,
                              const SentimentLexicon& bn_lexicon, ModelParams params) {
  if (corpus.empty()) throw DataError("empty training corpus");
  const auto declared = labels_present(corpus);
  const auto class_map = detail::ClassIndexMap::from(declared);
  const auto streams = augment_corpus(corpus, en_lexicon, bn_lexicon);
  const auto vocab = Vocabulary::build(streams, params.ngram_max, params.min_count);

  std::vector<TrainingExample> examples;
  examples.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i)
    examples.push_back(
        {vectorize(streams[i], vocab), class_map.index[label_index(*corpus[i].label)]});
  return train(examples, vocab, detail::class_names(declared), params.use_priors);
}

inline Label predicted_label(const NBModel& model, const SparseVector& vec) {
  const auto& name = predict_class(model, vec);
  const auto label = parse_label(name);
  if (!label) throw DataError("model class '" + name + "' is not a sentiment label");
  return *label;
}

/// Classifies every tweet: augment with the same lexicons used at training
/// time, vectorize against the model vocabulary, score. Tweets that are
/// entirely out of vocabulary fall back to the prior argmax.
inline std::vector<Label> predict_corpus(const NBModel& model,
                                         std::span<const LabeledTweet> corpus,
                                         const SentimentLexicon& en_lexicon,
                                         const SentimentLexicon& bn_lexicon) {
  std::vector<Label> out;
  out.reserve(corpus.size());
  for (const auto& tweet : corpus) {
    const auto stream = augment_tweet(tweet, en_lexicon, bn_lexicon);
    out.push_back(predicted_label(model, vectorize(stream, model.vocab)));
  }
  return out;
}

}  // namespace mixsent
