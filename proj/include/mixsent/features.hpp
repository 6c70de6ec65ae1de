#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mixsent/augment.hpp"
#include "mixsent/error.hpp"

namespace mixsent {

/// All contiguous n-grams for n = 1..ngram_max over one augmented stream,
/// unigrams first, each order in stream position order. An n-gram string is
/// the token texts joined by single spaces (token texts never contain
/// whitespace, so the join is unambiguous).
inline std::vector<std::string> extract_ngrams(std::span<const AugmentedToken> tokens,
                                               int ngram_max) {
  if (ngram_max < 1) throw ContractError("ngram_max must be >= 1");
  const std::size_t len = tokens.size();
  std::vector<std::string> out;
  out.reserve(len * static_cast<std::size_t>(ngram_max));
  for (int n = 1; n <= ngram_max; ++n) {
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= len; ++i) {
      std::string gram = tokens[i].text;
      for (int j = 1; j < n; ++j) {
        gram += ' ';
        gram += tokens[i + static_cast<std::size_t>(j)].text;
      }
      out.push_back(std::move(gram));
    }
  }
  return out;
}

/// N-gram -> dense index map with a total-occurrence frequency cutoff.
/// Built from training data only; index assignment is lexicographic, so
/// builds are reproducible.
class Vocabulary {
 public:
  Vocabulary() = default;

  static Vocabulary build(std::span<const std::vector<AugmentedToken>> training,
                          int ngram_max, int min_count) {
    std::vector<std::size_t> all(training.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return build_subset(training, all, ngram_max, min_count);
  }

  // Builds from the selected streams only; used by cross-validation so each
  // fold sees nothing from its held-out partition.
  static Vocabulary build_subset(std::span<const std::vector<AugmentedToken>> streams,
                                 std::span<const std::size_t> selected, int ngram_max,
                                 int min_count) {
    if (ngram_max < 1) throw ContractError("ngram_max must be >= 1");
    if (min_count < 1) throw ContractError("min_count must be >= 1");
    if (selected.empty()) throw DataError("empty training set");

    std::unordered_map<std::string, std::uint64_t> counts;
    for (std::size_t idx : selected) {
      if (idx >= streams.size()) throw ContractError("stream index out of range");
      for (auto& gram : extract_ngrams(streams[idx], ngram_max)) ++counts[std::move(gram)];
    }

    Vocabulary vocab;
    vocab.ngram_max_ = ngram_max;
    vocab.min_count_ = min_count;
    vocab.terms_.reserve(counts.size());
    for (const auto& [term, count] : counts)
      if (count >= static_cast<std::uint64_t>(min_count)) vocab.terms_.push_back(term);
    std::sort(vocab.terms_.begin(), vocab.terms_.end());
    vocab.rebuild_index();
    return vocab;
  }

  // Reconstructs a vocabulary with a fixed, already-decided index order
  // (model files, tests). Order is preserved exactly as given.
  static Vocabulary from_terms(std::vector<std::string> terms, int ngram_max,
                               int min_count) {
    if (ngram_max < 1) throw ContractError("ngram_max must be >= 1");
    if (min_count < 1) throw ContractError("min_count must be >= 1");
    Vocabulary vocab;
    vocab.ngram_max_ = ngram_max;
    vocab.min_count_ = min_count;
    vocab.terms_ = std::move(terms);
    for (const auto& term : vocab.terms_) {
      if (term.empty()) throw DataError("empty vocabulary term");
      if (term.find('\n') != std::string::npos || term.find('\t') != std::string::npos)
        throw DataError("vocabulary term contains control whitespace");
    }
    vocab.rebuild_index();
    return vocab;
  }

  std::size_t size() const { return terms_.size(); }
  int ngram_max() const { return ngram_max_; }
  int min_count() const { return min_count_; }

  std::optional<std::uint32_t> index_of(const std::string& term) const {
    auto it = index_.find(term);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& term(std::size_t index) const { return terms_.at(index); }
  const std::vector<std::string>& terms() const { return terms_; }

 private:
  void rebuild_index() {
    index_.clear();
    index_.reserve(terms_.size());
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (!index_.emplace(terms_[i], static_cast<std::uint32_t>(i)).second)
        throw DataError("duplicate vocabulary term '" + terms_[i] + "'");
    }
  }

  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::uint32_t> index_;
  int ngram_max_ = 1;
  int min_count_ = 1;
};

/// Term-frequency vector over a vocabulary. Zero counts are represented by
/// omission; indices are strictly increasing.
struct SparseVector {
  struct Entry {
    std::uint32_t index = 0;
    std::uint32_t count = 0;

    bool operator==(const Entry&) const = default;
  };

  std::vector<Entry> entries;

  std::uint64_t total_count() const {
    std::uint64_t sum = 0;
    for (const auto& e : entries) sum += e.count;
    return sum;
  }

  bool operator==(const SparseVector&) const = default;
};

/// Counts in-vocabulary n-grams of the stream; out-of-vocabulary n-grams
/// contribute nothing (a fully out-of-vocabulary stream yields the empty
/// vector).
inline SparseVector vectorize(std::span<const AugmentedToken> tokens,
                              const Vocabulary& vocab) {
  std::map<std::uint32_t, std::uint32_t> counts;
  for (const auto& gram : extract_ngrams(tokens, vocab.ngram_max()))
    if (auto idx = vocab.index_of(gram)) ++counts[*idx];
  SparseVector vec;
  vec.entries.reserve(counts.size());
  for (const auto& [index, count] : counts) vec.entries.push_back({index, count});
  return vec;
}

}  // namespace mixsent
