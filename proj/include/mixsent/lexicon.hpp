#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "mixsent/error.hpp"
#include "mixsent/text.hpp"
#include "mixsent/types.hpp"

namespace mixsent {

// Word-level polarity. Unk is the answer for anything the lexicon does not
// know; there are no neutral entries by construction.
enum class SentimentTag { Positive, Negative, Unk };

inline constexpr std::string_view to_string(SentimentTag tag) {
  switch (tag) {
    case SentimentTag::Positive: return "Positive";
    case SentimentTag::Negative: return "Negative";
    case SentimentTag::Unk: return "UNK";
  }
  return "?";
}

struct LexiconOptions {
  bool case_fold = true;  // lowercase entries and queries (ASCII)
};

/// Per-language polarity word lists. Immutable once loaded; safe to share
/// across threads.
class SentimentLexicon {
 public:
  SentimentLexicon() = default;

  static SentimentLexicon empty(Lang lang, LexiconOptions opts = {}) {
    SentimentLexicon lex;
    lex.lang_ = lang;
    lex.case_fold_ = opts.case_fold;
    return lex;
  }

  // One word per line; blank lines and '#' comments skipped, surrounding
  // whitespace trimmed, BOM and CRLF tolerated. A word present in both
  // polarity files is a load error.
  static SentimentLexicon load(std::istream& positive_source,
                               std::istream& negative_source, Lang lang,
                               LexiconOptions opts = {},
                               const std::string& positive_name = "positive lexicon",
                               const std::string& negative_name = "negative lexicon") {
    SentimentLexicon lex;
    lex.lang_ = lang;
    lex.case_fold_ = opts.case_fold;
    lex.positive_ = read_word_list(positive_source, positive_name, opts);
    lex.negative_ = read_word_list(negative_source, negative_name, opts);

    std::vector<std::string> overlap;
    for (const auto& w : lex.positive_)
      if (lex.negative_.count(w)) overlap.push_back(w);
    if (!overlap.empty()) {
      std::sort(overlap.begin(), overlap.end());
      std::string msg = "word(s) listed as both positive and negative in " +
                        positive_name + " / " + negative_name + ":";
      for (const auto& w : overlap) msg += " '" + w + "'";
      throw DataError(msg);
    }
    return lex;
  }

  static SentimentLexicon load_files(const std::filesystem::path& positive_path,
                                     const std::filesystem::path& negative_path,
                                     Lang lang, LexiconOptions opts = {}) {
    std::ifstream pos(positive_path), neg(negative_path);
    if (!pos) throw DataError("cannot open lexicon file: " + positive_path.string());
    if (!neg) throw DataError("cannot open lexicon file: " + negative_path.string());
    return load(pos, neg, lang, opts, positive_path.string(), negative_path.string());
  }

  SentimentTag lookup(std::string_view word) const {
    const std::string key = case_fold_ ? to_lower_ascii(word) : std::string(word);
    if (positive_.count(key)) return SentimentTag::Positive;
    if (negative_.count(key)) return SentimentTag::Negative;
    return SentimentTag::Unk;
  }

  Lang language() const { return lang_; }
  bool case_folded() const { return case_fold_; }
  std::size_t positive_size() const { return positive_.size(); }
  std::size_t negative_size() const { return negative_.size(); }
  const std::unordered_set<std::string>& positive_words() const { return positive_; }
  const std::unordered_set<std::string>& negative_words() const { return negative_; }

 private:
  static std::unordered_set<std::string> read_word_list(std::istream& in,
                                                        const std::string& name,
                                                        LexiconOptions opts) {
    std::unordered_set<std::string> words;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
      ++lineno;
      std::string_view line = strip_cr(raw);
      if (lineno == 1) line = strip_bom(line);
      if (auto bad = utf8_invalid_at(line))
        throw DataError(name + ", line " + std::to_string(lineno) +
                        ": invalid UTF-8 byte at offset " + std::to_string(*bad));
      std::string_view entry = trim(line);
      if (entry.empty() || entry.front() == '#') continue;
      if (contains_whitespace(entry))
        throw DataError(name + ", line " + std::to_string(lineno) +
                        ": lexicon entry contains whitespace: '" + std::string(entry) + "'");
      words.insert(opts.case_fold ? to_lower_ascii(entry) : std::string(entry));
    }
    if (in.bad()) throw DataError(name + ": read failure");
    return words;
  }

  Lang lang_ = Lang::EN;
  bool case_fold_ = true;
  std::unordered_set<std::string> positive_;
  std::unordered_set<std::string> negative_;
};

}  // namespace mixsent
