#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "mixsent/error.hpp"
#include "mixsent/text.hpp"
#include "mixsent/types.hpp"

namespace mixsent {

// One surface word plus its language tag; the atomic input unit.
struct TaggedToken {
  std::string surface;  // non-empty, no whitespace
  Lang lang = Lang::EN;

  bool operator==(const TaggedToken&) const = default;
};

struct LabeledTweet {
  std::string id;
  std::vector<TaggedToken> tokens;     // length >= 1, input order
  std::optional<Label> label;          // absent for test data
};

struct CorpusStats {
  std::size_t total_tweets = 0;
  std::size_t labeled_tweets = 0;
  std::array<std::size_t, kNumLabels> per_class{};  // [positive, negative, neutral]
  std::size_t total_tokens = 0;
  std::array<std::size_t, 3> per_lang_tokens{};     // [EN, BN, HI]
};

/// Parses one whitespace-separated sequence of `surface/TAG` items. The tag
/// is whatever follows the LAST '/', so surfaces may themselves contain
/// slashes (URLs).
inline std::vector<TaggedToken> parse_tagged_line(std::string_view line) {
  auto items = split_whitespace(line);
  if (items.empty()) throw DataError("empty tweet: no tokens");
  std::vector<TaggedToken> out;
  out.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto item = items[i];
    const auto slash = item.rfind('/');
    if (slash == std::string_view::npos)
      throw DataError("token " + std::to_string(i + 1) + " ('" + std::string(item) +
                      "'): missing language tag");
    const auto surface = item.substr(0, slash);
    const auto tag = item.substr(slash + 1);
    if (surface.empty())
      throw DataError("token " + std::to_string(i + 1) + " ('" + std::string(item) +
                      "'): empty surface form");
    if (contains_whitespace(surface))
      throw DataError("token " + std::to_string(i + 1) + " ('" + std::string(item) +
                      "'): surface contains whitespace");
    const auto lang = parse_lang(tag);
    if (!lang)
      throw DataError("token " + std::to_string(i + 1) + " ('" + std::string(item) +
                      "'): unknown language tag '" + std::string(tag) + "'");
    out.push_back({std::string(surface), *lang});
  }
  return out;
}

inline std::string format_tagged_line(std::span<const TaggedToken> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i].surface;
    out += '/';
    out += to_string(tokens[i].lang);
  }
  return out;
}

enum class CorpusKind {
  Labeled,    // id<TAB>label<TAB>tokens
  Unlabeled,  // id<TAB>tokens
  Auto,       // accept either, per line
};

/// Loads a TSV corpus. All lines are parsed; if any fail, one aggregate
/// error lists every bad line. Blank lines are skipped.
inline std::vector<LabeledTweet> load_corpus(std::istream& in, CorpusKind kind,
                                             const std::string& name = "corpus") {
  std::vector<LabeledTweet> tweets;
  std::vector<std::string> problems;
  std::unordered_set<std::string> seen_ids;
  std::string raw;
  std::size_t lineno = 0;

  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = strip_cr(raw);
    if (lineno == 1) line = strip_bom(line);
    if (trim(line).empty()) continue;
    try {
      if (auto bad = utf8_invalid_at(line))
        throw DataError("invalid UTF-8 byte at offset " + std::to_string(*bad));
      const auto fields = split_tabs(line);

      std::string_view id_field, tokens_field;
      std::optional<Label> label;
      if (kind == CorpusKind::Labeled || (kind == CorpusKind::Auto && fields.size() == 3)) {
        if (fields.size() != 3)
          throw DataError("expected 3 tab-separated fields (id, label, tokens), got " +
                          std::to_string(fields.size()));
        label = parse_label(fields[1]);
        if (!label) throw DataError("unknown label \"" + std::string(fields[1]) + "\"");
        id_field = fields[0];
        tokens_field = fields[2];
      } else {
        if (fields.size() != 2)
          throw DataError("expected 2 tab-separated fields (id, tokens), got " +
                          std::to_string(fields.size()));
        id_field = fields[0];
        tokens_field = fields[1];
      }

      if (id_field.empty()) throw DataError("empty tweet id");
      if (contains_whitespace(id_field))
        throw DataError("tweet id contains whitespace: '" + std::string(id_field) + "'");
      if (!seen_ids.insert(std::string(id_field)).second)
        throw DataError("duplicate tweet id '" + std::string(id_field) + "'");

      tweets.push_back({std::string(id_field), parse_tagged_line(tokens_field), label});
    } catch (const DataError& e) {
      problems.push_back("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (in.bad()) throw DataError(name + ": read failure");

  if (!problems.empty()) {
    std::string msg = name + ": " + std::to_string(problems.size()) + " invalid line(s)";
    for (const auto& p : problems) {
      msg += "\n  ";
      msg += p;
    }
    throw DataError(msg);
  }
  return tweets;
}

inline std::vector<LabeledTweet> load_corpus_file(const std::filesystem::path& path,
                                                  CorpusKind kind) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file: " + path.string());
  return load_corpus(in, kind, path.string());
}

inline CorpusStats corpus_stats(std::span<const LabeledTweet> corpus) {
  CorpusStats stats;
  stats.total_tweets = corpus.size();
  for (const auto& tweet : corpus) {
    if (tweet.label) {
      ++stats.labeled_tweets;
      ++stats.per_class[label_index(*tweet.label)];
    }
    stats.total_tokens += tweet.tokens.size();
    for (const auto& tok : tweet.tokens) ++stats.per_lang_tokens[lang_index(tok.lang)];
  }
  return stats;
}

// ---- prediction files: id<TAB>label, one line per tweet, input order ----

struct Prediction {
  std::string id;
  Label label = Label::Positive;

  bool operator==(const Prediction&) const = default;
};

inline void write_predictions(std::ostream& out, std::span<const Prediction> predictions) {
  for (const auto& p : predictions)
    out << p.id << '\t' << to_string(p.label) << '\n';
}

inline std::vector<Prediction> load_predictions(std::istream& in,
                                                const std::string& name = "predictions") {
  std::vector<Prediction> out;
  std::vector<std::string> problems;
  std::unordered_set<std::string> seen_ids;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = strip_cr(raw);
    if (lineno == 1) line = strip_bom(line);
    if (trim(line).empty()) continue;
    try {
      const auto fields = split_tabs(line);
      if (fields.size() != 2)
        throw DataError("expected 2 tab-separated fields (id, label), got " +
                        std::to_string(fields.size()));
      if (fields[0].empty()) throw DataError("empty tweet id");
      const auto label = parse_label(fields[1]);
      if (!label) throw DataError("unknown label \"" + std::string(fields[1]) + "\"");
      if (!seen_ids.insert(std::string(fields[0])).second)
        throw DataError("duplicate tweet id '" + std::string(fields[0]) + "'");
      out.push_back({std::string(fields[0]), *label});
    } catch (const DataError& e) {
      problems.push_back("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (in.bad()) throw DataError(name + ": read failure");
  if (!problems.empty()) {
    std::string msg = name + ": " + std::to_string(problems.size()) + " invalid line(s)";
    for (const auto& p : problems) {
      msg += "\n  ";
      msg += p;
    }
    throw DataError(msg);
  }
  return out;
}

inline std::vector<Prediction> load_predictions_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open predictions file: " + path.string());
  return load_predictions(in, path.string());
}

}  // namespace mixsent
