#pragma once

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mixsent/error.hpp"
#include "mixsent/features.hpp"
#include "mixsent/text.hpp"

namespace mixsent {

struct TrainingExample {
  SparseVector vec;
  std::uint32_t class_index = 0;
};

/// Trained multinomial Naive Bayes model: class log priors plus add-one
/// smoothed per-class word log probabilities over the vocabulary. Immutable
/// after training; safe for concurrent scoring.
struct NBModel {
  std::vector<std::string> classes;                // fixed order; tie-break order
  std::vector<double> log_prior;                   // log Pr(c)
  std::vector<std::vector<double>> log_word_prob;  // [class][term]
  std::vector<std::uint64_t> class_total_count;    // total term mass per class
  Vocabulary vocab;
  bool use_priors = true;

  std::size_t num_classes() const { return classes.size(); }
  bool trained() const { return !classes.empty() && vocab.size() > 0; }
};

/// Estimates the model from term-frequency vectors.
///
/// Word probabilities use add-one smoothing over the vocabulary:
/// (1 + count of term n in class c) / (m + total term count in class c),
/// which sums to exactly 1 over the vocabulary per class. Priors are class
/// relative frequencies. Every declared class needs at least one example,
/// otherwise its log prior would be -inf.
inline NBModel train(std::span<const TrainingExample> examples, const Vocabulary& vocab,
                     std::vector<std::string> classes, bool use_priors = true) {
  const std::size_t m = vocab.size();
  const std::size_t num_classes = classes.size();
  if (m == 0) throw DataError("empty vocabulary");
  if (num_classes == 0) throw ContractError("no classes declared");
  if (examples.empty()) throw DataError("no training examples");
  for (std::size_t c = 0; c < num_classes; ++c) {
    if (classes[c].empty() || contains_whitespace(classes[c]))
      throw ContractError("class names must be non-empty and whitespace-free");
    for (std::size_t d = c + 1; d < num_classes; ++d)
      if (classes[c] == classes[d]) throw ContractError("duplicate class name '" + classes[c] + "'");
  }

  std::vector<std::uint64_t> doc_count(num_classes, 0);
  std::vector<std::uint64_t> total(num_classes, 0);
  std::vector<std::vector<std::uint64_t>> freq(num_classes,
                                               std::vector<std::uint64_t>(m, 0));
  for (const auto& ex : examples) {
    if (ex.class_index >= num_classes) throw ContractError("training example class index out of range");
    ++doc_count[ex.class_index];
    for (const auto& entry : ex.vec.entries) {
      if (entry.index >= m) throw ContractError("training vector index out of range");
      freq[ex.class_index][entry.index] += entry.count;
      total[ex.class_index] += entry.count;
    }
  }
  for (std::size_t c = 0; c < num_classes; ++c)
    if (doc_count[c] == 0)
      throw DataError("class '" + classes[c] + "' has no training examples");

  NBModel model;
  model.classes = std::move(classes);
  model.use_priors = use_priors;
  model.vocab = vocab;
  model.class_total_count = total;
  model.log_prior.resize(num_classes);
  model.log_word_prob.resize(num_classes);
  for (std::size_t c = 0; c < num_classes; ++c) {
    model.log_prior[c] = std::log(static_cast<double>(doc_count[c]) /
                                  static_cast<double>(examples.size()));
    auto& row = model.log_word_prob[c];
    row.resize(m);
    const double denom = static_cast<double>(m) + static_cast<double>(total[c]);
    for (std::size_t n = 0; n < m; ++n)
      row[n] = std::log((1.0 + static_cast<double>(freq[c][n])) / denom);
  }
  return model;
}

struct ClassScores {
  std::vector<double> scores;  // log-posterior up to a shared constant
  std::uint32_t best = 0;      // argmax; ties go to the earliest class
};

/// Log-space class scores: log prior (if enabled) plus count-weighted word
/// log probabilities. The multinomial normalizer is a shared constant and
/// never materialized.
inline ClassScores score(const NBModel& model, const SparseVector& vec) {
  if (!model.trained()) throw ContractError("model is not trained");
  const std::size_t m = model.vocab.size();
  for (const auto& entry : vec.entries)
    if (entry.index >= m) throw ContractError("vector index out of range for model vocabulary");

  ClassScores out;
  out.scores.resize(model.num_classes());
  for (std::size_t c = 0; c < model.num_classes(); ++c) {
    double s = model.use_priors ? model.log_prior[c] : 0.0;
    const auto& row = model.log_word_prob[c];
    for (const auto& entry : vec.entries)
      s += static_cast<double>(entry.count) * row[entry.index];
    out.scores[c] = s;
    if (s > out.scores[out.best]) out.best = static_cast<std::uint32_t>(c);
  }
  return out;
}

inline std::uint32_t predict(const NBModel& model, const SparseVector& vec) {
  return score(model, vec).best;
}

inline const std::string& predict_class(const NBModel& model, const SparseVector& vec) {
  return model.classes[predict(model, vec)];
}

// ---- model file format (version 1) ----
//
// Line-oriented text, doubles stored as C hexfloats so a load reproduces the
// trained model bit for bit. Layout:
//
//   mixsent-nb 1
//   ngram_max N / min_count N / use_priors 0|1
//   classes C            followed by C class names, one per line
//   priors               C hexfloat lines
//   class_totals         C integer lines
//   vocab M              followed by M terms, one per line, index order
//   logprob c            M hexfloat lines, repeated for each class c
//   checksum fnv1a64 HEX   over every byte above this line

inline constexpr std::string_view kModelMagic = "mixsent-nb";
inline constexpr int kModelVersion = 1;

namespace detail {

inline std::string hex_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

inline double parse_hex_double(const std::string& s, const char* what) {
  if (s.empty()) throw DataError(std::string("model file: missing ") + what);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE)
    throw DataError(std::string("model file: bad ") + what + " value '" + s + "'");
  return v;
}

class ModelReader {
 public:
  explicit ModelReader(std::string_view content) : rest_(content) {}

  std::string next_line(const char* what) {
    if (rest_.empty())
      throw DataError(std::string("model file truncated: expected ") + what);
    auto nl = rest_.find('\n');
    std::string_view line;
    if (nl == std::string_view::npos) {
      line = rest_;
      rest_ = {};
    } else {
      line = rest_.substr(0, nl);
      rest_ = rest_.substr(nl + 1);
    }
    return std::string(strip_cr(line));
  }

  // "key <value>" line with the exact expected key
  std::string expect_kv(const std::string& key) {
    const std::string line = next_line(key.c_str());
    if (line.size() <= key.size() || line.compare(0, key.size(), key) != 0 ||
        line[key.size()] != ' ')
      throw DataError("model file: expected '" + key + " ...', got '" + line + "'");
    return line.substr(key.size() + 1);
  }

  void expect_exact(const std::string& expected) {
    const std::string line = next_line(expected.c_str());
    if (line != expected)
      throw DataError("model file: expected '" + expected + "', got '" + line + "'");
  }

  std::uint64_t parse_count(const std::string& s, const char* what) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw DataError(std::string("model file: bad ") + what + " '" + s + "'");
    return std::strtoull(s.c_str(), nullptr, 10);
  }

  bool at_end() const { return rest_.empty(); }

 private:
  std::string_view rest_;
};

}  // namespace detail

inline void save_model(const NBModel& model, std::ostream& out) {
  if (!model.trained()) throw ContractError("cannot save an untrained model");
  const std::size_t num_classes = model.num_classes();
  if (model.log_prior.size() != num_classes || model.class_total_count.size() != num_classes ||
      model.log_word_prob.size() != num_classes)
    throw ContractError("model field sizes disagree with the class count");
  for (const auto& row : model.log_word_prob)
    if (row.size() != model.vocab.size())
      throw ContractError("log probability row size disagrees with the vocabulary");
  std::ostringstream body;
  body << kModelMagic << ' ' << kModelVersion << '\n';
  body << "ngram_max " << model.vocab.ngram_max() << '\n';
  body << "min_count " << model.vocab.min_count() << '\n';
  body << "use_priors " << (model.use_priors ? 1 : 0) << '\n';
  body << "classes " << model.num_classes() << '\n';
  for (const auto& name : model.classes) body << name << '\n';
  body << "priors\n";
  for (double p : model.log_prior) body << detail::hex_double(p) << '\n';
  body << "class_totals\n";
  for (auto t : model.class_total_count) body << t << '\n';
  body << "vocab " << model.vocab.size() << '\n';
  for (const auto& term : model.vocab.terms()) body << term << '\n';
  for (std::size_t c = 0; c < model.num_classes(); ++c) {
    body << "logprob " << c << '\n';
    for (double v : model.log_word_prob[c]) body << detail::hex_double(v) << '\n';
  }
  const std::string content = body.str();
  char checksum[32];
  std::snprintf(checksum, sizeof checksum, "%016llx",
                static_cast<unsigned long long>(fnv1a64(content)));
  out << content << "checksum fnv1a64 " << checksum << '\n';
  if (!out) throw DataError("model write failure");
}

inline NBModel load_model(std::istream& in) {
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw DataError("model read failure");
  if (data.empty()) throw DataError("model file is empty");

  // Magic and version are checked before anything else so a wrong or
  // incompatible file is reported as such, not as a checksum failure.
  {
    detail::ModelReader header(data);
    const std::string first = header.next_line("header");
    const auto space = first.find(' ');
    if (space == std::string::npos || first.substr(0, space) != kModelMagic)
      throw DataError("not a " + std::string(kModelMagic) + " model file");
    const std::string version = first.substr(space + 1);
    if (version.find_first_not_of("0123456789") != std::string::npos || version.empty())
      throw DataError("not a " + std::string(kModelMagic) + " model file");
    if (std::strtoull(version.c_str(), nullptr, 10) !=
        static_cast<unsigned long long>(kModelVersion))
      throw DataError("unsupported model format version " + version);
  }

  const std::string trailer_prefix = "checksum fnv1a64 ";
  auto trailer_pos = data.rfind(trailer_prefix);
  while (trailer_pos != std::string::npos && trailer_pos != 0 &&
         data[trailer_pos - 1] != '\n')
    trailer_pos = data.rfind(trailer_prefix, trailer_pos - 1);
  if (trailer_pos == std::string::npos)
    throw DataError("model file truncated: missing checksum trailer");

  const std::string content = data.substr(0, trailer_pos);
  std::string trailer = data.substr(trailer_pos + trailer_prefix.size());
  trailer = std::string(trim(trailer));
  if (trailer.size() != 16 || trailer.find_first_not_of("0123456789abcdef") != std::string::npos)
    throw DataError("model file: malformed checksum trailer");
  char expected[32];
  std::snprintf(expected, sizeof expected, "%016llx",
                static_cast<unsigned long long>(fnv1a64(content)));
  if (trailer != expected)
    throw DataError("model file checksum mismatch (file corrupted or truncated)");

  detail::ModelReader reader(content);
  reader.next_line("header");  // magic/version already validated
  NBModel model;
  const int ngram_max =
      static_cast<int>(reader.parse_count(reader.expect_kv("ngram_max"), "ngram_max"));
  const int min_count =
      static_cast<int>(reader.parse_count(reader.expect_kv("min_count"), "min_count"));
  const std::string priors_flag = reader.expect_kv("use_priors");
  if (priors_flag != "0" && priors_flag != "1")
    throw DataError("model file: bad use_priors flag '" + priors_flag + "'");
  model.use_priors = priors_flag == "1";

  const auto num_classes = reader.parse_count(reader.expect_kv("classes"), "class count");
  if (num_classes == 0) throw DataError("model file: zero classes");
  for (std::uint64_t c = 0; c < num_classes; ++c) {
    std::string name = reader.next_line("class name");
    if (name.empty() || contains_whitespace(name))
      throw DataError("model file: bad class name '" + name + "'");
    model.classes.push_back(std::move(name));
  }
  reader.expect_exact("priors");
  for (std::uint64_t c = 0; c < num_classes; ++c) {
    const double prior = detail::parse_hex_double(reader.next_line("prior"), "prior");
    if (!std::isfinite(prior) || prior > 0.0)
      throw DataError("model file: log prior out of range");
    model.log_prior.push_back(prior);
  }
  reader.expect_exact("class_totals");
  for (std::uint64_t c = 0; c < num_classes; ++c)
    model.class_total_count.push_back(
        reader.parse_count(reader.next_line("class total"), "class total"));

  const auto vocab_size = reader.parse_count(reader.expect_kv("vocab"), "vocabulary size");
  if (vocab_size == 0) throw DataError("model file: empty vocabulary");
  std::vector<std::string> terms;
  terms.reserve(vocab_size);
  for (std::uint64_t i = 0; i < vocab_size; ++i) terms.push_back(reader.next_line("term"));
  model.vocab = Vocabulary::from_terms(std::move(terms), ngram_max, min_count);

  model.log_word_prob.resize(num_classes);
  for (std::uint64_t c = 0; c < num_classes; ++c) {
    reader.expect_exact("logprob " + std::to_string(c));
    auto& row = model.log_word_prob[c];
    row.reserve(vocab_size);
    for (std::uint64_t n = 0; n < vocab_size; ++n) {
      const double lp = detail::parse_hex_double(reader.next_line("log probability"),
                                                 "log probability");
      // smoothing guarantees 0 < P <= 1, so the log is finite and <= 0
      if (!std::isfinite(lp) || lp > 0.0)
        throw DataError("model file: word log probability out of range");
      row.push_back(lp);
    }
  }
  if (!reader.at_end()) throw DataError("model file: unexpected trailing content");
  return model;
}

inline void save_model_file(const NBModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open model file for writing: " + path.string());
  save_model(model, out);
  out.flush();
  if (!out) throw DataError("model write failure: " + path.string());
}

inline NBModel load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file: " + path.string());
  return load_model(in);
}

}  // namespace mixsent
