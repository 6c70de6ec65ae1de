#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <sstream>

#include "fixtures.hpp"
#include "mixsent/cli.hpp"

using namespace mixsent;
using fixtures::TempDir;

namespace {

struct Sink {
  std::ostringstream out, err;
};

RunConfig base_config() {
  RunConfig cfg;
  cfg.ngram_max = 2;
  cfg.min_count = 2;
  cfg.folds = 10;
  cfg.seed = 1;
  return cfg;
}

}  // namespace

TEST_CASE("train writes a model and echoes stats and vocabulary size", "[cli]") {
  TempDir dir("train");
  const auto corpus = fixtures::shaped_corpus(1000, 1000, 500);
  const auto input = dir.write("train.tsv", fixtures::corpus_to_tsv(corpus));

  auto cfg = base_config();
  cfg.input_path = input.string();
  cfg.model_path = dir.file("model.nb").string();
  Sink io;
  REQUIRE(cmd_train(cfg, io.out, io.err) == kExitOk);
  const auto text = io.out.str();
  CHECK_THAT(text, Catch::Matchers::ContainsSubstring("positive 1000"));
  CHECK_THAT(text, Catch::Matchers::ContainsSubstring("negative 1000"));
  CHECK_THAT(text, Catch::Matchers::ContainsSubstring("neutral 500"));
  CHECK_THAT(text, Catch::Matchers::ContainsSubstring("vocabulary "));
  CHECK(std::filesystem::exists(cfg.model_path));
  // the artifact loads back as a valid model
  const auto model = load_model_file(cfg.model_path);
  CHECK(model.classes == std::vector<std::string>{"positive", "negative", "neutral"});
}

TEST_CASE("missing corpus file exits with a data error", "[cli]") {
  auto cfg = base_config();
  cfg.input_path = "/nonexistent/train.tsv";
  cfg.model_path = "/tmp/never_written.nb";
  Sink io;
  CHECK(cmd_train(cfg, io.out, io.err) == kExitData);
  CHECK_THAT(io.err.str(), Catch::Matchers::ContainsSubstring("cannot open"));
}

TEST_CASE("a cutoff nothing survives is reported as an empty vocabulary", "[cli]") {
  TempDir dir("cutoff");
  const auto input = dir.write("train.tsv",
                               "t1\tpositive\tok/EN\n"
                               "t2\tnegative\tbad/EN\n"
                               "t3\tneutral\tmeh/EN\n");
  auto cfg = base_config();
  cfg.input_path = input.string();
  cfg.model_path = dir.file("model.nb").string();
  cfg.min_count = 1000;
  Sink io;
  CHECK(cmd_train(cfg, io.out, io.err) == kExitData);
  CHECK_THAT(io.err.str(), Catch::Matchers::ContainsSubstring("empty vocabulary"));
}

TEST_CASE("predict labels the training file back correctly on a separable corpus",
          "[cli]") {
  TempDir dir("predict");
  const auto corpus = fixtures::separable_corpus(30, 9);
  const auto train_file = dir.write("train.tsv", fixtures::corpus_to_tsv(corpus));

  auto cfg = base_config();
  cfg.input_path = train_file.string();
  cfg.model_path = dir.file("model.nb").string();
  Sink io;
  REQUIRE(cmd_train(cfg, io.out, io.err) == kExitOk);

  cfg.output_path = dir.file("pred.tsv").string();
  Sink io2;
  REQUIRE(cmd_predict(cfg, io2.out, io2.err) == kExitOk);

  const auto predictions = load_predictions_file(cfg.output_path);
  REQUIRE(predictions.size() == corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CHECK(predictions[i].id == corpus[i].id);  // input order preserved
    CHECK(predictions[i].label == *corpus[i].label);
  }
}

TEST_CASE("predict on an empty corpus writes an empty file and succeeds", "[cli]") {
  TempDir dir("empty");
  const auto corpus = fixtures::shaped_corpus(3, 3, 3);
  auto cfg = base_config();
  cfg.min_count = 1;
  cfg.input_path = dir.write("train.tsv", fixtures::corpus_to_tsv(corpus)).string();
  cfg.model_path = dir.file("model.nb").string();
  Sink io;
  REQUIRE(cmd_train(cfg, io.out, io.err) == kExitOk);

  cfg.input_path = dir.write("test.tsv", "").string();
  cfg.output_path = dir.file("pred.tsv").string();
  Sink io2;
  REQUIRE(cmd_predict(cfg, io2.out, io2.err) == kExitOk);
  CHECK(fixtures::read_file(cfg.output_path).empty());
}

TEST_CASE("fully out-of-vocabulary tweets get the prior-argmax label", "[cli]") {
  TempDir dir("oov");
  // negative is the majority class, so the empty vector must go negative
  const auto corpus = fixtures::shaped_corpus(10, 30, 10);
  auto cfg = base_config();
  cfg.min_count = 1;
  cfg.input_path = dir.write("train.tsv", fixtures::corpus_to_tsv(corpus)).string();
  cfg.model_path = dir.file("model.nb").string();
  Sink io;
  REQUIRE(cmd_train(cfg, io.out, io.err) == kExitOk);

  cfg.input_path = dir.write("test.tsv", "x1\tzzzz/EN qqqq/BN\n").string();
  cfg.output_path = dir.file("pred.tsv").string();
  Sink io2;
  REQUIRE(cmd_predict(cfg, io2.out, io2.err) == kExitOk);
  const auto predictions = load_predictions_file(cfg.output_path);
  REQUIRE(predictions.size() == 1);
  CHECK(predictions[0].label == Label::Negative);
}

TEST_CASE("eval of predictions equal to gold reports macro-F 1", "[cli]") {
  TempDir dir("eval1");
  const auto corpus = fixtures::shaped_corpus(4, 4, 4);
  auto cfg = base_config();
  cfg.input_path = dir.write("gold.tsv", fixtures::corpus_to_tsv(corpus)).string();
  std::string preds;
  for (const auto& tweet : corpus)
    preds += tweet.id + "\t" + std::string(to_string(*tweet.label)) + "\n";
  cfg.predictions_path = dir.write("pred.tsv", preds).string();
  cfg.output_path = dir.file("report.txt").string();
  Sink io;
  REQUIRE(cmd_eval(cfg, io.out, io.err) == kExitOk);
  CHECK_THAT(io.out.str(), Catch::Matchers::ContainsSubstring("macro-F 1.000000"));
  CHECK_THAT(fixtures::read_file(cfg.output_path),
             Catch::Matchers::ContainsSubstring("macro_f 1\n"));
}

TEST_CASE("eval with a missing prediction id names the id", "[cli]") {
  TempDir dir("eval2");
  const auto corpus = fixtures::shaped_corpus(2, 2, 2);
  auto cfg = base_config();
  cfg.input_path = dir.write("gold.tsv", fixtures::corpus_to_tsv(corpus)).string();
  std::string preds;
  for (std::size_t i = 0; i + 1 < corpus.size(); ++i)  // drop the last id
    preds += corpus[i].id + "\tpositive\n";
  cfg.predictions_path = dir.write("pred.tsv", preds).string();
  Sink io;
  CHECK(cmd_eval(cfg, io.out, io.err) == kExitData);
  CHECK_THAT(io.err.str(), Catch::Matchers::ContainsSubstring("'" + corpus.back().id + "'"));
}

TEST_CASE("eval report matches a hand-computed confusion matrix", "[cli]") {
  TempDir dir("eval3");
  // 10 tweets: gold 4 pos / 3 neg / 3 neu with controlled mistakes
  const std::string gold_tsv =
      "a\tpositive\tw/EN\nb\tpositive\tw/EN\nc\tpositive\tw/EN\nd\tpositive\tw/EN\n"
      "e\tnegative\tw/EN\nf\tnegative\tw/EN\ng\tnegative\tw/EN\n"
      "h\tneutral\tw/EN\ni\tneutral\tw/EN\nj\tneutral\tw/EN\n";
  const std::string pred_tsv =
      "a\tpositive\nb\tpositive\nc\tnegative\nd\tneutral\n"
      "e\tnegative\nf\tnegative\ng\tpositive\n"
      "h\tneutral\ni\tneutral\nj\tneutral\n";
  auto cfg = base_config();
  cfg.input_path = dir.write("gold.tsv", gold_tsv).string();
  cfg.predictions_path = dir.write("pred.tsv", pred_tsv).string();
  cfg.output_path = dir.file("report.txt").string();
  Sink io;
  REQUIRE(cmd_eval(cfg, io.out, io.err) == kExitOk);

  // by hand: P_pos=2/3, R_pos=1/2, F_pos=4/7; P_neg=2/3, R_neg=2/3, F_neg=2/3;
  // P_neu=3/4, R_neu=1, F_neu=6/7
  ConfusionMatrix cm;
  cm.add(Label::Positive, Label::Positive, 2);
  cm.add(Label::Positive, Label::Negative, 1);
  cm.add(Label::Positive, Label::Neutral, 1);
  cm.add(Label::Negative, Label::Negative, 2);
  cm.add(Label::Negative, Label::Positive, 1);
  cm.add(Label::Neutral, Label::Neutral, 3);
  const auto expected = evaluate(cm);
  CHECK_THAT(expected.per_class[0].f1, Catch::Matchers::WithinAbs(4.0 / 7.0, 1e-12));
  CHECK_THAT(expected.per_class[2].f1, Catch::Matchers::WithinAbs(6.0 / 7.0, 1e-12));
  CHECK_THAT(fixtures::read_file(cfg.output_path),
             Catch::Matchers::ContainsSubstring(detail::fmt17(expected.macro_f)));
  CHECK_THAT(io.out.str(),
             Catch::Matchers::ContainsSubstring(detail::fmt6(expected.macro_f)));
}

TEST_CASE("cv command is byte-deterministic for a fixed seed", "[cli]") {
  TempDir dir("cv");
  const auto corpus = fixtures::separable_corpus(20, 3);
  auto cfg = base_config();
  cfg.input_path = dir.write("train.tsv", fixtures::corpus_to_tsv(corpus)).string();
  cfg.folds = 5;
  cfg.seed = 123;
  Sink a, b;
  REQUIRE(cmd_cv(cfg, a.out, a.err) == kExitOk);
  REQUIRE(cmd_cv(cfg, b.out, b.err) == kExitOk);
  CHECK(a.out.str() == b.out.str());
  CHECK_THAT(a.out.str(), Catch::Matchers::ContainsSubstring("fold 5"));
}

TEST_CASE("cv with k=2 on a 4-tweet balanced corpus reports 2 tweets per fold", "[cli]") {
  TempDir dir("cv2");
  const auto corpus = fixtures::shaped_corpus(2, 2, 0);
  auto cfg = base_config();
  cfg.min_count = 1;
  cfg.input_path = dir.write("train.tsv", fixtures::corpus_to_tsv(corpus)).string();
  cfg.folds = 2;
  Sink io;
  REQUIRE(cmd_cv(cfg, io.out, io.err) == kExitOk);
  CHECK_THAT(io.out.str(), Catch::Matchers::ContainsSubstring("n=2"));
}

TEST_CASE("tune selects bigrams when only word order separates classes", "[cli]") {
  TempDir dir("tune");
  const auto corpus = fixtures::bigram_order_corpus(30);
  auto cfg = base_config();
  cfg.input_path = dir.write("train.tsv", fixtures::corpus_to_tsv(corpus)).string();
  Sink io;
  REQUIRE(cmd_tune(cfg, io.out, io.err) == kExitOk);
  CHECK_THAT(io.out.str(), Catch::Matchers::ContainsSubstring("selected: ngram_max=2"));
}

TEST_CASE("stats describes labeled and unlabeled corpora", "[cli]") {
  TempDir dir("stats");
  auto cfg = base_config();
  cfg.input_path =
      dir.write("mix.tsv", "t1\tpositive\tok/EN darun/BN\nu1\tbura/HI\n").string();
  Sink io;
  REQUIRE(cmd_stats(cfg, io.out, io.err) == kExitOk);
  const auto text = io.out.str();
  CHECK_THAT(text, Catch::Matchers::ContainsSubstring("tweets    2 (labeled 1)"));
  CHECK_THAT(text, Catch::Matchers::ContainsSubstring("BN 1"));
  CHECK_THAT(text, Catch::Matchers::ContainsSubstring("HI 1"));
}

TEST_CASE("train/predict/eval through files reproduces in-process resubstitution",
          "[cli]") {
  TempDir dir("pipeline");
  const auto corpus = fixtures::separable_corpus(15, 44);
  const auto tsv = fixtures::corpus_to_tsv(corpus);
  const auto en_pos = dir.write("en_pos.txt", "markerpos\n");
  const auto en_neg = dir.write("en_neg.txt", "markerneg\n");

  auto cfg = base_config();
  cfg.min_count = 1;
  cfg.lexicon_en_positive = en_pos.string();
  cfg.lexicon_en_negative = en_neg.string();
  cfg.input_path = dir.write("train.tsv", tsv).string();
  cfg.model_path = dir.file("model.nb").string();
  Sink t;
  REQUIRE(cmd_train(cfg, t.out, t.err) == kExitOk);
  cfg.output_path = dir.file("pred.tsv").string();
  Sink p;
  REQUIRE(cmd_predict(cfg, p.out, p.err) == kExitOk);
  cfg.predictions_path = cfg.output_path;
  cfg.output_path = dir.file("report.kv").string();
  Sink e;
  REQUIRE(cmd_eval(cfg, e.out, e.err) == kExitOk);

  // in-process resubstitution with the same lexicons and params
  const auto lex_en = SentimentLexicon::load_files(en_pos, en_neg, Lang::EN);
  const auto lex_bn = SentimentLexicon::empty(Lang::BN);
  const auto model = train_pipeline(corpus, lex_en, lex_bn, model_params(cfg));
  const auto labels = predict_corpus(model, corpus, lex_en, lex_bn);
  std::vector<Label> gold;
  for (const auto& tweet : corpus) gold.push_back(*tweet.label);
  const auto report = evaluate(confusion(gold, labels));

  CHECK(fixtures::read_file(dir.file("report.kv")) == format_report_kv(report));
}

#ifdef MIXSENT_CLI_PATH
TEST_CASE("the installed binary maps errors to documented exit codes", "[cli]") {
  TempDir dir("bin");
  const auto corpus = fixtures::shaped_corpus(3, 3, 3);
  const auto input = dir.write("train.tsv", fixtures::corpus_to_tsv(corpus));
  const auto model = dir.file("model.nb");
  const std::string bin = MIXSENT_CLI_PATH;
  auto run = [&](const std::string& args) {
    const auto status =
        std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
  };
  CHECK(run("train --input " + input.string() + " --model " + model.string() +
            " --min-count 1") == 0);
  CHECK(run("train --input /nonexistent.tsv --model " + model.string()) == 2);
  CHECK(run("train --model only.nb") == 1);       // missing required --input
  CHECK(run("bogus-subcommand") == 1);
  CHECK(run("--help") == 0);
  CHECK(run("stats --input " + input.string()) == 0);
}

TEST_CASE("--pair presets adjust the cutoff unless overridden", "[cli]") {
  TempDir dir("pair");
  // "once" appears exactly once; HI-EN preset (min-count 1) keeps it, the
  // BN-EN preset (min-count 2) drops it.
  const std::string tsv =
      "t1\tpositive\tgood/EN good/EN\n"
      "t2\tpositive\tgood/EN good/EN\n"
      "t3\tnegative\tbad/EN bad/EN\n"
      "t4\tnegative\tbad/EN bad/EN\n"
      "t5\tneutral\tmeh/EN once/EN\n"
      "t6\tneutral\tmeh/EN meh/EN\n";
  const auto input = dir.write("train.tsv", tsv);
  const std::string bin = MIXSENT_CLI_PATH;
  auto vocab_size = [&](const std::string& extra) {
    const auto model = dir.file("m.nb").string();
    const auto cmd = bin + " train --input " + input.string() + " --model " + model +
                     " --ngram-max 1 " + extra + " >/dev/null 2>&1";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    return load_model_file(model).vocab.size();
  };
  const auto hi = vocab_size("--pair HI-EN");
  const auto bn = vocab_size("--pair BN-EN");
  const auto overridden = vocab_size("--pair BN-EN --min-count 1");
  CHECK(hi == 5);          // good, bad, meh, once, plus the <UNK> tag token
  CHECK(bn == 4);          // cutoff 2 drops "once"
  CHECK(overridden == 5);  // explicit flag beats the preset
}
#endif
