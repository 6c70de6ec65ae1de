#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mixsent/mixsent.hpp"

namespace {

struct CliExtras {
  std::string pair;
  std::vector<std::string> lexicon_en;  // positive path, negative path
  std::vector<std::string> lexicon_bn;
};

void add_lexicon_options(CLI::App* cmd, mixsent::RunConfig& cfg, CliExtras& extras) {
  cmd->add_option("--lexicon-en", extras.lexicon_en,
                  "English lexicon: positive and negative word files (one word per line)")
      ->expected(2);
  cmd->add_option("--lexicon-bn", extras.lexicon_bn,
                  "Bengali lexicon (romanized): positive and negative word files")
      ->expected(2);
  cmd->add_flag_callback(
      "--no-case-fold", [&cfg] { cfg.case_fold = false; },
      "Match lexicon entries case-sensitively");
}

void add_model_options(CLI::App* cmd, mixsent::RunConfig& cfg, CliExtras& extras) {
  cmd->add_option("--ngram-max", cfg.ngram_max, "Highest n-gram order (default 2)")
      ->check(CLI::Range(1, 8));
  cmd->add_option("--min-count", cfg.min_count,
                  "Frequency cutoff: keep n-grams occurring at least this often "
                  "in the training corpus (default 2)")
      ->check(CLI::Range(1, 1000000));
  cmd->add_flag_callback(
      "--no-priors", [&cfg] { cfg.use_priors = false; },
      "Score with word likelihoods only, ignoring class priors");
  cmd->add_option("--pair", extras.pair,
                  "Language-pair preset: BN-EN (min-count 2) or HI-EN (min-count 1)")
      ->check(CLI::IsMember({"BN-EN", "HI-EN"}));
}

// --pair presets fill in whatever the user did not set explicitly on the
// subcommand that actually ran.
void apply_extras(CLI::App* parsed, const CliExtras& extras, mixsent::RunConfig& cfg) {
  if (extras.lexicon_en.size() == 2) {
    cfg.lexicon_en_positive = extras.lexicon_en[0];
    cfg.lexicon_en_negative = extras.lexicon_en[1];
  }
  if (extras.lexicon_bn.size() == 2) {
    cfg.lexicon_bn_positive = extras.lexicon_bn[0];
    cfg.lexicon_bn_negative = extras.lexicon_bn[1];
  }
  if (extras.pair.empty()) return;
  if (parsed->get_option_no_throw("--min-count") && parsed->count("--min-count") == 0)
    cfg.min_count = extras.pair == "BN-EN" ? 2 : 1;
  if (parsed->get_option_no_throw("--ngram-max") && parsed->count("--ngram-max") == 0)
    cfg.ngram_max = 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sentiment polarity classification for language-tagged code-mixed "
               "social media text (Bengali-English / Hindi-English)"};
  app.require_subcommand(1);

  mixsent::RunConfig cfg;
  CliExtras extras;

  auto* train = app.add_subcommand("train", "Train a model on a labeled corpus");
  train->add_option("--input", cfg.input_path, "Labeled corpus (TSV)")->required();
  train->add_option("--model", cfg.model_path, "Model file to write")->required();
  add_model_options(train, cfg, extras);
  add_lexicon_options(train, cfg, extras);

  auto* predict = app.add_subcommand("predict", "Label a corpus with a trained model");
  predict->add_option("--model", cfg.model_path, "Model file")->required();
  predict->add_option("--input", cfg.input_path, "Corpus to label (TSV)")->required();
  predict->add_option("--output", cfg.output_path, "Predictions file to write")->required();
  add_lexicon_options(predict, cfg, extras);

  auto* eval = app.add_subcommand("eval", "Score predictions against gold labels");
  eval->add_option("--input", cfg.input_path, "Gold labeled corpus (TSV)")->required();
  eval->add_option("--predictions", cfg.predictions_path, "Predictions file")->required();
  eval->add_option("--output", cfg.output_path, "Optional machine-readable report file");

  auto* cv = app.add_subcommand("cv", "Stratified k-fold cross validation");
  cv->add_option("--input", cfg.input_path, "Labeled corpus (TSV)")->required();
  cv->add_option("--folds", cfg.folds, "Number of folds (default 10)")
      ->check(CLI::Range(2, 1000000));
  cv->add_option("--seed", cfg.seed, "Fold-shuffle seed (default 1)");
  cv->add_option("--output", cfg.output_path, "Optional machine-readable report file");
  add_model_options(cv, cfg, extras);
  add_lexicon_options(cv, cfg, extras);

  auto* tune = app.add_subcommand("tune", "Grid-search ngram order and cutoff by CV macro-F");
  tune->add_option("--input", cfg.input_path, "Labeled corpus (TSV)")->required();
  tune->add_option("--folds", cfg.folds, "Number of folds (default 10)")
      ->check(CLI::Range(2, 1000000));
  tune->add_option("--seed", cfg.seed, "Fold-shuffle seed (default 1)");
  tune->add_flag_callback(
      "--no-priors", [&cfg] { cfg.use_priors = false; },
      "Score with word likelihoods only, ignoring class priors");
  add_lexicon_options(tune, cfg, extras);

  auto* stats = app.add_subcommand("stats", "Describe a corpus file");
  stats->add_option("--input", cfg.input_path, "Corpus (TSV, labeled or not)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return mixsent::kExitUsage;
  }

  if (*train) {
    apply_extras(train, extras, cfg);
    return mixsent::cmd_train(cfg, std::cout, std::cerr);
  }
  if (*predict) {
    apply_extras(predict, extras, cfg);
    return mixsent::cmd_predict(cfg, std::cout, std::cerr);
  }
  if (*eval) return mixsent::cmd_eval(cfg, std::cout, std::cerr);
  if (*cv) {
    apply_extras(cv, extras, cfg);
    return mixsent::cmd_cv(cfg, std::cout, std::cerr);
  }
  if (*tune) {
    apply_extras(tune, extras, cfg);
    return mixsent::cmd_tune(cfg, std::cout, std::cerr);
  }
  if (*stats) return mixsent::cmd_stats(cfg, std::cout, std::cerr);
  return mixsent::kExitUsage;
}
