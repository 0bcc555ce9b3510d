// corpusqc_main.cpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Command-line front end. Subcommands: analyze, ppl-matrix, pos-dist,
// bias, train-lm, ppl. Exit codes: 0 success, 1 data error, 2 usage or
// manifest error.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "corpusqc/commands.hpp"
#include "corpusqc/errors.hpp"
#include "corpusqc/version.hpp"

namespace {

struct GlobalFlags {
  std::string manifest_path;
  std::string out_dir;
  unsigned jobs = 0;
  std::optional<std::uint64_t> seed;
  std::string formats;
};

// Loads the manifest and applies command-line overrides (flags win).
corpusqc::Manifest manifest_with_overrides(const GlobalFlags& flags) {
  corpusqc::Manifest manifest = corpusqc::load_manifest(flags.manifest_path);
  if (!flags.out_dir.empty()) manifest.out_dir = flags.out_dir;
  if (flags.seed) manifest.protocol.seed = *flags.seed;
  if (!flags.formats.empty()) {
    std::istringstream stream("[output]\nformats = " + flags.formats + "\n");
    corpusqc::Manifest parsed =
        corpusqc::parse_manifest(stream, "--format");
    manifest.formats = parsed.formats;
  }
  return manifest;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corpus language-quality metrics"};
  app.set_version_flag("--version", corpusqc::kVersion);
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand name

  GlobalFlags flags;
  app.add_option("--manifest", flags.manifest_path, "run manifest file");
  app.add_option("--out-dir", flags.out_dir,
                 "output directory (overrides manifest)");
  app.add_option("--jobs", flags.jobs, "worker threads (0 = all cores)");
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value,
                                  "split seed (overrides manifest)");
  app.add_option("--format", flags.formats,
                 "comma-separated report formats (overrides manifest)");

  auto* analyze = app.add_subcommand(
      "analyze", "compute all applicable metrics per corpus");
  auto* matrix = app.add_subcommand(
      "ppl-matrix", "pairwise cross-corpus perplexity matrix");
  auto* posdist =
      app.add_subcommand("pos-dist", "simplified POS distribution TSV");

  auto* bias = app.add_subcommand(
      "bias", "reporting bias from dense annotations and captions");
  std::string annotations_path, captions_path, stem;
  bias->add_option("--annotations", annotations_path,
                   "dense annotation JSON-lines")
      ->required();
  bias->add_option("--captions", captions_path, "caption JSON-lines")
      ->required();
  bias->add_option("--stem", stem,
                   "matching normalization; only 'plural-s' is known");

  auto* train = app.add_subcommand("train-lm", "train an n-gram model");
  std::string train_path, model_path, test_path;
  int order = 5;
  int cutoff = 3;
  bool no_lowercase = false;
  bool strip_punct = false;
  train->add_option("--train", train_path, "training corpus (raw tier)")
      ->required();
  train->add_option("--out", model_path, "model file to write")->required();
  train->add_option("--order", order, "n-gram order")
      ->check(CLI::Range(1, 9));
  train->add_option("--cutoff", cutoff, "vocabulary frequency cutoff")
      ->check(CLI::Range(1, 1000000));
  train->add_flag("--no-lowercase", no_lowercase,
                  "keep original casing for LM statistics");
  train->add_flag("--strip-punct", strip_punct,
                  "drop punctuation tokens before counting");

  auto* ppl = app.add_subcommand("ppl", "perplexity of a corpus under a model");
  ppl->add_option("--model", model_path, "model file")->required();
  ppl->add_option("--test", test_path, "test corpus (raw tier)")->required();
  ppl->add_flag("--no-lowercase", no_lowercase,
                "keep original casing for LM statistics");
  ppl->add_flag("--strip-punct", strip_punct,
                "drop punctuation tokens before scoring");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (seed_opt->count() > 0) flags.seed = seed_value;

  corpusqc::RunOptions options;
  options.jobs = flags.jobs;

  try {
    if (analyze->parsed() || matrix->parsed() || posdist->parsed()) {
      if (flags.manifest_path.empty()) {
        std::cerr << "error: --manifest is required\n";
        return 2;
      }
      corpusqc::Manifest manifest = manifest_with_overrides(flags);
      if (analyze->parsed()) return corpusqc::run_analyze(manifest, options);
      if (matrix->parsed())
        return corpusqc::run_ppl_matrix(manifest, options);
      return corpusqc::run_pos_dist(manifest, std::cout, options);
    }
    if (bias->parsed()) {
      if (!stem.empty() && stem != "plural-s") {
        std::cerr << "error: unknown --stem mode '" << stem << "'\n";
        return 2;
      }
      corpusqc::BiasOptions bias_options;
      bias_options.stem_plural_s = stem == "plural-s";
      return corpusqc::run_bias(annotations_path, captions_path,
                                bias_options, std::cout);
    }
    if (train->parsed())
      return corpusqc::run_train_lm(train_path, order, cutoff,
                                    {!no_lowercase, strip_punct},
                                    model_path);
    if (ppl->parsed())
      return corpusqc::run_ppl(model_path, test_path,
                               {!no_lowercase, strip_punct}, std::cout);
  } catch (const corpusqc::ManifestError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const corpusqc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
