// cli_test.cpp
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <cstdlib>
#include <map>
#include <sstream>

#include "corpusqc/commands.hpp"
#include "corpusqc/errors.hpp"
#include "corpusqc/manifest.hpp"
#include "test_util.hpp"

using namespace corpusqc;

namespace {

std::string analyze_manifest_text(const std::string& out_dir,
                                  bool with_background = false,
                                  bool with_bad_corpus = false) {
  std::string text;
  text += "[protocol]\norder = 3\ncutoff = 2\ntest_size = 40\nseed = 7\n";
  text += "[lexicon]\n";
  text += "abstract = " + testutil::data_file("abstract_terms.txt") + "\n";
  text += "function = " + testutil::data_file("function_words.txt") + "\n";
  if (with_background)
    text += "[background]\npath = " + testutil::fixture("mini_weather.txt") +
            "\n";
  text += "[output]\ndirectory = " + out_dir + "\n";
  text += "[corpus]\nname = animals\npath = " +
          testutil::fixture("mini_animals.txt") +
          "\ntier = raw\nimages = 4000\nstyle = real\n";
  text += "[corpus]\nname = kitchen\npath = " +
          testutil::fixture("mini_kitchen.txt") + "\ntier = raw\n";
  text += "[corpus]\nname = tagged\npath = " +
          testutil::fixture("mini_tagged.txt") + "\ntier = tagged\n";
  text += "[corpus]\nname = trees\npath = " +
          testutil::fixture("mini_parsed.txt") +
          "\ntier = parsed\nbounding_boxes = true\n";
  if (with_bad_corpus)
    text += "[corpus]\nname = broken\npath = /nonexistent/corpus.txt\n"
            "tier = raw\n";
  return text;
}

Manifest manifest_from(const std::string& text) {
  std::istringstream in(text);
  return parse_manifest(in, "test");
}

}  // namespace

TEST_CASE("manifest parsing, defaults and validation") {
  Manifest manifest = manifest_from(
      "[corpus]\nname = a\npath = a.txt\n"
      "[corpus]\nname = b\npath = b.txt\ntier = parsed\n"
      "lowercase = false\nstrip_punct = true\n");
  REQUIRE(manifest.corpora.size() == 2);
  CHECK(manifest.protocol.order == 5);
  CHECK(manifest.protocol.cutoff == 3);
  CHECK(manifest.protocol.test_size == 20000);
  CHECK(manifest.protocol.seed == 42);
  CHECK(manifest.corpora[1].tier == Tier::kParsed);
  CHECK_FALSE(manifest.corpora[1].lowercase);
  CHECK(manifest.corpora[1].strip_punct);
  CHECK(manifest.out_dir == "out");
  CHECK(manifest.formats.size() == 3);

  CHECK_THROWS_AS(manifest_from("[corpus]\nname = a\npath = x\n"
                                "[corpus]\nname = a\npath = y\n"),
                  ManifestError);
  CHECK_THROWS_AS(manifest_from("[corpus]\nname = bad name\npath = x\n"),
                  ManifestError);
  CHECK_THROWS_AS(manifest_from("[corpus]\nname = a\npath = x\nzzz = 1\n"),
                  ManifestError);
  CHECK_THROWS_AS(manifest_from("[weird]\nkey = 1\n"), ManifestError);
  CHECK_THROWS_AS(manifest_from("key = 1\n"), ManifestError);
  CHECK_THROWS_AS(manifest_from("[corpus]\nname = a\npath = x\n"
                                "[protocol]\norder = 12\n"),
                  ManifestError);
  CHECK_THROWS_AS(load_manifest("/nonexistent/manifest.cfg"),
                  ManifestError);
}

TEST_CASE("canonical manifest echo is a fixed point") {
  Manifest manifest = manifest_from(analyze_manifest_text("/tmp/unused"));
  std::string echo = canonical_manifest(manifest);
  Manifest reparsed = manifest_from(echo);
  CHECK(canonical_manifest(reparsed) == echo);
  CHECK(config_fingerprint(manifest, manifest.corpora[0]) ==
        config_fingerprint(reparsed, reparsed.corpora[0]));
  CHECK(config_fingerprint(manifest, manifest.corpora[0]) !=
        config_fingerprint(manifest, manifest.corpora[1]));
}

TEST_CASE("analyze writes the full bundle with tier gating") {
  testutil::TempDir tmp("analyze");
  Manifest manifest =
      manifest_from(analyze_manifest_text(tmp.path("out"), true));
  CHECK(run_analyze(manifest) == 0);

  std::string md = testutil::read_file(tmp.path("out") + "/report.md");
  std::string csv = testutil::read_file(tmp.path("out") + "/metrics.csv");
  std::string json = testutil::read_file(tmp.path("out") + "/report.json");
  std::string pos =
      testutil::read_file(tmp.path("out") + "/pos_distribution.tsv");
  std::string echo =
      testutil::read_file(tmp.path("out") + "/config_echo.cfg");
  CHECK(md.find("| animals ") != std::string::npos);
  CHECK(md.find("| trees ") != std::string::npos);
  CHECK(md.find("background corpus 'mini_weather'") != std::string::npos);
  CHECK(csv.find("animals,4,") != std::string::npos);  // images in k
  CHECK(json.find("\"name\": \"kitchen\"") != std::string::npos);
  CHECK(pos.find("tagged\t") != std::string::npos);
  CHECK(pos.find("trees\t") != std::string::npos);
  CHECK(pos.find("animals") == std::string::npos);  // raw tier: no POS
  CHECK(echo.find("seed = 7") != std::string::npos);

  // Raw rows show '-' for complexity; the parsed row has numbers.
  std::istringstream lines(md);
  std::string line;
  bool saw_raw = false, saw_parsed = false;
  while (std::getline(lines, line)) {
    if (line.rfind("| animals ", 0) == 0) {
      CHECK(line.find("| - | - | - | - |") != std::string::npos);
      saw_raw = true;
    }
    if (line.rfind("| trees ", 0) == 0) {
      CHECK(line.find("| - | - | - | - |") == std::string::npos);
      saw_parsed = true;
    }
  }
  CHECK(saw_raw);
  CHECK(saw_parsed);
}

TEST_CASE("analyze reruns are byte-identical") {
  testutil::TempDir tmp("determinism");
  Manifest manifest =
      manifest_from(analyze_manifest_text(tmp.path("out"), true));
  const char* names[] = {"/report.md", "/metrics.csv", "/report.json",
                         "/pos_distribution.tsv", "/config_echo.cfg"};
  REQUIRE(run_analyze(manifest) == 0);
  std::map<std::string, std::string> first;
  for (const char* name : names)
    first[name] = testutil::read_file(tmp.path("out") + name);
  REQUIRE(run_analyze(manifest) == 0);
  for (const char* name : names)
    CHECK(first[name] == testutil::read_file(tmp.path("out") + name));
}

TEST_CASE("analyze continues past a broken corpus with exit 1") {
  testutil::TempDir tmp("partial");
  Manifest manifest =
      manifest_from(analyze_manifest_text(tmp.path("out"), false, true));
  CHECK(run_analyze(manifest) == 1);
  std::string md = testutil::read_file(tmp.path("out") + "/report.md");
  CHECK(md.find("| animals ") != std::string::npos);  // good rows intact
  CHECK(md.find("## Errors") != std::string::npos);
  CHECK(md.find("broken:") != std::string::npos);
}

TEST_CASE("dump_scores writes per-sentence complexity TSVs") {
  testutil::TempDir tmp("dump");
  std::string text = analyze_manifest_text(tmp.path("out"));
  text += "[options]\ndump_scores = true\n";
  REQUIRE(run_analyze(manifest_from(text)) == 0);
  std::string dump = testutil::read_file(tmp.path("out") + "/trees.scores.tsv");
  CHECK(std::count(dump.begin(), dump.end(), '\n') == 5);
  CHECK(dump.rfind("0\t", 0) == 0);
  // Raw corpora have no trees to score.
  CHECK_FALSE(std::filesystem::exists(tmp.path("out") + "/animals.scores.tsv"));
}

TEST_CASE("analyze without corpora or lexicon is a manifest error") {
  Manifest no_corpora = manifest_from("[protocol]\nseed = 1\n");
  CHECK(run_analyze(no_corpora) == 2);
  Manifest no_lexicon = manifest_from(
      "[corpus]\nname = a\npath = " + testutil::fixture("mini_animals.txt") +
      "\n");
  CHECK(run_analyze(no_lexicon) == 2);
}

TEST_CASE("ppl-matrix command") {
  testutil::TempDir tmp("matrix");
  std::string text =
      "[protocol]\norder = 3\ncutoff = 2\ntest_size = 40\nseed = 7\n"
      "[output]\ndirectory = " +
      tmp.path("out") +
      "\n"
      "[corpus]\nname = animals\npath = " +
      testutil::fixture("mini_animals.txt") +
      "\n[corpus]\nname = kitchen\npath = " +
      testutil::fixture("mini_kitchen.txt") +
      "\n[corpus]\nname = weather\npath = " +
      testutil::fixture("mini_weather.txt") + "\n";
  Manifest manifest = manifest_from(text);
  CHECK(run_ppl_matrix(manifest) == 0);
  std::string csv = testutil::read_file(tmp.path("out") + "/ppl_matrix.csv");
  CHECK(csv.rfind("# order=3 cutoff=2 test_size=40 seed=7\n", 0) == 0);
  CHECK(csv.find(",animals,kitchen,weather\n") != std::string::npos);
  CHECK(csv.find("#vocab,") != std::string::npos);

  // Rerun byte-identical.
  Manifest again = manifest_from(text);
  REQUIRE(run_ppl_matrix(again) == 0);
  CHECK(testutil::read_file(tmp.path("out") + "/ppl_matrix.csv") == csv);

  Manifest single = manifest_from(
      "[corpus]\nname = only\npath = " +
      testutil::fixture("mini_animals.txt") + "\n");
  CHECK(run_ppl_matrix(single) == 2);
}

TEST_CASE("pos-dist command prints the figure TSV") {
  std::string text = "[corpus]\nname = tagged\npath = " +
                     testutil::fixture("mini_tagged.txt") +
                     "\ntier = tagged\n";
  std::ostringstream out;
  CHECK(run_pos_dist(manifest_from(text), out) == 0);
  CHECK(out.str().rfind("corpus\tN\tV\tJ\tO\n", 0) == 0);
  CHECK(out.str().find("tagged\t") != std::string::npos);

  std::string raw_only = "[corpus]\nname = raw\npath = " +
                         testutil::fixture("mini_animals.txt") + "\n";
  std::ostringstream sink;
  CHECK(run_pos_dist(manifest_from(raw_only), sink) == 1);
}

TEST_CASE("bias command prints one JSON line") {
  std::ostringstream out;
  CHECK(run_bias(testutil::fixture("bias_annotations.jsonl"),
                 testutil::fixture("bias_captions.jsonl"), {}, out) == 0);
  CHECK(out.str() ==
        "{\"mean_objects_per_image\":3.0,\"mean_mentioned_per_caption\":1.5,"
        "\"caption_count\":2,\"image_count\":2}\n");

  testutil::TempDir tmp("biascmd");
  std::string empty = tmp.write("empty.jsonl", "");
  std::ostringstream sink;
  CHECK(run_bias(testutil::fixture("bias_annotations.jsonl"), empty, {},
                 sink) == 1);
}

TEST_CASE("stem flag changes the dogs/dog fixture") {
  testutil::TempDir tmp("stem");
  std::string ann = tmp.write(
      "a.jsonl",
      "{\"image_id\": \"i\", \"objects\": [{\"object_id\": \"o\", "
      "\"labels\": [\"dog\"]}]}\n");
  std::string cap = tmp.write(
      "c.jsonl", "{\"image_id\": \"i\", \"captions\": [\"two dogs play\"]}\n");
  std::ostringstream plain, stemmed;
  BiasOptions with_stem;
  with_stem.stem_plural_s = true;
  REQUIRE(run_bias(ann, cap, {}, plain) == 0);
  REQUIRE(run_bias(ann, cap, with_stem, stemmed) == 0);
  CHECK(plain.str().find("\"mean_mentioned_per_caption\":0.0") !=
        std::string::npos);
  CHECK(stemmed.str().find("\"mean_mentioned_per_caption\":1.0") !=
        std::string::npos);
}

TEST_CASE("train-lm and ppl round-trip through a model file") {
  testutil::TempDir tmp("trainlm");
  std::string model_path = tmp.path("animals.lm");
  CHECK(run_train_lm(testutil::fixture("mini_animals.txt"), 3, 2,
                     {true, false}, model_path) == 0);
  std::ostringstream out;
  CHECK(run_ppl(model_path, testutil::fixture("mini_kitchen.txt"),
                {true, false}, out) == 0);
  std::string line = out.str();
  CHECK(line.rfind("mini_kitchen\t", 0) == 0);
  CHECK(std::count(line.begin(), line.end(), '\t') == 3);

  CHECK(run_train_lm("/nonexistent.txt", 3, 2, {true, false}, model_path) == 1);
  CHECK(run_ppl(tmp.path("missing.lm"), testutil::fixture("mini_animals.txt"),
                {true, false}, out) == 1);
}

TEST_CASE("binary exit codes and plumbing") {
  std::string bin = CORPUSQC_BIN;
  CHECK(std::system((bin + " --help > /dev/null 2>&1").c_str()) == 0);
  // No subcommand is a usage error.
  CHECK(WEXITSTATUS(std::system((bin + " > /dev/null 2>&1").c_str())) == 2);
  CHECK(WEXITSTATUS(std::system(
            (bin + " analyze > /dev/null 2>&1").c_str())) == 2);
  CHECK(WEXITSTATUS(std::system(
            (bin + " analyze --manifest /nonexistent.cfg > /dev/null 2>&1")
                .c_str())) == 2);
  std::string bias_cmd =
      bin + " bias --annotations " +
      testutil::fixture("bias_annotations.jsonl") + " --captions " +
      testutil::fixture("bias_captions.jsonl") + " > /dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(bias_cmd.c_str())) == 0);

  // A full analyze through the binary, global flags after the subcommand.
  testutil::TempDir tmp("binrun");
  tmp.write("run.cfg", analyze_manifest_text(tmp.path("out")));
  std::string analyze_cmd = bin + " analyze --manifest " +
                            tmp.path("run.cfg") + " --jobs 2 > /dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(analyze_cmd.c_str())) == 0);
  CHECK(testutil::read_file(tmp.path("out") + "/report.md")
            .find("| animals ") != std::string::npos);
  // --seed override lands in the config echo.
  std::string seed_cmd = bin + " analyze --manifest " + tmp.path("run.cfg") +
                         " --seed 99 > /dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(seed_cmd.c_str())) == 0);
  CHECK(testutil::read_file(tmp.path("out") + "/config_echo.cfg")
            .find("seed = 99") != std::string::npos);
  // --out-dir and --format redirect and narrow the outputs.
  std::string fmt_cmd = bin + " analyze --manifest " + tmp.path("run.cfg") +
                        " --out-dir " + tmp.path("alt") +
                        " --format csv > /dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(fmt_cmd.c_str())) == 0);
  CHECK(std::filesystem::exists(tmp.path("alt") + "/metrics.csv"));
  CHECK_FALSE(std::filesystem::exists(tmp.path("alt") + "/report.md"));
}
