// commands.cpp
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

#include "corpusqc/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "corpusqc/errors.hpp"
#include "corpusqc/parallel.hpp"
#include "corpusqc/syntax.hpp"

namespace corpusqc {

namespace {

Corpus load_by_tier(const CorpusSpec& spec) {
  LoadOptions options{spec.lowercase, spec.strip_punct};
  Corpus corpus;
  switch (spec.tier) {
    case Tier::kRaw:
      corpus = load_raw(spec.path, options);
      break;
    case Tier::kTagged:
      corpus = load_tagged(spec.path, options);
      break;
    case Tier::kParsed:
      corpus = load_parsed(spec.path, options);
      break;
  }
  corpus.meta.name = spec.name;
  corpus.meta.image_count = spec.image_count;
  corpus.meta.visual_style = spec.visual_style;
  corpus.meta.has_bounding_boxes = spec.has_bounding_boxes;
  return corpus;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("write error on " + path);
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir);
}

TagMapper mapper_for(const Manifest& manifest) {
  return manifest.tagmap.empty() ? TagMapper()
                                 : TagMapper::from_pairs(manifest.tagmap);
}

}  // namespace

int run_analyze(const Manifest& manifest, const RunOptions& options) {
  if (manifest.corpora.empty()) {
    std::cerr << "error: manifest has no [corpus] sections\n";
    return 2;
  }
  if (!manifest.abstract_lexicon) {
    std::cerr << "error: analyze needs a [lexicon] section\n";
    return 2;
  }

  Lexicon lexicon;
  TagMapper mapper;
  std::optional<NgramModel> background;
  std::size_t background_tokens = 0;
  try {
    lexicon = load_lexicon(*manifest.abstract_lexicon,
                           *manifest.function_lexicon);
    mapper = mapper_for(manifest);
    if (manifest.background_path) {
      Corpus bg = load_raw(*manifest.background_path, {});
      bg.meta.name = manifest.background_name;
      for (const Sentence& sentence : bg.sentences)
        background_tokens += sentence.tokens.size();
      background = NgramModel::train(bg, manifest.protocol.order,
                                     manifest.protocol.cutoff);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  struct RowResult {
    std::optional<MetricsRow> row;
    std::string error;
    std::string score_dump;
  };
  auto results = parallel_map(
      manifest.corpora.size(), options.jobs, [&](std::size_t i) {
        const CorpusSpec& spec = manifest.corpora[i];
        RowResult result;
        try {
          Corpus corpus = load_by_tier(spec);
          MetricsRow row;
          row.meta = corpus.meta;
          row.tier = corpus.tier;
          row.lex = lex_stats(corpus);
          row.absconc = abs_conc(corpus, lexicon);
          if (corpus.tier == Tier::kParsed)
            row.complexity = complexity_stats(corpus);
          if (corpus.tier != Tier::kRaw)
            row.pos = pos_distribution(corpus, mapper);
          if (background) row.background_ppl = perplexity(*background, corpus);
          row.config_fingerprint = config_fingerprint(manifest, spec);
          if (manifest.dump_scores && corpus.tier == Tier::kParsed) {
            std::ostringstream dump;
            write_score_dump(corpus, dump);
            result.score_dump = dump.str();
          }
          result.row = std::move(row);
        } catch (const std::exception& e) {
          result.error = e.what();
        }
        return result;
      });

  ReportBundle bundle;
  bundle.background_name = background ? manifest.background_name : "";
  bundle.background_tokens = background_tokens;
  bundle.config_echo = canonical_manifest(manifest);
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].row) {
      bundle.rows.push_back(std::move(*results[i].row));
    } else {
      bundle.errors.emplace_back(manifest.corpora[i].name,
                                 results[i].error);
      std::cerr << "error: corpus '" << manifest.corpora[i].name
                << "': " << results[i].error << '\n';
    }
  }

  try {
    ensure_out_dir(manifest.out_dir);
    for (ReportFormat format : manifest.formats) {
      const char* filename = format == ReportFormat::kMarkdown
                                 ? "report.md"
                                 : format == ReportFormat::kCsv
                                       ? "metrics.csv"
                                       : "report.json";
      write_file(manifest.out_dir + "/" + filename, render(bundle, format));
    }
    bool any_pos = false;
    for (const MetricsRow& row : bundle.rows) any_pos |= row.pos.has_value();
    if (any_pos)
      write_file(manifest.out_dir + "/pos_distribution.tsv",
                 plot_data(bundle));
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (!results[i].score_dump.empty())
        write_file(manifest.out_dir + "/" + manifest.corpora[i].name +
                       ".scores.tsv",
                   results[i].score_dump);
    }
    write_file(manifest.out_dir + "/config_echo.cfg", bundle.config_echo);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  return bundle.errors.empty() ? 0 : 1;
}

int run_ppl_matrix(const Manifest& manifest, const RunOptions& options) {
  if (manifest.corpora.size() < 2) {
    std::cerr << "error: ppl-matrix needs at least 2 corpora, got "
              << manifest.corpora.size() << '\n';
    return 2;
  }
  try {
    std::vector<Corpus> corpora;
    corpora.reserve(manifest.corpora.size());
    for (const CorpusSpec& spec : manifest.corpora)
      corpora.push_back(load_by_tier(spec));
    CrossPplResult result =
        cross_ppl(corpora, manifest.protocol, options.jobs);
    ensure_out_dir(manifest.out_dir);
    write_file(manifest.out_dir + "/ppl_matrix.csv", matrix_to_csv(result));
    write_file(manifest.out_dir + "/config_echo.cfg",
               canonical_manifest(manifest));
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int run_pos_dist(const Manifest& manifest, std::ostream& out,
                 const RunOptions& options) {
  if (manifest.corpora.empty()) {
    std::cerr << "error: manifest has no [corpus] sections\n";
    return 2;
  }
  try {
    TagMapper mapper = mapper_for(manifest);
    ReportBundle bundle;
    auto rows = parallel_map(
        manifest.corpora.size(), options.jobs,
        [&](std::size_t i) -> std::optional<MetricsRow> {
          const CorpusSpec& spec = manifest.corpora[i];
          if (spec.tier == Tier::kRaw) return std::nullopt;
          Corpus corpus = load_by_tier(spec);
          MetricsRow row;
          row.meta = corpus.meta;
          row.tier = corpus.tier;
          row.lex = lex_stats(corpus);
          row.pos = pos_distribution(corpus, mapper);
          return row;
        });
    for (auto& row : rows)
      if (row) bundle.rows.push_back(std::move(*row));
    if (bundle.rows.empty())
      throw NoPosData("no tagged or parsed corpora in manifest");
    out << plot_data(bundle);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int run_bias(const std::string& annotations_path,
             const std::string& captions_path, const BiasOptions& options,
             std::ostream& out) {
  try {
    auto annotations = load_annotations(annotations_path);
    auto captions = load_captions(captions_path);
    BiasStats stats = reporting_bias(annotations, captions, options);
    nlohmann::ordered_json doc{
        {"mean_objects_per_image", stats.mean_objects_per_image},
        {"mean_mentioned_per_caption", stats.mean_mentioned_per_caption},
        {"caption_count", stats.caption_count},
        {"image_count", stats.image_count}};
    out << doc.dump() << '\n';
    std::cerr << "reporting bias: " << stats.mean_objects_per_image
              << " objects available per image, "
              << stats.mean_mentioned_per_caption
              << " mentioned per caption (" << stats.image_count
              << " images, " << stats.caption_count << " captions)\n";
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int run_train_lm(const std::string& corpus_path, int order, int cutoff,
                 const LoadOptions& load_options,
                 const std::string& model_path) {
  try {
    Corpus corpus = load_raw(corpus_path, load_options);
    NgramModel model = NgramModel::train(corpus, order, cutoff);
    model.save_file(model_path);
    std::cerr << "trained " << model.smoothing() << " " << order
              << "-gram model, vocabulary " << model.vocab_size()
              << " types\n";
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int run_ppl(const std::string& model_path, const std::string& corpus_path,
            const LoadOptions& load_options, std::ostream& out) {
  try {
    NgramModel model = NgramModel::load_file(model_path);
    Corpus corpus = load_raw(corpus_path, load_options);
    PplResult result = perplexity(model, corpus);
    out << ppl_report_line(corpus.meta.name, result) << '\n';
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace corpusqc
