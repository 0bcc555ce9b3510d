// manifest.hpp
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
// Declarative run manifest: an INI-style file with repeated [corpus]
// sections plus [lexicon], [background], [protocol], [output], [options]
// and [tagmap]. Command-line flags override manifest values.

#ifndef CORPUSQC_MANIFEST_HPP_
#define CORPUSQC_MANIFEST_HPP_

#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "corpusqc/compare.hpp"
#include "corpusqc/corpus.hpp"
#include "corpusqc/report.hpp"

namespace corpusqc {

struct CorpusSpec {
  std::string name;
  std::string path;
  Tier tier = Tier::kRaw;
  bool lowercase = true;
  bool strip_punct = false;
  std::optional<std::int64_t> image_count;
  std::optional<VisualStyle> visual_style;
  std::optional<bool> has_bounding_boxes;
};

struct Manifest {
  std::vector<CorpusSpec> corpora;
  std::optional<std::string> abstract_lexicon;
  std::optional<std::string> function_lexicon;
  std::optional<std::string> background_path;
  std::string background_name;  // defaults to the path stem
  Protocol protocol;            // defaults (5, 3, 20000, 42)
  std::string out_dir = "out";
  std::vector<ReportFormat> formats = {ReportFormat::kMarkdown,
                                       ReportFormat::kCsv,
                                       ReportFormat::kJson};
  std::vector<std::pair<std::string, char>> tagmap;  // empty = default
  bool dump_scores = false;
};

// Throws ManifestError on structural problems (unknown keys, duplicate
// names, bad values). Does not touch the filesystem beyond the manifest.
Manifest parse_manifest(std::istream& in, const std::string& origin);
Manifest load_manifest(const std::string& path);

// Canonical echo of the effective configuration: fixed section order,
// defaults materialized. Reparsing it reproduces the manifest, which
// makes reruns bit-identical.
std::string canonical_manifest(const Manifest& manifest);

// Per-corpus configuration hash rendered into report rows.
std::string config_fingerprint(const Manifest& manifest,
                               const CorpusSpec& spec);

}  // namespace corpusqc

#endif  // CORPUSQC_MANIFEST_HPP_
