// report.hpp
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
// Assembles per-corpus metric rows, the cross-perplexity matrix and the
// bias estimate into summary-table / matrix / POS-distribution shaped
// documents (Markdown, CSV, JSON) plus a plot-ready TSV.
//
// Rounding rules are pinned for byte-stable output: vocabulary in
// thousands with 1 decimal, Frazier/Yngve with 2, sentence length with
// 2, %Abs with 2 plus a percent sign, perplexity to the nearest
// integer, matrix cells with 1 decimal. Missing metrics render as `-`.
// Rendering is deterministic; no timestamps are embedded.

#ifndef CORPUSQC_REPORT_HPP_
#define CORPUSQC_REPORT_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "corpusqc/compare.hpp"
#include "corpusqc/corpus.hpp"
#include "corpusqc/bias.hpp"
#include "corpusqc/lexical.hpp"
#include "corpusqc/lm.hpp"
#include "corpusqc/syntax.hpp"

namespace corpusqc {

struct MetricsRow {
  CorpusMeta meta;
  Tier tier = Tier::kRaw;
  LexStats lex;
  AbsConcStats absconc;
  std::optional<ComplexityStats> complexity;  // parsed tier only
  std::optional<PosDistribution> pos;         // tagged or parsed tier
  std::optional<PplResult> background_ppl;
  std::string config_fingerprint;  // per-corpus effective config hash
};

struct ReportBundle {
  std::vector<MetricsRow> rows;
  std::optional<CrossPplResult> matrix;
  std::optional<BiasStats> bias;
  std::string background_name;  // labels the Ppl column
  std::size_t background_tokens = 0;
  std::string config_echo;  // canonical manifest, sufficient to rerun
  // Corpora that failed (name, cause); rendered so partial output is
  // visibly partial.
  std::vector<std::pair<std::string, std::string>> errors;
};

enum class ReportFormat { kMarkdown, kCsv, kJson };

std::string render(const ReportBundle& bundle, ReportFormat format);

// `corpus<TAB>N<TAB>V<TAB>J<TAB>O`, proportions rounded to 4 decimals
// with largest-remainder correction so each row sums to exactly 1.
std::string plot_data(const ReportBundle& bundle);

// Rounds a point on the simplex to `decimals` places so the rounded
// values still sum to 1. Ties go to the earlier column.
std::vector<double> largest_remainder_round(const std::vector<double>& values,
                                            int decimals);

}  // namespace corpusqc

#endif  // CORPUSQC_REPORT_HPP_
