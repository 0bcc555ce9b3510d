// report.cpp
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

#include "corpusqc/report.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "corpusqc/errors.hpp"
#include "corpusqc/text.hpp"
#include "corpusqc/version.hpp"

namespace corpusqc {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* kDash = "-";

std::string thousands(double value, int decimals) {
  return fixed_double(value / 1000.0, decimals);
}

std::string fmt_visual_style(const std::optional<VisualStyle>& style) {
  if (!style) return kDash;
  switch (*style) {
    case VisualStyle::kAbstract:
      return "A";
    case VisualStyle::kReal:
      return "R";
    default:
      return "A/R";
  }
}

std::string fmt_bb(const std::optional<bool>& bb) {
  if (!bb) return kDash;
  return *bb ? "Y" : "N";
}

std::string tier_name(Tier tier) {
  switch (tier) {
    case Tier::kRaw:
      return "raw";
    case Tier::kTagged:
      return "tagged";
    default:
      return "parsed";
  }
}

void check_bundle(const ReportBundle& bundle) {
  if (bundle.rows.empty() && !bundle.matrix && !bundle.bias)
    throw EmptyBundle("nothing to report");
}

// Shared cell values for the summary table (markdown and CSV carry the
// same rounded strings).
std::vector<std::string> row_cells(const MetricsRow& row) {
  std::vector<std::string> cells;
  cells.push_back(row.meta.name);
  cells.push_back(row.meta.image_count
                      ? thousands(static_cast<double>(*row.meta.image_count), 0)
                      : kDash);
  cells.push_back(thousands(static_cast<double>(row.lex.sentence_count), 0));
  if (row.complexity) {
    cells.push_back(fixed_double(row.complexity->mean_frazier, 2));
    cells.push_back(fixed_double(row.complexity->mean_yngve, 2));
    cells.push_back(fixed_double(row.complexity->frazier_sum_mean, 2));
    cells.push_back(fixed_double(row.complexity->yngve_sum_mean, 2));
  } else {
    cells.insert(cells.end(), 4, kDash);
  }
  cells.push_back(thousands(static_cast<double>(row.lex.vocab_size), 1));
  cells.push_back(fixed_double(row.lex.mean_sentence_length, 2));
  cells.push_back(std::to_string(row.absconc.n_concrete));
  cells.push_back(std::to_string(row.absconc.n_abstract));
  cells.push_back(fixed_double(row.absconc.pct_abstract * 100.0, 2) + "%");
  cells.push_back(row.background_ppl
                      ? std::to_string(static_cast<long long>(
                            std::llround(row.background_ppl->perplexity)))
                      : kDash);
  cells.push_back(fmt_visual_style(row.meta.visual_style));
  cells.push_back(fmt_bb(row.meta.has_bounding_boxes));
  cells.push_back(row.config_fingerprint.empty() ? kDash
                                                 : row.config_fingerprint);
  return cells;
}

const std::vector<std::string>& row_headers() {
  static const std::vector<std::string> headers = {
      "Dataset", "Img (k)",     "Txt (k)",     "Frazier",  "Yngve",
      "Frazier (sum)", "Yngve (sum)", "Vocab (k)", "Sent Len.", "#Conc",
      "#Abs",    "%Abs",        "Ppl",         "Abs/Real", "BB",
      "Config"};
  return headers;
}

// POS proportions after largest-remainder rounding, as 4-decimal strings.
std::vector<std::string> pos_cells(const PosDistribution& pos) {
  auto rounded =
      largest_remainder_round({pos.n, pos.v, pos.j, pos.o}, 4);
  std::vector<std::string> cells;
  for (double value : rounded) cells.push_back(fixed_double(value, 4));
  return cells;
}

void append_md_row(std::string& out, const std::vector<std::string>& cells) {
  for (const std::string& cell : cells) {
    out += "| ";
    out += cell;
    out += ' ';
  }
  out += "|\n";
}

void append_md_rule(std::string& out, std::size_t columns) {
  for (std::size_t i = 0; i < columns; ++i) out += "|---";
  out += "|\n";
}

std::string render_markdown(const ReportBundle& bundle) {
  std::string out;
  out += "# Corpus quality report\n\n";
  out += std::string("corpusqc ") + kVersion + "\n";

  if (!bundle.rows.empty()) {
    out += "\n## Summary metrics\n\n";
    append_md_row(out, row_headers());
    append_md_rule(out, row_headers().size());
    for (const MetricsRow& row : bundle.rows)
      append_md_row(out, row_cells(row));
    if (!bundle.background_name.empty()) {
      out += "\nPpl computed against background corpus '" +
             bundle.background_name + "' (" +
             std::to_string(bundle.background_tokens) + " tokens).\n";
    }
  }

  if (bundle.matrix) {
    const PplMatrix& m = bundle.matrix->matrix;
    out += "\n## Cross-corpus perplexity\n\n";
    out += "Protocol: order=" + std::to_string(m.protocol.order) +
           " cutoff=" + std::to_string(m.protocol.cutoff) +
           " test_size=" + std::to_string(m.protocol.test_size) +
           " seed=" + std::to_string(m.protocol.seed) + "\n\n";
    std::vector<std::string> header = {"test \\ train"};
    header.insert(header.end(), m.names.begin(), m.names.end());
    append_md_row(out, header);
    append_md_rule(out, header.size());
    for (std::size_t i = 0; i < m.names.size(); ++i) {
      std::vector<std::string> cells = {m.names[i]};
      for (double cell : m.cells[i])
        cells.push_back(std::isnan(cell) ? "NA" : fixed_double(cell, 1));
      append_md_row(out, cells);
    }
    std::vector<std::string> footnote = {"#vocab"};
    for (const auto& size : bundle.matrix->vocab.sizes)
      footnote.push_back(
          size ? thousands(static_cast<double>(*size), 1) + "k" : "NA");
    append_md_row(out, footnote);
  }

  bool any_pos = std::any_of(bundle.rows.begin(), bundle.rows.end(),
                             [](const MetricsRow& r) { return r.pos.has_value(); });
  if (any_pos) {
    out += "\n## Simplified POS distribution\n\n";
    append_md_row(out, {"Dataset", "N", "V", "J", "O"});
    append_md_rule(out, 5);
    for (const MetricsRow& row : bundle.rows) {
      if (!row.pos) continue;
      std::vector<std::string> cells = {row.meta.name};
      auto pos = pos_cells(*row.pos);
      cells.insert(cells.end(), pos.begin(), pos.end());
      append_md_row(out, cells);
    }
  }

  if (bundle.bias) {
    out += "\n## Reporting bias\n\n";
    out += "Mean top-level objects per image: " +
           fixed_double(bundle.bias->mean_objects_per_image, 2) + "\n";
    out += "Mean objects mentioned per caption: " +
           fixed_double(bundle.bias->mean_mentioned_per_caption, 2) + "\n";
    out += "(" + std::to_string(bundle.bias->image_count) + " images, " +
           std::to_string(bundle.bias->caption_count) + " captions)\n";
  }

  if (!bundle.errors.empty()) {
    out += "\n## Errors\n\n";
    for (const auto& [name, cause] : bundle.errors)
      out += "- " + name + ": " + cause + "\n";
  }
  return out;
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string render_csv(const ReportBundle& bundle) {
  std::string out;
  out += std::string("# corpusqc ") + kVersion + "\n";
  for (const auto& [name, cause] : bundle.errors)
    out += "# error: " + name + ": " + cause + "\n";

  std::vector<std::string> headers = row_headers();
  headers.push_back("Tier");
  for (std::size_t i = 0; i < headers.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(headers[i]);
  }
  out += '\n';
  for (const MetricsRow& row : bundle.rows) {
    std::vector<std::string> cells = row_cells(row);
    cells.push_back(tier_name(row.tier));
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(cells[i]);
    }
    out += '\n';
  }
  return out;
}

ordered_json json_of(const LexStats& lex) {
  return ordered_json{{"vocab_size", lex.vocab_size},
                      {"mean_sentence_length", lex.mean_sentence_length},
                      {"token_count", lex.token_count},
                      {"sentence_count", lex.sentence_count}};
}

ordered_json json_of(const AbsConcStats& stats) {
  return ordered_json{{"n_concrete", stats.n_concrete},
                      {"n_abstract", stats.n_abstract},
                      {"pct_abstract", stats.pct_abstract}};
}

ordered_json json_of(const PplResult& ppl) {
  return ordered_json{{"perplexity", ppl.perplexity},
                      {"token_count", ppl.token_count},
                      {"oov_rate", ppl.oov_rate}};
}

ordered_json json_of(const BiasStats& bias) {
  return ordered_json{
      {"mean_objects_per_image", bias.mean_objects_per_image},
      {"mean_mentioned_per_caption", bias.mean_mentioned_per_caption},
      {"caption_count", bias.caption_count},
      {"image_count", bias.image_count}};
}

std::string render_json(const ReportBundle& bundle) {
  ordered_json doc;
  doc["version"] = kVersion;
  doc["config_echo"] = bundle.config_echo;
  doc["rows"] = ordered_json::array();
  for (const MetricsRow& row : bundle.rows) {
    ordered_json r;
    r["name"] = row.meta.name;
    r["version"] = kVersion;
    r["tier"] = tier_name(row.tier);
    if (row.meta.image_count)
      r["image_count"] = *row.meta.image_count;
    else
      r["image_count"] = nullptr;
    r["visual_style"] = row.meta.visual_style
                            ? ordered_json(fmt_visual_style(row.meta.visual_style))
                            : ordered_json(nullptr);
    r["has_bounding_boxes"] = row.meta.has_bounding_boxes
                                  ? ordered_json(*row.meta.has_bounding_boxes)
                                  : ordered_json(nullptr);
    r["lex"] = json_of(row.lex);
    r["absconc"] = json_of(row.absconc);
    if (row.complexity) {
      r["complexity"] = ordered_json{
          {"mean_yngve", row.complexity->mean_yngve},
          {"mean_frazier", row.complexity->mean_frazier},
          {"yngve_sum_mean", row.complexity->yngve_sum_mean},
          {"frazier_sum_mean", row.complexity->frazier_sum_mean},
          {"sentence_count", row.complexity->sentence_count}};
    } else {
      r["complexity"] = nullptr;
    }
    if (row.pos) {
      r["pos"] = ordered_json{{"N", row.pos->n},
                              {"V", row.pos->v},
                              {"J", row.pos->j},
                              {"O", row.pos->o},
                              {"tagged_token_count",
                               row.pos->tagged_token_count}};
    } else {
      r["pos"] = nullptr;
    }
    r["background_ppl"] = row.background_ppl
                              ? json_of(*row.background_ppl)
                              : ordered_json(nullptr);
    r["config_fingerprint"] = row.config_fingerprint;
    doc["rows"].push_back(std::move(r));
  }

  if (bundle.matrix) {
    const PplMatrix& m = bundle.matrix->matrix;
    ordered_json jm;
    jm["protocol"] = ordered_json{{"order", m.protocol.order},
                                  {"cutoff", m.protocol.cutoff},
                                  {"test_size", m.protocol.test_size},
                                  {"seed", m.protocol.seed}};
    jm["names"] = m.names;
    jm["cells"] = ordered_json::array();
    for (const auto& row : m.cells) {
      ordered_json cells = ordered_json::array();
      for (double cell : row)
        cells.push_back(std::isnan(cell) ? ordered_json(nullptr)
                                         : ordered_json(cell));
      jm["cells"].push_back(std::move(cells));
    }
    jm["vocab"] = ordered_json::array();
    for (const auto& size : bundle.matrix->vocab.sizes)
      jm["vocab"].push_back(size ? ordered_json(*size)
                                 : ordered_json(nullptr));
    doc["matrix"] = std::move(jm);
  } else {
    doc["matrix"] = nullptr;
  }

  doc["bias"] = bundle.bias ? json_of(*bundle.bias) : ordered_json(nullptr);
  if (!bundle.background_name.empty()) {
    doc["background"] = ordered_json{
        {"name", bundle.background_name},
        {"token_count", bundle.background_tokens}};
  } else {
    doc["background"] = nullptr;
  }
  doc["errors"] = ordered_json::array();
  for (const auto& [name, cause] : bundle.errors)
    doc["errors"].push_back(ordered_json{{"name", name}, {"cause", cause}});
  return doc.dump(2) + "\n";
}

}  // namespace

std::vector<double> largest_remainder_round(const std::vector<double>& values,
                                            int decimals) {
  const double scale = std::pow(10.0, decimals);
  std::vector<long long> units(values.size());
  std::vector<double> remainders(values.size());
  long long assigned = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double scaled = values[i] * scale;
    units[i] = static_cast<long long>(std::floor(scaled));
    remainders[i] = scaled - std::floor(scaled);
    assigned += units[i];
  }
  long long missing = static_cast<long long>(std::llround(scale)) - assigned;
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return remainders[a] > remainders[b];
                   });
  for (long long k = 0; k < missing && k < static_cast<long long>(order.size());
       ++k)
    units[order[static_cast<std::size_t>(k)]] += 1;
  std::vector<double> rounded(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    rounded[i] = static_cast<double>(units[i]) / scale;
  return rounded;
}

std::string render(const ReportBundle& bundle, ReportFormat format) {
  check_bundle(bundle);
  switch (format) {
    case ReportFormat::kMarkdown:
      return render_markdown(bundle);
    case ReportFormat::kCsv:
      return render_csv(bundle);
    default:
      return render_json(bundle);
  }
}

std::string plot_data(const ReportBundle& bundle) {
  check_bundle(bundle);
  bool any_pos = std::any_of(bundle.rows.begin(), bundle.rows.end(),
                             [](const MetricsRow& r) { return r.pos.has_value(); });
  if (!any_pos) throw NoPosData("no corpus carries POS annotations");
  std::string out = "corpus\tN\tV\tJ\tO\n";
  for (const MetricsRow& row : bundle.rows) {
    if (!row.pos) continue;
    out += row.meta.name;
    for (const std::string& cell : pos_cells(*row.pos)) {
      out += '\t';
      out += cell;
    }
    out += '\n';
  }
  return out;
}

}  // namespace corpusqc
