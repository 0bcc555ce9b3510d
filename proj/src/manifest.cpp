// manifest.cpp
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

#include "corpusqc/manifest.hpp"

#include <charconv>
#include <fstream>
#include <set>

#include "corpusqc/errors.hpp"
#include "corpusqc/random.hpp"
#include "corpusqc/text.hpp"

namespace corpusqc {

namespace {

[[noreturn]] void fail(const std::string& origin, std::size_t line_no,
                       const std::string& what) {
  throw ManifestError(origin + ": line " + std::to_string(line_no) + ": " +
                      what);
}

bool parse_bool(std::string_view value, const std::string& origin,
                std::size_t line_no) {
  std::string v = ascii_lower(value);
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  fail(origin, line_no, "expected a boolean, got '" + std::string(value) +
                            "'");
}

std::int64_t parse_int(std::string_view value, const std::string& origin,
                       std::size_t line_no) {
  std::int64_t out;
  auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size())
    fail(origin, line_no,
         "expected an integer, got '" + std::string(value) + "'");
  return out;
}

std::uint64_t parse_uint(std::string_view value, const std::string& origin,
                         std::size_t line_no) {
  std::uint64_t out;
  auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size())
    fail(origin, line_no,
         "expected an unsigned integer, got '" + std::string(value) + "'");
  return out;
}

Tier parse_tier(std::string_view value, const std::string& origin,
                std::size_t line_no) {
  std::string v = ascii_lower(value);
  if (v == "raw") return Tier::kRaw;
  if (v == "tagged") return Tier::kTagged;
  if (v == "parsed") return Tier::kParsed;
  fail(origin, line_no,
       "tier must be raw, tagged or parsed, got '" + std::string(value) +
           "'");
}

VisualStyle parse_style(std::string_view value, const std::string& origin,
                        std::size_t line_no) {
  std::string v = ascii_lower(value);
  if (v == "abstract") return VisualStyle::kAbstract;
  if (v == "real") return VisualStyle::kReal;
  if (v == "mixed") return VisualStyle::kMixed;
  fail(origin, line_no,
       "style must be abstract, real or mixed, got '" + std::string(value) +
           "'");
}

std::vector<ReportFormat> parse_formats(std::string_view value,
                                        const std::string& origin,
                                        std::size_t line_no) {
  std::vector<ReportFormat> formats;
  std::string_view rest = value;
  while (!rest.empty()) {
    std::size_t comma = rest.find(',');
    std::string item = ascii_lower(trim(rest.substr(0, comma)));
    if (item == "markdown" || item == "md")
      formats.push_back(ReportFormat::kMarkdown);
    else if (item == "csv")
      formats.push_back(ReportFormat::kCsv);
    else if (item == "json")
      formats.push_back(ReportFormat::kJson);
    else
      fail(origin, line_no, "unknown format '" + item + "'");
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (formats.empty()) fail(origin, line_no, "empty formats list");
  return formats;
}

std::string path_stem(const std::string& path) {
  std::size_t slash = path.find_last_of("/\\");
  std::string base =
      slash == std::string::npos ? path : path.substr(slash + 1);
  std::size_t dot = base.find_last_of('.');
  if (dot != std::string::npos && dot > 0) base = base.substr(0, dot);
  return base;
}

const char* tier_word(Tier tier) {
  switch (tier) {
    case Tier::kRaw:
      return "raw";
    case Tier::kTagged:
      return "tagged";
    default:
      return "parsed";
  }
}

const char* style_word(VisualStyle style) {
  switch (style) {
    case VisualStyle::kAbstract:
      return "abstract";
    case VisualStyle::kReal:
      return "real";
    default:
      return "mixed";
  }
}

const char* format_word(ReportFormat format) {
  switch (format) {
    case ReportFormat::kMarkdown:
      return "markdown";
    case ReportFormat::kCsv:
      return "csv";
    default:
      return "json";
  }
}

void validate(Manifest& manifest, const std::string& origin) {
  std::set<std::string> names;
  for (const CorpusSpec& spec : manifest.corpora) {
    if (spec.name.empty())
      throw ManifestError(origin + ": [corpus] without a name");
    if (!valid_corpus_name(spec.name))
      throw ManifestError(origin + ": corpus name '" + spec.name +
                          "' must match [A-Za-z0-9_.-]+");
    if (spec.path.empty())
      throw ManifestError(origin + ": corpus '" + spec.name +
                          "' without a path");
    if (!names.insert(spec.name).second)
      throw ManifestError(origin + ": duplicate corpus name '" + spec.name +
                          "'");
  }
  if (manifest.abstract_lexicon.has_value() !=
      manifest.function_lexicon.has_value())
    throw ManifestError(origin +
                        ": [lexicon] needs both abstract and function");
  if (manifest.protocol.order < 1 || manifest.protocol.order > 9)
    throw ManifestError(origin + ": protocol order must be in [1,9]");
  if (manifest.protocol.cutoff < 1)
    throw ManifestError(origin + ": protocol cutoff must be >= 1");
  if (manifest.protocol.test_size < 1)
    throw ManifestError(origin + ": protocol test_size must be >= 1");
  if (manifest.background_path && manifest.background_name.empty())
    manifest.background_name = path_stem(*manifest.background_path);
}

}  // namespace

Manifest parse_manifest(std::istream& in, const std::string& origin) {
  Manifest manifest;
  std::string section;
  CorpusSpec* corpus = nullptr;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view t = trim(line);
    if (t.empty() || t.front() == '#' || t.front() == ';') continue;

    if (t.front() == '[') {
      if (t.back() != ']') fail(origin, line_no, "unterminated section");
      section = ascii_lower(trim(t.substr(1, t.size() - 2)));
      if (section == "corpus") {
        manifest.corpora.emplace_back();
        corpus = &manifest.corpora.back();
      } else if (section != "lexicon" && section != "background" &&
                 section != "protocol" && section != "output" &&
                 section != "options" && section != "tagmap") {
        fail(origin, line_no, "unknown section [" + section + "]");
      }
      continue;
    }

    std::size_t eq = t.find('=');
    if (eq == std::string_view::npos)
      fail(origin, line_no, "expected key = value");
    std::string key = ascii_lower(trim(t.substr(0, eq)));
    std::string value{trim(t.substr(eq + 1))};
    if (key.empty()) fail(origin, line_no, "empty key");

    if (section == "corpus") {
      if (key == "name")
        corpus->name = value;
      else if (key == "path")
        corpus->path = value;
      else if (key == "tier")
        corpus->tier = parse_tier(value, origin, line_no);
      else if (key == "lowercase")
        corpus->lowercase = parse_bool(value, origin, line_no);
      else if (key == "strip_punct")
        corpus->strip_punct = parse_bool(value, origin, line_no);
      else if (key == "images")
        corpus->image_count = parse_int(value, origin, line_no);
      else if (key == "style")
        corpus->visual_style = parse_style(value, origin, line_no);
      else if (key == "bounding_boxes")
        corpus->has_bounding_boxes = parse_bool(value, origin, line_no);
      else
        fail(origin, line_no, "unknown [corpus] key '" + key + "'");
    } else if (section == "lexicon") {
      if (key == "abstract")
        manifest.abstract_lexicon = value;
      else if (key == "function")
        manifest.function_lexicon = value;
      else
        fail(origin, line_no, "unknown [lexicon] key '" + key + "'");
    } else if (section == "background") {
      if (key == "path")
        manifest.background_path = value;
      else if (key == "name")
        manifest.background_name = value;
      else
        fail(origin, line_no, "unknown [background] key '" + key + "'");
    } else if (section == "protocol") {
      if (key == "order")
        manifest.protocol.order =
            static_cast<int>(parse_int(value, origin, line_no));
      else if (key == "cutoff")
        manifest.protocol.cutoff =
            static_cast<int>(parse_int(value, origin, line_no));
      else if (key == "test_size")
        manifest.protocol.test_size =
            static_cast<std::size_t>(parse_uint(value, origin, line_no));
      else if (key == "seed")
        manifest.protocol.seed = parse_uint(value, origin, line_no);
      else
        fail(origin, line_no, "unknown [protocol] key '" + key + "'");
    } else if (section == "output") {
      if (key == "directory")
        manifest.out_dir = value;
      else if (key == "formats")
        manifest.formats = parse_formats(value, origin, line_no);
      else
        fail(origin, line_no, "unknown [output] key '" + key + "'");
    } else if (section == "options") {
      if (key == "dump_scores")
        manifest.dump_scores = parse_bool(value, origin, line_no);
      else
        fail(origin, line_no, "unknown [options] key '" + key + "'");
    } else if (section == "tagmap") {
      if (value.size() != 1)
        fail(origin, line_no, "tag class must be a single letter");
      // Tag prefixes are case-sensitive; re-read the original casing.
      std::string prefix{trim(t.substr(0, eq))};
      manifest.tagmap.emplace_back(prefix, value[0]);
    } else {
      fail(origin, line_no, "key outside of any section");
    }
  }

  validate(manifest, origin);
  return manifest;
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ManifestError("cannot open manifest " + path);
  return parse_manifest(in, path);
}

std::string canonical_manifest(const Manifest& manifest) {
  std::string out;
  out += "[protocol]\n";
  out += "order = " + std::to_string(manifest.protocol.order) + "\n";
  out += "cutoff = " + std::to_string(manifest.protocol.cutoff) + "\n";
  out += "test_size = " + std::to_string(manifest.protocol.test_size) + "\n";
  out += "seed = " + std::to_string(manifest.protocol.seed) + "\n";

  if (manifest.abstract_lexicon) {
    out += "\n[lexicon]\n";
    out += "abstract = " + *manifest.abstract_lexicon + "\n";
    out += "function = " + *manifest.function_lexicon + "\n";
  }
  if (manifest.background_path) {
    out += "\n[background]\n";
    out += "path = " + *manifest.background_path + "\n";
    out += "name = " + manifest.background_name + "\n";
  }

  out += "\n[output]\n";
  out += "directory = " + manifest.out_dir + "\n";
  out += "formats = ";
  for (std::size_t i = 0; i < manifest.formats.size(); ++i) {
    if (i) out += ',';
    out += format_word(manifest.formats[i]);
  }
  out += "\n";

  out += "\n[options]\n";
  out += std::string("dump_scores = ") +
         (manifest.dump_scores ? "true" : "false") + "\n";

  if (!manifest.tagmap.empty()) {
    out += "\n[tagmap]\n";
    for (const auto& [prefix, cls] : manifest.tagmap)
      out += prefix + " = " + std::string(1, cls) + "\n";
  }

  for (const CorpusSpec& spec : manifest.corpora) {
    out += "\n[corpus]\n";
    out += "name = " + spec.name + "\n";
    out += "path = " + spec.path + "\n";
    out += std::string("tier = ") + tier_word(spec.tier) + "\n";
    out += std::string("lowercase = ") +
           (spec.lowercase ? "true" : "false") + "\n";
    out += std::string("strip_punct = ") +
           (spec.strip_punct ? "true" : "false") + "\n";
    if (spec.image_count)
      out += "images = " + std::to_string(*spec.image_count) + "\n";
    if (spec.visual_style)
      out += std::string("style = ") + style_word(*spec.visual_style) + "\n";
    if (spec.has_bounding_boxes)
      out += std::string("bounding_boxes = ") +
             (*spec.has_bounding_boxes ? "true" : "false") + "\n";
  }
  return out;
}

std::string config_fingerprint(const Manifest& manifest,
                               const CorpusSpec& spec) {
  std::string canonical;
  canonical += "name=" + spec.name;
  canonical += ";tier=" + std::string(tier_word(spec.tier));
  canonical += ";lowercase=" + std::string(spec.lowercase ? "1" : "0");
  canonical += ";strip_punct=" + std::string(spec.strip_punct ? "1" : "0");
  canonical += ";order=" + std::to_string(manifest.protocol.order);
  canonical += ";cutoff=" + std::to_string(manifest.protocol.cutoff);
  canonical += ";test_size=" + std::to_string(manifest.protocol.test_size);
  canonical += ";seed=" + std::to_string(manifest.protocol.seed);
  if (manifest.abstract_lexicon)
    canonical += ";lexicon=" + *manifest.abstract_lexicon + "," +
                 *manifest.function_lexicon;
  for (const auto& [prefix, cls] : manifest.tagmap)
    canonical += ";tag:" + prefix + "=" + std::string(1, cls);

  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical)));
  return std::string(buf);
}

}  // namespace corpusqc
