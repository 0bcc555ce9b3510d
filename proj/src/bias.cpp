// bias.cpp
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

#include "corpusqc/bias.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

#include "corpusqc/errors.hpp"
#include "corpusqc/text.hpp"

namespace corpusqc {

namespace {

using nlohmann::json;

json parse_json_line(const std::string& line, const std::string& path,
                     std::size_t line_no) {
  json value = json::parse(line, nullptr, false);
  if (value.is_discarded() || !value.is_object())
    throw FormatError(path + ": line " + std::to_string(line_no) +
                      ": expected a JSON object");
  return value;
}

std::string stem_token(std::string token) {
  if (token.size() >= 2 && token.back() == 's') token.pop_back();
  return token;
}

std::vector<std::string> match_tokens(std::string_view text,
                                      const BiasOptions& options) {
  std::vector<std::string> tokens;
  for (std::string_view item : split_whitespace(text)) {
    std::string tok = ascii_lower(item);
    if (options.stem_plural_s) tok = stem_token(std::move(tok));
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

bool contains_subsequence(const std::vector<std::string>& haystack,
                          const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    if (std::equal(needle.begin(), needle.end(), haystack.begin() + i))
      return true;
  }
  return false;
}

}  // namespace

std::vector<DenseAnnotation> load_annotations(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<DenseAnnotation> annotations;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json value = parse_json_line(line, path, line_no);
    try {
    DenseAnnotation annotation;
    if (!value.contains("image_id") || !value["image_id"].is_string() ||
        value["image_id"].get<std::string>().empty())
      throw FormatError(path + ": line " + std::to_string(line_no) +
                        ": missing image_id");
    annotation.image_id = value["image_id"].get<std::string>();
    for (const json& obj : value.value("objects", json::array())) {
      if (!obj.value("is_top_level", true)) continue;
      ObjectAnnotation object;
      object.object_id = obj.value("object_id", std::string());
      for (const json& label : obj.value("labels", json::array())) {
        if (!label.is_string())
          throw FormatError(path + ": line " + std::to_string(line_no) +
                            ": labels must be strings");
        object.labels.push_back(ascii_lower(label.get<std::string>()));
      }
      if (object.labels.empty())
        throw FormatError(path + ": line " + std::to_string(line_no) +
                          ": object with no labels");
      annotation.objects.push_back(std::move(object));
    }
    annotations.push_back(std::move(annotation));
    } catch (const json::exception& e) {
      throw FormatError(path + ": line " + std::to_string(line_no) + ": " +
                        e.what());
    }
  }
  if (in.bad()) throw IoError("read error on " + path);
  return annotations;
}

std::map<std::string, std::vector<Sentence>> load_captions(
    const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::map<std::string, std::vector<Sentence>> captions;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json value = parse_json_line(line, path, line_no);
    try {
      if (!value.contains("image_id") || !value["image_id"].is_string())
        throw FormatError(path + ": line " + std::to_string(line_no) +
                          ": missing image_id");
      const std::string image_id = value["image_id"].get<std::string>();
      for (const json& cap : value.value("captions", json::array())) {
        if (!cap.is_string())
          throw FormatError(path + ": line " + std::to_string(line_no) +
                            ": captions must be strings");
        const std::string text = cap.get<std::string>();
        Sentence sentence;
        for (std::string_view tok : split_whitespace(text))
          sentence.tokens.push_back({std::string(tok), std::nullopt});
        if (!sentence.tokens.empty())
          captions[image_id].push_back(std::move(sentence));
      }
    } catch (const json::exception& e) {
      throw FormatError(path + ": line " + std::to_string(line_no) + ": " +
                        e.what());
    }
  }
  if (in.bad()) throw IoError("read error on " + path);
  return captions;
}

bool mention_match(const Sentence& caption, const ObjectAnnotation& object,
                   const BiasOptions& options) {
  std::vector<std::string> caption_tokens;
  caption_tokens.reserve(caption.tokens.size());
  for (const Token& token : caption.tokens) {
    std::string tok = ascii_lower(token.surface);
    if (options.stem_plural_s) tok = stem_token(std::move(tok));
    caption_tokens.push_back(std::move(tok));
  }
  for (const std::string& label : object.labels) {
    if (contains_subsequence(caption_tokens, match_tokens(label, options)))
      return true;
  }
  return false;
}

BiasStats reporting_bias(
    const std::vector<DenseAnnotation>& annotations,
    const std::map<std::string, std::vector<Sentence>>& captions,
    const BiasOptions& options) {
  if (annotations.empty()) throw EmptyInput("no annotations");

  std::map<std::string, const DenseAnnotation*> by_image;
  for (const DenseAnnotation& annotation : annotations)
    by_image[annotation.image_id] = &annotation;

  std::set<std::string> missing;
  for (const auto& [image_id, sentences] : captions) {
    (void)sentences;
    if (!by_image.count(image_id)) missing.insert(image_id);
  }
  if (!missing.empty()) {
    std::string ids;
    for (const std::string& id : missing) {
      if (!ids.empty()) ids += ", ";
      ids += id;
    }
    throw MissingAnnotation("captions without annotations: " + ids);
  }

  BiasStats stats;
  stats.image_count = annotations.size();
  std::size_t total_objects = 0;
  for (const DenseAnnotation& annotation : annotations)
    total_objects += annotation.objects.size();
  stats.mean_objects_per_image = static_cast<double>(total_objects) /
                                 static_cast<double>(stats.image_count);

  std::size_t mentioned_total = 0;
  for (const auto& [image_id, sentences] : captions) {
    const DenseAnnotation& annotation = *by_image.at(image_id);
    for (const Sentence& caption : sentences) {
      ++stats.caption_count;
      for (const ObjectAnnotation& object : annotation.objects) {
        if (mention_match(caption, object, options)) ++mentioned_total;
      }
    }
  }
  if (stats.caption_count == 0) throw EmptyInput("no captions");
  stats.mean_mentioned_per_caption =
      static_cast<double>(mentioned_total) /
      static_cast<double>(stats.caption_count);
  return stats;
}

}  // namespace corpusqc
