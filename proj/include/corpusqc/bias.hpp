// bias.hpp
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
// Reporting bias over densely annotated images: how many objects are
// available per image versus how many a caption actually mentions.
// Matching is plain contiguous token-subsequence lookup against the
// objects' own label paraphrases; no external synonym resource. Note
// the rule happily matches "dog" inside "hot dog stand" -- a known
// false-positive mode of substring matching.

#ifndef CORPUSQC_BIAS_HPP_
#define CORPUSQC_BIAS_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "corpusqc/corpus.hpp"

namespace corpusqc {

struct ObjectAnnotation {
  std::string object_id;
  std::vector<std::string> labels;  // lowercased token sequences
};

// One image; only top-level objects are kept by the loader.
struct DenseAnnotation {
  std::string image_id;
  std::vector<ObjectAnnotation> objects;
};

struct BiasStats {
  double mean_objects_per_image = 0.0;
  double mean_mentioned_per_caption = 0.0;
  std::size_t caption_count = 0;
  std::size_t image_count = 0;
};

struct BiasOptions {
  // Strip one trailing 's' from caption and label tokens before
  // matching; catches plural/singular mismatches and nothing subtler.
  bool stem_plural_s = false;
};

// JSON-lines, one image per line:
// {"image_id": ..., "objects": [{"object_id": ..., "is_top_level": true,
//  "labels": [...]}]}
// Objects with is_top_level == false are dropped; a missing flag counts
// as top-level.
std::vector<DenseAnnotation> load_annotations(const std::string& path);

// JSON-lines {"image_id": ..., "captions": ["...", ...]}; captions are
// pre-tokenized, space-separated.
std::map<std::string, std::vector<Sentence>> load_captions(
    const std::string& path);

// True iff any label, as a token sequence, occurs contiguously in the
// lowercased caption.
bool mention_match(const Sentence& caption, const ObjectAnnotation& object,
                   const BiasOptions& options = {});

// Every caption's image must have an annotation record; an object counts
// at most once per caption no matter how many labels match.
BiasStats reporting_bias(
    const std::vector<DenseAnnotation>& annotations,
    const std::map<std::string, std::vector<Sentence>>& captions,
    const BiasOptions& options = {});

}  // namespace corpusqc

#endif  // CORPUSQC_BIAS_HPP_
