// corpus.hpp
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
// Corpora at three annotation tiers (raw / tagged / parsed), loaded from
// one-sentence-per-line files. A loaded Corpus is an immutable snapshot;
// every metric is a pure function of it.

#ifndef CORPUSQC_CORPUS_HPP_
#define CORPUSQC_CORPUS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corpusqc/tree.hpp"

namespace corpusqc {

enum class Tier { kRaw, kTagged, kParsed };

enum class VisualStyle { kAbstract, kReal, kMixed };

struct Token {
  std::string surface;             // nonempty, no whitespace
  std::optional<std::string> pos;  // Penn tag, set on tagged/parsed tiers
};

struct Sentence {
  std::vector<Token> tokens;      // nonempty
  std::optional<ParseTree> tree;  // leaves match tokens, in order
};

struct CorpusMeta {
  std::string name;  // unique per run, [A-Za-z0-9_.-]+
  std::optional<std::int64_t> image_count;
  std::optional<VisualStyle> visual_style;
  std::optional<bool> has_bounding_boxes;
};

struct Corpus {
  CorpusMeta meta;
  std::vector<Sentence> sentences;
  Tier tier = Tier::kRaw;
  // Fold surfaces to lowercase for vocabulary and LM statistics. Raw-tier
  // loading already folds stored surfaces; tagged/parsed tiers preserve
  // case and fold on the fly.
  bool lowercase_stats = true;
  bool punct_stripped = false;
};

// Surface as used for vocabulary / LM statistics (case-folded when the
// corpus says so).
std::string stat_surface(const Corpus& corpus, const Token& token);

struct LoadOptions {
  bool lowercase = true;
  bool strip_punct = false;
};

// One sentence per pre-tokenized line, whitespace-delimited tokens.
Corpus load_raw(const std::string& path, const LoadOptions& options = {});

// Items `surface_TAG`; the tag is everything after the last underscore.
Corpus load_tagged(const std::string& path, const LoadOptions& options = {});

// One bracketed tree per line; tokens and tags derive from the leaves.
Corpus load_parsed(const std::string& path, const LoadOptions& options = {});

// Parsed-tier corpus back to bracketed text, one tree per line.
std::string to_bracketed(const Corpus& corpus);

struct SplitSpec {
  std::size_t test_size = 20000;
  std::uint64_t seed = 42;
};

struct SplitResult {
  Corpus test;
  Corpus train;
  // The corpus had <= test_size sentences: everything went to test and
  // train is empty.
  bool undersized = false;
};

// Deterministic sampling of exactly test_size sentences (Fisher-Yates
// permutation seeded by (seed, corpus name)); both halves keep original
// sentence order. Same corpus + spec always yields the same membership.
SplitResult split(const Corpus& corpus, const SplitSpec& spec);

bool valid_corpus_name(const std::string& name);

}  // namespace corpusqc

#endif  // CORPUSQC_CORPUS_HPP_
