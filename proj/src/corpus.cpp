// corpus.cpp
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

#include "corpusqc/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>

#include "corpusqc/errors.hpp"
#include "corpusqc/random.hpp"
#include "corpusqc/text.hpp"

namespace corpusqc {

namespace {

std::string path_stem(const std::string& path) {
  std::size_t slash = path.find_last_of("/\\");
  std::string base =
      slash == std::string::npos ? path : path.substr(slash + 1);
  std::size_t dot = base.find_last_of('.');
  if (dot != std::string::npos && dot > 0) base = base.substr(0, dot);
  return base;
}

// Reads a text file into lines, accepting LF and CRLF. Validates UTF-8
// per line so errors carry a line number.
std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (utf8_invalid_at(line) != std::string::npos)
      throw EncodingError(path + ": invalid UTF-8 on line " +
                          std::to_string(lines.size() + 1));
    lines.push_back(std::move(line));
  }
  if (in.bad()) throw IoError("read error on " + path);
  return lines;
}

Corpus make_corpus(const std::string& path, Tier tier,
                   const LoadOptions& options) {
  Corpus corpus;
  corpus.meta.name = path_stem(path);
  corpus.tier = tier;
  corpus.lowercase_stats = options.lowercase;
  corpus.punct_stripped = options.strip_punct;
  return corpus;
}

}  // namespace

std::string stat_surface(const Corpus& corpus, const Token& token) {
  return corpus.lowercase_stats ? ascii_lower(token.surface) : token.surface;
}

Corpus load_raw(const std::string& path, const LoadOptions& options) {
  Corpus corpus = make_corpus(path, Tier::kRaw, options);
  for (const std::string& line : read_lines(path)) {
    auto items = split_whitespace(line);
    Sentence sentence;
    for (std::string_view item : items) {
      if (options.strip_punct && is_punct_token(item)) continue;
      std::string surface =
          options.lowercase ? ascii_lower(item) : std::string(item);
      sentence.tokens.push_back({std::move(surface), std::nullopt});
    }
    if (!sentence.tokens.empty())
      corpus.sentences.push_back(std::move(sentence));
  }
  if (corpus.sentences.empty()) throw EmptyCorpus(path + ": no sentences");
  return corpus;
}

Corpus load_tagged(const std::string& path, const LoadOptions& options) {
  Corpus corpus = make_corpus(path, Tier::kTagged, options);
  std::size_t line_no = 0;
  for (const std::string& line : read_lines(path)) {
    ++line_no;
    auto items = split_whitespace(line);
    Sentence sentence;
    for (std::string_view item : items) {
      std::size_t cut = item.rfind('_');
      if (cut == std::string_view::npos || cut == 0 ||
          cut + 1 == item.size())
        throw FormatError(path + ": line " + std::to_string(line_no) +
                          ": expected surface_TAG, got '" +
                          std::string(item) + "'");
      std::string_view surface = item.substr(0, cut);
      std::string_view tag = item.substr(cut + 1);
      if (options.strip_punct && is_punct_token(surface)) continue;
      sentence.tokens.push_back(
          {std::string(surface), std::string(tag)});
    }
    if (!sentence.tokens.empty())
      corpus.sentences.push_back(std::move(sentence));
  }
  if (corpus.sentences.empty()) throw EmptyCorpus(path + ": no sentences");
  return corpus;
}

Corpus load_parsed(const std::string& path, const LoadOptions& options) {
  Corpus corpus = make_corpus(path, Tier::kParsed, options);
  std::size_t line_no = 0;
  for (const std::string& line : read_lines(path)) {
    ++line_no;
    if (trim(line).empty()) continue;
    ParseTree tree = parse_tree(line, line_no);
    if (options.strip_punct) {
      auto pruned = strip_punct_leaves(tree);
      if (!pruned) continue;  // sentence was all punctuation
      tree = std::move(*pruned);
    }
    Sentence sentence;
    for (const ParseTree* leaf : leaves(tree))
      sentence.tokens.push_back({*leaf->word, leaf->label});
    sentence.tree = std::move(tree);
    corpus.sentences.push_back(std::move(sentence));
  }
  if (corpus.sentences.empty()) throw EmptyCorpus(path + ": no sentences");
  return corpus;
}

std::string to_bracketed(const Corpus& corpus) {
  if (corpus.tier != Tier::kParsed)
    throw TierError(corpus.meta.name + ": not a parsed corpus");
  std::string out;
  for (const Sentence& sentence : corpus.sentences) {
    out += to_bracketed(*sentence.tree);
    out += '\n';
  }
  return out;
}

SplitResult split(const Corpus& corpus, const SplitSpec& spec) {
  const std::size_t n = corpus.sentences.size();
  if (n == 0) throw EmptyCorpus(corpus.meta.name + ": empty corpus");

  SplitResult result;
  result.test.meta = corpus.meta;
  result.test.tier = corpus.tier;
  result.test.lowercase_stats = corpus.lowercase_stats;
  result.test.punct_stripped = corpus.punct_stripped;
  result.train = result.test;

  if (n <= spec.test_size) {
    result.test.sentences = corpus.sentences;
    result.undersized = true;
    return result;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  SplitMix64 rng(mix_seed(spec.seed, corpus.meta.name));
  fisher_yates(order, rng);

  std::set<std::size_t> test_set(order.begin(),
                                 order.begin() + spec.test_size);
  result.test.sentences.reserve(spec.test_size);
  result.train.sentences.reserve(n - spec.test_size);
  for (std::size_t i = 0; i < n; ++i) {
    if (test_set.count(i))
      result.test.sentences.push_back(corpus.sentences[i]);
    else
      result.train.sentences.push_back(corpus.sentences[i]);
  }
  return result;
}

bool valid_corpus_name(const std::string& name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '.' || c == '-';
  });
}

}  // namespace corpusqc
