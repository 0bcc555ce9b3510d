// lexical.cpp
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

#include "corpusqc/lexical.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>

#include "corpusqc/errors.hpp"
#include "corpusqc/text.hpp"

namespace corpusqc {

namespace {

// Distinct lowercased surface types of a corpus.
std::unordered_set<std::string> lowercased_types(const Corpus& corpus) {
  std::unordered_set<std::string> types;
  for (const Sentence& sentence : corpus.sentences)
    for (const Token& token : sentence.tokens)
      types.insert(ascii_lower(token.surface));
  return types;
}

std::unordered_set<std::string> read_term_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::unordered_set<std::string> terms;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    terms.insert(ascii_lower(t));
  }
  if (in.bad()) throw IoError("read error on " + path);
  return terms;
}

}  // namespace

LexStats lex_stats(const Corpus& corpus) {
  if (corpus.sentences.empty())
    throw EmptyCorpus(corpus.meta.name + ": empty corpus");
  LexStats stats;
  std::unordered_set<std::string> vocab;
  for (const Sentence& sentence : corpus.sentences) {
    stats.token_count += sentence.tokens.size();
    for (const Token& token : sentence.tokens)
      vocab.insert(stat_surface(corpus, token));
  }
  stats.sentence_count = corpus.sentences.size();
  stats.vocab_size = vocab.size();
  stats.mean_sentence_length = static_cast<double>(stats.token_count) /
                               static_cast<double>(stats.sentence_count);
  return stats;
}

AbsConcStats abs_conc(const Corpus& corpus, const Lexicon& lexicon) {
  if (corpus.sentences.empty())
    throw EmptyCorpus(corpus.meta.name + ": empty corpus");
  AbsConcStats stats;
  for (const std::string& type : lowercased_types(corpus)) {
    if (lexicon.function_words.count(type)) continue;
    if (lexicon.abstract_terms.count(type))
      ++stats.n_abstract;
    else
      ++stats.n_concrete;
  }
  std::size_t denom = stats.n_abstract + stats.n_concrete;
  stats.pct_abstract =
      denom == 0 ? 0.0
                 : static_cast<double>(stats.n_abstract) /
                       static_cast<double>(denom);
  return stats;
}

TagMapper::TagMapper()
    : prefixes_{{"NN", 'N'}, {"VB", 'V'}, {"MD", 'V'}, {"JJ", 'J'}} {}

TagMapper TagMapper::from_pairs(
    const std::vector<std::pair<std::string, char>>& prefix_to_class) {
  TagMapper mapper;
  mapper.prefixes_ = prefix_to_class;
  for (auto& [prefix, cls] : mapper.prefixes_) {
    if (prefix.empty()) throw FormatError("empty tag prefix");
    if (cls != 'N' && cls != 'V' && cls != 'J' && cls != 'O')
      throw FormatError(std::string("tag class must be N/V/J/O, got '") +
                        cls + "'");
  }
  std::stable_sort(mapper.prefixes_.begin(), mapper.prefixes_.end(),
                   [](const auto& a, const auto& b) {
                     return a.first.size() > b.first.size();
                   });
  return mapper;
}

TagMapper TagMapper::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::pair<std::string, char>> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto items = split_whitespace(t);
    if (items.size() != 2 || items[1].size() != 1)
      throw FormatError(path + ": line " + std::to_string(line_no) +
                        ": expected `prefix<TAB>class`");
    pairs.emplace_back(std::string(items[0]), items[1][0]);
  }
  if (pairs.empty()) throw FormatError(path + ": empty tag map");
  return from_pairs(pairs);
}

char TagMapper::simplify(std::string_view tag) const {
  for (const auto& [prefix, cls] : prefixes_) {
    if (tag.substr(0, prefix.size()) == prefix) return cls;
  }
  return 'O';
}

double PosDistribution::of(char cls) const {
  switch (cls) {
    case 'N':
      return n;
    case 'V':
      return v;
    case 'J':
      return j;
    default:
      return o;
  }
}

PosDistribution pos_distribution(const Corpus& corpus,
                                 const TagMapper& mapper) {
  if (corpus.tier == Tier::kRaw)
    throw TierError(corpus.meta.name +
                    ": POS distribution needs a tagged or parsed corpus");
  if (corpus.sentences.empty())
    throw EmptyCorpus(corpus.meta.name + ": empty corpus");

  std::size_t counts[4] = {0, 0, 0, 0};  // N V J O
  std::size_t total = 0;
  for (const Sentence& sentence : corpus.sentences) {
    for (const Token& token : sentence.tokens) {
      ++total;
      switch (mapper.simplify(*token.pos)) {
        case 'N':
          ++counts[0];
          break;
        case 'V':
          ++counts[1];
          break;
        case 'J':
          ++counts[2];
          break;
        default:
          ++counts[3];
      }
    }
  }

  PosDistribution dist;
  dist.tagged_token_count = total;
  dist.n = static_cast<double>(counts[0]) / static_cast<double>(total);
  dist.v = static_cast<double>(counts[1]) / static_cast<double>(total);
  dist.j = static_cast<double>(counts[2]) / static_cast<double>(total);
  dist.o = static_cast<double>(counts[3]) / static_cast<double>(total);
  return dist;
}

Lexicon load_lexicon(const std::string& abstract_path,
                     const std::string& function_path) {
  Lexicon lexicon;
  lexicon.abstract_terms = read_term_file(abstract_path);
  lexicon.function_words = read_term_file(function_path);

  std::vector<std::string> conflicts;
  for (const std::string& word : lexicon.function_words) {
    if (lexicon.abstract_terms.erase(word)) conflicts.push_back(word);
  }
  std::sort(conflicts.begin(), conflicts.end());
  for (const std::string& word : conflicts)
    std::cerr << "warning: '" << word
              << "' listed as both abstract and function word; kept as "
                 "function word\n";

  if (lexicon.abstract_terms.empty())
    throw EmptyLexicon(abstract_path + ": no abstract terms");
  return lexicon;
}

}  // namespace corpusqc
