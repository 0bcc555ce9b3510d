// lexical.hpp
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
// Vocabulary size, sentence length, abstract/concrete type counts, and
// the simplified N/V/J/O part-of-speech distribution.

#ifndef CORPUSQC_LEXICAL_HPP_
#define CORPUSQC_LEXICAL_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "corpusqc/corpus.hpp"

namespace corpusqc {

struct LexStats {
  std::size_t vocab_size = 0;  // distinct types under the corpus casing
  double mean_sentence_length = 0.0;
  std::size_t token_count = 0;
  std::size_t sentence_count = 0;
};

// Counts are over distinct lowercased TYPES, not tokens; function words
// are excluded from both sides.
struct AbsConcStats {
  std::size_t n_concrete = 0;
  std::size_t n_abstract = 0;
  double pct_abstract = 0.0;  // n_abstract / (n_abstract + n_concrete)
};

struct Lexicon {
  std::unordered_set<std::string> abstract_terms;
  std::unordered_set<std::string> function_words;
};

// Maps Penn tags to one of N/V/J/O by longest matching prefix.
class TagMapper {
 public:
  TagMapper();  // NN->N, VB->V, MD->V, JJ->J, everything else O

  static TagMapper from_pairs(
      const std::vector<std::pair<std::string, char>>& prefix_to_class);

  // Reads the prefix table (TSV `prefix<TAB>class`, '#' comments).
  static TagMapper load(const std::string& path);

  char simplify(std::string_view tag) const;

  const std::vector<std::pair<std::string, char>>& table() const {
    return prefixes_;
  }

 private:
  // Sorted longest-first so the first prefix match wins.
  std::vector<std::pair<std::string, char>> prefixes_;
};

struct PosDistribution {
  double n = 0.0;
  double v = 0.0;
  double j = 0.0;
  double o = 0.0;
  std::size_t tagged_token_count = 0;

  double of(char cls) const;
};

LexStats lex_stats(const Corpus& corpus);

AbsConcStats abs_conc(const Corpus& corpus, const Lexicon& lexicon);

PosDistribution pos_distribution(const Corpus& corpus,
                                 const TagMapper& mapper = TagMapper());

// One term per line, '#' comments, case-folded and deduplicated. A term
// present in both lists is kept only as a function word (with a warning
// on stderr).
Lexicon load_lexicon(const std::string& abstract_path,
                     const std::string& function_path);

}  // namespace corpusqc

#endif  // CORPUSQC_LEXICAL_HPP_
