// syntax.hpp
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
// Yngve and Frazier syntactic-complexity scoring over constituency
// trees.
//
// Yngve depth of a word: walking from the root to the word's leaf, sum
// the number of right siblings of every node entered (the root itself
// contributes nothing). Deep left-branching piles up load; pure
// right-branching stays near zero.
//
// Frazier score of a word: starting at the word's preterminal, walk
// upward while each node is the leftmost child of its parent; every node
// visited scores 1, sentence nodes (label `S` after stripping functional
// suffixes) score 1.5; the root terminates the chain and is counted. A
// word whose preterminal is not a leftmost child scores 0.

#ifndef CORPUSQC_SYNTAX_HPP_
#define CORPUSQC_SYNTAX_HPP_

#include <cstddef>
#include <ostream>
#include <vector>

#include "corpusqc/corpus.hpp"
#include "corpusqc/tree.hpp"

namespace corpusqc {

// Per-word values, in word order. Throws MalformedTree.
std::vector<double> yngve_word_depths(const ParseTree& tree);
std::vector<double> frazier_word_scores(const ParseTree& tree);

// Mean of the per-word values.
double yngve_sentence(const ParseTree& tree);
double frazier_sentence(const ParseTree& tree);

struct ComplexityStats {
  // Primary convention: mean over sentences of per-word means.
  double mean_yngve = 0.0;
  double mean_frazier = 0.0;
  // Compatibility convention: mean over sentences of per-sentence sums
  // (the convention behind corpus-level scores in the tens).
  double yngve_sum_mean = 0.0;
  double frazier_sum_mean = 0.0;
  std::size_t sentence_count = 0;
};

ComplexityStats complexity_stats(const Corpus& corpus, unsigned jobs = 1);

// TSV dump `sentence_index<TAB>yngve<TAB>frazier` (per-word means).
void write_score_dump(const Corpus& corpus, std::ostream& out);

}  // namespace corpusqc

#endif  // CORPUSQC_SYNTAX_HPP_
