// compare.hpp
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
// Pairwise cross-corpus perplexity: every corpus is split once into a
// held-out test sample and a training remainder; cell[i][j] scores test
// set i under the model trained on corpus j's remainder. The diagonal is
// held-out too, never train-on-test.

#ifndef CORPUSQC_COMPARE_HPP_
#define CORPUSQC_COMPARE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corpusqc/corpus.hpp"
#include "corpusqc/lm.hpp"

namespace corpusqc {

struct Protocol {
  int order = 5;
  int cutoff = 3;
  std::size_t test_size = 20000;
  std::uint64_t seed = 42;
};

struct PplMatrix {
  std::vector<std::string> names;  // row = test set, column = training set
  // cells[i][j]; NaN marks a column whose corpus was too small to leave
  // any training sentences (serialized as NA).
  std::vector<std::vector<double>> cells;
  Protocol protocol;
};

// Retained-vocabulary size per training column under the shared cutoff;
// nullopt for NA columns.
struct VocabFootnote {
  std::vector<std::optional<std::size_t>> sizes;
};

struct CrossPplResult {
  PplMatrix matrix;
  VocabFootnote vocab;
};

CrossPplResult cross_ppl(const std::vector<Corpus>& corpora,
                         const Protocol& protocol, unsigned jobs = 1);

// CSV: protocol comment, header row of training names, one row per test
// set (cells with 1 decimal), and a final `#vocab` row.
std::string matrix_to_csv(const CrossPplResult& result);

}  // namespace corpusqc

#endif  // CORPUSQC_COMPARE_HPP_
