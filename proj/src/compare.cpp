// compare.cpp
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

#include "corpusqc/compare.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <set>

#include "corpusqc/errors.hpp"
#include "corpusqc/parallel.hpp"
#include "corpusqc/text.hpp"

namespace corpusqc {

CrossPplResult cross_ppl(const std::vector<Corpus>& corpora,
                         const Protocol& protocol, unsigned jobs) {
  if (corpora.size() < 2)
    throw Error("cross-perplexity needs at least 2 corpora");

  std::set<std::string> seen;
  for (const Corpus& corpus : corpora) {
    if (!seen.insert(corpus.meta.name).second)
      throw DuplicateName("duplicate corpus name '" + corpus.meta.name +
                          "'");
    if (corpus.sentences.empty())
      throw EmptyCorpus(corpus.meta.name + ": empty corpus");
  }

  const std::size_t n = corpora.size();
  CrossPplResult result;
  result.matrix.protocol = protocol;
  result.matrix.names.reserve(n);
  for (const Corpus& corpus : corpora)
    result.matrix.names.push_back(corpus.meta.name);
  result.matrix.cells.assign(
      n, std::vector<double>(n, std::numeric_limits<double>::quiet_NaN()));
  result.vocab.sizes.assign(n, std::nullopt);

  // Each corpus is split exactly once per run; splits are seeded by
  // (seed, name), so cells never depend on which other corpora joined
  // the run.
  std::vector<SplitResult> splits;
  splits.reserve(n);
  for (const Corpus& corpus : corpora) {
    splits.push_back(
        split(corpus, SplitSpec{protocol.test_size, protocol.seed}));
    if (splits.back().undersized)
      std::cerr << "warning: corpus '" << corpus.meta.name << "' has <= "
                << protocol.test_size
                << " sentences; its training column will be NA\n";
  }

  // One column at a time: train corpus j's model, score every test set
  // against it, release the model. Rows within the column run in
  // parallel against the shared immutable model.
  for (std::size_t j = 0; j < n; ++j) {
    if (splits[j].undersized) continue;
    NgramModel model =
        NgramModel::train(splits[j].train, protocol.order, protocol.cutoff);
    result.vocab.sizes[j] = model.vocab_size();
    auto column = parallel_map(n, jobs, [&](std::size_t i) {
      return perplexity(model, splits[i].test).perplexity;
    });
    for (std::size_t i = 0; i < n; ++i)
      result.matrix.cells[i][j] = column[i];
  }
  return result;
}

std::string matrix_to_csv(const CrossPplResult& result) {
  const PplMatrix& m = result.matrix;
  std::string out;
  out += "# order=" + std::to_string(m.protocol.order) +
         " cutoff=" + std::to_string(m.protocol.cutoff) +
         " test_size=" + std::to_string(m.protocol.test_size) +
         " seed=" + std::to_string(m.protocol.seed) + "\n";
  for (const std::string& name : m.names) out += "," + name;
  out += '\n';
  for (std::size_t i = 0; i < m.names.size(); ++i) {
    out += m.names[i];
    for (double cell : m.cells[i])
      out += "," + (std::isnan(cell) ? std::string("NA")
                                     : fixed_double(cell, 1));
    out += '\n';
  }
  out += "#vocab";
  for (const auto& size : result.vocab.sizes)
    out += "," + (size ? std::to_string(*size) : std::string("NA"));
  out += '\n';
  return out;
}

}  // namespace corpusqc
