// syntax.cpp
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

#include "corpusqc/syntax.hpp"

#include <numeric>

#include "corpusqc/errors.hpp"
#include "corpusqc/parallel.hpp"
#include "corpusqc/text.hpp"

namespace corpusqc {

namespace {

void check_node(const ParseTree& node) {
  bool has_children = !node.children.empty();
  if (has_children == node.word.has_value())
    throw MalformedTree("node must have either children or a word");
}

void yngve_walk(const ParseTree& node, double load,
                std::vector<double>& out) {
  check_node(node);
  if (node.is_leaf()) {
    out.push_back(load);
    return;
  }
  const std::size_t last = node.children.size() - 1;
  for (std::size_t i = 0; i <= last; ++i)
    yngve_walk(node.children[i], load + static_cast<double>(last - i), out);
}

double frazier_node_score(const ParseTree& node) {
  return strip_label_suffix(node.label) == "S" ? 1.5 : 1.0;
}

// `chain` is the score the upward walk carries when it reaches this node
// and this node is examined: for the root, its own score; for a leftmost
// child, its score plus the parent's chain; otherwise 0.
void frazier_walk(const ParseTree& node, double chain,
                  std::vector<double>& out) {
  check_node(node);
  if (node.is_leaf()) {
    out.push_back(chain);
    return;
  }
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const ParseTree& child = node.children[i];
    double child_chain =
        i == 0 ? frazier_node_score(child) + chain : 0.0;
    frazier_walk(child, child_chain, out);
  }
}

double mean_of(const std::vector<double>& values) {
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

double sum_of(const std::vector<double>& values) {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

}  // namespace

std::vector<double> yngve_word_depths(const ParseTree& tree) {
  std::vector<double> depths;
  yngve_walk(tree, 0.0, depths);
  return depths;
}

std::vector<double> frazier_word_scores(const ParseTree& tree) {
  std::vector<double> scores;
  frazier_walk(tree, frazier_node_score(tree), scores);
  return scores;
}

double yngve_sentence(const ParseTree& tree) {
  return mean_of(yngve_word_depths(tree));
}

double frazier_sentence(const ParseTree& tree) {
  return mean_of(frazier_word_scores(tree));
}

ComplexityStats complexity_stats(const Corpus& corpus, unsigned jobs) {
  if (corpus.tier != Tier::kParsed)
    throw TierError(corpus.meta.name +
                    ": complexity scoring needs a parsed corpus");
  if (corpus.sentences.empty())
    throw EmptyCorpus(corpus.meta.name + ": empty corpus");

  struct SentenceScores {
    double yngve_mean, yngve_sum, frazier_mean, frazier_sum;
  };
  auto scores =
      parallel_map(corpus.sentences.size(), jobs, [&](std::size_t i) {
        const ParseTree& tree = *corpus.sentences[i].tree;
        auto yngve = yngve_word_depths(tree);
        auto frazier = frazier_word_scores(tree);
        return SentenceScores{mean_of(yngve), sum_of(yngve),
                              mean_of(frazier), sum_of(frazier)};
      });

  ComplexityStats stats;
  stats.sentence_count = scores.size();
  for (const SentenceScores& s : scores) {
    stats.mean_yngve += s.yngve_mean;
    stats.yngve_sum_mean += s.yngve_sum;
    stats.mean_frazier += s.frazier_mean;
    stats.frazier_sum_mean += s.frazier_sum;
  }
  const double n = static_cast<double>(stats.sentence_count);
  stats.mean_yngve /= n;
  stats.yngve_sum_mean /= n;
  stats.mean_frazier /= n;
  stats.frazier_sum_mean /= n;
  return stats;
}

void write_score_dump(const Corpus& corpus, std::ostream& out) {
  if (corpus.tier != Tier::kParsed)
    throw TierError(corpus.meta.name +
                    ": complexity scoring needs a parsed corpus");
  for (std::size_t i = 0; i < corpus.sentences.size(); ++i) {
    const ParseTree& tree = *corpus.sentences[i].tree;
    out << i << '\t' << shortest_double(yngve_sentence(tree)) << '\t'
        << shortest_double(frazier_sentence(tree)) << '\n';
  }
}

}  // namespace corpusqc
