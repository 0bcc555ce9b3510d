// syntax_test.cpp
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
// The scorers are checked against brute-force oracles that flatten the
// tree into parent-pointer form and walk each leaf's ancestor path
// literally -- a different construction from the production DFS.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "corpusqc/errors.hpp"
#include "corpusqc/syntax.hpp"
#include "test_util.hpp"

using namespace corpusqc;

namespace {

struct FlatTree {
  std::vector<std::string> label;
  std::vector<int> parent;       // -1 at the root
  std::vector<int> child_index;  // position among the parent's children
  std::vector<int> right_siblings;
  std::vector<int> leaf_order;  // node ids of leaves, left to right
};

void flatten_into(const ParseTree& node, int parent, int child_index,
                  int right_siblings, FlatTree& flat) {
  int id = static_cast<int>(flat.label.size());
  flat.label.push_back(node.label);
  flat.parent.push_back(parent);
  flat.child_index.push_back(child_index);
  flat.right_siblings.push_back(right_siblings);
  if (node.is_leaf()) flat.leaf_order.push_back(id);
  for (std::size_t i = 0; i < node.children.size(); ++i)
    flatten_into(node.children[i], id, static_cast<int>(i),
                 static_cast<int>(node.children.size() - 1 - i), flat);
}

FlatTree flatten(const ParseTree& tree) {
  FlatTree flat;
  flatten_into(tree, -1, 0, 0, flat);
  return flat;
}

std::vector<double> yngve_oracle(const ParseTree& tree) {
  FlatTree flat = flatten(tree);
  std::vector<double> depths;
  for (int leaf : flat.leaf_order) {
    double depth = 0.0;
    for (int node = leaf; flat.parent[node] != -1; node = flat.parent[node])
      depth += flat.right_siblings[node];
    depths.push_back(depth);
  }
  return depths;
}

double node_score(const std::string& label) {
  return strip_label_suffix(label) == "S" ? 1.5 : 1.0;
}

std::vector<double> frazier_oracle(const ParseTree& tree,
                                   int* s_nodes_counted = nullptr) {
  FlatTree flat = flatten(tree);
  std::vector<double> scores;
  if (s_nodes_counted) *s_nodes_counted = 0;
  for (int leaf : flat.leaf_order) {
    double score = 0.0;
    int node = leaf;
    while (true) {
      if (flat.parent[node] == -1) {  // root: count and stop
        score += node_score(flat.label[node]);
        if (s_nodes_counted && strip_label_suffix(flat.label[node]) == "S")
          ++*s_nodes_counted;
        break;
      }
      if (flat.child_index[node] != 0) break;  // not leftmost: stop uncounted
      score += node_score(flat.label[node]);
      if (s_nodes_counted && strip_label_suffix(flat.label[node]) == "S")
        ++*s_nodes_counted;
      node = flat.parent[node];
    }
    scores.push_back(score);
  }
  return scores;
}

}  // namespace

TEST_CASE("worked fixtures") {
  ParseTree one = parse_tree("(S (NN dog))");
  CHECK(yngve_sentence(one) == doctest::Approx(0.0));
  CHECK(frazier_sentence(one) == doctest::Approx(2.5));

  ParseTree dog_runs =
      parse_tree("(S (NP (DT the) (NN dog)) (VP (VBZ runs)))");
  auto depths = yngve_word_depths(dog_runs);
  REQUIRE(depths.size() == 3);
  CHECK(depths[0] == doctest::Approx(2.0));
  CHECK(depths[1] == doctest::Approx(1.0));
  CHECK(depths[2] == doctest::Approx(0.0));
  CHECK(yngve_sentence(dog_runs) == doctest::Approx(1.0));
  auto scores = frazier_word_scores(dog_runs);
  REQUIRE(scores.size() == 3);
  CHECK(scores[0] == doctest::Approx(3.5));  // the: DT + NP + S
  CHECK(scores[1] == doctest::Approx(0.0));  // dog: not leftmost
  CHECK(scores[2] == doctest::Approx(1.0));  // runs: VBZ only
  CHECK(frazier_sentence(dog_runs) == doctest::Approx(1.5));

  ParseTree chain = parse_tree("(S (A a) (S (B b) (S (C c))))");
  CHECK(yngve_sentence(chain) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("words with non-leftmost preterminals score zero") {
  ParseTree tree = parse_tree("(S (NP (DT the) (NN dog) (NN house)))");
  auto scores = frazier_word_scores(tree);
  REQUIRE(scores.size() == 3);
  CHECK(scores[1] == doctest::Approx(0.0));
  CHECK(scores[2] == doctest::Approx(0.0));
}

TEST_CASE("functional suffixes are stripped before the S test") {
  CHECK(frazier_sentence(parse_tree("(S-TPC-1 (NN dog))")) ==
        doctest::Approx(2.5));
  CHECK(frazier_sentence(parse_tree("(S=2 (NN dog))")) ==
        doctest::Approx(2.5));
  CHECK(frazier_sentence(parse_tree("(SBAR (NN dog))")) ==
        doctest::Approx(2.0));
  CHECK(strip_label_suffix("-LRB-") == "-LRB-");
  CHECK(strip_label_suffix("S-TPC-1") == "S");
  CHECK(strip_label_suffix("NP-SBJ") == "NP");
}

TEST_CASE("right-branching chains: every non-final word loads 1") {
  SplitMix64 rng(91);
  for (int round = 0; round < 20; ++round) {
    std::size_t depth = 2 + rng.below(10);
    // (S (A w) (S (A w) ... (S (A w))))
    ParseTree node;
    node.label = "S";
    ParseTree leaf;
    leaf.label = "A";
    leaf.word = "w";
    node.children.push_back(leaf);
    for (std::size_t i = 1; i < depth; ++i) {
      ParseTree outer;
      outer.label = "S";
      outer.children.push_back(leaf);
      outer.children.push_back(std::move(node));
      node = std::move(outer);
    }
    auto depths = yngve_word_depths(node);
    REQUIRE(depths.size() == depth);
    for (std::size_t i = 0; i + 1 < depth; ++i)
      CHECK(depths[i] == doctest::Approx(1.0));
    CHECK(depths.back() == doctest::Approx(0.0));
  }
}

TEST_CASE("both scorers match the path-walking oracle on random trees") {
  SplitMix64 rng(92);
  for (int round = 0; round < 500; ++round) {
    ParseTree tree = testutil::random_tree(rng, 1 + rng.below(12));
    auto yngve = yngve_word_depths(tree);
    auto yngve_ref = yngve_oracle(tree);
    REQUIRE(yngve.size() == yngve_ref.size());
    for (std::size_t i = 0; i < yngve.size(); ++i)
      CHECK(yngve[i] == doctest::Approx(yngve_ref[i]));
    auto frazier = frazier_word_scores(tree);
    auto frazier_ref = frazier_oracle(tree);
    REQUIRE(frazier.size() == frazier_ref.size());
    for (std::size_t i = 0; i < frazier.size(); ++i)
      CHECK(frazier[i] == doctest::Approx(frazier_ref[i]));
  }
}

namespace {

void rename_labels(ParseTree& tree, const std::string& from,
                   const std::string& to) {
  if (strip_label_suffix(tree.label) == from) tree.label = to;
  for (ParseTree& child : tree.children) rename_labels(child, from, to);
}

}  // namespace

TEST_CASE("yngve ignores labels; frazier drops 0.5 per S chain node") {
  SplitMix64 rng(93);
  for (int round = 0; round < 200; ++round) {
    ParseTree tree = testutil::random_tree(rng, 2 + rng.below(10));
    ParseTree renamed = tree;
    rename_labels(renamed, "S", "X");

    auto before = yngve_word_depths(tree);
    auto after = yngve_word_depths(renamed);
    for (std::size_t i = 0; i < before.size(); ++i)
      CHECK(before[i] == doctest::Approx(after[i]));

    int s_counted = 0;
    auto f_before = frazier_oracle(tree, &s_counted);
    double sum_before = 0.0, sum_after = 0.0;
    for (double v : f_before) sum_before += v;
    for (double v : frazier_word_scores(renamed)) sum_after += v;
    CHECK(sum_before - sum_after == doctest::Approx(0.5 * s_counted));
    if (s_counted > 0) CHECK(sum_after < sum_before);
  }
}

TEST_CASE("complexity_stats aggregates both conventions") {
  Corpus corpus;
  corpus.meta.name = "two";
  corpus.tier = Tier::kParsed;
  auto add = [&](const std::string& line) {
    Sentence sentence;
    sentence.tree = parse_tree(line);
    for (const ParseTree* leaf : leaves(*sentence.tree))
      sentence.tokens.push_back({*leaf->word, leaf->label});
    corpus.sentences.push_back(std::move(sentence));
  };
  add("(S (NP (DT the) (NN dog)) (VP (VBZ runs)))");  // mean 1.0, sum 3.0
  add("(S (A a) (S (B b) (S (C c))))");               // mean 2/3, sum 2.0

  ComplexityStats stats = complexity_stats(corpus);
  CHECK(stats.sentence_count == 2);
  CHECK(stats.mean_yngve == doctest::Approx(5.0 / 6.0));
  CHECK(stats.yngve_sum_mean == doctest::Approx(2.5));
  // Frazier sentence 2: a=[A, root S]=2.5; b=[B]=1 (stops at the inner
  // non-leftmost S); c=[C]=1. Both sentences: mean 1.5, sum 4.5.
  CHECK(stats.mean_frazier == doctest::Approx(1.5));
  CHECK(stats.frazier_sum_mean == doctest::Approx(4.5));

  Corpus single;
  single.meta.name = "one";
  single.tier = Tier::kParsed;
  Sentence sentence;
  sentence.tree = parse_tree("(S (NN dog))");
  sentence.tokens.push_back({"dog", std::string("NN")});
  single.sentences.push_back(sentence);
  CHECK(complexity_stats(single).mean_yngve == doctest::Approx(0.0));
}

TEST_CASE("corpus means equal a two-pass oracle and ignore job count") {
  SplitMix64 rng(94);
  Corpus corpus;
  corpus.meta.name = "rand";
  corpus.tier = Tier::kParsed;
  for (int i = 0; i < 60; ++i) {
    Sentence sentence;
    sentence.tree = testutil::random_tree(rng, 1 + rng.below(12));
    for (const ParseTree* leaf : leaves(*sentence.tree))
      sentence.tokens.push_back({*leaf->word, leaf->label});
    corpus.sentences.push_back(std::move(sentence));
  }
  ComplexityStats stats = complexity_stats(corpus, 1);
  double yngve_mean_sum = 0.0;
  for (const Sentence& s : corpus.sentences) {
    auto depths = yngve_oracle(*s.tree);
    double total = 0.0;
    for (double d : depths) total += d;
    yngve_mean_sum += total / static_cast<double>(depths.size());
  }
  CHECK(stats.mean_yngve ==
        doctest::Approx(yngve_mean_sum / 60.0).epsilon(1e-12));

  ComplexityStats parallel4 = complexity_stats(corpus, 4);
  CHECK(stats.mean_yngve == parallel4.mean_yngve);
  CHECK(stats.frazier_sum_mean == parallel4.frazier_sum_mean);
}

TEST_CASE("tier and malformed-tree errors") {
  Corpus raw = testutil::make_corpus({{"a"}});
  CHECK_THROWS_AS(complexity_stats(raw), TierError);

  ParseTree bad;
  bad.label = "X";  // interior node with no children and no word
  CHECK_THROWS_AS(yngve_word_depths(bad), MalformedTree);
  CHECK_THROWS_AS(frazier_word_scores(bad), MalformedTree);
}

TEST_CASE("score dump is tab-separated with per-word means") {
  Corpus corpus = load_parsed(testutil::fixture("mini_parsed.txt"));
  std::ostringstream out;
  write_score_dump(corpus, out);
  std::istringstream lines(out.str());
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    CHECK(std::count(line.begin(), line.end(), '\t') == 2);
    ++count;
  }
  CHECK(count == corpus.sentences.size());
}
