// lexical_test.cpp
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <unordered_set>

#include "corpusqc/errors.hpp"
#include "corpusqc/lexical.hpp"
#include "test_util.hpp"

using namespace corpusqc;

namespace {

Corpus tagged(const std::vector<std::vector<std::pair<std::string,
                                                      std::string>>>& data) {
  Corpus corpus;
  corpus.meta.name = "tagged";
  corpus.tier = Tier::kTagged;
  for (const auto& sent : data) {
    Sentence sentence;
    for (const auto& [surface, pos] : sent)
      sentence.tokens.push_back({surface, pos});
    corpus.sentences.push_back(std::move(sentence));
  }
  return corpus;
}

}  // namespace

TEST_CASE("lex_stats counts types and token means") {
  Corpus corpus = testutil::make_corpus({{"a", "b", "a"}, {"b", "c"}});
  LexStats stats = lex_stats(corpus);
  CHECK(stats.vocab_size == 3);
  CHECK(stats.token_count == 5);
  CHECK(stats.sentence_count == 2);
  CHECK(stats.mean_sentence_length == doctest::Approx(2.5));

  Corpus one = testutil::make_corpus({{"solo"}});
  LexStats ones = lex_stats(one);
  CHECK(ones.vocab_size == 1);
  CHECK(ones.mean_sentence_length == doctest::Approx(1.0));

  Corpus empty;
  empty.meta.name = "none";
  CHECK_THROWS_AS(lex_stats(empty), EmptyCorpus);
}

TEST_CASE("lex_stats folds case only when the corpus says so") {
  Corpus folded = testutil::make_corpus({{"The", "the", "THE"}});
  folded.lowercase_stats = true;
  CHECK(lex_stats(folded).vocab_size == 1);
  Corpus kept = folded;
  kept.lowercase_stats = false;
  CHECK(lex_stats(kept).vocab_size == 3);
}

TEST_CASE("lex_stats is order invariant and vocab is monotone") {
  SplitMix64 rng(31);
  Corpus corpus = testutil::random_corpus(rng, 40, 15, 7);
  LexStats base = lex_stats(corpus);
  Corpus shuffled = corpus;
  std::reverse(shuffled.sentences.begin(), shuffled.sentences.end());
  LexStats rev = lex_stats(shuffled);
  CHECK(base.vocab_size == rev.vocab_size);
  CHECK(base.token_count == rev.token_count);
  CHECK(base.mean_sentence_length == rev.mean_sentence_length);

  Corpus extended = corpus;
  Corpus extra = testutil::random_corpus(rng, 10, 25, 7);
  extended.sentences.insert(extended.sentences.end(),
                            extra.sentences.begin(), extra.sentences.end());
  CHECK(lex_stats(extended).vocab_size >= base.vocab_size);
}

TEST_CASE("abs_conc two-type example") {
  Corpus corpus = testutil::make_corpus({{"love", "dog", "the"}});
  Lexicon lexicon;
  lexicon.abstract_terms = {"love"};
  lexicon.function_words = {"the"};
  AbsConcStats stats = abs_conc(corpus, lexicon);
  CHECK(stats.n_abstract == 1);
  CHECK(stats.n_concrete == 1);
  CHECK(stats.pct_abstract == doctest::Approx(0.5));
}

TEST_CASE("abs_conc counts types, not tokens, case-insensitively") {
  Corpus corpus = testutil::make_corpus(
      {{"Love", "love", "LOVE", "dog", "dog", "cat"}});
  corpus.lowercase_stats = false;  // abs_conc folds regardless
  Lexicon lexicon;
  lexicon.abstract_terms = {"love"};
  lexicon.function_words = {"the"};
  AbsConcStats stats = abs_conc(corpus, lexicon);
  CHECK(stats.n_abstract == 1);
  CHECK(stats.n_concrete == 2);
}

TEST_CASE("abs_conc partition identity against vocab size") {
  SplitMix64 rng(32);
  Lexicon lexicon;
  lexicon.abstract_terms = {"w1", "w2", "w3"};
  lexicon.function_words = {"w4", "w5"};
  for (int round = 0; round < 20; ++round) {
    Corpus corpus = testutil::random_corpus(rng, 30, 12, 6);
    AbsConcStats stats = abs_conc(corpus, lexicon);
    // %Abs identity.
    double denom = static_cast<double>(stats.n_abstract + stats.n_concrete);
    CHECK(stats.pct_abstract * denom ==
          doctest::Approx(stats.n_abstract).epsilon(1e-9));
    // Types partition into abstract + concrete + function.
    std::unordered_set<std::string> types;
    std::size_t function_present = 0;
    for (const Sentence& s : corpus.sentences)
      for (const Token& t : s.tokens) types.insert(t.surface);
    for (const std::string& w : lexicon.function_words)
      function_present += types.count(w);
    CHECK(stats.n_abstract + stats.n_concrete + function_present ==
          lex_stats(corpus).vocab_size);
  }
}

TEST_CASE("pos_distribution maps by tag prefix") {
  Corpus corpus = tagged({{{"dog", "NN"},
                           {"runs", "VBZ"},
                           {"big", "JJ"},
                           {"the", "DT"}}});
  PosDistribution dist = pos_distribution(corpus);
  CHECK(dist.n == doctest::Approx(0.25));
  CHECK(dist.v == doctest::Approx(0.25));
  CHECK(dist.j == doctest::Approx(0.25));
  CHECK(dist.o == doctest::Approx(0.25));
  CHECK(dist.tagged_token_count == 4);

  PosDistribution nouns = pos_distribution(
      tagged({{{"a", "NNS"}, {"b", "NNP"}, {"c", "NN"}}}));
  CHECK(nouns.n == doctest::Approx(1.0));
  CHECK(nouns.v == doctest::Approx(0.0));
}

TEST_CASE("modals count as verbs, per the published tag map") {
  // The shipped fixture is the authority for MD -> V; read it back and
  // confirm both the fixture content and the distribution.
  TagMapper mapper = TagMapper::load(testutil::data_file("pos_tag_map.tsv"));
  CHECK(mapper.simplify("MD") == 'V');
  CHECK(mapper.simplify("VB") == 'V');
  PosDistribution dist =
      pos_distribution(tagged({{{"can", "MD"}, {"see", "VB"}}}), mapper);
  CHECK(dist.v == doctest::Approx(1.0));
}

TEST_CASE("tag map overrides change the mapping") {
  TagMapper mapper = TagMapper::from_pairs({{"NN", 'N'}, {"NNP", 'O'}});
  CHECK(mapper.simplify("NNP") == 'O');  // longest prefix wins
  CHECK(mapper.simplify("NNS") == 'N');
  CHECK(mapper.simplify("ZZZ") == 'O');
}

TEST_CASE("pos_distribution rejects raw corpora, sums to one") {
  Corpus raw = testutil::make_corpus({{"a"}});
  CHECK_THROWS_AS(pos_distribution(raw), TierError);

  SplitMix64 rng(33);
  const char* tags[] = {"NN", "NNS", "VB", "VBD", "JJ", "JJR",
                        "DT", "IN",  "MD", "RB", "CD", "."};
  for (int round = 0; round < 25; ++round) {
    std::vector<std::vector<std::pair<std::string, std::string>>> data;
    std::size_t n = 1 + rng.below(10);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::pair<std::string, std::string>> sent;
      std::size_t len = 1 + rng.below(12);
      for (std::size_t j = 0; j < len; ++j)
        sent.emplace_back("w" + std::to_string(rng.below(9)),
                          tags[rng.below(12)]);
      data.push_back(std::move(sent));
    }
    Corpus corpus = tagged(data);
    PosDistribution dist = pos_distribution(corpus);
    CHECK(dist.n + dist.v + dist.j + dist.o == doctest::Approx(1.0).epsilon(1e-9));
    // Permutation invariance.
    Corpus shuffled = corpus;
    std::reverse(shuffled.sentences.begin(), shuffled.sentences.end());
    PosDistribution again = pos_distribution(shuffled);
    CHECK(dist.n == again.n);
    CHECK(dist.v == again.v);
  }
}

TEST_CASE("load_lexicon handles comments, case and conflicts") {
  testutil::TempDir tmp("lexicon");
  std::string abs_path =
      tmp.write("abs.txt", "love\nthink\n# comment\n\nLove\n");
  std::string fn_path = tmp.write("fn.txt", "the\na\n");
  Lexicon lexicon = load_lexicon(abs_path, fn_path);
  CHECK(lexicon.abstract_terms.size() == 2);  // love + think, deduped
  CHECK(lexicon.function_words.size() == 2);

  // Conflict: kept as function word only.
  std::string abs2 = tmp.write("abs2.txt", "love\nthe\n");
  Lexicon overlap = load_lexicon(abs2, fn_path);
  CHECK(overlap.abstract_terms.count("the") == 0);
  CHECK(overlap.function_words.count("the") == 1);

  std::string empty = tmp.write("empty.txt", "# nothing\n");
  CHECK_THROWS_AS(load_lexicon(empty, fn_path), EmptyLexicon);
  CHECK_THROWS_AS(load_lexicon(tmp.path("nope.txt"), fn_path), IoError);
}

TEST_CASE("shipped lexicon files load and are disjoint") {
  Lexicon lexicon = load_lexicon(testutil::data_file("abstract_terms.txt"),
                                 testutil::data_file("function_words.txt"));
  CHECK(lexicon.abstract_terms.size() >= 350);
  CHECK(lexicon.function_words.size() >= 120);
  for (const std::string& w : lexicon.abstract_terms)
    CHECK(lexicon.function_words.count(w) == 0);
}
