// lm.hpp
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
// Count-based n-gram language models with interpolated modified
// Kneser-Ney smoothing, a vocabulary frequency cutoff, and <unk>
// handling. Probabilities are stored in log2; every conditional
// distribution over (vocab ∪ {<unk>, </s>}) sums to 1, and <s> is never
// a predicted outcome.
//
// Sentences are padded with (order-1) <s> tokens and closed with one
// </s>; the </s> position is scored, the <s> positions are not.

#ifndef CORPUSQC_LM_HPP_
#define CORPUSQC_LM_HPP_

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "corpusqc/corpus.hpp"

namespace corpusqc {

using TokenId = std::uint32_t;

inline constexpr TokenId kUnkId = 0;
inline constexpr TokenId kBosId = 1;
inline constexpr TokenId kEosId = 2;

inline constexpr const char* kUnkToken = "<unk>";
inline constexpr const char* kBosToken = "<s>";
inline constexpr const char* kEosToken = "</s>";

// Raw windowed n-gram counts: every contiguous window of length 1..order
// over each padded sentence. Keys are tokens joined by single spaces.
struct NgramCounts {
  int order = 0;
  // by_len[k-1] holds the k-gram table.
  std::vector<std::map<std::string, std::uint64_t>> by_len;
};

// Surfaces are folded per the corpus casing; no <unk> mapping is applied.
NgramCounts count_ngrams(const Corpus& corpus, int order);

struct PplResult {
  double perplexity = 0.0;
  std::size_t token_count = 0;  // one </s> per sentence, <s> excluded
  double oov_rate = 0.0;        // OOV tokens / token_count
};

class NgramModel {
 public:
  // Types below `cutoff` training occurrences are replaced by <unk>
  // before counting. Discounts come from count-of-counts per order; an
  // order whose statistics are too sparse falls back to a single
  // absolute discount of 0.75 (warning on stderr).
  static NgramModel train(const Corpus& corpus, int order, int cutoff);

  // Degenerate baseline: order-1 model assigning 1/V to every outcome,
  // V = |types ∪ {<unk>, </s>}|.
  static NgramModel uniform(const std::vector<std::string>& types);

  static NgramModel load(std::istream& in);
  static NgramModel load_file(const std::string& path);
  void save(std::ostream& out) const;
  void save_file(const std::string& path) const;

  int order() const { return order_; }
  int cutoff() const { return cutoff_; }
  const std::string& smoothing() const { return smoothing_; }

  // Retained types only; reserved tokens excluded.
  std::size_t vocab_size() const { return id_to_token_.size() - 3; }

  bool in_vocab(std::string_view type) const;
  TokenId token_id(std::string_view type) const;  // kUnkId when unknown
  const std::string& token(TokenId id) const { return id_to_token_[id]; }

  // Predictable outcomes: retained types plus <unk> and </s>.
  std::size_t outcome_count() const { return id_to_token_.size() - 1; }
  std::vector<TokenId> outcomes() const;

  // log2 p(word | context); context may be any length (the last order-1
  // tokens are used). Returns -inf for word == <s>.
  double log2_prob(std::span<const TokenId> context, TokenId word) const;
  double prob(std::span<const TokenId> context, TokenId word) const;

  // Maps a sentence to ids under the model vocabulary, counting OOVs.
  std::vector<TokenId> sentence_ids(const Corpus& corpus,
                                    const Sentence& sentence,
                                    std::size_t* oov_count = nullptr) const;

 private:
  NgramModel() = default;

  void set_vocabulary(std::vector<std::string> retained_sorted);

  int order_ = 1;
  int cutoff_ = 0;
  std::string smoothing_;
  std::vector<std::string> id_to_token_;  // [0]=<unk> [1]=<s> [2]=</s>
  std::unordered_map<std::string, TokenId> token_to_id_;
  // prob_[k-1]: packed k-gram ids -> log2 prob (interpolated).
  std::vector<std::unordered_map<std::string, double>> prob_;
  // backoff_[L-1]: packed context ids (length L) -> log2 backoff weight.
  std::vector<std::unordered_map<std::string, double>> backoff_;
};

PplResult perplexity(const NgramModel& model, const Corpus& corpus,
                     unsigned jobs = 1);

// `corpus<TAB>ppl<TAB>tokens<TAB>oov_rate`
std::string ppl_report_line(const std::string& corpus_name,
                            const PplResult& result);

}  // namespace corpusqc

#endif  // CORPUSQC_LM_HPP_
