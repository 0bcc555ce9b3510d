// lm.cpp
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
// Interpolated modified Kneser-Ney. The top order uses raw windowed
// counts; lower orders use continuation counts (distinct left
// extensions), except n-grams beginning with <s>, which keep raw counts
// because nothing can precede <s>. Stored probabilities are the fully
// interpolated values, so the backoff representation
//   p(w|h) = stored(h,w)            if (h,w) is in the table
//          = backoff(h) * p(w|h')   otherwise
// reproduces the interpolated model exactly.

#include "corpusqc/lm.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

#include "corpusqc/errors.hpp"
#include "corpusqc/parallel.hpp"
#include "corpusqc/text.hpp"

namespace corpusqc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// -99 marks entries that exist only to carry a backoff weight (contexts
// of <s> runs), mirroring the ARPA convention.
constexpr double kPlaceholderLog2 = -99.0;

std::string pack(std::span<const TokenId> ids) {
  std::string key(ids.size() * sizeof(TokenId), '\0');
  if (!ids.empty()) std::memcpy(key.data(), ids.data(), key.size());
  return key;
}

std::string pack1(TokenId id) {
  return pack(std::span<const TokenId>(&id, 1));
}

std::vector<TokenId> unpack(std::string_view key) {
  std::vector<TokenId> ids(key.size() / sizeof(TokenId));
  if (!ids.empty()) std::memcpy(ids.data(), key.data(), key.size());
  return ids;
}

TokenId first_id(std::string_view key) {
  TokenId id;
  std::memcpy(&id, key.data(), sizeof(TokenId));
  return id;
}

TokenId last_id(std::string_view key) {
  TokenId id;
  std::memcpy(&id, key.data() + key.size() - sizeof(TokenId),
              sizeof(TokenId));
  return id;
}

struct Discounts {
  double d1 = 0.75, d2 = 0.75, d3 = 0.75;
};

double discount_for(const Discounts& d, std::uint64_t count) {
  if (count == 0) return 0.0;
  if (count == 1) return d.d1;
  if (count == 2) return d.d2;
  return d.d3;
}

// Chen & Goodman's closed-form estimates from count-of-counts. Falls
// back to a single absolute discount when the statistics are too sparse
// to give three positive discounts.
Discounts estimate_discounts(
    const std::unordered_map<std::string, std::uint64_t>& counts, int k) {
  std::uint64_t n[5] = {0, 0, 0, 0, 0};
  for (const auto& [key, c] : counts) {
    if (c >= 1 && c <= 4) ++n[c];
  }
  if (n[1] > 0 && n[2] > 0 && n[3] > 0 && n[4] > 0) {
    double y = static_cast<double>(n[1]) /
               (static_cast<double>(n[1]) + 2.0 * static_cast<double>(n[2]));
    Discounts d;
    d.d1 = 1.0 - 2.0 * y * static_cast<double>(n[2]) / static_cast<double>(n[1]);
    d.d2 = 2.0 - 3.0 * y * static_cast<double>(n[3]) / static_cast<double>(n[2]);
    d.d3 = 3.0 - 4.0 * y * static_cast<double>(n[4]) / static_cast<double>(n[3]);
    if (d.d1 > 0.0 && d.d2 > 0.0 && d.d3 > 0.0) return d;
  }
  std::cerr << "warning: sparse count-of-counts for " << k
            << "-grams; falling back to absolute discount 0.75\n";
  return Discounts{};
}

}  // namespace

NgramCounts count_ngrams(const Corpus& corpus, int order) {
  if (order < 1 || order > 9)
    throw BadOrder("order must be in [1,9], got " + std::to_string(order));
  if (corpus.sentences.empty())
    throw EmptyCorpus(corpus.meta.name + ": empty corpus");

  NgramCounts counts;
  counts.order = order;
  counts.by_len.resize(order);
  for (const Sentence& sentence : corpus.sentences) {
    std::vector<std::string> padded(static_cast<std::size_t>(order - 1),
                                    kBosToken);
    for (const Token& token : sentence.tokens)
      padded.push_back(stat_surface(corpus, token));
    padded.push_back(kEosToken);

    for (int k = 1; k <= order; ++k) {
      for (std::size_t i = 0; i + k <= padded.size(); ++i) {
        std::string key = padded[i];
        for (int j = 1; j < k; ++j) {
          key += ' ';
          key += padded[i + j];
        }
        ++counts.by_len[k - 1][key];
      }
    }
  }
  return counts;
}

void NgramModel::set_vocabulary(std::vector<std::string> retained_sorted) {
  id_to_token_.clear();
  id_to_token_.reserve(retained_sorted.size() + 3);
  id_to_token_.push_back(kUnkToken);
  id_to_token_.push_back(kBosToken);
  id_to_token_.push_back(kEosToken);
  for (std::string& type : retained_sorted)
    id_to_token_.push_back(std::move(type));
  token_to_id_.clear();
  token_to_id_.reserve(id_to_token_.size());
  for (TokenId id = 0; id < id_to_token_.size(); ++id)
    token_to_id_.emplace(id_to_token_[id], id);
}

bool NgramModel::in_vocab(std::string_view type) const {
  auto it = token_to_id_.find(std::string(type));
  return it != token_to_id_.end() && it->second >= 3;
}

TokenId NgramModel::token_id(std::string_view type) const {
  auto it = token_to_id_.find(std::string(type));
  return it == token_to_id_.end() ? kUnkId : it->second;
}

std::vector<TokenId> NgramModel::outcomes() const {
  std::vector<TokenId> ids;
  ids.reserve(outcome_count());
  ids.push_back(kUnkId);
  ids.push_back(kEosId);
  for (TokenId id = 3; id < id_to_token_.size(); ++id) ids.push_back(id);
  return ids;
}

NgramModel NgramModel::train(const Corpus& corpus, int order, int cutoff) {
  if (order < 1 || order > 9)
    throw BadOrder("order must be in [1,9], got " + std::to_string(order));
  if (corpus.sentences.empty())
    throw EmptyCorpus(corpus.meta.name + ": empty corpus");

  NgramModel model;
  model.order_ = order;
  model.cutoff_ = cutoff;
  model.smoothing_ = "modified-kneser-ney";

  // Vocabulary under the frequency cutoff. std::map keeps the retained
  // list sorted, which fixes token ids deterministically.
  std::map<std::string, std::uint64_t> freq;
  for (const Sentence& sentence : corpus.sentences)
    for (const Token& token : sentence.tokens)
      ++freq[stat_surface(corpus, token)];
  std::vector<std::string> retained;
  for (const auto& [type, count] : freq) {
    if (count >= static_cast<std::uint64_t>(cutoff) && type != kUnkToken &&
        type != kBosToken && type != kEosToken)
      retained.push_back(type);
  }
  model.set_vocabulary(std::move(retained));

  // Windowed counts of all orders over the padded id sequences.
  std::vector<std::unordered_map<std::string, std::uint64_t>> raw(order + 1);
  for (const Sentence& sentence : corpus.sentences) {
    std::vector<TokenId> padded(static_cast<std::size_t>(order - 1), kBosId);
    for (const Token& token : sentence.tokens) {
      TokenId id = model.token_id(stat_surface(corpus, token));
      padded.push_back(id < 3 ? kUnkId : id);
    }
    padded.push_back(kEosId);
    for (int k = 1; k <= order; ++k)
      for (std::size_t i = 0; i + k <= padded.size(); ++i)
        ++raw[k][pack(std::span(padded.data() + i,
                                static_cast<std::size_t>(k)))];
  }

  // Adjusted counts: raw at the top order, continuation counts below
  // (raw for <s>-initial n-grams). N-grams ending in <s> are dropped;
  // <s> is never an outcome.
  std::vector<std::unordered_map<std::string, std::uint64_t>> adj(order + 1);
  for (int k = order; k >= 1; --k) {
    if (k == order) {
      adj[k] = raw[k];
      continue;
    }
    std::unordered_map<std::string, std::uint64_t> continuation;
    continuation.reserve(raw[k].size());
    for (const auto& [key, count] : raw[k + 1]) {
      (void)count;
      continuation[key.substr(sizeof(TokenId))] += 1;
    }
    for (const auto& [key, count] : raw[k]) {
      if (last_id(key) == kBosId) continue;
      adj[k][key] = first_id(key) == kBosId ? count : continuation[key];
    }
  }

  std::vector<Discounts> discounts(order + 1);
  for (int k = 1; k <= order; ++k)
    discounts[k] = estimate_discounts(adj[k], k);

  model.prob_.assign(order, {});
  model.backoff_.assign(order - 1, {});
  const double num_outcomes = static_cast<double>(model.outcome_count());

  // Unigrams: interpolate with the uniform distribution so every
  // outcome, <unk> included, ends up with nonzero probability.
  {
    const Discounts& d = discounts[1];
    double total = 0.0;
    double discounted = 0.0;
    for (const auto& [key, count] : adj[1]) {
      (void)key;
      total += static_cast<double>(count);
      discounted += discount_for(d, count);
    }
    if (total <= 0.0)
      throw DegenerateCounts(corpus.meta.name + ": no countable tokens");
    const double gamma = discounted / total;
    for (TokenId w : model.outcomes()) {
      auto it = adj[1].find(pack1(w));
      const std::uint64_t count = it == adj[1].end() ? 0 : it->second;
      const double p =
          std::max(static_cast<double>(count) - discount_for(d, count), 0.0) /
              total +
          gamma / num_outcomes;
      model.prob_[0].emplace(pack1(w), std::log2(p));
    }
  }

  for (int k = 2; k <= order; ++k) {
    struct ContextAgg {
      double denom = 0.0;
      std::uint64_t n1 = 0, n2 = 0, n3p = 0;
    };
    std::unordered_map<std::string, ContextAgg> contexts;
    for (const auto& [key, count] : adj[k]) {
      ContextAgg& agg =
          contexts[key.substr(0, key.size() - sizeof(TokenId))];
      agg.denom += static_cast<double>(count);
      if (count == 1)
        ++agg.n1;
      else if (count == 2)
        ++agg.n2;
      else
        ++agg.n3p;
    }

    const Discounts& d = discounts[k];
    auto gamma_of = [&](const ContextAgg& agg) {
      return (d.d1 * static_cast<double>(agg.n1) +
              d.d2 * static_cast<double>(agg.n2) +
              d.d3 * static_cast<double>(agg.n3p)) /
             agg.denom;
    };

    for (const auto& [key, count] : adj[k]) {
      const ContextAgg& agg =
          contexts.at(key.substr(0, key.size() - sizeof(TokenId)));
      auto lower = model.prob_[k - 2].find(key.substr(sizeof(TokenId)));
      if (lower == model.prob_[k - 2].end())
        throw DegenerateCounts("missing lower-order estimate");
      const double p =
          std::max(static_cast<double>(count) - discount_for(d, count),
                   0.0) /
              agg.denom +
          gamma_of(agg) * std::exp2(lower->second);
      model.prob_[k - 1].emplace(key, std::log2(p));
    }
    for (const auto& [key, agg] : contexts)
      model.backoff_[k - 2].emplace(key, std::log2(gamma_of(agg)));
  }

  return model;
}

NgramModel NgramModel::uniform(const std::vector<std::string>& types) {
  NgramModel model;
  model.order_ = 1;
  model.cutoff_ = 0;
  model.smoothing_ = "uniform";
  std::set<std::string> unique(types.begin(), types.end());
  unique.erase(kUnkToken);
  unique.erase(kBosToken);
  unique.erase(kEosToken);
  model.set_vocabulary({unique.begin(), unique.end()});
  model.prob_.assign(1, {});
  const double log2p =
      -std::log2(static_cast<double>(model.outcome_count()));
  for (TokenId w : model.outcomes()) model.prob_[0].emplace(pack1(w), log2p);
  return model;
}

double NgramModel::log2_prob(std::span<const TokenId> context,
                             TokenId word) const {
  if (word == kBosId) return kNegInf;
  std::size_t len = std::min(context.size(),
                             static_cast<std::size_t>(order_ - 1));
  context = context.last(len);

  double acc = 0.0;
  for (;; --len) {
    auto ctx = context.last(len);
    std::string key = pack(ctx);
    key += pack1(word);
    const auto& table = prob_[len];
    auto it = table.find(key);
    if (it != table.end()) return acc + it->second;
    if (len == 0) break;
    auto bo = backoff_[len - 1].find(pack(ctx));
    if (bo != backoff_[len - 1].end()) acc += bo->second;
  }
  // Unknown outcome id; treat as <unk>.
  auto it = prob_[0].find(pack1(kUnkId));
  return it != prob_[0].end() ? acc + it->second : kNegInf;
}

double NgramModel::prob(std::span<const TokenId> context,
                        TokenId word) const {
  double lp = log2_prob(context, word);
  return lp == kNegInf ? 0.0 : std::exp2(lp);
}

std::vector<TokenId> NgramModel::sentence_ids(const Corpus& corpus,
                                              const Sentence& sentence,
                                              std::size_t* oov_count) const {
  std::vector<TokenId> ids;
  ids.reserve(sentence.tokens.size());
  for (const Token& token : sentence.tokens) {
    auto it = token_to_id_.find(stat_surface(corpus, token));
    TokenId id = it == token_to_id_.end() ? kUnkId : it->second;
    if (id < 3) {
      // OOV, or a literal reserved token in running text.
      id = kUnkId;
      if (oov_count) ++*oov_count;
    }
    ids.push_back(id);
  }
  return ids;
}

PplResult perplexity(const NgramModel& model, const Corpus& corpus,
                     unsigned jobs) {
  if (corpus.sentences.empty())
    throw EmptyCorpus(corpus.meta.name + ": empty corpus");

  struct Part {
    double log2_sum = 0.0;
    std::size_t tokens = 0;
    std::size_t oov = 0;
  };
  const std::size_t ctx_len = static_cast<std::size_t>(model.order() - 1);
  auto parts =
      parallel_map(corpus.sentences.size(), jobs, [&](std::size_t i) {
        Part part;
        auto ids =
            model.sentence_ids(corpus, corpus.sentences[i], &part.oov);
        std::vector<TokenId> padded(ctx_len, kBosId);
        padded.insert(padded.end(), ids.begin(), ids.end());
        padded.push_back(kEosId);
        for (std::size_t pos = ctx_len; pos < padded.size(); ++pos)
          part.log2_sum += model.log2_prob(
              std::span(padded.data() + pos - ctx_len, ctx_len),
              padded[pos]);
        part.tokens = ids.size() + 1;
        return part;
      });

  double log2_total = 0.0;
  std::size_t tokens = 0;
  std::size_t oov = 0;
  for (const Part& part : parts) {
    log2_total += part.log2_sum;
    tokens += part.tokens;
    oov += part.oov;
  }

  PplResult result;
  result.token_count = tokens;
  result.oov_rate =
      static_cast<double>(oov) / static_cast<double>(tokens);
  result.perplexity =
      std::exp2(-log2_total / static_cast<double>(tokens));
  return result;
}

std::string ppl_report_line(const std::string& corpus_name,
                            const PplResult& result) {
  return corpus_name + '\t' + shortest_double(result.perplexity) + '\t' +
         std::to_string(result.token_count) + '\t' +
         shortest_double(result.oov_rate);
}

void NgramModel::save(std::ostream& out) const {
  out << "order=" << order_ << '\n'
      << "cutoff=" << cutoff_ << '\n'
      << "smoothing=" << smoothing_ << '\n'
      << "vocab_size=" << vocab_size() << '\n';

  for (int k = 1; k <= order_; ++k) {
    out << "\n\\" << k << "-grams:\n";

    // Union of probability entries and backoff-only contexts.
    std::set<std::string> keys;
    for (const auto& [key, lp] : prob_[k - 1]) {
      (void)lp;
      keys.insert(key);
    }
    if (k < order_) {
      for (const auto& [key, bo] : backoff_[k - 1]) {
        (void)bo;
        keys.insert(key);
      }
    }

    std::vector<std::pair<std::string, std::string>> lines;
    lines.reserve(keys.size());
    for (const std::string& key : keys) {
      std::string tokens;
      for (TokenId id : unpack(key)) {
        if (!tokens.empty()) tokens += ' ';
        tokens += id_to_token_[id];
      }
      auto pit = prob_[k - 1].find(key);
      double lp = pit == prob_[k - 1].end() ? kPlaceholderLog2 : pit->second;
      std::string line = shortest_double(lp) + '\t' + tokens;
      if (k < order_) {
        auto bit = backoff_[k - 1].find(key);
        if (bit != backoff_[k - 1].end())
          line += '\t' + shortest_double(bit->second);
      }
      lines.emplace_back(std::move(tokens), std::move(line));
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& [tokens, line] : lines) out << line << '\n';
  }
}

void NgramModel::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  save(out);
  if (!out) throw IoError("write error on " + path);
}

namespace {

double parse_double(std::string_view text, std::size_t line_no) {
  double value;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw FormatError("model file line " + std::to_string(line_no) +
                      ": bad number '" + std::string(text) + "'");
  return value;
}

}  // namespace

NgramModel NgramModel::load(std::istream& in) {
  NgramModel model;
  std::string line;
  std::size_t line_no = 0;
  std::map<std::string, std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) break;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw FormatError("model file line " + std::to_string(line_no) +
                        ": expected key=value header");
    header[line.substr(0, eq)] = line.substr(eq + 1);
  }
  for (const char* key : {"order", "cutoff", "smoothing", "vocab_size"}) {
    if (!header.count(key))
      throw FormatError(std::string("model file: missing header '") + key +
                        "'");
  }
  model.order_ = static_cast<int>(parse_double(header["order"], 0));
  model.cutoff_ = static_cast<int>(parse_double(header["cutoff"], 0));
  model.smoothing_ = header["smoothing"];
  if (model.order_ < 1 || model.order_ > 9)
    throw FormatError("model file: bad order");

  struct Entry {
    double prob;
    std::vector<std::string> tokens;
    bool has_backoff = false;
    double backoff = 0.0;
  };
  std::vector<std::vector<Entry>> sections(model.order_ + 1);
  int current = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '\\') {
      std::size_t dash = line.find("-grams:");
      if (dash == std::string::npos)
        throw FormatError("model file line " + std::to_string(line_no) +
                          ": bad section header");
      current = static_cast<int>(parse_double(
          std::string_view(line).substr(1, dash - 1), line_no));
      if (current < 1 || current > model.order_)
        throw FormatError("model file line " + std::to_string(line_no) +
                          ": section order out of range");
      continue;
    }
    if (current == 0)
      throw FormatError("model file line " + std::to_string(line_no) +
                        ": entry before any section header");
    // log2prob<TAB>tokens[<TAB>log2backoff]
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    while (!rest.empty()) {
      std::size_t tab = rest.find('\t');
      fields.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest = rest.substr(tab + 1);
    }
    if (fields.size() < 2 || fields.size() > 3)
      throw FormatError("model file line " + std::to_string(line_no) +
                        ": expected 2 or 3 tab-separated fields");
    Entry entry;
    entry.prob = parse_double(fields[0], line_no);
    for (std::string_view tok : split_whitespace(fields[1]))
      entry.tokens.emplace_back(tok);
    if (entry.tokens.size() != static_cast<std::size_t>(current))
      throw FormatError("model file line " + std::to_string(line_no) +
                        ": wrong n-gram length for section");
    if (fields.size() == 3) {
      entry.has_backoff = true;
      entry.backoff = parse_double(fields[2], line_no);
    }
    sections[current].push_back(std::move(entry));
  }

  if (sections[1].empty())
    throw FormatError("model file: missing or empty \\1-grams section");

  std::set<std::string> types;
  for (const Entry& entry : sections[1]) types.insert(entry.tokens[0]);
  types.erase(kUnkToken);
  types.erase(kBosToken);
  types.erase(kEosToken);
  model.set_vocabulary({types.begin(), types.end()});
  if (model.vocab_size() !=
      static_cast<std::size_t>(parse_double(header["vocab_size"], 0)))
    throw FormatError("model file: vocab_size header does not match the "
                      "\\1-grams section");

  model.prob_.assign(model.order_, {});
  model.backoff_.assign(model.order_ - 1, {});
  for (int k = 1; k <= model.order_; ++k) {
    for (const Entry& entry : sections[k]) {
      std::vector<TokenId> ids;
      ids.reserve(entry.tokens.size());
      for (const std::string& tok : entry.tokens) {
        auto it = model.token_to_id_.find(tok);
        if (it == model.token_to_id_.end())
          throw FormatError("model file: token '" + tok +
                            "' missing from \\1-grams");
        ids.push_back(it->second);
      }
      std::string key = pack(ids);
      model.prob_[k - 1].emplace(key, entry.prob);
      if (entry.has_backoff) {
        if (k >= model.order_)
          throw FormatError("model file: backoff weight on a top-order "
                            "n-gram");
        model.backoff_[k - 1].emplace(std::move(key), entry.backoff);
      }
    }
  }
  return model;
}

NgramModel NgramModel::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return load(in);
}

}  // namespace corpusqc
