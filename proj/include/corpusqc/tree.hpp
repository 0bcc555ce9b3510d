// tree.hpp
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
// Penn-Treebank style constituency trees: one bracketed expression per
// line, `(LABEL child...)` for interior nodes and `(TAG word)` for
// leaves. A leaf node fuses the preterminal tag (label) and the word.

#ifndef CORPUSQC_TREE_HPP_
#define CORPUSQC_TREE_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace corpusqc {

struct ParseTree {
  std::string label;
  std::vector<ParseTree> children;  // empty iff leaf
  std::optional<std::string> word;  // set iff leaf

  bool is_leaf() const { return word.has_value(); }

  bool operator==(const ParseTree& other) const = default;
};

// Parses one bracketed tree. Strips an outer (ROOT ...) / (TOP ...) /
// unlabeled "( ... )" wrapper that has a single child. `line_no` is used
// for error reporting only. Throws TreeParseError.
ParseTree parse_tree(std::string_view line, std::size_t line_no = 0);

// Inverse of parse_tree modulo wrapper stripping: single spaces, PTB
// paren escapes re-applied to words.
std::string to_bracketed(const ParseTree& tree);

// Leaf pointers in word order.
std::vector<const ParseTree*> leaves(const ParseTree& tree);

// Truncates a PTB label at its first functional annotation (`-` or `=`),
// keeping bracket escapes such as -LRB- intact. "S-TPC-1" -> "S".
std::string_view strip_label_suffix(std::string_view label);

// Throws MalformedTree unless every node has exactly one of (children,
// word) and no label is empty.
void validate_tree(const ParseTree& tree);

// Removes punctuation leaves, pruning interior nodes left childless.
// Returns nullopt when nothing remains.
std::optional<ParseTree> strip_punct_leaves(const ParseTree& tree);

}  // namespace corpusqc

#endif  // CORPUSQC_TREE_HPP_
