// tree.cpp
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

#include "corpusqc/tree.hpp"

#include <string>

#include "corpusqc/errors.hpp"
#include "corpusqc/text.hpp"

namespace corpusqc {

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line_no;

  [[noreturn]] void fail(const std::string& what) const {
    throw TreeParseError("line " + std::to_string(line_no) + ", column " +
                         std::to_string(pos + 1) + ": " + what);
  }

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  void skip_space() {
    while (!done() && (peek() == ' ' || peek() == '\t')) ++pos;
  }

  std::string_view take_atom() {
    std::size_t start = pos;
    while (!done()) {
      char c = peek();
      if (c == '(' || c == ')' || c == ' ' || c == '\t') break;
      ++pos;
    }
    return text.substr(start, pos - start);
  }
};

std::string decode_word(std::string_view w) {
  if (w == "-LRB-") return "(";
  if (w == "-RRB-") return ")";
  return std::string(w);
}

std::string encode_word(std::string_view w) {
  if (w == "(") return "-LRB-";
  if (w == ")") return "-RRB-";
  return std::string(w);
}

// tree := '(' LABEL (tree+ | WORD) ')'
// An empty LABEL is tolerated only at depth 0 (PTB files often wrap each
// tree in an unlabeled pair of parens).
ParseTree parse_node(Cursor& cur, int depth) {
  cur.skip_space();
  if (cur.done() || cur.peek() != '(') cur.fail("expected '('");
  ++cur.pos;
  cur.skip_space();

  ParseTree node;
  node.label = std::string(cur.take_atom());
  if (node.label.empty() && depth > 0) cur.fail("empty node label");

  cur.skip_space();
  if (cur.done()) cur.fail("unbalanced parentheses");

  if (cur.peek() == '(') {
    while (!cur.done() && cur.peek() == '(') {
      node.children.push_back(parse_node(cur, depth + 1));
      cur.skip_space();
    }
    if (cur.done() || cur.peek() != ')') cur.fail("unbalanced parentheses");
    ++cur.pos;
    return node;
  }

  if (cur.peek() == ')') cur.fail("empty node");
  if (node.label.empty()) cur.fail("leaf with no label");
  std::string_view word = cur.take_atom();
  node.word = decode_word(word);
  cur.skip_space();
  if (cur.done() || cur.peek() != ')') cur.fail("unbalanced parentheses");
  ++cur.pos;
  return node;
}

bool is_wrapper_label(std::string_view label) {
  return label.empty() || label == "ROOT" || label == "TOP";
}

void append_bracketed(const ParseTree& node, std::string& out) {
  out += '(';
  out += node.label;
  if (node.is_leaf()) {
    out += ' ';
    out += encode_word(*node.word);
  } else {
    for (const ParseTree& child : node.children) {
      out += ' ';
      append_bracketed(child, out);
    }
  }
  out += ')';
}

void collect_leaves(const ParseTree& node, std::vector<const ParseTree*>& out) {
  if (node.is_leaf()) {
    out.push_back(&node);
    return;
  }
  for (const ParseTree& child : node.children) collect_leaves(child, out);
}

}  // namespace

ParseTree parse_tree(std::string_view line, std::size_t line_no) {
  Cursor cur{line, 0, line_no};
  ParseTree root = parse_node(cur, 0);
  cur.skip_space();
  if (!cur.done()) cur.fail("trailing content after tree");
  if (is_wrapper_label(root.label) && root.children.size() == 1)
    return std::move(root.children.front());
  if (root.label.empty())
    throw TreeParseError("line " + std::to_string(line_no) +
                         ": unlabeled root with multiple children");
  return root;
}

std::string to_bracketed(const ParseTree& tree) {
  std::string out;
  append_bracketed(tree, out);
  return out;
}

std::vector<const ParseTree*> leaves(const ParseTree& tree) {
  std::vector<const ParseTree*> out;
  collect_leaves(tree, out);
  return out;
}

std::string_view strip_label_suffix(std::string_view label) {
  if (label.size() >= 2 && label.front() == '-' && label.back() == '-')
    return label;  // -LRB-, -NONE-, ...
  std::size_t cut = label.find_first_of("-=");
  return cut == std::string_view::npos ? label : label.substr(0, cut);
}

void validate_tree(const ParseTree& tree) {
  if (tree.label.empty()) throw MalformedTree("node with empty label");
  bool has_children = !tree.children.empty();
  if (has_children == tree.word.has_value())
    throw MalformedTree("node must have either children or a word");
  if (tree.word && tree.word->empty())
    throw MalformedTree("leaf with empty word");
  for (const ParseTree& child : tree.children) validate_tree(child);
}

std::optional<ParseTree> strip_punct_leaves(const ParseTree& tree) {
  if (tree.is_leaf())
    return is_punct_token(*tree.word) ? std::nullopt
                                      : std::optional<ParseTree>(tree);
  ParseTree out;
  out.label = tree.label;
  for (const ParseTree& child : tree.children) {
    if (auto kept = strip_punct_leaves(child)) out.children.push_back(*kept);
  }
  if (out.children.empty()) return std::nullopt;
  return out;
}

}  // namespace corpusqc
