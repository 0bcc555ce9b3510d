// text.hpp
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
// Small string helpers shared by the loaders and metric code.

#ifndef CORPUSQC_TEXT_HPP_
#define CORPUSQC_TEXT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace corpusqc {

// Splits on runs of ASCII whitespace; never returns empty items.
std::vector<std::string_view> split_whitespace(std::string_view line);

// ASCII-only case folding. Input is UTF-8; non-ASCII bytes pass through.
std::string ascii_lower(std::string_view s);

// Offset of the first byte where `s` stops being valid UTF-8, or npos if
// the whole string is valid.
std::size_t utf8_invalid_at(std::string_view s);

// True for tokens made entirely of ASCII punctuation, plus the PTB
// bracket escapes (-LRB-, -RRB-, ...), `` and ''.
bool is_punct_token(std::string_view token);

std::string_view trim(std::string_view s);

// Formats `value` with the shortest representation that round-trips.
std::string shortest_double(double value);

// snprintf-style fixed-decimal formatting.
std::string fixed_double(double value, int decimals);

}  // namespace corpusqc

#endif  // CORPUSQC_TEXT_HPP_
