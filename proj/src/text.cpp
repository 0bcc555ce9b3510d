// text.cpp
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

#include "corpusqc/text.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <cstring>

namespace corpusqc {

namespace {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

}  // namespace

std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> items;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) items.push_back(line.substr(start, i - start));
  }
  return items;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::size_t utf8_invalid_at(std::string_view s) {
  const auto* p = reinterpret_cast<const unsigned char*>(s.data());
  std::size_t n = s.size();
  std::size_t i = 0;
  while (i < n) {
    unsigned char b = p[i];
    std::size_t len;
    unsigned cp_min;
    if (b < 0x80) {
      ++i;
      continue;
    } else if ((b & 0xE0) == 0xC0) {
      len = 2;
      cp_min = 0x80;
    } else if ((b & 0xF0) == 0xE0) {
      len = 3;
      cp_min = 0x800;
    } else if ((b & 0xF8) == 0xF0) {
      len = 4;
      cp_min = 0x10000;
    } else {
      return i;
    }
    if (i + len > n) return i;
    unsigned cp = b & (0xFF >> (len + 1));
    for (std::size_t k = 1; k < len; ++k) {
      unsigned char c = p[i + k];
      if ((c & 0xC0) != 0x80) return i;
      cp = (cp << 6) | (c & 0x3F);
    }
    // Overlong encodings, surrogates and out-of-range code points.
    if (cp < cp_min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
      return i;
    i += len;
  }
  return std::string_view::npos;
}

bool is_punct_token(std::string_view token) {
  if (token.empty()) return false;
  static constexpr std::array<std::string_view, 6> kPtbEscapes = {
      "-LRB-", "-RRB-", "-LSB-", "-RSB-", "-LCB-", "-RCB-"};
  for (auto esc : kPtbEscapes) {
    if (token == esc) return true;
  }
  for (char c : token) {
    if (std::strchr("!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~", c) == nullptr)
      return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::string shortest_double(double value) {
  std::array<char, 64> buf;
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

std::string fixed_double(double value, int decimals) {
  std::array<char, 64> buf;
  int n = std::snprintf(buf.data(), buf.size(), "%.*f", decimals, value);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

}  // namespace corpusqc
