// errors.hpp
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
// Error types thrown across the toolkit. Every loader and metric reports
// failures through one of these so callers can map them to exit codes.

#ifndef CORPUSQC_ERRORS_HPP_
#define CORPUSQC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace corpusqc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : Error {
  using Error::Error;
};

// Invalid UTF-8 in an input file; message carries the line number.
struct EncodingError : Error {
  using Error::Error;
};

// Malformed tagged-corpus line (missing tag, empty surface, ...).
struct FormatError : Error {
  using Error::Error;
};

// Malformed bracketed tree; message carries line and column.
struct TreeParseError : Error {
  using Error::Error;
};

// A ParseTree that violates its structural invariants.
struct MalformedTree : Error {
  using Error::Error;
};

struct EmptyCorpus : Error {
  using Error::Error;
};

// Metric requested on a corpus whose annotation tier cannot support it.
struct TierError : Error {
  using Error::Error;
};

struct EmptyLexicon : Error {
  using Error::Error;
};

struct BadOrder : Error {
  using Error::Error;
};

struct DegenerateCounts : Error {
  using Error::Error;
};

struct DuplicateName : Error {
  using Error::Error;
};

// Caption refers to an image with no annotation record.
struct MissingAnnotation : Error {
  using Error::Error;
};

struct EmptyInput : Error {
  using Error::Error;
};

struct NoPosData : Error {
  using Error::Error;
};

struct EmptyBundle : Error {
  using Error::Error;
};

struct ManifestError : Error {
  using Error::Error;
};

}  // namespace corpusqc

#endif  // CORPUSQC_ERRORS_HPP_
