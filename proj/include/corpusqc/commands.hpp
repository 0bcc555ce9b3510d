// commands.hpp
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
// Subcommand implementations behind the CLI. Exit codes are a stable
// contract: 0 success, 1 data error, 2 usage/manifest error. Logging
// goes to stderr; machine output goes to files or stdout.

#ifndef CORPUSQC_COMMANDS_HPP_
#define CORPUSQC_COMMANDS_HPP_

#include <iosfwd>
#include <string>

#include "corpusqc/bias.hpp"
#include "corpusqc/manifest.hpp"

namespace corpusqc {

struct RunOptions {
  unsigned jobs = 0;  // 0 = hardware concurrency
};

// Computes every tier-applicable metric per corpus and writes the report
// bundle (requested formats, POS TSV, config echo) to the output
// directory. Failing corpora are reported and skipped.
int run_analyze(const Manifest& manifest, const RunOptions& options = {});

// Writes the cross-corpus perplexity matrix CSV.
int run_ppl_matrix(const Manifest& manifest, const RunOptions& options = {});

// Prints the POS-distribution TSV for tagged/parsed corpora.
int run_pos_dist(const Manifest& manifest, std::ostream& out,
                 const RunOptions& options = {});

// Prints BiasStats as one JSON line plus a human summary on stderr.
int run_bias(const std::string& annotations_path,
             const std::string& captions_path, const BiasOptions& options,
             std::ostream& out);

int run_train_lm(const std::string& corpus_path, int order, int cutoff,
                 const LoadOptions& load_options,
                 const std::string& model_path);

// Prints `corpus<TAB>ppl<TAB>tokens<TAB>oov_rate`.
int run_ppl(const std::string& model_path, const std::string& corpus_path,
            const LoadOptions& load_options, std::ostream& out);

}  // namespace corpusqc

#endif  // CORPUSQC_COMMANDS_HPP_
