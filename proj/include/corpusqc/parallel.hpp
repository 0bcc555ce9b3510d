// parallel.hpp
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
// Deterministic fork/join over an index range: map in parallel, collect
// by index. Reductions over the results run sequentially in index order
// so output bytes do not depend on the worker count.

#ifndef CORPUSQC_PARALLEL_HPP_
#define CORPUSQC_PARALLEL_HPP_

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <type_traits>
#include <vector>

namespace corpusqc {

inline unsigned default_jobs() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// Runs fn(i) for every i in [0, n) on up to `jobs` threads and returns
// the results indexed by i. The first exception thrown by any task is
// rethrown on the calling thread after all workers join.
template <typename Fn>
auto parallel_map(std::size_t n, unsigned jobs, Fn fn)
    -> std::vector<std::invoke_result_t<Fn, std::size_t>> {
  using Result = std::invoke_result_t<Fn, std::size_t>;
  std::vector<Result> results(n);
  if (n == 0) return results;
  if (jobs == 0) jobs = default_jobs();
  if (jobs > n) jobs = static_cast<unsigned>(n);

  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) results[i] = fn(i);
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};

  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        results[i] = fn(i);
      } catch (...) {
        if (!failed.exchange(true)) first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

}  // namespace corpusqc

#endif  // CORPUSQC_PARALLEL_HPP_
