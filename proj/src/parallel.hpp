// Copyright 2026 The qiv authors
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

#ifndef QIV_SRC_PARALLEL_HPP
#define QIV_SRC_PARALLEL_HPP

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace qiv::detail {

inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp<unsigned>(hw, 1u, 8u));
}

/// Runs fn(begin, end, worker_index) over a contiguous partition of [0, n).
/// Callers must keep per-item outputs indexed (or integer-additive) so the
/// result does not depend on the partitioning.
template <typename Fn>
void parallel_for(std::int64_t n, int workers, Fn&& fn) {
  const int resolved = std::min<std::int64_t>(resolve_workers(workers),
                                              std::max<std::int64_t>(n, 1));
  if (resolved <= 1) {
    fn(std::int64_t{0}, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(resolved);
  const std::int64_t chunk = (n + resolved - 1) / resolved;
  for (int w = 0; w < resolved; ++w) {
    const std::int64_t begin = w * chunk;
    const std::int64_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end, w] { fn(begin, end, w); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace qiv::detail

#endif  // QIV_SRC_PARALLEL_HPP
