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

#ifndef QIV_RNG_HPP
#define QIV_RNG_HPP

#include <complex>
#include <cstdint>

namespace qiv {

/// Seeded random stream (xoshiro256++) with counter-based splitting.
///
/// substream(i) derives an independent stream from the parent's identity and
/// the counter i alone, never from the parent's current position. Work items
/// (shots, trials) each take their own substream, so results are identical
/// for a given seed no matter how the items are distributed across workers.
/// All variates are produced from raw 64-bit draws; no std::*_distribution
/// is involved, so sequences are stable across standard libraries.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  /// Independent stream for work item `index`, derived from this stream's
  /// identity key. Deterministic; does not advance this stream.
  RngStream substream(std::uint64_t index) const;

  std::uint64_t next_u64();

  /// Uniform double in [0, 1).
  double uniform();

  /// Standard normal via Box-Muller (caches the paired variate).
  double normal();

  /// Complex with independent N(0,1) real and imaginary parts.
  std::complex<double> complex_normal();

 private:
  std::uint64_t key_ = 0;
  std::uint64_t state_[4] = {};
  bool has_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

}  // namespace qiv

#endif  // QIV_RNG_HPP
