// SPDX-License-Identifier: Apache-2.0
//
// Deterministic random streams. Every component draws from a named substream
// derived from one root seed ("precompute/...", "train/step_i/...") so a run
// is reproducible piecewise: a component's stream does not depend on how much
// randomness other components consumed, nor on thread scheduling.

#pragma once

#include <cstdint>
#include <string_view>

#include "rdlm/types.hpp"

namespace rdlm {

class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Child stream keyed by (this stream's seed, name[, index]).
  Rng stream(std::string_view name) const;
  Rng stream(std::string_view name, std::uint64_t index) const;

  std::uint64_t next_u64();
  double uniform();               // [0, 1)
  double normal();                // standard normal (Box-Muller)
  Index uniform_index(Index n);   // unbiased draw from [0, n)
  Vec normal_vec(Index n);

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;    // identity of this stream, used for derivation
  std::uint64_t state_;   // splitmix64 walk
  bool has_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace rdlm
