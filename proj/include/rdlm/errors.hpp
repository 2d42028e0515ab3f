// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace rdlm {

// Bad configuration input (unknown keys, out-of-range values). CLI exit 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A mathematical precondition or invariant was violated. CLI exit 3.
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Antipodal inputs to the logarithm map; no process here ever reaches
// antipodes from the positive orthant, so this is always a hard error.
struct AntipodalError : InvariantError {
  using InvariantError::InvariantError;
};

// Missing or incompatible on-disk artifact (table, checkpoint). CLI exit 4
// when missing, 3 when present but inconsistent.
struct ArtifactError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rdlm
