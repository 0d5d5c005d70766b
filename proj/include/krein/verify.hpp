#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "krein/extension_solver.hpp"

namespace krein {

struct InvariantResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;
};

struct VerifyOptions {
  std::uint64_t seed = 7;
  Index oracle_cap = 4096; // dense oracle checks run only for n <= oracle_cap
};

// Seeded invariant suite over one model and extension. Residuals are relative to
// max(1, size of the compared terms), so they read as absolute for unit-scale models.
std::vector<InvariantResult> verify_invariants(const KreinField &field, const ExtensionSpec &spec,
                                               const VerifyOptions &options);

} // namespace krein
