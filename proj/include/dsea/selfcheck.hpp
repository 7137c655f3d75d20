#pragma once

#include <string>
#include <vector>

namespace dsea {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast invariant suite behind the `check` subcommand: algebraic
/// identities, operator assembly, guidance-law sanity, quadrature
/// anchors. Each entry is independent; failures carry the measured value.
std::vector<CheckResult> run_selfchecks();

} // namespace dsea
