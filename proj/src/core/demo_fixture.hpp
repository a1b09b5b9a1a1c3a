#pragma once

#include <string>
#include <vector>

#include "lti_model.hpp"

namespace ddfdi::demo {

/// Bundled five-state benchmark plant (one input, three outputs, two
/// disturbance channels). Used by the `reproduce-example` command and by the
/// regression tests.
lti::SystemRealization demo_plant();

/// A reference residual generator for the demo plant, known to satisfy the
/// structural constraints with settling index 3. Kept as a regression
/// fixture; the design routines produce a different, equally valid one.
lti::UioMatrices demo_reference_uio();

/// Fault profiles for the demo scenarios. The two exp variants differ only
/// in the clamping direction; `exp_max` is an immediate step at 0.9 that
/// later ramps beyond it, `exp_min` is a bounded ramp saturating at 0.9.
double fault_exp_max(int k, int k_f);
double fault_exp_min(int k, int k_f);
double fault_step(int k, int k_f, double amplitude);

/// Demo monitoring input u(k) = 0.9 sin(0.4 k + 3).
double demo_input(int k);

/// The four monitoring scenarios: relative placements of the identification
/// start k_id and the fault onset k_f.
struct Scenario {
  std::string name;
  int k_id;
  int k_f;
  const char* description;
};

const std::vector<Scenario>& demo_scenarios();

}  // namespace ddfdi::demo
