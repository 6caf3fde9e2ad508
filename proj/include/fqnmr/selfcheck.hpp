#pragma once

#include <string>
#include <vector>

namespace fqnmr {

struct SuiteResult {
  std::string name;
  long cases = 0;
  double max_dev = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Oracle-vs-closed-form equivalence suites:
//   steady_state  - Lindblad null space vs the saturation formula (abs dev)
//   erfc_average  - scaled-erfc average vs adaptive quadrature (rel dev)
//   dd_filter     - filter factors vs the exact propagator product (rel dev)
//   ramsey        - linearized signal vs channel oracle (dev / (dw tau)^3)
std::vector<SuiteResult> run_selfcheck();

}  // namespace fqnmr
