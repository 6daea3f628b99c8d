#pragma once

#include <string>
#include <vector>

#include "sobodecay/heat.hpp"

namespace sobodecay {

struct SuiteResult {
  std::string suite;
  VerdictReport report;
  double seconds = 0.0;
};

/// Acceptance suites; each returns one pass/fail claim per gated property.
SuiteResult verify_heat_sharp_rates();
SuiteResult verify_heat_sigma_family();
SuiteResult verify_heat_negative_norm();
SuiteResult verify_lyapunov();
SuiteResult verify_neg_interp_gate();
SuiteResult verify_lemma_stability();
SuiteResult verify_linear_cns();
SuiteResult verify_nonlinear_cns();
SuiteResult verify_kinetic();
SuiteResult verify_harness_repro();

std::vector<SuiteResult> verify_suite(const std::string& name);  // name or "all"
std::vector<std::string> verify_suite_names();

}  // namespace sobodecay
