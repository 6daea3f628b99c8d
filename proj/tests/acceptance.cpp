// Acceptance gate: one line per criterion, nonzero exit on any failure.
#include <cstdio>
#include <exception>
#include <string>

#include "sobodecay/verify.hpp"

int main() {
  using namespace sobodecay;
  const struct {
    const char* suite;
    const char* label;
  } criteria[] = {
      {"heat_sharp_rates", "heat sharp decay rates (oracle fit, two-sided)"},
      {"heat_sigma_family", "heat rate vs low-frequency exponent family"},
      {"heat_negative_norm", "negative Sobolev norm nonincreasing under heat flow"},
      {"lyapunov", "Lyapunov closed form solves its ODE and envelopes the energy"},
      {"neg_interp_gate", "constant-1 interpolation over 1000 random fields"},
      {"lemma_stability", "inequality ratios stable under grid/band changes"},
      {"linear_cns", "linearized fluid modes, decay rate, energy identity"},
      {"nonlinear_cns", "nonlinear fluid run: energy, mass, floors, order"},
      {"kinetic", "kinetic building blocks: nu, Maxwellian, projection"},
      {"harness_repro", "byte-identical reruns of identical configs"},
  };

  int failures = 0, inconclusive = 0;
  for (const auto& c : criteria) {
    std::string status = "PASS";
    std::string detail;
    try {
      const auto results = verify_suite(c.suite);
      for (const auto& res : results)
        for (const auto& claim : res.report.claims) {
          if (claim.verdict == Verdict::fail) {
            status = "FAIL";
            if (!detail.empty()) detail += "; ";
            detail += claim.claim_id;
          } else if (claim.verdict == Verdict::inconclusive && status == "PASS") {
            status = "INCONCLUSIVE";
            detail = claim.claim_id;
          }
        }
    } catch (const std::exception& e) {
      status = "FAIL";
      detail = e.what();
    }
    if (status == "FAIL") ++failures;
    if (status == "INCONCLUSIVE") ++inconclusive;
    std::printf("[%s] %s%s%s\n", status.c_str(), c.label,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
  }
  if (failures > 0) return 1;
  return inconclusive > 0 ? 3 : 0;
}
