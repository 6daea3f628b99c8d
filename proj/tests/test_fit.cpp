#include <cmath>

#include "doctest.h"
#include "sobodecay/fit.hpp"

using namespace sobodecay;

namespace {

NormTrajectory synthetic(double C, double exponent, double t0, double t1, int count) {
  NormTrajectory traj;
  traj.label = "synthetic";
  const double ratio = std::pow(t1 / t0, 1.0 / (count - 1));
  double t = t0;
  for (int i = 0; i < count; ++i, t *= ratio)
    traj.add(t, C * std::pow(1.0 + t, exponent));
  return traj;
}

}  // namespace

TEST_CASE("exact power law is recovered") {
  const auto traj = synthetic(3.7, -1.5, 1.0, 1e4, 40);
  const auto fit = fit_exponent(traj, 1.0, 1e4);
  CHECK(fit.exponent == doctest::Approx(-1.5).epsilon(1e-10));
  CHECK(std::exp(fit.intercept) == doctest::Approx(3.7).epsilon(1e-8));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fit.n_samples == 40);
  CHECK(fit.verdict_eligible());
}

TEST_CASE("fit window and flagged samples are respected") {
  auto traj = synthetic(1.0, -1.0, 1.0, 1e4, 40);
  // corrupt the late samples but flag them: the fit must ignore them
  for (auto& s : traj.samples)
    if (s.t > 100.0) {
      s.value *= 100.0;
      s.flagged = true;
    }
  const auto fit = fit_exponent(traj, 1.0, 1e4);
  CHECK(fit.exponent == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(fit.n_samples < 40);
}

TEST_CASE("eligibility gate") {
  const auto short_span = fit_exponent(synthetic(1.0, -1.0, 10.0, 100.0, 20), 10.0, 100.0);
  CHECK_FALSE(short_span.verdict_eligible());  // only one decade
  const auto few = synthetic(1.0, -1.0, 1.0, 1e4, 40);
  CHECK_THROWS(fit_exponent(few, 9000.0, 1e4));  // < 8 samples inside the window
}

TEST_CASE("invalid trajectories are rejected") {
  NormTrajectory traj;
  traj.add(1.0, 1.0);
  CHECK_THROWS(traj.add(1.0, 0.9));  // non-increasing time
  traj.add(2.0, -1.0);
  for (int i = 3; i < 20; ++i) traj.add(double(i), 1.0 / i);
  CHECK_THROWS(fit_exponent(traj, 1.0, 20.0));  // nonpositive value in window
}

TEST_CASE("verdicts") {
  const auto fit = fit_exponent(synthetic(1.0, -0.76, 1.0, 1e4, 40), 1.0, 1e4);

  SUBCASE("two-sided") {
    CHECK(compare_predicted(fit, -0.75, 0.03, CompareMode::two_sided) == Verdict::pass);
    CHECK(compare_predicted(fit, -0.70, 0.03, CompareMode::two_sided) == Verdict::fail);
  }
  SUBCASE("one-sided accepts faster decay") {
    CHECK(compare_predicted(fit, -0.5, 0.03, CompareMode::one_sided) == Verdict::pass);
    CHECK(compare_predicted(fit, -0.9, 0.03, CompareMode::one_sided) == Verdict::fail);
  }
  SUBCASE("ineligible fits are inconclusive") {
    const auto narrow = fit_exponent(synthetic(1.0, -0.76, 10.0, 100.0, 20), 10.0, 100.0);
    CHECK(compare_predicted(narrow, -0.75, 0.03, CompareMode::two_sided) ==
          Verdict::inconclusive);
  }
  CHECK(to_string(Verdict::pass) == "pass");
  CHECK(to_string(Verdict::fail) == "fail");
  CHECK(to_string(Verdict::inconclusive) == "inconclusive");
}
