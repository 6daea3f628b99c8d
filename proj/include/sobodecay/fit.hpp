#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sobodecay {

struct TrajectorySample {
  double t = 0.0;
  double value = 0.0;
  bool flagged = false;  // flagged samples are excluded from fits
};

/// Time-stamped record of one monitored quantity along an evolution.
struct NormTrajectory {
  std::string label;
  std::vector<TrajectorySample> samples;

  void add(double t, double value, bool flagged = false) {
    if (!samples.empty() && t <= samples.back().t)
      throw std::invalid_argument("NormTrajectory: times must be strictly increasing");
    samples.push_back({t, value, flagged});
  }
};

/// Least-squares power-law fit value ~ C (1+t)^exponent on log coordinates.
struct DecayFit {
  double exponent = 0.0;
  double intercept = 0.0;  // log C
  double stderr_exponent = 0.0;
  double t_lo = 0.0, t_hi = 0.0;
  double r_squared = 0.0;
  int n_samples = 0;

  /// A fit may back a verdict only when it spans >= 1.5 decades.
  bool verdict_eligible() const { return t_hi / t_lo >= 30.0 && n_samples >= 8; }
};

DecayFit fit_exponent(const NormTrajectory& traj, double t_lo, double t_hi);

enum class Verdict { pass, fail, inconclusive };
enum class CompareMode { two_sided, one_sided };  // one-sided: exponent <= predicted + tol

Verdict compare_predicted(const DecayFit& fit, double predicted, double tol,
                          CompareMode mode = CompareMode::one_sided);

std::string to_string(Verdict v);

}  // namespace sobodecay
