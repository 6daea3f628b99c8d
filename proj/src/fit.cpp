#include "sobodecay/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace sobodecay {

DecayFit fit_exponent(const NormTrajectory& traj, double t_lo, double t_hi) {
  std::vector<double> xs, ys;
  for (const auto& s : traj.samples) {
    if (s.flagged || s.t < t_lo || s.t > t_hi) continue;
    if (!(s.value > 0.0))
      throw std::invalid_argument("fit_exponent: nonpositive value in fit window");
    xs.push_back(std::log1p(s.t));
    ys.push_back(std::log(s.value));
  }
  const int n = static_cast<int>(xs.size());
  if (n < 8) throw std::invalid_argument("fit_exponent: fewer than 8 unflagged samples in window");

  double sx = 0.0, sy = 0.0;
  for (int i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_exponent: degenerate time window");

  DecayFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  fit.t_lo = t_lo;
  fit.t_hi = t_hi;
  fit.n_samples = n;
  double ss_res = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = ys[i] - (fit.intercept + fit.exponent * xs[i]);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  fit.stderr_exponent = n > 2 ? std::sqrt(ss_res / (n - 2) / sxx) : 0.0;
  return fit;
}

Verdict compare_predicted(const DecayFit& fit, double predicted, double tol, CompareMode mode) {
  if (!fit.verdict_eligible()) return Verdict::inconclusive;
  const bool ok = mode == CompareMode::two_sided
                      ? std::abs(fit.exponent - predicted) <= tol
                      : fit.exponent <= predicted + tol;
  return ok ? Verdict::pass : Verdict::fail;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "inconclusive";
  }
}

}  // namespace sobodecay
