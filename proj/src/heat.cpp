#include "sobodecay/heat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sobodecay {

void HeatExperiment::validate() const {
  if (profile.has_value() == field.has_value())
    throw std::invalid_argument("HeatExperiment: exactly one of profile/field required");
  if (s < 0.0) throw std::invalid_argument("HeatExperiment: s must be >= 0");
  for (double ell : ell_list)
    if (ell < -s) throw std::invalid_argument("HeatExperiment: every ell must be >= -s");
  if (times.size() < 2) throw std::invalid_argument("HeatExperiment: need >= 2 sample times");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] <= times[i - 1])
      throw std::invalid_argument("HeatExperiment: times must be strictly increasing");
}

double HeatExperiment::window_t_max() const {
  if (!field) return std::numeric_limits<double>::infinity();
  const double L = field->grid.L;
  return window_eta * (L / (2.0 * M_PI)) * (L / (2.0 * M_PI));
}

std::vector<double> HeatExperiment::geometric_times(double t0, double t1, int count) {
  if (!(t0 > 0.0) || !(t1 > t0) || count < 2)
    throw std::invalid_argument("geometric_times: need 0 < t0 < t1 and count >= 2");
  std::vector<double> ts(count);
  const double ratio = std::pow(t1 / t0, 1.0 / (count - 1));
  double t = t0;
  for (int i = 0; i < count; ++i, t *= ratio) ts[i] = t;
  ts.back() = t1;
  return ts;
}

SpectralField evolve_heat(const SpectralField& f, double t) {
  if (t < 0.0) throw std::invalid_argument("evolve_heat: t must be >= 0");
  return apply_multiplier(f, MultiplierSpec::heat_semigroup(t));
}

namespace {

std::string ell_label(double ell) {
  std::ostringstream os;
  os << "Hl:" << ell;
  return os.str();
}

}  // namespace

std::map<std::string, NormTrajectory> decay_trajectory(const HeatExperiment& exp) {
  exp.validate();
  std::map<std::string, NormTrajectory> out;
  for (double ell : exp.ell_list) out[ell_label(ell)].label = ell_label(ell);
  out["H-s"].label = "H-s";

  if (exp.oracle_backed()) {
    for (double t : exp.times) {
      for (double ell : exp.ell_list)
        out[ell_label(ell)].add(t, heat_norm_exact(*exp.profile, ell, t));
      out["H-s"].add(t, heat_norm_exact(*exp.profile, -exp.s, t));
    }
    return out;
  }

  out["Linf"].label = "Linf";
  SpectralField f0 = exp.field->space == Space::spectral
                         ? *exp.field
                         : transform(*exp.field, Space::spectral);
  remove_mean(f0);
  const double t_max = exp.window_t_max();
  for (double t : exp.times) {
    const bool flagged = t > t_max;
    SpectralField ft = evolve_heat(f0, t);
    for (double ell : exp.ell_list)
      out[ell_label(ell)].add(t, sobolev_norm(ft, ell), flagged);
    out["H-s"].add(t, sobolev_norm(ft, -exp.s), flagged);
    out["Linf"].add(t, lp_norm(ft, p_infinity), flagged);
  }
  return out;
}

double lyapunov_bound(double E0, double C0, double ell, double s, double t) {
  if (!(E0 > 0.0) || !(C0 > 0.0))
    throw std::invalid_argument("lyapunov_bound: E0 and C0 must be positive");
  const double q = ell + s;
  if (!(q > 0.0)) throw std::invalid_argument("lyapunov_bound: ell + s must be positive");
  return std::pow(std::pow(E0, -1.0 / q) + C0 * t / q, -q);
}

bool VerdictReport::all_pass() const {
  return std::all_of(claims.begin(), claims.end(),
                     [](const ClaimResult& c) { return c.verdict == Verdict::pass; });
}

VerdictReport verify_heat_theorem(const HeatExperiment& exp, double fit_t_lo, double fit_t_hi,
                                  double exponent_tol) {
  exp.validate();
  if (!exp.oracle_backed())
    throw std::invalid_argument("verify_heat_theorem: radial-profile initial data required");

  VerdictReport report;
  const auto traj = decay_trajectory(exp);

  // (a) interpolation with constant 1 between H^{-s}, H^l, H^{l+1}
  double max_ratio = 0.0;
  for (double ell : exp.ell_list) {
    if (ell + exp.s <= 0.0) continue;
    const double theta = 1.0 / (ell + 1.0 + exp.s);
    for (double t : exp.times) {
      const double lo = heat_norm_exact(*exp.profile, -exp.s, t);
      const double mid = heat_norm_exact(*exp.profile, ell, t);
      const double hi = heat_norm_exact(*exp.profile, ell + 1.0, t);
      const double bound = std::pow(lo, theta) * std::pow(hi, 1.0 - theta);
      if (bound > 0.0) max_ratio = std::max(max_ratio, mid / bound);
    }
  }
  report.claims.push_back({"interp_ratio",
                           max_ratio <= 1.0 + 1e-8 ? Verdict::pass : Verdict::fail, max_ratio,
                           1.0, 1e-8, "max H^l / (H^{-s}^theta H^{l+1}^{1-theta})"});

  // (b) negative-norm monotonicity
  const auto& neg = traj.at("H-s");
  double worst_increase = 0.0;
  for (std::size_t i = 1; i < neg.samples.size(); ++i) {
    const double prev = neg.samples[i - 1].value;
    if (prev > 0.0)
      worst_increase = std::max(worst_increase, neg.samples[i].value / prev - 1.0);
  }
  report.claims.push_back({"neg_norm_monotone",
                           worst_increase <= 1e-10 ? Verdict::pass : Verdict::fail,
                           worst_increase, 0.0, 1e-10, "max relative step increase of H^{-s}"});

  // (c) decay exponents, one-sided against -(ell+s)/2
  for (double ell : exp.ell_list) {
    if (ell + exp.s <= 0.0) continue;
    const double predicted = -(ell + exp.s) / 2.0;
    const auto fit = fit_exponent(traj.at(ell_label(ell)), fit_t_lo, fit_t_hi);
    const Verdict v = compare_predicted(fit, predicted, exponent_tol, CompareMode::one_sided);
    std::ostringstream id;
    id << "decay_exponent_l=" << ell;
    report.claims.push_back({id.str(), v, fit.exponent, predicted, exponent_tol,
                             fit.verdict_eligible() ? "one-sided fit" : "window too short"});
  }
  return report;
}

}  // namespace sobodecay
