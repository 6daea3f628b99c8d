#include "sobodecay/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sobodecay {

namespace {

const std::set<std::string> kCommonKeys = {"kind", "seed", "out_dir"};

const std::map<std::string, std::set<std::string>> kKindKeys = {
    {"heat",
     {"grid.n", "grid.L", "s", "ell_list", "times.start", "times.stop", "times.count",
      "profile", "profile.sigma", "profile.alpha", "window.eta", "fit.t_lo", "fit.t_hi",
      "fit.tol"}},
    {"cns",
     {"grid.n", "grid.L", "s", "s_list", "cns.amplitude", "cns.beta", "cns.T", "cns.cfl",
      "cns.mu", "cns.lambda", "cns.rho_bar", "cns.pressure_exponent", "cns.sample_stride",
      "cns.monotonicity_tol"}},
    {"kinetic", {"kinetic.nv", "kinetic.v_max"}},
    {"inequalities",
     {"grid.n", "grid.L", "lemma", "trials.count", "band.k_min", "band.k_max", "band.slope",
      "param.p", "param.q", "param.alpha", "param.m", "param.ell", "param.s"}},
    {"fit", {"input", "quantity", "fit.t_lo", "fit.t_hi", "fit.predicted", "fit.tol",
             "fit.mode"}},
};

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  std::ostringstream os;
  os << origin << ":" << line << ": " << msg;
  throw std::runtime_error(os.str());
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::optional<std::string> kind_str;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(origin, lineno, "expected `key = value`");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(origin, lineno, "empty key");
    auto it = cfg.entries.find(key);
    if (it != cfg.entries.end()) {
      std::ostringstream os;
      os << "duplicate key `" << key << "` (first defined at line " << it->second.second << ")";
      fail(origin, lineno, os.str());
    }
    cfg.entries.emplace(key, std::make_pair(value, lineno));
    if (key == "kind") kind_str = value;
  }
  if (!kind_str) fail(origin, 0, "missing required key `kind`");
  auto kk = kKindKeys.find(*kind_str);
  if (kk == kKindKeys.end())
    fail(origin, cfg.entries.at("kind").second, "unknown kind `" + *kind_str + "`");
  if (*kind_str == "heat") cfg.kind = ExperimentKind::heat;
  else if (*kind_str == "cns") cfg.kind = ExperimentKind::cns;
  else if (*kind_str == "kinetic") cfg.kind = ExperimentKind::kinetic;
  else if (*kind_str == "inequalities") cfg.kind = ExperimentKind::inequalities;
  else cfg.kind = ExperimentKind::fit;

  for (const auto& [key, val] : cfg.entries) {
    if (kCommonKeys.count(key) || kk->second.count(key)) continue;
    fail(origin, val.second, "unknown key `" + key + "` for kind `" + *kind_str + "`");
  }

  // the paper-level constraint on the negative index: s < 3/2 for cns runs
  if (cfg.kind == ExperimentKind::cns) {
    for (const std::string key : {"s"}) {
      if (!cfg.has(key)) continue;
      if (cfg.get_double(key) >= 1.5)
        fail(origin, cfg.entries.at(key).second,
             "cns runs require s < 3/2 (negative Sobolev estimates break at s >= 3/2)");
    }
    if (cfg.has("s_list"))
      for (double s : cfg.get_double_list("s_list"))
        if (s >= 1.5)
          fail(origin, cfg.entries.at("s_list").second,
               "cns runs require every s < 3/2");
  }
  return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

namespace {

const std::pair<std::string, int>& require(const ExperimentConfig& c, const std::string& key) {
  auto it = c.entries.find(key);
  if (it == c.entries.end())
    throw std::runtime_error("missing required key `" + key + "`");
  return it->second;
}

}  // namespace

std::string ExperimentConfig::get_string(const std::string& key) const {
  return require(*this, key).first;
}

std::string ExperimentConfig::get_string(const std::string& key,
                                         const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

double ExperimentConfig::get_double(const std::string& key) const {
  const auto& [value, line] = require(*this, key);
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    std::ostringstream os;
    os << "line " << line << ": key `" << key << "`: `" << value << "` is not a number";
    throw std::runtime_error(os.str());
  }
}

double ExperimentConfig::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int ExperimentConfig::get_int(const std::string& key) const {
  const double v = get_double(key);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) {
    std::ostringstream os;
    os << "line " << entries.at(key).second << ": key `" << key << "` must be an integer";
    throw std::runtime_error(os.str());
  }
  return i;
}

int ExperimentConfig::get_int(const std::string& key, int fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::vector<double> ExperimentConfig::get_double_list(const std::string& key) const {
  const auto& [value, line] = require(*this, key);
  std::vector<double> out;
  std::istringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      std::ostringstream os;
      os << "line " << line << ": key `" << key << "`: `" << item << "` is not a number";
      throw std::runtime_error(os.str());
    }
  }
  if (out.empty()) {
    std::ostringstream os;
    os << "line " << line << ": key `" << key << "`: empty list";
    throw std::runtime_error(os.str());
  }
  return out;
}

std::vector<double> ExperimentConfig::get_double_list(
    const std::string& key, const std::vector<double>& fallback) const {
  return has(key) ? get_double_list(key) : fallback;
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream os;
  for (const auto& [key, val] : entries) os << key << " = " << val.first << "\n";
  return os.str();
}

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::heat: return "heat";
    case ExperimentKind::cns: return "cns";
    case ExperimentKind::kinetic: return "kinetic";
    case ExperimentKind::inequalities: return "inequalities";
    default: return "fit";
  }
}

}  // namespace sobodecay
