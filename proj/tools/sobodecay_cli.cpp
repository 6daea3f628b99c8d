#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "sobodecay/harness.hpp"
#include "sobodecay/verify.hpp"

namespace fs = std::filesystem;
using namespace sobodecay;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

int combine(int a, int b) {
  if (a == kExitFail || b == kExitFail) return kExitFail;
  if (a == kExitInconclusive || b == kExitInconclusive) return kExitInconclusive;
  return kExitPass;
}

int cmd_run(const std::string& config_path, bool overwrite) {
  const RunRecord record = run(parse_config(config_path), overwrite);
  std::cout << record.run_id << " -> " << record.dir.string() << " ["
            << (record.exit_status == 0
                    ? "pass"
                    : record.exit_status == 3 ? "inconclusive" : "fail")
            << "]\n";
  return record.exit_status;
}

int cmd_batch(const std::string& dir, int jobs, bool overwrite) {
  std::vector<fs::path> configs;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".cfg")
      configs.push_back(entry.path());
  std::sort(configs.begin(), configs.end());
  if (configs.empty()) {
    std::cerr << "batch: no .cfg files in " << dir << "\n";
    return kExitUsage;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<int> status{kExitPass};
  std::mutex io;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= configs.size()) return;
      int code;
      std::string line;
      try {
        const RunRecord rec = run(parse_config(configs[i].string()), overwrite);
        code = rec.exit_status;
        line = configs[i].filename().string() + ": " + rec.run_id + " [" +
               (code == 0 ? "pass" : code == 3 ? "inconclusive" : "fail") + "]";
      } catch (const std::exception& e) {
        code = kExitFail;
        line = configs[i].filename().string() + ": error: " + e.what();
      }
      {
        std::lock_guard<std::mutex> lock(io);
        std::cout << line << "\n";
      }
      int expected = status.load();
      while (!status.compare_exchange_weak(expected, combine(expected, code))) {
      }
    }
  };
  std::vector<std::thread> pool;
  const int n = std::max(1, jobs);
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return status.load();
}

int cmd_plot(const std::string& run_id, const std::string& quantity) {
  const fs::path dir = output_root() / run_id;
  if (!fs::exists(dir / "trajectory.csv")) {
    std::cerr << "plot: no record " << run_id << " under " << output_root().string() << "\n";
    return kExitUsage;
  }
  std::cout << emit_plot(dir, quantity).string() << "\n";
  return kExitPass;
}

int cmd_verify(const std::string& suite) {
  const auto results = verify_suite(suite);
  bool any_fail = false, any_inconclusive = false;
  for (const auto& res : results) {
    for (const auto& c : res.report.claims) {
      std::printf("[%s] %-40s %-12s measured % .6g  target % .6g  tol %.3g  (%s)\n",
                  res.suite.c_str(), c.claim_id.c_str(), to_string(c.verdict).c_str(),
                  c.measured, c.predicted, c.tol, c.mode.c_str());
      any_fail |= c.verdict == Verdict::fail;
      any_inconclusive |= c.verdict == Verdict::inconclusive;
    }
    std::printf("[%s] done in %.2f s\n", res.suite.c_str(), res.seconds);
  }
  return any_fail ? kExitFail : (any_inconclusive ? kExitInconclusive : kExitPass);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral decay simulation and verification suite"};
  app.require_subcommand(1);

  std::string config_path, batch_dir, run_id, quantity, suite = "all";
  bool overwrite = false;
  int jobs = 1;

  auto* run_cmd = app.add_subcommand("run", "execute one experiment config");
  run_cmd->add_option("config", config_path, "config file")->required();
  run_cmd->add_flag("--overwrite", overwrite, "replace an existing record");

  auto* batch_cmd = app.add_subcommand("batch", "run every .cfg in a directory");
  batch_cmd->add_option("dir", batch_dir, "directory of configs")->required();
  batch_cmd->add_option("--jobs", jobs, "parallel workers")->default_val(1);
  batch_cmd->add_flag("--overwrite", overwrite, "replace existing records");

  auto* plot_cmd = app.add_subcommand("plot", "render a recorded quantity as SVG");
  plot_cmd->add_option("run_id", run_id, "record id")->required();
  plot_cmd->add_option("quantity", quantity, "trajectory key")->required();

  auto* verify_cmd = app.add_subcommand("verify", "run acceptance suites");
  verify_cmd->add_option("suite", suite, "suite name or `all`");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(config_path, overwrite);
    if (batch_cmd->parsed()) return cmd_batch(batch_dir, jobs, overwrite);
    if (plot_cmd->parsed()) return cmd_plot(run_id, quantity);
    return cmd_verify(suite);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
