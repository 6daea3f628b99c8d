#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "sobodecay/config.hpp"
#include "sobodecay/fit.hpp"
#include "sobodecay/heat.hpp"

namespace sobodecay {

inline constexpr const char* kCodeVersion = "sobodecay-1.0";

struct RunRecord {
  std::string run_id;  // content hash of resolved config + code version
  ExperimentConfig config;
  std::filesystem::path dir;
  std::vector<std::string> outputs;
  int exit_status = 0;
  bool all_pass = true;
  bool any_inconclusive = false;
};

/// Deterministic 64-bit FNV-1a content hash, hex-encoded.
std::string content_hash(const std::string& payload);

/// Root for run outputs: $SOBODECAY_OUT or ./out.
std::filesystem::path output_root();

/// Execute one experiment: stream trajectories to CSV, then verdict JSON
/// and the manifest. Write-once per run_id unless overwrite is set.
RunRecord run(const ExperimentConfig& config, bool overwrite = false);

/// CSV schema: `t,quantity,label,value,flag`, 17 significant digits, LF.
void write_trajectories_csv(const std::filesystem::path& path,
                            const std::map<std::string, NormTrajectory>& trajectories);
std::map<std::string, NormTrajectory> read_trajectories_csv(
    const std::filesystem::path& path);

void write_verdicts_json(const std::filesystem::path& path,
                         const std::vector<ClaimResult>& claims);

/// Deterministic log-log SVG plot of one quantity with fitted and
/// predicted-slope guide lines.
std::filesystem::path emit_plot(const RunRecord& record, const std::string& quantity);
std::filesystem::path emit_plot(const std::filesystem::path& run_dir,
                                const std::string& quantity);

std::string format_double(double v);  // 17 significant digits, locale-free

}  // namespace sobodecay
