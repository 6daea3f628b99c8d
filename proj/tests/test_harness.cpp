#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sobodecay/harness.hpp"

using namespace sobodecay;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("values, comments and types") {
    const auto cfg = parse_config_text(
        "kind = heat\n"
        "# a comment\n"
        "s = 1.25   # trailing comment\n"
        "ell_list = 0, 1, 2\n"
        "times.count = 40\n",
        "<test>");
    CHECK(cfg.kind == ExperimentKind::heat);
    CHECK(cfg.get_double("s") == 1.25);
    CHECK(cfg.get_int("times.count") == 40);
    CHECK(cfg.get_double_list("ell_list") == std::vector<double>{0.0, 1.0, 2.0});
    CHECK(cfg.get_double("window.eta", 0.02) == 0.02);  // fallback
  }

  SUBCASE("duplicate keys name both lines") {
    try {
      parse_config_text("kind = heat\ns = 1\ns = 2\n", "<test>");
      FAIL("expected duplicate-key error");
    } catch (const std::exception& e) {
      const std::string msg = e.what();
      CHECK(msg.find("duplicate") != std::string::npos);
      CHECK(msg.find("line 2") != std::string::npos);
      CHECK(msg.find(":3") != std::string::npos);
    }
  }

  SUBCASE("unknown keys are rejected per kind") {
    CHECK_THROWS(parse_config_text("kind = heat\nkinetic.nv = 65\n", "<test>"));
    CHECK_THROWS(parse_config_text("kind = nonsense\n", "<test>"));
    CHECK_THROWS(parse_config_text("s = 1\n", "<test>"));  // missing kind
  }

  SUBCASE("negative-index ceiling for fluid runs") {
    CHECK_THROWS(parse_config_text("kind = cns\ns_list = 0.5, 1.5\n", "<test>"));
    CHECK_NOTHROW(parse_config_text("kind = cns\ns_list = 0.5, 1.4\n", "<test>"));
  }

  SUBCASE("canonical form is sorted and stable") {
    const auto a = parse_config_text("kind = heat\ns = 1\nell_list = 0\n", "<t>");
    const auto b = parse_config_text("ell_list = 0\ns = 1\nkind = heat\n", "<t>");
    CHECK(a.canonical() == b.canonical());
  }
}

TEST_CASE("content hash is the 64-bit FNV-1a of the payload") {
  CHECK(content_hash("") == "cbf29ce484222325");
  CHECK(content_hash("a") == "af63dc4c8601ec8c");
  CHECK(content_hash("ab") != content_hash("ba"));
}

TEST_CASE("trajectory csv round trip") {
  TempDir tmp("sobodecay_test_csv");
  std::map<std::string, NormTrajectory> data;
  auto& tr = data["Hl:0"];
  tr.label = "Hl:0";
  tr.add(0.1, 1.2345678901234567);
  tr.add(1.0, 0.5, true);
  auto& tr2 = data["mass"];
  tr2.label = "mass";
  tr2.add(0.1, -3.0e-17);

  const fs::path file = tmp.path / "traj.csv";
  write_trajectories_csv(file, data);
  const std::string text = slurp(file);
  CHECK(text.rfind("t,quantity,label,value,flag\n", 0) == 0);

  const auto back = read_trajectories_csv(file);
  REQUIRE(back.count("Hl:0") == 1);
  REQUIRE(back.count("mass") == 1);
  CHECK(back.at("Hl:0").samples[0].value == 1.2345678901234567);
  CHECK(back.at("Hl:0").samples[1].flagged);
  CHECK(back.at("mass").samples[0].value == -3.0e-17);

  // byte determinism
  const fs::path file2 = tmp.path / "traj2.csv";
  write_trajectories_csv(file2, data);
  CHECK(slurp(file) == slurp(file2));
}

TEST_CASE("verdict json determinism and schema") {
  TempDir tmp("sobodecay_test_json");
  ClaimResult c;
  c.claim_id = "demo";
  c.verdict = Verdict::pass;
  c.measured = -0.751;
  c.predicted = -0.75;
  c.tol = 0.03;
  c.mode = "two-sided";
  c.ref = "sharp decay";
  const fs::path file = tmp.path / "v.json";
  write_verdicts_json(file, {c});
  const std::string text = slurp(file);
  for (const char* key :
       {"claim_id", "paper_ref", "mode", "predicted", "measured", "tol", "verdict"})
    CHECK(text.find(key) != std::string::npos);
  const fs::path file2 = tmp.path / "v2.json";
  write_verdicts_json(file2, {c});
  CHECK(slurp(file) == slurp(file2));
}

TEST_CASE("run records are content-addressed and write-once") {
  TempDir tmp("sobodecay_test_run");
  const std::string base =
      "kind = heat\n"
      "grid.n = 16\n"
      "grid.L = 1.0\n"
      "s = 1.0\n"
      "ell_list = 0\n"
      "times.start = 0.0001\n"
      "times.stop = 0.001\n"
      "times.count = 10\n"
      "seed = 5\n";
  const auto cfg =
      parse_config_text(base + "out_dir = " + tmp.path.string() + "\n", "<test>");
  const RunRecord rec = run(cfg);
  CHECK(fs::exists(rec.dir / "trajectory.csv"));
  CHECK(fs::exists(rec.dir / "verdicts.json"));
  CHECK(fs::exists(rec.dir / "manifest.json"));
  CHECK(fs::exists(rec.dir / "config.resolved"));
  CHECK(rec.run_id == content_hash(std::string(kCodeVersion) + "\n" + cfg.canonical()));

  CHECK_THROWS(run(cfg));             // write-once
  CHECK_NOTHROW(run(cfg, true));      // explicit overwrite

  // a different seed is a different record
  const auto cfg2 = parse_config_text(
      base + "out_dir = " + tmp.path.string() + "\nwindow.eta = 0.05\n", "<test>");
  const RunRecord rec2 = run(cfg2);
  CHECK(rec2.run_id != rec.run_id);

  const fs::path svg = emit_plot(rec, "Hl:0");
  CHECK(fs::exists(svg));
  CHECK(slurp(svg).find("<svg") != std::string::npos);
  CHECK_THROWS(emit_plot(rec, "nope"));
}
