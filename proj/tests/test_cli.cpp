#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "seqpe/circuit.hpp"
#include "seqpe/resources.hpp"

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
namespace fs = std::filesystem;

namespace {

const fs::path& scratch() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / "seqpe_cli_tests";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

struct RunResult {
  int code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  const fs::path log = scratch() / "command_output.txt";
  std::string cmd = env_prefix.empty() ? std::string() : env_prefix + " ";
  cmd += std::string(SEQPE_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json slurp_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

std::string out_arg() { return "--outdir " + scratch().string() + " "; }

}  // namespace

TEST_CASE("verify subcommand lists and runs checks", "[cli]") {
  const RunResult list = run_cli("verify --list");
  REQUIRE(list.code == 0);
  std::stringstream ss(list.output);
  std::vector<std::string> lines;
  for (std::string line; std::getline(ss, line);) lines.push_back(line);
  REQUIRE(lines.size() == 13);
  REQUIRE(lines.front() == "1");
  REQUIRE(lines.back() == "13");

  const RunResult one = run_cli("verify --only 10");
  REQUIRE(one.code == 0);
  REQUIRE_THAT(one.output, ContainsSubstring("PASS"));

  // perturbed couplings break the frozen spectrum: failure exit code
  const RunResult bad = run_cli("verify --only 1 --beta2 0.11");
  REQUIRE(bad.code == 2);
  REQUIRE_THAT(bad.output, ContainsSubstring("FAIL"));
}

TEST_CASE("build writes a parseable circuit and its cost summary", "[cli]") {
  const RunResult canonical = run_cli(
      out_arg() + "build --variant canonical --m 5 "
      "--circuit-out canon.txt --summary-out canon.json");
  REQUIRE(canonical.code == 0);
  const nlohmann::json summary = slurp_json(scratch() / "canon.json");
  REQUIRE(summary.at("n_qubits").get<unsigned>() == 9);
  REQUIRE(summary.at("n_cbits").get<unsigned>() == 5);
  REQUIRE(summary.at("variant").get<std::string>() == "canonical");
  REQUIRE(summary.at("cx_count").get<double>() > 0);
  REQUIRE(summary.at("total2q_count").get<double>() >=
          summary.at("cx_count").get<double>());
  const seqpe::Circuit c = seqpe::parse_circuit(slurp(scratch() / "canon.txt"));
  REQUIRE(c.n_qubits == 9);
  REQUIRE(c.has_measurement());

  const RunResult cat = run_cli(
      out_arg() + "build --variant se --m 5 --cat "
      "--circuit-out cat.txt --summary-out cat.json");
  REQUIRE(cat.code == 0);
  REQUIRE(slurp_json(scratch() / "cat.json").at("n_qubits").get<unsigned>() == 16);
}

TEST_CASE("build rejects bad variants and policies", "[cli]") {
  REQUIRE(run_cli(out_arg() + "build --variant bogus").code == 1);
  REQUIRE(run_cli(out_arg() + "build --variant se --m 2 --policy xg").code == 1);
  REQUIRE(run_cli(out_arg() + "build --no-such-flag 3").code == 1);
  REQUIRE(run_cli("").code == 1);  // a subcommand is required
}

TEST_CASE("exact simulation reproduces the six-bit energy", "[cli]") {
  const RunResult sim = run_cli(
      out_arg() + "simulate --variant se --m 6 --tau 8 "
      "--dist-out exact_dist.csv --stats-out exact_stats.json");
  REQUIRE(sim.code == 0);
  const nlohmann::json stats = slurp_json(scratch() / "exact_stats.json");
  REQUIRE(stats.at("modal").get<std::size_t>() == 19);
  REQUIRE_THAT(stats.at("energy").get<double>(), WithinAbs(-0.233165, 1e-12));
  REQUIRE_THAT(stats.at("resolution").get<double>(), WithinAbs(0.006136, 1e-12));
  REQUIRE_THAT(stats.at("retention").get<double>(), WithinAbs(1.0, 1e-15));
  REQUIRE(stats.at("modal_share_raw") == stats.at("modal_share_filtered"));

  const std::string dist = slurp(scratch() / "exact_dist.csv");
  REQUIRE_THAT(dist, ContainsSubstring("bitstring,probability\n"));
  REQUIRE_THAT(dist, ContainsSubstring("\n010011,"));  // the modal reading 19
}

TEST_CASE("noisy sampling is reproducible and filterable", "[cli]") {
  const std::string common =
      "simulate --variant se --m 3 --shots 200 --p2 0.01 --pm 0.01 --seed 5 ";
  REQUIRE(run_cli(out_arg() + common +
                  "--dist-out da.csv --stats-out sa.json --shots-out ra.csv")
              .code == 0);
  REQUIRE(run_cli(out_arg() + common +
                  "--dist-out db.csv --stats-out sb.json --shots-out rb.csv")
              .code == 0);
  REQUIRE(slurp(scratch() / "ra.csv") == slurp(scratch() / "rb.csv"));
  REQUIRE(slurp(scratch() / "da.csv") == slurp(scratch() / "db.csv"));
  REQUIRE(slurp(scratch() / "sa.json") == slurp(scratch() / "sb.json"));
  REQUIRE_THAT(slurp(scratch() / "ra.csv"), ContainsSubstring("shot,phase_bits,ed_bits\n"));

  const RunResult noisy = run_cli(
      out_arg() + "simulate --variant se --m 3 --mr --shots 300 "
      "--p2 0.02 --pm 0.02 --seed 9 --stats-out mr_stats.json");
  REQUIRE(noisy.code == 0);
  const nlohmann::json stats = slurp_json(scratch() / "mr_stats.json");
  REQUIRE(stats.at("retention").get<double>() < 1.0);
  REQUIRE(stats.at("retention").get<double>() >= 0.0);
}

TEST_CASE("resource scans cover sweeps and explicit specifications", "[cli]") {
  const RunResult sweep =
      run_cli(out_arg() + "scan --n-min 4 --n-max 12 --n-step 2 --out sweep.csv");
  REQUIRE(sweep.code == 0);
  const std::string csv = slurp(scratch() / "sweep.csv");
  std::stringstream ss(csv);
  std::vector<std::string> lines;
  for (std::string line; std::getline(ss, line);) lines.push_back(line);
  REQUIRE(lines.size() == 11);  // header + (qpe, seqpe) per n in {4,6,8,10,12}
  REQUIRE(lines[0] ==
          "n,method,l,tau,m,n_trot,t_eps,cx_count,cx_depth,rz_count,rz_depth,"
          "t_count,t_depth,gain_cx_count,gain_rz_count,gain_cx_depth,"
          "gain_rz_depth,gain_t_count,gain_t_depth");
  REQUIRE_THAT(lines[1], ContainsSubstring("4,qpe,"));
  REQUIRE_THAT(lines[2], ContainsSubstring("4,seqpe,"));

  const fs::path spec_path = scratch() / "df.json";
  {
    std::ofstream out(spec_path);
    out << seqpe::format_df_spec(seqpe::synthetic_df_spec(6, 5, 2));
  }
  const RunResult df = run_cli(out_arg() + "scan --df-spec " + spec_path.string() +
                               " --out df_scan.csv");
  REQUIRE(df.code == 0);
  const std::string df_csv = slurp(scratch() / "df_scan.csv");
  REQUIRE_THAT(df_csv, ContainsSubstring("\n6,qpe,"));
  REQUIRE_THAT(df_csv, ContainsSubstring("\n6,seqpe,"));

  const fs::path bad_path = scratch() / "bad_df.json";
  {
    std::ofstream out(bad_path);
    out << R"({"n":4,"alphas":[0.1,0.2,0.3,0.4],"betas":[]})";
  }
  REQUIRE(run_cli(out_arg() + "scan --df-spec " + bad_path.string()).code == 1);
  REQUIRE(run_cli(out_arg() + "scan --n-min 9 --n-max 7").code == 1);
}

TEST_CASE("config files seed defaults and flags override them", "[cli]") {
  const fs::path cfg = scratch() / "build_config.json";
  {
    std::ofstream out(cfg);
    out << R"({"variant":"canonical","m":4,"summary-out":"cfg_summary.json"})";
  }
  REQUIRE(run_cli(out_arg() + "build --config " + cfg.string() +
                  " --circuit-out cfg_circuit.txt")
              .code == 0);
  REQUIRE(slurp_json(scratch() / "cfg_summary.json").at("n_qubits").get<unsigned>() == 8);

  // explicit flags win over the config file
  REQUIRE(run_cli(out_arg() + "build --config " + cfg.string() +
                  " --m 3 --circuit-out cfg3.txt --summary-out cfg3.json")
              .code == 0);
  REQUIRE(slurp_json(scratch() / "cfg3.json").at("n_qubits").get<unsigned>() == 7);

  const fs::path bad = scratch() / "bad_config.json";
  {
    std::ofstream out(bad);
    out << R"({"m":4,"bogus":1})";
  }
  const RunResult rej = run_cli(out_arg() + "build --config " + bad.string());
  REQUIRE(rej.code == 1);
  REQUIRE_THAT(rej.output, ContainsSubstring("unknown config key"));
}

TEST_CASE("the output directory comes from the environment", "[cli]") {
  const fs::path env_dir = scratch() / "env_out";
  const RunResult env = run_cli("build --variant canonical --m 2",
                                "SEQPE_OUTDIR=" + env_dir.string());
  REQUIRE(env.code == 0);
  REQUIRE(fs::exists(env_dir / "circuit.txt"));
  REQUIRE(fs::exists(env_dir / "build_summary.json"));

  // --outdir still takes precedence over the environment
  const fs::path flag_dir = scratch() / "flag_out";
  const RunResult flag =
      run_cli("--outdir " + flag_dir.string() + " build --variant canonical --m 2",
              "SEQPE_OUTDIR=" + env_dir.string());
  REQUIRE(flag.code == 0);
  REQUIRE(fs::exists(flag_dir / "circuit.txt"));
}
