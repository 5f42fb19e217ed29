// Command-line front end: builds circuits, runs the simulator, sweeps the
// resource model over system sizes, and executes the verification suite.
//
// Configuration precedence: built-in defaults < JSON config file < --key
// value flags. Unknown config-file keys are rejected. The default output
// directory comes from $SEQPE_OUTDIR (falling back to the working
// directory) and can be overridden with --outdir.
//
// Exit codes: 0 success, 1 validation/config error, 2 verification failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "seqpe/df_circuits.hpp"
#include "seqpe/ethylene.hpp"
#include "seqpe/metrics.hpp"
#include "seqpe/phase.hpp"
#include "seqpe/qpe.hpp"
#include "seqpe/resources.hpp"
#include "seqpe/simulate.hpp"
#include "seqpe/verify.hpp"

namespace {

using nlohmann::json;

struct CircuitConfig {
  std::string variant = "se";  // canonical | se | cu
  unsigned m = 5;
  double tau = 10.0;
  std::string policy;          // default: all-gadget of length m
  bool cat = false;
  bool mr = false;
  double theta = seqpe::ground_state_theta;
  double alpha = seqpe::PPPParams{}.alpha;
  double beta1 = seqpe::PPPParams{}.beta1;
  double beta2 = seqpe::PPPParams{}.beta2;

  seqpe::PPPParams params() const {
    seqpe::PPPParams p;
    p.alpha = alpha;
    p.beta1 = beta1;
    p.beta2 = beta2;
    return p;
  }
};

struct ModelContext {
  seqpe::PauliSum h;
  double lambda = 0;
  double e_mf = 0;
};

ModelContext make_model(const CircuitConfig& cfg) {
  ModelContext ctx;
  auto [h1, h2] = seqpe::build_ppp(cfg.params());
  ctx.h = h1 + h2;
  const seqpe::DenseState mf =
      seqpe::evolve(seqpe::ansatz_circuit(seqpe::mean_field_theta),
                    seqpe::basis_state(4, 0));
  ctx.lambda = seqpe::lambda_correction(h1, h2, mf);
  ctx.e_mf = seqpe::expectation(ctx.h, mf);
  return ctx;
}

seqpe::Circuit make_circuit(const CircuitConfig& cfg, const ModelContext& ctx) {
  const seqpe::TrotterSchedule sched = seqpe::schedule(cfg.tau, cfg.m, ctx.lambda);
  const seqpe::Circuit prep = seqpe::ansatz_circuit(cfg.theta);
  if (cfg.variant == "canonical") {
    return seqpe::canonical_qpe(cfg.m, sched, prep, cfg.params());
  }
  const seqpe::ReferencePhase ref = seqpe::reference_theta(ctx.h, cfg.tau);
  if (cfg.variant == "cu") {
    return seqpe::cu_qpe(cfg.m, sched, prep, ref, cfg.params());
  }
  if (cfg.variant == "se") {
    const std::string bits = cfg.policy.empty() ? std::string(cfg.m, 'g') : cfg.policy;
    const seqpe::VariantPolicy policy =
        seqpe::VariantPolicy::from_string(bits, cfg.cat, cfg.mr);
    return seqpe::se_qpe(cfg.m, sched, prep, seqpe::Circuit(4), policy, ref,
                         cfg.params());
  }
  throw std::invalid_argument("variant must be canonical, se, or cu");
}

double round6(double v) { return std::round(v * 1e6) / 1e6; }

// ------------------------------------------------------------- config file

using Setter = std::function<void(const json&)>;

void apply_config_file(const std::string& path,
                       const std::map<std::string, Setter>& setters) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  json doc = json::parse(in);
  if (!doc.is_object()) throw std::invalid_argument("config file must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw std::invalid_argument("unknown config key: " + key);
    }
    it->second(value);
  }
}

std::string find_config_path(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") return argv[i + 1];
  }
  return {};
}

std::filesystem::path resolve_out(const std::string& outdir, const std::string& name) {
  std::filesystem::path p(name);
  if (p.is_absolute()) return p;
  return std::filesystem::path(outdir) / p;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

template <typename T>
Setter num_setter(T& slot) {
  return [&slot](const json& v) { slot = v.get<T>(); };
}

std::map<std::string, Setter> circuit_setters(CircuitConfig& cfg) {
  return {
      {"variant", num_setter(cfg.variant)}, {"m", num_setter(cfg.m)},
      {"tau", num_setter(cfg.tau)},         {"policy", num_setter(cfg.policy)},
      {"cat", num_setter(cfg.cat)},         {"mr", num_setter(cfg.mr)},
      {"theta", num_setter(cfg.theta)},     {"alpha", num_setter(cfg.alpha)},
      {"beta1", num_setter(cfg.beta1)},     {"beta2", num_setter(cfg.beta2)},
  };
}

void add_circuit_options(CLI::App* app, CircuitConfig& cfg) {
  app->add_option("--variant", cfg.variant, "canonical | se | cu");
  app->add_option("--m", cfg.m, "phase bits");
  app->add_option("--tau", cfg.tau, "evolution time per step");
  app->add_option("--policy", cfg.policy, "per-bit variant string of c/g");
  app->add_flag("--cat", cfg.cat, "fan out the gadget control");
  app->add_flag("--mr", cfg.mr, "measure-and-reset the reference lane");
  app->add_option("--theta", cfg.theta, "ansatz angle");
  app->add_option("--alpha", cfg.alpha, "hopping coefficient");
  app->add_option("--beta1", cfg.beta1, "nearest-neighbour interaction");
  app->add_option("--beta2", cfg.beta2, "cross interaction");
}

// ------------------------------------------------------------------ build

int cmd_build(const CircuitConfig& cfg, const std::string& outdir,
              const std::string& circuit_out, const std::string& summary_out,
              double t_eps) {
  const ModelContext ctx = make_model(cfg);
  const seqpe::Circuit c = make_circuit(cfg, ctx);
  write_text(resolve_out(outdir, circuit_out), seqpe::format_circuit(c));

  const seqpe::CostVector cost = seqpe::measured_costs(c, t_eps);
  json summary = {
      {"variant", cfg.variant},
      {"m", cfg.m},
      {"tau", cfg.tau},
      {"n_qubits", c.n_qubits},
      {"n_cbits", c.n_cbits},
      {"cx_count", cost.cx_count},
      {"cx_depth", cost.cx_depth},
      {"rz_count", cost.rz_count},
      {"rz_depth", cost.rz_depth},
      {"t_count", cost.t_count},
      {"t_depth", cost.t_depth},
      {"total2q_count", seqpe::count(c, seqpe::GateClass::Total2q)},
      {"total2q_depth", seqpe::depth(c, seqpe::GateClass::Total2q)},
  };
  write_text(resolve_out(outdir, summary_out), summary.dump(2) + "\n");
  std::printf("wrote %s (%u qubits, %u cbits) and %s\n", circuit_out.c_str(),
              c.n_qubits, c.n_cbits, summary_out.c_str());
  return 0;
}

// --------------------------------------------------------------- simulate

int cmd_simulate(const CircuitConfig& cfg, const std::string& outdir,
                 const std::string& dist_out, const std::string& stats_out,
                 const std::string& shots_out, std::size_t shots, double p2, double pm,
                 std::uint64_t seed) {
  const ModelContext ctx = make_model(cfg);
  const seqpe::Circuit c = make_circuit(cfg, ctx);
  const unsigned m = cfg.m;

  std::vector<double> raw_dist;
  double modal_share_raw = 0;
  double modal_share_filtered = 0;
  double retention = 1.0;
  std::optional<std::size_t> modal;

  if (shots == 0) {
    raw_dist = seqpe::phase_marginal(c);
    const seqpe::PeakStats stats = seqpe::peak_stats(raw_dist);
    modal = stats.modal;
    modal_share_raw = stats.modal_share;
    modal_share_filtered = stats.modal_share;
  } else {
    std::optional<seqpe::NoiseConfig> noise;
    if (p2 > 0 || pm > 0) {
      noise = seqpe::NoiseConfig{p2, pm, seed};
    }
    const std::vector<seqpe::ShotRecord> records = seqpe::sample(c, shots, noise);
    if (!shots_out.empty()) {
      std::ostringstream os;
      seqpe::write_shots_csv(os, records);
      write_text(resolve_out(outdir, shots_out), os.str());
    }
    raw_dist = seqpe::empirical_distribution(records, m);
    const seqpe::PeakStats raw = seqpe::peak_stats(raw_dist);
    modal_share_raw = raw.modal_share;
    const auto [kept, fstats] = seqpe::filter(records);
    retention = fstats.retention();
    if (!kept.empty()) {
      const seqpe::PeakStats filt =
          seqpe::peak_stats(seqpe::empirical_distribution(kept, m));
      modal = filt.modal;
      modal_share_filtered = filt.modal_share;
    }
  }

  {
    std::ostringstream os;
    seqpe::write_distribution_csv(os, raw_dist, m);
    write_text(resolve_out(outdir, dist_out), os.str());
  }

  json stats = {
      {"modal_share_raw", modal_share_raw},
      {"modal_share_filtered", modal_share_filtered},
      {"retention", retention},
      {"resolution", round6(seqpe::energy_resolution(m, cfg.tau))},
  };
  if (modal) {
    const seqpe::EnergyEstimate est =
        seqpe::reconstruct_energy(*modal, m, cfg.tau, ctx.e_mf);
    stats["modal"] = *modal;
    stats["energy"] = round6(est.energy);
  } else {
    stats["modal"] = nullptr;
    stats["energy"] = nullptr;
  }
  write_text(resolve_out(outdir, stats_out), stats.dump(2) + "\n");
  std::printf("wrote %s and %s\n", dist_out.c_str(), stats_out.c_str());
  return 0;
}

// ------------------------------------------------------------------- scan

void append_scan_row(std::string& csv, unsigned n, const char* method,
                     const seqpe::ScanReport& rep, const seqpe::MethodTotals& mt) {
  char buf[512];
  std::snprintf(
      buf, sizeof buf,
      "%u,%s,%u,%.9g,%u,%llu,%llu,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n",
      n, method, rep.l_retained, rep.tau, rep.m,
      static_cast<unsigned long long>(rep.n_trot),
      static_cast<unsigned long long>(mt.t_eps), mt.totals.cx_count,
      mt.totals.cx_depth, mt.totals.rz_count, mt.totals.rz_depth, mt.totals.t_count,
      mt.totals.t_depth, rep.gains.cx_count, rep.gains.rz_count, rep.gains.cx_depth,
      rep.gains.rz_depth, rep.gain_t_count, rep.gain_t_depth);
  csv += buf;
}

int cmd_scan(const std::string& outdir, const std::string& out, const std::string& df_spec,
             unsigned n_min, unsigned n_max, unsigned n_step, double l_factor,
             std::uint64_t seed, bool spin_block, int order, double eps_chem) {
  seqpe::ScanConfig cfg;
  cfg.trotter_order = order;
  cfg.eps_chem = eps_chem;

  std::vector<seqpe::DFSpec> specs;
  if (!df_spec.empty()) {
    std::ifstream in(df_spec);
    if (!in) throw std::invalid_argument("cannot open DF spec: " + df_spec);
    std::stringstream ss;
    ss << in.rdbuf();
    specs.push_back(seqpe::parse_df_spec(ss.str()));
  } else {
    if (n_step == 0 || n_min < 4 || n_max < n_min) {
      throw std::invalid_argument("invalid synthetic sweep range");
    }
    for (unsigned n = n_min; n <= n_max; n += n_step) {
      if (n % 2 != 0) continue;
      const unsigned l = std::max(1u, static_cast<unsigned>(l_factor * n));
      specs.push_back(seqpe::synthetic_df_spec(n, l, seed, spin_block));
    }
  }

  std::string csv =
      "n,method,l,tau,m,n_trot,t_eps,cx_count,cx_depth,rz_count,rz_depth,"
      "t_count,t_depth,gain_cx_count,gain_rz_count,gain_cx_depth,gain_rz_depth,"
      "gain_t_count,gain_t_depth\n";
  for (const seqpe::DFSpec& spec : specs) {
    if (spec.l() == 0) {
      throw std::invalid_argument("DF spec has no two-body factors (l = 0)");
    }
    const seqpe::ScanReport rep = seqpe::scan(spec, cfg);
    append_scan_row(csv, spec.n, "qpe", rep, rep.qpe);
    append_scan_row(csv, spec.n, "seqpe", rep, rep.se);
  }
  write_text(resolve_out(outdir, out), csv);
  std::printf("wrote %s (%zu system sizes)\n", out.c_str(), specs.size());
  return 0;
}

// ----------------------------------------------------------------- verify

int cmd_verify(bool list, const std::vector<int>& only, const seqpe::PPPParams& params) {
  if (list) {
    for (int id : seqpe::acceptance_ids()) std::printf("%d\n", id);
    return 0;
  }
  const std::set<int> subset(only.begin(), only.end());
  const std::vector<seqpe::CheckResult> results = seqpe::run_acceptance(subset, params);
  bool all_pass = true;
  for (const seqpe::CheckResult& r : results) {
    all_pass = all_pass && r.pass;
    std::printf("[%s] %2d %-32s %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.detail.c_str());
  }
  return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"split-evolution phase-estimation toolkit"};
  app.require_subcommand(1);
  // lets the global --outdir/--config options appear after the subcommand
  app.fallthrough();

  const char* env_outdir = std::getenv("SEQPE_OUTDIR");
  std::string outdir = env_outdir ? env_outdir : ".";
  std::string config_path;
  app.add_option("--outdir", outdir, "output directory");
  app.add_option("--config", config_path, "JSON config file");

  // build
  CircuitConfig build_cfg;
  std::string build_circuit_out = "circuit.txt";
  std::string build_summary_out = "build_summary.json";
  double build_t_eps = 1.0;
  CLI::App* build = app.add_subcommand("build", "construct a circuit and cost summary");
  add_circuit_options(build, build_cfg);
  build->add_option("--circuit-out", build_circuit_out, "circuit file name");
  build->add_option("--summary-out", build_summary_out, "metric summary file name");
  build->add_option("--t-eps", build_t_eps, "T cost per rotation");

  // simulate
  CircuitConfig sim_cfg;
  std::string sim_dist_out = "distribution.csv";
  std::string sim_stats_out = "stats.json";
  std::string sim_shots_out;
  std::size_t sim_shots = 0;
  double sim_p2 = 0, sim_pm = 0;
  std::uint64_t sim_seed = 1;
  CLI::App* simulate = app.add_subcommand("simulate", "run the statevector sampler");
  add_circuit_options(simulate, sim_cfg);
  simulate->add_option("--shots", sim_shots, "shot count (0 = exact distribution)");
  simulate->add_option("--p2", sim_p2, "two-qubit depolarizing rate");
  simulate->add_option("--pm", sim_pm, "measurement flip rate");
  simulate->add_option("--seed", sim_seed, "sampler seed");
  simulate->add_option("--dist-out", sim_dist_out, "distribution CSV name");
  simulate->add_option("--stats-out", sim_stats_out, "stats JSON name");
  simulate->add_option("--shots-out", sim_shots_out, "shot record CSV name");

  // scan
  std::string scan_out = "scan.csv";
  std::string scan_df_spec;
  unsigned scan_n_min = 4, scan_n_max = 30, scan_n_step = 2;
  double scan_l_factor = 2.0;
  std::uint64_t scan_seed = 1;
  bool scan_spin_block = false;
  int scan_order = 2;
  double scan_eps_chem = 1.6e-3;
  CLI::App* scan = app.add_subcommand("scan", "resource-model sweep over system sizes");
  scan->add_option("--df-spec", scan_df_spec, "double-factorized spec JSON path");
  scan->add_option("--n-min", scan_n_min, "smallest system size");
  scan->add_option("--n-max", scan_n_max, "largest system size");
  scan->add_option("--n-step", scan_n_step, "system size step");
  scan->add_option("--l-factor", scan_l_factor, "synthetic leaves per qubit");
  scan->add_option("--seed", scan_seed, "synthetic coefficient seed");
  scan->add_flag("--spin-block", scan_spin_block, "spin-block structure");
  scan->add_option("--order", scan_order, "Trotter order (1 or 2)");
  scan->add_option("--eps-chem", scan_eps_chem, "target accuracy (Ha)");
  scan->add_option("--out", scan_out, "report CSV name");

  // verify
  bool verify_list = false;
  std::vector<int> verify_only;
  CircuitConfig verify_cfg;
  CLI::App* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_flag("--list", verify_list, "print check IDs without running");
  verify->add_option("--only", verify_only, "run only these check IDs");
  verify->add_option("--alpha", verify_cfg.alpha, "hopping coefficient");
  verify->add_option("--beta1", verify_cfg.beta1, "nearest-neighbour interaction");
  verify->add_option("--beta2", verify_cfg.beta2, "cross interaction");

  try {
    const std::string cfg_path = find_config_path(argc, argv);
    if (!cfg_path.empty()) {
      // The config file is scoped to the subcommand named on the command line.
      std::string sub;
      for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "build" || a == "simulate" || a == "scan" || a == "verify") {
          sub = a;
          break;
        }
      }
      std::map<std::string, Setter> setters;
      auto add_common = [&](CircuitConfig& cfg) {
        for (auto& [k, v] : circuit_setters(cfg)) setters.emplace(k, v);
      };
      if (sub == "build") {
        add_common(build_cfg);
        setters.emplace("circuit-out", num_setter(build_circuit_out));
        setters.emplace("summary-out", num_setter(build_summary_out));
        setters.emplace("t-eps", num_setter(build_t_eps));
      } else if (sub == "simulate") {
        add_common(sim_cfg);
        setters.emplace("shots", num_setter(sim_shots));
        setters.emplace("p2", num_setter(sim_p2));
        setters.emplace("pm", num_setter(sim_pm));
        setters.emplace("seed", num_setter(sim_seed));
        setters.emplace("dist-out", num_setter(sim_dist_out));
        setters.emplace("stats-out", num_setter(sim_stats_out));
        setters.emplace("shots-out", num_setter(sim_shots_out));
      } else if (sub == "scan") {
        setters.emplace("df-spec", num_setter(scan_df_spec));
        setters.emplace("n-min", num_setter(scan_n_min));
        setters.emplace("n-max", num_setter(scan_n_max));
        setters.emplace("n-step", num_setter(scan_n_step));
        setters.emplace("l-factor", num_setter(scan_l_factor));
        setters.emplace("seed", num_setter(scan_seed));
        setters.emplace("spin-block", num_setter(scan_spin_block));
        setters.emplace("order", num_setter(scan_order));
        setters.emplace("eps-chem", num_setter(scan_eps_chem));
        setters.emplace("out", num_setter(scan_out));
      } else if (sub == "verify") {
        setters.emplace("alpha", num_setter(verify_cfg.alpha));
        setters.emplace("beta1", num_setter(verify_cfg.beta1));
        setters.emplace("beta2", num_setter(verify_cfg.beta2));
        setters.emplace("only", [&](const json& v) {
          verify_only = v.get<std::vector<int>>();
        });
      } else {
        throw std::invalid_argument("--config requires a subcommand");
      }
      setters.emplace("outdir", num_setter(outdir));
      apply_config_file(cfg_path, setters);
    }

    app.parse(argc, argv);

    if (!outdir.empty() && outdir != ".") {
      std::filesystem::create_directories(outdir);
    }
    if (build->parsed()) {
      return cmd_build(build_cfg, outdir, build_circuit_out, build_summary_out,
                       build_t_eps);
    }
    if (simulate->parsed()) {
      return cmd_simulate(sim_cfg, outdir, sim_dist_out, sim_stats_out, sim_shots_out,
                          sim_shots, sim_p2, sim_pm, sim_seed);
    }
    if (scan->parsed()) {
      return cmd_scan(outdir, scan_out, scan_df_spec, scan_n_min, scan_n_max,
                      scan_n_step, scan_l_factor, scan_seed, scan_spin_block, scan_order,
                      scan_eps_chem);
    }
    if (verify->parsed()) {
      return cmd_verify(verify_list, verify_only, verify_cfg.params());
    }
    return 1;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
