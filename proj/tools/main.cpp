// dpomdp: run experiments, sweeps and analytical checks from the shell.
#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "dpomdp/analysis/analysis.hpp"
#include "dpomdp/errors.hpp"
#include "dpomdp/harness/config.hpp"
#include "dpomdp/harness/csv.hpp"
#include "dpomdp/harness/experiment.hpp"
#include "dpomdp/problems/tiger.hpp"
#include "dpomdp/vi/alpha_vectors.hpp"

namespace {

using namespace dpomdp;
using namespace dpomdp::harness;

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> episodes;
  std::optional<unsigned> workers;
  std::optional<std::string> kernel;
  std::optional<double> p_k;
  std::optional<double> r_d;
  std::optional<int> simulations;
  std::optional<int> epochs;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--episodes", o.episodes, "Evaluation episodes");
  cmd->add_option("--workers", o.workers, "Worker threads (0 = all cores)");
  cmd->add_option("--kernel", o.kernel, "none|prob|rand|oppo");
  cmd->add_option("--p-k", o.p_k, "Prob kernel deceptive rate");
  cmd->add_option("--r-d", o.r_d, "Reward per deceived observation");
  cmd->add_option("--simulations", o.simulations, "POMCP simulations per decision");
  cmd->add_option("--epochs", o.epochs, "LVFA training epochs");
}

ExperimentConfig build_config(const Overrides& o) {
  KvConfig kv = o.config.empty() ? KvConfig{} : KvConfig::load(o.config);
  if (o.seed) kv.set("seed", std::to_string(*o.seed));
  if (o.episodes) kv.set("episodes", std::to_string(*o.episodes));
  if (o.workers) kv.set("workers", std::to_string(*o.workers));
  if (o.kernel) kv.set("kernel", *o.kernel);
  auto set_double = [&](const char* key, double v) {
    std::ostringstream ss;
    ss << std::setprecision(17) << v;
    kv.set(key, ss.str());
  };
  if (o.p_k) set_double("p_k", *o.p_k);
  if (o.r_d) set_double("r_d", *o.r_d);
  if (o.simulations) kv.set("pomcp.simulations", std::to_string(*o.simulations));
  if (o.epochs) kv.set("lvfa.epochs", std::to_string(*o.epochs));
  return experiment_from_kv(kv);
}

void print_summary(const MetricsSummary& m) {
  std::cout << std::fixed << std::setprecision(2);
  std::cout << m.label << ": episodes " << m.episodes << ", undiscounted " << m.undiscounted.mean << " +- "
            << m.undiscounted.se << ", discounted " << m.discounted.mean << " +- " << m.discounted.se
            << ", steps " << m.avg_steps;
  if (m.problem == ProblemKind::Tiger)
    std::cout << ", correct " << m.correct << ", incorrect " << m.incorrect << ", other " << m.other
              << ", listens " << m.avg_listens;
  else
    std::cout << ", sampled " << m.avg_sampled << ", checks " << m.avg_checks << ", aborted " << m.aborted;
  std::cout << ", belief changes " << m.belief_changes.total << "/" << m.belief_changes.from_false << "/"
            << m.belief_changes.from_deceived << '\n';
  std::cout.unsetf(std::ios::floatfield);
}

int cmd_run(const Overrides& o, const std::string& out) {
  ExperimentConfig cfg = build_config(o);
  cfg.out_dir = out;
  print_summary(run_experiment(cfg).summary);
  return 0;
}

int cmd_sweep(const Overrides& o, const std::string& out, const std::vector<std::string>& kernels) {
  std::vector<MetricsSummary> rows;
  for (const auto& k : kernels) {
    Overrides ok = o;
    ok.kernel = k;
    ExperimentConfig cfg = build_config(ok);
    cfg.name = cfg.label();
    if (!out.empty()) cfg.out_dir = std::filesystem::path(out) / cfg.name;
    rows.push_back(run_experiment(cfg).summary);
    print_summary(rows.back());
  }
  if (!out.empty()) {
    std::filesystem::create_directories(out);
    std::ofstream f(std::filesystem::path(out) / "summary.csv", std::ios::binary);
    write_summary_csv(f, rows);
  }
  return 0;
}

int cmd_analyze(const std::string& out, double p_t, double p_k, long trials, std::uint64_t seed) {
  using namespace dpomdp::analysis;
  const double prob_rate = p_t * p_k;
  const double eps = 1e-9;
  const auto ratio_hi = belief_ratio(p_t, 0.0).ratio;
  std::ostringstream csv;
  csv << std::setprecision(6) << "quantity,p_t,p_k,value\n";
  csv << "belief_ratio_bound," << p_t << ",," << ratio_hi << '\n';
  csv << "belief_ratio_p0_half," << p_t << ",," << belief_ratio(p_t, 0.5).ratio << '\n';
  csv << "belief_ratio_p0_one," << p_t << ",," << belief_ratio(p_t, 1.0 - eps).ratio << '\n';
  struct Row {
    const char* kernel;
    double rate;
  };
  const Row rows[] = {{"none", p_t}, {"prob", prob_rate}, {"rand", 0.5}};
  Rng rng = make_stream(seed, 0);
  for (const auto& r : rows) {
    for (int steps : {2, 4}) {
      TrapOptions opt;
      opt.sensor_accuracy = p_t;
      csv << "trap_fail_p" << steps << "_" << r.kernel << ',' << p_t << ',' << p_k << ','
          << trap_fail_prob(r.rate, steps) << '\n';
      csv << "trap_fail_mc_p" << steps << "_" << r.kernel << ',' << p_t << ',' << p_k << ','
          << trap_fail_mc(r.rate, steps, trials, rng, opt) << '\n';
    }
  }
  std::cout << csv.str();
  if (!out.empty()) {
    std::filesystem::create_directories(out);
    std::ofstream f(std::filesystem::path(out) / "analysis.csv", std::ios::binary);
    f << csv.str();
  }
  return 0;
}

int cmd_export_alpha(const Overrides& o, const std::string& solver, int horizon, const std::string& out) {
  ExperimentConfig cfg = build_config(o);
  if (cfg.problem != ProblemKind::Tiger) throw ConfigError("export-alpha supports the tiger problem only");
  const PomdpModel model = problems::tiger_model(cfg.tiger);
  std::ostringstream csv;
  if (solver == "vi") {
    write_alpha_csv(csv, vi::solve(model, horizon), model);
  } else if (solver == "lvfa") {
    Rng rng = make_stream(cfg.master_seed, 0);
    write_alpha_csv(csv, lvfa::train(model, cfg.kernel, cfg.lvfa, rng).value, model);
  } else {
    throw ConfigError("export-alpha: solver must be vi or lvfa");
  }
  if (out.empty() || out == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream f(out, std::ios::binary);
    f << csv.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deceptive-observation POMDP toolkit"};
  app.require_subcommand(1);

  Overrides run_o, sweep_o, alpha_o;
  std::string run_out, sweep_out, analyze_out, alpha_out;

  auto* run = app.add_subcommand("run", "Run one experiment");
  run->add_option("--config", run_o.config, "Experiment config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", run_out, "Output directory for CSVs");
  add_overrides(run, run_o);

  auto* sweep = app.add_subcommand("sweep", "Run a config under several kernels");
  std::vector<std::string> kernels{"none", "prob", "rand", "oppo"};
  sweep->add_option("--config", sweep_o.config, "Experiment config file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", sweep_out, "Output directory");
  sweep->add_option("--kernels", kernels, "Kernels to run")->delimiter(',');
  add_overrides(sweep, sweep_o);

  auto* analyze = app.add_subcommand("analyze", "Print belief-ratio and trap quantities");
  double p_t = 0.85, p_k = 0.6 / 0.85;
  long trials = 1000000;
  std::uint64_t seed = 1;
  analyze->add_option("--out", analyze_out, "Directory for analysis.csv");
  analyze->add_option("--p-t", p_t, "Sensor accuracy")->check(CLI::Range(0.5, 1.0));
  analyze->add_option("--p-k", p_k, "Prob kernel deceptive rate")->check(CLI::Range(0.0, 1.0));
  analyze->add_option("--trials", trials, "Monte-Carlo trials")->check(CLI::PositiveNumber);
  analyze->add_option("--seed", seed, "Seed");

  auto* alpha = app.add_subcommand("export-alpha", "Write Tiger alpha vectors as CSV");
  std::string solver = "vi";
  int horizon = 8;
  alpha->add_option("--config", alpha_o.config, "Experiment config file")->check(CLI::ExistingFile);
  alpha->add_option("--solver", solver, "vi|lvfa")->check(CLI::IsMember({"vi", "lvfa"}));
  alpha->add_option("--horizon", horizon, "VI horizon")->check(CLI::NonNegativeNumber);
  alpha->add_option("--out", alpha_out, "Output CSV (default stdout)");
  add_overrides(alpha, alpha_o);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(run_o, run_out);
    if (*sweep) return cmd_sweep(sweep_o, sweep_out, kernels);
    if (*analyze) return cmd_analyze(analyze_out, p_t, p_k, trials, seed);
    if (*alpha) return cmd_export_alpha(alpha_o, solver, horizon, alpha_out);
  } catch (const dpomdp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
