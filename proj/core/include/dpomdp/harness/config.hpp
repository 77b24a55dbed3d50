#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "dpomdp/core/kv_config.hpp"
#include "dpomdp/deception/kernel.hpp"
#include "dpomdp/lvfa/linear_value_function.hpp"
#include "dpomdp/pomcp/pomcp.hpp"
#include "dpomdp/problems/rocksample.hpp"
#include "dpomdp/problems/tiger.hpp"

namespace dpomdp::harness {

enum class ProblemKind { Tiger, RockSample };
enum class SolverKind { Vi, Lvfa, Pomcp };

std::string_view to_string(ProblemKind p);
std::string_view to_string(SolverKind s);
ProblemKind parse_problem(std::string_view text);
SolverKind parse_solver(std::string_view text);

struct HistogramSpec {
  int belief_bins = 20;
  double return_min = -70.0;
  double return_max = 15.0;
  int return_bins = 34;
};

struct ExperimentConfig {
  std::string name;
  ProblemKind problem = ProblemKind::Tiger;
  SolverKind solver = SolverKind::Lvfa;
  deception::KernelSpec kernel;
  /// Evaluation episodes (vi, pomcp). LVFA pools its validation episodes.
  int episodes = 500;
  std::uint64_t master_seed = 1;
  /// 0 means one worker per hardware thread.
  unsigned workers = 0;

  problems::TigerConfig tiger;
  problems::RockSampleConfig rocksample;
  int vi_horizon = 8;
  lvfa::LvfaConfig lvfa;
  int lvfa_runs = 2;
  pomcp::PomcpConfig pomcp;
  HistogramSpec histogram;

  /// Written by run_experiment when non-empty.
  std::filesystem::path out_dir;

  void validate() const;
  std::string label() const;
};

/// Reads an experiment from flat keys (problem, solver, kernel, p_k, r_d,
/// episodes, seed, workers, tiger.*, rocksample.*, vi.*, lvfa.*, pomcp.*,
/// hist.*). Unknown keys are rejected.
ExperimentConfig experiment_from_kv(const KvConfig& kv);
ExperimentConfig load_experiment(const std::filesystem::path& path);

}  // namespace dpomdp::harness
