#include "dpomdp/harness/csv.hpp"

#include <fstream>
#include <iomanip>

#include "dpomdp/errors.hpp"
#include "dpomdp/harness/experiment.hpp"
#include "dpomdp/problems/tiger.hpp"

namespace dpomdp::harness {

namespace {

void prepare(std::ostream& os) { os << std::setprecision(6); }

void join(std::ostream& os, std::span<const double> xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ";" : "") << xs[i];
}

std::ofstream open(const std::filesystem::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + p.string());
  prepare(f);
  return f;
}

}  // namespace

void write_summary_csv(std::ostream& os, std::span<const MetricsSummary> rows) {
  prepare(os);
  os << "label,problem,solver,kernel,p_k,r_d,episodes,undiscounted_mean,undiscounted_se,discounted_mean,"
        "discounted_se,avg_steps,correct,incorrect,other,avg_listens,avg_sampled,avg_checks,observations,"
        "belief_change_total,belief_change_false,belief_change_deceived,"
        "normal_tp,normal_fn,normal_tn,normal_fp,normal_ignore,"
        "deceived_tp,deceived_fn,deceived_tn,deceived_fp,deceived_ignore,aborted,rate_ordering_ok\n";
  for (const auto& m : rows) {
    os << m.label << ',' << to_string(m.problem) << ',' << to_string(m.solver) << ','
       << deception::to_string(m.kernel.kind) << ',' << m.kernel.p_k << ',' << m.kernel.r_d << ',' << m.episodes
       << ',' << m.undiscounted.mean << ',' << m.undiscounted.se << ',' << m.discounted.mean << ','
       << m.discounted.se << ',' << m.avg_steps << ',' << m.correct << ',' << m.incorrect << ',' << m.other << ','
       << m.avg_listens << ',' << m.avg_sampled << ',' << m.avg_checks << ',' << m.observations << ','
       << m.belief_changes.total << ',' << m.belief_changes.from_false << ',' << m.belief_changes.from_deceived;
    for (const auto* c : {&m.normal, &m.deceived})
      os << ',' << c->tp << ',' << c->fn << ',' << c->tn << ',' << c->fp << ',' << c->ignore;
    os << ',' << m.aborted << ',' << (m.rate_ordering_ok ? 1 : 0) << '\n';
  }
}

void write_episodes_csv(std::ostream& os, std::span<const EpisodeResult> episodes, double gamma) {
  prepare(os);
  os << "episode,run,epoch,steps,undiscounted,discounted,terminated,forced_out,aborted,final_action\n";
  for (const auto& e : episodes) {
    const auto& t = e.trajectory;
    os << e.index << ',' << e.run << ',' << e.epoch << ',' << t.steps.size() << ',' << t.undiscounted_return()
       << ',' << t.discounted_return(gamma) << ',' << t.terminated << ',' << t.forced_out << ',' << t.aborted << ','
       << (t.steps.empty() ? -1 : static_cast<long long>(t.steps.back().action)) << '\n';
  }
}

void write_steps_csv(std::ostream& os, std::span<const EpisodeResult> episodes) {
  prepare(os);
  os << "episode,step,state,action,observation,reward,deception_reward,intercepted,is_false,is_deceived,"
        "belief_before,belief_after\n";
  for (const auto& e : episodes) {
    for (std::size_t k = 0; k < e.trajectory.steps.size(); ++k) {
      const auto& st = e.trajectory.steps[k];
      os << e.index << ',' << k << ',' << st.state << ',' << st.action << ',' << st.observation << ',' << st.reward
         << ',' << st.deception_reward << ',' << st.deception.has_value() << ','
         << (st.deception && st.deception->is_false) << ',' << (st.deception && st.deception->is_deceived) << ',';
      join(os, st.belief_before);
      os << ',';
      join(os, st.belief_after);
      os << '\n';
    }
  }
}

void write_observations_csv(std::ostream& os, std::span<const EpisodeResult> episodes) {
  prepare(os);
  os << "episode,step,target,delivered,original,true_obs,is_false,is_deceived,belief_before,belief_after,"
        "category,belief_changed\n";
  for (const auto& e : episodes) {
    for (const auto& r : e.observations) {
      os << r.episode << ',' << r.step << ',' << r.target << ',' << r.delivered << ',' << r.original << ','
         << r.true_obs << ',' << r.is_false << ',' << r.is_deceived << ',' << r.belief_before << ','
         << r.belief_after << ',' << to_string(r.category) << ',' << r.belief_changed << '\n';
    }
  }
}

void write_occupancy_csv(std::ostream& os, const OccupancyGrid& grid) {
  prepare(os);
  os << "y,x,mean_visits\n";
  for (std::size_t y = 0; y < grid.size(); ++y)
    for (std::size_t x = 0; x < grid[y].size(); ++x) os << y << ',' << x << ',' << grid[y][x] << '\n';
}

void write_histogram_csv(std::ostream& os, const Histogram2D& h) {
  prepare(os);
  os << "belief_lo,belief_hi,return_lo,return_hi,count\n";
  for (std::size_t r = 0; r < h.counts.size(); ++r)
    for (std::size_t b = 0; b < h.counts[r].size(); ++b)
      os << h.belief_edges[b] << ',' << h.belief_edges[b + 1] << ',' << h.return_edges[r] << ','
         << h.return_edges[r + 1] << ',' << h.counts[r][b] << '\n';
}

namespace {

void alpha_header(std::ostream& os, std::size_t ns) {
  prepare(os);
  os << "action,action_name";
  for (std::size_t s = 0; s < ns; ++s) os << ",v" << s;
  os << '\n';
}

}  // namespace

void write_alpha_csv(std::ostream& os, const vi::AlphaVectorSet& set, const GenerativeModel& model) {
  alpha_header(os, set.vectors.empty() ? 0 : set.vectors.front().values.size());
  for (const auto& v : set.vectors) {
    os << v.action << ',' << model.action_name(v.action);
    for (double x : v.values) os << ',' << x;
    os << '\n';
  }
}

void write_alpha_csv(std::ostream& os, const lvfa::LinearValueFunction& w, const GenerativeModel& model) {
  alpha_header(os, w.num_states());
  for (ActionId a = 0; a < w.num_actions(); ++a) {
    os << a << ',' << model.action_name(a);
    for (double x : w.weights(a)) os << ',' << x;
    os << '\n';
  }
}

void write_outputs(const std::filesystem::path& dir, const ExperimentConfig& cfg, const ExperimentResult& result) {
  std::filesystem::create_directories(dir);
  const bool tiger = cfg.problem == ProblemKind::Tiger;
  {
    auto f = open(dir / "summary.csv");
    write_summary_csv(f, std::span(&result.summary, 1));
  }
  {
    auto f = open(dir / "episodes.csv");
    write_episodes_csv(f, result.episodes, tiger ? cfg.tiger.discount : cfg.rocksample.discount);
  }
  {
    auto f = open(dir / "steps.csv");
    write_steps_csv(f, result.episodes);
  }
  {
    auto f = open(dir / "observations.csv");
    write_observations_csv(f, result.episodes);
  }
  if (!result.summary.occupancy.empty()) {
    auto f = open(dir / "occupancy.csv");
    write_occupancy_csv(f, result.summary.occupancy);
  }
  if (result.histogram) {
    auto f = open(dir / "belief_hist.csv");
    write_histogram_csv(f, *result.histogram);
  }
  if (tiger && (result.alpha || !result.lvfa_weights.empty())) {
    const PomdpModel model = problems::tiger_model(cfg.tiger);
    auto f = open(dir / "alpha.csv");
    if (result.alpha)
      write_alpha_csv(f, *result.alpha, model);
    else
      write_alpha_csv(f, result.lvfa_weights.back(), model);
  }
}

}  // namespace dpomdp::harness
