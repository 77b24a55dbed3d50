#include "dpomdp/harness/categorize.hpp"

#include "dpomdp/problems/tiger.hpp"

namespace dpomdp::harness {

using problems::RockSampleState;
namespace rs = problems::rocksample;

std::string_view to_string(ObsCategory c) {
  switch (c) {
    case ObsCategory::TP: return "TP";
    case ObsCategory::FN: return "FN";
    case ObsCategory::TN: return "TN";
    case ObsCategory::FP: return "FP";
    case ObsCategory::Ignore: return "Ignore";
    case ObsCategory::Pending: return "Pending";
    case ObsCategory::NotApplicable: return "NA";
  }
  return "?";
}

BeliefChange attribute_belief_change(double before, double after, bool is_false, bool is_deceived) {
  BeliefChange c;
  c.changed = (before > 0.5) != (after > 0.5);
  c.from_false = c.changed && is_false;
  c.from_deceived = c.changed && is_deceived;
  return c;
}

BeliefChange attribute_belief_change(const ObsRecord& rec) {
  return attribute_belief_change(rec.belief_before, rec.belief_after, rec.is_false, rec.is_deceived);
}

ObsCategory categorize_observation(const ObsRecord& rec, const Trajectory& traj,
                                   const problems::RockSampleConfig& cfg) {
  const auto rock = rec.target;
  const auto where = cfg.rock_positions.at(static_cast<std::size_t>(rock));
  const ActionId check = rs::check(rock);
  bool visited = false;
  for (std::size_t j = static_cast<std::size_t>(rec.step) + 1; j < traj.steps.size(); ++j) {
    const auto& st = traj.steps[j];
    const auto pos = RockSampleState::decode(st.state).position;
    if (pos == where) {
      visited = true;
      if (st.action == rs::kSample) return rec.delivered == rs::kGood ? ObsCategory::TP : ObsCategory::FP;
    }
    if (st.action == check) break;
  }
  if (!visited) return ObsCategory::Ignore;
  return rec.delivered == rs::kGood ? ObsCategory::TN : ObsCategory::FN;
}

namespace {

ObsRecord base_record(int episode, int step, int target, const TrajectoryStep& st, double before, double after) {
  ObsRecord r;
  r.episode = episode;
  r.step = step;
  r.target = target;
  const auto& d = *st.deception;
  r.delivered = d.delivered;
  r.original = d.original;
  r.true_obs = d.true_obs;
  r.is_false = d.is_false;
  r.is_deceived = d.is_deceived;
  r.belief_before = before;
  r.belief_after = after;
  r.belief_changed = attribute_belief_change(r).changed;
  return r;
}

}  // namespace

std::vector<ObsRecord> rocksample_records(int episode, const Trajectory& traj,
                                          const problems::RockSampleConfig& cfg) {
  std::vector<ObsRecord> out;
  for (std::size_t k = 0; k < traj.steps.size(); ++k) {
    const auto& st = traj.steps[k];
    if (!st.deception || st.action < rs::kCheckBase) continue;
    const int rock = static_cast<int>(st.action - rs::kCheckBase);
    const auto idx = static_cast<std::size_t>(rock);
    const double before = idx < st.belief_before.size() ? st.belief_before[idx] : 0.5;
    const double after = idx < st.belief_after.size() ? st.belief_after[idx] : before;
    ObsRecord r = base_record(episode, static_cast<int>(k), rock, st, before, after);
    r.category = categorize_observation(r, traj, cfg);
    out.push_back(r);
  }
  return out;
}

std::vector<ObsRecord> tiger_records(int episode, const Trajectory& traj) {
  std::vector<ObsRecord> out;
  for (std::size_t k = 0; k < traj.steps.size(); ++k) {
    const auto& st = traj.steps[k];
    if (!st.deception) continue;
    const double before = st.belief_before.empty() ? 0.5 : st.belief_before[problems::tiger::kTigerLeft];
    const double after = st.belief_after.empty() ? before : st.belief_after[problems::tiger::kTigerLeft];
    ObsRecord r = base_record(episode, static_cast<int>(k), 0, st, before, after);
    r.category = ObsCategory::NotApplicable;
    out.push_back(r);
  }
  return out;
}

}  // namespace dpomdp::harness
