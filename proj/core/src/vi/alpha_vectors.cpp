// SPDX-License-Identifier: MIT
#include "dpomdp/vi/alpha_vectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dpomdp/errors.hpp"

namespace dpomdp::vi {

namespace {

constexpr double kEps = 1e-12;

bool weakly_dominates(const AlphaVector& a, const AlphaVector& b) {
  for (std::size_t i = 0; i < a.values.size(); ++i)
    if (a.values[i] < b.values[i] - kEps) return false;
  return true;
}

// Upper envelope over p = b(s0) in [0, 1] for two-state vectors.
std::vector<AlphaVector> envelope_2d(std::vector<AlphaVector> v) {
  auto c = [&](std::size_t i) { return v[i].values[1]; };
  auto m = [&](std::size_t i) { return v[i].values[0] - v[i].values[1]; };

  std::size_t cur = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (c(i) > c(cur) + kEps || (std::abs(c(i) - c(cur)) <= kEps && m(i) > m(cur) + kEps)) cur = i;
  }
  std::vector<std::size_t> keep{cur};
  double p = 0.0;
  for (;;) {
    std::size_t next = v.size();
    double best_p = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (m(j) <= m(cur) + kEps) continue;
      const double pj = std::max(p, (c(cur) - c(j)) / (m(j) - m(cur)));
      if (pj < best_p - kEps || (next != v.size() && std::abs(pj - best_p) <= kEps && m(j) > m(next))) {
        best_p = pj;
        next = j;
      }
    }
    if (next == v.size() || best_p > 1.0 + kEps) break;
    keep.push_back(next);
    cur = next;
    p = best_p;
  }
  std::sort(keep.begin(), keep.end());
  std::vector<AlphaVector> out;
  out.reserve(keep.size());
  for (std::size_t i : keep) out.push_back(std::move(v[i]));
  return out;
}

}  // namespace

double AlphaVector::dot(std::span<const double> b) const {
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += values[i] * b[i];
  return s;
}

double AlphaVectorSet::value(std::span<const double> b) const { return best_action(*this, b).value; }

AlphaVectorSet zero_horizon(const PomdpModel& model) {
  AlphaVectorSet set;
  set.vectors.push_back({std::vector<double>(model.num_states(), 0.0), 0});
  return set;
}

std::vector<AlphaVector> prune_dominated(std::vector<AlphaVector> vectors) {
  if (vectors.size() <= 1) return vectors;
  // Stable order by action so the lowest action wins among duplicates.
  std::stable_sort(vectors.begin(), vectors.end(),
                   [](const AlphaVector& a, const AlphaVector& b) { return a.action < b.action; });
  std::vector<AlphaVector> kept;
  for (auto& cand : vectors) {
    bool dominated = false;
    for (const auto& k : kept) {
      if (weakly_dominates(k, cand)) {
        dominated = true;
        break;
      }
    }
    if (dominated) continue;
    std::erase_if(kept, [&](const AlphaVector& k) { return weakly_dominates(cand, k); });
    kept.push_back(std::move(cand));
  }
  if (!kept.empty() && kept.front().values.size() == 2 && kept.size() > 1) kept = envelope_2d(std::move(kept));
  return kept;
}

AlphaVectorSet bellman_backup(const PomdpModel& model, const AlphaVectorSet& gamma_t, const ViConfig& cfg) {
  const std::size_t ns = model.num_states(), na = model.num_actions(), no = model.num_observations();
  if (gamma_t.vectors.empty()) throw InvalidModel("bellman_backup: empty vector set");
  const double work = static_cast<double>(ns) * static_cast<double>(na) * static_cast<double>(no) *
                      static_cast<double>(gamma_t.size());
  if (work > cfg.work_budget) throw ModelTooLarge("bellman_backup: problem exceeds the work budget");
  const double gamma = model.discount();

  std::vector<AlphaVector> all;
  for (ActionId a = 0; a < na; ++a) {
    AlphaVector r{std::vector<double>(ns), a};
    bool any_continues = false;
    for (StateId s = 0; s < ns; ++s) {
      r.values[s] = model.expected_reward(s, a);
      if (!model.ends_episode(s, a)) any_continues = true;
    }
    std::vector<AlphaVector> acc{r};
    if (any_continues) {
      for (ObsId o = 0; o < no; ++o) {
        std::vector<AlphaVector> g;
        g.reserve(gamma_t.size());
        for (const auto& alpha : gamma_t.vectors) {
          AlphaVector gv{std::vector<double>(ns, 0.0), a};
          for (StateId s = 0; s < ns; ++s) {
            if (model.ends_episode(s, a)) continue;
            double v = 0.0;
            for (StateId n = 0; n < ns; ++n) v += model.transition(s, a, n) * model.observation(a, n, o) * alpha.values[n];
            gv.values[s] = gamma * v;
          }
          g.push_back(std::move(gv));
        }
        if (cfg.prune) g = prune_dominated(std::move(g));
        std::vector<AlphaVector> next;
        next.reserve(acc.size() * g.size());
        for (const auto& x : acc) {
          for (const auto& y : g) {
            AlphaVector sum{x.values, a};
            for (std::size_t i = 0; i < ns; ++i) sum.values[i] += y.values[i];
            next.push_back(std::move(sum));
          }
        }
        acc = cfg.prune ? prune_dominated(std::move(next)) : std::move(next);
      }
    }
    for (auto& v : acc) all.push_back(std::move(v));
  }
  AlphaVectorSet out;
  out.vectors = cfg.prune ? prune_dominated(std::move(all)) : std::move(all);
  out.horizon = gamma_t.horizon + 1;
  return out;
}

ActionValue best_action(const AlphaVectorSet& set, std::span<const double> b) {
  ActionValue best{0, -std::numeric_limits<double>::infinity()};
  for (const auto& v : set.vectors) {
    const double val = v.dot(b);
    if (val > best.value + kEps || (std::abs(val - best.value) <= kEps && v.action < best.action)) {
      best = {v.action, std::max(val, best.value)};
    }
  }
  return best;
}

AlphaVectorSet solve(const PomdpModel& model, int horizon, const ViConfig& cfg) {
  if (horizon < 0) throw DomainError("solve: negative horizon");
  AlphaVectorSet set = zero_horizon(model);
  for (int h = 0; h < horizon; ++h) set = bellman_backup(model, set, cfg);
  return set;
}

}  // namespace dpomdp::vi
