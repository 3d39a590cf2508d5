#pragma once

#include <vector>

#include "wm/discrete_model.hpp"

namespace wm {

// Observation of one modality at one time: a hard outcome index, a soft
// likelihood vector over outcomes (used for hierarchical evidence), or
// missing.
struct SoftObs {
  int index = -1;
  std::vector<double> likelihood;

  SoftObs() = default;
  SoftObs(int hard) : index(hard) {}  // NOLINT: implicit by design
  explicit SoftObs(std::vector<double> lik) : likelihood(std::move(lik)) {}

  bool missing() const { return index < 0 && likelihood.empty(); }
  bool hard() const { return index >= 0; }
};

// obs[t][modality]; may cover only a prefix of the horizon, and individual
// entries may be missing.
using ObsSeq = std::vector<std::vector<SoftObs>>;

ObsSeq hard_observations(const std::vector<std::vector<std::size_t>>& outcomes);

struct StatePosterior {
  std::vector<std::vector<Categorical>> q;  // [factor][t]

  std::size_t num_factors() const { return q.size(); }
  std::size_t horizon() const { return q.empty() ? 0 : q[0].size(); }
  std::vector<Categorical> slice(std::size_t t) const {
    std::vector<Categorical> s;
    s.reserve(q.size());
    for (const auto& qf : q) s.push_back(qf[t]);
    return s;
  }
};

struct FreeEnergyTrace {
  std::vector<double> values;  // nats, one entry per sweep (plus the initial state)
  bool converged = true;

  double final_value() const { return values.empty() ? 0.0 : values.back(); }
};

struct InferOptions {
  double tol = 1e-6;
  std::size_t max_sweeps = 64;
  // When set, messages use Dirichlet-expected log parameters instead of the
  // model tensors' logs.
  const DirichletModel* params = nullptr;
};

struct InferResult {
  StatePosterior posterior;
  FreeEnergyTrace trace;
};

// Mean-field fixed point over factors and times: sequential coordinate
// updates swept forward then backward in time until the largest marginal
// change falls below tol or max_sweeps is reached.
InferResult infer_states(const DiscreteLayerModel& m, const ObsSeq& obs,
                         const std::vector<ActionVec>& actions, InferOptions opts = {});

// E_q[ln q - ln p(o, s)] under the mean-field posterior, using the model's
// own tensors (clamped logs).
double variational_free_energy(const DiscreteLayerModel& m, const StatePosterior& post,
                               const ObsSeq& obs, const std::vector<ActionVec>& actions);

struct ExactPosterior {
  StatePosterior posterior;
  double log_evidence = 0.0;
};

// Exact smoothing marginals over the joint state chain. Requires the joint
// state space to be at most 1e6 configurations.
ExactPosterior exact_posterior_oracle(const DiscreteLayerModel& m, const ObsSeq& obs,
                                      const std::vector<ActionVec>& actions);

// Dirichlet count updates from one inferred episode; increments scale with
// `rate` and never decrease counts.
DirichletModel update_parameters(const DirichletModel& dir, const DiscreteLayerModel& m,
                                 const StatePosterior& post, const ObsSeq& obs,
                                 const std::vector<ActionVec>& actions, double rate);

}  // namespace wm
