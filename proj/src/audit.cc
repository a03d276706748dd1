// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "psm/audit.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "psm/algorithms.h"
#include "psm/element_set.h"

namespace psm {

namespace {

// Exponential-mechanism selection law over candidate scores, Δq = 1.
std::vector<double> MechanismLaw(std::span<const double> scores,
                                 double epsilon0) {
  double best = *std::max_element(scores.begin(), scores.end());
  std::vector<double> probs(scores.size());
  double total = 0;
  for (size_t i = 0; i < scores.size(); ++i) {
    probs[i] = std::exp(0.5 * epsilon0 * (scores[i] - best));
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return probs;
}

struct AuditContext {
  AuditMode mode;
  const DecomposableObjective* obj_a;
  const DecomposableObjective* obj_b;
  const Matroid* matroid;
  const ThresholdSamples* thresholds;
  double eta = 0;
  double epsilon0 = 0;
  int rank = 0;
  int total_rounds = 0;
  double max_sequences = 0;
  std::vector<SequenceProb>* out;
};

// Walks the full selection tree. Candidate sets depend only on the partial
// basis, never on the agent data, so both inputs branch identically. The
// basis is passed by value: outer-round resets must not leak into the
// caller's frame.
void Enumerate(const AuditContext& ctx, int round, std::vector<int> basis,
               std::vector<double>& y, std::vector<int>& picks, double prob_a,
               double prob_b) {
  if (round == ctx.total_rounds) {
    ctx.out->push_back({picks, prob_a, prob_b});
    return;
  }
  const int inner = round % ctx.rank;
  if (inner == 0) basis.clear();

  std::vector<int> candidates = FeasibleExtensions(*ctx.matroid, basis);
  if (candidates.empty()) {
    ctx.out->push_back({picks, prob_a, prob_b});
    return;
  }
  if (ctx.out->size() + candidates.size() > ctx.max_sequences) {
    throw std::invalid_argument("audit sequence space too large");
  }

  std::vector<double> scores_a(candidates.size()), scores_b(candidates.size());
  for (size_t i = 0; i < candidates.size(); ++i) {
    const int u = candidates[i];
    const double target = ctx.mode == AuditMode::kMonotone
                              ? std::min(y[u] + ctx.eta, 1.0)
                              : y[u] + ctx.eta * (1.0 - y[u]);
    scores_a[i] = DefinitionalGain(*ctx.obj_a, *ctx.thresholds, y, u, target);
    scores_b[i] = DefinitionalGain(*ctx.obj_b, *ctx.thresholds, y, u, target);
  }
  std::vector<double> law_a = MechanismLaw(scores_a, ctx.epsilon0);
  std::vector<double> law_b = MechanismLaw(scores_b, ctx.epsilon0);

  for (size_t i = 0; i < candidates.size(); ++i) {
    const int u = candidates[i];
    const double target = ctx.mode == AuditMode::kMonotone
                              ? std::min(y[u] + ctx.eta, 1.0)
                              : y[u] + ctx.eta * (1.0 - y[u]);
    const double saved = y[u];
    y[u] = target;
    picks.push_back(u);
    Enumerate(ctx, round + 1, SetWith(basis, u), y, picks,
              prob_a * law_a[i], prob_b * law_b[i]);
    picks.pop_back();
    y[u] = saved;
  }
}

// Smallest ε ≥ 0 such that Σ_U max(0, P(U) − e^ε·Q(U)) ≤ δ.
double MinEpsilonForDelta(const std::vector<SequenceProb>& sequences,
                          bool a_over_b, double delta, double hi) {
  auto excess = [&](double eps) {
    const double factor = std::exp(eps);
    double total = 0;
    for (const auto& seq : sequences) {
      const double p = a_over_b ? seq.prob_a : seq.prob_b;
      const double q = a_over_b ? seq.prob_b : seq.prob_a;
      total += std::max(0.0, p - factor * q);
    }
    return total;
  };
  if (excess(0) <= delta) return 0;
  double lo = 0;
  for (int iter = 0; iter < 200 && excess(hi) > delta; ++iter) hi *= 2;
  for (int iter = 0; iter < 100; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (excess(mid) <= delta) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

nlohmann::json AuditReport::ToJson(bool include_sequences) const {
  nlohmann::json j{
      {"epsilon_claimed", epsilon_claimed},
      {"epsilon_observed", epsilon_observed},
      {"delta", delta},
      {"delta_excess", delta_excess},
      {"max_log_ratio", max_log_ratio},
      {"epsilon0", epsilon0},
  };
  if (include_sequences) {
    nlohmann::json seqs = nlohmann::json::array();
    for (const auto& seq : sequences) {
      seqs.push_back({{"picks", seq.picks},
                      {"prob_a", seq.prob_a},
                      {"prob_b", seq.prob_b}});
    }
    j["sequences"] = std::move(seqs);
  }
  return j;
}

AuditReport AuditEnumerate(AuditMode mode, const DecomposableObjective& a,
                           const DecomposableObjective& b,
                           std::shared_ptr<const Matroid> matroid, double eta,
                           const PrivacyBudget& budget, int64_t samples,
                           uint64_t threshold_seed, double max_sequences) {
  budget.Validate();
  if (a.ground_size() != b.ground_size() ||
      a.ground_size() != matroid->ground_size()) {
    throw std::invalid_argument("objectives and matroid must share the ground set");
  }
  if (std::abs(a.lambda() - 1.0) > 1e-9 || std::abs(b.lambda() - 1.0) > 1e-9) {
    throw std::invalid_argument("audit requires 1-decomposable objectives");
  }
  if (!(eta > 0) || eta > 1) throw std::invalid_argument("eta must be in (0,1]");

  const int rank = matroid->rank();
  const int t_rounds = DeriveRounds(eta);

  DecomposableObjective obj_a = a;
  DecomposableObjective obj_b = b;
  std::shared_ptr<const Matroid> mat = matroid;
  RoundBudget round_budget;
  if (mode == AuditMode::kMeasured) {
    obj_a = PadWithDummies(a, rank);
    obj_b = PadWithDummies(b, rank);
    mat = std::make_shared<AugmentedMatroid>(matroid,
                                             matroid->ground_size() + rank);
    round_budget = Eps0Nonmonotone(budget);
  } else {
    round_budget = Eps0Monotone(budget);
  }
  const int n = obj_a.ground_size();
  const double depth = static_cast<double>(rank) * t_rounds;
  if (std::pow(static_cast<double>(n), depth) > max_sequences) {
    throw std::invalid_argument("audit sequence space too large");
  }

  ThresholdSamples thresholds(n, samples, threshold_seed);

  AuditReport report;
  report.delta = budget.delta;
  report.epsilon0 = round_budget.epsilon0;
  const double log_term = std::log(1.0 / budget.delta);
  report.epsilon_claimed =
      mode == AuditMode::kMonotone
          ? (std::exp(round_budget.epsilon0 / 2) - 1.0) * (4.0 + log_term)
          : (14.0 + 4.0 * log_term) * round_budget.epsilon0;

  AuditContext ctx;
  ctx.mode = mode;
  ctx.obj_a = &obj_a;
  ctx.obj_b = &obj_b;
  ctx.matroid = mat.get();
  ctx.thresholds = &thresholds;
  ctx.eta = eta;
  ctx.epsilon0 = round_budget.epsilon0;
  ctx.rank = rank;
  ctx.total_rounds = rank * t_rounds;
  ctx.max_sequences = max_sequences;
  ctx.out = &report.sequences;

  std::vector<int> picks;
  std::vector<double> y(n, 0.0);
  Enumerate(ctx, 0, {}, y, picks, 1.0, 1.0);

  double sum_a = 0, sum_b = 0;
  for (const auto& seq : report.sequences) {
    sum_a += seq.prob_a;
    sum_b += seq.prob_b;
    if (seq.prob_a > 0 && seq.prob_b > 0) {
      report.max_log_ratio =
          std::max(report.max_log_ratio,
                   std::abs(std::log(seq.prob_a / seq.prob_b)));
    }
  }
  if (std::abs(sum_a - 1.0) > 1e-9 || std::abs(sum_b - 1.0) > 1e-9) {
    throw std::runtime_error("audit probabilities do not sum to one");
  }

  const double hi0 = std::max(report.max_log_ratio, 1e-6);
  report.epsilon_observed =
      std::max(MinEpsilonForDelta(report.sequences, true, budget.delta, hi0),
               MinEpsilonForDelta(report.sequences, false, budget.delta, hi0));

  auto excess_at = [&](bool a_over_b) {
    const double factor = std::exp(report.epsilon_claimed);
    double total = 0;
    for (const auto& seq : report.sequences) {
      const double p = a_over_b ? seq.prob_a : seq.prob_b;
      const double q = a_over_b ? seq.prob_b : seq.prob_a;
      total += std::max(0.0, p - factor * q);
    }
    return total;
  };
  report.delta_excess = std::max(excess_at(true), excess_at(false));
  return report;
}

}  // namespace psm
