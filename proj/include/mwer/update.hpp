#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mwer/model.hpp"

namespace mwer {

// Result of likelihood updating. `groups[i]` lists the source entry indices
// whose conditionals coincided into `updated.entry(i)`; `dropped` lists the
// sources with Pr(E) = 0; `source_posteriors[i]` is the pre-grouping weight
// of source i, weight_i * Pr_i(E) / max_j(weight_j * Pr_j(E)) (0 if dropped).
struct UpdateResult {
  WeightedBeliefs updated;
  std::vector<std::size_t> dropped;
  std::vector<std::vector<std::size_t>> groups;
  std::vector<double> source_posteriors;
};

// max over entries of weight * Pr(E); zero exactly when E is null.
double event_weight(const WeightedBeliefs& beliefs, const Event& e);

// Standard conditional Pr(. | E); requires Pr(E) > 0.
Measure condition(const Measure& pr, const Event& e);

// Drops zero-likelihood measures, conditions the survivors, groups survivors
// whose conditionals coincide (L-infinity within kGroupTolerance), and gives
// each group the max over its members of weight * Pr(E), normalized by the
// best product overall. Undefined (throws) when event_weight is 0.
UpdateResult likelihood_update(const WeightedBeliefs& beliefs, const Event& e);

// Conditions each surviving measure and resets every weight to 1; the
// unweighted baseline. Coinciding conditionals collapse to one entry.
WeightedBeliefs measure_by_measure_update(const WeightedBeliefs& beliefs,
                                          const Event& e);

// Keeps measures whose likelihood ratio Pr(E)/max Pr'(E) strictly exceeds
// the threshold, conditions them, and resets weights to 1.
WeightedBeliefs epstein_schneider_update(const WeightedBeliefs& beliefs,
                                         const Event& e, double threshold);

// Left fold of likelihood_update over the events; agrees with the direct
// update on the intersection. An empty list returns the beliefs unchanged.
UpdateResult sequential_update(const WeightedBeliefs& beliefs,
                               std::span<const Event> events);

// True iff no measure gives E positive weighted probability; such an event
// cannot be conditioned on and acts differing only on it are indifferent.
bool is_null_event(const WeightedBeliefs& beliefs, const Event& e);

double measure_prob(const Measure& pr, const Event& e);

}  // namespace mwer
