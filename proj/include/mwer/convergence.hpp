#pragma once

#include <cstdint>
#include <vector>

#include "mwer/model.hpp"
#include "mwer/rules.hpp"

namespace mwer {

// Weight vectors over the candidate measures, one per round; rounds[0] holds
// the prior weights and every round's maximum is exactly 1.
struct WeightTrajectory {
  std::vector<std::vector<double>> rounds;
  std::vector<std::size_t> observations;  // drawn state per round
  std::uint64_t seed = 0;
};

// Draws i.i.d. observations from `truth`; after each one, every candidate's
// weight is multiplied by the probability that candidate assigns to the
// observation and the vector is renormalized so its maximum is 1. For
// product (i.i.d.) candidate measures this recursion is likelihood updating
// on the product space, without materializing it.
WeightTrajectory simulate_iid(const WeightedBeliefs& candidates,
                              const Measure& truth, std::size_t rounds,
                              std::uint64_t seed);

// Normalized pairwise disagreement between two rankings over the same act
// set: opposed strict orders count 1, a strict order against a tie counts
// 1/2, divided by the number of pairs. Zero iff the tier structures match;
// 1 for exactly reversed strict rankings.
double ranking_divergence(const PreferenceRanking& a, const PreferenceRanking& b);

// Likelihood of "the first n of 1000 items are good" under the one-broken
// hypothesis: (1000 - n) / 1000.
double delivery_likelihood_one(int n_good);

// Same likelihood under the ten-broken hypothesis, the ratio of binomial
// counts C(1000-n,10)/C(1000,10), computed factor by factor so intermediates
// stay in [0, 1]. Zero for n >= 991.
double delivery_likelihood_ten(int n_good);

// Post-update weight of the ten-broken hypothesis after observing n good
// items, with both prior weights 1; the one-broken hypothesis keeps weight 1.
double delivery_weight(int n_good);

// Everything the delivery walkthrough reports for one menu.
struct DeliveryMenuReport {
  std::string menu;
  std::vector<std::string> act_names;
  std::vector<std::vector<double>> payoffs;  // [act][state]
  std::vector<std::vector<double>> regrets;  // [act][state]
  std::vector<std::pair<Rule, PreferenceRanking>> rankings;
};

struct DeliveryReport {
  int n_good = 0;
  double weight_ten = 1.0;
  double likelihood_one = 1.0;
  double likelihood_ten = 1.0;
  std::vector<DeliveryMenuReport> menus;
};

// Runs the delivery problem end to end at a given observation count: builds
// the two-hypothesis beliefs with weights (1, delivery_weight(n)), scores
// every rule on both menus, and tabulates payoffs and regrets. The seu
// column is expected utility under the one-broken hypothesis.
DeliveryReport delivery_demo(int n_good);

}  // namespace mwer
