#include "mwer/convergence.hpp"

#include <algorithm>
#include <cmath>

#include "mwer/fixtures.hpp"
#include "mwer/rng.hpp"

namespace mwer {

WeightTrajectory simulate_iid(const WeightedBeliefs& candidates,
                              const Measure& truth, std::size_t rounds,
                              std::uint64_t seed) {
  if (truth.state_count() != candidates.state_count())
    throw PreconditionError("truth and candidates live over different outcome spaces");

  WeightTrajectory traj;
  traj.seed = seed;
  std::vector<double> weights;
  weights.reserve(candidates.size());
  for (const auto& e : candidates.entries()) weights.push_back(e.weight);
  traj.rounds.push_back(weights);

  Rng rng(Rng::derive(seed, 0x697264ULL));
  for (std::size_t r = 0; r < rounds; ++r) {
    // Inverse-CDF draw from the truth.
    double u = rng.next_unit();
    std::size_t outcome = truth.state_count() - 1;
    double acc = 0.0;
    for (std::size_t s = 0; s < truth.state_count(); ++s) {
      acc += truth.prob(s);
      if (u < acc) {
        outcome = s;
        break;
      }
    }
    traj.observations.push_back(outcome);

    double best = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      weights[i] *= candidates.entry(i).measure.prob(outcome);
      best = std::max(best, weights[i]);
    }
    if (best <= 0.0)
      throw UpdateUndefinedError(
          "weight recursion is undefined: every candidate gives the observation "
          "probability 0 at round " +
          std::to_string(r + 1));
    for (double& w : weights) w /= best;
    traj.rounds.push_back(weights);
  }
  return traj;
}

namespace {

// -1 / 0 / +1 for b-after-a / tie / a-after-b within one ranking's tiers.
int pair_order(const PreferenceRanking& r, const std::string& a,
               const std::string& b) {
  int tier_a = -1, tier_b = -1;
  for (std::size_t t = 0; t < r.tiers.size(); ++t)
    for (const auto& name : r.tiers[t]) {
      if (name == a) tier_a = static_cast<int>(t);
      if (name == b) tier_b = static_cast<int>(t);
    }
  if (tier_a < 0 || tier_b < 0)
    throw PreconditionError("rankings cover different act sets");
  return tier_a < tier_b ? 1 : tier_a > tier_b ? -1 : 0;
}

}  // namespace

double ranking_divergence(const PreferenceRanking& a, const PreferenceRanking& b) {
  std::vector<std::string> names;
  for (const auto& tier : a.tiers) names.insert(names.end(), tier.begin(), tier.end());
  std::size_t count_b = 0;
  for (const auto& tier : b.tiers) count_b += tier.size();
  if (count_b != names.size())
    throw PreconditionError("rankings cover different act sets");
  if (names.size() < 2) return 0.0;

  double disagreement = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j) {
      int oa = pair_order(a, names[i], names[j]);
      int ob = pair_order(b, names[i], names[j]);
      if (oa != ob) disagreement += (oa == 0 || ob == 0) ? 0.5 : 1.0;
      ++pairs;
    }
  return disagreement / static_cast<double>(pairs);
}

double delivery_likelihood_one(int n_good) {
  if (n_good < 0 || n_good > 1000)
    throw PreconditionError("observation count must lie in [0, 1000]");
  return (1000.0 - n_good) / 1000.0;
}

double delivery_likelihood_ten(int n_good) {
  if (n_good < 0 || n_good > 1000)
    throw PreconditionError("observation count must lie in [0, 1000]");
  if (n_good >= 991) return 0.0;
  double acc = 1.0;
  for (int k = 0; k < 10; ++k) acc *= (1000.0 - n_good - k) / (1000.0 - k);
  return acc;
}

double delivery_weight(int n_good) {
  if (n_good < 0 || n_good > 1000)
    throw PreconditionError("observation count must lie in [0, 1000]");
  if (n_good >= 991) return 0.0;
  return delivery_likelihood_ten(n_good) * 1000.0 / (1000.0 - n_good);
}

DeliveryReport delivery_demo(int n_good) {
  DeliveryReport report;
  report.n_good = n_good;
  report.weight_ten = delivery_weight(n_good);
  report.likelihood_one = delivery_likelihood_one(n_good);
  report.likelihood_ten = delivery_likelihood_ten(n_good);

  Scenario sc = delivery_scenario(report.weight_ten);
  WeightedBeliefs seu_beliefs({{Measure({1.0, 0.0}), 1.0, "Pr1"}});

  for (const auto& [menu_name, menu] : sc.menus()) {
    DeliveryMenuReport mr;
    mr.menu = menu_name;
    for (const Act& a : menu.acts()) {
      mr.act_names.push_back(a.name());
      std::vector<double> payoff_row, regret_row;
      for (std::size_t s = 0; s < sc.states().size(); ++s) {
        payoff_row.push_back(lottery_utility(a.outcome(s), sc.prizes()));
        regret_row.push_back(regret(a, s, menu, sc.prizes()));
      }
      mr.payoffs.push_back(std::move(payoff_row));
      mr.regrets.push_back(std::move(regret_row));
    }
    for (Rule rule : kAllRules) {
      const WeightedBeliefs& b = rule == Rule::seu ? seu_beliefs : sc.beliefs();
      mr.rankings.emplace_back(rule, rank(rule, menu, b, sc.prizes()));
    }
    report.menus.push_back(std::move(mr));
  }
  return report;
}

}  // namespace mwer
