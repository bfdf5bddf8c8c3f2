#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mwer/model.hpp"

namespace mwer {

// The five decision rules under one scoring-and-ranking interface.
//   seu  — expected utility under a single measure (higher is better)
//   mmeu — worst-case expected utility over the measures (higher is better)
//   mer  — worst-case expected regret over the measures (lower is better)
//   mwer — worst-case weight-scaled expected regret (lower is better)
//   reg  — worst-case state regret, no probabilities (lower is better)
enum class Rule { seu, reg, mer, mwer, mmeu };

std::string_view rule_name(Rule r);
Rule parse_rule(std::string_view name);
inline constexpr Rule kAllRules[] = {Rule::seu, Rule::reg, Rule::mer, Rule::mwer,
                                     Rule::mmeu};

// True for rules whose scores improve downward (regret family).
bool rule_minimizes(Rule r);

// Ordered tiers of act names, best tier first, plus the raw rule scores in
// menu order. Two acts share a tier when their scores differ by at most
// kTieEpsilon from the tier leader's score.
struct PreferenceRanking {
  std::vector<std::vector<std::string>> tiers;
  std::vector<std::pair<std::string, double>> scores;

  double score_of(std::string_view act_name) const;
  bool same_tiers(const PreferenceRanking& other) const;
};

// State-wise shortfall of f against the best act in the menu. Requires
// f to be a member of the menu.
double regret(const Act& f, std::size_t state, const Menu& menu,
              const PrizeSpace& prizes);

// Max over states of the state regret; the reg score.
double worst_case_regret(const Act& f, const Menu& menu, const PrizeSpace& prizes);

double expected_regret(const Act& f, const Menu& menu, const Measure& pr,
                       const PrizeSpace& prizes);

// Max over the measure set of expected regret; the mer score.
double max_expected_regret(const Act& f, const Menu& menu,
                           std::span<const Measure> measures,
                           const PrizeSpace& prizes);

// Max over entries of weight * expected regret; the mwer score.
double max_weighted_expected_regret(const Act& f, const Menu& menu,
                                    const WeightedBeliefs& beliefs,
                                    const PrizeSpace& prizes);

// Raw score of one act under a rule; always the un-negated quantity the
// rule is defined by (regret for the regret family, expected utility
// otherwise). seu requires beliefs with exactly one measure.
double rule_score(Rule rule, const Act& f, const Menu& menu,
                  const WeightedBeliefs& beliefs, const PrizeSpace& prizes);

// Ranks the whole menu (optionally extended with `extend` first). Ties are
// grouped within kTieEpsilon of each tier leader; within a tier acts keep
// menu order.
PreferenceRanking rank(Rule rule, const Menu& menu, const WeightedBeliefs& beliefs,
                       const PrizeSpace& prizes, std::span<const Act> extend = {});

// Orientation-adjusted score difference: positive means f is strictly
// better than g under the rule, zero is indifference.
double pref_delta(Rule rule, const Menu& menu, const WeightedBeliefs& beliefs,
                  const PrizeSpace& prizes, std::string_view f_name,
                  std::string_view g_name);

}  // namespace mwer
