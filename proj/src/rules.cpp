#include "mwer/rules.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mwer {

std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::seu: return "seu";
    case Rule::reg: return "reg";
    case Rule::mer: return "mer";
    case Rule::mwer: return "mwer";
    case Rule::mmeu: return "mmeu";
  }
  return "?";
}

Rule parse_rule(std::string_view name) {
  for (Rule r : kAllRules)
    if (rule_name(r) == name) return r;
  throw ValidationError("unknown rule '" + std::string(name) + "'");
}

bool rule_minimizes(Rule r) {
  return r == Rule::reg || r == Rule::mer || r == Rule::mwer;
}

double PreferenceRanking::score_of(std::string_view act_name) const {
  for (const auto& [name, score] : scores)
    if (name == act_name) return score;
  throw MembershipError("act '" + std::string(act_name) + "' is not ranked");
}

bool PreferenceRanking::same_tiers(const PreferenceRanking& other) const {
  if (tiers.size() != other.tiers.size()) return false;
  for (std::size_t i = 0; i < tiers.size(); ++i) {
    auto a = tiers[i];
    auto b = other.tiers[i];
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
  }
  return true;
}

namespace {

// Per-menu evaluation cache: act-by-state utilities and state maxima.
struct MenuEval {
  std::vector<std::vector<double>> utilities;  // [act][state]
  std::vector<double> state_max;

  MenuEval(const Menu& menu, const PrizeSpace& prizes) {
    const std::size_t n = menu.state_count();
    utilities.resize(menu.size());
    state_max.assign(n, 0.0);
    for (std::size_t a = 0; a < menu.size(); ++a) {
      utilities[a].resize(n);
      for (std::size_t s = 0; s < n; ++s)
        utilities[a][s] = lottery_utility(menu.act(a).outcome(s), prizes);
    }
    for (std::size_t s = 0; s < n; ++s) {
      double best = utilities[0][s];
      for (std::size_t a = 1; a < menu.size(); ++a)
        best = std::max(best, utilities[a][s]);
      state_max[s] = best;
    }
  }

  double regret(std::size_t act, std::size_t state) const {
    return state_max[state] - utilities[act][state];
  }

  double expected_regret(std::size_t act, const Measure& pr) const {
    double r = 0.0;
    for (std::size_t s = 0; s < state_max.size(); ++s)
      r += pr.prob(s) * regret(act, s);
    return r;
  }

  double expected_utility(std::size_t act, const Measure& pr) const {
    double u = 0.0;
    for (std::size_t s = 0; s < state_max.size(); ++s)
      u += pr.prob(s) * utilities[act][s];
    return u;
  }

  double score(Rule rule, std::size_t act, const WeightedBeliefs& beliefs) const {
    switch (rule) {
      case Rule::reg: {
        double worst = 0.0;
        for (std::size_t s = 0; s < state_max.size(); ++s)
          worst = std::max(worst, regret(act, s));
        return worst;
      }
      case Rule::mer: {
        double worst = 0.0;
        for (const auto& e : beliefs.entries())
          worst = std::max(worst, expected_regret(act, e.measure));
        return worst;
      }
      case Rule::mwer: {
        double worst = 0.0;
        for (const auto& e : beliefs.entries())
          worst = std::max(worst, e.weight * expected_regret(act, e.measure));
        return worst;
      }
      case Rule::seu:
        if (beliefs.size() != 1)
          throw PreconditionError(
              "seu requires beliefs with exactly one measure, got " +
              std::to_string(beliefs.size()));
        return expected_utility(act, beliefs.entry(0).measure);
      case Rule::mmeu: {
        double worst = expected_utility(act, beliefs.entry(0).measure);
        for (std::size_t i = 1; i < beliefs.size(); ++i)
          worst = std::min(worst, expected_utility(act, beliefs.entry(i).measure));
        return worst;
      }
    }
    throw PreconditionError("unknown rule");
  }
};

std::size_t member_index(const Act& f, const Menu& menu) {
  std::size_t i = menu.index_of(f.name());
  if (!menu.act(i).same_outcomes(f))
    throw MembershipError("act '" + f.name() +
                          "' differs from the menu act of the same name");
  return i;
}

void check_spaces(const Act& f, const Menu& menu) {
  if (f.state_count() != menu.state_count())
    throw PreconditionError("act and menu live over different state spaces");
}

}  // namespace

double regret(const Act& f, std::size_t state, const Menu& menu,
              const PrizeSpace& prizes) {
  check_spaces(f, menu);
  if (state >= menu.state_count())
    throw PreconditionError("state index outside the state space");
  MenuEval eval(menu, prizes);
  return eval.regret(member_index(f, menu), state);
}

double worst_case_regret(const Act& f, const Menu& menu, const PrizeSpace& prizes) {
  check_spaces(f, menu);
  MenuEval eval(menu, prizes);
  std::size_t i = member_index(f, menu);
  double worst = 0.0;
  for (std::size_t s = 0; s < menu.state_count(); ++s)
    worst = std::max(worst, eval.regret(i, s));
  return worst;
}

double expected_regret(const Act& f, const Menu& menu, const Measure& pr,
                       const PrizeSpace& prizes) {
  check_spaces(f, menu);
  if (pr.state_count() != menu.state_count())
    throw PreconditionError("measure and menu live over different state spaces");
  MenuEval eval(menu, prizes);
  return eval.expected_regret(member_index(f, menu), pr);
}

double max_expected_regret(const Act& f, const Menu& menu,
                           std::span<const Measure> measures,
                           const PrizeSpace& prizes) {
  check_spaces(f, menu);
  if (measures.empty())
    throw PreconditionError("max expected regret needs a nonempty measure set");
  MenuEval eval(menu, prizes);
  std::size_t i = member_index(f, menu);
  double worst = 0.0;
  for (const Measure& pr : measures)
    worst = std::max(worst, eval.expected_regret(i, pr));
  return worst;
}

double max_weighted_expected_regret(const Act& f, const Menu& menu,
                                    const WeightedBeliefs& beliefs,
                                    const PrizeSpace& prizes) {
  check_spaces(f, menu);
  MenuEval eval(menu, prizes);
  return eval.score(Rule::mwer, member_index(f, menu), beliefs);
}

double rule_score(Rule rule, const Act& f, const Menu& menu,
                  const WeightedBeliefs& beliefs, const PrizeSpace& prizes) {
  check_spaces(f, menu);
  MenuEval eval(menu, prizes);
  return eval.score(rule, member_index(f, menu), beliefs);
}

PreferenceRanking rank(Rule rule, const Menu& menu, const WeightedBeliefs& beliefs,
                       const PrizeSpace& prizes, std::span<const Act> extend) {
  Menu full = extend.empty() ? menu : menu.extended(extend);
  MenuEval eval(full, prizes);

  PreferenceRanking out;
  out.scores.reserve(full.size());
  for (std::size_t i = 0; i < full.size(); ++i)
    out.scores.emplace_back(full.act(i).name(), eval.score(rule, i, beliefs));

  std::vector<std::size_t> order(full.size());
  std::iota(order.begin(), order.end(), 0);
  const bool asc = rule_minimizes(rule);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    double sa = out.scores[a].second, sb = out.scores[b].second;
    return asc ? sa < sb : sa > sb;
  });

  // Tiers are anchored at their leader: an act joins the current tier while
  // its score is within kTieEpsilon of the leader's, so within-tier spread
  // stays below the tolerance and consecutive tiers differ strictly.
  // Within a tier, acts keep menu order.
  for (std::size_t k = 0; k < order.size();) {
    double leader = out.scores[order[k]].second;
    std::vector<std::size_t> members;
    while (k < order.size() &&
           std::fabs(out.scores[order[k]].second - leader) <= kTieEpsilon) {
      members.push_back(order[k]);
      ++k;
    }
    std::sort(members.begin(), members.end());
    std::vector<std::string> tier;
    for (std::size_t i : members) tier.push_back(out.scores[i].first);
    out.tiers.push_back(std::move(tier));
  }
  return out;
}

double pref_delta(Rule rule, const Menu& menu, const WeightedBeliefs& beliefs,
                  const PrizeSpace& prizes, std::string_view f_name,
                  std::string_view g_name) {
  MenuEval eval(menu, prizes);
  double sf = eval.score(rule, menu.index_of(f_name), beliefs);
  double sg = eval.score(rule, menu.index_of(g_name), beliefs);
  return rule_minimizes(rule) ? sg - sf : sf - sg;
}

}  // namespace mwer
