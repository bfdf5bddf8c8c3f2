#include "mwer/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mwer/rng.hpp"
#include "mwer/scenario_json.hpp"

namespace mwer {

using nlohmann::ordered_json;

// ----- names -----

std::string_view axiom_name(Axiom a) {
  switch (a) {
    case Axiom::transitivity: return "transitivity";
    case Axiom::completeness: return "completeness";
    case Axiom::nontriviality: return "nontriviality";
    case Axiom::monotonicity: return "monotonicity";
    case Axiom::mixture_continuity: return "mixture-continuity";
    case Axiom::ambiguity_aversion: return "ambiguity-aversion";
    case Axiom::independence: return "independence";
    case Axiom::constant_menu_independence: return "constant-menu-independence";
    case Axiom::ina: return "ina";
    case Axiom::boundedness: return "boundedness";
    case Axiom::c_independence: return "c-independence";
    case Axiom::axiom12: return "axiom12";
    case Axiom::mdc: return "mdc";
  }
  return "?";
}

Axiom parse_axiom(std::string_view name) {
  static constexpr Axiom all[] = {
      Axiom::transitivity,    Axiom::completeness,
      Axiom::nontriviality,   Axiom::monotonicity,
      Axiom::mixture_continuity, Axiom::ambiguity_aversion,
      Axiom::independence,    Axiom::constant_menu_independence,
      Axiom::ina,             Axiom::boundedness,
      Axiom::c_independence,  Axiom::axiom12,
      Axiom::mdc};
  for (Axiom a : all)
    if (axiom_name(a) == name) return a;
  if (name == "ax12") return Axiom::axiom12;
  if (name == "cind" || name == "c-ind") return Axiom::c_independence;
  throw ValidationError("unknown axiom '" + std::string(name) + "'");
}

std::string_view policy_name(MenuPolicy p) {
  return p == MenuPolicy::transformed ? "transformed" : "fixed";
}

MenuPolicy parse_policy(std::string_view name) {
  if (name == "transformed") return MenuPolicy::transformed;
  if (name == "fixed") return MenuPolicy::fixed;
  throw ValidationError("unknown menu policy '" + std::string(name) + "'");
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::supported: return "supported";
    case Verdict::counterexample: return "counterexample";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string_view table4_row_name(Table4Row r) {
  switch (r) {
    case Table4Row::core: return "ax1-6,8-10";
    case Table4Row::independence: return "independence";
    case Table4Row::c_independence: return "c-independence";
    case Table4Row::axiom12: return "axiom12";
  }
  return "?";
}

// ----- generators -----

namespace {

Measure random_measure(Rng& rng, std::size_t n) {
  std::vector<double> p(n, 0.0);
  const std::size_t style = rng.next_index(4);
  if (style == 0) {
    p[rng.next_index(n)] = 1.0;
    return Measure(std::move(p));
  }
  std::vector<std::size_t> support;
  if (style == 1 && n >= 2) {
    for (std::size_t s = 0; s < n; ++s)
      if (rng.next_bool(0.6)) support.push_back(s);
    if (support.empty()) support.push_back(rng.next_index(n));
  } else {
    for (std::size_t s = 0; s < n; ++s) support.push_back(s);
  }
  double sum = 0.0;
  for (std::size_t s : support) {
    const double e = -std::log1p(-rng.next_unit());
    p[s] = e;
    sum += e;
  }
  if (sum <= 0.0) {
    std::fill(p.begin(), p.end(), 0.0);
    p[support[rng.next_index(support.size())]] = 1.0;
    return Measure(std::move(p));
  }
  for (double& x : p) x /= sum;
  return Measure(std::move(p));
}

WeightedBeliefs random_beliefs(Rng& rng, std::size_t n_states, std::size_t count,
                               bool single_measure) {
  if (single_measure) count = 1;
  std::vector<WeightedMeasure> entries;
  const bool unit_weights = rng.next_bool(0.3);
  for (std::size_t i = 0; i < count; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 8 && !placed; ++attempt) {
      Measure m = random_measure(rng, n_states);
      bool dup = false;
      for (const auto& e : entries) dup = dup || e.measure == m;
      if (dup) continue;
      const double w = (i == 0 || unit_weights) ? 1.0 : rng.next_unit();
      entries.push_back({std::move(m), w, "m" + std::to_string(entries.size())});
      placed = true;
    }
  }
  return WeightedBeliefs(std::move(entries));
}

Lottery random_lottery(Rng& rng, std::size_t prize_count) {
  if (rng.next_bool(0.55) || prize_count < 2)
    return Lottery::point(rng.next_index(prize_count), prize_count);
  const std::size_t a = rng.next_index(prize_count);
  std::size_t b = rng.next_index(prize_count);
  if (a == b) return Lottery::point(a, prize_count);
  const double t = rng.next_unit();
  return Lottery({{a, t}, {b, 1.0 - t}}, prize_count);
}

PrizeSpace random_prizes(Rng& rng, std::size_t count, double lo, double hi) {
  std::vector<std::string> names;
  std::vector<double> utilities;
  for (std::size_t i = 0; i < count; ++i) {
    names.push_back("y" + std::to_string(i));
    utilities.push_back(rng.next_real(lo, hi));
  }
  bool distinct = false;
  for (double u : utilities) distinct = distinct || u != utilities[0];
  if (!distinct) utilities.back() = utilities[0] + 1.0;
  return PrizeSpace(std::move(names), std::move(utilities));
}

std::vector<std::string> state_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("s" + std::to_string(i));
  return names;
}

struct SizeSpec {
  std::size_t states, prizes, acts, measures;
};

// Small instances first; the pool widens as the trial index grows, because
// every known violation lives at the small end and small witnesses stay
// readable.
SizeSpec size_for_trial(std::uint64_t trial, Rng& rng) {
  static constexpr SizeSpec tiers[] = {
      {2, 3, 2, 1}, {2, 3, 2, 2}, {2, 4, 3, 2}, {3, 4, 3, 2},
      {2, 4, 4, 3}, {3, 4, 3, 3}, {3, 5, 4, 2}, {4, 5, 4, 3},
  };
  const std::size_t cap = trial < 128 ? 4 : 8;
  return tiers[rng.next_index(cap)];
}

}  // namespace

Scenario random_scenario(const ScenarioParams& params, std::uint64_t seed) {
  if (params.min_states < 1 || params.max_states < params.min_states ||
      params.min_acts < 1 || params.max_acts < params.min_acts ||
      params.min_measures < 1 || params.max_measures < params.min_measures ||
      params.prizes < 2 || !(params.utility_lo < params.utility_hi))
    throw PreconditionError("unsatisfiable scenario bounds");
  Rng rng(seed);
  const std::size_t n =
      params.min_states + rng.next_index(params.max_states - params.min_states + 1);
  const std::size_t m =
      params.min_acts + rng.next_index(params.max_acts - params.min_acts + 1);
  const std::size_t c = params.min_measures +
                        rng.next_index(params.max_measures - params.min_measures + 1);

  StateSpace states(state_names(n));
  PrizeSpace prizes = random_prizes(rng, params.prizes, params.utility_lo,
                                    params.utility_hi);
  std::vector<Act> acts;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Lottery> outcomes;
    for (std::size_t s = 0; s < n; ++s)
      outcomes.push_back(random_lottery(rng, prizes.size()));
    acts.emplace_back("a" + std::to_string(i), std::move(outcomes));
  }
  WeightedBeliefs beliefs = random_beliefs(rng, n, c, false);
  Menu menu(acts);
  return Scenario(std::move(states), std::move(prizes), std::move(acts),
                  {{"M", std::move(menu)}}, std::move(beliefs));
}

namespace {

// Plain random scenario; when spare_act is set and there are at least three
// acts, the last act stays out of the menu so probes can pick an outside h.
Scenario build_plain(Rng& rng, const SizeSpec& spec, bool single_measure,
                     bool spare_act) {
  const std::size_t n = spec.states;
  StateSpace states(state_names(n));
  PrizeSpace prizes = random_prizes(rng, spec.prizes, -10.0, 10.0);
  std::vector<Act> acts;
  for (std::size_t i = 0; i < spec.acts; ++i) {
    std::vector<Lottery> outcomes;
    for (std::size_t s = 0; s < n; ++s)
      outcomes.push_back(random_lottery(rng, prizes.size()));
    acts.emplace_back("a" + std::to_string(i), std::move(outcomes));
  }
  std::vector<Act> menu_acts = acts;
  if (spare_act && acts.size() >= 3) menu_acts.pop_back();
  WeightedBeliefs beliefs = random_beliefs(rng, n, spec.measures, single_measure);
  Menu menu(std::move(menu_acts));
  return Scenario(std::move(states), std::move(prizes), std::move(acts),
                  {{"M", std::move(menu)}}, std::move(beliefs));
}

// Scenario invariant under swapping the first two states: acts come in
// swapped pairs and the belief set is closed under the swap, so each pair
// ties exactly under every rule.
Scenario build_symmetric(Rng& rng, bool single_measure) {
  const std::size_t n = rng.next_bool(0.3) ? 3 : 2;
  StateSpace states(state_names(n));
  PrizeSpace prizes = random_prizes(rng, 3 + rng.next_index(2), -10.0, 10.0);

  const std::size_t pairs = 1 + rng.next_index(2);
  std::vector<Act> acts;
  for (std::size_t i = 0; i < pairs; ++i) {
    std::vector<Lottery> outcomes;
    for (std::size_t s = 0; s < n; ++s)
      outcomes.push_back(random_lottery(rng, prizes.size()));
    std::vector<Lottery> swapped = outcomes;
    std::swap(swapped[0], swapped[1]);
    acts.emplace_back("b" + std::to_string(i), std::move(outcomes));
    acts.emplace_back("b" + std::to_string(i) + "_sw", std::move(swapped));
  }

  std::vector<WeightedMeasure> entries;
  if (single_measure) {
    Measure m = random_measure(rng, n);
    std::vector<double> p = m.probs();
    const double avg = 0.5 * (p[0] + p[1]);
    p[0] = avg;
    p[1] = avg;
    entries.push_back({Measure(std::move(p)), 1.0, "m0"});
  } else {
    const std::size_t count = 1 + rng.next_index(2);
    for (std::size_t i = 0; i < count; ++i) {
      Measure m = random_measure(rng, n);
      bool dup = false;
      for (const auto& e : entries) dup = dup || e.measure == m;
      if (dup) continue;
      const double w = entries.empty() ? 1.0 : rng.next_unit();
      std::vector<double> sp = m.probs();
      std::swap(sp[0], sp[1]);
      Measure swapped(std::move(sp));
      entries.push_back({std::move(m), w, "m" + std::to_string(entries.size())});
      if (!(swapped == entries.back().measure)) {
        bool dup2 = false;
        for (const auto& e : entries) dup2 = dup2 || e.measure == swapped;
        if (!dup2)
          entries.push_back(
              {std::move(swapped), w, "m" + std::to_string(entries.size())});
      }
    }
  }

  Menu menu(acts);
  return Scenario(std::move(states), std::move(prizes), std::move(acts),
                  {{"M", std::move(menu)}}, WeightedBeliefs(std::move(entries)));
}

std::vector<std::size_t> distinct_indices(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  for (std::size_t i = 0; i + 1 < n && i < k; ++i)
    std::swap(all[i], all[i + rng.next_index(n - i)]);
  all.resize(std::min(n, k));
  while (all.size() < k) all.push_back(all[rng.next_index(all.size())]);
  return all;
}

double mix_coefficient(Rng& rng) {
  return static_cast<double>(1 + rng.next_index(7)) / 8.0;
}

std::size_t worst_prize(const PrizeSpace& prizes) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < prizes.size(); ++i)
    if (prizes.utility(i) < prizes.utility(best)) best = i;
  return best;
}

// A fresh act that is state-wise weakly dominated by the acts already in
// the pool: each outcome mixes some pool act's outcome toward the worst
// prize.
Act dominated_act(Rng& rng, const std::vector<Act>& pool, const PrizeSpace& prizes,
                  std::string name) {
  const std::size_t n = pool.front().state_count();
  const Lottery worst = Lottery::point(worst_prize(prizes), prizes.size());
  std::vector<Lottery> outcomes;
  for (std::size_t s = 0; s < n; ++s) {
    const Act& base = pool[rng.next_index(pool.size())];
    outcomes.push_back(mix_lotteries(rng.next_unit(), base.outcome(s), worst));
  }
  return Act(std::move(name), std::move(outcomes));
}

struct GeneratedProbe {
  Scenario scenario;
  Probe probe;
};

GeneratedProbe generate_probe(Axiom axiom, Rule rule, std::uint64_t trial,
                              std::uint64_t stream_seed) {
  Rng rng(stream_seed);
  SizeSpec spec = size_for_trial(trial, rng);
  const bool single = rule == Rule::seu;

  auto pick_pair = [&](const Scenario& sc, Probe& probe) {
    const Menu& m = sc.menu(probe.menu);
    auto idx = distinct_indices(rng, m.size(), 2);
    probe.f = m.act(idx[0]).name();
    probe.g = m.act(idx[1]).name();
  };

  switch (axiom) {
    case Axiom::transitivity:
    case Axiom::completeness: {
      Scenario sc = build_plain(rng, spec, single, false);
      Probe probe;
      const Menu& m = sc.menu("M");
      auto idx = distinct_indices(rng, m.size(), 3);
      probe.f = m.act(idx[0]).name();
      probe.g = m.act(idx[1]).name();
      probe.h = m.act(idx[2]).name();
      if (axiom == Axiom::transitivity) {
        // Order the picks best-first so the premise chain holds and the
        // probe actually exercises the conclusion.
        PreferenceRanking r = rank(rule, m, sc.beliefs(), sc.prizes());
        std::vector<std::string> names = {probe.f, probe.g, probe.h};
        std::stable_sort(names.begin(), names.end(),
                         [&](const std::string& a, const std::string& b) {
                           const double sa = r.score_of(a), sb = r.score_of(b);
                           return rule_minimizes(rule) ? sa < sb : sa > sb;
                         });
        probe.f = names[0];
        probe.g = names[1];
        probe.h = names[2];
      }
      return {std::move(sc), std::move(probe)};
    }

    case Axiom::nontriviality:
    case Axiom::boundedness: {
      Scenario sc = build_plain(rng, spec, single, false);
      return {std::move(sc), Probe{}};
    }

    case Axiom::monotonicity: {
      Scenario sc = build_plain(rng, spec, single, false);
      Probe probe;
      if (rng.next_bool(0.7)) {
        std::vector<Act> acts = sc.acts();
        const Act& base = acts[rng.next_index(acts.size())];
        probe.f = base.name();
        Act gdom = dominated_act(rng, {base}, sc.prizes(), "gdom");
        probe.g = gdom.name();
        Menu menu = sc.menu("M").extended(gdom);
        acts.push_back(std::move(gdom));
        sc = Scenario(sc.states(), sc.prizes(), std::move(acts),
                      {{"M", std::move(menu)}}, sc.beliefs());
      } else {
        pick_pair(sc, probe);
      }
      return {std::move(sc), std::move(probe)};
    }

    case Axiom::mixture_continuity: {
      SizeSpec big = spec;
      big.acts = std::max<std::size_t>(3, big.acts);
      Scenario sc = build_plain(rng, big, single, false);
      Probe probe;
      // Aim the probe at a strict chain when one exists.
      PreferenceRanking r = rank(rule, sc.menu("M"), sc.beliefs(), sc.prizes());
      if (r.tiers.size() >= 3) {
        probe.f = r.tiers[0][0];
        probe.g = r.tiers[1][0];
        probe.h = r.tiers[2][0];
      } else {
        const Menu& m = sc.menu("M");
        auto idx = distinct_indices(rng, m.size(), 3);
        probe.f = m.act(idx[0]).name();
        probe.g = m.act(idx[1]).name();
        probe.h = m.act(idx[2]).name();
      }
      return {std::move(sc), std::move(probe)};
    }

    case Axiom::ambiguity_aversion: {
      Probe probe;
      probe.p = mix_coefficient(rng);
      if (rng.next_bool(0.75)) {
        Scenario sc = build_symmetric(rng, single);
        probe.f = "b0";
        probe.g = "b0_sw";
        return {std::move(sc), std::move(probe)};
      }
      Scenario sc = build_plain(rng, spec, single, false);
      pick_pair(sc, probe);
      return {std::move(sc), std::move(probe)};
    }

    case Axiom::independence: {
      Probe probe;
      probe.p = mix_coefficient(rng);
      if (rng.next_bool(0.3)) {
        Scenario sc = build_symmetric(rng, single);
        probe.f = "b0";
        probe.g = "b0_sw";
        const auto& pool = sc.acts();
        probe.h = pool[rng.next_index(pool.size())].name();
        return {std::move(sc), std::move(probe)};
      }
      Scenario sc = build_plain(rng, spec, single, true);
      pick_pair(sc, probe);
      probe.h = sc.acts()[rng.next_index(sc.acts().size())].name();
      return {std::move(sc), std::move(probe)};
    }

    case Axiom::constant_menu_independence: {
      Scenario sc = build_plain(rng, spec, single, false);
      std::vector<Act> acts = sc.acts();
      const std::size_t n = sc.states().size();
      Act c0 = constant_act(random_lottery(rng, sc.prizes().size()), n, "cl0");
      Act c1 = constant_act(random_lottery(rng, sc.prizes().size()), n, "cl1");
      Menu m1 = sc.menu("M").extended(c0).extended(c1);
      // Second menu: a different nonempty slice of the base acts plus the
      // two constants.
      std::vector<Act> slice;
      for (const Act& a : sc.acts())
        if (rng.next_bool(0.5)) slice.push_back(a);
      if (slice.empty()) slice.push_back(sc.acts()[rng.next_index(acts.size())]);
      slice.push_back(c0);
      slice.push_back(c1);
      Menu m2(std::move(slice));
      acts.push_back(c0);
      acts.push_back(c1);
      Scenario out(sc.states(), sc.prizes(), std::move(acts),
                   {{"M", std::move(m1)}, {"M2", std::move(m2)}}, sc.beliefs());
      Probe probe;
      probe.f = "cl0";
      probe.g = "cl1";
      probe.menu2 = "M2";
      return {std::move(out), std::move(probe)};
    }

    case Axiom::ina: {
      Scenario sc = build_plain(rng, spec, single, false);
      std::vector<Act> acts = sc.acts();
      Menu base = sc.menu("M");
      Menu star = base;
      const std::size_t extras = 1 + rng.next_index(2);
      for (std::size_t i = 0; i < extras; ++i) {
        Act nso = dominated_act(rng, base.acts(), sc.prizes(),
                                "nso" + std::to_string(i));
        star = star.extended(nso);
        acts.push_back(std::move(nso));
      }
      Scenario out(sc.states(), sc.prizes(), std::move(acts),
                   {{"M", std::move(base)}, {"Mstar", std::move(star)}},
                   sc.beliefs());
      Probe probe;
      probe.menu2 = "Mstar";
      pick_pair(out, probe);
      return {std::move(out), std::move(probe)};
    }

    case Axiom::c_independence: {
      Scenario sc = build_plain(rng, spec, single, false);
      std::vector<Act> acts = sc.acts();
      Act hc = constant_act(random_lottery(rng, sc.prizes().size()),
                            sc.states().size(), "hc");
      acts.push_back(hc);
      Scenario out(sc.states(), sc.prizes(), std::move(acts),
                   {{"M", sc.menu("M")}}, sc.beliefs());
      Probe probe;
      probe.p = mix_coefficient(rng);
      probe.h = "hc";
      pick_pair(out, probe);
      return {std::move(out), std::move(probe)};
    }

    case Axiom::axiom12: {
      // Constructed instance: a menu with state-independent outcome
      // distributions (each state sees a permutation of one lottery set)
      // plus a constant act tuned to tie with the probed act exactly.
      const std::size_t n = spec.states;
      StateSpace states(state_names(n));
      PrizeSpace pre = random_prizes(rng, spec.prizes, -10.0, 10.0);
      const std::size_t j = 2 + rng.next_index(2);
      std::vector<Lottery> base_lotteries;
      for (std::size_t i = 0; i < j; ++i)
        base_lotteries.push_back(random_lottery(rng, pre.size()));

      std::vector<std::vector<Lottery>> outcomes(j);
      for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> perm(j);
        for (std::size_t i = 0; i < j; ++i) perm[i] = i;
        for (std::size_t i = 0; i + 1 < j; ++i)
          std::swap(perm[i], perm[i + rng.next_index(j - i)]);
        for (std::size_t i = 0; i < j; ++i)
          outcomes[i].push_back(base_lotteries[perm[i]]);
      }
      std::vector<Act> acts;
      for (std::size_t i = 0; i < j; ++i)
        acts.emplace_back("a" + std::to_string(i), std::move(outcomes[i]));

      WeightedBeliefs beliefs = random_beliefs(rng, n, spec.measures, single);
      Menu pre_menu(acts);
      const double score_f = rule_score(rule, acts[0], pre_menu, beliefs, pre);
      double best_util = lottery_utility(base_lotteries[0], pre);
      for (const Lottery& l : base_lotteries)
        best_util = std::max(best_util, lottery_utility(l, pre));
      const double u_h = rule_minimizes(rule) ? best_util - score_f : score_f;

      std::vector<std::string> prize_names = pre.names();
      std::vector<double> prize_utils = pre.utilities();
      prize_names.push_back("cal_h");
      prize_utils.push_back(u_h);
      PrizeSpace prizes(std::move(prize_names), std::move(prize_utils));
      Act hc = constant_act(Lottery::point(prizes.size() - 1, prizes.size()), n,
                            "hc");
      Menu menu = Menu(acts).extended(hc);
      acts.push_back(hc);

      Scenario out(std::move(states), std::move(prizes), std::move(acts),
                   {{"M", std::move(menu)}}, std::move(beliefs));
      Probe probe;
      probe.f = "a0";
      probe.h = "hc";
      probe.p = mix_coefficient(rng);
      return {std::move(out), std::move(probe)};
    }

    case Axiom::mdc: {
      SizeSpec capped = spec;
      capped.measures = std::max<std::size_t>(2, capped.measures);
      Scenario sc = build_plain(rng, capped, false, false);
      const std::size_t n = sc.states().size();
      std::vector<char> mask(n, 0);
      bool ok = false;
      for (int attempt = 0; attempt < 16 && !ok; ++attempt) {
        for (std::size_t s = 0; s < n; ++s) mask[s] = rng.next_bool(0.5) ? 1 : 0;
        if (std::none_of(mask.begin(), mask.end(), [](char c) { return c != 0; }))
          continue;
        ok = event_weight(sc.beliefs(), Event(mask)) >= 1e-6;
      }
      if (!ok) std::fill(mask.begin(), mask.end(), 1);
      Scenario out(sc.states(), sc.prizes(), sc.acts(), {{"M", sc.menu("M")}},
                   sc.beliefs(), {{"E", Event(std::move(mask))}});
      Probe probe;
      probe.event = "E";
      pick_pair(out, probe);
      const Menu& m = out.menu("M");
      probe.h = m.act(rng.next_index(m.size())).name();
      return {std::move(out), std::move(probe)};
    }
  }
  throw PreconditionError("unknown axiom");
}

// ----- comparison helpers -----

struct Comparison {
  double delta = 0.0;
  std::string label;
};

// A probe only counts against a biconditional when one side holds strictly
// by the violation margin and the other side's difference contradicts it.
bool biconditional_violated(double d1, double d2) {
  if (d1 > kViolationMargin && d2 <= 0.0) return true;
  if (d1 < -kViolationMargin && d2 >= 0.0) return true;
  if (d2 > kViolationMargin && d1 <= 0.0) return true;
  if (d2 < -kViolationMargin && d1 >= 0.0) return true;
  return false;
}

std::string relation(double d) {
  if (d > kTieEpsilon) return "first strictly preferred";
  if (d < -kTieEpsilon) return "second strictly preferred";
  return "indifferent";
}

ProbeOutcome biconditional_outcome(double d1, double d2, const std::string& label1,
                                   const std::string& label2) {
  ProbeOutcome out;
  out.deltas = {{label1, d1}, {label2, d2}};
  if (biconditional_violated(d1, d2)) {
    out.kind = ProbeOutcome::Kind::violation;
    out.detail = label1 + ": " + relation(d1) + "; " + label2 + ": " + relation(d2);
  }
  return out;
}

bool is_constant_act(const Act& a) {
  for (std::size_t s = 1; s < a.state_count(); ++s)
    if (!(a.outcome(s) == a.outcome(0))) return false;
  return true;
}

// State-independent outcome distributions: every state offers the same set
// of lotteries across the menu.
bool state_independent_outcomes(const Menu& m) {
  const std::size_t n = m.state_count();
  for (std::size_t s = 1; s < n; ++s) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      bool fwd = false, bwd = false;
      for (std::size_t k = 0; k < m.size() && !(fwd && bwd); ++k) {
        fwd = fwd || m.act(k).outcome(s) == m.act(i).outcome(0);
        bwd = bwd || m.act(k).outcome(0) == m.act(i).outcome(s);
      }
      if (!fwd || !bwd) return false;
    }
  }
  return true;
}

}  // namespace

bool never_strictly_optimal(const Act& h, const Menu& menu,
                            const PrizeSpace& prizes) {
  if (h.state_count() != menu.state_count())
    throw PreconditionError("act and menu live over different state spaces");
  for (std::size_t s = 0; s < menu.state_count(); ++s) {
    const double uh = lottery_utility(h.outcome(s), prizes);
    bool matched = false;
    for (std::size_t i = 0; i < menu.size() && !matched; ++i)
      matched = lottery_utility(menu.act(i).outcome(s), prizes) >= uh;
    if (!matched) return false;
  }
  return true;
}

ProbeOutcome check_axiom(Axiom axiom, Rule rule, const Scenario& sc,
                         MenuPolicy policy, const Probe& probe) {
  const PrizeSpace& prizes = sc.prizes();
  const WeightedBeliefs& beliefs = sc.beliefs();
  const Menu& menu = sc.menu(probe.menu);

  auto delta_in = [&](const Menu& m, std::string_view a, std::string_view b) {
    return pref_delta(rule, m, beliefs, prizes, a, b);
  };

  switch (axiom) {
    case Axiom::transitivity: {
      const double d_fg = delta_in(menu, probe.f, probe.g);
      const double d_gh = delta_in(menu, probe.g, probe.h);
      const double d_fh = delta_in(menu, probe.f, probe.h);
      ProbeOutcome out;
      out.deltas = {{"f vs g", d_fg}, {"g vs h", d_gh}, {"f vs h", d_fh}};
      if (d_fg >= -kTieEpsilon && d_gh >= -kTieEpsilon) {
        if (d_fh < -kViolationMargin) {
          out.kind = ProbeOutcome::Kind::violation;
          out.detail = "weak preference chain broke on the endpoints";
        }
      } else {
        out.kind = ProbeOutcome::Kind::vacuous;
      }
      return out;
    }

    case Axiom::completeness: {
      const double d = delta_in(menu, probe.f, probe.g);
      ProbeOutcome out;
      out.deltas = {{"f vs g", d}};
      if (std::isnan(d)) {
        out.kind = ProbeOutcome::Kind::violation;
        out.detail = "comparison produced no order";
      }
      return out;
    }

    case Axiom::nontriviality: {
      for (std::size_t i = 0; i < menu.size(); ++i)
        for (std::size_t k = 0; k < menu.size(); ++k) {
          if (i == k) continue;
          const double d =
              delta_in(menu, menu.act(i).name(), menu.act(k).name());
          if (d > kViolationMargin) {
            ProbeOutcome out;
            out.deltas = {{menu.act(i).name() + " vs " + menu.act(k).name(), d}};
            out.detail = "strict preference exhibited";
            return out;
          }
        }
      ProbeOutcome out;
      out.kind = ProbeOutcome::Kind::inconclusive;
      out.detail = "every pair tied in this menu";
      return out;
    }

    case Axiom::monotonicity: {
      const Act& f = menu.at(probe.f);
      const Act& g = menu.at(probe.g);
      for (std::size_t s = 0; s < menu.state_count(); ++s)
        if (lottery_utility(f.outcome(s), prizes) <
            lottery_utility(g.outcome(s), prizes)) {
          ProbeOutcome out;
          out.kind = ProbeOutcome::Kind::vacuous;
          return out;
        }
      const double d = delta_in(menu, probe.f, probe.g);
      ProbeOutcome out;
      out.deltas = {{"f vs g", d}};
      if (d < -kViolationMargin) {
        out.kind = ProbeOutcome::Kind::violation;
        out.detail = "state-wise dominant act ranked strictly worse";
      }
      return out;
    }

    case Axiom::mixture_continuity: {
      const double d_fg = delta_in(menu, probe.f, probe.g);
      const double d_gh = delta_in(menu, probe.g, probe.h);
      ProbeOutcome out;
      out.deltas = {{"f vs g", d_fg}, {"g vs h", d_gh}};
      if (!(d_fg > kViolationMargin && d_gh > kViolationMargin)) {
        out.kind = ProbeOutcome::Kind::vacuous;
        return out;
      }
      const Act& f = menu.at(probe.f);
      const Act& h = menu.at(probe.h);
      bool found_q = false, found_r = false;
      for (int k = 1; k < 64 && !(found_q && found_r); ++k) {
        const double c = static_cast<double>(k) / 64.0;
        Act mix = mix_acts(c, f, h);
        Menu extended = menu.extended(mix);
        if (!found_q &&
            pref_delta(rule, extended, beliefs, prizes, mix.name(), probe.g) >
                kTieEpsilon) {
          found_q = true;
          out.deltas.emplace_back("q=" + format_double(c), c);
        }
        if (!found_r &&
            pref_delta(rule, extended, beliefs, prizes, probe.g, mix.name()) >
                kTieEpsilon) {
          found_r = true;
          out.deltas.emplace_back("r=" + format_double(c), c);
        }
      }
      if (!(found_q && found_r)) {
        out.kind = ProbeOutcome::Kind::inconclusive;
        out.detail = "no witness pair on the 1/64 grid";
      }
      return out;
    }

    case Axiom::ambiguity_aversion: {
      const double d_fg = delta_in(menu, probe.f, probe.g);
      if (std::fabs(d_fg) > kTieEpsilon) {
        ProbeOutcome out;
        out.kind = ProbeOutcome::Kind::vacuous;
        out.deltas = {{"f vs g", d_fg}};
        return out;
      }
      Act mix = mix_acts(probe.p, menu.at(probe.f), menu.at(probe.g));
      Menu extended = menu.extended(mix);
      const double d = pref_delta(rule, extended, beliefs, prizes, mix.name(),
                                  probe.g);
      ProbeOutcome out;
      out.deltas = {{"f vs g", d_fg}, {"mix vs g", d}};
      if (d < -kViolationMargin) {
        out.kind = ProbeOutcome::Kind::violation;
        out.detail = "hedge between indifferent acts ranked strictly worse";
      }
      return out;
    }

    case Axiom::independence:
    case Axiom::c_independence: {
      if (!(probe.p > 0.0 && probe.p < 1.0))
        throw PreconditionError(
            "mixing coefficient must lie strictly between 0 and 1, got " +
            format_double(probe.p));
      const Act& f = menu.at(probe.f);
      const Act& g = menu.at(probe.g);
      const Act& h = sc.act(probe.h);
      if (axiom == Axiom::c_independence && !is_constant_act(h)) {
        ProbeOutcome out;
        out.kind = ProbeOutcome::Kind::vacuous;
        out.detail = "h is not constant";
        return out;
      }
      const double d1 = delta_in(menu, probe.f, probe.g);
      Act mixf = mix_acts(probe.p, f, h);
      Act mixg = mix_acts(probe.p, g, h);
      double d2 = 0.0;
      if (policy == MenuPolicy::transformed) {
        Menu mixed = mix_menu(probe.p, menu, h);
        d2 = pref_delta(rule, mixed, beliefs, prizes, mixf.name(), mixg.name());
      } else {
        Menu extended = menu.extended(mixf).extended(mixg);
        d2 = pref_delta(rule, extended, beliefs, prizes, mixf.name(), mixg.name());
      }
      return biconditional_outcome(d1, d2, "unmixed", "mixed");
    }

    case Axiom::constant_menu_independence: {
      const Menu& menu2 = sc.menu(probe.menu2);
      if (!is_constant_act(menu.at(probe.f)) || !is_constant_act(menu.at(probe.g))) {
        ProbeOutcome out;
        out.kind = ProbeOutcome::Kind::vacuous;
        out.detail = "compared acts are not constant";
        return out;
      }
      const double d1 = delta_in(menu, probe.f, probe.g);
      const double d2 = delta_in(menu2, probe.f, probe.g);
      return biconditional_outcome(d1, d2, "menu " + probe.menu,
                                   "menu " + probe.menu2);
    }

    case Axiom::ina: {
      const Menu& star = sc.menu(probe.menu2);
      // Premise: every act added by the larger menu is never strictly
      // optimal relative to the base menu.
      for (const Act& a : star.acts()) {
        if (menu.contains(a.name())) continue;
        if (!never_strictly_optimal(a, menu, prizes)) {
          ProbeOutcome out;
          out.kind = ProbeOutcome::Kind::vacuous;
          out.detail = "added act '" + a.name() + "' is strictly optimal somewhere";
          return out;
        }
      }
      const double d1 = delta_in(menu, probe.f, probe.g);
      const double d2 = delta_in(star, probe.f, probe.g);
      return biconditional_outcome(d1, d2, "base menu", "extended menu");
    }

    case Axiom::boundedness: {
      double bound = -std::numeric_limits<double>::infinity();
      for (const Act& a : menu.acts())
        for (std::size_t s = 0; s < menu.state_count(); ++s)
          bound = std::max(bound, lottery_utility(a.outcome(s), prizes));
      ProbeOutcome out;
      out.detail = "menu utilities bounded by " + format_double(bound);
      return out;
    }

    case Axiom::axiom12: {
      const Act& f = menu.at(probe.f);
      const Act& h = menu.at(probe.h);
      ProbeOutcome out;
      if (!is_constant_act(h)) {
        out.kind = ProbeOutcome::Kind::vacuous;
        out.detail = "h is not constant";
        return out;
      }
      if (!state_independent_outcomes(menu)) {
        out.kind = ProbeOutcome::Kind::vacuous;
        out.detail = "menu outcome distributions depend on the state";
        return out;
      }
      const double d_hf = delta_in(menu, probe.h, probe.f);
      out.deltas = {{"h vs f", d_hf}};
      if (std::fabs(d_hf) > kTieEpsilon) {
        out.kind = ProbeOutcome::Kind::vacuous;
        return out;
      }
      Act mix = mix_acts(probe.p, f, h);
      Menu extended = menu.extended(mix);
      const double d =
          pref_delta(rule, extended, beliefs, prizes, mix.name(), probe.f);
      out.deltas.emplace_back("mix vs f", d);
      if (std::fabs(d) > kViolationMargin) {
        out.kind = ProbeOutcome::Kind::violation;
        out.detail = "mixing with an indifferent constant broke the tie";
      }
      return out;
    }

    case Axiom::mdc: {
      if (rule != Rule::mwer)
        throw PreconditionError("the mdc audit is defined for the mwer rule");
      const Event& e = sc.event(probe.event);
      return check_mdc(beliefs, e, menu, menu.at(probe.f), menu.at(probe.g),
                       menu.at(probe.h), UpdateMethod::likelihood, prizes,
                       sc.states());
    }
  }
  throw PreconditionError("unknown axiom");
}

double check_theorem2_identity(const WeightedBeliefs& beliefs, const Event& e,
                               const Menu& menu, const Act& f, const Act& h,
                               const PrizeSpace& prizes,
                               const StateSpace& states) {
  menu.index_of(f.name());
  menu.index_of(h.name());
  const double w = event_weight(beliefs, e);
  if (w <= 0.0)
    throw UpdateUndefinedError("identity is undefined on a null event");
  WeightedBeliefs updated = likelihood_update(beliefs, e).updated;
  Act spliced = splice(f, e, h, states);
  Menu spliced_menu = splice_menu(menu, e, h, states);
  const double lhs =
      max_weighted_expected_regret(spliced, spliced_menu, beliefs, prizes);
  const double rhs = w * max_weighted_expected_regret(f, menu, updated, prizes);
  return std::fabs(lhs - rhs);
}

ProbeOutcome check_mdc(const WeightedBeliefs& beliefs, const Event& e,
                       const Menu& menu, const Act& f, const Act& g,
                       const Act& h, UpdateMethod method,
                       const PrizeSpace& prizes, const StateSpace& states) {
  menu.index_of(f.name());
  menu.index_of(g.name());
  menu.index_of(h.name());
  const double w = event_weight(beliefs, e);
  if (w <= 0.0)
    throw UpdateUndefinedError("conditional preference is undefined on a null event");
  WeightedBeliefs cond = method == UpdateMethod::likelihood
                             ? likelihood_update(beliefs, e).updated
                             : measure_by_measure_update(beliefs, e);

  const double d_cond = pref_delta(Rule::mwer, menu, cond, prizes, f.name(),
                                   g.name());
  ProbeOutcome out;
  out.deltas = {{"conditional", d_cond}};

  // The axiom's quantifier ranges over splicing acts; the given h is checked
  // first, then every other member, which also exercises the claim that the
  // "some h" and "all h" readings agree.
  std::vector<const Act*> splicers;
  splicers.push_back(&h);
  for (const Act& other : menu.acts())
    if (other.name() != h.name()) splicers.push_back(&other);

  for (const Act* hh : splicers) {
    Act fs = splice(f, e, *hh, states);
    Act gs = splice(g, e, *hh, states);
    Menu spliced = splice_menu(menu, e, *hh, states);
    // Both sides live on a common scale: the spliced difference equals
    // weight(E) times the conditional one, so it is divided out before
    // comparing.
    const double dh =
        pref_delta(Rule::mwer, spliced, beliefs, prizes, fs.name(), gs.name()) / w;
    out.deltas.emplace_back("spliced with " + hh->name(), dh);
    if (out.kind == ProbeOutcome::Kind::pass && biconditional_violated(d_cond, dh)) {
      out.kind = ProbeOutcome::Kind::violation;
      out.detail = "conditional: " + relation(d_cond) + "; spliced with " +
                   hh->name() + ": " + relation(dh);
    }
  }
  return out;
}

namespace {

double beliefs_mismatch(const WeightedBeliefs& x, const WeightedBeliefs& y) {
  if (x.size() != y.size()) return std::numeric_limits<double>::infinity();
  auto canon = [](const WeightedBeliefs& b) {
    std::vector<std::pair<std::vector<double>, double>> rows;
    for (const auto& e : b.entries()) rows.emplace_back(e.measure.probs(), e.weight);
    std::sort(rows.begin(), rows.end());
    return rows;
  };
  auto a = canon(x), bb = canon(y);
  double residual = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    residual = std::max(residual, std::fabs(a[i].second - bb[i].second));
    for (std::size_t s = 0; s < a[i].first.size(); ++s)
      residual = std::max(residual, std::fabs(a[i].first[s] - bb[i].first[s]));
  }
  return residual;
}

}  // namespace

double check_prop1(const WeightedBeliefs& beliefs, const Event& e1,
                   const Event& e2) {
  WeightedBeliefs direct = likelihood_update(beliefs, e1.intersect(e2)).updated;
  const Event seq_a[] = {e1, e2};
  const Event seq_b[] = {e2, e1};
  WeightedBeliefs ab = sequential_update(beliefs, seq_a).updated;
  WeightedBeliefs ba = sequential_update(beliefs, seq_b).updated;
  double r = beliefs_mismatch(direct, ab);
  r = std::max(r, beliefs_mismatch(direct, ba));
  r = std::max(r, beliefs_mismatch(ab, ba));
  return r;
}

// ----- drivers -----

namespace {

AuditReport run_audit(Axiom axiom, Rule rule, MenuPolicy policy,
                      std::uint64_t trials, std::uint64_t seed,
                      bool stop_at_violation) {
  AuditReport report;
  report.axiom = axiom;
  report.rule = rule;
  report.policy = policy;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::uint64_t stream = Rng::derive(seed, t);
    GeneratedProbe gp = generate_probe(axiom, rule, t, stream);
    ProbeOutcome out = check_axiom(axiom, rule, gp.scenario, policy, gp.probe);
    ++report.trials;
    switch (out.kind) {
      case ProbeOutcome::Kind::pass:
        ++report.passes;
        break;
      case ProbeOutcome::Kind::vacuous:
        ++report.vacuous;
        break;
      case ProbeOutcome::Kind::inconclusive:
        ++report.inconclusive;
        break;
      case ProbeOutcome::Kind::violation:
        ++report.violations;
        if (!report.witness)
          report.witness = Witness{std::move(gp.scenario), std::move(gp.probe),
                                   out, axiom, rule, policy, t};
        break;
    }
    if (stop_at_violation && report.violations > 0) break;
  }
  report.verdict =
      report.violations > 0 ? Verdict::counterexample : Verdict::supported;
  return report;
}

}  // namespace

AuditReport audit_axiom(Axiom axiom, Rule rule, MenuPolicy policy,
                        std::uint64_t trials, std::uint64_t seed) {
  return run_audit(axiom, rule, policy, trials, seed, false);
}

std::optional<Witness> find_counterexample(Axiom axiom, Rule rule,
                                           MenuPolicy policy,
                                           std::uint64_t budget,
                                           std::uint64_t seed) {
  if (budget == 0) throw PreconditionError("search budget must be positive");
  AuditReport report = run_audit(axiom, rule, policy, budget, seed, true);
  return report.witness;
}

namespace {

const std::vector<Axiom>& row_axioms(Table4Row row) {
  static const std::vector<Axiom> core = {
      Axiom::transitivity,  Axiom::completeness,
      Axiom::nontriviality, Axiom::monotonicity,
      Axiom::mixture_continuity, Axiom::ambiguity_aversion,
      Axiom::constant_menu_independence, Axiom::ina,
      Axiom::boundedness};
  static const std::vector<Axiom> ind = {Axiom::independence};
  static const std::vector<Axiom> cind = {Axiom::c_independence};
  static const std::vector<Axiom> ax12 = {Axiom::axiom12};
  switch (row) {
    case Table4Row::core: return core;
    case Table4Row::independence: return ind;
    case Table4Row::c_independence: return cind;
    case Table4Row::axiom12: return ax12;
  }
  return core;
}

MenuPolicy row_policy(Table4Row row) {
  // Independence is audited under its own transformed-menu statement; the
  // menu-independent axioms are audited with mixtures appended to the fixed
  // menu, the only reading under which they can fail for regret rules.
  return row == Table4Row::independence ? MenuPolicy::transformed
                                        : MenuPolicy::fixed;
}

bool expected_checkmark(Table4Row row, Rule rule) {
  switch (row) {
    case Table4Row::core: return true;
    case Table4Row::independence: return rule != Rule::mmeu;
    case Table4Row::c_independence:
      return rule == Rule::seu || rule == Rule::mmeu;
    case Table4Row::axiom12:
      return rule == Rule::seu || rule == Rule::reg || rule == Rule::mer;
  }
  return false;
}

}  // namespace

Table4Report table4_matrix(std::uint64_t trials, std::uint64_t budget,
                           std::uint64_t seed) {
  if (trials == 0 || budget == 0)
    throw PreconditionError("table4 needs positive trial and budget counts");
  Table4Report report;
  report.trials = trials;
  report.budget = budget;
  report.seed = seed;

  static constexpr Table4Row rows[] = {Table4Row::core, Table4Row::independence,
                                       Table4Row::c_independence,
                                       Table4Row::axiom12};
  std::size_t row_index = 0;
  for (Table4Row row : rows) {
    std::size_t rule_index = 0;
    for (Rule rule : kAllRules) {
      const std::uint64_t cell_seed =
          Rng::derive(seed, row_index * 16 + rule_index);
      Table4Cell cell;
      cell.row = row;
      cell.rule = rule;
      cell.expected_supported = expected_checkmark(row, rule);
      const MenuPolicy policy = row_policy(row);

      if (cell.expected_supported) {
        bool any_violation = false;
        std::size_t part_index = 0;
        for (Axiom axiom : row_axioms(row)) {
          AuditReport part = audit_axiom(axiom, rule, policy, trials,
                                         Rng::derive(cell_seed, part_index));
          cell.trials += part.trials;
          cell.violations += part.violations;
          cell.vacuous += part.vacuous;
          cell.inconclusive += part.inconclusive;
          cell.parts.emplace_back(axiom, part.verdict);
          if (part.witness && !cell.witness) cell.witness = part.witness;
          any_violation = any_violation || part.violations > 0;
          ++part_index;
        }
        cell.verdict = any_violation ? Verdict::counterexample : Verdict::supported;
      } else {
        const Axiom axiom = row_axioms(row).front();
        AuditReport search =
            run_audit(axiom, rule, policy, budget, Rng::derive(cell_seed, 0), true);
        cell.trials = search.trials;
        cell.violations = search.violations;
        cell.vacuous = search.vacuous;
        cell.inconclusive = search.inconclusive;
        cell.parts.emplace_back(axiom, search.verdict);
        cell.witness = search.witness;
        cell.verdict = search.violations > 0 ? Verdict::counterexample
                                             : Verdict::inconclusive;
      }
      report.cells.push_back(std::move(cell));
      ++rule_index;
    }
    ++row_index;
  }
  return report;
}

// ----- witness serialization -----

namespace {

// Materializes the comparison menus into the scenario so the command line
// can rank them directly.
Scenario materialize(const Witness& w) {
  const Scenario& sc = w.scenario;
  const Probe& probe = w.probe;
  std::vector<Act> pool = sc.acts();
  std::vector<std::pair<std::string, Menu>> menus = sc.menus();
  auto add_act = [&](const Act& a) {
    for (const Act& existing : pool)
      if (existing.name() == a.name()) return;
    pool.push_back(a);
  };
  auto add_menu = [&](const std::string& name, Menu m) {
    for (const Act& a : m.acts()) add_act(a);
    menus.emplace_back(name, std::move(m));
  };
  const Menu& menu = sc.menu(probe.menu);

  switch (w.axiom) {
    case Axiom::independence:
    case Axiom::c_independence: {
      const Act& h = sc.act(probe.h);
      Act mixf = mix_acts(probe.p, menu.at(probe.f), h);
      Act mixg = mix_acts(probe.p, menu.at(probe.g), h);
      if (w.policy == MenuPolicy::transformed)
        add_menu("Mcmp", mix_menu(probe.p, menu, h));
      else
        add_menu("Mcmp", menu.extended(mixf).extended(mixg));
      break;
    }
    case Axiom::ambiguity_aversion: {
      Act mix = mix_acts(probe.p, menu.at(probe.f), menu.at(probe.g));
      add_menu("Mcmp", menu.extended(mix));
      break;
    }
    case Axiom::axiom12: {
      Act mix = mix_acts(probe.p, menu.at(probe.f), menu.at(probe.h));
      add_menu("Mcmp", menu.extended(mix));
      break;
    }
    case Axiom::mdc: {
      const Event& e = sc.event(probe.event);
      add_menu("Mcmp", splice_menu(menu, e, menu.at(probe.h), sc.states()));
      break;
    }
    default:
      break;
  }
  return Scenario(sc.states(), sc.prizes(), std::move(pool), std::move(menus),
                  sc.beliefs(), sc.events(), sc.measures());
}

}  // namespace

ordered_json witness_to_json(const Witness& w) {
  ordered_json doc;
  doc["axiom"] = std::string(axiom_name(w.axiom));
  doc["rule"] = std::string(rule_name(w.rule));
  doc["policy"] = std::string(policy_name(w.policy));
  doc["trial"] = w.trial;
  ordered_json probe;
  probe["menu"] = w.probe.menu;
  if (!w.probe.menu2.empty()) probe["menu2"] = w.probe.menu2;
  if (!w.probe.f.empty()) probe["f"] = w.probe.f;
  if (!w.probe.g.empty()) probe["g"] = w.probe.g;
  if (!w.probe.h.empty()) probe["h"] = w.probe.h;
  probe["p"] = w.probe.p;
  if (!w.probe.event.empty()) probe["event"] = w.probe.event;
  doc["probe"] = std::move(probe);
  ordered_json outcome;
  outcome["kind"] = w.outcome.kind == ProbeOutcome::Kind::violation ? "violation"
                    : w.outcome.kind == ProbeOutcome::Kind::pass    ? "pass"
                    : w.outcome.kind == ProbeOutcome::Kind::vacuous ? "vacuous"
                                                                    : "inconclusive";
  outcome["detail"] = w.outcome.detail;
  ordered_json deltas = ordered_json::array();
  for (const auto& [label, value] : w.outcome.deltas)
    deltas.push_back({{"label", label}, {"delta", value}});
  outcome["deltas"] = std::move(deltas);
  doc["outcome"] = std::move(outcome);
  doc["scenario"] = scenario_to_json(materialize(w));
  return doc;
}

Witness witness_from_json(const ordered_json& doc, std::string_view origin) {
  if (!doc.is_object() || !doc.contains("scenario") || !doc.contains("probe"))
    throw ValidationError(std::string(origin) +
                          ": witness must carry 'scenario' and 'probe'");
  Witness w{scenario_from_json(doc["scenario"], origin), Probe{}, ProbeOutcome{},
            parse_axiom(doc.at("axiom").get<std::string>()),
            parse_rule(doc.at("rule").get<std::string>()),
            parse_policy(doc.at("policy").get<std::string>()),
            doc.value("trial", std::uint64_t{0})};
  const ordered_json& probe = doc["probe"];
  w.probe.menu = probe.value("menu", std::string("M"));
  w.probe.menu2 = probe.value("menu2", std::string());
  w.probe.f = probe.value("f", std::string());
  w.probe.g = probe.value("g", std::string());
  w.probe.h = probe.value("h", std::string());
  w.probe.p = probe.value("p", 0.5);
  w.probe.event = probe.value("event", std::string());
  if (doc.contains("outcome")) {
    const ordered_json& out = doc["outcome"];
    const std::string kind = out.value("kind", "pass");
    w.outcome.kind = kind == "violation"      ? ProbeOutcome::Kind::violation
                     : kind == "vacuous"      ? ProbeOutcome::Kind::vacuous
                     : kind == "inconclusive" ? ProbeOutcome::Kind::inconclusive
                                              : ProbeOutcome::Kind::pass;
    w.outcome.detail = out.value("detail", std::string());
  }
  return w;
}

bool replay_witness(const Witness& w) {
  ProbeOutcome replayed =
      check_axiom(w.axiom, w.rule, w.scenario, w.policy, w.probe);
  return replayed.kind == w.outcome.kind;
}

}  // namespace mwer
