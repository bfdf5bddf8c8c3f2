#include <doctest.h>

#include <cmath>
#include <vector>

#include "mwer/audit.hpp"
#include "mwer/fixtures.hpp"
#include "mwer/rng.hpp"
#include "mwer/rules.hpp"

using namespace mwer;

namespace {

// Exact binomial ratio C(1000-n,10)/C(1000,10) via integer arithmetic;
// independent of the engine's factor-by-factor product.
long double exact_survival_ratio(int n_good) {
  auto binom = [](int n, int k) -> __int128 {
    __int128 r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  if (1000 - n_good < 10) return 0.0L;
  return static_cast<long double>(binom(1000 - n_good, 10)) /
         static_cast<long double>(binom(1000, 10));
}

WeightedBeliefs delivery_beliefs(double weight_ten) {
  return WeightedBeliefs(
      {{Measure({1.0, 0.0}), 1.0, "Pr1"}, {Measure({0.0, 1.0}), weight_ten, "Pr10"}});
}

std::vector<std::vector<std::string>> tiers_of(const PreferenceRanking& r) {
  return r.tiers;
}

}  // namespace

TEST_CASE("delivery regret matrix") {
  Scenario sc = delivery_scenario();
  const Menu& m0 = sc.menu("M0");
  const Menu& m1 = sc.menu("M1");

  CHECK(regret(sc.act("cont"), 0, m0, sc.prizes()) == 0.0);
  CHECK(regret(sc.act("cont"), 1, m0, sc.prizes()) == 10000.0);
  CHECK(regret(sc.act("back"), 0, m0, sc.prizes()) == 10000.0);
  CHECK(regret(sc.act("back"), 1, m0, sc.prizes()) == 0.0);
  CHECK(regret(sc.act("check"), 0, m0, sc.prizes()) == 4999.0);
  CHECK(regret(sc.act("check"), 1, m0, sc.prizes()) == 4999.0);

  CHECK(regret(sc.act("cont"), 0, m1, sc.prizes()) == 10000.0);
  CHECK(regret(sc.act("back"), 0, m1, sc.prizes()) == 20000.0);
  CHECK(regret(sc.act("check"), 0, m1, sc.prizes()) == 14999.0);
  CHECK(regret(sc.act("new"), 0, m1, sc.prizes()) == 0.0);
  CHECK(regret(sc.act("new"), 1, m1, sc.prizes()) == 20000.0);

  CHECK_THROWS_AS(regret(sc.act("new"), 0, m0, sc.prizes()), MembershipError);
}

TEST_CASE("worst-case regret") {
  Scenario sc = delivery_scenario();
  const Menu& m0 = sc.menu("M0");
  CHECK(worst_case_regret(sc.act("check"), m0, sc.prizes()) == 4999.0);
  CHECK(worst_case_regret(sc.act("cont"), m0, sc.prizes()) == 10000.0);

  Menu singleton({sc.act("cont")});
  CHECK(worst_case_regret(sc.act("cont"), singleton, sc.prizes()) == 0.0);
}

TEST_CASE("expected regret") {
  Scenario sc = delivery_scenario();
  const Menu& m0 = sc.menu("M0");
  const Measure& pr1 = sc.beliefs().entry(0).measure;

  CHECK(expected_regret(sc.act("cont"), m0, pr1, sc.prizes()) == 0.0);
  CHECK(expected_regret(sc.act("check"), m0, Measure({0.37, 0.63}), sc.prizes()) ==
        doctest::Approx(4999.0).epsilon(1e-15));
  CHECK(expected_regret(sc.act("cont"), m0, Measure({0.5, 0.5}), sc.prizes()) ==
        5000.0);
}

TEST_CASE("max expected regret over a measure set") {
  Scenario sc = delivery_scenario();
  const Menu& m0 = sc.menu("M0");
  const Menu& m1 = sc.menu("M1");
  std::vector<Measure> both = {sc.beliefs().entry(0).measure,
                               sc.beliefs().entry(1).measure};

  CHECK(max_expected_regret(sc.act("check"), m0, both, sc.prizes()) == 4999.0);
  CHECK(max_expected_regret(sc.act("cont"), m0, both, sc.prizes()) == 10000.0);
  CHECK(max_expected_regret(sc.act("back"), m0, both, sc.prizes()) == 10000.0);

  // adding the doubled-stakes act flips the comparison
  CHECK(max_expected_regret(sc.act("cont"), m1, both, sc.prizes()) == 10000.0);
  CHECK(max_expected_regret(sc.act("check"), m1, both, sc.prizes()) == 14999.0);

  std::vector<Measure> one = {Measure({0.5, 0.5})};
  CHECK(max_expected_regret(sc.act("check"), m0, one, sc.prizes()) ==
        expected_regret(sc.act("check"), m0, one[0], sc.prizes()));
  CHECK_THROWS_AS(
      max_expected_regret(sc.act("check"), m0, std::vector<Measure>{}, sc.prizes()),
      PreconditionError);
}

TEST_CASE("weighted regret scales each measure's expected regret") {
  Scenario sc = delivery_scenario();
  const Menu& m0 = sc.menu("M0");

  // unit weights reduce to the unweighted worst case
  WeightedBeliefs unit = delivery_beliefs(1.0);
  for (const char* name : {"cont", "back", "check"})
    CHECK(max_weighted_expected_regret(sc.act(name), m0, unit, sc.prizes()) ==
          max_expected_regret(sc.act(name), m0, unit.measures(), sc.prizes()));

  // the exact survival-ratio weight after 100 good observations
  const double w = static_cast<double>(exact_survival_ratio(100) / 0.9L);
  WeightedBeliefs b = delivery_beliefs(w);
  CHECK(max_weighted_expected_regret(sc.act("cont"), m0, b, sc.prizes()) ==
        doctest::Approx(w * 10000.0).epsilon(1e-12));
  CHECK(max_weighted_expected_regret(sc.act("check"), m0, b, sc.prizes()) ==
        4999.0);

  // a zero weight silences its measure entirely
  WeightedBeliefs zero = delivery_beliefs(0.0);
  CHECK(max_weighted_expected_regret(sc.act("cont"), m0, zero, sc.prizes()) ==
        0.0);
}

TEST_CASE("rankings on the delivery menus") {
  Scenario sc = delivery_scenario();
  const Menu& m0 = sc.menu("M0");

  PreferenceRanking mer = rank(Rule::mer, m0, sc.beliefs(), sc.prizes());
  CHECK(tiers_of(mer) ==
        std::vector<std::vector<std::string>>{{"check"}, {"cont", "back"}});

  WeightedBeliefs uniform({{Measure({0.5, 0.5}), 1.0, "u"}});
  PreferenceRanking seu = rank(Rule::seu, m0, uniform, sc.prizes());
  CHECK(tiers_of(seu) ==
        std::vector<std::vector<std::string>>{{"check"}, {"cont", "back"}});

  PreferenceRanking mmeu = rank(Rule::mmeu, m0, sc.beliefs(), sc.prizes());
  CHECK(tiers_of(mmeu) ==
        std::vector<std::vector<std::string>>{{"back"}, {"check"}, {"cont"}});
  CHECK(mmeu.score_of("cont") == -10000.0);
  CHECK(mmeu.score_of("back") == 0.0);
  CHECK(mmeu.score_of("check") == -4999.0);

  const double w = static_cast<double>(exact_survival_ratio(100) / 0.9L);
  PreferenceRanking mwer = rank(Rule::mwer, m0, delivery_beliefs(w), sc.prizes());
  CHECK(tiers_of(mwer) ==
        std::vector<std::vector<std::string>>{{"cont"}, {"check"}, {"back"}});

  CHECK_THROWS_AS(rank(Rule::seu, m0, sc.beliefs(), sc.prizes()),
                  PreconditionError);
}

TEST_CASE("rank can extend the menu first") {
  Scenario sc = delivery_scenario();
  const Menu& m0 = sc.menu("M0");
  std::vector<Act> extra = {sc.act("new")};
  PreferenceRanking r =
      rank(Rule::mer, m0, sc.beliefs(), sc.prizes(), extra);
  CHECK(r.scores.size() == 4);
  CHECK(r.score_of("new") == 20000.0);
  CHECK(r.score_of("cont") == 10000.0);
}

TEST_CASE("regret is nonnegative and vanishes somewhere in every state") {
  ScenarioParams params;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Scenario sc = random_scenario(params, Rng::derive(991, seed));
    const Menu& m = sc.menu("M");
    for (std::size_t s = 0; s < sc.states().size(); ++s) {
      double least = 1e300;
      for (const Act& f : m.acts()) {
        const double r = regret(f, s, m, sc.prizes());
        CHECK(r >= 0.0);
        least = std::min(least, r);
      }
      CHECK(least == 0.0);
    }
  }
}

TEST_CASE("adding an act never lowers regret") {
  ScenarioParams params;
  Rng extra_rng(5150);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Scenario sc = random_scenario(params, Rng::derive(4242, seed));
    const Menu& m = sc.menu("M");
    const Act& newcomer =
        sc.acts()[extra_rng.next_index(sc.acts().size())];
    Act clone("newcomer", newcomer.outcomes());
    Menu bigger = m.extended(clone);
    for (const Act& f : m.acts())
      for (std::size_t s = 0; s < sc.states().size(); ++s)
        CHECK(regret(f, s, bigger, sc.prizes()) >=
              regret(f, s, m, sc.prizes()));
  }
}

TEST_CASE("singleton beliefs make regret minimization expected-utility maximization") {
  ScenarioParams params;
  params.min_measures = params.max_measures = 1;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Scenario sc = random_scenario(params, Rng::derive(777, seed));
    PreferenceRanking mer = rank(Rule::mer, sc.menu("M"), sc.beliefs(), sc.prizes());
    PreferenceRanking seu = rank(Rule::seu, sc.menu("M"), sc.beliefs(), sc.prizes());
    CHECK(mer.same_tiers(seu));
  }
}

TEST_CASE("probability-free regret equals worst case over all point masses") {
  ScenarioParams params;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Scenario sc = random_scenario(params, Rng::derive(31337, seed));
    const std::size_t n = sc.states().size();
    std::vector<WeightedMeasure> points;
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<double> probs(n, 0.0);
      probs[s] = 1.0;
      points.push_back({Measure(std::move(probs)), 1.0, "d" + std::to_string(s)});
    }
    WeightedBeliefs vertex_beliefs(std::move(points));
    PreferenceRanking reg = rank(Rule::reg, sc.menu("M"), sc.beliefs(), sc.prizes());
    PreferenceRanking mer = rank(Rule::mer, sc.menu("M"), vertex_beliefs, sc.prizes());
    CHECK(reg.same_tiers(mer));
    for (const auto& [name, score] : reg.scores)
      CHECK(score == mer.score_of(name));
  }
}

TEST_CASE("unit weights collapse the weighted rule to the unweighted one") {
  ScenarioParams params;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Scenario sc = random_scenario(params, Rng::derive(2718, seed));
    std::vector<WeightedMeasure> unit;
    std::size_t i = 0;
    for (const auto& e : sc.beliefs().entries())
      unit.push_back({e.measure, 1.0, "m" + std::to_string(i++)});
    WeightedBeliefs unit_beliefs(std::move(unit));
    PreferenceRanking mwer =
        rank(Rule::mwer, sc.menu("M"), unit_beliefs, sc.prizes());
    PreferenceRanking mer = rank(Rule::mer, sc.menu("M"), unit_beliefs, sc.prizes());
    CHECK(mwer.same_tiers(mer));
  }
}

TEST_CASE("shifting one state's utilities leaves regret unchanged") {
  // acts built on per-(act,state) prizes so one state's utilities can move
  // together
  Rng rng(12);
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 2, m = 3;
    std::vector<std::string> prize_names;
    std::vector<double> utils;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t s = 0; s < n; ++s) {
        prize_names.push_back("p" + std::to_string(a) + "_" + std::to_string(s));
        utils.push_back(rng.next_real(-10, 10));
      }
    const double shift = rng.next_real(-5, 5);
    auto build = [&](bool shifted) {
      std::vector<double> u = utils;
      if (shifted)
        for (std::size_t a = 0; a < m; ++a) u[a * n + 0] += shift;
      PrizeSpace prizes(prize_names, u);
      std::vector<Act> acts;
      for (std::size_t a = 0; a < m; ++a) {
        std::vector<Lottery> outcomes;
        for (std::size_t s = 0; s < n; ++s)
          outcomes.push_back(Lottery::point(a * n + s, prizes.size()));
        acts.emplace_back("a" + std::to_string(a), std::move(outcomes));
      }
      return std::make_pair(Menu(acts), prizes);
    };
    auto [menu0, prizes0] = build(false);
    auto [menu1, prizes1] = build(true);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t s = 0; s < n; ++s)
        CHECK(regret(menu0.act(a), s, menu0, prizes0) ==
              doctest::Approx(regret(menu1.act(a), s, menu1, prizes1))
                  .epsilon(1e-12));
  }
}

TEST_CASE("menu dependence flips the regret order") {
  Scenario sc = delivery_scenario();
  std::vector<Measure> both = {sc.beliefs().entry(0).measure,
                               sc.beliefs().entry(1).measure};
  const Menu& m0 = sc.menu("M0");
  const Menu& m1 = sc.menu("M1");
  CHECK(max_expected_regret(sc.act("check"), m0, both, sc.prizes()) <
        max_expected_regret(sc.act("cont"), m0, both, sc.prizes()));
  CHECK(max_expected_regret(sc.act("cont"), m1, both, sc.prizes()) <
        max_expected_regret(sc.act("check"), m1, both, sc.prizes()));
}

TEST_CASE("rankings partition the menu with strictly ordered tiers") {
  ScenarioParams params;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Scenario sc = random_scenario(params, Rng::derive(1717, seed));
    WeightedBeliefs single({{sc.beliefs().entry(0).measure, 1.0, "m0"}});
    for (Rule rule : kAllRules) {
      const WeightedBeliefs& b = rule == Rule::seu ? single : sc.beliefs();
      PreferenceRanking r = rank(rule, sc.menu("M"), b, sc.prizes());
      std::vector<std::string> seen;
      for (std::size_t t = 0; t < r.tiers.size(); ++t) {
        REQUIRE(!r.tiers[t].empty());
        for (const auto& name : r.tiers[t]) seen.push_back(name);
        if (t + 1 < r.tiers.size()) {
          // every act in the better tier strictly beats every act below it
          for (const auto& a : r.tiers[t])
            for (const auto& bn : r.tiers[t + 1]) {
              const double da = r.score_of(a), db = r.score_of(bn);
              CHECK((rule_minimizes(rule) ? da < db : da > db));
            }
        }
        for (std::size_t i = 1; i < r.tiers[t].size(); ++i)
          CHECK(std::fabs(r.score_of(r.tiers[t][i]) -
                          r.score_of(r.tiers[t][0])) <= kTieEpsilon);
      }
      std::sort(seen.begin(), seen.end());
      std::vector<std::string> names;
      for (const Act& a : sc.menu("M").acts()) names.push_back(a.name());
      std::sort(names.begin(), names.end());
      CHECK(seen == names);
    }
  }
}

TEST_CASE("tier grouping uses the tie tolerance") {
  PrizeSpace prizes({"a", "b", "c"}, {1.0, 1.0 + 5e-10, 2.0});
  std::vector<Act> acts;
  acts.emplace_back("x", std::vector<Lottery>{Lottery::point(0, 3)});
  acts.emplace_back("y", std::vector<Lottery>{Lottery::point(1, 3)});
  acts.emplace_back("z", std::vector<Lottery>{Lottery::point(2, 3)});
  Menu m(acts);
  WeightedBeliefs b({{Measure({1.0}), 1.0, "m"}});
  PreferenceRanking r = rank(Rule::seu, m, b, prizes);
  CHECK(r.tiers ==
        std::vector<std::vector<std::string>>{{"z"}, {"x", "y"}});
}
