#include <doctest.h>

#include <cmath>

#include "mwer/fixtures.hpp"
#include "mwer/model.hpp"
#include "mwer/rng.hpp"
#include "mwer/rules.hpp"

using namespace mwer;

namespace {

Lottery lottery(std::initializer_list<std::pair<std::size_t, double>> support,
                std::size_t prizes) {
  return Lottery(std::vector<std::pair<std::size_t, double>>(support), prizes);
}

Act random_act(Rng& rng, std::string name, std::size_t states, std::size_t prizes) {
  std::vector<Lottery> outcomes;
  for (std::size_t s = 0; s < states; ++s) {
    const std::size_t a = rng.next_index(prizes);
    std::size_t b = rng.next_index(prizes);
    if (a == b) {
      outcomes.push_back(Lottery::point(a, prizes));
    } else {
      const double t = rng.next_unit();
      outcomes.push_back(lottery({{a, t}, {b, 1.0 - t}}, prizes));
    }
  }
  return Act(std::move(name), std::move(outcomes));
}

}  // namespace

TEST_CASE("state and prize space invariants") {
  CHECK_THROWS_AS(StateSpace({}), ValidationError);
  CHECK_THROWS_AS(StateSpace({"s", "s"}), ValidationError);
  CHECK_THROWS_AS(PrizeSpace({"a"}, {1.0}), ValidationError);
  CHECK_THROWS_AS(PrizeSpace({"a", "b"}, {2.0, 2.0}), ValidationError);
  CHECK_THROWS_AS(PrizeSpace({"a", "a"}, {1.0, 2.0}), ValidationError);

  StateSpace s({"x", "y"});
  CHECK(s.index_of("y") == 1);
  CHECK_THROWS_AS(s.index_of("z"), ValidationError);
}

TEST_CASE("lottery validation and utility") {
  PrizeSpace prizes({"hi", "lo"}, {10000.0, -10000.0});

  CHECK(lottery_utility(Lottery::point(0, 2), prizes) == 10000.0);
  CHECK(lottery_utility(lottery({{0, 0.5}, {1, 0.5}}, 2), prizes) == 0.0);

  PrizeSpace unit({"one", "zero"}, {1.0, 0.0});
  CHECK(lottery_utility(lottery({{0, 0.3}, {1, 0.7}}, 2), unit) ==
        doctest::Approx(0.3).epsilon(1e-15));

  CHECK_THROWS_AS(lottery({{0, 0.4}, {1, 0.4}}, 2), ValidationError);
  CHECK_THROWS_AS(lottery({{0, -0.1}, {1, 1.1}}, 2), ValidationError);
  CHECK_THROWS_AS(lottery({{5, 1.0}}, 2), ValidationError);
  CHECK_THROWS_AS(lottery({{0, 0.5}, {0, 0.5}}, 2), ValidationError);

  // zero-probability entries vanish from the canonical support
  Lottery z = lottery({{0, 1.0}, {1, 0.0}}, 2);
  CHECK(z.support().size() == 1);
  CHECK(z == Lottery::point(0, 2));
}

TEST_CASE("expected utility on the delivery problem") {
  Scenario sc = delivery_scenario();
  const Act& cont = sc.act("cont");
  const Act& check = sc.act("check");

  CHECK(expected_utility(cont, sc.beliefs().entry(0).measure, sc.prizes()) ==
        10000.0);
  CHECK(expected_utility(check, Measure({0.5, 0.5}), sc.prizes()) == 1.0);

  // a point mass recovers the state's lottery utility
  Rng rng(41);
  for (int i = 0; i < 50; ++i) {
    Act f = random_act(rng, "f", 2, sc.prizes().size());
    const std::size_t s = rng.next_index(2);
    std::vector<double> probs(2, 0.0);
    probs[s] = 1.0;
    CHECK(expected_utility(f, Measure(probs), sc.prizes()) ==
          lottery_utility(f.outcome(s), sc.prizes()));
  }

  CHECK_THROWS_AS(expected_utility(cont, Measure({1.0, 0.0, 0.0}), sc.prizes()),
                  PreconditionError);
}

TEST_CASE("act mixing is the identity at the endpoints") {
  Scenario sc = two_point_scenario();
  const Act& up = sc.act("up");
  const Act& down = sc.act("down");

  Act keep = mix_acts(1.0, up, down);
  CHECK(keep.same_outcomes(up));
  Act drop = mix_acts(0.0, up, down);
  CHECK(drop.same_outcomes(down));

  Act half = mix_acts(0.5, up, down);
  CHECK(lottery_utility(half.outcome(0), sc.prizes()) == 0.5);
  CHECK(lottery_utility(half.outcome(1), sc.prizes()) == 0.5);

  CHECK_THROWS_AS(mix_acts(1.5, up, down), PreconditionError);
  CHECK_THROWS_AS(mix_acts(-0.1, up, down), PreconditionError);
}

TEST_CASE("act mixing is linear in utility") {
  PrizeSpace prizes({"y0", "y1", "y2", "y3"}, {3.5, -2.25, 7.0, 0.5});
  Rng rng(99);
  for (int i = 0; i < 400; ++i) {
    const std::size_t states = 2 + rng.next_index(3);
    Act f = random_act(rng, "f", states, prizes.size());
    Act g = random_act(rng, "g", states, prizes.size());
    const double p = rng.next_unit();
    Act mixed = mix_acts(p, f, g);
    for (std::size_t s = 0; s < states; ++s) {
      const double expect = p * lottery_utility(f.outcome(s), prizes) +
                            (1.0 - p) * lottery_utility(g.outcome(s), prizes);
      CHECK(std::fabs(lottery_utility(mixed.outcome(s), prizes) - expect) <
            1e-12);
    }
  }
}

TEST_CASE("menu mixing") {
  Scenario sc = delivery_scenario();
  const Menu& m0 = sc.menu("M0");
  const Act& back = sc.act("back");

  Menu same = mix_menu(1.0, m0, back);
  REQUIRE(same.size() == m0.size());
  for (std::size_t i = 0; i < m0.size(); ++i) {
    CHECK(same.act(i).name() == m0.act(i).name());  // identity keeps names
    CHECK(same.act(i).same_outcomes(m0.act(i)));
  }

  Menu collapsed = mix_menu(0.0, m0, back);
  for (std::size_t i = 0; i < collapsed.size(); ++i)
    CHECK(collapsed.act(i).same_outcomes(back));

  Menu half = mix_menu(0.5, m0, back);
  const Act& cont_mix = half.act(0);
  CHECK(lottery_utility(cont_mix.outcome(0), sc.prizes()) == 5000.0);
  CHECK(lottery_utility(cont_mix.outcome(1), sc.prizes()) == -5000.0);
}

TEST_CASE("splicing acts") {
  Scenario sc = delivery_scenario();
  const Act& cont = sc.act("cont");
  const Act& back = sc.act("back");
  const Event& e1 = sc.event("E1");

  Act shape = splice(cont, e1, back, sc.states());
  CHECK(lottery_utility(shape.outcome(0), sc.prizes()) == 10000.0);
  CHECK(lottery_utility(shape.outcome(1), sc.prizes()) == 0.0);

  CHECK(splice(cont, Event::full(2), back, sc.states()).same_outcomes(cont));
  CHECK(splice(cont, Event({0, 0}), back, sc.states()).same_outcomes(back));

  // splicing over the same event again changes nothing
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    Act f = random_act(rng, "f", 2, sc.prizes().size());
    Act h = random_act(rng, "h", 2, sc.prizes().size());
    std::vector<char> mask = {rng.next_bool() ? char(1) : char(0),
                              rng.next_bool() ? char(1) : char(0)};
    Event e(mask);
    Act once = splice(f, e, h, sc.states());
    Act twice = splice(once, e, h, sc.states());
    CHECK(twice.same_outcomes(once));
  }
}

TEST_CASE("constant acts") {
  Scenario sc = delivery_scenario();
  Lottery l = Lottery::point(sc.prizes().index_of("p5001"), sc.prizes().size());
  Act c = constant_act(l, 2, "c");
  CHECK(lottery_utility(c.outcome(0), sc.prizes()) == 5001.0);
  CHECK(lottery_utility(c.outcome(1), sc.prizes()) == 5001.0);
  CHECK(expected_utility(c, Measure({0.25, 0.75}), sc.prizes()) ==
        doctest::Approx(5001.0).epsilon(1e-15));
  Menu singleton({c});
  CHECK(regret(c, 0, singleton, sc.prizes()) == 0.0);
  CHECK(regret(c, 1, singleton, sc.prizes()) == 0.0);
}

TEST_CASE("weighted beliefs normalize the maximum weight to one") {
  Measure a({1.0, 0.0});
  Measure b({0.0, 1.0});

  WeightedBeliefs scaled({{a, 0.5, "a"}, {b, 0.25, "b"}});
  CHECK(scaled.entry(0).weight == 1.0);
  CHECK(scaled.entry(1).weight == 0.5);

  WeightedBeliefs kept({{a, 1.0, "a"}, {b, 0.4, "b"}});
  CHECK(kept.entry(1).weight == 0.4);

  CHECK_THROWS_AS(WeightedBeliefs({{a, 0.0, "a"}, {b, 0.0, "b"}}),
                  ValidationError);
  CHECK_THROWS_AS(WeightedBeliefs({{a, 1.5, "a"}}), ValidationError);
  CHECK_THROWS_AS(WeightedBeliefs({{a, 1.0, "x"}, {a, 0.5, "y"}}),
                  ValidationError);
}

TEST_CASE("measure validation") {
  CHECK_THROWS_AS(Measure({0.5, 0.4}), ValidationError);
  CHECK_THROWS_AS(Measure({-0.1, 1.1}), ValidationError);
  Measure m({0.6, 0.3, 0.1});
  double sum = 0.0;
  for (double p : m.probs()) sum += p;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("scenario validation catches dangling references") {
  Scenario sc = delivery_scenario();
  sc.validate();

  StateSpace states({"s1", "s2"});
  PrizeSpace prizes({"a", "b"}, {1.0, 0.0});
  Act act("f", {Lottery::point(0, 2), Lottery::point(1, 2)});
  Act stranger("ghost", {Lottery::point(0, 2), Lottery::point(1, 2)});
  WeightedBeliefs beliefs({{Measure({0.5, 0.5}), 1.0, "m"}});

  CHECK_THROWS_AS(
      Scenario(states, prizes, {act}, {{"M", Menu({stranger})}}, beliefs),
      ValidationError);
  CHECK_THROWS_AS(Scenario(states, prizes, {act, act}, {}, beliefs),
                  ValidationError);
  CHECK_THROWS_AS(Scenario(states, prizes, {act}, {},
                           WeightedBeliefs({{Measure({1.0}), 1.0, "m"}})),
                  ValidationError);
}

TEST_CASE("menu membership and extension") {
  Scenario sc = delivery_scenario();
  const Menu& m0 = sc.menu("M0");
  CHECK(m0.contains("cont"));
  CHECK(!m0.contains("new"));
  CHECK_THROWS_AS(m0.index_of("new"), MembershipError);

  Menu m1 = m0.extended(sc.act("new"));
  CHECK(m1.size() == 4);
  CHECK(m1.extended(sc.act("new")).size() == 4);  // idempotent

  Act impostor("new", {Lottery::point(0, sc.prizes().size()),
                       Lottery::point(0, sc.prizes().size())});
  CHECK_THROWS_AS(m1.extended(impostor), ValidationError);
}
