#include "mwer/fixtures.hpp"

namespace mwer {

namespace {

Act utility_act(std::string name, const PrizeSpace& prizes,
                const std::vector<std::string>& prize_names) {
  std::vector<Lottery> outcomes;
  outcomes.reserve(prize_names.size());
  for (const auto& p : prize_names)
    outcomes.push_back(Lottery::point(prizes.index_of(p), prizes.size()));
  return Act(std::move(name), std::move(outcomes));
}

}  // namespace

Scenario delivery_scenario(double weight_ten) {
  StateSpace states({"one_broken", "ten_broken"});
  // One prize per payoff keeps every utility, regret, and score an exact
  // integer.
  PrizeSpace prizes({"p10000", "m10000", "p0", "p5001", "m4999", "p20000",
                     "m20000"},
                    {10000, -10000, 0, 5001, -4999, 20000, -20000});

  std::vector<Act> acts;
  acts.push_back(utility_act("cont", prizes, {"p10000", "m10000"}));
  acts.push_back(utility_act("back", prizes, {"p0", "p0"}));
  acts.push_back(utility_act("check", prizes, {"p5001", "m4999"}));
  acts.push_back(utility_act("new", prizes, {"p20000", "m20000"}));

  Menu m0({acts[0], acts[1], acts[2]});
  Menu m1({acts[0], acts[1], acts[2], acts[3]});

  WeightedBeliefs beliefs({{Measure({1.0, 0.0}), 1.0, "Pr1"},
                           {Measure({0.0, 1.0}), weight_ten, "Pr10"}});

  std::vector<std::pair<std::string, Event>> events;
  events.emplace_back("E1", Event({1, 0}));
  events.emplace_back("E10", Event({0, 1}));
  events.emplace_back("nothing", Event({0, 0}));

  return Scenario(std::move(states), std::move(prizes), std::move(acts),
                  {{"M0", std::move(m0)}, {"M1", std::move(m1)}},
                  std::move(beliefs), std::move(events));
}

Scenario two_point_scenario() {
  StateSpace states({"s1", "s2"});
  PrizeSpace prizes({"one", "zero"}, {1.0, 0.0});

  std::vector<Act> acts;
  acts.push_back(utility_act("up", prizes, {"one", "zero"}));
  acts.push_back(utility_act("down", prizes, {"zero", "one"}));

  Menu m({acts[0], acts[1]});
  WeightedBeliefs beliefs({{Measure({1.0, 0.0}), 1.0, "d1"},
                           {Measure({0.0, 1.0}), 1.0, "d2"}});
  return Scenario(std::move(states), std::move(prizes), std::move(acts),
                  {{"M", std::move(m)}}, std::move(beliefs));
}

Scenario three_state_scenario() {
  StateSpace states({"s1", "s2", "s3"});
  PrizeSpace prizes({"one", "zero"}, {1.0, 0.0});

  std::vector<Act> acts;
  acts.push_back(utility_act("top", prizes, {"one", "zero", "zero"}));
  acts.push_back(utility_act("mid", prizes, {"zero", "one", "zero"}));

  Menu m({acts[0], acts[1]});
  WeightedBeliefs beliefs({{Measure({0.6, 0.3, 0.1}), 1.0, "A"},
                           {Measure({0.1, 0.25, 0.65}), 1.0, "B"}});

  std::vector<std::pair<std::string, Event>> events;
  events.emplace_back("E12", Event({1, 1, 0}));
  events.emplace_back("E23", Event({0, 1, 1}));

  return Scenario(std::move(states), std::move(prizes), std::move(acts),
                  {{"M", std::move(m)}}, std::move(beliefs), std::move(events));
}

}  // namespace mwer
