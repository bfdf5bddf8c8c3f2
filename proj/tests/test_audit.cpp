#include <doctest.h>

#include <cmath>

#include "mwer/audit.hpp"
#include "mwer/fixtures.hpp"
#include "mwer/rng.hpp"
#include "mwer/scenario_json.hpp"
#include "mwer/update.hpp"

using namespace mwer;

TEST_CASE("random scenarios are valid and deterministic") {
  ScenarioParams params;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Scenario sc = random_scenario(params, seed);
    sc.validate();
    Scenario again = random_scenario(params, seed);
    CHECK(serialize_scenario(sc) == serialize_scenario(again));
  }
  ScenarioParams bad;
  bad.prizes = 1;
  CHECK_THROWS_AS(random_scenario(bad, 0), PreconditionError);

  // bounds pinned to one measure always produce a seu-compatible scenario
  ScenarioParams tight;
  tight.min_states = tight.max_states = 2;
  tight.min_acts = tight.max_acts = 2;
  tight.min_measures = tight.max_measures = 1;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Scenario sc = random_scenario(tight, seed);
    CHECK(sc.beliefs().size() == 1);
    CHECK_NOTHROW(rank(Rule::seu, sc.menu("M"), sc.beliefs(), sc.prizes()));
  }
}

TEST_CASE("never strictly optimal") {
  Scenario sc = delivery_scenario();
  const Menu& m0 = sc.menu("M0");
  // the doubled-stakes act beats everything when one item is broken
  CHECK(!never_strictly_optimal(sc.act("new"), m0, sc.prizes()));
  // members witness themselves
  for (const Act& a : m0.acts()) CHECK(never_strictly_optimal(a, m0, sc.prizes()));
  // a constant at the bottom is never strictly optimal
  Act low = constant_act(
      Lottery::point(sc.prizes().index_of("m20000"), sc.prizes().size()), 2, "low");
  CHECK(never_strictly_optimal(low, m0, sc.prizes()));
}

TEST_CASE("hedging between exact ties refutes independence for worst-case utility") {
  Scenario sc = two_point_scenario();
  Probe probe;
  probe.menu = "M";
  probe.f = "up";
  probe.g = "down";
  probe.h = "up";
  probe.p = 0.5;
  ProbeOutcome out = check_axiom(Axiom::independence, Rule::mmeu, sc,
                                 MenuPolicy::transformed, probe);
  CHECK(out.kind == ProbeOutcome::Kind::violation);
  // the unmixed pair ties while the mixed pair strictly favors the hedge
  CHECK(std::fabs(out.deltas[0].second) <= kTieEpsilon);
  CHECK(out.deltas[1].second < -kViolationMargin);

  // the same evaluation under mwer respects the axiom
  ProbeOutcome ok = check_axiom(Axiom::independence, Rule::mwer, sc,
                                MenuPolicy::transformed, probe);
  CHECK(ok.kind == ProbeOutcome::Kind::pass);
}

TEST_CASE("support audits hold where the reference matrix has checkmarks") {
  AuditReport aa = audit_axiom(Axiom::ambiguity_aversion, Rule::mwer,
                               MenuPolicy::transformed, 2000, 17);
  CHECK(aa.violations == 0);
  CHECK(aa.passes > 1000);

  AuditReport ax12 = audit_axiom(Axiom::axiom12, Rule::mer, MenuPolicy::fixed,
                                 2000, 17);
  CHECK(ax12.violations == 0);
  CHECK(ax12.passes > 1500);

  AuditReport ind = audit_axiom(Axiom::independence, Rule::mwer,
                                MenuPolicy::transformed, 2000, 17);
  CHECK(ind.violations == 0);
}

TEST_CASE("searches find the expected counterexamples") {
  auto found = find_counterexample(Axiom::independence, Rule::mmeu,
                                   MenuPolicy::transformed, 10000, 5);
  REQUIRE(found.has_value());
  CHECK(found->outcome.kind == ProbeOutcome::Kind::violation);

  auto cind = find_counterexample(Axiom::c_independence, Rule::mer,
                                  MenuPolicy::fixed, 10000, 5);
  CHECK(cind.has_value());

  auto ax12 = find_counterexample(Axiom::axiom12, Rule::mwer, MenuPolicy::fixed,
                                  10000, 5);
  CHECK(ax12.has_value());

  auto none = find_counterexample(Axiom::independence, Rule::mwer,
                                  MenuPolicy::transformed, 5000, 5);
  CHECK(!none.has_value());
}

TEST_CASE("every rule shows a strict preference on the delivery menus") {
  Scenario sc = delivery_scenario();
  WeightedBeliefs uniform({{Measure({0.5, 0.5}), 1.0, "u"}});
  for (Rule rule : kAllRules) {
    const WeightedBeliefs& b = rule == Rule::seu ? uniform : sc.beliefs();
    double d = pref_delta(rule, sc.menu("M0"), b, sc.prizes(), "check", "cont");
    double d2 = pref_delta(rule, sc.menu("M0"), b, sc.prizes(), "cont", "check");
    CHECK((std::fabs(d) > kViolationMargin || std::fabs(d2) > kViolationMargin));
  }
}

TEST_CASE("witnesses replay from their serialized form") {
  const Axiom axioms[] = {Axiom::independence, Axiom::c_independence,
                          Axiom::axiom12};
  const Rule rules[] = {Rule::mmeu, Rule::mer, Rule::mwer};
  const MenuPolicy policies[] = {MenuPolicy::transformed, MenuPolicy::fixed,
                                 MenuPolicy::fixed};
  for (int i = 0; i < 3; ++i) {
    CAPTURE(i);
    auto witness = find_counterexample(axioms[i], rules[i], policies[i], 20000, 23);
    REQUIRE(witness.has_value());
    const std::string text = dump_json(witness_to_json(*witness));
    Witness parsed =
        witness_from_json(nlohmann::ordered_json::parse(text), "witness");
    CHECK(replay_witness(parsed));
    ProbeOutcome again =
        check_axiom(parsed.axiom, parsed.rule, parsed.scenario, parsed.policy,
                    parsed.probe);
    CHECK(again.kind == ProbeOutcome::Kind::violation);
    CHECK(again.detail == witness->outcome.detail);
  }
}

TEST_CASE("audits are reproducible") {
  AuditReport a = audit_axiom(Axiom::independence, Rule::mmeu,
                              MenuPolicy::transformed, 500, 99);
  AuditReport b = audit_axiom(Axiom::independence, Rule::mmeu,
                              MenuPolicy::transformed, 500, 99);
  CHECK(a.trials == b.trials);
  CHECK(a.violations == b.violations);
  CHECK(a.passes == b.passes);
  REQUIRE(a.witness.has_value());
  REQUIRE(b.witness.has_value());
  CHECK(a.witness->trial == b.witness->trial);
  CHECK(dump_json(witness_to_json(*a.witness)) ==
        dump_json(witness_to_json(*b.witness)));
}

TEST_CASE("the dynamic-consistency identity holds exactly on the delivery problem") {
  Scenario sc = delivery_scenario();
  const Menu& m0 = sc.menu("M0");
  const Event& e = sc.event("E1");
  for (const char* name : {"cont", "back", "check"}) {
    const double residual = check_theorem2_identity(
        sc.beliefs(), e, m0, sc.act(name), sc.act("back"), sc.prizes(),
        sc.states());
    CHECK(residual == 0.0);
  }
  // conditioning on everything is the identity on both sides
  CHECK(check_theorem2_identity(sc.beliefs(), Event::full(2), m0,
                                sc.act("check"), sc.act("back"), sc.prizes(),
                                sc.states()) == 0.0);
  CHECK_THROWS_AS(
      check_theorem2_identity(sc.beliefs(), sc.event("nothing"), m0,
                              sc.act("cont"), sc.act("back"), sc.prizes(),
                              sc.states()),
      UpdateUndefinedError);
}

TEST_CASE("the identity survives random instances") {
  ScenarioParams params;
  params.max_states = 4;
  Rng rng(31);
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 2000 && seed < 20000; ++seed) {
    Scenario sc = random_scenario(params, Rng::derive(1848, seed));
    const std::size_t n = sc.states().size();
    std::vector<char> mask(n, 0);
    for (std::size_t s = 0; s < n; ++s) mask[s] = rng.next_bool() ? 1 : 0;
    Event e(mask);
    if (event_weight(sc.beliefs(), e) < 1e-6) continue;
    const Menu& m = sc.menu("M");
    const Act& f = m.act(rng.next_index(m.size()));
    const Act& h = m.act(rng.next_index(m.size()));
    CHECK(check_theorem2_identity(sc.beliefs(), e, m, f, h, sc.prizes(),
                                  sc.states()) < 1e-9);
    ++checked;
  }
  CHECK(checked == 2000);
}

TEST_CASE("dynamic consistency holds with likelihood updating and fails without") {
  AuditReport mdc = audit_axiom(Axiom::mdc, Rule::mwer, MenuPolicy::fixed, 2000,
                                4711);
  CHECK(mdc.violations == 0);
  CHECK(mdc.passes > 1500);

  // substituting the unweighted update breaks the equivalence somewhere
  ScenarioParams params;
  params.max_states = 4;
  Rng rng(63);
  bool violated = false;
  for (std::uint64_t seed = 0; seed < 20000 && !violated; ++seed) {
    Scenario sc = random_scenario(params, Rng::derive(5757, seed));
    const std::size_t n = sc.states().size();
    std::vector<char> mask(n, 0);
    for (std::size_t s = 0; s < n; ++s) mask[s] = rng.next_bool() ? 1 : 0;
    Event e(mask);
    if (event_weight(sc.beliefs(), e) < 1e-6) continue;
    const Menu& m = sc.menu("M");
    const Act& f = m.act(rng.next_index(m.size()));
    const Act& g = m.act(rng.next_index(m.size()));
    ProbeOutcome out =
        check_mdc(sc.beliefs(), e, m, f, g, m.act(0),
                  UpdateMethod::measure_by_measure, sc.prizes(), sc.states());
    violated = out.kind == ProbeOutcome::Kind::violation;
  }
  CHECK(violated);

  Scenario sc = delivery_scenario();
  CHECK_THROWS_AS(check_mdc(sc.beliefs(), sc.event("nothing"), sc.menu("M0"),
                            sc.act("cont"), sc.act("back"), sc.act("back"),
                            UpdateMethod::likelihood, sc.prizes(), sc.states()),
                  UpdateUndefinedError);

  // learning nothing leaves both sides of the comparison identical
  ProbeOutcome trivial =
      check_mdc(sc.beliefs(), Event::full(2), sc.menu("M0"), sc.act("cont"),
                sc.act("back"), sc.act("check"), UpdateMethod::likelihood,
                sc.prizes(), sc.states());
  CHECK(trivial.kind == ProbeOutcome::Kind::pass);
  CHECK(trivial.deltas[0].second ==
        doctest::Approx(trivial.deltas[1].second).epsilon(1e-12));
}

TEST_CASE("updating commutes on the worked example") {
  Scenario sc = three_state_scenario();
  CHECK(check_prop1(sc.beliefs(), sc.event("E12"), sc.event("E23")) < 1e-9);
  // conditioning on everything twice only shuffles the last bit
  CHECK(check_prop1(sc.beliefs(), Event::full(3), Event::full(3)) < 1e-12);
}

TEST_CASE("a small matrix run reproduces the reference pattern") {
  Table4Report report = table4_matrix(300, 4000, 12);
  auto cell = [&](Table4Row row, Rule rule) -> const Table4Cell& {
    for (const auto& c : report.cells)
      if (c.row == row && c.rule == rule) return c;
    throw std::runtime_error("missing cell");
  };
  for (Rule rule : kAllRules) {
    CHECK(cell(Table4Row::core, rule).verdict == Verdict::supported);
    CHECK(cell(Table4Row::core, rule).violations == 0);
  }
  CHECK(cell(Table4Row::independence, Rule::mwer).verdict == Verdict::supported);
  CHECK(cell(Table4Row::independence, Rule::mmeu).verdict ==
        Verdict::counterexample);
  CHECK(cell(Table4Row::c_independence, Rule::mer).verdict ==
        Verdict::counterexample);
  CHECK(cell(Table4Row::c_independence, Rule::mmeu).verdict == Verdict::supported);
  CHECK(cell(Table4Row::axiom12, Rule::mwer).verdict == Verdict::counterexample);
  CHECK(cell(Table4Row::axiom12, Rule::mer).verdict == Verdict::supported);
}

TEST_CASE("axiom and policy names round-trip") {
  for (const char* name :
       {"transitivity", "completeness", "nontriviality", "monotonicity",
        "mixture-continuity", "ambiguity-aversion", "independence",
        "constant-menu-independence", "ina", "boundedness", "c-independence",
        "axiom12", "mdc"})
    CHECK(axiom_name(parse_axiom(name)) == name);
  CHECK(parse_axiom("ax12") == Axiom::axiom12);
  CHECK_THROWS_AS(parse_axiom("symmetry"), ValidationError);
  CHECK(parse_policy("fixed") == MenuPolicy::fixed);
  CHECK_THROWS_AS(parse_policy("loose"), ValidationError);
}

TEST_CASE("state-wise dominance implies weak preference for every rule") {
  ScenarioParams params;
  Rng rng(404);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Scenario sc = random_scenario(params, Rng::derive(8080, seed));
    const Menu& m = sc.menu("M");
    const Act& base = m.act(rng.next_index(m.size()));
    // mix toward the worst prize, state by state
    std::size_t worst = 0;
    for (std::size_t i = 1; i < sc.prizes().size(); ++i)
      if (sc.prizes().utility(i) < sc.prizes().utility(worst)) worst = i;
    std::vector<Lottery> outcomes;
    for (std::size_t s = 0; s < sc.states().size(); ++s)
      outcomes.push_back(
          mix_lotteries(rng.next_unit(), base.outcome(s),
                        Lottery::point(worst, sc.prizes().size())));
    Act dominated("dominated", std::move(outcomes));
    Menu bigger = m.extended(dominated);
    WeightedBeliefs single({{sc.beliefs().entry(0).measure, 1.0, "m0"}});
    for (Rule rule : kAllRules) {
      const WeightedBeliefs& b = rule == Rule::seu ? single : sc.beliefs();
      CHECK(pref_delta(rule, bigger, b, sc.prizes(), base.name(), "dominated") >=
            -kTieEpsilon);
    }
  }
}
