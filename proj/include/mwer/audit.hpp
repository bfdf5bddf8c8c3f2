#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mwer/model.hpp"
#include "mwer/rules.hpp"
#include "mwer/update.hpp"

namespace mwer {

// The executable checks: the ten structural/mixing axioms, the two
// independence variants, the weak-betweenness axiom, and menu-dependent
// dynamic consistency.
enum class Axiom {
  transitivity,
  completeness,
  nontriviality,
  monotonicity,
  mixture_continuity,
  ambiguity_aversion,
  independence,
  constant_menu_independence,
  ina,
  boundedness,
  c_independence,
  axiom12,
  mdc,
};

std::string_view axiom_name(Axiom a);
Axiom parse_axiom(std::string_view name);

// How mixture comparisons pick their menu when the axiom statement leaves
// it open (independence and c-independence only):
//   transformed — compare the mixed acts inside the mixed menu pM + (1-p)h
//   fixed       — compare them inside M extended by the two mixed acts
// Axioms that fix their own menu algebra ignore the policy.
enum class MenuPolicy { transformed, fixed };

std::string_view policy_name(MenuPolicy p);
MenuPolicy parse_policy(std::string_view name);

// Size bounds and utility range for generated scenarios.
struct ScenarioParams {
  std::size_t min_states = 2, max_states = 3;
  std::size_t min_acts = 2, max_acts = 4;
  std::size_t min_measures = 1, max_measures = 3;
  std::size_t prizes = 4;
  double utility_lo = -10.0, utility_hi = 10.0;
};

// Deterministic function of (params, seed); the result passes validation.
Scenario random_scenario(const ScenarioParams& params, std::uint64_t seed);

// Everything a single axiom evaluation needs, by name, so a probe replays
// from a serialized scenario.
struct Probe {
  std::string menu = "M";
  std::string menu2;    // second menu (constant-menu-independence, ina)
  std::string f, g, h;  // act names; roles depend on the axiom
  double p = 0.5;       // mixing coefficient
  std::string event;    // mdc
};

struct ProbeOutcome {
  enum class Kind { pass, vacuous, violation, inconclusive };
  Kind kind = Kind::pass;
  std::string detail;
  // Labeled orientation-adjusted score differences backing the verdict.
  std::vector<std::pair<std::string, double>> deltas;
};

// Violations must contradict a comparison that holds by more than this
// margin; everything inside it is treated as tolerance noise.
inline constexpr double kViolationMargin = 10.0 * kTieEpsilon;

// Evaluates one axiom instance exactly as stated. Premise failures come
// back vacuous; mixture continuity reports inconclusive when the witness
// grid {k/64} finds no pair.
ProbeOutcome check_axiom(Axiom axiom, Rule rule, const Scenario& sc,
                         MenuPolicy policy, const Probe& probe);

// True iff no state exists where h beats every act of the menu.
bool never_strictly_optimal(const Act& h, const Menu& menu,
                            const PrizeSpace& prizes);

struct Witness {
  Scenario scenario;
  Probe probe;
  ProbeOutcome outcome;
  Axiom axiom = Axiom::transitivity;
  Rule rule = Rule::mwer;
  MenuPolicy policy = MenuPolicy::transformed;
  std::uint64_t trial = 0;
};

enum class Verdict { supported, counterexample, inconclusive };
std::string_view verdict_name(Verdict v);

struct AuditReport {
  Axiom axiom = Axiom::transitivity;
  Rule rule = Rule::mwer;
  MenuPolicy policy = MenuPolicy::transformed;
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  std::uint64_t passes = 0;
  std::uint64_t vacuous = 0;
  std::uint64_t inconclusive = 0;
  std::optional<Witness> witness;  // first violation, by trial index
  Verdict verdict = Verdict::supported;
};

// Runs `trials` generated probes. Trials derive independent streams from
// (seed, index), so the report does not depend on evaluation order.
AuditReport audit_axiom(Axiom axiom, Rule rule, MenuPolicy policy,
                        std::uint64_t trials, std::uint64_t seed);

// Same loop, stopping at the first violation. Absence of a witness is
// reported as inconclusive, never as proof.
std::optional<Witness> find_counterexample(Axiom axiom, Rule rule,
                                           MenuPolicy policy,
                                           std::uint64_t budget,
                                           std::uint64_t seed);

// One row of the rule-by-axiom matrix.
enum class Table4Row { core, independence, c_independence, axiom12 };
std::string_view table4_row_name(Table4Row r);

struct Table4Cell {
  Table4Row row = Table4Row::core;
  Rule rule = Rule::seu;
  bool expected_supported = false;  // checkmark in the reference matrix
  Verdict verdict = Verdict::supported;
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  std::uint64_t vacuous = 0;
  std::uint64_t inconclusive = 0;
  std::vector<std::pair<Axiom, Verdict>> parts;  // per-axiom detail
  std::optional<Witness> witness;
};

struct Table4Report {
  std::uint64_t trials = 0;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  std::vector<Table4Cell> cells;
};

// Audits every checkmark cell with `trials` probes per axiom and searches
// every blank cell with `budget` trials; deterministic given the seed.
Table4Report table4_matrix(std::uint64_t trials, std::uint64_t budget,
                           std::uint64_t seed);

// |mwer(fEh within MEh, priors) - weight(E) * mwer(f within M, updated)|;
// zero in exact arithmetic for every non-null E.
double check_theorem2_identity(const WeightedBeliefs& beliefs, const Event& e,
                               const Menu& menu, const Act& f, const Act& h,
                               const PrizeSpace& prizes,
                               const StateSpace& states);

enum class UpdateMethod { likelihood, measure_by_measure };

// Menu-dependent dynamic consistency: the conditional mwer comparison of f
// and g must match the unconditional comparison of fEh' and gEh' within
// MEh', for the given h and every other h' in the menu.
ProbeOutcome check_mdc(const WeightedBeliefs& beliefs, const Event& e,
                       const Menu& menu, const Act& f, const Act& g,
                       const Act& h, UpdateMethod method,
                       const PrizeSpace& prizes, const StateSpace& states);

// Max mismatch between updating on e1 then e2, e2 then e1, and the
// intersection directly; entries are matched after canonical sorting.
double check_prop1(const WeightedBeliefs& beliefs, const Event& e1,
                   const Event& e2);

// Witness (de)serialization; the embedded scenario carries the comparison
// menus and derived acts so the command line can replay the comparisons.
nlohmann::ordered_json witness_to_json(const Witness& w);
Witness witness_from_json(const nlohmann::ordered_json& doc,
                          std::string_view origin);

// Re-evaluates a witness from its serialized form; true iff the violation
// reproduces.
bool replay_witness(const Witness& w);

}  // namespace mwer
