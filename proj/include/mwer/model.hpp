#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mwer {

// Error taxonomy. The CLI maps ValidationError/PreconditionError/
// MembershipError to exit status 2 and UpdateUndefinedError to status 4.
class Error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
class ValidationError : public Error {
  using Error::Error;
};
class MembershipError : public Error {
  using Error::Error;
};
class PreconditionError : public Error {
  using Error::Error;
};
class UpdateUndefinedError : public Error {
  using Error::Error;
};

// Probability vectors must sum to 1 within this tolerance on input; they are
// renormalized to an exact sum afterwards so the error does not propagate.
inline constexpr double kProbTolerance = 1e-9;
// Absolute tie tolerance for preference scores.
inline constexpr double kTieEpsilon = 1e-9;
// L-infinity tolerance under which two conditional measures are considered
// the same measure when grouping updated beliefs.
inline constexpr double kGroupTolerance = 1e-12;

// Finite ordered collection of distinct state identifiers.
class StateSpace {
 public:
  explicit StateSpace(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::size_t index_of(std::string_view name) const;
  bool contains(std::string_view name) const;
  bool operator==(const StateSpace& o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Prizes with their utilities. At least two prizes must have distinct
// utility values so that nontrivial preferences exist.
class PrizeSpace {
 public:
  PrizeSpace(std::vector<std::string> names, std::vector<double> utilities);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  double utility(std::size_t i) const { return utilities_.at(i); }
  const std::vector<double>& utilities() const { return utilities_; }
  std::size_t index_of(std::string_view name) const;
  bool contains(std::string_view name) const;
  bool operator==(const PrizeSpace& o) const {
    return names_ == o.names_ && utilities_ == o.utilities_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<double> utilities_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Finite-support probability over prizes, stored as a sorted (prize index,
// probability) list with zero entries dropped and the sum renormalized to 1.
class Lottery {
 public:
  Lottery(std::vector<std::pair<std::size_t, double>> support,
          std::size_t prize_count);

  static Lottery point(std::size_t prize, std::size_t prize_count);

  const std::vector<std::pair<std::size_t, double>>& support() const {
    return support_;
  }
  bool operator==(const Lottery& o) const { return support_ == o.support_; }

 private:
  std::vector<std::pair<std::size_t, double>> support_;
};

double lottery_utility(const Lottery& l, const PrizeSpace& prizes);

// Pointwise mixture p*a + (1-p)*b.
Lottery mix_lotteries(double p, const Lottery& a, const Lottery& b);

// An act maps every state to a lottery. Acts carry names so that rankings
// and audit witnesses stay printable and reproducible.
class Act {
 public:
  Act(std::string name, std::vector<Lottery> outcomes);

  const std::string& name() const { return name_; }
  std::size_t state_count() const { return outcomes_.size(); }
  const Lottery& outcome(std::size_t state) const { return outcomes_.at(state); }
  const std::vector<Lottery>& outcomes() const { return outcomes_; }
  bool same_outcomes(const Act& o) const { return outcomes_ == o.outcomes_; }

 private:
  std::string name_;
  std::vector<Lottery> outcomes_;
};

// Probability measure over states, dense by state index.
class Measure {
 public:
  explicit Measure(std::vector<double> probs);

  std::size_t state_count() const { return probs_.size(); }
  double prob(std::size_t state) const { return probs_.at(state); }
  const std::vector<double>& probs() const { return probs_; }
  bool operator==(const Measure& o) const { return probs_ == o.probs_; }

 private:
  std::vector<double> probs_;
};

// Subset of the state space, kept as a mask.
class Event {
 public:
  explicit Event(std::vector<char> mask);
  Event(std::size_t state_count, std::span<const std::size_t> members);

  std::size_t state_count() const { return mask_.size(); }
  bool contains(std::size_t state) const { return mask_.at(state) != 0; }
  bool empty() const;
  std::size_t member_count() const;
  std::vector<std::size_t> members() const;
  Event intersect(const Event& o) const;
  Event full_complement() const;
  static Event full(std::size_t state_count);
  bool operator==(const Event& o) const { return mask_ == o.mask_; }

 private:
  std::vector<char> mask_;
};

struct WeightedMeasure {
  Measure measure;
  double weight = 1.0;
  std::string name;  // label only; not part of the value
};

// Finite set of (measure, weight) pairs. Weights live in [0,1], measures are
// pairwise distinct, and after construction the maximum weight is exactly 1:
// a maximum in (0,1) is normalized away by dividing through, all-zero
// weights are rejected.
class WeightedBeliefs {
 public:
  explicit WeightedBeliefs(std::vector<WeightedMeasure> entries);

  std::size_t size() const { return entries_.size(); }
  const WeightedMeasure& entry(std::size_t i) const { return entries_.at(i); }
  const std::vector<WeightedMeasure>& entries() const { return entries_; }
  std::size_t state_count() const { return entries_.front().measure.state_count(); }
  std::vector<Measure> measures() const;

 private:
  std::vector<WeightedMeasure> entries_;
};

// Nonempty set of acts keyed by unique name; iteration order is insertion
// order, which makes ranked output deterministic.
class Menu {
 public:
  explicit Menu(std::vector<Act> acts);

  std::size_t size() const { return acts_.size(); }
  const Act& act(std::size_t i) const { return acts_.at(i); }
  const std::vector<Act>& acts() const { return acts_; }
  bool contains(std::string_view name) const;
  const Act& at(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;

  // Requires an exact match: an act whose name is present with different
  // outcomes is a distinct act and is rejected.
  bool contains_act(const Act& a) const;

  // Returns this menu with `a` appended; appending an act already present
  // (same name, same outcomes) is the identity.
  Menu extended(const Act& a) const;
  Menu extended(std::span<const Act> acts) const;

  std::size_t state_count() const { return acts_.front().state_count(); }

 private:
  std::vector<Act> acts_;
  std::unordered_map<std::string, std::size_t> index_;
};

// ----- Act algebra -----

double expected_utility(const Act& f, const Measure& pr, const PrizeSpace& prizes);

// Per-state lottery mixture p*f + (1-p)*g. The derived name embeds p and the
// source names so mixtures are reproducible and unique per construction.
Act mix_acts(double p, const Act& f, const Act& g);

// {mix_acts(p, f, h) : f in M}, names derived from the source names.
Menu mix_menu(double p, const Menu& m, const Act& h);

// Act equal to f on E and to h off E.
Act splice(const Act& f, const Event& e, const Act& h,
           const StateSpace& states);

// {splice(f, E, h) : f in M}.
Menu splice_menu(const Menu& m, const Event& e, const Act& h,
                 const StateSpace& states);

Act constant_act(const Lottery& l, std::size_t state_count, std::string name = {});

// Shortest-round-trip decimal text for a double; used in derived act names.
std::string format_double(double v);

// A full decision problem: spaces, an act pool, named menus, beliefs, and
// optional named events/measures. All cross-references are validated.
class Scenario {
 public:
  Scenario(StateSpace states, PrizeSpace prizes, std::vector<Act> acts,
           std::vector<std::pair<std::string, Menu>> menus,
           WeightedBeliefs beliefs,
           std::vector<std::pair<std::string, Event>> events = {},
           std::vector<std::pair<std::string, Measure>> measures = {});

  const StateSpace& states() const { return states_; }
  const PrizeSpace& prizes() const { return prizes_; }
  const std::vector<Act>& acts() const { return acts_; }
  const Act& act(std::string_view name) const;
  bool has_act(std::string_view name) const;
  const std::vector<std::pair<std::string, Menu>>& menus() const { return menus_; }
  const Menu& menu(std::string_view name) const;
  bool has_menu(std::string_view name) const;
  const WeightedBeliefs& beliefs() const { return beliefs_; }
  const std::vector<std::pair<std::string, Event>>& events() const { return events_; }
  const Event& event(std::string_view name) const;
  bool has_event(std::string_view name) const;
  const std::vector<std::pair<std::string, Measure>>& measures() const {
    return measures_;
  }
  const Measure& measure(std::string_view name) const;
  bool has_measure(std::string_view name) const;

  // Re-checks every invariant; construction implies this passes.
  void validate() const;

 private:
  StateSpace states_;
  PrizeSpace prizes_;
  std::vector<Act> acts_;
  std::vector<std::pair<std::string, Menu>> menus_;
  WeightedBeliefs beliefs_;
  std::vector<std::pair<std::string, Event>> events_;
  std::vector<std::pair<std::string, Measure>> measures_;
};

}  // namespace mwer
