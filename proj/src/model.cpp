#include "mwer/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace mwer {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

}  // namespace

// ----- StateSpace -----

StateSpace::StateSpace(std::vector<std::string> names) : names_(std::move(names)) {
  require(!names_.empty(), "state space must contain at least one state");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    require(!names_[i].empty(), "state names must be nonempty");
    auto [it, inserted] = index_.emplace(names_[i], i);
    require(inserted, "duplicate state name '" + names_[i] + "'");
  }
}

std::size_t StateSpace::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end())
    throw ValidationError("unknown state '" + std::string(name) + "'");
  return it->second;
}

bool StateSpace::contains(std::string_view name) const {
  return index_.count(std::string(name)) != 0;
}

// ----- PrizeSpace -----

PrizeSpace::PrizeSpace(std::vector<std::string> names, std::vector<double> utilities)
    : names_(std::move(names)), utilities_(std::move(utilities)) {
  require(names_.size() == utilities_.size(),
          "prize names and utilities must have equal length");
  require(names_.size() >= 2, "prize space must contain at least two prizes");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    require(!names_[i].empty(), "prize names must be nonempty");
    require(std::isfinite(utilities_[i]),
            "utility of prize '" + names_[i] + "' must be finite");
    auto [it, inserted] = index_.emplace(names_[i], i);
    require(inserted, "duplicate prize name '" + names_[i] + "'");
  }
  bool distinct = false;
  for (std::size_t i = 1; i < utilities_.size() && !distinct; ++i)
    distinct = utilities_[i] != utilities_[0];
  require(distinct, "at least two prizes must have distinct utilities");
}

std::size_t PrizeSpace::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end())
    throw ValidationError("unknown prize '" + std::string(name) + "'");
  return it->second;
}

bool PrizeSpace::contains(std::string_view name) const {
  return index_.count(std::string(name)) != 0;
}

// ----- Lottery -----

Lottery::Lottery(std::vector<std::pair<std::size_t, double>> support,
                 std::size_t prize_count) {
  double sum = 0.0;
  for (auto& [prize, prob] : support) {
    require(prize < prize_count, "lottery references a prize outside the prize space");
    require(std::isfinite(prob) && prob >= 0.0,
            "lottery probabilities must be finite and nonnegative");
    sum += prob;
  }
  require(std::fabs(sum - 1.0) <= kProbTolerance,
          "lottery probabilities must sum to 1 (got " + format_double(sum) + ")");
  std::sort(support.begin(), support.end());
  for (std::size_t i = 1; i < support.size(); ++i)
    require(support[i].first != support[i - 1].first,
            "lottery lists a prize more than once");
  support_.reserve(support.size());
  for (auto& [prize, prob] : support)
    if (prob > 0.0) support_.emplace_back(prize, prob / sum);
  require(!support_.empty(), "lottery must have nonempty support");
}

Lottery Lottery::point(std::size_t prize, std::size_t prize_count) {
  return Lottery({{prize, 1.0}}, prize_count);
}

double lottery_utility(const Lottery& l, const PrizeSpace& prizes) {
  double u = 0.0;
  for (auto& [prize, prob] : l.support()) {
    if (prize >= prizes.size())
      throw ValidationError("lottery references a prize outside the prize space");
    u += prob * prizes.utility(prize);
  }
  return u;
}

Lottery mix_lotteries(double p, const Lottery& a, const Lottery& b) {
  if (!(p >= 0.0 && p <= 1.0))
    throw PreconditionError("mixture coefficient must lie in [0,1], got " +
                            format_double(p));
  std::size_t max_prize = 0;
  std::vector<std::pair<std::size_t, double>> merged;
  auto ia = a.support().begin(), ea = a.support().end();
  auto ib = b.support().begin(), eb = b.support().end();
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && ia->first < ib->first)) {
      merged.emplace_back(ia->first, p * ia->second);
      ++ia;
    } else if (ia == ea || ib->first < ia->first) {
      merged.emplace_back(ib->first, (1.0 - p) * ib->second);
      ++ib;
    } else {
      merged.emplace_back(ia->first, p * ia->second + (1.0 - p) * ib->second);
      ++ia;
      ++ib;
    }
  }
  for (auto& [prize, prob] : merged) max_prize = std::max(max_prize, prize + 1);
  return Lottery(std::move(merged), max_prize);
}

// ----- Act -----

Act::Act(std::string name, std::vector<Lottery> outcomes)
    : name_(std::move(name)), outcomes_(std::move(outcomes)) {
  require(!name_.empty(), "act names must be nonempty");
  require(!outcomes_.empty(), "act must be defined on every state");
}

// ----- Measure -----

Measure::Measure(std::vector<double> probs) : probs_(std::move(probs)) {
  require(!probs_.empty(), "measure must cover a nonempty state space");
  double sum = 0.0;
  for (double p : probs_) {
    require(std::isfinite(p) && p >= 0.0,
            "measure probabilities must be finite and nonnegative");
    sum += p;
  }
  require(std::fabs(sum - 1.0) <= kProbTolerance,
          "measure probabilities must sum to 1 (got " + format_double(sum) + ")");
  for (double& p : probs_) p /= sum;
}

// ----- Event -----

Event::Event(std::vector<char> mask) : mask_(std::move(mask)) {
  require(!mask_.empty(), "event must live over a nonempty state space");
}

Event::Event(std::size_t state_count, std::span<const std::size_t> members)
    : mask_(state_count, 0) {
  require(state_count > 0, "event must live over a nonempty state space");
  for (std::size_t s : members) {
    require(s < state_count, "event member outside the state space");
    mask_[s] = 1;
  }
}

bool Event::empty() const {
  return std::none_of(mask_.begin(), mask_.end(), [](char c) { return c != 0; });
}

std::size_t Event::member_count() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), 1));
}

std::vector<std::size_t> Event::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i]) out.push_back(i);
  return out;
}

Event Event::intersect(const Event& o) const {
  if (o.mask_.size() != mask_.size())
    throw PreconditionError("events live over different state spaces");
  std::vector<char> m(mask_.size());
  for (std::size_t i = 0; i < mask_.size(); ++i) m[i] = mask_[i] && o.mask_[i];
  return Event(std::move(m));
}

Event Event::full_complement() const {
  std::vector<char> m(mask_.size());
  for (std::size_t i = 0; i < mask_.size(); ++i) m[i] = mask_[i] ? 0 : 1;
  return Event(std::move(m));
}

Event Event::full(std::size_t state_count) {
  return Event(std::vector<char>(state_count, 1));
}

// ----- WeightedBeliefs -----

WeightedBeliefs::WeightedBeliefs(std::vector<WeightedMeasure> entries)
    : entries_(std::move(entries)) {
  require(!entries_.empty(), "weighted beliefs must contain at least one measure");
  const std::size_t n = entries_.front().measure.state_count();
  double max_weight = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    require(e.measure.state_count() == n,
            "all measures must share one state space");
    require(std::isfinite(e.weight) && e.weight >= 0.0 && e.weight <= 1.0,
            "belief weights must lie in [0,1]");
    for (std::size_t j = 0; j < i; ++j)
      require(!(entries_[j].measure == e.measure),
              "each measure may appear only once in a weighted belief set");
    max_weight = std::max(max_weight, e.weight);
  }
  require(max_weight > 0.0, "at least one belief weight must be positive");
  if (max_weight < 1.0)
    for (auto& e : entries_) e.weight /= max_weight;
}

std::vector<Measure> WeightedBeliefs::measures() const {
  std::vector<Measure> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.measure);
  return out;
}

// ----- Menu -----

Menu::Menu(std::vector<Act> acts) : acts_(std::move(acts)) {
  require(!acts_.empty(), "menu must be nonempty");
  const std::size_t n = acts_.front().state_count();
  for (std::size_t i = 0; i < acts_.size(); ++i) {
    require(acts_[i].state_count() == n, "all menu acts must share one state space");
    auto [it, inserted] = index_.emplace(acts_[i].name(), i);
    require(inserted, "duplicate act name '" + acts_[i].name() + "' in menu");
  }
}

bool Menu::contains(std::string_view name) const {
  return index_.count(std::string(name)) != 0;
}

const Act& Menu::at(std::string_view name) const {
  return acts_[index_of(name)];
}

std::size_t Menu::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end())
    throw MembershipError("act '" + std::string(name) + "' is not in the menu");
  return it->second;
}

bool Menu::contains_act(const Act& a) const {
  auto it = index_.find(a.name());
  return it != index_.end() && acts_[it->second].same_outcomes(a);
}

Menu Menu::extended(const Act& a) const {
  auto it = index_.find(a.name());
  if (it != index_.end()) {
    if (acts_[it->second].same_outcomes(a)) return *this;
    throw ValidationError("menu already contains a different act named '" +
                          a.name() + "'");
  }
  std::vector<Act> acts = acts_;
  acts.push_back(a);
  return Menu(std::move(acts));
}

Menu Menu::extended(std::span<const Act> acts) const {
  Menu out = *this;
  for (const Act& a : acts) out = out.extended(a);
  return out;
}

// ----- Act algebra -----

double expected_utility(const Act& f, const Measure& pr, const PrizeSpace& prizes) {
  if (f.state_count() != pr.state_count())
    throw PreconditionError("act and measure live over different state spaces");
  double u = 0.0;
  for (std::size_t s = 0; s < f.state_count(); ++s)
    u += pr.prob(s) * lottery_utility(f.outcome(s), prizes);
  return u;
}

Act mix_acts(double p, const Act& f, const Act& g) {
  if (!(p >= 0.0 && p <= 1.0))
    throw PreconditionError("mixture coefficient must lie in [0,1], got " +
                            format_double(p));
  if (f.state_count() != g.state_count())
    throw PreconditionError("mixed acts live over different state spaces");
  std::vector<Lottery> outcomes;
  outcomes.reserve(f.state_count());
  for (std::size_t s = 0; s < f.state_count(); ++s)
    outcomes.push_back(mix_lotteries(p, f.outcome(s), g.outcome(s)));
  std::string name =
      "mix(" + format_double(p) + "," + f.name() + "," + g.name() + ")";
  return Act(std::move(name), std::move(outcomes));
}

Menu mix_menu(double p, const Menu& m, const Act& h) {
  if (!(p >= 0.0 && p <= 1.0))
    throw PreconditionError("mixture coefficient must lie in [0,1], got " +
                            format_double(p));
  if (p == 1.0) return m;  // the identity keeps the source names
  std::vector<Act> acts;
  acts.reserve(m.size());
  for (const Act& f : m.acts()) acts.push_back(mix_acts(p, f, h));
  return Menu(std::move(acts));
}

namespace {

std::string event_tag(const Event& e, const StateSpace& states) {
  std::string tag = "{";
  bool first = true;
  for (std::size_t s : e.members()) {
    if (!first) tag += "|";
    tag += states.name(s);
    first = false;
  }
  tag += "}";
  return tag;
}

}  // namespace

Act splice(const Act& f, const Event& e, const Act& h, const StateSpace& states) {
  if (f.state_count() != h.state_count() || f.state_count() != e.state_count() ||
      f.state_count() != states.size())
    throw PreconditionError("spliced acts and event live over different state spaces");
  std::vector<Lottery> outcomes;
  outcomes.reserve(f.state_count());
  for (std::size_t s = 0; s < f.state_count(); ++s)
    outcomes.push_back(e.contains(s) ? f.outcome(s) : h.outcome(s));
  std::string name =
      "splice(" + f.name() + "," + event_tag(e, states) + "," + h.name() + ")";
  return Act(std::move(name), std::move(outcomes));
}

Menu splice_menu(const Menu& m, const Event& e, const Act& h,
                 const StateSpace& states) {
  std::vector<Act> acts;
  acts.reserve(m.size());
  for (const Act& f : m.acts()) acts.push_back(splice(f, e, h, states));
  return Menu(std::move(acts));
}

Act constant_act(const Lottery& l, std::size_t state_count, std::string name) {
  if (state_count == 0)
    throw PreconditionError("constant act needs a nonempty state space");
  if (name.empty()) {
    name = "const{";
    bool first = true;
    for (auto& [prize, prob] : l.support()) {
      if (!first) name += "|";
      name += "#" + std::to_string(prize) + ":" + format_double(prob);
      first = false;
    }
    name += "}";
  }
  return Act(std::move(name), std::vector<Lottery>(state_count, l));
}

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

// ----- Scenario -----

Scenario::Scenario(StateSpace states, PrizeSpace prizes, std::vector<Act> acts,
                   std::vector<std::pair<std::string, Menu>> menus,
                   WeightedBeliefs beliefs,
                   std::vector<std::pair<std::string, Event>> events,
                   std::vector<std::pair<std::string, Measure>> measures)
    : states_(std::move(states)),
      prizes_(std::move(prizes)),
      acts_(std::move(acts)),
      menus_(std::move(menus)),
      beliefs_(std::move(beliefs)),
      events_(std::move(events)),
      measures_(std::move(measures)) {
  validate();
}

void Scenario::validate() const {
  const std::size_t n = states_.size();
  for (std::size_t i = 0; i < acts_.size(); ++i) {
    const Act& a = acts_[i];
    require(a.state_count() == n,
            "act '" + a.name() + "' is not defined on every state");
    for (std::size_t s = 0; s < n; ++s)
      for (auto& [prize, prob] : a.outcome(s).support())
        require(prize < prizes_.size(),
                "act '" + a.name() + "' references a prize outside the prize space");
    for (std::size_t j = 0; j < i; ++j)
      require(acts_[j].name() != a.name(), "duplicate act name '" + a.name() + "'");
  }
  for (std::size_t i = 0; i < menus_.size(); ++i) {
    const auto& [name, menu] = menus_[i];
    require(!name.empty(), "menu names must be nonempty");
    for (std::size_t j = 0; j < i; ++j)
      require(menus_[j].first != name, "duplicate menu name '" + name + "'");
    require(menu.state_count() == n,
            "menu '" + name + "' lives over a different state space");
    for (const Act& a : menu.acts()) {
      require(has_act(a.name()),
              "menu '" + name + "' references unknown act '" + a.name() + "'");
      require(act(a.name()).same_outcomes(a),
              "menu '" + name + "' disagrees with the act pool on '" + a.name() + "'");
    }
  }
  require(beliefs_.state_count() == n,
          "beliefs live over a different state space");
  for (std::size_t i = 0; i < events_.size(); ++i) {
    const auto& [name, event] = events_[i];
    require(!name.empty(), "event names must be nonempty");
    for (std::size_t j = 0; j < i; ++j)
      require(events_[j].first != name, "duplicate event name '" + name + "'");
    require(event.state_count() == n,
            "event '" + name + "' lives over a different state space");
  }
  for (std::size_t i = 0; i < measures_.size(); ++i) {
    const auto& [name, m] = measures_[i];
    require(!name.empty(), "measure names must be nonempty");
    for (std::size_t j = 0; j < i; ++j)
      require(measures_[j].first != name, "duplicate measure name '" + name + "'");
    require(m.state_count() == n,
            "measure '" + name + "' lives over a different state space");
  }
}

namespace {

template <typename T>
const T* find_named(const std::vector<std::pair<std::string, T>>& vec,
                    std::string_view name) {
  for (const auto& [key, value] : vec)
    if (key == name) return &value;
  return nullptr;
}

}  // namespace

const Act& Scenario::act(std::string_view name) const {
  for (const Act& a : acts_)
    if (a.name() == name) return a;
  throw ValidationError("unknown act '" + std::string(name) + "'");
}

bool Scenario::has_act(std::string_view name) const {
  for (const Act& a : acts_)
    if (a.name() == name) return true;
  return false;
}

const Menu& Scenario::menu(std::string_view name) const {
  if (auto* m = find_named(menus_, name)) return *m;
  throw ValidationError("unknown menu '" + std::string(name) + "'");
}

bool Scenario::has_menu(std::string_view name) const {
  return find_named(menus_, name) != nullptr;
}

const Event& Scenario::event(std::string_view name) const {
  if (auto* e = find_named(events_, name)) return *e;
  throw ValidationError("unknown event '" + std::string(name) + "'");
}

bool Scenario::has_event(std::string_view name) const {
  return find_named(events_, name) != nullptr;
}

const Measure& Scenario::measure(std::string_view name) const {
  if (auto* m = find_named(measures_, name)) return *m;
  throw ValidationError("unknown measure '" + std::string(name) + "'");
}

bool Scenario::has_measure(std::string_view name) const {
  return find_named(measures_, name) != nullptr;
}

}  // namespace mwer
