#include "mwer/scenario_json.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <map>

namespace mwer {

using nlohmann::ordered_json;

namespace {

void dump_value(const ordered_json& v, std::string& out) {
  switch (v.type()) {
    case ordered_json::value_t::null:
      out += "null";
      break;
    case ordered_json::value_t::boolean:
      out += v.get<bool>() ? "true" : "false";
      break;
    case ordered_json::value_t::number_integer:
    case ordered_json::value_t::number_unsigned: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%" PRId64, v.get<std::int64_t>());
      out += buf;
      break;
    }
    case ordered_json::value_t::number_float: {
      double d = v.get<double>();
      if (!std::isfinite(d))
        throw ValidationError("cannot serialize a non-finite number");
      if (d == 0.0) d = 0.0;  // normalize -0
      double integral;
      if (std::modf(d, &integral) == 0.0 && std::fabs(d) < 9.007199254740992e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", d);
        out += buf;
      } else {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", d);
        out += buf;
      }
      break;
    }
    case ordered_json::value_t::string:
      out += ordered_json(v.get<std::string>()).dump();
      break;
    case ordered_json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += ',';
        dump_value(item, out);
        first = false;
      }
      out += ']';
      break;
    }
    case ordered_json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        out += ordered_json(it.key()).dump();
        out += ':';
        dump_value(it.value(), out);
        first = false;
      }
      out += '}';
      break;
    }
    default:
      throw ValidationError("cannot serialize binary/discarded json values");
  }
}

[[noreturn]] void fail(std::string_view origin, const std::string& msg) {
  throw ValidationError(std::string(origin) + ": " + msg);
}

double number_of(const ordered_json& v, std::string_view origin,
                 const std::string& what) {
  if (!v.is_number()) fail(origin, what + " must be a number");
  return v.get<double>();
}

std::string string_of(const ordered_json& v, std::string_view origin,
                      const std::string& what) {
  if (!v.is_string()) fail(origin, what + " must be a string");
  return v.get<std::string>();
}

const ordered_json& member(const ordered_json& obj, const char* key,
                           std::string_view origin, const std::string& what) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(origin, what + " is missing the '" + key + "' field");
  return *it;
}

}  // namespace

std::string dump_json(const ordered_json& value) {
  std::string out;
  dump_value(value, out);
  return out;
}

Scenario parse_scenario(const std::string& text, std::string_view origin) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(origin, std::string("parse error: ") + e.what());
  }
  return scenario_from_json(doc, origin);
}

Scenario scenario_from_json(const ordered_json& root, std::string_view origin) {
  if (!root.is_object()) fail(origin, "scenario document must be a json object");
  // Audit witness files embed the scenario under a "scenario" key; accept
  // them directly so witnesses replay through the same commands.
  const ordered_json& doc =
      (root.contains("scenario") && !root.contains("states")) ? root["scenario"]
                                                              : root;
  if (!doc.is_object()) fail(origin, "scenario document must be a json object");

  if (doc.contains("format")) {
    std::string fmt = string_of(doc["format"], origin, "'format'");
    if (fmt != kScenarioFormat)
      fail(origin, "unsupported format '" + fmt + "' (expected '" +
                       std::string(kScenarioFormat) + "')");
  }

  // States.
  const ordered_json& jstates = member(doc, "states", origin, "scenario");
  if (!jstates.is_array() || jstates.empty())
    fail(origin, "'states' must be a nonempty array of names");
  std::vector<std::string> state_names;
  for (const auto& s : jstates)
    state_names.push_back(string_of(s, origin, "state name"));

  // Declared prizes, if any.
  std::vector<std::string> prize_names;
  std::vector<double> prize_utils;
  if (doc.contains("prizes")) {
    if (!doc["prizes"].is_array()) fail(origin, "'prizes' must be an array");
    for (const auto& p : doc["prizes"]) {
      if (!p.is_object()) fail(origin, "each prize must be an object");
      prize_names.push_back(string_of(member(p, "name", origin, "prize"), origin,
                                      "prize name"));
      prize_utils.push_back(number_of(member(p, "utility", origin,
                                             "prize '" + prize_names.back() + "'"),
                                      origin,
                                      "utility of prize '" + prize_names.back() + "'"));
    }
  }

  // First pass over acts: collect bare utilities so calibration prizes can
  // be synthesized before lotteries are built.
  if (!doc.contains("acts") || !doc["acts"].is_array())
    fail(origin, "'acts' must be an array");
  auto ensure_prize_for = [&](double utility) {
    for (std::size_t i = 0; i < prize_utils.size(); ++i)
      if (prize_utils[i] == utility) return;
    std::string name = "cal_" + format_double(utility);
    while (std::find(prize_names.begin(), prize_names.end(), name) !=
           prize_names.end())
      name += "_";
    prize_names.push_back(name);
    prize_utils.push_back(utility);
  };
  for (const auto& a : doc["acts"]) {
    if (!a.is_object()) fail(origin, "each act must be an object");
    const ordered_json& outcomes = member(a, "outcomes", origin, "act");
    if (!outcomes.is_object()) continue;  // reported properly below
    for (const auto& [state, lot] : outcomes.items())
      if (lot.is_number()) ensure_prize_for(lot.get<double>());
  }
  if (prize_names.size() == 1) ensure_prize_for(prize_utils[0] + 1.0);
  if (prize_names.empty())
    fail(origin, "scenario declares no prizes and no shorthand utilities");
  bool distinct = false;
  for (double u : prize_utils) distinct = distinct || u != prize_utils[0];
  if (!distinct) ensure_prize_for(prize_utils[0] + 1.0);

  StateSpace states(state_names);
  PrizeSpace prizes(prize_names, prize_utils);

  auto parse_lottery = [&](const ordered_json& j, const std::string& where) {
    if (j.is_number()) {
      double u = j.get<double>();
      for (std::size_t i = 0; i < prize_utils.size(); ++i)
        if (prize_utils[i] == u) return Lottery::point(i, prizes.size());
      fail(origin, where + ": internal calibration prize missing");
    }
    if (!j.is_object() || j.empty())
      fail(origin, where + " must be a utility number or a {prize: probability} object");
    std::vector<std::pair<std::size_t, double>> support;
    for (const auto& [prize, prob] : j.items()) {
      if (!prizes.contains(prize))
        fail(origin, where + " references unknown prize '" + prize + "'");
      support.emplace_back(prizes.index_of(prize),
                           number_of(prob, origin,
                                     where + " probability of '" + prize + "'"));
    }
    try {
      return Lottery(std::move(support), prizes.size());
    } catch (const ValidationError& e) {
      fail(origin, where + ": " + e.what());
    }
  };

  std::vector<Act> acts;
  for (const auto& a : doc["acts"]) {
    std::string name =
        string_of(member(a, "name", origin, "act"), origin, "act name");
    const ordered_json& outcomes = member(a, "outcomes", origin, "act '" + name + "'");
    if (!outcomes.is_object())
      fail(origin, "act '" + name + "' outcomes must map states to lotteries");
    std::vector<Lottery> per_state;
    for (const auto& sname : states.names()) {
      auto it = outcomes.find(sname);
      if (it == outcomes.end())
        fail(origin, "act '" + name + "' is missing state '" + sname + "'");
      per_state.push_back(parse_lottery(*it, "act '" + name + "', state '" + sname + "'"));
    }
    for (const auto& [state, lot] : outcomes.items())
      if (!states.contains(state))
        fail(origin, "act '" + name + "' references unknown state '" + state + "'");
    acts.emplace_back(std::move(name), std::move(per_state));
  }

  auto parse_measure = [&](const ordered_json& j, const std::string& where) {
    if (!j.is_object()) fail(origin, where + " probabilities must be an object");
    std::vector<double> probs(states.size(), 0.0);
    for (const auto& [state, prob] : j.items()) {
      if (!states.contains(state))
        fail(origin, where + " references unknown state '" + state + "'");
      probs[states.index_of(state)] =
          number_of(prob, origin, where + " probability of '" + state + "'");
    }
    try {
      return Measure(std::move(probs));
    } catch (const ValidationError& e) {
      fail(origin, where + ": " + e.what());
    }
  };

  if (!doc.contains("beliefs") || !doc["beliefs"].is_array() ||
      doc["beliefs"].empty())
    fail(origin, "'beliefs' must be a nonempty array");
  std::vector<WeightedMeasure> entries;
  std::size_t belief_index = 0;
  for (const auto& b : doc["beliefs"]) {
    if (!b.is_object()) fail(origin, "each belief entry must be an object");
    std::string name = b.contains("name")
                           ? string_of(b["name"], origin, "belief name")
                           : "m" + std::to_string(belief_index);
    double weight =
        b.contains("weight")
            ? number_of(b["weight"], origin, "weight of measure '" + name + "'")
            : 1.0;
    Measure m = parse_measure(member(b, "probs", origin, "measure '" + name + "'"),
                              "measure '" + name + "'");
    entries.push_back({std::move(m), weight, std::move(name)});
    ++belief_index;
  }
  WeightedBeliefs beliefs = [&] {
    try {
      return WeightedBeliefs(std::move(entries));
    } catch (const ValidationError& e) {
      fail(origin, std::string("beliefs: ") + e.what());
    }
  }();

  std::vector<std::pair<std::string, Menu>> menus;
  if (doc.contains("menus")) {
    if (!doc["menus"].is_array()) fail(origin, "'menus' must be an array");
    for (const auto& m : doc["menus"]) {
      std::string name =
          string_of(member(m, "name", origin, "menu"), origin, "menu name");
      const ordered_json& jacts = member(m, "acts", origin, "menu '" + name + "'");
      if (!jacts.is_array() || jacts.empty())
        fail(origin, "menu '" + name + "' must list at least one act");
      std::vector<Act> members;
      for (const auto& an : jacts) {
        std::string act_name = string_of(an, origin, "menu '" + name + "' entry");
        bool found = false;
        for (const Act& a : acts)
          if (a.name() == act_name) {
            members.push_back(a);
            found = true;
            break;
          }
        if (!found)
          fail(origin, "menu '" + name + "' references unknown act '" + act_name + "'");
      }
      menus.emplace_back(std::move(name), Menu(std::move(members)));
    }
  }

  std::vector<std::pair<std::string, Event>> events;
  if (doc.contains("events")) {
    if (!doc["events"].is_array()) fail(origin, "'events' must be an array");
    for (const auto& e : doc["events"]) {
      std::string name =
          string_of(member(e, "name", origin, "event"), origin, "event name");
      const ordered_json& jmembers =
          member(e, "states", origin, "event '" + name + "'");
      if (!jmembers.is_array())
        fail(origin, "event '" + name + "' states must be an array");
      std::vector<char> mask(states.size(), 0);
      for (const auto& sn : jmembers) {
        std::string sname = string_of(sn, origin, "event '" + name + "' state");
        if (!states.contains(sname))
          fail(origin, "event '" + name + "' references unknown state '" + sname + "'");
        mask[states.index_of(sname)] = 1;
      }
      events.emplace_back(std::move(name), Event(std::move(mask)));
    }
  }

  std::vector<std::pair<std::string, Measure>> measures;
  if (doc.contains("measures")) {
    if (!doc["measures"].is_array()) fail(origin, "'measures' must be an array");
    for (const auto& m : doc["measures"]) {
      std::string name =
          string_of(member(m, "name", origin, "measure"), origin, "measure name");
      measures.emplace_back(
          name, parse_measure(member(m, "probs", origin, "measure '" + name + "'"),
                              "measure '" + name + "'"));
    }
  }

  try {
    return Scenario(std::move(states), std::move(prizes), std::move(acts),
                    std::move(menus), std::move(beliefs), std::move(events),
                    std::move(measures));
  } catch (const ValidationError& e) {
    fail(origin, e.what());
  }
}

ordered_json scenario_to_json(const Scenario& sc) {
  ordered_json doc;
  doc["format"] = std::string(kScenarioFormat);
  doc["states"] = sc.states().names();

  ordered_json jprizes = ordered_json::array();
  for (std::size_t i = 0; i < sc.prizes().size(); ++i)
    jprizes.push_back({{"name", sc.prizes().name(i)},
                       {"utility", sc.prizes().utility(i)}});
  doc["prizes"] = std::move(jprizes);

  ordered_json jacts = ordered_json::array();
  for (const Act& a : sc.acts()) {
    ordered_json outcomes;
    for (std::size_t s = 0; s < sc.states().size(); ++s) {
      ordered_json lot;
      for (auto& [prize, prob] : a.outcome(s).support())
        lot[sc.prizes().name(prize)] = prob;
      outcomes[sc.states().name(s)] = std::move(lot);
    }
    jacts.push_back({{"name", a.name()}, {"outcomes", std::move(outcomes)}});
  }
  doc["acts"] = std::move(jacts);

  ordered_json jbeliefs = ordered_json::array();
  for (std::size_t i = 0; i < sc.beliefs().size(); ++i) {
    const auto& e = sc.beliefs().entry(i);
    ordered_json probs;
    for (std::size_t s = 0; s < sc.states().size(); ++s)
      if (e.measure.prob(s) != 0.0) probs[sc.states().name(s)] = e.measure.prob(s);
    jbeliefs.push_back(
        {{"name", e.name.empty() ? "m" + std::to_string(i) : e.name},
         {"weight", e.weight},
         {"probs", std::move(probs)}});
  }
  doc["beliefs"] = std::move(jbeliefs);

  ordered_json jmenus = ordered_json::array();
  for (const auto& [name, menu] : sc.menus()) {
    ordered_json names = ordered_json::array();
    for (const Act& a : menu.acts()) names.push_back(a.name());
    jmenus.push_back({{"name", name}, {"acts", std::move(names)}});
  }
  doc["menus"] = std::move(jmenus);

  if (!sc.events().empty()) {
    ordered_json jevents = ordered_json::array();
    for (const auto& [name, event] : sc.events()) {
      ordered_json names = ordered_json::array();
      for (std::size_t s : event.members()) names.push_back(sc.states().name(s));
      jevents.push_back({{"name", name}, {"states", std::move(names)}});
    }
    doc["events"] = std::move(jevents);
  }

  if (!sc.measures().empty()) {
    ordered_json jmeasures = ordered_json::array();
    for (const auto& [name, m] : sc.measures()) {
      ordered_json probs;
      for (std::size_t s = 0; s < sc.states().size(); ++s)
        if (m.prob(s) != 0.0) probs[sc.states().name(s)] = m.prob(s);
      jmeasures.push_back({{"name", name}, {"probs", std::move(probs)}});
    }
    doc["measures"] = std::move(jmeasures);
  }

  return doc;
}

std::string serialize_scenario(const Scenario& sc) {
  return dump_json(scenario_to_json(sc));
}

}  // namespace mwer
