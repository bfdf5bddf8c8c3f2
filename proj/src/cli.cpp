#include "mwer/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "mwer/audit.hpp"
#include "mwer/convergence.hpp"
#include "mwer/fixtures.hpp"
#include "mwer/rng.hpp"
#include "mwer/rules.hpp"
#include "mwer/scenario_json.hpp"
#include "mwer/update.hpp"

namespace mwer {

using nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("MWER_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
      throw ValidationError("MWER_SEED must be an unsigned integer, got '" +
                            std::string(env) + "'");
    return v;
  }
  return 0;
}

void print_columns(std::ostream& out, const std::vector<std::vector<std::string>>& rows,
                   int indent = 2) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (row.size() > widths.size()) widths.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c)
      widths[c] = std::max(widths[c], row[c].size());
  }
  for (const auto& row : rows) {
    out << std::string(indent, ' ');
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << row[c];
      if (c + 1 < row.size())
        out << std::string(widths[c] - row[c].size() + 2, ' ');
    }
    out << "\n";
  }
}

std::string format_tiers(const PreferenceRanking& r) {
  std::string s;
  for (std::size_t t = 0; t < r.tiers.size(); ++t) {
    if (t) s += " > ";
    for (std::size_t i = 0; i < r.tiers[t].size(); ++i) {
      if (i) s += " ~ ";
      s += r.tiers[t][i];
    }
  }
  return s;
}

ordered_json tiers_to_json(const PreferenceRanking& r) {
  ordered_json tiers = ordered_json::array();
  for (const auto& tier : r.tiers) {
    ordered_json t = ordered_json::array();
    for (const auto& name : tier) t.push_back(name);
    tiers.push_back(std::move(t));
  }
  return tiers;
}

ordered_json scores_to_json(const PreferenceRanking& r) {
  ordered_json scores = ordered_json::array();
  for (const auto& [name, score] : r.scores)
    scores.push_back({{"act", name}, {"score", score}});
  return scores;
}

ordered_json beliefs_to_json(const WeightedBeliefs& b, const StateSpace& states) {
  ordered_json entries = ordered_json::array();
  for (const auto& e : b.entries()) {
    ordered_json probs;
    for (std::size_t s = 0; s < states.size(); ++s)
      if (e.measure.prob(s) != 0.0) probs[states.name(s)] = e.measure.prob(s);
    entries.push_back(
        {{"name", e.name}, {"weight", e.weight}, {"probs", std::move(probs)}});
  }
  return entries;
}

std::string belief_label(const WeightedBeliefs& b, std::size_t i) {
  const std::string& n = b.entry(i).name;
  return n.empty() ? "m" + std::to_string(i) : n;
}

// ----- rank -----

int cmd_rank(const std::string& scenario_path, const std::string& menu_name,
             const std::string& rule_name_str, bool json, std::ostream& out) {
  Scenario sc = parse_scenario(read_file(scenario_path), scenario_path);
  const Rule rule = parse_rule(rule_name_str);
  PreferenceRanking ranking =
      rank(rule, sc.menu(menu_name), sc.beliefs(), sc.prizes());

  if (json) {
    ordered_json rec;
    rec["command"] = "rank";
    rec["scenario"] = scenario_path;
    rec["menu"] = menu_name;
    rec["rule"] = rule_name_str;
    rec["tiers"] = tiers_to_json(ranking);
    rec["scores"] = scores_to_json(ranking);
    out << dump_json(rec) << "\n";
    return 0;
  }

  out << "rank rule=" << rule_name_str << " menu=" << menu_name << "\n";
  std::vector<std::vector<std::string>> rows;
  for (std::size_t t = 0; t < ranking.tiers.size(); ++t) {
    std::string members;
    for (std::size_t i = 0; i < ranking.tiers[t].size(); ++i) {
      if (i) members += " ~ ";
      members += ranking.tiers[t][i];
    }
    rows.push_back({"tier " + std::to_string(t + 1) + ":", members,
                    "score " + format_double(ranking.score_of(ranking.tiers[t][0]))});
  }
  print_columns(out, rows);
  return 0;
}

// ----- update -----

int cmd_update(const std::string& scenario_path, const std::string& event_name,
               const std::string& method, std::optional<double> threshold,
               bool json, std::ostream& out) {
  Scenario sc = parse_scenario(read_file(scenario_path), scenario_path);
  const Event& e = sc.event(event_name);
  const WeightedBeliefs& prior = sc.beliefs();
  const double ew = event_weight(prior, e);

  std::optional<UpdateResult> result;
  std::optional<WeightedBeliefs> updated;
  std::vector<std::size_t> dropped;
  if (method == "likelihood") {
    result = likelihood_update(prior, e);
    updated = result->updated;
    dropped = result->dropped;
  } else if (method == "mbm") {
    updated = measure_by_measure_update(prior, e);
    for (std::size_t i = 0; i < prior.size(); ++i)
      if (measure_prob(prior.entry(i).measure, e) <= 0.0) dropped.push_back(i);
  } else if (method == "es") {
    if (!threshold)
      throw ValidationError("method 'es' requires --threshold");
    updated = epstein_schneider_update(prior, e, *threshold);
    double best = 0.0;
    for (std::size_t i = 0; i < prior.size(); ++i)
      best = std::max(best, measure_prob(prior.entry(i).measure, e));
    for (std::size_t i = 0; i < prior.size(); ++i)
      if (!(measure_prob(prior.entry(i).measure, e) / best > *threshold))
        dropped.push_back(i);
  } else {
    throw ValidationError("unknown update method '" + method +
                          "' (expected likelihood, mbm, or es)");
  }

  if (json) {
    ordered_json rec;
    rec["command"] = "update";
    rec["scenario"] = scenario_path;
    rec["event"] = event_name;
    rec["method"] = method;
    if (threshold) rec["threshold"] = *threshold;
    rec["event_weight"] = ew;
    rec["updated"] = beliefs_to_json(*updated, sc.states());
    ordered_json jdropped = ordered_json::array();
    for (std::size_t i : dropped) jdropped.push_back(belief_label(prior, i));
    rec["dropped"] = std::move(jdropped);
    if (result) {
      ordered_json groups = ordered_json::array();
      for (const auto& group : result->groups) {
        ordered_json g = ordered_json::array();
        for (std::size_t i : group) g.push_back(belief_label(prior, i));
        groups.push_back(std::move(g));
      }
      rec["groups"] = std::move(groups);
      ordered_json posts = ordered_json::array();
      for (std::size_t i = 0; i < prior.size(); ++i)
        posts.push_back({{"name", belief_label(prior, i)},
                         {"posterior", result->source_posteriors[i]}});
      rec["source_posteriors"] = std::move(posts);
    }
    out << dump_json(rec) << "\n";
    return 0;
  }

  out << "update event=" << event_name << " method=" << method;
  if (threshold) out << " threshold=" << format_double(*threshold);
  out << " event_weight=" << format_double(ew) << "\n";
  out << " updated beliefs:\n";
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < updated->size(); ++i) {
    const auto& entry = updated->entry(i);
    std::string probs;
    for (std::size_t s = 0; s < sc.states().size(); ++s) {
      if (entry.measure.prob(s) == 0.0) continue;
      if (!probs.empty()) probs += " ";
      probs += sc.states().name(s) + "=" + format_double(entry.measure.prob(s));
    }
    rows.push_back({belief_label(*updated, i),
                    "weight " + format_double(entry.weight), probs});
  }
  print_columns(out, rows);
  out << " dropped:";
  if (dropped.empty()) out << " (none)";
  for (std::size_t i : dropped) out << " " << belief_label(prior, i);
  out << "\n";
  if (result) {
    out << " groups:";
    for (std::size_t g = 0; g < result->groups.size(); ++g) {
      out << " [";
      for (std::size_t k = 0; k < result->groups[g].size(); ++k) {
        if (k) out << " ";
        out << belief_label(prior, result->groups[g][k]);
      }
      out << "]";
    }
    out << "\n";
  }
  return 0;
}

// ----- audit -----

ordered_json report_to_json(const AuditReport& report, std::uint64_t search_budget,
                            std::uint64_t search_trials,
                            const std::optional<Witness>& witness,
                            Verdict verdict) {
  ordered_json rec;
  rec["command"] = "audit";
  rec["axiom"] = std::string(axiom_name(report.axiom));
  rec["rule"] = std::string(rule_name(report.rule));
  rec["policy"] = std::string(policy_name(report.policy));
  rec["trials"] = report.trials;
  rec["passes"] = report.passes;
  rec["violations"] = report.violations;
  rec["vacuous"] = report.vacuous;
  rec["inconclusive"] = report.inconclusive;
  rec["search_budget"] = search_budget;
  rec["search_trials"] = search_trials;
  rec["verdict"] = std::string(verdict_name(verdict));
  if (witness)
    rec["witness"] = witness_to_json(*witness);
  else
    rec["witness"] = nullptr;
  return rec;
}

int cmd_audit(const std::string& axiom_str, const std::string& rule_str,
              const std::string& policy_str, std::uint64_t trials,
              std::uint64_t budget, std::uint64_t seed, bool json,
              std::ostream& out) {
  const Axiom axiom = parse_axiom(axiom_str);
  const Rule rule = parse_rule(rule_str);
  const MenuPolicy policy = parse_policy(policy_str);

  AuditReport report = audit_axiom(axiom, rule, policy, trials, seed);
  std::optional<Witness> witness = report.witness;
  std::uint64_t search_trials = 0;
  if (!witness && budget > 0) {
    witness = find_counterexample(axiom, rule, policy, budget,
                                  Rng::derive(seed, 0x5ea6c8ULL));
    search_trials = budget;
  }
  const Verdict verdict =
      witness ? Verdict::counterexample
              : (report.passes > 0 ? Verdict::supported : Verdict::inconclusive);

  if (json) {
    out << dump_json(report_to_json(report, budget, search_trials, witness,
                                    verdict))
        << "\n";
  } else {
    out << "audit axiom=" << axiom_str << " rule=" << rule_str
        << " policy=" << policy_str << " seed=" << seed << "\n";
    print_columns(out, {{"trials", std::to_string(report.trials)},
                        {"passes", std::to_string(report.passes)},
                        {"violations", std::to_string(report.violations)},
                        {"vacuous", std::to_string(report.vacuous)},
                        {"inconclusive", std::to_string(report.inconclusive)},
                        {"search trials", std::to_string(search_trials)},
                        {"verdict", std::string(verdict_name(verdict))}});
    if (witness) {
      out << " witness (trial " << witness->trial << "): " << witness->outcome.detail
          << "\n";
      for (const auto& [label, delta] : witness->outcome.deltas)
        out << "   " << label << ": " << format_double(delta) << "\n";
      out << " witness json: " << dump_json(witness_to_json(*witness)) << "\n";
    }
  }
  return witness ? 3 : 0;
}

// ----- table4 -----

int cmd_table4(std::uint64_t trials, std::uint64_t budget, std::uint64_t seed,
               bool json, std::ostream& out) {
  Table4Report report = table4_matrix(trials, budget, seed);

  bool anomaly = false;
  for (const auto& cell : report.cells)
    anomaly = anomaly ||
              (cell.expected_supported && cell.verdict == Verdict::counterexample);

  if (json) {
    ordered_json rec;
    rec["command"] = "table4";
    rec["trials"] = report.trials;
    rec["budget"] = report.budget;
    rec["seed"] = report.seed;
    ordered_json cells = ordered_json::array();
    for (const auto& cell : report.cells) {
      ordered_json c;
      c["row"] = std::string(table4_row_name(cell.row));
      c["rule"] = std::string(rule_name(cell.rule));
      c["expected"] = cell.expected_supported ? "supported" : "blank";
      c["verdict"] = std::string(verdict_name(cell.verdict));
      c["trials"] = cell.trials;
      c["violations"] = cell.violations;
      c["vacuous"] = cell.vacuous;
      c["inconclusive"] = cell.inconclusive;
      ordered_json parts = ordered_json::array();
      for (const auto& [axiom, verdict] : cell.parts)
        parts.push_back({{"axiom", std::string(axiom_name(axiom))},
                         {"verdict", std::string(verdict_name(verdict))}});
      c["parts"] = std::move(parts);
      if (cell.witness)
        c["witness"] = witness_to_json(*cell.witness);
      else
        c["witness"] = nullptr;
      cells.push_back(std::move(c));
    }
    rec["cells"] = std::move(cells);
    rec["anomaly"] = anomaly;
    out << dump_json(rec) << "\n";
    return anomaly ? 3 : 0;
  }

  out << "table4 trials=" << trials << " budget=" << budget << " seed=" << seed
      << "\n";
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"row"};
  for (Rule r : kAllRules) header.push_back(std::string(rule_name(r)));
  rows.push_back(std::move(header));
  static constexpr Table4Row kRows[] = {Table4Row::core, Table4Row::independence,
                                        Table4Row::c_independence,
                                        Table4Row::axiom12};
  for (Table4Row row : kRows) {
    std::vector<std::string> line = {std::string(table4_row_name(row))};
    for (Rule rule : kAllRules) {
      for (const auto& cell : report.cells)
        if (cell.row == row && cell.rule == rule) {
          std::string text = std::string(verdict_name(cell.verdict));
          if (cell.expected_supported && cell.verdict == Verdict::counterexample)
            text += " (!)";
          line.push_back(std::move(text));
          break;
        }
    }
    rows.push_back(std::move(line));
  }
  print_columns(out, rows, 1);
  if (anomaly)
    out << " anomaly: a cell expected to hold produced a counterexample\n";
  return anomaly ? 3 : 0;
}

// ----- converge -----

int cmd_converge(const std::string& candidates_path, const std::string& truth_name,
                 std::uint64_t rounds, std::uint64_t seed, bool json,
                 std::ostream& out) {
  Scenario sc = parse_scenario(read_file(candidates_path), candidates_path);
  const WeightedBeliefs& candidates = sc.beliefs();
  const Measure* truth = nullptr;
  if (sc.has_measure(truth_name)) {
    truth = &sc.measure(truth_name);
  } else {
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (candidates.entry(i).name == truth_name) truth = &candidates.entry(i).measure;
  }
  if (!truth)
    throw ValidationError("unknown truth measure '" + truth_name + "'");

  WeightTrajectory traj = simulate_iid(candidates, *truth, rounds, seed);

  std::vector<std::size_t> observation_counts(sc.states().size(), 0);
  for (std::size_t o : traj.observations) ++observation_counts[o];

  if (json) {
    ordered_json rec;
    rec["command"] = "converge";
    rec["candidates"] = candidates_path;
    rec["truth"] = truth_name;
    rec["rounds"] = rounds;
    rec["seed"] = seed;
    ordered_json names = ordered_json::array();
    for (std::size_t i = 0; i < candidates.size(); ++i)
      names.push_back(belief_label(candidates, i));
    rec["candidate_names"] = std::move(names);
    ordered_json counts;
    for (std::size_t s = 0; s < sc.states().size(); ++s)
      counts[sc.states().name(s)] = observation_counts[s];
    rec["observation_counts"] = std::move(counts);
    ordered_json final = ordered_json::array();
    for (double w : traj.rounds.back()) final.push_back(w);
    rec["final_weights"] = std::move(final);
    ordered_json jtraj = ordered_json::array();
    for (const auto& round : traj.rounds) {
      ordered_json r = ordered_json::array();
      for (double w : round) r.push_back(w);
      jtraj.push_back(std::move(r));
    }
    rec["trajectory"] = std::move(jtraj);
    out << dump_json(rec) << "\n";
    return 0;
  }

  out << "converge truth=" << truth_name << " rounds=" << rounds
      << " seed=" << seed << "\n";
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"candidate", "prior", "final"});
  for (std::size_t i = 0; i < candidates.size(); ++i)
    rows.push_back({belief_label(candidates, i),
                    format_double(traj.rounds.front()[i]),
                    format_double(traj.rounds.back()[i])});
  print_columns(out, rows);
  out << " observations:";
  for (std::size_t s = 0; s < sc.states().size(); ++s)
    out << " " << sc.states().name(s) << "=" << observation_counts[s];
  out << "\n";
  return 0;
}

// ----- demo delivery -----

ordered_json demo_rankings_json(const DeliveryReport& report, bool full) {
  ordered_json menus = ordered_json::array();
  for (const auto& mr : report.menus) {
    ordered_json m;
    m["menu"] = mr.menu;
    if (full) {
      ordered_json acts = ordered_json::array();
      for (const auto& a : mr.act_names) acts.push_back(a);
      m["acts"] = std::move(acts);
      ordered_json payoffs = ordered_json::array();
      for (const auto& row : mr.payoffs) {
        ordered_json r = ordered_json::array();
        for (double v : row) r.push_back(v);
        payoffs.push_back(std::move(r));
      }
      m["payoffs"] = std::move(payoffs);
      ordered_json regrets = ordered_json::array();
      for (const auto& row : mr.regrets) {
        ordered_json r = ordered_json::array();
        for (double v : row) r.push_back(v);
        regrets.push_back(std::move(r));
      }
      m["regrets"] = std::move(regrets);
    }
    ordered_json rules = ordered_json::array();
    for (const auto& [rule, ranking] : mr.rankings) {
      ordered_json jr;
      jr["rule"] = std::string(rule_name(rule));
      jr["tiers"] = tiers_to_json(ranking);
      if (full) jr["scores"] = scores_to_json(ranking);
      rules.push_back(std::move(jr));
    }
    m["rules"] = std::move(rules);
    menus.push_back(std::move(m));
  }
  return menus;
}

void print_delivery(const DeliveryReport& report, std::ostream& out) {
  out << "delivery demo n_good=" << report.n_good << "\n";
  out << " hypothesis weights: one_broken=1 ten_broken="
      << format_double(report.weight_ten) << "\n";
  out << " observation likelihoods: one_broken="
      << format_double(report.likelihood_one)
      << " ten_broken=" << format_double(report.likelihood_ten) << "\n";
  for (const auto& mr : report.menus) {
    out << " menu " << mr.menu << ":\n";
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"act", "payoff(one)", "payoff(ten)", "regret(one)",
                    "regret(ten)"});
    for (std::size_t a = 0; a < mr.act_names.size(); ++a)
      rows.push_back({mr.act_names[a], format_double(mr.payoffs[a][0]),
                      format_double(mr.payoffs[a][1]),
                      format_double(mr.regrets[a][0]),
                      format_double(mr.regrets[a][1])});
    print_columns(out, rows);
    std::vector<std::vector<std::string>> ranks;
    for (const auto& [rule, ranking] : mr.rankings) {
      std::string scores;
      for (const auto& [name, score] : ranking.scores) {
        if (!scores.empty()) scores += " ";
        scores += name + "=" + format_double(score);
      }
      std::string label(rule_name(rule));
      if (rule == Rule::seu) label += "(Pr1)";
      ranks.push_back({label + ":", format_tiers(ranking), scores});
    }
    print_columns(out, ranks);
  }
}

int cmd_demo_delivery(int n_good, const std::optional<std::pair<int, int>>& sweep,
                      bool json, std::ostream& out) {
  if (!sweep) {
    DeliveryReport report = delivery_demo(n_good);
    if (json) {
      ordered_json rec;
      rec["command"] = "demo";
      rec["demo"] = "delivery";
      rec["n_good"] = report.n_good;
      rec["weight_ten"] = report.weight_ten;
      rec["likelihood_one"] = report.likelihood_one;
      rec["likelihood_ten"] = report.likelihood_ten;
      rec["menus"] = demo_rankings_json(report, true);
      out << dump_json(rec) << "\n";
    } else {
      print_delivery(report, out);
    }
    return 0;
  }

  const auto [lo, hi] = *sweep;
  if (lo < 0 || hi > 1000 || lo > hi)
    throw ValidationError("sweep range must satisfy 0 <= A <= B <= 1000");
  if (!json) {
    out << "delivery sweep n_good=" << lo << ".." << hi << "\n";
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"n", "weight_ten", "mwer M0", "mwer M1", "mer M0"});
    for (int n = lo; n <= hi; ++n) {
      DeliveryReport report = delivery_demo(n);
      auto find_rank = [&](std::size_t menu, Rule rule) -> std::string {
        for (const auto& [r, ranking] : report.menus[menu].rankings)
          if (r == rule) return format_tiers(ranking);
        return "";
      };
      rows.push_back({std::to_string(n), format_double(report.weight_ten),
                      find_rank(0, Rule::mwer), find_rank(1, Rule::mwer),
                      find_rank(0, Rule::mer)});
    }
    print_columns(out, rows, 1);
    return 0;
  }
  for (int n = lo; n <= hi; ++n) {
    DeliveryReport report = delivery_demo(n);
    ordered_json rec;
    rec["command"] = "demo";
    rec["demo"] = "delivery";
    rec["n_good"] = report.n_good;
    rec["weight_ten"] = report.weight_ten;
    rec["menus"] = demo_rankings_json(report, false);
    out << dump_json(rec) << "\n";
  }
  return 0;
}

std::optional<std::pair<int, int>> parse_sweep(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto pos = text.find("..");
  if (pos == std::string::npos)
    throw ValidationError("sweep must look like A..B, got '" + text + "'");
  try {
    const int lo = std::stoi(text.substr(0, pos));
    const int hi = std::stoi(text.substr(pos + 2));
    return std::make_pair(lo, hi);
  } catch (const std::exception&) {
    throw ValidationError("sweep must look like A..B, got '" + text + "'");
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"decision making with weighted sets of probability measures"};
  app.name("mwer");
  app.require_subcommand(1);

  // rank
  std::string rank_scenario, rank_menu, rank_rule;
  bool rank_json = false;
  auto* rank_cmd = app.add_subcommand("rank", "rank a menu's acts under a rule");
  rank_cmd->add_option("--scenario", rank_scenario, "scenario json file")
      ->required();
  rank_cmd->add_option("--menu", rank_menu, "menu name")->required();
  rank_cmd->add_option("--rule", rank_rule, "seu|mmeu|mer|mwer|reg")->required();
  rank_cmd->add_flag("--json", rank_json, "emit a json record");

  // update
  std::string up_scenario, up_event, up_method = "likelihood";
  double up_threshold = 0.0;
  bool up_json = false;
  auto* up_cmd = app.add_subcommand("update", "update beliefs on an event");
  up_cmd->add_option("--scenario", up_scenario, "scenario json file")->required();
  up_cmd->add_option("--event", up_event, "event name")->required();
  up_cmd->add_option("--method", up_method, "likelihood|mbm|es");
  auto* thr_opt = up_cmd->add_option("--threshold", up_threshold,
                                     "likelihood-ratio threshold for es");
  up_cmd->add_flag("--json", up_json, "emit a json record");

  // audit
  std::string au_axiom, au_rule, au_policy = "transformed";
  std::uint64_t au_trials = 10000, au_budget = 100000;
  std::optional<std::uint64_t> au_seed;
  bool au_json = false;
  auto* au_cmd = app.add_subcommand("audit", "check an axiom against a rule");
  au_cmd->add_option("--axiom", au_axiom, "axiom name")->required();
  au_cmd->add_option("--rule", au_rule, "seu|mmeu|mer|mwer|reg")->required();
  au_cmd->add_option("--policy", au_policy, "transformed|fixed");
  au_cmd->add_option("--trials", au_trials, "support-audit probe count");
  au_cmd->add_option("--budget", au_budget, "counterexample search budget");
  au_cmd->add_option("--seed", au_seed, "random seed (default MWER_SEED or 0)");
  au_cmd->add_flag("--json", au_json, "emit a json record");

  // table4
  std::uint64_t t4_trials = 10000, t4_budget = 100000;
  std::optional<std::uint64_t> t4_seed;
  bool t4_json = false;
  auto* t4_cmd = app.add_subcommand("table4", "audit the rule-by-axiom matrix");
  t4_cmd->add_option("--trials", t4_trials, "probes per supported cell");
  t4_cmd->add_option("--budget", t4_budget, "search budget per blank cell");
  t4_cmd->add_option("--seed", t4_seed, "random seed (default MWER_SEED or 0)");
  t4_cmd->add_flag("--json", t4_json, "emit a json record");

  // converge
  std::string cv_candidates, cv_truth;
  std::uint64_t cv_rounds = 1000;
  std::optional<std::uint64_t> cv_seed;
  bool cv_json = false;
  auto* cv_cmd =
      app.add_subcommand("converge", "simulate weight updating on i.i.d. draws");
  cv_cmd->add_option("--candidates", cv_candidates, "scenario json file")
      ->required();
  cv_cmd->add_option("--truth", cv_truth, "name of the generating measure")
      ->required();
  cv_cmd->add_option("--rounds", cv_rounds, "number of observations");
  cv_cmd->add_option("--seed", cv_seed, "random seed (default MWER_SEED or 0)");
  cv_cmd->add_flag("--json", cv_json, "emit a json record");

  // demo delivery
  int dd_n = 0;
  std::string dd_sweep;
  bool dd_json = false;
  auto* demo_cmd = app.add_subcommand("demo", "built-in walkthroughs");
  demo_cmd->require_subcommand(1);
  auto* dd_cmd = demo_cmd->add_subcommand("delivery",
                                          "the cupcake-delivery walkthrough");
  dd_cmd->add_option("--n-good", dd_n, "observed good items, 0..1000");
  dd_cmd->add_option("--sweep", dd_sweep, "range A..B of observation counts");
  dd_cmd->add_flag("--json", dd_json, "emit json records (one per result)");

  std::vector<const char*> argv;
  argv.push_back("mwer");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out, help_err;
    const int code = app.exit(e, help_out, help_err);
    out << help_out.str();
    err << help_err.str();
    return code == 0 ? 0 : 2;
  }

  try {
    if (rank_cmd->parsed())
      return cmd_rank(rank_scenario, rank_menu, rank_rule, rank_json, out);
    if (up_cmd->parsed())
      return cmd_update(up_scenario, up_event, up_method,
                        thr_opt->count() ? std::optional<double>(up_threshold)
                                         : std::nullopt,
                        up_json, out);
    if (au_cmd->parsed())
      return cmd_audit(au_axiom, au_rule, au_policy, au_trials, au_budget,
                       resolve_seed(au_seed), au_json, out);
    if (t4_cmd->parsed())
      return cmd_table4(t4_trials, t4_budget, resolve_seed(t4_seed), t4_json, out);
    if (cv_cmd->parsed())
      return cmd_converge(cv_candidates, cv_truth, cv_rounds,
                          resolve_seed(cv_seed), cv_json, out);
    if (demo_cmd->parsed() && dd_cmd->parsed())
      return cmd_demo_delivery(dd_n, parse_sweep(dd_sweep), dd_json, out);
    err << "error: no subcommand\n";
    return 2;
  } catch (const UpdateUndefinedError& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace mwer
