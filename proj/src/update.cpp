#include "mwer/update.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mwer {

namespace {

void check_spaces(const WeightedBeliefs& beliefs, const Event& e) {
  if (beliefs.state_count() != e.state_count())
    throw PreconditionError("beliefs and event live over different state spaces");
}

double linf_distance(const Measure& a, const Measure& b) {
  double d = 0.0;
  for (std::size_t s = 0; s < a.state_count(); ++s)
    d = std::max(d, std::fabs(a.prob(s) - b.prob(s)));
  return d;
}

}  // namespace

double measure_prob(const Measure& pr, const Event& e) {
  if (pr.state_count() != e.state_count())
    throw PreconditionError("measure and event live over different state spaces");
  double p = 0.0;
  for (std::size_t s = 0; s < pr.state_count(); ++s)
    if (e.contains(s)) p += pr.prob(s);
  return p;
}

double event_weight(const WeightedBeliefs& beliefs, const Event& e) {
  check_spaces(beliefs, e);
  double best = 0.0;
  for (const auto& entry : beliefs.entries())
    best = std::max(best, entry.weight * measure_prob(entry.measure, e));
  return best;
}

bool is_null_event(const WeightedBeliefs& beliefs, const Event& e) {
  return event_weight(beliefs, e) == 0.0;
}

Measure condition(const Measure& pr, const Event& e) {
  double pe = measure_prob(pr, e);
  if (pe <= 0.0)
    throw UpdateUndefinedError(
        "conditioning is undefined: the measure gives the event probability 0");
  std::vector<double> probs(pr.state_count(), 0.0);
  for (std::size_t s = 0; s < pr.state_count(); ++s)
    if (e.contains(s)) probs[s] = pr.prob(s) / pe;
  return Measure(std::move(probs));
}

UpdateResult likelihood_update(const WeightedBeliefs& beliefs, const Event& e) {
  check_spaces(beliefs, e);
  const double best = event_weight(beliefs, e);
  if (best <= 0.0)
    throw UpdateUndefinedError(
        "update is undefined: the event carries zero weighted probability (null event)");

  UpdateResult out{beliefs, {}, {}, std::vector<double>(beliefs.size(), 0.0)};
  std::vector<WeightedMeasure> grouped;
  std::vector<Measure> conditionals;
  std::vector<double> group_products;  // per group: max weight_i * Pr_i(E)

  for (std::size_t i = 0; i < beliefs.size(); ++i) {
    const auto& entry = beliefs.entry(i);
    const double pe = measure_prob(entry.measure, e);
    if (pe <= 0.0) {
      out.dropped.push_back(i);
      continue;
    }
    const double product = entry.weight * pe;
    out.source_posteriors[i] = product / best;
    Measure cond = condition(entry.measure, e);
    // First group whose conditional matches absorbs this source; the group
    // keeps the best product seen among its members.
    bool placed = false;
    for (std::size_t g = 0; g < conditionals.size() && !placed; ++g) {
      if (linf_distance(cond, conditionals[g]) <= kGroupTolerance) {
        out.groups[g].push_back(i);
        group_products[g] = std::max(group_products[g], product);
        placed = true;
      }
    }
    if (!placed) {
      conditionals.push_back(cond);
      out.groups.push_back({i});
      group_products.push_back(product);
      grouped.push_back({std::move(cond), 1.0, entry.name});
    }
  }

  for (std::size_t g = 0; g < grouped.size(); ++g)
    grouped[g].weight = group_products[g] / best;
  out.updated = WeightedBeliefs(std::move(grouped));
  return out;
}

namespace {

// Conditions survivors picked by `keep`, resets weights to 1, and collapses
// coinciding conditionals; shared by the two unweighted update methods.
WeightedBeliefs unweighted_update(const WeightedBeliefs& beliefs, const Event& e,
                                  const std::vector<char>& keep,
                                  const char* method) {
  std::vector<WeightedMeasure> survivors;
  for (std::size_t i = 0; i < beliefs.size(); ++i) {
    if (!keep[i]) continue;
    Measure cond = condition(beliefs.entry(i).measure, e);
    bool duplicate = false;
    for (const auto& s : survivors)
      if (linf_distance(cond, s.measure) <= kGroupTolerance) {
        duplicate = true;
        break;
      }
    if (!duplicate) survivors.push_back({std::move(cond), 1.0, beliefs.entry(i).name});
  }
  if (survivors.empty())
    throw UpdateUndefinedError(std::string(method) +
                               " update is undefined: no measure survives the event");
  return WeightedBeliefs(std::move(survivors));
}

}  // namespace

WeightedBeliefs measure_by_measure_update(const WeightedBeliefs& beliefs,
                                          const Event& e) {
  check_spaces(beliefs, e);
  std::vector<char> keep(beliefs.size(), 0);
  for (std::size_t i = 0; i < beliefs.size(); ++i)
    keep[i] = measure_prob(beliefs.entry(i).measure, e) > 0.0;
  return unweighted_update(beliefs, e, keep, "measure-by-measure");
}

WeightedBeliefs epstein_schneider_update(const WeightedBeliefs& beliefs,
                                         const Event& e, double threshold) {
  check_spaces(beliefs, e);
  if (!(threshold > 0.0 && threshold < 1.0))
    throw PreconditionError("threshold must lie strictly between 0 and 1, got " +
                            format_double(threshold));
  double best = 0.0;
  std::vector<double> likelihood(beliefs.size());
  for (std::size_t i = 0; i < beliefs.size(); ++i) {
    likelihood[i] = measure_prob(beliefs.entry(i).measure, e);
    best = std::max(best, likelihood[i]);
  }
  if (best <= 0.0)
    throw UpdateUndefinedError(
        "threshold update is undefined: every measure gives the event probability 0");
  // Strict comparison: measures whose relative likelihood does not exceed
  // the threshold are eliminated, so the maximizer (ratio 1) always stays.
  std::vector<char> keep(beliefs.size(), 0);
  for (std::size_t i = 0; i < beliefs.size(); ++i)
    keep[i] = likelihood[i] / best > threshold;
  return unweighted_update(beliefs, e, keep, "threshold");
}

UpdateResult sequential_update(const WeightedBeliefs& beliefs,
                               std::span<const Event> events) {
  UpdateResult acc{beliefs, {}, {}, {}};
  acc.groups.resize(beliefs.size());
  acc.source_posteriors.resize(beliefs.size());
  for (std::size_t i = 0; i < beliefs.size(); ++i) {
    acc.groups[i] = {i};
    acc.source_posteriors[i] = beliefs.entry(i).weight;
  }

  for (std::size_t k = 0; k < events.size(); ++k) {
    UpdateResult step = [&] {
      try {
        return likelihood_update(acc.updated, events[k]);
      } catch (const UpdateUndefinedError&) {
        throw UpdateUndefinedError("sequential update is undefined after event " +
                                   std::to_string(k + 1) + " of " +
                                   std::to_string(events.size()));
      }
    }();
    // Re-express the step's bookkeeping in terms of the original sources.
    UpdateResult next{step.updated, {}, {}, {}};
    next.source_posteriors.assign(acc.source_posteriors.size(), 0.0);
    for (std::size_t g = 0; g < step.groups.size(); ++g) {
      std::vector<std::size_t> sources;
      for (std::size_t mid : step.groups[g])
        for (std::size_t src : acc.groups[mid]) sources.push_back(src);
      std::sort(sources.begin(), sources.end());
      next.groups.push_back(std::move(sources));
    }
    next.dropped = acc.dropped;
    for (std::size_t mid : step.dropped)
      for (std::size_t src : acc.groups[mid]) next.dropped.push_back(src);
    std::sort(next.dropped.begin(), next.dropped.end());
    // A source's posterior advances by its group's likelihood ratio; the
    // group weight is the max over its members, so dividing it out recovers
    // Pr(E_k | group conditional) / normalizer for every member alike.
    for (std::size_t g = 0; g < step.groups.size(); ++g)
      for (std::size_t mid : step.groups[g]) {
        const double group_weight = acc.updated.entry(mid).weight;
        for (std::size_t src : acc.groups[mid])
          next.source_posteriors[src] =
              group_weight > 0.0 ? acc.source_posteriors[src] *
                                       step.source_posteriors[mid] / group_weight
                                 : 0.0;
      }
    acc = std::move(next);
  }
  return acc;
}

}  // namespace mwer
