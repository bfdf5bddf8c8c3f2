#pragma once

#include "mwer/model.hpp"

namespace mwer {

// The two-state cupcake-delivery problem: states {one_broken, ten_broken},
// point-mass hypotheses Pr1/Pr10, menu M0 = {cont, back, check} and
// M1 = M0 + {new} with doubled stakes, and events over each state.
// `weight_ten` is the weight attached to the ten-broken hypothesis.
Scenario delivery_scenario(double weight_ten = 1.0);

// Two states, acts up = (1, 0) and down = (0, 1), and point-mass beliefs on
// each state with weight 1. The smallest instance where hedging matters.
Scenario two_point_scenario();

// Belief set {(0.6, 0.3, 0.1), (0.1, 0.25, 0.65)} over three states, both
// weight 1; events E12 = {s1, s2} and E23 = {s2, s3}.
Scenario three_state_scenario();

}  // namespace mwer
