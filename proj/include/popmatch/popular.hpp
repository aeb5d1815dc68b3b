#pragma once

#include <optional>

#include "popmatch/decomposition.hpp"
#include "popmatch/instance.hpp"

namespace popmatch {

struct Solution {
    Matching matching;
    std::int64_t cost = 0;
};

/// (#people preferring m1) - (#people preferring m2); positive means m1 is
/// more popular. Requires last resorts enabled.
int compare(const Instance& inst, const Matching& m1, const Matching& m2);

/// Structural popularity test: M restricted to rank-1 edges is a maximum
/// rank-1 matching, and every person is matched inside f(a) or s(a).
bool is_popular(const Instance& inst, const Matching& m);

/// Two-stage min-cost popular matching: max rank-1 matching via augmenting
/// paths, odd/even/unreachable labels, reduced graph, then repeated cheapest
/// augmenting paths found by full Hungarian trees. Returns absence when the
/// instance admits no popular matching. Requires last resorts enabled.
std::optional<Solution> min_cost_popular(const Instance& inst);

/// Min true cost among popular matchings of maximum cardinality, obtained by
/// pricing every last resort above the total cost of all real copies.
std::optional<Solution> min_cost_max_card_popular(const Instance& inst);

} // namespace popmatch
