#pragma once

#include <functional>
#include <optional>

#include "popmatch/decomposition.hpp"
#include "popmatch/instance.hpp"
#include "popmatch/popular.hpp"

namespace popmatch::oracle {

/// Explicit size guards for the brute-force reference implementations.
/// Exceeding a guard is an error, never silent truncation.
struct Guard {
    int max_people = 12;
    int max_clones = 12;                      // sum of min(copies, people) over real items
    std::uint64_t max_dp_cells = 50'000'000;  // people x capacity states in the margin search
    std::uint64_t max_vectors = 1'000'000;    // copy vectors in the instance search
};

/// Yields every matching (each person on a listed item or her last resort,
/// usage within copies) exactly once. The callback returns false to stop.
void enumerate_matchings(const Instance& inst,
                         const std::function<bool(const Matching&)>& yield,
                         const Guard& guard = {});

/// Definition-level popularity: no alternative assignment attains a positive
/// margin of people preferring it. The margin is maximized by exhaustive
/// search over per-person choices with memoization on remaining capacities.
bool brute_is_popular(const Instance& inst, const Matching& m, const Guard& guard = {});

/// The margin of the best response against m (positive means m is beaten);
/// optionally reconstructs a beating assignment.
int best_response_margin(const Instance& inst, const Matching& m, const Guard& guard = {},
                         Matching* witness = nullptr);

/// Minimum-cost matching among those passing brute_is_popular, or absence.
std::optional<Solution> brute_min_cost_popular(const Instance& inst, const Guard& guard = {});

/// Among popular matchings of maximum cardinality (people on real items),
/// the one of minimum cost, or absence.
std::optional<Solution> brute_min_cost_max_card_popular(const Instance& inst,
                                                        const Guard& guard = {});

struct InstancePlan {
    std::map<std::string, int> copies; // nonzero entries only
    std::int64_t cost = 0;
};

/// Min-cost copy vector over the universe whose induced instance admits a
/// popular matching placing every person on a real item. Copies in the
/// universe instance are ignored; every purchased copy is charged.
InstancePlan brute_min_cost_popular_instance(const Instance& universe, const Guard& guard = {});

/// Odd/even/unreachable labels computed on the explicitly cloned rank-1
/// graph (item b expanded into its usable clones) with its own augmenting
/// path matcher and plain alternating BFS. Shares no code with the
/// decomposition module.
struct CloneDecomposition {
    GeLabels labels;
    int max_matching_size = 0; // counting clone vertices
    int odd_count = 0;         // |O| counting clones
    int unreachable_count = 0; // |U| counting clones
};

CloneDecomposition clone_decomposition(const Instance& inst, const Guard& guard = {});

} // namespace popmatch::oracle
