#pragma once

#include <map>
#include <optional>

#include "popmatch/instance.hpp"

namespace popmatch {

/// Extra copies to purchase, per real item id, and their total price.
struct AugmentationPlan {
    std::map<std::string, int> extra; // nonzero entries only
    std::int64_t total_cost = 0;

    friend bool operator==(const AugmentationPlan&, const AugmentationPlan&) = default;
};

/// Diagnostics from augment_length2, exposed for property tests.
struct Length2Stats {
    int iterations = 0;
    bool s_sets_stable = true;   // no person's s-set changed across the run
    bool copies_bound_ok = true; // copies(b) stays within b's reduced-graph degree
    bool copies_bound_checked = false; // only meaningful when all initial copies were 1
};

/// Min-cost augmentation for strict lists with at most 2 real items:
/// repeatedly duplicate the cheapest odd item of the reduced graph until an
/// A-complete matching exists. Accepts raw or last-resort-enabled input.
AugmentationPlan augment_length2(const Instance& inst, Length2Stats* stats = nullptr);

struct ExactOptions {
    std::uint64_t max_states = 1'000'000; // explored copy vectors before giving up
    std::optional<std::int64_t> cost_cap; // ignore vectors costing more than this
};

/// Exhaustive best-first search over extra-copy vectors (extra(b) bounded by
/// the number of people listing b), cheapest feasible vector first. With
/// perfect=true the augmented instance must admit a popular matching placing
/// every person on a real item; absence means no vector is feasible.
std::optional<AugmentationPlan> exact_augmentation(const Instance& inst, bool perfect,
                                                   const ExactOptions& opts = {});

/// True iff applying the plan yields an instance admitting a popular matching
/// (a perfect one when perfect=true) and the plan's total_cost is consistent.
bool verify_plan(const Instance& inst, const AugmentationPlan& plan, bool perfect);

} // namespace popmatch
