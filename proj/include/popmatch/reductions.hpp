#pragma once

#include <array>
#include <optional>

#include "popmatch/augment.hpp"
#include "popmatch/instance.hpp"

namespace popmatch::reductions {

/// Monotone 1-in-3 SAT: clauses of 3 distinct positive literals. Variable
/// indices are 1-based; each clause is stored sorted ascending.
struct SatInstance {
    int n_vars = 0;
    std::vector<std::array<int, 3>> clauses;

    friend bool operator==(const SatInstance&, const SatInstance&) = default;
};

/// Format: first line `vars <n>`, then one `c <i> <j> <k>` line per clause.
SatInstance parse_sat(const std::string& text);
std::string serialize_sat(const SatInstance& sat);

/// assignment[j] for j in 1..n_vars; index 0 unused. Exhaustive search,
/// lowest assignment (variables as little-endian bits) first.
std::optional<std::vector<bool>> solve_1in3(const SatInstance& sat, int max_vars = 24);

enum class GadgetKind { Instance, Augment, Inapprox, Perfect };

/// Universe for the min-cost popular instance problem: 9 people per clause,
/// internal items p<i>_<t> (cost 1) and q<i> (cost 0), public items u<j>
/// (cost 3). Copy counts in the returned instance are placeholders; the
/// search over copy vectors decides them.
Instance gen_popular_instance(const SatInstance& sat);

/// Min-cost augmentation gadget: 6 people per clause plus one x<j> per
/// variable, internal items cost 2, public items cost 1, single copies.
/// Admits no popular matching.
Instance gen_augmentation(const SatInstance& sat);

/// Inapproximability gadget: like gen_augmentation but with `triplets`
/// copies of the (a4,a5,a6) triplet per clause, each with its own top item
/// r<i>_<t>, and internal items priced at internal_cost.
Instance gen_inapprox(const SatInstance& sat, int triplets, std::int64_t internal_cost);

/// Perfect augmentation gadget: strict lists of length at most 2; internal
/// items cost internal_cost (the clause count when negative), public cost 1.
Instance gen_perfect_aug(const SatInstance& sat, std::int64_t internal_cost = -1);

/// The constructive plan certifying a 1-in-3 satisfying assignment:
/// Augment/Inapprox buy c_j extra copies of u<j> per true variable; Perfect
/// buys 2*c_j per false variable. Throws if the assignment is not 1-in-3
/// satisfying or the kind is Instance.
AugmentationPlan assignment_to_plan(const SatInstance& sat, const std::vector<bool>& assignment,
                                    GadgetKind kind);

struct CopyVector {
    std::map<std::string, int> copies; // nonzero entries only
    std::int64_t cost = 0;
};

/// The constructive full copy vector for the popular instance gadget: true
/// variables get zero copies of u<j>; each clause buys 2+1 copies of its
/// false public items, one copy of the true position's p item, two of the
/// others, and one of q<i>. Costs 14 per clause.
CopyVector assignment_to_copy_vector(const SatInstance& sat,
                                     const std::vector<bool>& assignment);

/// A total item order consistent with every (strict) preference list, ties
/// broken by declaration order, or absence when lists conflict or tie.
std::optional<std::vector<std::string>> master_list(const Instance& inst);

} // namespace popmatch::reductions
