#pragma once

#include <span>

#include "popmatch/instance.hpp"

namespace popmatch {

enum class Label { Odd, Even, Unreachable };

char label_char(Label l);

/// Odd/even/unreachable classification of every vertex, equivalent to the
/// classification on the cloned graph (item b expanded into copies(b)
/// vertices); all clones of an item share one status.
struct GeLabels {
    std::vector<Label> person;
    std::vector<Label> item;
};

/// f(a): a's top rank group. s(a): the Even items of a's most-preferred rank
/// group containing an Even item (falls back to f(a) when the list is just
/// the last resort).
struct FsSets {
    std::vector<std::vector<int>> f;
    std::vector<std::vector<int>> s;
};

/// A capacitated bipartite subgraph of an instance: per-person item adjacency
/// plus item capacities. Item indices refer to the owning Instance.
struct BipartiteView {
    std::vector<std::vector<int>> adj; // person -> item indices
    std::vector<int> copies;           // per item index
};

/// The instance restricted to each person's first rank group.
BipartiteView rank1_graph(const Instance& inst);

/// Maximum matching in a capacitated bipartite view via augmenting-path
/// search (Ford-Fulkerson with unit person capacities). Deterministic:
/// people are processed in `order` (declaration order when empty) and
/// adjacency lists are scanned in declaration order.
Matching max_matching(const Instance& inst, const BipartiteView& view,
                      std::span<const int> order = {});

Matching max_matching_rank1(const Instance& inst);

/// Odd/even/unreachable labels of a view w.r.t. a maximum matching, computed
/// without cloning by growing Hungarian trees from unmatched people and not
/// fully matched items, marking each vertex once. Throws if an augmenting
/// path shows the matching is not maximum.
GeLabels labels_for(const Instance& inst, const BipartiteView& view, const Matching& m);

/// Labels w.r.t. the rank-1 subgraph; m0 must be a maximum rank-1 matching.
GeLabels gallai_edmonds(const Instance& inst, const Matching& m0);

/// Requires last resorts enabled and labels from gallai_edmonds.
FsSets fs_sets(const Instance& inst, const GeLabels& labels);

/// G': f-edges for everyone, s-edges for Even people, minus edges joining an
/// Odd person to an Odd or Unreachable item.
BipartiteView reduced_graph(const Instance& inst, const FsSets& fs, const GeLabels& labels);

} // namespace popmatch
