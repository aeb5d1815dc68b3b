#include "popmatch/augment.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "popmatch/decomposition.hpp"
#include "popmatch/popular.hpp"

namespace popmatch {

namespace {

bool is_last_resort(const Instance& inst, int b) {
    return inst.item(b).id.rfind(kLastResortPrefix, 0) == 0;
}

Instance ensure_last_resorts(const Instance& inst) {
    return inst.last_resort_enabled() ? inst : inst.with_last_resorts();
}

int real_group_count(const Instance& inst, int p) {
    int groups = static_cast<int>(inst.prefs()[p].size());
    return inst.last_resort_enabled() ? groups - 1 : groups;
}

} // namespace

AugmentationPlan augment_length2(const Instance& raw, Length2Stats* stats) {
    Instance inst = ensure_last_resorts(raw);
    const int n = inst.num_people();
    for (int p = 0; p < n; ++p) {
        if (real_group_count(inst, p) > 2)
            throw Error("augment_length2 requires lists of at most 2 real items");
        for (const auto& group : inst.prefs()[p])
            if (group.size() != 1)
                throw Error("augment_length2 requires strict lists");
    }

    // f/s edges from the initial rank-1 labels; stable across duplications
    // because a top choice item never gains enough copies to turn even.
    Matching m0 = max_matching_rank1(inst);
    GeLabels initial = gallai_edmonds(inst, m0);
    FsSets fs = fs_sets(inst, initial);
    BipartiteView view;
    view.adj.resize(n);
    view.copies.resize(inst.num_items());
    for (int b = 0; b < inst.num_items(); ++b) view.copies[b] = inst.item(b).copies;
    for (int p = 0; p < n; ++p) {
        view.adj[p] = fs.f[p];
        if (initial.person[p] == Label::Even)
            for (int b : fs.s[p])
                if (std::find(view.adj[p].begin(), view.adj[p].end(), b) == view.adj[p].end())
                    view.adj[p].push_back(b);
    }

    bool all_single = true;
    for (const auto& it : inst.items())
        if (it.copies != 1) all_single = false;

    AugmentationPlan plan;
    Length2Stats local;
    local.copies_bound_checked = all_single;
    int prev_size = -1;
    while (true) {
        Matching m = max_matching(inst, view);
        int size = 0;
        for (int b : m.assignment)
            if (b >= 0) ++size;
        if (prev_size >= 0 && size != prev_size + 1)
            throw Error("internal: duplication did not grow the matching by one");
        if (size == n) break;
        prev_size = size;

        GeLabels labels = labels_for(inst, view, m);
        int best = -1;
        for (int b = 0; b < inst.num_items(); ++b) {
            if (labels.item[b] != Label::Odd) continue;
            if (is_last_resort(inst, b))
                throw Error("internal: last resort item became odd");
            if (best < 0 || inst.item(b).cost < inst.item(best).cost) best = b;
        }
        if (best < 0) throw Error("internal: incomplete matching but no odd item");
        ++view.copies[best];
        ++plan.extra[inst.item(best).id];
        plan.total_cost = checked_add(plan.total_cost, inst.item(best).cost);
        ++local.iterations;
    }

    if (local.iterations > 0) {
        Instance augmented = raw.with_extra_copies(plan.extra);
        Instance enabled = ensure_last_resorts(augmented);
        GeLabels after = gallai_edmonds(enabled, max_matching_rank1(enabled));
        FsSets fs_after = fs_sets(enabled, after);
        local.s_sets_stable = fs_after.s == fs.s;
        if (all_single) {
            for (const auto& [id, extra] : plan.extra) {
                int b = inst.item_index(id);
                int degree = 0;
                for (int p = 0; p < n; ++p)
                    if (std::find(view.adj[p].begin(), view.adj[p].end(), b) !=
                        view.adj[p].end())
                        ++degree;
                if (inst.item(b).copies + extra > degree) local.copies_bound_ok = false;
            }
        }
    }
    if (stats) *stats = local;
    return plan;
}

std::optional<AugmentationPlan> exact_augmentation(const Instance& raw, bool perfect,
                                                   const ExactOptions& opts) {
    Instance inst = ensure_last_resorts(raw);
    const int n = inst.num_people();

    std::vector<int> targets; // real items someone lists; only these are worth copying
    std::vector<int> bound;
    for (int b = 0; b < inst.num_items(); ++b) {
        if (is_last_resort(inst, b)) continue;
        int listed = inst.listing_count(b);
        if (listed == 0) continue;
        targets.push_back(b);
        bound.push_back(listed);
    }
    if (perfect)
        for (int p = 0; p < n; ++p)
            if (real_group_count(inst, p) == 0) return std::nullopt;

    auto feasible = [&](const std::vector<int>& extras) {
        std::map<std::string, int> delta;
        for (std::size_t i = 0; i < targets.size(); ++i)
            if (extras[i] > 0) delta[inst.item(targets[i]).id] = extras[i];
        Instance augmented = inst.with_extra_copies(delta);
        if (!perfect) return min_cost_popular(augmented).has_value();
        auto sol = min_cost_max_card_popular(augmented);
        if (!sol) return false;
        for (int p = 0; p < n; ++p)
            if (is_last_resort(augmented, sol->matching.assignment[p])) return false;
        return true;
    };

    // Best-first over extra-copy vectors: (cost, total extras, lex) order, so
    // the first feasible vector popped is the answer.
    struct State {
        std::int64_t cost;
        int total;
        std::vector<int> extras;
        bool operator>(const State& o) const {
            if (cost != o.cost) return cost > o.cost;
            if (total != o.total) return total > o.total;
            return extras > o.extras;
        }
    };
    std::priority_queue<State, std::vector<State>, std::greater<State>> queue;
    std::set<std::vector<int>> seen;
    std::vector<int> zero(targets.size(), 0);
    queue.push({0, 0, zero});
    seen.insert(zero);
    std::uint64_t popped = 0;
    while (!queue.empty()) {
        State cur = queue.top();
        queue.pop();
        if (opts.cost_cap && cur.cost > *opts.cost_cap) return std::nullopt;
        if (++popped > opts.max_states)
            throw Error("exact_augmentation: search space limit exceeded");
        if (feasible(cur.extras)) {
            AugmentationPlan plan;
            plan.total_cost = cur.cost;
            for (std::size_t i = 0; i < targets.size(); ++i)
                if (cur.extras[i] > 0) plan.extra[inst.item(targets[i]).id] = cur.extras[i];
            return plan;
        }
        for (std::size_t i = 0; i < targets.size(); ++i) {
            if (cur.extras[i] >= bound[i]) continue;
            State next = cur;
            ++next.extras[i];
            ++next.total;
            next.cost = checked_add(next.cost, inst.item(targets[i]).cost);
            if (seen.insert(next.extras).second) queue.push(std::move(next));
        }
    }
    return std::nullopt; // only reachable when perfect and no vector works
}

bool verify_plan(const Instance& raw, const AugmentationPlan& plan, bool perfect) {
    std::int64_t cost = 0;
    for (const auto& [id, count] : plan.extra) {
        if (count < 0) return false;
        int b = raw.item_index(id);
        if (b < 0) return false;
        cost = checked_add(cost, checked_mul(count, raw.item(b).cost));
    }
    if (cost != plan.total_cost) return false;

    Instance augmented = ensure_last_resorts(raw.with_extra_copies(plan.extra));
    if (!perfect) return min_cost_popular(augmented).has_value();
    auto sol = min_cost_max_card_popular(augmented);
    if (!sol) return false;
    for (int p = 0; p < augmented.num_people(); ++p)
        if (is_last_resort(augmented, sol->matching.assignment[p])) return false;
    return true;
}

} // namespace popmatch
