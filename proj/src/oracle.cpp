#include "popmatch/oracle.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>

namespace popmatch::oracle {

namespace {

bool is_last_resort(const Instance& inst, int b) {
    return inst.item(b).id.rfind(kLastResortPrefix, 0) == 0;
}

void check_size(const Instance& inst, const Guard& guard) {
    if (inst.num_people() > guard.max_people)
        throw Error("oracle guard exceeded: too many people");
    long long clones = 0;
    for (int b = 0; b < inst.num_items(); ++b) {
        if (is_last_resort(inst, b)) continue;
        clones += std::min(inst.item(b).copies, inst.num_people());
    }
    if (clones > guard.max_clones)
        throw Error("oracle guard exceeded: cloned graph too large");
}

// Shared-capacity items plus per-person choice lists; the scaffolding for
// both matching enumeration and the best-response margin search.
struct Context {
    const Instance& inst;
    std::vector<int> items;                 // real listed item indices
    std::vector<int> pos;                   // item index -> position (-1 if absent)
    std::vector<int> cap;                   // usable copies per position
    std::vector<std::uint64_t> stride;
    std::uint64_t states = 1;
    // choices[p]: (position or -1 for the person's own last resort, rank, item index)
    struct Choice { int pos; int rank; int item; };
    std::vector<std::vector<Choice>> choices;

    explicit Context(const Instance& instance, const Guard& guard) : inst(instance) {
        const int n = inst.num_people();
        pos.assign(inst.num_items(), -1);
        for (int b = 0; b < inst.num_items(); ++b) {
            if (is_last_resort(inst, b) || inst.listing_count(b) == 0) continue;
            pos[b] = static_cast<int>(items.size());
            items.push_back(b);
            cap.push_back(std::min(inst.item(b).copies, n));
        }
        stride.resize(items.size());
        for (std::size_t i = 0; i < items.size(); ++i) {
            stride[i] = states;
            states *= static_cast<std::uint64_t>(cap[i]) + 1;
            if (states > guard.max_dp_cells)
                throw Error("oracle guard exceeded: capacity state space too large");
        }
        if (static_cast<std::uint64_t>(n + 1) * states > guard.max_dp_cells)
            throw Error("oracle guard exceeded: margin search table too large");
        if (!inst.last_resort_enabled())
            throw Error("oracle operations require last resorts enabled");
        choices.resize(n);
        for (int p = 0; p < n; ++p) {
            const auto& groups = inst.prefs()[p];
            for (std::size_t g = 0; g < groups.size(); ++g)
                for (int b : groups[g]) {
                    int rank = static_cast<int>(g) + 1;
                    if (is_last_resort(inst, b))
                        choices[p].push_back({-1, rank, b});
                    else
                        choices[p].push_back({pos[b], rank, b});
                }
        }
    }

    std::uint64_t full_state() const { return states - 1; }
};

// Maximum, over all alternative assignments, of (#people preferring the
// alternative) - (#people preferring m). Exhaustive over per-person choices
// with memoization on remaining shared capacities.
int margin_against(const Context& ctx, const std::vector<int>& candidate_ranks,
                   std::vector<int>* witness) {
    const int n = ctx.inst.num_people();
    std::vector<std::vector<int>> dp(n + 1, std::vector<int>(ctx.states));
    for (int p = n - 1; p >= 0; --p) {
        const auto& next = dp[p + 1];
        auto& cur = dp[p];
        for (std::uint64_t s = 0; s < ctx.states; ++s) {
            int best = std::numeric_limits<int>::min();
            for (const auto& c : ctx.choices[p]) {
                int w = candidate_ranks[p] > c.rank ? 1
                      : candidate_ranks[p] < c.rank ? -1 : 0;
                if (c.pos < 0) {
                    best = std::max(best, w + next[s]);
                } else {
                    std::uint64_t remaining = (s / ctx.stride[c.pos]) % (ctx.cap[c.pos] + 1);
                    if (remaining > 0) best = std::max(best, w + next[s - ctx.stride[c.pos]]);
                }
            }
            cur[s] = best;
        }
    }
    if (witness) {
        witness->assign(n, -1);
        std::uint64_t s = ctx.full_state();
        for (int p = 0; p < n; ++p) {
            for (const auto& c : ctx.choices[p]) {
                int w = candidate_ranks[p] > c.rank ? 1
                      : candidate_ranks[p] < c.rank ? -1 : 0;
                if (c.pos < 0) {
                    if (w + dp[p + 1][s] == dp[p][s]) {
                        (*witness)[p] = c.item;
                        break;
                    }
                } else {
                    std::uint64_t remaining = (s / ctx.stride[c.pos]) % (ctx.cap[c.pos] + 1);
                    if (remaining > 0 && w + dp[p + 1][s - ctx.stride[c.pos]] == dp[p][s]) {
                        (*witness)[p] = c.item;
                        s -= ctx.stride[c.pos];
                        break;
                    }
                }
            }
        }
    }
    return dp[0][ctx.full_state()];
}

std::vector<int> candidate_ranks(const Instance& inst, const Matching& m) {
    std::vector<int> ranks(inst.num_people());
    for (int p = 0; p < inst.num_people(); ++p)
        ranks[p] = inst.rank_of(p, m.assignment[p]);
    return ranks;
}

// Enumerates all assignments (person -> chosen item) depth first in
// declaration order, maintaining shared-capacity usage.
void enumerate_assignments(const Context& ctx, std::vector<int>& usage,
                           std::vector<int>& assignment, int p,
                           const std::function<bool(const std::vector<int>&)>& yield,
                           bool& stopped) {
    if (stopped) return;
    if (p == ctx.inst.num_people()) {
        if (!yield(assignment)) stopped = true;
        return;
    }
    for (const auto& c : ctx.choices[p]) {
        if (c.pos >= 0) {
            if (usage[c.pos] >= ctx.cap[c.pos]) continue;
            ++usage[c.pos];
        }
        assignment[p] = c.item;
        enumerate_assignments(ctx, usage, assignment, p + 1, yield, stopped);
        if (c.pos >= 0) --usage[c.pos];
        if (stopped) return;
    }
}

struct SigInfo {
    std::int64_t cost;
    int real_card;
    std::vector<int> assignment;
};

// Distinct rank signatures with their cheapest representative assignment.
std::map<std::vector<int>, SigInfo> collect_signatures(const Context& ctx) {
    std::map<std::vector<int>, SigInfo> sigs;
    std::vector<int> usage(ctx.items.size(), 0);
    std::vector<int> assignment(ctx.inst.num_people());
    bool stopped = false;
    enumerate_assignments(ctx, usage, assignment, 0, [&](const std::vector<int>& a) {
        std::vector<int> sig(ctx.inst.num_people());
        std::int64_t cost = 0;
        int card = 0;
        for (int p = 0; p < ctx.inst.num_people(); ++p) {
            sig[p] = ctx.inst.rank_of(p, a[p]);
            cost = checked_add(cost, ctx.inst.item(a[p]).cost);
            if (!is_last_resort(ctx.inst, a[p])) ++card;
        }
        auto it = sigs.find(sig);
        if (it == sigs.end()) {
            sigs.emplace(std::move(sig), SigInfo{cost, card, a});
        } else if (cost < it->second.cost ||
                   (cost == it->second.cost && a < it->second.assignment)) {
            it->second.cost = cost;
            it->second.assignment = a;
        }
        return true;
    }, stopped);
    return sigs;
}

std::optional<Solution> first_popular(const Instance& inst, const Guard& guard,
                                      bool max_card_first) {
    check_size(inst, guard);
    Context ctx(inst, guard);
    auto sigs = collect_signatures(ctx);
    std::vector<const std::pair<const std::vector<int>, SigInfo>*> order;
    order.reserve(sigs.size());
    for (const auto& kv : sigs) order.push_back(&kv);
    std::sort(order.begin(), order.end(), [&](auto* a, auto* b) {
        if (max_card_first && a->second.real_card != b->second.real_card)
            return a->second.real_card > b->second.real_card;
        if (a->second.cost != b->second.cost) return a->second.cost < b->second.cost;
        return a->second.assignment < b->second.assignment;
    });
    for (auto* kv : order) {
        if (margin_against(ctx, kv->first, nullptr) <= 0) {
            Matching m = Matching::from_assignment(inst, kv->second.assignment);
            return Solution{std::move(m), kv->second.cost};
        }
    }
    return std::nullopt;
}

} // namespace

void enumerate_matchings(const Instance& inst,
                         const std::function<bool(const Matching&)>& yield,
                         const Guard& guard) {
    const Instance* use = &inst;
    Instance enabled;
    if (!inst.last_resort_enabled()) {
        enabled = inst.with_last_resorts();
        use = &enabled;
    }
    check_size(*use, guard);
    Context ctx(*use, guard);
    std::vector<int> usage(ctx.items.size(), 0);
    std::vector<int> assignment(use->num_people());
    bool stopped = false;
    enumerate_assignments(ctx, usage, assignment, 0, [&](const std::vector<int>& a) {
        return yield(Matching::from_assignment(*use, a));
    }, stopped);
}

int best_response_margin(const Instance& inst, const Matching& m, const Guard& guard,
                         Matching* witness) {
    check_size(inst, guard);
    validate_matching(inst, m);
    Context ctx(inst, guard);
    std::vector<int> w;
    int margin = margin_against(ctx, candidate_ranks(inst, m), witness ? &w : nullptr);
    if (witness) *witness = Matching::from_assignment(inst, w);
    return margin;
}

bool brute_is_popular(const Instance& inst, const Matching& m, const Guard& guard) {
    return best_response_margin(inst, m, guard) <= 0;
}

std::optional<Solution> brute_min_cost_popular(const Instance& inst, const Guard& guard) {
    return first_popular(inst, guard, false);
}

std::optional<Solution> brute_min_cost_max_card_popular(const Instance& inst,
                                                        const Guard& guard) {
    return first_popular(inst, guard, true);
}

InstancePlan brute_min_cost_popular_instance(const Instance& universe, const Guard& guard) {
    if (universe.last_resort_enabled())
        throw Error("popular-instance search expects a raw universe");
    const int n = universe.num_people();
    const int nb = universe.num_items();
    if (n > guard.max_people) throw Error("oracle guard exceeded: too many people");

    std::vector<int> bound(nb);
    std::uint64_t vectors = 1;
    for (int b = 0; b < nb; ++b) {
        bound[b] = universe.listing_count(b);
        vectors *= static_cast<std::uint64_t>(bound[b]) + 1;
        if (vectors > guard.max_vectors)
            throw Error("oracle guard exceeded: too many copy vectors");
    }

    // All copy vectors, cheapest (then smallest, then lexicographic) first.
    struct Vec { std::int64_t cost; int total; std::vector<int> copies; };
    std::vector<Vec> all;
    std::vector<int> cur(nb, 0);
    auto emit = [&](auto&& self, int b, std::int64_t cost, int total) -> void {
        if (b == nb) {
            all.push_back({cost, total, cur});
            return;
        }
        for (int c = 0; c <= bound[b]; ++c) {
            cur[b] = c;
            self(self, b + 1, checked_add(cost, checked_mul(c, universe.item(b).cost)),
                 total + c);
        }
        cur[b] = 0;
    };
    emit(emit, 0, 0, 0);
    std::sort(all.begin(), all.end(), [](const Vec& a, const Vec& b) {
        if (a.cost != b.cost) return a.cost < b.cost;
        if (a.total != b.total) return a.total < b.total;
        return a.copies < b.copies;
    });

    for (const auto& vec : all) {
        // Everyone must have some purchasable item, and enough copies overall.
        bool plausible = true;
        int supply = 0;
        for (int b = 0; b < nb; ++b) supply += std::min(vec.copies[b], n);
        if (supply < n) continue;
        for (int p = 0; p < n && plausible; ++p) {
            bool has = false;
            for (const auto& group : universe.prefs()[p])
                for (int b : group)
                    if (vec.copies[b] > 0) has = true;
            plausible = has;
        }
        if (!plausible) continue;

        // Induced instance: items with zero copies disappear from the lists.
        Instance built;
        for (int b = 0; b < nb; ++b)
            if (vec.copies[b] > 0)
                built.add_item(universe.item(b).id, vec.copies[b], universe.item(b).cost);
        for (int p = 0; p < n; ++p) {
            std::vector<std::vector<std::string>> groups;
            for (const auto& group : universe.prefs()[p]) {
                std::vector<std::string> g;
                for (int b : group)
                    if (vec.copies[b] > 0) g.push_back(universe.item(b).id);
                if (!g.empty()) groups.push_back(std::move(g));
            }
            built.add_person(universe.people()[p], groups);
        }
        Instance enabled = built.with_last_resorts();

        Context ctx(enabled, guard);
        bool feasible = false;
        std::set<std::vector<int>> seen;
        std::vector<int> usage(ctx.items.size(), 0);
        std::vector<int> assignment(n);
        bool stopped = false;
        enumerate_assignments(ctx, usage, assignment, 0, [&](const std::vector<int>& a) {
            for (int p = 0; p < n; ++p)
                if (is_last_resort(enabled, a[p])) return true; // not perfect
            std::vector<int> sig(n);
            for (int p = 0; p < n; ++p) sig[p] = enabled.rank_of(p, a[p]);
            if (!seen.insert(sig).second) return true;
            if (margin_against(ctx, sig, nullptr) <= 0) {
                feasible = true;
                return false;
            }
            return true;
        }, stopped);

        if (feasible) {
            InstancePlan plan;
            plan.cost = vec.cost;
            for (int b = 0; b < nb; ++b)
                if (vec.copies[b] > 0) plan.copies[universe.item(b).id] = vec.copies[b];
            return plan;
        }
    }
    throw Error("no feasible copy vector within bounds"); // unreachable for valid input
}

CloneDecomposition clone_decomposition(const Instance& inst, const Guard& guard) {
    check_size(inst, guard);
    const int n = inst.num_people();

    // Build the cloned rank-1 graph. An item with more copies than rank-1
    // neighbors keeps one surplus clone so an unmatched clone always exists.
    std::vector<int> deg1(inst.num_items(), 0);
    std::vector<std::vector<int>> top(n);
    for (int p = 0; p < n; ++p) {
        if (inst.prefs()[p].empty()) continue;
        top[p] = inst.prefs()[p][0];
        for (int b : top[p]) ++deg1[b];
    }
    std::vector<int> first_clone(inst.num_items() + 1, 0);
    std::vector<int> owner;
    for (int b = 0; b < inst.num_items(); ++b) {
        first_clone[b] = static_cast<int>(owner.size());
        int k = std::min(inst.item(b).copies, deg1[b] + 1);
        for (int c = 0; c < k; ++c) owner.push_back(b);
    }
    first_clone[inst.num_items()] = static_cast<int>(owner.size());
    const int nc = static_cast<int>(owner.size());

    std::vector<std::vector<int>> adj(n); // person -> clone ids
    for (int p = 0; p < n; ++p)
        for (int b : top[p])
            for (int c = first_clone[b]; c < first_clone[b + 1]; ++c) adj[p].push_back(c);

    // Plain Kuhn augmenting-path matching on the cloned graph.
    std::vector<int> mate_p(n, -1), mate_c(nc, -1);
    std::vector<char> visited(nc, 0);
    auto try_augment = [&](auto&& self, int p) -> bool {
        for (int c : adj[p]) {
            if (visited[c]) continue;
            visited[c] = 1;
            if (mate_c[c] < 0 || self(self, mate_c[c])) {
                mate_p[p] = c;
                mate_c[c] = p;
                return true;
            }
        }
        return false;
    };
    int size = 0;
    for (int p = 0; p < n; ++p) {
        std::fill(visited.begin(), visited.end(), 0);
        if (try_augment(try_augment, p)) ++size;
    }

    // Alternating BFS from every unmatched vertex.
    constexpr int kUnset = -1, kEven = 0, kOdd = 1;
    std::vector<int> lp(n, kUnset), lc(nc, kUnset);
    std::deque<std::pair<bool, int>> queue; // (is_clone, id)
    for (int p = 0; p < n; ++p)
        if (mate_p[p] < 0) { lp[p] = kEven; queue.emplace_back(false, p); }
    for (int c = 0; c < nc; ++c)
        if (mate_c[c] < 0) { lc[c] = kEven; queue.emplace_back(true, c); }
    while (!queue.empty()) {
        auto [is_clone, v] = queue.front();
        queue.pop_front();
        if (!is_clone) {
            for (int c : adj[v]) {
                if (c == mate_p[v] || lc[c] != kUnset) continue;
                lc[c] = kOdd;
                if (mate_c[c] >= 0 && lp[mate_c[c]] == kUnset) {
                    lp[mate_c[c]] = kEven;
                    queue.emplace_back(false, mate_c[c]);
                }
            }
        } else {
            for (int p = 0; p < n; ++p) {
                // adjacency is symmetric: p neighbors clone v iff v in adj[p]
                if (lp[p] != kUnset) continue;
                if (std::find(adj[p].begin(), adj[p].end(), v) == adj[p].end()) continue;
                if (p == mate_c[v]) continue;
                lp[p] = kOdd;
                if (mate_p[p] >= 0 && lc[mate_p[p]] == kUnset) {
                    lc[mate_p[p]] = kEven;
                    queue.emplace_back(true, mate_p[p]);
                }
            }
        }
    }

    CloneDecomposition out;
    out.max_matching_size = size;
    out.labels.person.resize(n);
    out.labels.item.resize(inst.num_items());
    auto to_label = [](int l) {
        return l == kEven ? Label::Even : l == kOdd ? Label::Odd : Label::Unreachable;
    };
    for (int p = 0; p < n; ++p) {
        out.labels.person[p] = to_label(lp[p]);
        if (lp[p] == kOdd) ++out.odd_count;
        if (lp[p] == kUnset) ++out.unreachable_count;
    }
    for (int b = 0; b < inst.num_items(); ++b) {
        if (first_clone[b] == first_clone[b + 1])
            throw Error("internal: item without clones");
        int l = lc[first_clone[b]];
        for (int c = first_clone[b]; c < first_clone[b + 1]; ++c) {
            if (lc[c] != l) throw Error("internal: clone labels of one item disagree");
            if (lc[c] == kOdd) ++out.odd_count;
            if (lc[c] == kUnset) ++out.unreachable_count;
        }
        out.labels.item[b] = to_label(l);
    }
    return out;
}

} // namespace popmatch::oracle
