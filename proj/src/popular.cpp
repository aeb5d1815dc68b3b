#include "popmatch/popular.hpp"

#include <algorithm>
#include <deque>

namespace popmatch {

namespace {

void require_last_resorts(const Instance& inst, const char* op) {
    if (!inst.last_resort_enabled())
        throw Error(std::string(op) + " requires last resorts enabled");
}

int rank1_cardinality(const Instance& inst, const Matching& m) {
    int count = 0;
    for (int p = 0; p < inst.num_people(); ++p)
        if (m.assignment[p] >= 0 && inst.rank_of(p, m.assignment[p]) == 1) ++count;
    return count;
}

int matched_count(const Matching& m) {
    int count = 0;
    for (int b : m.assignment)
        if (b >= 0) ++count;
    return count;
}

} // namespace

int compare(const Instance& inst, const Matching& m1, const Matching& m2) {
    require_last_resorts(inst, "compare");
    validate_matching(inst, m1);
    validate_matching(inst, m2);
    int diff = 0;
    for (int p = 0; p < inst.num_people(); ++p) {
        int r1 = inst.rank_of(p, m1.assignment[p]);
        int r2 = inst.rank_of(p, m2.assignment[p]);
        if (r1 < r2) ++diff;
        else if (r2 < r1) --diff;
    }
    return diff;
}

bool is_popular(const Instance& inst, const Matching& m) {
    require_last_resorts(inst, "is_popular");
    validate_matching(inst, m);
    Matching m0 = max_matching_rank1(inst);
    if (rank1_cardinality(inst, m) != matched_count(m0)) return false;
    GeLabels labels = gallai_edmonds(inst, m0);
    FsSets fs = fs_sets(inst, labels);
    for (int p = 0; p < inst.num_people(); ++p) {
        int b = m.assignment[p];
        if (std::find(fs.f[p].begin(), fs.f[p].end(), b) == fs.f[p].end() &&
            std::find(fs.s[p].begin(), fs.s[p].end(), b) == fs.s[p].end())
            return false;
    }
    return true;
}

std::optional<Solution> min_cost_popular(const Instance& inst) {
    require_last_resorts(inst, "min_cost_popular");
    const int n = inst.num_people();
    const int nb = inst.num_items();

    Matching m0 = max_matching_rank1(inst);
    GeLabels labels = gallai_edmonds(inst, m0);
    FsSets fs = fs_sets(inst, labels);
    BipartiteView reduced = reduced_graph(inst, fs, labels);

    // M1: drop M0 edges incident on odd people; stage two may rematch those
    // people to cheaper rank-1 neighbors.
    Matching m = m0;
    for (int p = 0; p < n; ++p) {
        if (labels.person[p] == Label::Odd && m.assignment[p] >= 0) {
            --m.usage[m.assignment[p]];
            m.assignment[p] = -1;
        }
    }

    std::vector<std::vector<int>> matched(nb);
    for (int p = 0; p < n; ++p)
        if (m.assignment[p] >= 0) matched[m.assignment[p]].push_back(p);

    std::vector<int> item_seen(nb, -1), person_seen(n, -1);
    std::vector<int> parent_person(nb, -1);
    int round = 0;

    for (int root = 0; root < n; ++root) {
        if (m.assignment[root] >= 0) continue;
        ++round;
        // Full Hungarian tree from `root`: collect every reachable item with
        // spare capacity, then augment to the cheapest one.
        std::deque<int> queue{root};
        person_seen[root] = round;
        int best = -1;
        while (!queue.empty()) {
            int p = queue.front();
            queue.pop_front();
            for (int b : reduced.adj[p]) {
                if (item_seen[b] == round) continue;
                item_seen[b] = round;
                parent_person[b] = p;
                if (m.usage[b] < reduced.copies[b]) {
                    // Cheapest terminal; ties go to the lowest declaration index.
                    if (best < 0 || inst.item(b).cost < inst.item(best).cost ||
                        (inst.item(b).cost == inst.item(best).cost && b < best))
                        best = b;
                }
                for (int p2 : matched[b]) {
                    if (person_seen[p2] == round) continue;
                    person_seen[p2] = round;
                    queue.push_back(p2);
                }
            }
        }
        if (best < 0) return std::nullopt;
        int b = best;
        while (true) {
            int p = parent_person[b];
            int prev = m.assignment[p];
            if (prev >= 0) {
                --m.usage[prev];
                std::erase(matched[prev], p);
            }
            m.assignment[p] = b;
            ++m.usage[b];
            matched[b].push_back(p);
            if (p == root) break;
            b = prev;
        }
    }
    std::int64_t cost = matching_cost(inst, m);
    return Solution{std::move(m), cost};
}

std::optional<Solution> min_cost_max_card_popular(const Instance& inst) {
    require_last_resorts(inst, "min_cost_max_card_popular");
    std::int64_t total = 0;
    for (const auto& it : inst.items())
        total = checked_add(total, checked_mul(it.copies, it.cost));
    std::int64_t huge = checked_add(total, 1);

    auto sol = min_cost_popular(inst.with_last_resort_cost(huge));
    if (!sol) return std::nullopt;
    sol->cost = matching_cost(inst, sol->matching);
    return sol;
}

} // namespace popmatch
