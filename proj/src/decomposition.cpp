#include "popmatch/decomposition.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace popmatch {

char label_char(Label l) {
    switch (l) {
        case Label::Odd: return 'O';
        case Label::Even: return 'E';
        case Label::Unreachable: return 'U';
    }
    return '?';
}

BipartiteView rank1_graph(const Instance& inst) {
    BipartiteView view;
    view.adj.resize(inst.num_people());
    view.copies.resize(inst.num_items());
    for (int b = 0; b < inst.num_items(); ++b) view.copies[b] = inst.item(b).copies;
    for (int p = 0; p < inst.num_people(); ++p)
        if (!inst.prefs()[p].empty()) view.adj[p] = inst.prefs()[p][0];
    return view;
}

namespace {

// Per-item list of matched people, kept in sync with the assignment.
std::vector<std::vector<int>> matched_lists(const Instance& inst, const Matching& m) {
    std::vector<std::vector<int>> lists(inst.num_items());
    for (int p = 0; p < inst.num_people(); ++p)
        if (m.assignment[p] >= 0) lists[m.assignment[p]].push_back(p);
    return lists;
}

} // namespace

Matching max_matching(const Instance& inst, const BipartiteView& view,
                      std::span<const int> order) {
    const int n = inst.num_people();
    const int nb = inst.num_items();
    Matching m;
    m.assignment.assign(n, -1);
    m.usage.assign(nb, 0);
    std::vector<std::vector<int>> matched(nb);

    std::vector<int> default_order;
    if (order.empty()) {
        default_order.resize(n);
        std::iota(default_order.begin(), default_order.end(), 0);
        order = default_order;
    }

    std::vector<int> item_seen(nb, -1), person_seen(n, -1);
    std::vector<int> parent_person(nb, -1); // tree edge into item
    std::vector<int> parent_item(n, -1);    // matching edge into person
    int round = 0;

    for (int root : order) {
        if (m.assignment[root] >= 0) continue;
        ++round;
        // BFS for an augmenting path from `root`.
        std::deque<int> queue{root};
        person_seen[root] = round;
        int terminal = -1;
        while (!queue.empty() && terminal < 0) {
            int p = queue.front();
            queue.pop_front();
            for (int b : view.adj[p]) {
                if (item_seen[b] == round) continue;
                item_seen[b] = round;
                parent_person[b] = p;
                if (m.usage[b] < view.copies[b]) {
                    terminal = b;
                    break;
                }
                for (int p2 : matched[b]) {
                    if (person_seen[p2] == round) continue;
                    person_seen[p2] = round;
                    parent_item[p2] = b;
                    queue.push_back(p2);
                }
            }
        }
        if (terminal < 0) continue;
        // Flip the path: each tree edge person->item becomes a matching edge.
        int b = terminal;
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
    return m;
}

Matching max_matching_rank1(const Instance& inst) {
    return max_matching(inst, rank1_graph(inst));
}

GeLabels labels_for(const Instance& inst, const BipartiteView& view, const Matching& m) {
    const int n = inst.num_people();
    const int nb = inst.num_items();
    if (static_cast<int>(m.assignment.size()) != n)
        throw Error("matching does not fit the instance");

    auto matched = matched_lists(inst, m);
    // Reverse adjacency, needed when expanding from an even item.
    std::vector<std::vector<int>> item_adj(nb);
    for (int p = 0; p < n; ++p)
        for (int b : view.adj[p]) item_adj[b].push_back(p);

    std::vector<bool> pmark(n, false), bmark(nb, false);
    std::vector<Label> plabel(n, Label::Unreachable), blabel(nb, Label::Unreachable);

    // Expands one Hungarian-tree BFS wave; vertices are marked at most once
    // across all trees. Even person -> unmarked neighbor items become Odd and
    // expand through their matched people; even item (simulating an unmatched
    // clone) -> all unmarked neighbor people become Odd and expand through
    // their matched item.
    std::deque<std::pair<bool, int>> queue; // (is_item, index), even vertices only
    auto drain = [&]() {
        while (!queue.empty()) {
            auto [is_item, v] = queue.front();
            queue.pop_front();
            if (!is_item) {
                for (int b : view.adj[v]) {
                    if (bmark[b]) continue;
                    if (m.usage[b] < view.copies[b])
                        throw Error("matching is not maximum: augmenting path found");
                    bmark[b] = true;
                    blabel[b] = Label::Odd;
                    for (int p2 : matched[b]) {
                        if (pmark[p2]) continue;
                        pmark[p2] = true;
                        plabel[p2] = Label::Even;
                        queue.emplace_back(false, p2);
                    }
                }
            } else {
                for (int p : item_adj[v]) {
                    if (pmark[p]) continue;
                    if (m.assignment[p] < 0)
                        throw Error("matching is not maximum: augmenting path found");
                    pmark[p] = true;
                    plabel[p] = Label::Odd;
                    int b2 = m.assignment[p];
                    if (!bmark[b2]) {
                        bmark[b2] = true;
                        blabel[b2] = Label::Even;
                        queue.emplace_back(true, b2);
                    }
                }
            }
        }
    };

    // Trees rooted at unmatched people first: every augmenting path has an
    // unmatched-person end, so a non-maximum matching is caught here.
    for (int p = 0; p < n; ++p) {
        if (m.assignment[p] >= 0 || pmark[p]) continue;
        pmark[p] = true;
        plabel[p] = Label::Even;
        queue.emplace_back(false, p);
        drain();
    }
    for (int b = 0; b < nb; ++b) {
        if (m.usage[b] >= view.copies[b] || bmark[b]) continue;
        bmark[b] = true;
        blabel[b] = Label::Even;
        queue.emplace_back(true, b);
        drain();
    }
    return {std::move(plabel), std::move(blabel)};
}

GeLabels gallai_edmonds(const Instance& inst, const Matching& m0) {
    return labels_for(inst, rank1_graph(inst), m0);
}

FsSets fs_sets(const Instance& inst, const GeLabels& labels) {
    if (!inst.last_resort_enabled())
        throw Error("fs_sets requires last resorts enabled");
    FsSets fs;
    fs.f.resize(inst.num_people());
    fs.s.resize(inst.num_people());
    for (int p = 0; p < inst.num_people(); ++p) {
        fs.f[p] = inst.prefs()[p][0];
        for (const auto& group : inst.prefs()[p]) {
            std::vector<int> even;
            for (int b : group)
                if (labels.item[b] == Label::Even) even.push_back(b);
            if (!even.empty()) {
                fs.s[p] = std::move(even);
                break;
            }
        }
        // Only possible when the list is just the matched last resort.
        if (fs.s[p].empty()) fs.s[p] = fs.f[p];
    }
    return fs;
}

BipartiteView reduced_graph(const Instance& inst, const FsSets& fs, const GeLabels& labels) {
    BipartiteView view;
    view.adj.resize(inst.num_people());
    view.copies.resize(inst.num_items());
    for (int b = 0; b < inst.num_items(); ++b) view.copies[b] = inst.item(b).copies;
    for (int p = 0; p < inst.num_people(); ++p) {
        auto& adj = view.adj[p];
        bool odd_person = labels.person[p] == Label::Odd;
        for (int b : fs.f[p]) {
            if (odd_person && labels.item[b] != Label::Even) continue; // OO / OU edge
            adj.push_back(b);
        }
        if (labels.person[p] == Label::Even)
            for (int b : fs.s[p])
                if (std::find(adj.begin(), adj.end(), b) == adj.end()) adj.push_back(b);
    }
    return view;
}

} // namespace popmatch
