#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "popmatch/instance.hpp"

namespace suite {

inline popmatch::Instance fix_intro() {
    return popmatch::Instance::parse(
        "item b1 copies=1 cost=3\n"
        "item b2 copies=1 cost=2\n"
        "item b3 copies=1 cost=1\n"
        "person a1 : b1 > b2 > b3\n"
        "person a2 : b1 > b2 > b3\n"
        "person a3 : b1 > b2 > b3\n");
}

struct RandomOptions {
    int max_people = 7;
    int max_items = 5;
    int max_total_copies = 8;
    int max_cost = 6;
    bool ties = true;
};

/// Random instance without last resorts; lists are non-empty subsets of the
/// items, partitioned into rank groups.
inline popmatch::Instance random_instance(std::mt19937& rng, const RandomOptions& opt = {}) {
    auto pick = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    popmatch::Instance inst;
    int n = pick(1, opt.max_people);
    int k = pick(1, opt.max_items);
    int copies_left = std::max(opt.max_total_copies - k, 0);
    for (int b = 0; b < k; ++b) {
        int extra = pick(0, std::min(copies_left, 2));
        copies_left -= extra;
        inst.add_item("b" + std::to_string(b + 1), 1 + extra, pick(0, opt.max_cost));
    }
    for (int p = 0; p < n; ++p) {
        std::vector<std::string> pool;
        for (int b = 0; b < k; ++b)
            if (pick(0, 99) < 70) pool.push_back("b" + std::to_string(b + 1));
        if (pool.empty()) pool.push_back("b" + std::to_string(pick(1, k)));
        std::shuffle(pool.begin(), pool.end(), rng);
        std::vector<std::vector<std::string>> groups;
        for (const auto& id : pool) {
            if (groups.empty() || !opt.ties || pick(0, 99) < 65)
                groups.push_back({id});
            else
                groups.back().push_back(id);
        }
        inst.add_person("p" + std::to_string(p + 1), groups);
    }
    return inst;
}

/// Strict lists with at most 2 real items, all copies 1 (Algorithm 1's home turf).
inline popmatch::Instance random_length2_instance(std::mt19937& rng, int max_people = 8,
                                                  int max_items = 6, int max_cost = 6) {
    auto pick = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    popmatch::Instance inst;
    int n = pick(1, max_people);
    int k = pick(1, max_items);
    for (int b = 0; b < k; ++b)
        inst.add_item("b" + std::to_string(b + 1), 1, pick(0, max_cost));
    for (int p = 0; p < n; ++p) {
        int first = pick(1, k);
        std::vector<std::vector<std::string>> groups{{"b" + std::to_string(first)}};
        if (k > 1 && pick(0, 99) < 75) {
            int second = pick(1, k - 1);
            if (second >= first) ++second;
            groups.push_back({"b" + std::to_string(second)});
        }
        inst.add_person("p" + std::to_string(p + 1), groups);
    }
    return inst;
}

/// A uniformly random capacity-feasible assignment (everyone gets a listed
/// item or her last resort). Requires last resorts enabled.
inline popmatch::Matching random_matching(const popmatch::Instance& inst, std::mt19937& rng) {
    std::vector<int> usage(inst.num_items(), 0);
    std::vector<int> assignment(inst.num_people());
    for (int p = 0; p < inst.num_people(); ++p) {
        std::vector<int> options;
        for (const auto& group : inst.prefs()[p])
            for (int b : group)
                if (usage[b] < inst.item(b).copies) options.push_back(b);
        int b = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
        assignment[p] = b;
        ++usage[b];
    }
    return popmatch::Matching::from_assignment(inst, assignment);
}

} // namespace suite
