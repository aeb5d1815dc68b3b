#include <doctest.h>

#include "popmatch/oracle.hpp"
#include "suite.hpp"

using namespace popmatch;

namespace {

std::uint64_t count_matchings(const Instance& inst) {
    std::uint64_t count = 0;
    oracle::enumerate_matchings(inst, [&](const Matching&) {
        ++count;
        return true;
    });
    return count;
}

// independent reference count: people choose in order, shared capacities
std::uint64_t recursive_count(const Instance& inst, std::vector<int>& usage, int p) {
    if (p == inst.num_people()) return 1;
    std::uint64_t total = 0;
    for (const auto& group : inst.prefs()[p])
        for (int b : group)
            if (usage[b] < inst.item(b).copies) {
                ++usage[b];
                total += recursive_count(inst, usage, p + 1);
                --usage[b];
            }
    return total;
}

} // namespace

TEST_CASE("enumeration counts") {
    Instance single;
    single.add_item("b1", 1, 1);
    single.add_person("a1", {{"b1"}});
    CHECK(count_matchings(single) == 2); // b1 or the last resort

    Instance empty;
    CHECK(count_matchings(empty) == 1);

    Instance intro = suite::fix_intro().with_last_resorts();
    std::vector<int> usage(intro.num_items(), 0);
    CHECK(count_matchings(intro) == recursive_count(intro, usage, 0));
}

TEST_CASE("enumeration stops when the callback declines") {
    Instance intro = suite::fix_intro();
    std::uint64_t seen = 0;
    oracle::enumerate_matchings(intro, [&](const Matching&) { return ++seen < 5; });
    CHECK(seen == 5);
}

TEST_CASE("guards reject oversized inputs") {
    Instance big;
    big.add_item("b1", 1, 0);
    for (int p = 0; p < 13; ++p)
        big.add_person("a" + std::to_string(p), {{"b1"}});
    CHECK_THROWS_AS(count_matchings(big), Error);
    oracle::Guard tight;
    tight.max_people = 2;
    CHECK_THROWS_AS(
        oracle::brute_min_cost_popular(suite::fix_intro().with_last_resorts(), tight), Error);
}

TEST_CASE("popularity by definition on the intro fixture") {
    Instance inst = suite::fix_intro().with_last_resorts();
    Matching m1 = Matching::from_assignment(
        inst, {inst.item_index("b1"), inst.item_index("b2"), inst.item_index("b3")});
    CHECK_FALSE(oracle::brute_is_popular(inst, m1));
    Matching witness;
    CHECK(oracle::best_response_margin(inst, m1, {}, &witness) > 0);
    CHECK(compare(inst, witness, m1) > 0);

    Instance fixed = suite::fix_intro().with_extra_copies({{"b2", 1}}).with_last_resorts();
    Matching good = Matching::from_assignment(
        fixed, {fixed.item_index("b1"), fixed.item_index("b2"), fixed.item_index("b2")});
    CHECK(oracle::brute_is_popular(fixed, good));
}

TEST_CASE("single person cases") {
    Instance inst;
    inst.add_item("b1", 1, 5);
    inst.add_person("a1", {{"b1"}});
    Instance enabled = inst.with_last_resorts();
    Matching matched = Matching::from_assignment(enabled, {0});
    CHECK(oracle::brute_is_popular(enabled, matched));
    auto sol = oracle::brute_min_cost_popular(enabled);
    REQUIRE(sol.has_value());
    CHECK(sol->cost == 5);

    auto plan = oracle::brute_min_cost_popular_instance(inst);
    CHECK(plan.cost == 5);
    CHECK(plan.copies == std::map<std::string, int>{{"b1", 1}});
}

TEST_CASE("oracle self-consistency on random instances") {
    std::mt19937 rng(41);
    suite::RandomOptions small;
    small.max_people = 4;
    small.max_items = 3;
    small.max_total_copies = 5;
    for (int i = 0; i < 120; ++i) {
        Instance inst = suite::random_instance(rng, small).with_last_resorts();
        auto best = oracle::brute_min_cost_popular(inst);
        bool any_popular = false;
        std::int64_t cheapest = -1;
        oracle::enumerate_matchings(inst, [&](const Matching& m) {
            if (oracle::brute_is_popular(inst, m)) {
                any_popular = true;
                std::int64_t c = matching_cost(inst, m);
                if (cheapest < 0 || c < cheapest) cheapest = c;
            }
            return true;
        });
        REQUIRE(best.has_value() == any_popular);
        if (best) REQUIRE(best->cost == cheapest);
    }
}
