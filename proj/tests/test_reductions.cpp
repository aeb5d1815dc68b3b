#include <doctest.h>

#include "popmatch/augment.hpp"
#include "popmatch/oracle.hpp"
#include "popmatch/popular.hpp"
#include "popmatch/reductions.hpp"
#include "suite.hpp"

using namespace popmatch;
using namespace popmatch::reductions;

namespace {

SatInstance one_clause() { return parse_sat("vars 3\nc 1 2 3\n"); }

SatInstance fix_unsat() {
    return parse_sat("vars 4\nc 1 2 3\nc 1 2 4\nc 1 3 4\nc 2 3 4\n");
}

} // namespace

TEST_CASE("sat parsing, normalization and round trip") {
    SatInstance sat = parse_sat("vars 4\nc 3 1 2\n# comment\nc 2 4 1\n");
    CHECK(sat.n_vars == 4);
    REQUIRE(sat.clauses.size() == 2);
    CHECK(sat.clauses[0] == std::array<int, 3>{1, 2, 3});
    CHECK(sat.clauses[1] == std::array<int, 3>{1, 2, 4});
    CHECK(parse_sat(serialize_sat(sat)) == sat);

    CHECK_THROWS_AS(parse_sat("c 1 2 3\n"), Error);
    CHECK_THROWS_AS(parse_sat("vars 3\nc 1 1 2\n"), Error);
    CHECK_THROWS_AS(parse_sat("vars 3\nc 1 2 4\n"), Error);
    CHECK_THROWS_AS(parse_sat("vars 0\n"), Error);
}

TEST_CASE("solve_1in3") {
    auto single = solve_1in3(one_clause());
    REQUIRE(single.has_value());
    CHECK((*single)[1] + (*single)[2] + (*single)[3] == 1);

    CHECK_FALSE(solve_1in3(fix_unsat()).has_value());

    auto empty = solve_1in3(parse_sat("vars 2\n"));
    REQUIRE(empty.has_value());
    CHECK_FALSE((*empty)[1]);
    CHECK_FALSE((*empty)[2]);

    SatInstance big;
    big.n_vars = 30;
    CHECK_THROWS_AS(solve_1in3(big), Error);
}

TEST_CASE("popular instance gadget structure") {
    Instance g1 = gen_popular_instance(one_clause());
    CHECK(g1.num_people() == 9);
    CHECK(g1.num_items() == 3 + 4);
    CHECK(g1.item(g1.item_index("u1")).cost == 3);
    CHECK(g1.item(g1.item_index("p1_1")).cost == 1);
    CHECK(g1.item(g1.item_index("q1")).cost == 0);

    SatInstance shared = parse_sat("vars 5\nc 1 2 3\nc 1 4 5\n");
    Instance g2 = gen_popular_instance(shared);
    int u1 = g2.item_index("u1");
    // u1 appears in both clause gadgets' lists
    CHECK(g2.rank_of(g2.person_index("a1_1"), u1) == 1);
    CHECK(g2.rank_of(g2.person_index("a2_1"), u1) == 1);
}

TEST_CASE("augmentation gadget structure and absence of popular matchings") {
    Instance g = gen_augmentation(one_clause());
    CHECK(g.num_people() == 6 + 3);
    CHECK(g.num_items() == 3 + 3);
    CHECK(g.item(g.item_index("p1")).cost == 2);
    CHECK(g.item(g.item_index("u1")).cost == 1);
    CHECK_FALSE(min_cost_popular(g.with_last_resorts()).has_value());

    auto plan = exact_augmentation(g, false);
    REQUIRE(plan.has_value());
    CHECK(plan->total_cost == 1);
}

TEST_CASE("inapprox gadget structure") {
    Instance h = gen_inapprox(one_clause(), 2, 4);
    CHECK(h.num_people() == 3 + 3 * 2 + 3);
    CHECK(h.item(h.item_index("r1_2")).cost == 4);
    CHECK(h.item(h.item_index("u2")).cost == 1);
    auto plan = exact_augmentation(h, false);
    REQUIRE(plan.has_value());
    CHECK(plan->total_cost == 1); // m = 1 and the clause is satisfiable
}

TEST_CASE("perfect gadget structure") {
    Instance g = gen_perfect_aug(one_clause());
    CHECK(g.num_people() == 6 + 3);
    CHECK(g.item(g.item_index("p1")).cost == 1); // defaults to the clause count
    for (int p = 0; p < g.num_people(); ++p) CHECK(g.prefs()[p].size() <= 2);
    // no perfect popular matching without extra copies: the best popular
    // matching still parks people on last resorts
    Instance enabled = g.with_last_resorts();
    auto best = min_cost_max_card_popular(enabled);
    REQUIRE(best.has_value());
    bool someone_unmatched = false;
    for (int p = 0; p < enabled.num_people(); ++p)
        if (best->matching.assignment[p] == enabled.last_resort(p)) someone_unmatched = true;
    CHECK(someone_unmatched);

    auto plan = exact_augmentation(g, true);
    REQUIRE(plan.has_value());
    CHECK(plan->total_cost == 4);
}

TEST_CASE("every gadget admits a master list") {
    SatInstance shared = parse_sat("vars 4\nc 1 2 3\nc 2 3 4\n");
    CHECK(master_list(gen_popular_instance(shared)).has_value());
    CHECK(master_list(gen_augmentation(shared)).has_value());
    CHECK(master_list(gen_inapprox(shared, 3, 8)).has_value());
    CHECK(master_list(gen_perfect_aug(shared)).has_value());
    // conflicting lists have none
    Instance conflict = Instance::parse(
        "item b1 copies=1 cost=0\nitem b2 copies=1 cost=0\n"
        "person a1 : b1 > b2\nperson a2 : b2 > b1\n");
    CHECK_FALSE(master_list(conflict).has_value());
}

TEST_CASE("constructive plans from satisfying assignments") {
    SatInstance sat = one_clause();
    std::vector<bool> x1_true{false, true, false, false};

    AugmentationPlan aug = assignment_to_plan(sat, x1_true, GadgetKind::Augment);
    CHECK(aug.extra == std::map<std::string, int>{{"u1", 1}});
    CHECK(aug.total_cost == 1);
    CHECK(verify_plan(gen_augmentation(sat), aug, false));

    AugmentationPlan perf = assignment_to_plan(sat, x1_true, GadgetKind::Perfect);
    CHECK(perf.extra == std::map<std::string, int>{{"u2", 2}, {"u3", 2}});
    CHECK(perf.total_cost == 4);
    CHECK(verify_plan(gen_perfect_aug(sat), perf, true));

    CopyVector vec = assignment_to_copy_vector(sat, x1_true);
    CHECK(vec.cost == 14);
    CHECK(vec.copies.count("u1") == 0);
    CHECK(vec.copies.at("u2") == 2);
    CHECK(vec.copies.at("u3") == 1);
    CHECK(vec.copies.at("p1_1") == 1);
    CHECK(vec.copies.at("p1_2") == 2);

    std::vector<bool> all_true{false, true, true, true};
    CHECK_THROWS_AS(assignment_to_plan(sat, all_true, GadgetKind::Augment), Error);
    CHECK_THROWS_AS(assignment_to_plan(sat, x1_true, GadgetKind::Instance), Error);
}

TEST_CASE("instance gadget: oracle optimum is 14 for one satisfiable clause") {
    Instance universe = gen_popular_instance(one_clause());
    auto best = oracle::brute_min_cost_popular_instance(universe);
    CHECK(best.cost == 14);
}
