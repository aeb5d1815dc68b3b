#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "popmatch/augment.hpp"
#include "popmatch/decomposition.hpp"
#include "popmatch/instance.hpp"
#include "popmatch/oracle.hpp"
#include "popmatch/popular.hpp"
#include "popmatch/reductions.hpp"

namespace {

constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw popmatch::Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void print_solution(const popmatch::Instance& inst, const popmatch::Solution& sol) {
    std::cout << popmatch::serialize_matching(inst, sol.matching);
    std::cout << "cost " << sol.cost << "\n";
}

void print_plan(const popmatch::AugmentationPlan& plan) {
    for (const auto& [id, count] : plan.extra) std::cout << id << " +" << count << "\n";
    std::cout << "total " << plan.total_cost << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"min-cost popular matching toolkit"};
    app.require_subcommand(1);

    std::string instance_path, matching_path, sat_path, mode = "length2", gadget;
    bool max_card = false, perfect = false;
    int triplets = 1;
    std::int64_t internal_cost = -1;
    std::uint64_t max_states = 1'000'000;

    auto* solve = app.add_subcommand("solve", "min-cost popular matching of an instance");
    solve->add_option("instance", instance_path, "instance file, - for stdin")->required();
    solve->add_flag("--max-card", max_card, "min-cost among maximum-cardinality popular matchings");

    auto* decompose = app.add_subcommand("decompose", "rank-1 labels and f/s sets");
    decompose->add_option("instance", instance_path)->required();

    auto* augment = app.add_subcommand("augment", "min-cost augmentation plan");
    augment->add_option("instance", instance_path)->required();
    augment->add_option("--mode", mode, "length2 or exact")
        ->check(CLI::IsMember({"length2", "exact"}));
    augment->add_flag("--perfect", perfect, "require a perfect popular matching (exact mode)");
    augment->add_option("--max-states", max_states, "search guard for exact mode");

    auto* oracle = app.add_subcommand("oracle", "brute-force reference answers");
    std::string subproblem;
    oracle->add_option("subproblem", subproblem, "solve | solve-max-card | instance | decompose | count")
        ->required()
        ->check(CLI::IsMember({"solve", "solve-max-card", "instance", "decompose", "count"}));
    oracle->add_option("instance", instance_path)->required();

    auto* reduce = app.add_subcommand("reduce", "generate a SAT gadget instance");
    reduce->add_option("--gadget", gadget, "instance | augment | inapprox | perfect")
        ->required()
        ->check(CLI::IsMember({"instance", "augment", "inapprox", "perfect"}));
    reduce->add_option("satfile", sat_path, "SAT file, - for stdin")->required();
    reduce->add_option("--triplets", triplets, "triplet count for the inapprox gadget");
    reduce->add_option("--internal-cost", internal_cost, "internal item cost");

    auto* check = app.add_subcommand("check", "verify popularity of a matching");
    check->add_option("instance", instance_path)->required();
    check->add_option("matching", matching_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (solve->parsed()) {
        auto inst = popmatch::Instance::parse(slurp(instance_path)).with_last_resorts();
        auto sol = max_card ? popmatch::min_cost_max_card_popular(inst)
                            : popmatch::min_cost_popular(inst);
        if (!sol) {
            std::cout << "NO_POPULAR_MATCHING\n";
            return kExitInfeasible;
        }
        print_solution(inst, *sol);
        return 0;
    }

    if (decompose->parsed()) {
        auto inst = popmatch::Instance::parse(slurp(instance_path)).with_last_resorts();
        auto m0 = popmatch::max_matching_rank1(inst);
        auto labels = popmatch::gallai_edmonds(inst, m0);
        auto fs = popmatch::fs_sets(inst, labels);
        for (int p = 0; p < inst.num_people(); ++p) {
            std::cout << "person " << inst.people()[p] << " "
                      << popmatch::label_char(labels.person[p]) << " f:";
            for (int b : fs.f[p]) std::cout << " " << inst.item(b).id;
            std::cout << " s:";
            for (int b : fs.s[p]) std::cout << " " << inst.item(b).id;
            std::cout << "\n";
        }
        for (int b = 0; b < inst.num_items(); ++b) {
            if (inst.item(b).id.rfind(popmatch::kLastResortPrefix, 0) == 0) continue;
            std::cout << "item " << inst.item(b).id << " "
                      << popmatch::label_char(labels.item[b]) << "\n";
        }
        return 0;
    }

    if (augment->parsed()) {
        auto inst = popmatch::Instance::parse(slurp(instance_path));
        if (mode == "length2") {
            if (perfect) throw popmatch::Error("--perfect requires --mode exact");
            print_plan(popmatch::augment_length2(inst));
            return 0;
        }
        auto plan = popmatch::exact_augmentation(inst, perfect, {max_states});
        if (!plan) {
            std::cout << "NO_FEASIBLE_AUGMENTATION\n";
            return kExitInfeasible;
        }
        print_plan(*plan);
        return 0;
    }

    if (oracle->parsed()) {
        auto raw = popmatch::Instance::parse(slurp(instance_path));
        if (subproblem == "instance") {
            auto plan = popmatch::oracle::brute_min_cost_popular_instance(raw);
            for (const auto& [id, count] : plan.copies)
                std::cout << id << " " << count << "\n";
            std::cout << "cost " << plan.cost << "\n";
            return 0;
        }
        if (subproblem == "decompose") {
            auto dec = popmatch::oracle::clone_decomposition(raw);
            for (int p = 0; p < raw.num_people(); ++p)
                std::cout << "person " << raw.people()[p] << " "
                          << popmatch::label_char(dec.labels.person[p]) << "\n";
            for (int b = 0; b < raw.num_items(); ++b)
                std::cout << "item " << raw.item(b).id << " "
                          << popmatch::label_char(dec.labels.item[b]) << "\n";
            std::cout << "max_matching " << dec.max_matching_size << "\n";
            return 0;
        }
        auto inst = raw.with_last_resorts();
        if (subproblem == "count") {
            std::uint64_t count = 0;
            popmatch::oracle::enumerate_matchings(inst, [&](const popmatch::Matching&) {
                ++count;
                return true;
            });
            std::cout << count << "\n";
            return 0;
        }
        auto sol = subproblem == "solve-max-card"
                       ? popmatch::oracle::brute_min_cost_max_card_popular(inst)
                       : popmatch::oracle::brute_min_cost_popular(inst);
        if (!sol) {
            std::cout << "NO_POPULAR_MATCHING\n";
            return kExitInfeasible;
        }
        print_solution(inst, *sol);
        return 0;
    }

    if (reduce->parsed()) {
        auto sat = popmatch::reductions::parse_sat(slurp(sat_path));
        popmatch::Instance inst;
        if (gadget == "instance") inst = popmatch::reductions::gen_popular_instance(sat);
        else if (gadget == "augment") inst = popmatch::reductions::gen_augmentation(sat);
        else if (gadget == "inapprox")
            inst = popmatch::reductions::gen_inapprox(
                sat, triplets, internal_cost < 0 ? 2 : internal_cost);
        else inst = popmatch::reductions::gen_perfect_aug(sat, internal_cost);
        std::cout << inst.serialize();
        return 0;
    }

    // check
    auto inst = popmatch::Instance::parse(slurp(instance_path)).with_last_resorts();
    auto m = popmatch::parse_matching(inst, slurp(matching_path));
    if (popmatch::is_popular(inst, m)) {
        std::cout << "POPULAR\n";
        return 0;
    }
    std::cout << "NOT_POPULAR\n";
    // A beating matching, when the instance is small enough to search.
    try {
        popmatch::Matching witness;
        if (popmatch::oracle::best_response_margin(inst, m, {}, &witness) > 0)
            std::cout << popmatch::serialize_matching(inst, witness);
    } catch (const popmatch::Error&) {
        std::cout << "witness unavailable (instance too large for exhaustive search)\n";
    }
    return kExitInfeasible;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const popmatch::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
