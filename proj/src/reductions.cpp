#include "popmatch/reductions.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace popmatch::reductions {

namespace {

std::string u_name(int j) { return "u" + std::to_string(j); }
std::string p_name(int i) { return "p" + std::to_string(i); }
std::string p_name(int i, int t) {
    return "p" + std::to_string(i) + "_" + std::to_string(t);
}
std::string q_name(int i) { return "q" + std::to_string(i); }
std::string r_name(int i, int t) {
    return "r" + std::to_string(i) + "_" + std::to_string(t);
}
std::string a_name(int i, int k) {
    return "a" + std::to_string(i) + "_" + std::to_string(k);
}
std::string x_name(int j) { return "x" + std::to_string(j); }

std::vector<std::vector<std::string>> strict(std::initializer_list<std::string> items) {
    std::vector<std::vector<std::string>> groups;
    for (const auto& it : items) groups.push_back({it});
    return groups;
}

void check_satisfying(const SatInstance& sat, const std::vector<bool>& assignment) {
    if (static_cast<int>(assignment.size()) != sat.n_vars + 1)
        throw Error("assignment size must be n_vars + 1");
    for (const auto& cl : sat.clauses) {
        int trues = assignment[cl[0]] + assignment[cl[1]] + assignment[cl[2]];
        if (trues != 1) throw Error("assignment is not 1-in-3 satisfying");
    }
}

std::vector<int> occurrences(const SatInstance& sat) {
    std::vector<int> c(sat.n_vars + 1, 0);
    for (const auto& cl : sat.clauses)
        for (int j : cl) ++c[j];
    return c;
}

} // namespace

SatInstance parse_sat(const std::string& text) {
    SatInstance sat;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_vars = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        auto fail = [&](const std::string& msg) {
            throw Error("line " + std::to_string(lineno) + ": " + msg);
        };
        if (head == "vars") {
            if (have_vars) fail("duplicate vars line");
            if (!(ls >> sat.n_vars) || sat.n_vars < 1) fail("vars expects a positive count");
            have_vars = true;
        } else if (head == "c") {
            if (!have_vars) fail("clause before vars line");
            std::array<int, 3> cl;
            if (!(ls >> cl[0] >> cl[1] >> cl[2])) fail("clause expects 3 variable indices");
            std::sort(cl.begin(), cl.end());
            if (cl[0] < 1 || cl[2] > sat.n_vars) fail("variable index out of range");
            if (cl[0] == cl[1] || cl[1] == cl[2]) fail("clause variables must be distinct");
            sat.clauses.push_back(cl);
        } else {
            fail("unknown directive '" + head + "'");
        }
        std::string rest;
        if (ls >> rest) fail("trailing tokens");
    }
    if (!have_vars) throw Error("missing vars line");
    return sat;
}

std::string serialize_sat(const SatInstance& sat) {
    std::ostringstream out;
    out << "vars " << sat.n_vars << "\n";
    for (const auto& cl : sat.clauses)
        out << "c " << cl[0] << " " << cl[1] << " " << cl[2] << "\n";
    return out.str();
}

std::optional<std::vector<bool>> solve_1in3(const SatInstance& sat, int max_vars) {
    if (sat.n_vars > max_vars) throw Error("solve_1in3: too many variables");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << sat.n_vars); ++mask) {
        bool ok = true;
        for (const auto& cl : sat.clauses) {
            int trues = 0;
            for (int j : cl) trues += (mask >> (j - 1)) & 1;
            if (trues != 1) { ok = false; break; }
        }
        if (ok) {
            std::vector<bool> assignment(sat.n_vars + 1, false);
            for (int j = 1; j <= sat.n_vars; ++j) assignment[j] = (mask >> (j - 1)) & 1;
            return assignment;
        }
    }
    return std::nullopt;
}

Instance gen_popular_instance(const SatInstance& sat) {
    Instance inst;
    for (int j = 1; j <= sat.n_vars; ++j) inst.add_item(u_name(j), 1, 3);
    const int m = static_cast<int>(sat.clauses.size());
    for (int i = 1; i <= m; ++i) {
        for (int t = 1; t <= 3; ++t) inst.add_item(p_name(i, t), 1, 1);
        inst.add_item(q_name(i), 1, 0);
    }
    for (int i = 1; i <= m; ++i) {
        const auto& [j1, j2, j3] = sat.clauses[i - 1];
        inst.add_person(a_name(i, 1), strict({u_name(j1), u_name(j2)}));
        inst.add_person(a_name(i, 2), strict({u_name(j2), u_name(j3)}));
        inst.add_person(a_name(i, 3), strict({u_name(j1), u_name(j3)}));
        inst.add_person(a_name(i, 4), strict({u_name(j1), p_name(i, 1)}));
        inst.add_person(a_name(i, 5), strict({u_name(j2), p_name(i, 2)}));
        inst.add_person(a_name(i, 6), strict({u_name(j3), p_name(i, 3)}));
        inst.add_person(a_name(i, 7), strict({p_name(i, 1), q_name(i)}));
        inst.add_person(a_name(i, 8), strict({p_name(i, 2), q_name(i)}));
        inst.add_person(a_name(i, 9), strict({p_name(i, 3), q_name(i)}));
    }
    return inst;
}

Instance gen_inapprox(const SatInstance& sat, int triplets, std::int64_t internal_cost) {
    if (triplets < 1) throw Error("gen_inapprox: triplets must be positive");
    if (internal_cost < 1) throw Error("gen_inapprox: internal_cost must be positive");
    Instance inst;
    const int m = static_cast<int>(sat.clauses.size());
    // Declaration order doubles as a master list: p and r items precede the
    // public items, which precede the q items.
    for (int i = 1; i <= m; ++i) {
        inst.add_item(p_name(i), 1, internal_cost);
        for (int t = 1; t <= triplets; ++t) inst.add_item(r_name(i, t), 1, internal_cost);
    }
    for (int j = 1; j <= sat.n_vars; ++j) inst.add_item(u_name(j), 1, 1);
    for (int i = 1; i <= m; ++i) inst.add_item(q_name(i), 1, internal_cost);
    for (int i = 1; i <= m; ++i) {
        const auto& [j1, j2, j3] = sat.clauses[i - 1];
        inst.add_person(a_name(i, 1), strict({p_name(i), u_name(j1), q_name(i)}));
        inst.add_person(a_name(i, 2), strict({p_name(i), u_name(j2), q_name(i)}));
        inst.add_person(a_name(i, 3), strict({p_name(i), u_name(j3), q_name(i)}));
        for (int t = 1; t <= triplets; ++t) {
            int base = 3 * t;
            inst.add_person(a_name(i, base + 1), strict({r_name(i, t), u_name(j1)}));
            inst.add_person(a_name(i, base + 2), strict({r_name(i, t), u_name(j2)}));
            inst.add_person(a_name(i, base + 3), strict({r_name(i, t), u_name(j3)}));
        }
    }
    for (int j = 1; j <= sat.n_vars; ++j)
        inst.add_person(x_name(j), strict({u_name(j)}));
    return inst;
}

Instance gen_augmentation(const SatInstance& sat) { return gen_inapprox(sat, 1, 2); }

Instance gen_perfect_aug(const SatInstance& sat, std::int64_t internal_cost) {
    const int m = static_cast<int>(sat.clauses.size());
    if (internal_cost < 0) internal_cost = std::max(m, 1);
    Instance inst;
    for (int i = 1; i <= m; ++i) inst.add_item(p_name(i), 1, internal_cost);
    for (int j = 1; j <= sat.n_vars; ++j) inst.add_item(u_name(j), 1, 1);
    for (int i = 1; i <= m; ++i) inst.add_item(q_name(i), 1, internal_cost);
    for (int i = 1; i <= m; ++i) {
        const auto& [j1, j2, j3] = sat.clauses[i - 1];
        inst.add_person(a_name(i, 1), strict({p_name(i), u_name(j1)}));
        inst.add_person(a_name(i, 2), strict({p_name(i), u_name(j2)}));
        inst.add_person(a_name(i, 3), strict({p_name(i), u_name(j3)}));
        inst.add_person(a_name(i, 4), strict({u_name(j1), q_name(i)}));
        inst.add_person(a_name(i, 5), strict({u_name(j2), q_name(i)}));
        inst.add_person(a_name(i, 6), strict({u_name(j3), q_name(i)}));
    }
    for (int j = 1; j <= sat.n_vars; ++j)
        inst.add_person(x_name(j), strict({u_name(j)}));
    return inst;
}

AugmentationPlan assignment_to_plan(const SatInstance& sat, const std::vector<bool>& assignment,
                                    GadgetKind kind) {
    check_satisfying(sat, assignment);
    std::vector<int> c = occurrences(sat);
    AugmentationPlan plan;
    switch (kind) {
    case GadgetKind::Augment:
    case GadgetKind::Inapprox:
        for (int j = 1; j <= sat.n_vars; ++j)
            if (assignment[j] && c[j] > 0) {
                plan.extra[u_name(j)] = c[j];
                plan.total_cost = checked_add(plan.total_cost, c[j]); // public cost 1
            }
        break;
    case GadgetKind::Perfect:
        for (int j = 1; j <= sat.n_vars; ++j)
            if (!assignment[j] && c[j] > 0) {
                plan.extra[u_name(j)] = 2 * c[j];
                plan.total_cost = checked_add(plan.total_cost, 2 * c[j]);
            }
        break;
    case GadgetKind::Instance:
        throw Error("the popular instance gadget takes a copy vector, not a plan");
    }
    return plan;
}

CopyVector assignment_to_copy_vector(const SatInstance& sat,
                                     const std::vector<bool>& assignment) {
    check_satisfying(sat, assignment);
    CopyVector vec;
    const int m = static_cast<int>(sat.clauses.size());
    for (int i = 1; i <= m; ++i) {
        const auto& cl = sat.clauses[i - 1];
        int true_pos = -1;
        std::vector<int> false_vars;
        for (int t = 0; t < 3; ++t) {
            if (assignment[cl[t]]) true_pos = t + 1;
            else false_vars.push_back(cl[t]);
        }
        // a1..a3 share the two false public items: two copies of the lower
        // indexed one, one of the higher.
        vec.copies[u_name(false_vars[0])] += 2;
        vec.copies[u_name(false_vars[1])] += 1;
        for (int t = 1; t <= 3; ++t) vec.copies[p_name(i, t)] = (t == true_pos) ? 1 : 2;
        vec.copies[q_name(i)] = 1;
        vec.cost += 3 * 3 + 5 + 0; // u copies cost 9, p copies cost 5, q free
    }
    return vec;
}

std::optional<std::vector<std::string>> master_list(const Instance& inst) {
    const int nb = inst.num_items();
    std::vector<std::vector<int>> succ(nb);
    std::vector<int> indeg(nb, 0);
    for (int p = 0; p < inst.num_people(); ++p) {
        const auto& groups = inst.prefs()[p];
        for (const auto& g : groups)
            if (g.size() != 1) return std::nullopt; // ties admit no strict master list
        for (std::size_t g = 1; g < groups.size(); ++g) {
            succ[groups[g - 1][0]].push_back(groups[g][0]);
            ++indeg[groups[g][0]];
        }
    }
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int b = 0; b < nb; ++b)
        if (indeg[b] == 0) ready.push(b);
    std::vector<std::string> order;
    while (!ready.empty()) {
        int b = ready.top();
        ready.pop();
        order.push_back(inst.item(b).id);
        for (int b2 : succ[b])
            if (--indeg[b2] == 0) ready.push(b2);
    }
    if (static_cast<int>(order.size()) != nb) return std::nullopt; // preference cycle
    return order;
}

} // namespace popmatch::reductions
