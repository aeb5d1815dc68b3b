#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "popmatch/augment.hpp"
#include "popmatch/instance.hpp"
#include "popmatch/popular.hpp"
#include "popmatch/reductions.hpp"

namespace py = pybind11;
using namespace popmatch;

namespace {

py::dict matching_dict(const Instance& inst, const Matching& m) {
    py::dict out;
    for (int p = 0; p < inst.num_people(); ++p) {
        int b = m.assignment[p];
        bool none = inst.last_resort_enabled() && b == inst.last_resort(p);
        out[py::str(inst.people()[p])] = none ? py::object(py::none())
                                              : py::object(py::str(inst.item(b).id));
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "min-cost popular matchings in capacitated one-sided preference instances";

    py::register_exception<Error>(mod, "PopmatchError");

    mod.def("solve", [](const std::string& text, bool max_card) -> py::object {
        Instance inst = Instance::parse(text).with_last_resorts();
        auto sol = max_card ? min_cost_max_card_popular(inst) : min_cost_popular(inst);
        if (!sol) return py::none();
        py::dict out;
        out["matching"] = matching_dict(inst, sol->matching);
        out["cost"] = sol->cost;
        return out;
    }, py::arg("instance_text"), py::arg("max_card") = false,
       "Min-cost popular matching of a serialized instance, or None.");

    mod.def("is_popular", [](const std::string& text, const std::string& matching_text) {
        Instance inst = Instance::parse(text).with_last_resorts();
        return is_popular(inst, parse_matching(inst, matching_text));
    }, py::arg("instance_text"), py::arg("matching_text"));

    mod.def("augment", [](const std::string& text, const std::string& mode,
                          bool perfect) -> py::object {
        Instance inst = Instance::parse(text);
        std::optional<AugmentationPlan> plan;
        if (mode == "length2") {
            if (perfect) throw Error("perfect requires mode='exact'");
            plan = augment_length2(inst);
        } else if (mode == "exact") {
            plan = exact_augmentation(inst, perfect);
        } else {
            throw Error("mode must be 'length2' or 'exact'");
        }
        if (!plan) return py::none();
        py::dict out;
        out["extra"] = plan->extra;
        out["total_cost"] = plan->total_cost;
        return out;
    }, py::arg("instance_text"), py::arg("mode") = "exact", py::arg("perfect") = false,
       "Min-cost augmentation plan, or None when infeasible.");

    mod.def("generate_gadget", [](const std::string& sat_text, const std::string& kind,
                                  int triplets, std::int64_t internal_cost) {
        auto sat = reductions::parse_sat(sat_text);
        if (kind == "instance") return reductions::gen_popular_instance(sat).serialize();
        if (kind == "augment") return reductions::gen_augmentation(sat).serialize();
        if (kind == "inapprox")
            return reductions::gen_inapprox(sat, triplets,
                                            internal_cost < 0 ? 2 : internal_cost)
                .serialize();
        if (kind == "perfect")
            return reductions::gen_perfect_aug(sat, internal_cost).serialize();
        throw Error("unknown gadget kind: " + kind);
    }, py::arg("sat_text"), py::arg("kind"), py::arg("triplets") = 1,
       py::arg("internal_cost") = -1,
       "Serialized SAT gadget instance of the given kind.");

    mod.def("solve_1in3", [](const std::string& sat_text) -> py::object {
        auto sat = reductions::parse_sat(sat_text);
        auto assignment = reductions::solve_1in3(sat);
        if (!assignment) return py::none();
        py::dict out;
        for (int j = 1; j <= sat.n_vars; ++j)
            out[py::int_(j)] = static_cast<bool>((*assignment)[j]);
        return out;
    }, py::arg("sat_text"), "1-in-3 satisfying assignment as {var: bool}, or None.");
}
