#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ghzkit/analysis.hpp"
#include "ghzkit/serialize.hpp"

namespace py = pybind11;
using namespace ghzkit;

namespace {

std::optional<std::pair<PhaseFrac, PhaseFrac>>
parse_pair(const std::optional<std::pair<std::string, std::string>>& pair) {
    if (!pair)
        return std::nullopt;
    return std::pair{PhaseFrac::parse(pair->first), PhaseFrac::parse(pair->second)};
}

py::list phase_strings(const std::vector<PhaseFrac>& phases) {
    py::list out;
    for (const PhaseFrac& p : phases)
        out.append(p.str());
    return out;
}

py::dict composite_dict(const Composite& comp) {
    py::dict d;
    d["family"] = std::string(1, comp.family);
    d["r"] = comp.r;
    d["phases"] = phase_strings(comp.phases);
    d["gamma"] = comp.gamma;
    return d;
}

py::dict solve_dict(const SolveResult& result) {
    py::dict d;
    switch (result.status) {
    case SolveStatus::Sat: d["status"] = "sat"; break;
    case SolveStatus::Unsat: d["status"] = "unsat"; break;
    case SolveStatus::TooLarge: d["status"] = "too_large"; break;
    }
    d["witness"] = result.witness ? py::cast(*result.witness) : py::none();
    d["space"] = result.space;
    return d;
}

py::dict lr_dict(const LrCondition& lr) {
    py::dict d;
    d["coefficient"] = lr.coefficient;
    d["eta"] = lr.eta;
    d["modulus"] = lr.modulus;
    d["solvable"] = lr.solvable;
    d["witness_xi"] = lr.witness_xi ? py::cast(*lr.witness_xi) : py::none();
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact verification of multisetting all-versus-nothing arguments: "
              "generation, quantum-side checks, and hidden-variable solvers.";

    const py::object error =
        py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", error.ptr());

    py::class_<ParadoxInstance>(m, "Instance")
        .def_readonly("parties", &ParadoxInstance::parties)
        .def_readonly("settings", &ParadoxInstance::settings)
        .def_readonly("dim_factor", &ParadoxInstance::dim_factor)
        .def_readonly("dim", &ParadoxInstance::dim)
        .def_readonly("order", &ParadoxInstance::order)
        .def_readonly("generator", &ParadoxInstance::generator)
        .def_readonly("t_sequence", &ParadoxInstance::t_sequence)
        .def_property_readonly("pair",
            [](const ParadoxInstance& inst) {
                return py::make_tuple(inst.last_pair.first.str(),
                                      inst.last_pair.second.str());
            })
        .def_property_readonly("party_settings",
            [](const ParadoxInstance& inst) {
                py::list out;
                for (const auto& settings : inst.party_settings)
                    out.append(phase_strings(settings));
                return out;
            })
        .def_property_readonly("composites",
            [](const ParadoxInstance& inst) {
                py::list out;
                for (const Composite& comp : inst.composites)
                    out.append(composite_dict(comp));
                return out;
            })
        .def("to_json", &instance_to_json, py::arg("indent") = 2)
        .def("digest", &instance_digest)
        .def("__repr__", [](const ParadoxInstance& inst) {
            std::ostringstream out;
            out << "<ghzkit.Instance " << inst.generator << " parties="
                << inst.parties << " settings=" << inst.settings
                << " dim=" << inst.dim << ">";
            return out.str();
        });

    py::class_<CongruenceSystem>(m, "System")
        .def_readonly("modulus", &CongruenceSystem::modulus)
        .def_property_readonly("variables",
            [](const CongruenceSystem& sys) {
                py::list out;
                for (const VarKey& v : sys.variables)
                    out.append(v.label());
                return out;
            })
        .def_readonly("rows", &CongruenceSystem::rows)
        .def_property("rhs",
            [](const CongruenceSystem& sys) { return sys.rhs; },
            [](CongruenceSystem& sys, std::vector<long long> values) {
                if (values.size() != sys.rows.size())
                    throw Error("rhs length must match the equation count");
                sys.rhs = std::move(values);
            })
        .def_property_readonly("equation_count", &CongruenceSystem::equation_count)
        .def_property_readonly("var_count", &CongruenceSystem::var_count)
        .def("to_text", &system_to_text)
        .def_static("parse", &parse_system_text, py::arg("text"))
        .def("__repr__", [](const CongruenceSystem& sys) {
            std::ostringstream out;
            out << "<ghzkit.System " << sys.equation_count() << " equations, "
                << sys.var_count() << " variables mod " << sys.modulus << ">";
            return out.str();
        });

    m.def("generate_tripartite",
          [](int settings, int dim_factor,
             const std::optional<std::pair<std::string, std::string>>& pair) {
              return generate_tripartite(settings, dim_factor, parse_pair(pair));
          },
          py::arg("settings"), py::arg("dim_factor") = 1,
          py::arg("pair") = py::none(),
          "Three-party family: settings phases r/settings for the free "
          "parties, a two-phase pair for the third.");

    m.def("generate_npartite",
          [](int parties, int dim_factor,
             const std::optional<std::pair<std::string, std::string>>& pair) {
              return generate_npartite(parties, dim_factor, parse_pair(pair));
          },
          py::arg("parties"), py::arg("dim_factor") = 1,
          py::arg("pair") = py::none(),
          "Odd-party family with parties settings per free party.");

    m.def("instance_from_json", &instance_from_json, py::arg("text"),
          "Parse and fully re-verify a serialized instance.");
    m.def("load_instance", &load_instance_file, py::arg("path"));
    m.def("save_instance", &save_instance_file, py::arg("instance"),
          py::arg("path"));

    m.def("verify_concurrency",
          [](const ParadoxInstance& inst) {
              const ConcurrencyReport rep = verify_concurrency(inst);
              py::dict d;
              d["eigenstate"] = rep.eigenstate;
              d["common_eigenstate"] = rep.common_eigenstate;
              d["all_commute"] = rep.all_commute;
              d["noncommuting_pair"] =
                  rep.noncommuting_pair
                      ? py::make_tuple(rep.noncommuting_pair->first,
                                       rep.noncommuting_pair->second)
                      : static_cast<py::object>(py::none());
              return d;
          },
          py::arg("instance"),
          "Shared eigenstate for every composite plus at least one "
          "noncommuting pair.");

    m.def("extract_system", &extract_system, py::arg("instance"),
          "One congruence per composite over Z_dim.");

    m.def("brute_force_solve",
          [](const CongruenceSystem& sys, std::uint64_t cap) {
              return solve_dict(brute_force_solve(sys, cap));
          },
          py::arg("system"), py::arg("cap") = kDefaultBruteCap);

    m.def("snf_solve",
          [](const CongruenceSystem& sys) { return solve_dict(snf_solve(sys)); },
          py::arg("system"));

    m.def("satisfies", &satisfies, py::arg("system"), py::arg("assignment"));

    m.def("solve_lr",
          [](long long coefficient, long long eta, long long modulus) {
              return lr_dict(solve_lr(coefficient, eta, modulus));
          },
          py::arg("coefficient"), py::arg("eta"), py::arg("modulus"));

    m.def("lr_congruence",
          [](const ParadoxInstance& inst) { return lr_dict(lr_congruence(inst)); },
          py::arg("instance"),
          "The single-unknown relation the instance forces on any "
          "hidden-variable model.");

    m.def("mermin_system", &mermin_system,
          "The four-equation two-outcome system with no solution.");

    m.def("irreducibility_scan",
          [](const ParadoxInstance& inst) {
              py::list out;
              for (const RemovalReport& r : irreducibility_scan(inst)) {
                  py::dict d;
                  d["party"] = r.party;
                  d["setting"] = r.setting.str();
                  d["surviving_equations"] = r.surviving_equations;
                  d["solvable"] = r.solvable;
                  d["witness"] =
                      r.witness ? py::cast(*r.witness) : static_cast<py::object>(py::none());
                  py::list lone;
                  for (const VarKey& v : r.lone_variables)
                      lone.append(v.label());
                  d["lone_variables"] = lone;
                  out.append(d);
              }
              return out;
          },
          py::arg("instance"),
          "One report per deleted (party, setting).");

    m.def("is_irreducible",
          [](const ParadoxInstance& inst) { return is_irreducible(inst); },
          py::arg("instance"),
          "True when every single-setting deletion restores a classical model "
          "and no proper prime subset of the settings still contradicts.");

    m.def("has_proper_prime_reduction",
          [](const ParadoxInstance& inst) { return has_proper_prime_reduction(inst); },
          py::arg("instance"),
          "True when some proper prime divisor of the setting count still "
          "carries the contradiction.");

    m.def("prime_reduction",
          [](const ParadoxInstance& inst, int q) {
              return prime_reduction(inst, q);
          },
          py::arg("instance"), py::arg("q"),
          "The construction shrunk to a prime divisor of the setting count; "
          "None when nothing shrinks.");

    m.def("party_removal_check",
          [](const ParadoxInstance& inst, int party) {
              const PartyRemovalReport rep = party_removal_check(inst, party);
              py::dict d;
              d["party"] = rep.party;
              d["still_eigenstate"] = rep.still_eigenstate;
              d["no_common_eigenstate"] = rep.no_common_eigenstate;
              return d;
          },
          py::arg("instance"), py::arg("party"));

    m.def("genuine_in_parties", &genuine_in_parties, py::arg("instance"),
          "True when dropping any single party breaks at least one composite.");

    m.def("eigenvector_overlap",
          [](int n, int m_, const std::string& alpha,
             const std::string& alpha_prime, int dim) {
              return eigenvector_overlap(
                  {n, m_, PhaseFrac::parse(alpha), PhaseFrac::parse(alpha_prime), dim});
          },
          py::arg("n"), py::arg("m"), py::arg("alpha"), py::arg("alpha_prime"),
          py::arg("dim"),
          "Squared overlap of eigenvectors of two settings of one party.");

    m.def("dimension_check",
          [](const ParadoxInstance& inst) {
              const DimReport rep = dimension_check(inst);
              py::dict d;
              d["pass"] = rep.pass;
              d["min_overlap"] = rep.min_overlap;
              d["overlaps_checked"] = rep.overlaps_checked;
              py::list pairs;
              for (const PhasePairOverlap& p : rep.pairs) {
                  py::dict pd;
                  pd["party"] = p.party;
                  pd["alpha"] = p.alpha.str();
                  pd["alpha_prime"] = p.alpha_prime.str();
                  pd["min_overlap"] = p.min_overlap;
                  pairs.append(pd);
              }
              d["pairs"] = pairs;
              return d;
          },
          py::arg("instance"),
          "Minimum eigenvector overlap across every setting pair of every "
          "party; all must stay positive.");

    m.attr("DEFAULT_BRUTE_CAP") = kDefaultBruteCap;
    m.attr("SCHEMA_VERSION") = kInstanceSchemaVersion;
}
