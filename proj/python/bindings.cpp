#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "autseq/automaton.hpp"
#include "autseq/enumeration.hpp"
#include "autseq/error.hpp"
#include "autseq/factorization.hpp"
#include "autseq/oracle.hpp"
#include "autseq/predicate.hpp"
#include "autseq/sequences.hpp"

namespace py = pybind11;
using namespace autseq;

namespace {

py::int_ to_py(const BigInt& v) { return py::int_(py::str(v.str())); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Automata for Lyndon factorizations of automatic sequences";

    auto error = py::register_exception<Error>(m, "Error");
    py::register_exception<InputError>(m, "InputError", error.ptr());
    py::register_exception<StructuralError>(m, "StructuralError", error.ptr());
    py::register_exception<ResourceError>(m, "ResourceError", error.ptr());
    py::register_exception<DivergenceError>(m, "DivergenceError", error.ptr());

    py::class_<Automaton>(m, "Automaton")
        .def_property_readonly("tracks", &Automaton::tracks)
        .def_property_readonly("base", &Automaton::base)
        .def_property_readonly("state_count", &Automaton::state_count)
        .def("accepts", [](const Automaton& a, const std::vector<Value>& values) { return a.accepts(values); })
        .def("is_empty", &Automaton::is_empty)
        .def("to_text", [](const Automaton& a) { return to_text(a); })
        .def("to_dot", [](const Automaton& a) { return to_dot(a); })
        .def_static("from_text", &from_text)
        .def("__eq__", [](const Automaton& a, const Automaton& b) { return a == b; });

    m.def("equivalent", &equivalent);
    m.def("minimize", &minimize);
    m.def("negate", &negate);
    m.def("project", [](const Automaton& a, int track) { return project(a, track); });

    py::class_<SequenceDfao>(m, "Sequence")
        .def_property_readonly("base", &SequenceDfao::base)
        .def_property_readonly("state_count", &SequenceDfao::state_count)
        .def("__getitem__", [](const SequenceDfao& s, Value n) { return letter_at(s, n); })
        .def("prefix", [](const SequenceDfao& s, std::size_t n) { return prefix(s, n); })
        .def("to_text", [](const SequenceDfao& s) { return to_text(s); })
        .def_static("from_text", &sequence_from_text);

    m.def("builtin_sequence", [](const std::string& name) { return builtin_sequence(name); });
    m.def("builtin_sequence_names", &builtin_sequence_names);

    py::class_<CompiledPredicate>(m, "CompiledPredicate")
        .def_readonly("automaton", &CompiledPredicate::automaton)
        .def_readonly("free_vars", &CompiledPredicate::free_vars)
        .def("holds", [](const CompiledPredicate& p, const std::vector<Value>& v) { return p.holds(v); })
        .def("truth", &CompiledPredicate::truth);

    m.def(
        "compile",
        [](const std::string& text, const std::map<std::string, const SequenceDfao*>& sequences,
           const std::vector<std::string>& free_order) {
            int base = sequences.empty() ? 2 : sequences.begin()->second->base();
            Environment env(base);
            for (const auto& [name, seq] : sequences) env.add_sequence(name, *seq);
            return compile(text, env, free_order);
        },
        py::arg("text"), py::arg("sequences") = std::map<std::string, const SequenceDfao*>{},
        py::arg("free_order") = std::vector<std::string>{});
    m.def("builtin_predicate", &builtin_predicate, py::arg("name"), py::arg("seq"));

    m.def(
        "term_starts",
        [](const SequenceDfao& seq, Value bound) { return factorization_start_automaton(seq).starts_below(bound); },
        py::arg("seq"), py::arg("bound"));
    m.def(
        "factorization_finite",
        [](const SequenceDfao& seq) -> py::object {
            auto enc = factorization_start_automaton(seq);
            if (!enc.finite) return py::none();
            return py::cast(to_string(enc.terms_if_finite, ","));
        },
        "Terms as text when the factorization is finite, otherwise None.");
    m.def("marker_bits", [](const SequenceDfao& seq, std::size_t length) {
        return factorization_start_automaton(seq).bits(length);
    });
    m.def("prefix_factorization", [](const SequenceDfao& seq, Value n) {
        std::vector<std::pair<Value, Value>> out;
        for (const auto& occ : prefix_factorization(seq, n)) out.emplace_back(occ.start, *occ.end);
        return out;
    });

    py::class_<LinearRepresentation>(m, "LinearRepresentation")
        .def_property_readonly("dimension", &LinearRepresentation::dimension)
        .def_property_readonly("base", &LinearRepresentation::base)
        .def("__call__", [](const LinearRepresentation& r, Value n) { return to_py(evaluate_count(r, n)); })
        .def("to_text", [](const LinearRepresentation& r) { return to_text(r); })
        .def_static("from_text", &representation_from_text);

    m.def(
        "count_representation",
        [](const SequenceDfao& seq, const std::string& kind) {
            PredicateLibrary lib(seq);
            return linear_representation(counting_pair_automaton(lib, parse_count_kind(kind)), 1);
        },
        py::arg("seq"), py::arg("kind"));

    m.def(
        "synthesize",
        [](const LinearRepresentation& rep, std::size_t cap) {
            SynthesisResult r = synthesize_bounded(rep, cap);
            py::dict out;
            switch (r.outcome) {
                case SynthesisResult::Outcome::dfao: out["outcome"] = "dfao"; break;
                case SynthesisResult::Outcome::unbounded: out["outcome"] = "unbounded"; break;
                case SynthesisResult::Outcome::cap_exceeded: out["outcome"] = "cap_exceeded"; break;
            }
            out["states"] = r.states_explored;
            out["max_output"] = to_py(r.max_output);
            out["dfao"] = r.dfao ? py::cast(*r.dfao) : py::none();
            if (r.outcome == SynthesisResult::Outcome::unbounded) {
                out["witness_prefix"] = r.witness_prefix;
                out["witness_cycle"] = r.witness_cycle;
                out["witness_coordinate"] = r.witness_coordinate;
            }
            return out;
        },
        py::arg("rep"), py::arg("cap") = 100000);

    auto orc = m.def_submodule("oracle", "Brute-force reference implementations");
    orc.def("duval", [](const std::vector<int>& w) { return oracle::duval_factorization(w); });
    orc.def("is_lyndon", [](const std::vector<int>& w) { return oracle::is_lyndon(w); });
    orc.def("is_primitive", [](const std::vector<int>& w) { return oracle::is_primitive(w); });
    orc.def("least_suffix", [](const std::vector<int>& w) { return oracle::least_suffix(w); });
    orc.def("count_factors", [](const std::vector<int>& text, std::size_t n, const std::string& kind) {
        oracle::FactorKind k = kind == "lyndon"      ? oracle::FactorKind::lyndon
                               : kind == "primitive" ? oracle::FactorKind::primitive
                               : kind == "all"       ? oracle::FactorKind::all
                                                     : throw InputError("unknown factor kind: " + kind);
        return oracle::count_factors(text, n, k);
    });
}
