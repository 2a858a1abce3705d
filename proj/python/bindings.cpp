#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "splaydeque/error.hpp"
#include "splaydeque/sequence.hpp"
#include "splaydeque/slow_functions.hpp"
#include "splaydeque/splay_tree.hpp"
#include "splaydeque/transcription.hpp"
#include "splaydeque/workload.hpp"

namespace py = pybind11;
namespace sd = splaydeque;

namespace {

// Patterns may be given as letters ("abab") or as integer lists.
sd::SymbolSequence to_sequence(const py::object& obj) {
    if (py::isinstance<py::str>(obj)) return sd::SymbolSequence::from_letters(obj.cast<std::string>());
    return sd::SymbolSequence(obj.cast<std::vector<sd::Symbol>>());
}

std::vector<sd::Symbol> to_list(const sd::SymbolSequence& s) { return {s.symbols().begin(), s.symbols().end()}; }

py::dict pop_record(const sd::PopRecord& r) {
    py::dict d;
    d["deleted"] = r.deleted;
    d["rotations"] = r.rotations;
    d["splayed_path"] = r.splayed_path;
    return d;
}

sd::WorkloadParams params(const std::string& kind, std::size_t n, std::size_t m, std::uint64_t seed,
                          const std::vector<std::string>& mix, std::size_t burst) {
    sd::WorkloadParams p;
    p.kind = sd::parse_workload_kind(kind);
    p.n = n;
    p.m = m;
    p.seed = seed;
    for (const auto& op : mix) p.mix.push_back(sd::parse_deque_op(op));
    p.burst = burst;
    return p;
}

}  // namespace

PYBIND11_MODULE(_splaydeque, m) {
    m.doc() = "Splay-tree deque core, general-tree model, transcription and pattern checks";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const sd::Error& e) {
            switch (e.kind()) {
                case sd::ErrorKind::not_found: PyErr_SetString(PyExc_KeyError, e.what()); break;
                case sd::ErrorKind::empty_structure: PyErr_SetString(PyExc_IndexError, e.what()); break;
                case sd::ErrorKind::invalid_argument:
                case sd::ErrorKind::parse_error: PyErr_SetString(PyExc_ValueError, e.what()); break;
                default: PyErr_SetString(PyExc_RuntimeError, e.what()); break;
            }
        }
    });

    py::class_<sd::RotationLedger>(m, "RotationLedger")
        .def_readonly("zig", &sd::RotationLedger::zig)
        .def_readonly("zigzig", &sd::RotationLedger::zigzig)
        .def_readonly("zigzag", &sd::RotationLedger::zigzag)
        .def_readonly("rotations", &sd::RotationLedger::rotations)
        .def("__repr__", [](const sd::RotationLedger& l) {
            return "RotationLedger(zig=" + std::to_string(l.zig) + ", zigzig=" + std::to_string(l.zigzig) +
                   ", zigzag=" + std::to_string(l.zigzag) + ", rotations=" + std::to_string(l.rotations) + ")";
        });

    py::class_<sd::SplayTree>(m, "SplayTree")
        .def(py::init<>())
        .def_static("left_path", &sd::SplayTree::left_path, py::arg("n"))
        .def_static("from_insertion_order",
                    [](const std::vector<sd::NodeId>& keys) { return sd::SplayTree::from_insertion_order(keys); },
                    py::arg("keys"))
        .def("push", [](sd::SplayTree& t) { return t.push(); })
        .def("inject", [](sd::SplayTree& t) { return t.inject(); })
        .def("pop", [](sd::SplayTree& t) { return pop_record(t.pop()); })
        .def("eject", [](sd::SplayTree& t) { return pop_record(t.eject()); })
        .def("splay", &sd::SplayTree::splay, py::arg("x"))
        .def_property_readonly("root", &sd::SplayTree::root)
        .def("left", &sd::SplayTree::left)
        .def("right", &sd::SplayTree::right)
        .def("rotation_count", &sd::SplayTree::rotation_count)
        .def("in_order", &sd::SplayTree::in_order)
        .def("dump", &sd::SplayTree::dump)
        .def("validate", &sd::SplayTree::validate)
        .def("__len__", &sd::SplayTree::size)
        .def("__contains__", &sd::SplayTree::contains);

    m.def("contains_pattern", [](const py::object& pattern, const py::object& text) {
        return sd::contains_pattern(to_sequence(pattern), to_sequence(text));
    }, py::arg("pattern"), py::arg("text"));
    m.def("is_regular", [](const py::object& seq, std::size_t c) { return sd::is_regular(to_sequence(seq), c); },
          py::arg("seq"), py::arg("c"));
    m.def("remove_repetitions", [](const py::object& seq) {
        auto [s, removed] = sd::remove_repetitions(to_sequence(seq));
        return py::make_tuple(to_list(s), removed);
    }, py::arg("seq"));
    m.def("find_babba", [](const py::object& seq) { return sd::find_babba(to_sequence(seq)); }, py::arg("seq"));
    m.def("ex_bruteforce", [](const py::object& pattern, std::size_t n, std::size_t cap, std::uint64_t budget) {
        const auto r = sd::ex_bruteforce(to_sequence(pattern), n, cap ? cap : 4 * n + 4, budget);
        py::dict d;
        d["value"] = r.value;
        d["exact"] = r.exact;
        d["witness"] = r.witness ? py::cast(to_list(*r.witness)) : py::none();
        d["nodes"] = r.nodes;
        return d;
    }, py::arg("pattern"), py::arg("n"), py::arg("cap") = 0, py::arg("budget") = 50'000'000);

    m.def("log_star", [](double x) { return sd::log_star(x); }, py::arg("x"));
    m.def("alpha", &sd::alpha, py::arg("m"), py::arg("n"));
    m.def("alpha_star", &sd::alpha_star, py::arg("n"));

    m.def("generate", [](const std::string& kind, std::size_t n, std::size_t m, std::uint64_t seed,
                         const std::vector<std::string>& mix, std::size_t burst) {
        const auto t = sd::generate(params(kind, n, m, seed, mix, burst));
        std::vector<std::string> ops;
        for (auto op : t.ops) ops.emplace_back(sd::to_string(op));
        return ops;
    }, py::arg("kind"), py::arg("n"), py::arg("m") = 0, py::arg("seed") = 1,
       py::arg("mix") = std::vector<std::string>{}, py::arg("burst") = 0);

    m.def("run", [](const std::string& kind, std::size_t n, std::size_t m, std::uint64_t seed, bool mirror,
                    const std::vector<std::string>& mix, std::size_t burst) {
        sd::RunOptions o;
        o.mirror = mirror;
        o.keep_series = false;
        const auto r = sd::run(sd::generate(params(kind, n, m, seed, mix, burst)), o);
        py::dict d;
        d["n"] = r.cost.n;
        d["m"] = r.cost.m;
        d["total_rotations"] = r.cost.total_rotations;
        d["per_op"] = r.cost.per_operation();
        d["amortized"] = r.cost.amortized();
        d["mismatches"] = r.mirror ? py::cast(r.mirror->mismatches) : py::none();
        return d;
    }, py::arg("kind"), py::arg("n"), py::arg("m") = 0, py::arg("seed") = 1, py::arg("mirror") = false,
       py::arg("mix") = std::vector<std::string>{}, py::arg("burst") = 0);

    m.def("transcribe", [](const std::string& kind, std::size_t n, std::size_t m, std::uint64_t seed,
                           std::size_t block_size, std::size_t split_bound) {
        sd::RunOptions o;
        o.mirror = true;
        o.keep_series = false;
        const auto r = sd::run(sd::generate(params(kind, n, m, seed, {}, 0)), o);
        const auto t = sd::transcribe(r.compression_trace, {block_size, split_bound});
        py::dict d;
        d["s_prime"] = to_list(t.s_prime);
        d["s"] = to_list(t.s);
        d["removed_repetitions"] = t.removed_repetitions;
        d["blocks"] = t.blocks;
        d["block_size"] = t.block_size;
        d["split_bound"] = t.split_bound;
        d["max_multiplicity"] = t.max_multiplicity;
        d["contains_abababa"] = t.contains_abababa;
        d["contains_abaabba"] = t.contains_abaabba;
        d["epochs"] = t.epochs.size();
        return d;
    }, py::arg("kind"), py::arg("n"), py::arg("m") = 0, py::arg("seed") = 1, py::arg("block_size") = 0,
       py::arg("split_bound") = 0);
}
