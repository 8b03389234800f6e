// Copyright (c) 2026 The ququart authors.
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ququart/collective.hpp"
#include "ququart/protocols.hpp"
#include "ququart/serialize.hpp"
#include "ququart/session.hpp"
#include "ququart/upb.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace ququart;

namespace {

std::vector<std::vector<int>> perm_rows(const SignedPermutation& p) {
    std::vector<std::vector<int>> rows;
    for (const auto& r : p.m) rows.emplace_back(r.begin(), r.end());
    return rows;
}

} // namespace

PYBIND11_MODULE(ququart, m) {
    m.doc() = "Exact four-level teleportation, entanglement swapping, and collective "
              "translation onto 2x2x2 / 3x3 systems";

    py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<RankError>(m, "RankError", PyExc_ValueError);
    py::register_exception<BasisError>(m, "BasisError", PyExc_ValueError);
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<StructureError>(m, "StructureError", PyExc_RuntimeError);
    py::register_exception<ProtocolError>(m, "ProtocolError", PyExc_RuntimeError);
    py::register_exception<LeakageError>(m, "LeakageError", PyExc_RuntimeError);
    py::register_exception<SetupError>(m, "SetupError", PyExc_ValueError);
    py::register_exception<AuthorizationError>(m, "AuthorizationError", PyExc_RuntimeError);
    py::register_exception<CausalityError>(m, "CausalityError", PyExc_RuntimeError);

    py::class_<StateVector>(m, "StateVector")
        .def(py::init<std::vector<int>, std::vector<Amplitude>>(), "dims"_a, "amps"_a)
        .def_static("basis", &StateVector::basis, "dims"_a, "index"_a)
        .def_readonly("dims", &StateVector::dims)
        .def_readonly("amps", &StateVector::amps)
        .def("total_dim", &StateVector::total_dim)
        .def("norm", &StateVector::norm)
        .def("normalized", &StateVector::normalized)
        .def("__repr__", [](const StateVector& v) {
            return "StateVector(dims=" + std::to_string(v.dims.size()) + " subsystems, dim=" +
                   std::to_string(v.total_dim()) + ")";
        });

    py::class_<Operator>(m, "Operator")
        .def(py::init<int, std::vector<Amplitude>>(), "dim"_a, "entries"_a)
        .def_static("identity", &Operator::identity, "dim"_a)
        .def_readonly("dim", &Operator::dim)
        .def_readonly("entries", &Operator::entries)
        .def("adjoint", &Operator::adjoint)
        .def("is_unitary", &Operator::is_unitary, "tol"_a = kOrthoTol);

    m.def("tensor_product", &tensor_product, "a"_a, "b"_a);
    m.def("inner_product", &inner_product, "a"_a, "b"_a);
    m.def(
        "apply_local",
        [](const StateVector& s, const Operator& op, std::vector<int> targets) {
            return apply_local(s, op, targets);
        },
        "state"_a, "op"_a, "targets"_a);
    m.def(
        "partial_trace",
        [](const StateVector& s, std::vector<int> keep) { return partial_trace(s, keep); },
        "state"_a, "keep"_a);
    m.def(
        "schmidt_singular_values",
        [](const StateVector& s, std::vector<int> side_a) { return schmidt_singular_values(s, side_a); },
        "state"_a, "side_a"_a);
    m.def("complement_orthonormal_basis", &complement_orthonormal_basis, "vectors"_a, "total_dim"_a);
    m.def(
        "born_measure",
        [](const StateVector& s, const std::vector<StateVector>& basis, std::vector<int> targets,
           std::uint64_t seed) {
            auto r = born_measure(s, basis, targets, seed);
            return py::make_tuple(r.outcome, r.probability, r.post_state);
        },
        "state"_a, "projector_basis"_a, "targets"_a, "seed"_a,
        "Returns (outcome, probability, post_state)");
    m.def("derive_seed", &derive_seed, "master"_a, "counter"_a);

    py::enum_<Family>(m, "Family")
        .value("W", Family::W)
        .value("X", Family::X)
        .value("Y", Family::Y)
        .value("Z", Family::Z);

    py::class_<BasisLabel>(m, "BasisLabel")
        .def(py::init<Family, int>(), "family"_a, "index"_a)
        .def_readonly("family", &BasisLabel::family)
        .def_readonly("index", &BasisLabel::index)
        .def("flat", &BasisLabel::flat)
        .def_static("from_flat", &BasisLabel::from_flat, "flat"_a)
        .def_static("parse", [](const std::string& s) { return BasisLabel::parse(s); }, "text"_a)
        .def("__str__", &BasisLabel::str)
        .def("__repr__", &BasisLabel::str)
        .def("__eq__", [](const BasisLabel& a, const BasisLabel& b) { return a == b; })
        .def("__hash__", [](const BasisLabel& l) { return l.flat(); });

    m.def("all_labels", [] { return std::vector<BasisLabel>(all_labels().begin(), all_labels().end()); });
    m.def("basis_state", &basis_state, "label"_a);
    m.def("build_basis", [] {
        auto b = build_basis();
        return std::vector<StateVector>(b.states.begin(), b.states.end());
    });
    m.def(
        "natural_decomposition",
        [](int i, int j) {
            std::vector<std::pair<BasisLabel, int>> out;
            for (const auto& t : natural_decomposition(i, j)) out.emplace_back(t.label, t.sign);
            return out;
        },
        "i"_a, "j"_a, "Terms (label, sign), each with coefficient 1/2");
    m.def("default_resource", &default_resource);

    m.def("transcribed_correction_table", [] {
        std::vector<std::vector<std::vector<int>>> out;
        for (auto l : all_labels()) out.push_back(perm_rows(transcribed_correction_table().op(l)));
        return out;
    });
    m.def(
        "derive_correction",
        [](BasisLabel label, BasisLabel resource) { return perm_rows(derive_correction(label, resource)); },
        "label"_a, "resource"_a);
    m.def(
        "correction_operator",
        [](BasisLabel label, BasisLabel resource) {
            return derive_correction(label, resource).to_operator();
        },
        "label"_a, "resource"_a);
    m.def("correction_table_diff", [] {
        std::vector<std::string> out;
        for (auto l : correction_table_diff()) out.push_back(l.str());
        return out;
    });

    py::class_<TeleportBranch>(m, "TeleportBranch")
        .def_readonly("outcome", &TeleportBranch::outcome)
        .def_readonly("probability", &TeleportBranch::probability)
        .def_readonly("clara_pre", &TeleportBranch::clara_pre)
        .def_readonly("clara_post", &TeleportBranch::clara_post);

    py::class_<TranscriptEvent>(m, "TranscriptEvent")
        .def_readonly("step", &TranscriptEvent::step)
        .def_readonly("kind", &TranscriptEvent::kind)
        .def_readonly("party", &TranscriptEvent::party)
        .def_readonly("payload", &TranscriptEvent::payload)
        .def("__eq__", [](const TranscriptEvent& a, const TranscriptEvent& b) { return a == b; });

    py::class_<ProtocolTranscript>(m, "ProtocolTranscript")
        .def_readonly("seed", &ProtocolTranscript::seed)
        .def_readonly("steps", &ProtocolTranscript::steps)
        .def_readonly("outcome", &ProtocolTranscript::outcome)
        .def_readonly("fidelity", &ProtocolTranscript::fidelity)
        .def("protocol", [](const ProtocolTranscript& t) { return protocol_name(t.protocol); })
        .def("to_json", [](const ProtocolTranscript& t) { return to_json(t).dump(); })
        .def("to_jsonl", [](const ProtocolTranscript& t) { return to_jsonl(t.steps); })
        .def("__eq__",
             [](const ProtocolTranscript& a, const ProtocolTranscript& b) { return a == b; });

    m.def(
        "teleport_branches",
        [](const StateVector& input, BasisLabel resource) {
            auto b = teleport_branches(input, resource);
            return std::vector<TeleportBranch>(b.begin(), b.end());
        },
        "input"_a, "resource"_a);
    m.def("teleport_run", &teleport_run, "input"_a, "resource"_a, "seed"_a);
    m.def("state_fidelity", &state_fidelity, "a"_a, "b"_a);

    py::class_<SwapTableEntry>(m, "SwapTableEntry")
        .def_readonly("outcome", &SwapTableEntry::outcome_23)
        .def_readonly("result", &SwapTableEntry::result_14)
        .def_readonly("phase", &SwapTableEntry::phase)
        .def_readonly("coefficient_magnitude", &SwapTableEntry::coefficient_magnitude);

    m.def("derive_swap_table", [] {
        auto t = derive_swap_table();
        return std::vector<SwapTableEntry>(t.begin(), t.end());
    });
    m.def("reference_swap_table", [] {
        auto t = reference_swap_table();
        return std::vector<SwapTableEntry>(t.begin(), t.end());
    });
    m.def("swap_table_diff_json", [] {
        return to_json(swap_table_diff(derive_swap_table(), reference_swap_table())).dump();
    });
    m.def("swap_run", &swap_run, "seed"_a);
    m.def("swap_outcome_probabilities", [] {
        auto p = swap_outcome_probabilities();
        return std::vector<double>(p.begin(), p.end());
    });

    py::class_<ProductBasisMember>(m, "ProductBasisMember")
        .def_readonly("factors", &ProductBasisMember::factors)
        .def("full_state", &ProductBasisMember::full_state);

    py::class_<Upb>(m, "Upb")
        .def_readonly("parties", &Upb::parties)
        .def_readonly("local_dim", &Upb::local_dim)
        .def_readonly("members", &Upb::members)
        .def("full_states", &Upb::full_states)
        .def("to_json", [](const Upb& u) { return to_json(u).dump(); });

    py::class_<UpbReport>(m, "UpbReport")
        .def_readonly("orthogonal", &UpbReport::orthogonal)
        .def_readonly("max_pairwise_overlap", &UpbReport::max_pairwise_overlap)
        .def_readonly("unextendible", &UpbReport::unextendible)
        .def_readonly("assignments_checked", &UpbReport::assignments_checked)
        .def_readonly("extension_witness", &UpbReport::extension_witness)
        .def("passed", &UpbReport::passed);

    py::class_<EesBasis>(m, "EesBasis")
        .def_readonly("vectors", &EesBasis::vectors)
        .def_readonly("dims", &EesBasis::dims);

    m.def("shifts_upb", &shifts_upb);
    m.def("tiles_upb", &tiles_upb);
    m.def("verify_upb", &verify_upb, "upb"_a);
    m.def("extract_ees", &extract_ees, "upb"_a, "samples"_a = 1000, "seed"_a = 0x5eedULL);
    m.def("solve_dimension_equation", &solve_dimension_equation, "max_parties"_a, "max_local_dim"_a);

    py::enum_<CollectiveSystem>(m, "CollectiveSystem")
        .value("ThreeQubit", CollectiveSystem::ThreeQubit)
        .value("TwoQutrit", CollectiveSystem::TwoQutrit);

    py::class_<EmbeddingMap>(m, "EmbeddingMap")
        .def_readonly("eeb", &EmbeddingMap::eeb)
        .def("slot_dim", &EmbeddingMap::slot_dim)
        .def("parties_per_slot", &EmbeddingMap::parties_per_slot);

    m.def("embedding_for", &embedding_for, "system"_a, py::return_value_policy::reference);
    m.def("embed", &embed, "logical"_a, "map"_a);
    m.def("embed_pair", &embed_pair, "logical"_a, "map"_a);
    m.def("embed_operator", &embed_operator, "u"_a, "map"_a);
    m.def(
        "project_logical",
        [](const StateVector& physical, const EmbeddingMap& map, double max_residual) {
            auto p = project_logical(physical, map, max_residual);
            return py::make_tuple(p.logical, p.residual_norm);
        },
        "physical"_a, "map"_a, "max_residual"_a = -1.0, "Returns (logical, residual_norm)");
    m.def(
        "project_logical_pair",
        [](const StateVector& physical, const EmbeddingMap& map, double max_residual) {
            auto p = project_logical_pair(physical, map, max_residual);
            return py::make_tuple(p.logical, p.residual_norm);
        },
        "physical"_a, "map"_a, "max_residual"_a = -1.0);

    py::class_<CollectiveBranch>(m, "CollectiveBranch")
        .def_readonly("outcome", &CollectiveBranch::outcome)
        .def_readonly("probability", &CollectiveBranch::probability)
        .def_readonly("logical_post", &CollectiveBranch::logical_post)
        .def_readonly("fidelity", &CollectiveBranch::fidelity)
        .def_readonly("max_residual", &CollectiveBranch::max_residual);

    py::class_<CollectiveSwapBranch>(m, "CollectiveSwapBranch")
        .def_readonly("outcome", &CollectiveSwapBranch::outcome)
        .def_readonly("probability", &CollectiveSwapBranch::probability)
        .def_readonly("expected_result", &CollectiveSwapBranch::expected_result)
        .def_readonly("expected_phase", &CollectiveSwapBranch::expected_phase)
        .def_readonly("fidelity", &CollectiveSwapBranch::fidelity)
        .def_readonly("residual", &CollectiveSwapBranch::residual);

    m.def(
        "collective_teleport_branches",
        [](CollectiveSystem s, const StateVector& input) {
            auto b = collective_teleport_branches(s, input);
            return std::vector<CollectiveBranch>(b.begin(), b.end());
        },
        "system"_a, "logical_input"_a);
    m.def("collective_teleport", &collective_teleport, "system"_a, "logical_input"_a, "seed"_a);
    m.def(
        "collective_swap_branches",
        [](CollectiveSystem s) {
            auto b = collective_swap_branches(s);
            return std::vector<CollectiveSwapBranch>(b.begin(), b.end());
        },
        "system"_a);
    m.def("collective_swap", &collective_swap, "system"_a, "seed"_a);

    py::enum_<Party>(m, "Party")
        .value("Alice", Party::Alice)
        .value("Bob", Party::Bob)
        .value("Clara", Party::Clara);

    py::class_<Session>(m, "Session")
        .def(py::init<StateVector, std::vector<Party>, std::uint64_t>(), "global_state"_a,
             "ownership"_a, "seed"_a)
        .def(
            "transfer",
            [](Session& s, Party from, Party to, std::vector<int> subsystems) {
                s.transfer(from, to, subsystems);
            },
            "from_party"_a, "to_party"_a, "subsystems"_a)
        .def(
            "measure",
            [](Session& s, Party p, std::vector<int> subsystems, const std::vector<StateVector>& basis) {
                return s.measure(p, subsystems, basis);
            },
            "party"_a, "subsystems"_a, "basis"_a)
        .def("send_classical", &Session::send_classical, "from_party"_a, "to_party"_a, "payload"_a)
        .def("apply_correction", &Session::apply_correction, "party"_a, "op"_a, "subsystem"_a,
             "responding_to"_a)
        .def("state", &Session::state, py::return_value_policy::copy)
        .def("owner", &Session::owner, "subsystem"_a)
        .def("log", &Session::log, py::return_value_policy::copy)
        .def("log_jsonl", [](const Session& s) { return to_jsonl(s.log()); });

    py::class_<SessionRunResult>(m, "SessionRunResult")
        .def_readonly("transcript", &SessionRunResult::transcript)
        .def_readonly("final_state", &SessionRunResult::final_state);

    m.def("scripted_teleport", &scripted_teleport, "input"_a, "resource"_a, "seed"_a);
    m.def("scripted_swap", &scripted_swap, "seed"_a);
}
