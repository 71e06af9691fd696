#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pbqc/analysis.hpp"
#include "pbqc/cli.hpp"

namespace py = pybind11;
using namespace pbqc;

namespace {

PauliBasis basis_from_str(const std::string& s) {
    if (s == "X") return PauliBasis::X;
    if (s == "Y") return PauliBasis::Y;
    if (s == "Z") return PauliBasis::Z;
    throw std::invalid_argument("basis must be X, Y or Z");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "position-verification protocol and attack lab";
    m.attr("__version__") = kToolVersion;

    py::register_exception<ZeroProbabilityError>(m, "ZeroProbabilityError");

    py::class_<Rng>(m, "Rng")
        .def(py::init<std::uint64_t>())
        .def("uniform", &Rng::uniform)
        .def("uniform_int", &Rng::uniform_int)
        .def("derive", &Rng::derive);

    py::class_<BlochAngles>(m, "BlochAngles")
        .def(py::init<double, double>(), py::arg("theta"), py::arg("phi") = 0.0)
        .def_readwrite("theta", &BlochAngles::theta)
        .def_readwrite("phi", &BlochAngles::phi);

    py::class_<PureState>(m, "PureState")
        .def(py::init<std::vector<int>>())
        .def_static("basis_state", &PureState::basis_state)
        .def_static("from_amplitudes", &PureState::from_amplitudes)
        .def("dims", &PureState::dims)
        .def("amplitudes", &PureState::amplitudes)
        .def("norm", &PureState::norm)
        .def("debug_text", &PureState::to_debug_text);

    py::class_<PauliString>(m, "PauliString")
        .def_static("parse", [](const std::string& s) { return PauliString::parse(s); })
        .def("__str__", &PauliString::str);

    m.def("make_qubit", &make_qubit, py::arg("angles"), py::arg("anti") = false);
    m.def("bell_pair", &bell_pair);
    m.def("bell_state", &bell_state);
    m.def("make_ghz", &make_ghz);
    m.def("tensor", &tensor);
    m.def("fidelity", &fidelity);
    m.def("equal_up_to_phase", &equal_up_to_phase, py::arg("a"), py::arg("b"), py::arg("tol") = 1e-9);
    m.def("apply_named_gate", [](const PureState& s, const std::string& gate, std::vector<int> targets) {
        if (gate == "CNOT") return apply_gate(s, NamedGate::cnot(targets.at(0), targets.at(1)));
        const GateProduct p = GateProduct::parse(gate);
        return apply_product(s, p, targets.at(0));
    });
    m.def("measure_pauli", [](const PureState& s, const std::string& pauli, Rng& rng) {
        const auto r = measure_pauli(s, PauliString::parse(pauli), rng);
        return py::make_tuple(r.outcome, r.state);
    });
    m.def("bell_measure", [](const PureState& s, int q1, int q2, Rng& rng) {
        const auto r = bell_measure(s, q1, q2, rng);
        return py::make_tuple(r.a, r.b, r.state);
    });

    py::class_<Position>(m, "Position")
        .def(py::init<double, double, double>(), py::arg("x") = 0, py::arg("y") = 0, py::arg("z") = 0)
        .def_readwrite("x", &Position::x)
        .def_readwrite("y", &Position::y)
        .def_readwrite("z", &Position::z);

    py::class_<Geometry>(m, "Geometry")
        .def_static("collinear", &Geometry::collinear)
        .def_static("equilateral", &Geometry::equilateral)
        .def_static("regular", &Geometry::regular)
        .def_readwrite("verifiers", &Geometry::verifiers)
        .def_readwrite("receiver", &Geometry::receiver)
        .def_readwrite("l", &Geometry::l)
        .def_readwrite("c", &Geometry::c);

    py::class_<ScheduleReport>(m, "ScheduleReport")
        .def_readonly("arrivals", &ScheduleReport::arrivals)
        .def_readonly("completion", &ScheduleReport::completion)
        .def_readonly("deadline", &ScheduleReport::deadline)
        .def_readonly("meets_deadline", &ScheduleReport::meets_deadline);

    m.def("honest_completion", &honest_completion);
    m.def("cheat_completion", [](const Geometry& g) { return cheat_completion(g); });
    m.def("feasibility_check", [](const Geometry& g) {
        const auto r = feasibility_check(g);
        py::object witness = py::none();
        if (r.witness) witness = py::cast(*r.witness);
        return py::make_tuple(r.feasible, witness);
    });

    py::class_<Transcript>(m, "Transcript")
        .def_readonly("decoded", &Transcript::decoded)
        .def_readonly("schedule", &Transcript::schedule)
        .def_readonly("per_verifier", &Transcript::per_verifier);

    m.def("run_protocol_a", [](int n, int u, std::vector<int> shares, const Geometry& g, std::uint64_t seed) {
        Rng rng(seed);
        return prot_a_run_honest(ProtocolAInstance::make(n, u, std::move(shares)), g, rng);
    });
    m.def("run_protocol_b", [](int n, std::vector<int> a, int b1, const Geometry& g, std::uint64_t seed) {
        Rng rng(seed);
        return prot_b_run_honest(ProtocolBInstance::make(n, std::move(a), b1), g, rng);
    });
    m.def("run_modified", [](int u, double theta, double phi, const Geometry& g, std::uint64_t seed) {
        Rng rng(seed);
        return modified_run_honest(ModifiedInstance::from_angles(u, {theta, phi}), g, rng);
    });

    py::class_<AttackOutcome>(m, "AttackOutcome")
        .def_readonly("answer", &AttackOutcome::answer)
        .def_readonly("schedule", &AttackOutcome::schedule)
        .def_readonly("success", &AttackOutcome::success)
        .def_readonly("consistent", &AttackOutcome::consistent)
        .def_readonly("records", &AttackOutcome::records);

    m.def("attack_a_n2", [](int u, int q, const Geometry& g, std::uint64_t seed) {
        Rng rng(seed);
        return attack_a_n2(ProtocolAInstance::make(2, u, {q}), g, rng);
    });
    m.def("attack_a_n2_xyz", [](int u, const std::string& basis, const Geometry& g, std::uint64_t seed) {
        Rng rng(seed);
        return attack_a_n2_xyz({u, basis_from_str(basis)}, g, rng);
    });
    m.def("attack_b_n2", [](std::vector<int> a, int b1, const Geometry& g, std::uint64_t seed) {
        Rng rng(seed);
        return attack_b_n2(ProtocolBInstance::make(2, std::move(a), b1), g, rng);
    });
    m.def("attack_a_n3_qss", [](int u, int q2, int q3, const Geometry& g, std::uint64_t seed) {
        Rng rng(seed);
        return attack_a_n3_qss(ProtocolAInstance::make(3, u, {q2, q3}), g, rng);
    });
    m.def("attack_b_n3", [](std::vector<int> a, int b1, const Geometry& g, std::uint64_t seed) {
        Rng rng(seed);
        return attack_b_n3(ProtocolBInstance::make(3, std::move(a), b1), g, rng);
    });
    m.def("attack_modified",
          [](int u, double theta, double phi, const std::string& strategy, const Geometry& g,
             std::uint64_t seed) {
              Rng rng(seed);
              return attack_modified(ModifiedInstance::from_angles(u, {theta, phi}),
                                     strategy_from_name(strategy), g, rng);
          });

    py::class_<RateReport>(m, "RateReport")
        .def_readonly("strategy", &RateReport::strategy)
        .def_readonly("rate", &RateReport::rate)
        .def_readonly("std_error", &RateReport::std_error)
        .def_readonly("samples", &RateReport::samples)
        .def_readonly("quadrature", &RateReport::quadrature);

    m.def("rate_monte_carlo", [](const std::string& strategy, long samples, std::uint64_t seed) {
        return rate_monte_carlo(strategy_from_name(strategy), samples, seed);
    });
    m.def("rate_quadrature_teleport", &rate_quadrature_teleport, py::arg("tol") = 1e-6);
    m.def("teleport_success_prob",
          [](double theta, double phi) { return modified_teleport_success_prob({theta, phi}); });

    py::class_<ResourceSearchResult>(m, "ResourceSearchResult")
        .def_readonly("resource_dim", &ResourceSearchResult::resource_dim)
        .def_readonly("thetas", &ResourceSearchResult::thetas)
        .def_readonly("best_success", &ResourceSearchResult::best_success)
        .def_readonly("restarts", &ResourceSearchResult::restarts)
        .def_readonly("residual_even", &ResourceSearchResult::residual_even)
        .def_readonly("residual_cross", &ResourceSearchResult::residual_cross);

    m.def("two_qubit_cheat_search", &two_qubit_cheat_search);
    m.def("qutrit_cheat_search",
          [](const std::vector<double>& thetas, int restarts, std::uint64_t seed) {
              return qutrit_cheat_search(EncodingGrid::from_thetas(thetas), restarts, seed);
          });
}
