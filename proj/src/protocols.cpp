#include "pbqc/protocols.hpp"

#include <stdexcept>

namespace pbqc {

namespace {

int xor_bits(const std::vector<int>& bits) {
    int acc = 0;
    for (int b : bits) acc ^= (b & 1);
    return acc;
}

void check_bit(int b, const char* what) {
    if (b != 0 && b != 1) throw std::invalid_argument(std::string(what) + " must be a bit");
}

} // namespace

ProtocolAInstance ProtocolAInstance::make(int n, int u, std::vector<int> q_shares) {
    ProtocolAInstance inst;
    inst.n = n;
    inst.u = u;
    inst.q_shares = std::move(q_shares);
    inst.q = xor_bits(inst.q_shares);
    inst.validate();
    return inst;
}

void ProtocolAInstance::validate() const {
    if (n < 2) throw std::invalid_argument("protocol A: n >= 2");
    check_bit(u, "u");
    check_bit(q, "q");
    if (static_cast<int>(q_shares.size()) != n - 1)
        throw std::invalid_argument("protocol A: need q_2..q_N");
    for (int b : q_shares) check_bit(b, "q_i");
    if (xor_bits(q_shares) != q) throw std::invalid_argument("protocol A: q must equal xor of shares");
}

ProtocolBInstance ProtocolBInstance::make(int n, std::vector<int> a, int b1,
                                          std::vector<GateProduct> locals) {
    ProtocolBInstance inst;
    inst.n = n;
    inst.a = std::move(a);
    inst.b1 = b1;
    if (locals.empty()) locals.resize(static_cast<std::size_t>(n));
    inst.locals = std::move(locals);
    inst.validate();
    return inst;
}

void ProtocolBInstance::validate() const {
    if (n != 2 && n != 3) throw std::invalid_argument("protocol B: only N in {2,3} is implemented");
    if (static_cast<int>(a.size()) != n) throw std::invalid_argument("protocol B: |a| must equal N");
    for (int bit : a) check_bit(bit, "a_i");
    check_bit(b1, "b1");
    if (static_cast<int>(locals.size()) != n)
        throw std::invalid_argument("protocol B: one local transformation per station");
}

std::vector<int> ProtocolBInstance::expected_answer() const {
    if (n == 2) return {a[0] ^ a[1], b1};
    std::vector<int> bits = {b1};
    for (int i = 1; i < n; ++i) bits.push_back(a[0] ^ a[static_cast<std::size_t>(i)]);
    return bits;
}

ModifiedInstance ModifiedInstance::from_angles(int u, const BlochAngles& angles) {
    ModifiedInstance inst;
    inst.n = 2;
    inst.u = u;
    inst.has_angles = true;
    inst.angles = angles;
    // the rotation taking |0> to |psi(theta,phi)> and |1> to |psibar>
    GateProduct share;
    share.factors.push_back(NamedGate::u3(0, angles.theta, angles.phi, 3.14159265358979323846));
    inst.shares = {share};
    inst.validate();
    return inst;
}

ModifiedInstance ModifiedInstance::from_programs(int u, const std::vector<std::string>& programs) {
    ModifiedInstance inst;
    inst.n = static_cast<int>(programs.size()) + 1;
    inst.u = u;
    inst.programs = programs;
    for (const auto& bits : programs) inst.shares.push_back(compile_bit_program(bits));
    inst.validate();
    return inst;
}

ModifiedInstance ModifiedInstance::from_shares(int u, std::vector<GateProduct> shares) {
    ModifiedInstance inst;
    inst.n = static_cast<int>(shares.size()) + 1;
    inst.u = u;
    inst.shares = std::move(shares);
    inst.validate();
    return inst;
}

void ModifiedInstance::validate() const {
    if (n < 2) throw std::invalid_argument("modified protocol: n >= 2");
    check_bit(u, "u");
    if (static_cast<int>(shares.size()) != n - 1)
        throw std::invalid_argument("modified protocol: need U_2..U_N");
    if (has_angles) validate_angles(angles);
    // decrypting the sent state must recover |u>
    PureState probe = apply_product(sent_state(), composed().inverse(), 0);
    if (!equal_up_to_phase(probe, PureState::basis_state({2}, {u})))
        throw std::invalid_argument("modified protocol: shares do not invert cleanly");
}

GateProduct ModifiedInstance::composed() const {
    GateProduct all;
    for (const auto& s : shares)
        all.factors.insert(all.factors.end(), s.factors.begin(), s.factors.end());
    return all;
}

PureState ModifiedInstance::sent_state() const {
    return apply_product(PureState::basis_state({2}, {u}), composed(), 0);
}

namespace {

Transcript broadcast(const std::vector<int>& answer, const ScheduleReport& schedule, std::size_t n) {
    Transcript t;
    t.decoded = answer;
    t.schedule = schedule;
    t.per_verifier.assign(n, answer);
    return t;
}

void require_feasible(const Geometry& geom) {
    if (!feasibility_check(geom).feasible)
        throw std::invalid_argument("geometry infeasible for position verification");
}

} // namespace

Transcript prot_a_run_honest(const ProtocolAInstance& inst, const Geometry& geom, Rng& rng) {
    inst.validate();
    geom.validate();
    if (geom.station_count() != inst.n) throw std::invalid_argument("station count mismatch");
    require_feasible(geom);

    PureState qubit = PureState::basis_state({2}, {inst.u});
    if (inst.q) qubit = apply_gate(qubit, NamedGate::single(NamedGate::Kind::H, 0));
    // receiver recombines the shares and decrypts
    const int q = [&] {
        int acc = 0;
        for (int b : inst.q_shares) acc ^= b;
        return acc;
    }();
    if (q) qubit = apply_gate(qubit, NamedGate::single(NamedGate::Kind::H, 0));
    const auto m = measure_pauli(qubit, PauliString::parse("Z"), rng);
    const int decoded = (1 - m.outcome) / 2;
    return broadcast({decoded}, honest_completion(geom), geom.verifiers.size());
}

Transcript prot_b_run_honest(const ProtocolBInstance& inst, const Geometry& geom, Rng& rng) {
    inst.validate();
    geom.validate();
    if (geom.station_count() != inst.n) throw std::invalid_argument("station count mismatch");
    require_feasible(geom);

    PureState state = make_ghz(inst.n, inst.a, inst.b1);
    for (int i = 0; i < inst.n; ++i) state = apply_product(state, inst.locals[static_cast<std::size_t>(i)], i);
    // receiver decrypts each qubit then measures in the GHZ code
    for (int i = 0; i < inst.n; ++i)
        state = apply_product(state, inst.locals[static_cast<std::size_t>(i)].inverse(), i);
    const auto code = ghz_code(inst.n);
    const auto m = projective_measure(state, code, rng);
    auto bits = ghz_code_index_bits(inst.n, m.index); // (b1, b2..bn)
    std::vector<int> decoded;
    if (inst.n == 2) decoded = {bits[1], bits[0]}; // Bell labels (a, b)
    else decoded = bits;
    return broadcast(decoded, honest_completion(geom), geom.verifiers.size());
}

Transcript modified_run_honest(const ModifiedInstance& inst, const Geometry& geom, Rng& rng) {
    inst.validate();
    geom.validate();
    if (geom.station_count() != inst.n) throw std::invalid_argument("station count mismatch");
    require_feasible(geom);

    PureState qubit = inst.sent_state();
    qubit = apply_product(qubit, inst.composed().inverse(), 0);
    const auto m = measure_pauli(qubit, PauliString::parse("Z"), rng);
    const int decoded = (1 - m.outcome) / 2;
    return broadcast({decoded}, honest_completion(geom), geom.verifiers.size());
}

Verdict verify_response(const Transcript& t, const std::vector<int>& expected, const Geometry& geom) {
    geom.validate();
    if (t.per_verifier.size() != geom.verifiers.size())
        throw std::invalid_argument("transcript does not cover every verifier");
    for (const auto& ans : t.per_verifier)
        if (ans != t.per_verifier[0]) return {false, "inconsistent"};
    for (const auto& ans : t.per_verifier)
        if (ans != expected) return {false, "wrong-answer"};
    if (!(t.schedule.completion <= t.schedule.deadline + 1e-12)) return {false, "late"};
    return {true, "ok"};
}

} // namespace pbqc
