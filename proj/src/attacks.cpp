#include "pbqc/attacks.hpp"

#include <cmath>
#include <stdexcept>

namespace pbqc {

namespace {

constexpr double kPi = 3.14159265358979323846;

// runs measurements either sampled or replayed from a forced branch record
class Driver {
public:
    explicit Driver(Rng* rng) : rng_(rng) {}
    explicit Driver(std::span<const int> branch) : branch_(branch) {}

    PauliMeasurement pauli(const PureState& s, const PauliString& p) {
        if (rng_) return measure_pauli(s, p, *rng_);
        return measure_pauli_forced(s, p, next() ? -1 : +1);
    }
    BellMeasurement bell(const PureState& s, int q1, int q2) {
        if (rng_) return bell_measure(s, q1, q2, *rng_);
        const int a = next(), b = next();
        return bell_measure_forced(s, q1, q2, a, b);
    }
    ProjectiveMeasurement project(const PureState& s, const CodeSpace& basis,
                                  const std::vector<int>& targets) {
        if (rng_) return projective_measure_on(s, basis, targets, *rng_);
        return projective_measure_on_forced(s, basis, targets, next());
    }
    void finish() const {
        if (!rng_ && pos_ != branch_.size())
            throw std::invalid_argument("forced branch record has the wrong length");
    }

private:
    int next() {
        if (pos_ >= branch_.size()) throw std::invalid_argument("forced branch record too short");
        return branch_[pos_++];
    }
    Rng* rng_ = nullptr;
    std::span<const int> branch_;
    std::size_t pos_ = 0;
};

int sign_to_bit(int s) { return (1 - s) / 2; }

AttackOutcome finish_outcome(std::vector<int> answer, const std::vector<int>& expected,
                             const ScheduleReport& schedule, std::size_t n_verifiers,
                             std::map<std::string, int> records) {
    AttackOutcome out;
    out.answer = std::move(answer);
    out.schedule = schedule;
    out.per_verifier.assign(n_verifiers, out.answer);
    out.consistent = true;
    out.records = std::move(records);
    out.success = out.consistent && schedule.meets_deadline && out.answer == expected;
    return out;
}

void require_stations(const Geometry& geom, int n, const char* what) {
    if (geom.station_count() != n) throw std::invalid_argument(std::string(what) + ": wrong station count");
}

// --- protocol A, two stations -------------------------------------------

AttackOutcome run_attack_a_n2(const ProtocolAInstance& inst, const Geometry& geom, Driver drv) {
    inst.validate();
    require_stations(geom, 2, "attack_a_n2");

    // B1 holds the intercepted qubit and one Bell half; B2 the other half
    PureState enc = PureState::basis_state({2}, {inst.u});
    if (inst.q) enc = apply_gate(enc, NamedGate::single(NamedGate::Kind::H, 0));
    PureState reg = tensor(enc, bell_pair());

    const auto bm = drv.bell(reg, 0, 1);
    const int s2 = 1 - 2 * bm.a; // byproduct X^{(1-s2)/2}
    const int s1 = 1 - 2 * bm.b; // byproduct Z^{(1-s1)/2}

    // B2 measures in the basis named by q
    PureState after = bm.state;
    if (inst.q) after = apply_gate(after, NamedGate::single(NamedGate::Kind::H, 2));
    const auto m = drv.pauli(after, PauliString::single(3, 2, PauliLetter::Z));
    drv.finish();

    const int o = m.outcome;
    const int u_hat = sign_to_bit(inst.q ? o * s1 : o * s2);
    return finish_outcome({u_hat}, {inst.u}, cheat_completion(geom), 2,
                          {{"s1", s1}, {"s2", s2}, {"b2", o}});
}

AttackOutcome run_attack_a_n2_xyz(const PauliEncodingInstance& inst, const Geometry& geom, Driver drv) {
    require_stations(geom, 2, "attack_a_n2_xyz");
    if (inst.u != 0 && inst.u != 1) throw std::invalid_argument("u must be a bit");

    PureState enc = PureState::basis_state({2}, {inst.u});
    switch (inst.basis) {
        case PauliBasis::Z: break;
        case PauliBasis::X: enc = apply_gate(enc, NamedGate::single(NamedGate::Kind::H, 0)); break;
        case PauliBasis::Y:
            enc = apply_gate(enc, NamedGate::single(NamedGate::Kind::H, 0));
            enc = apply_gate(enc, NamedGate::single(NamedGate::Kind::S, 0));
            break;
    }
    PureState reg = tensor(enc, bell_pair());
    const auto bm = drv.bell(reg, 0, 1);
    const int s2 = 1 - 2 * bm.a;
    const int s1 = 1 - 2 * bm.b;

    // B2 rotates the named basis onto Z and measures
    PureState after = bm.state;
    switch (inst.basis) {
        case PauliBasis::Z: break;
        case PauliBasis::X: after = apply_gate(after, NamedGate::single(NamedGate::Kind::H, 2)); break;
        case PauliBasis::Y:
            after = apply_gate(after, NamedGate::u3(2, 0, 0, -kPi / 2)); // S^dag
            after = apply_gate(after, NamedGate::single(NamedGate::Kind::H, 2));
            break;
    }
    const auto m = drv.pauli(after, PauliString::single(3, 2, PauliLetter::Z));
    drv.finish();

    // flip sign of the byproduct X^a' Z^b' against the encoding operator
    int flip = 1;
    switch (inst.basis) {
        case PauliBasis::Z: flip = s2; break;
        case PauliBasis::X: flip = s1; break;
        case PauliBasis::Y: flip = s1 * s2; break;
    }
    const int u_hat = sign_to_bit(m.outcome * flip);
    return finish_outcome({u_hat}, {inst.u}, cheat_completion(geom), 2,
                          {{"s1", s1}, {"s2", s2}, {"b2", m.outcome}});
}

// --- protocol B, two stations -------------------------------------------

AttackOutcome run_attack_b_n2(const ProtocolBInstance& inst, const Geometry& geom, Driver drv) {
    inst.validate();
    if (inst.n != 2) throw std::invalid_argument("attack_b_n2: N=2 instance required");
    require_stations(geom, 2, "attack_b_n2");

    // qubits: 0,1 code pair (B1, B2), 2 Bell half of B2, 3 Bell half of B1
    PureState code = make_ghz(2, inst.a, inst.b1);
    for (int i = 0; i < 2; ++i) code = apply_product(code, inst.locals[static_cast<std::size_t>(i)], i);
    PureState reg = tensor(code, bell_pair());
    for (int i = 0; i < 2; ++i) reg = apply_product(reg, inst.locals[static_cast<std::size_t>(i)].inverse(), i);

    reg = apply_gate(reg, NamedGate::cnot(1, 2));
    const auto mx = drv.pauli(reg, PauliString::single(4, 1, PauliLetter::X));
    const auto mz = drv.pauli(mx.state, PauliString::single(4, 2, PauliLetter::Z));
    const int s2 = mx.outcome, s3 = mz.outcome;

    const auto bm = drv.bell(mz.state, 0, 3);
    drv.finish();

    const int a_hat = bm.a ^ sign_to_bit(s3);
    const int b_hat = bm.b ^ sign_to_bit(s2);
    return finish_outcome({a_hat, b_hat}, inst.expected_answer(), cheat_completion(geom), 2,
                          {{"s2", s2}, {"s3", s3}, {"a'", bm.a}, {"b'", bm.b}});
}

// --- protocol A, three stations (secret-sharing decode via Table I) ------

struct TableRow {
    int sign;
    PauliLetter letter;
};

TableRow table_one_row(int q2, int q3) {
    if (q2 == 0 && q3 == 0) return {+1, PauliLetter::X};
    if (q2 == 1 && q3 == 1) return {-1, PauliLetter::X};
    return {-1, PauliLetter::Y};
}

AttackOutcome run_attack_a_n3(const ProtocolAInstance& inst, const Geometry& geom, Driver drv) {
    inst.validate();
    if (inst.n != 3) throw std::invalid_argument("attack_a_n3_qss: N=3 instance required");
    require_stations(geom, 3, "attack_a_n3_qss");
    if (!feasibility_check(geom).feasible)
        throw std::invalid_argument("attack_a_n3_qss: receiver must sit strictly inside the triangle");

    const int q2 = inst.q_shares[0], q3 = inst.q_shares[1];

    // register: encoded qubit, then the three GHZ shares of B1, B2, B3
    PureState enc = PureState::basis_state({2}, {inst.u});
    if (inst.q) enc = apply_gate(enc, NamedGate::single(NamedGate::Kind::H, 0));
    PureState reg = tensor(enc, make_ghz(3, {0, 0, 0}, 0));

    const auto m2 = drv.pauli(reg, PauliString::single(4, 2, q2 ? PauliLetter::Y : PauliLetter::X));
    const auto m3 = drv.pauli(m2.state, PauliString::single(4, 3, q3 ? PauliLetter::Y : PauliLetter::X));
    const int s2 = m2.outcome, s3 = m3.outcome;

    // B1 maps X->Z and Y->X eigenstates (H then S), then checks parity
    PureState state = apply_gate(m3.state, NamedGate::single(NamedGate::Kind::H, 1));
    state = apply_gate(state, NamedGate::single(NamedGate::Kind::S, 1));
    const auto bm = drv.bell(state, 0, 1);
    drv.finish();

    const auto row = table_one_row(q2, q3);
    const int v = sign_to_bit(row.sign * s2 * s3);
    const int u_hat = (inst.q == 0 ? bm.a : bm.b) ^ v;
    return finish_outcome({u_hat}, {inst.u}, cheat_completion(geom), 3,
                          {{"s2", s2}, {"s3", s3}, {"a'", bm.a}, {"b'", bm.b}});
}

// --- protocol A, N stations (tableau-driven decode) ----------------------

AttackOutcome run_attack_a_nn(const ProtocolAInstance& inst, const Geometry& geom, Driver drv) {
    inst.validate();
    if (inst.n < 3 || inst.n > 5) throw std::invalid_argument("attack_a_nn_qss: 3 <= N <= 5");
    require_stations(geom, inst.n, "attack_a_nn_qss");

    const int n = inst.n;
    PureState enc = PureState::basis_state({2}, {inst.u});
    if (inst.q) enc = apply_gate(enc, NamedGate::single(NamedGate::Kind::H, 0));
    PureState reg = tensor(enc, make_ghz(n, std::vector<int>(static_cast<std::size_t>(n), 0), 0));

    // B_i measures X or Y on his share; the cheaters track the same record
    // symbolically to learn the residual stabilizer on B1's share
    StabilizerTableau tab = StabilizerTableau::ghz(n, std::vector<int>(static_cast<std::size_t>(n), 0), 0);
    std::map<std::string, int> records;
    for (int i = 1; i < n; ++i) {
        const PauliLetter basis = inst.q_shares[static_cast<std::size_t>(i - 1)] ? PauliLetter::Y : PauliLetter::X;
        const auto m = drv.pauli(reg, PauliString::single(n + 1, i + 1, basis));
        reg = m.state;
        tab = tab.measure_forced(PauliString::single(n, i, basis), m.outcome).tableau;
        records["s" + std::to_string(i + 1)] = m.outcome;
    }
    const auto resid = tab.residual_stabilizer(0);
    if (!resid) throw std::logic_error("attack_a_nn_qss: no residual stabilizer after measurements");
    if (resid->letter(0) != ghz_party_rule(inst.q_shares))
        throw std::logic_error("attack_a_nn_qss: residual letter contradicts the parity rule");

    PureState state = apply_gate(reg, NamedGate::single(NamedGate::Kind::H, 1));
    state = apply_gate(state, NamedGate::single(NamedGate::Kind::S, 1));
    const auto bm = drv.bell(state, 0, 1);
    drv.finish();

    const int v = sign_to_bit(resid->sign());
    const int u_hat = (inst.q == 0 ? bm.a : bm.b) ^ v;
    records["a'"] = bm.a;
    records["b'"] = bm.b;
    return finish_outcome({u_hat}, {inst.u}, cheat_completion(geom), static_cast<std::size_t>(n),
                          std::move(records));
}

// --- protocol B, three stations ------------------------------------------

AttackOutcome run_attack_b_n3(const ProtocolBInstance& inst, const Geometry& geom, Driver drv) {
    inst.validate();
    if (inst.n != 3) throw std::invalid_argument("attack_b_n3: N=3 instance required");
    require_stations(geom, 3, "attack_b_n3");

    // qubits 0,1,2: code shares captured by B1,B2,B3
    // (3,4): Bell pair B2--B1, (5,6): Bell pair B3--B1
    PureState code = make_ghz(3, inst.a, inst.b1);
    for (int i = 0; i < 3; ++i) code = apply_product(code, inst.locals[static_cast<std::size_t>(i)], i);
    PureState reg = tensor(tensor(code, bell_pair()), bell_pair());
    for (int i = 0; i < 3; ++i) reg = apply_product(reg, inst.locals[static_cast<std::size_t>(i)].inverse(), i);

    reg = apply_gate(reg, NamedGate::cnot(1, 3));
    const auto m2 = drv.pauli(reg, PauliString::single(7, 1, PauliLetter::X));
    const auto m4 = drv.pauli(m2.state, PauliString::single(7, 3, PauliLetter::Z));
    reg = apply_gate(m4.state, NamedGate::cnot(2, 5));
    const auto m3 = drv.pauli(reg, PauliString::single(7, 2, PauliLetter::X));
    const auto m6 = drv.pauli(m3.state, PauliString::single(7, 5, PauliLetter::Z));
    const int s2 = m2.outcome, s4 = m4.outcome, s3 = m3.outcome, s6 = m6.outcome;

    // B1 measures qubits (1,5,7) in the GHZ code
    const auto pm = drv.project(m6.state, ghz_code(3), {0, 4, 6});
    drv.finish();

    const auto bits = ghz_code_index_bits(3, pm.index);
    const int b1_hat = bits[0] ^ sign_to_bit(s2 * s3);
    const int b2_hat = bits[1] ^ sign_to_bit(s4);
    const int b3_hat = bits[2] ^ sign_to_bit(s6);
    return finish_outcome({b1_hat, b2_hat, b3_hat}, inst.expected_answer(), cheat_completion(geom), 3,
                          {{"s2", s2}, {"s3", s3}, {"s4", s4}, {"s6", s6}, {"ghz", pm.index}});
}

// --- chain-cluster attack for Clifford share rotations --------------------

CodeSpace xy_plane_basis(double alpha) {
    // eigenbasis of cos(a) X + sin(a) Y
    CodeSpace b;
    const double s = 1.0 / std::sqrt(2.0);
    b.states.push_back(PureState::from_amplitudes({2}, {s, std::polar(s, alpha)}));
    b.states.push_back(PureState::from_amplitudes({2}, {s, -std::polar(s, alpha)}));
    return b;
}

AttackOutcome run_attack_a_csqc(const ModifiedInstance& inst, const Geometry& geom, Driver drv) {
    inst.validate();
    if (inst.n < 2 || inst.n > 3) throw std::invalid_argument("attack_a_csqc_chain: N in {2,3}");
    require_stations(geom, inst.n, "attack_a_csqc_chain");
    for (const auto& share : inst.shares)
        if (!share.is_clifford())
            throw std::invalid_argument("attack_a_csqc_chain: non-Clifford share rotation");

    const int n = inst.n;
    const int chain_len = 4 * n - 3;

    // block i implements M_i; the input-end block folds in an extra H so the
    // wire starts from |0>
    std::vector<Mat2> blocks; // in chain order, input end first: M_N..M_2
    for (int i = n; i >= 2; --i) {
        Mat2 m = inst.shares[static_cast<std::size_t>(i - 2)].to_matrix();
        if (i == n) m = mat2_mul(m, gate_matrix_h());
        blocks.push_back(m);
    }
    // measurement angles per chain qubit: ZXZ Euler angles then an X step
    std::vector<double> alphas;
    for (const auto& m : blocks) {
        const EulerZxz e = euler_zxz(m);
        alphas.push_back(-e.eta);
        alphas.push_back(-e.xi);
        alphas.push_back(-e.zeta);
        alphas.push_back(0.0);
    }

    // cluster chain |+>^L with CZ links; encoded qubit appended last
    PureState chain(std::vector<int>(static_cast<std::size_t>(chain_len), 2));
    for (int qb = 0; qb < chain_len; ++qb)
        chain = apply_gate(chain, NamedGate::single(NamedGate::Kind::H, qb));
    const std::vector<cplx> cz = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1};
    for (int qb = 0; qb + 1 < chain_len; ++qb) chain = apply_unitary(chain, cz, {qb, qb + 1});
    PureState reg = tensor(chain, inst.sent_state());
    const int enc_index = chain_len;

    std::vector<int> mbits;
    std::map<std::string, int> records;
    for (int qb = 0; qb < chain_len - 1; ++qb) {
        const auto m = drv.project(reg, xy_plane_basis(alphas[static_cast<std::size_t>(qb)]), {qb});
        reg = m.state;
        mbits.push_back(m.index);
        records["m" + std::to_string(qb + 1)] = m.index;
    }
    const auto bm = drv.bell(reg, enc_index, chain_len - 1);
    drv.finish();
    records["a'"] = bm.a;
    records["b'"] = bm.b;

    // classical decode: the realized wire operator is known once the
    // measurement record is shared
    Mat2 v = mat2_identity();
    for (int k = 0; k < chain_len - 1; ++k) {
        Mat2 step = mat2_mul(gate_matrix_h(), rot_z(-alphas[static_cast<std::size_t>(k)]));
        if (mbits[static_cast<std::size_t>(k)]) step = mat2_mul(gate_matrix_x(), step);
        v = mat2_mul(step, v);
    }
    const Mat2 u = inst.composed().to_matrix();
    const Vec2 plus = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    const Vec2 r = mat2_apply(mat2_mul(mat2_dagger(u), v), plus);
    const int x = std::norm(r[1]) > std::norm(r[0]) ? 1 : 0;
    if (std::min(std::norm(r[0]), std::norm(r[1])) > 1e-9)
        throw std::logic_error("attack_a_csqc_chain: wire output is not parallel to the code axis");

    // the shared parity operator: U Z U^dag = +- one Pauli letter
    const Mat2 sigma = mat2_mul(u, mat2_mul(gate_matrix_z(), mat2_dagger(u)));
    int parity = 0;
    const struct {
        Mat2 m;
        char letter;
    } paulis[] = {{gate_matrix_x(), 'X'}, {gate_matrix_y(), 'Y'}, {gate_matrix_z(), 'Z'}};
    for (const auto& p : paulis) {
        for (int sgn = +1; sgn >= -1; sgn -= 2) {
            double diff = 0.0;
            for (int k = 0; k < 4; ++k) diff += std::abs(sigma[static_cast<std::size_t>(k)] - double(sgn) * p.m[static_cast<std::size_t>(k)]);
            if (diff < 1e-9) {
                switch (p.letter) {
                    case 'Z': parity = 1 - 2 * bm.a; break;
                    case 'X': parity = 1 - 2 * bm.b; break;
                    case 'Y': parity = -(1 - 2 * bm.a) * (1 - 2 * bm.b); break;
                }
            }
        }
    }
    if (parity == 0) throw std::logic_error("attack_a_csqc_chain: share conjugation left the Pauli frame");

    const int u_hat = x ^ sign_to_bit(parity);
    return finish_outcome({u_hat}, {inst.u}, cheat_completion(geom), static_cast<std::size_t>(n),
                          std::move(records));
}

} // namespace

std::string strategy_name(ModifiedStrategy s) {
    switch (s) {
        case ModifiedStrategy::RandomGuess: return "random-guess";
        case ModifiedStrategy::MeasureHold: return "measure-hold";
        case ModifiedStrategy::TeleportOptimal: return "teleport-optimal";
    }
    return "?";
}

AttackOutcome attack_a_n2(const ProtocolAInstance& inst, const Geometry& geom, Rng& rng) {
    return run_attack_a_n2(inst, geom, Driver(&rng));
}
AttackOutcome attack_a_n2_forced(const ProtocolAInstance& inst, const Geometry& geom,
                                 std::span<const int> branch) {
    return run_attack_a_n2(inst, geom, Driver(branch));
}

AttackOutcome attack_a_n2_xyz(const PauliEncodingInstance& inst, const Geometry& geom, Rng& rng) {
    return run_attack_a_n2_xyz(inst, geom, Driver(&rng));
}
AttackOutcome attack_a_n2_xyz_forced(const PauliEncodingInstance& inst, const Geometry& geom,
                                     std::span<const int> branch) {
    return run_attack_a_n2_xyz(inst, geom, Driver(branch));
}

AttackOutcome attack_b_n2(const ProtocolBInstance& inst, const Geometry& geom, Rng& rng) {
    return run_attack_b_n2(inst, geom, Driver(&rng));
}
AttackOutcome attack_b_n2_forced(const ProtocolBInstance& inst, const Geometry& geom,
                                 std::span<const int> branch) {
    return run_attack_b_n2(inst, geom, Driver(branch));
}

AttackOutcome attack_a_n3_qss(const ProtocolAInstance& inst, const Geometry& geom, Rng& rng) {
    return run_attack_a_n3(inst, geom, Driver(&rng));
}
AttackOutcome attack_a_n3_qss_forced(const ProtocolAInstance& inst, const Geometry& geom,
                                     std::span<const int> branch) {
    return run_attack_a_n3(inst, geom, Driver(branch));
}

AttackOutcome attack_a_nn_qss(const ProtocolAInstance& inst, const Geometry& geom, Rng& rng) {
    return run_attack_a_nn(inst, geom, Driver(&rng));
}
AttackOutcome attack_a_nn_qss_forced(const ProtocolAInstance& inst, const Geometry& geom,
                                     std::span<const int> branch) {
    return run_attack_a_nn(inst, geom, Driver(branch));
}

AttackOutcome attack_b_n3(const ProtocolBInstance& inst, const Geometry& geom, Rng& rng) {
    return run_attack_b_n3(inst, geom, Driver(&rng));
}
AttackOutcome attack_b_n3_forced(const ProtocolBInstance& inst, const Geometry& geom,
                                 std::span<const int> branch) {
    return run_attack_b_n3(inst, geom, Driver(branch));
}

AttackOutcome attack_a_csqc_chain(const ModifiedInstance& inst, const Geometry& geom, Rng& rng) {
    return run_attack_a_csqc(inst, geom, Driver(&rng));
}
AttackOutcome attack_a_csqc_chain_forced(const ModifiedInstance& inst, const Geometry& geom,
                                         std::span<const int> branch) {
    return run_attack_a_csqc(inst, geom, Driver(branch));
}

double modified_teleport_success_prob(const BlochAngles& enc) {
    const Vec2 psi = {std::cos(enc.theta / 2), std::polar(std::sin(enc.theta / 2), enc.phi)};
    const Vec2 psb = {std::sin(enc.theta / 2), -std::polar(std::cos(enc.theta / 2), enc.phi)};
    auto bra = [](const Vec2& a, const Vec2& b) {
        return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
    };
    const Mat2 byproducts[3] = {gate_matrix_x(), gate_matrix_z(),
                                mat2_mul(gate_matrix_x(), gate_matrix_z())};
    double total = 1.0; // identity branch always succeeds
    for (const auto& d : byproducts) {
        const double keep = std::norm(bra(psi, mat2_apply(d, psi)));
        const double cross = std::norm(bra(psi, mat2_apply(d, psb)));
        total += std::max(keep, cross);
    }
    return total / 4.0;
}

AttackOutcome attack_modified(const ModifiedInstance& inst, ModifiedStrategy strategy,
                              const Geometry& geom, Rng& rng) {
    inst.validate();
    if (inst.n != 2) throw std::invalid_argument("attack_modified: N=2 instances only");
    if (!inst.has_angles) throw std::invalid_argument("attack_modified: explicit angles required");
    require_stations(geom, 2, "attack_modified");

    const PureState psi = make_qubit(inst.angles);
    const PureState psb = make_qubit(inst.angles, true);
    const PureState enc = inst.u == 0 ? psi : psb;

    std::map<std::string, int> records;
    int u_hat = 0;
    switch (strategy) {
        case ModifiedStrategy::RandomGuess: {
            const auto m = measure_pauli(enc, PauliString::parse("Z"), rng);
            u_hat = sign_to_bit(m.outcome);
            records["z"] = m.outcome;
            break;
        }
        case ModifiedStrategy::MeasureHold: {
            const auto m = measure_pauli(enc, PauliString::parse("Z"), rng);
            u_hat = sign_to_bit(m.outcome) ^ (inst.angles.theta > kPi / 2 ? 1 : 0);
            records["z"] = m.outcome;
            break;
        }
        case ModifiedStrategy::TeleportOptimal: {
            PureState reg = tensor(enc, bell_pair());
            const auto bm = bell_measure(reg, 0, 1, rng);
            CodeSpace basis;
            basis.states = {psi, psb};
            const auto pm = projective_measure_on(bm.state, basis, {2}, rng);
            // announce the likelier codeword given (outcome, s1, s2)
            Mat2 d = mat2_identity();
            if (bm.b) d = gate_matrix_z();
            if (bm.a) d = mat2_mul(gate_matrix_x(), d);
            const Vec2 mk = pm.index == 0 ? Vec2{psi.amp(0), psi.amp(1)} : Vec2{psb.amp(0), psb.amp(1)};
            auto score = [&](const PureState& cand) {
                const Vec2 dc = mat2_apply(d, {cand.amp(0), cand.amp(1)});
                return std::norm(std::conj(mk[0]) * dc[0] + std::conj(mk[1]) * dc[1]);
            };
            u_hat = score(psi) >= score(psb) ? 0 : 1; // ties answer |psi>
            records["s1"] = 1 - 2 * bm.b;
            records["s2"] = 1 - 2 * bm.a;
            records["b2"] = pm.index;
            break;
        }
    }
    return finish_outcome({u_hat}, {inst.u}, cheat_completion(geom), 2, std::move(records));
}

AttackOutcome attack_modified_entangle_memory(const ModifiedInstance& inst, const Geometry& geom,
                                              Rng& rng) {
    inst.validate();
    if (inst.n != 2 || !inst.has_angles)
        throw std::invalid_argument("attack_modified_entangle_memory: N=2 angle instance required");
    require_stations(geom, 2, "attack_modified_entangle_memory");

    const PureState psi = make_qubit(inst.angles);
    const PureState psb = make_qubit(inst.angles, true);
    const PureState enc = inst.u == 0 ? psi : psb;

    // B1 copies the qubit into his memory with a CNOT and forwards one half
    PureState reg = tensor(enc, PureState({2}));
    reg = apply_gate(reg, NamedGate::cnot(0, 1));
    CodeSpace basis;
    basis.states = {psi, psb};
    const auto m1 = projective_measure_on(reg, basis, {0}, rng);
    const auto m2 = projective_measure_on(m1.state, basis, {1}, rng);

    AttackOutcome out;
    out.answer = {m1.index};
    out.schedule = cheat_completion(geom);
    out.per_verifier = {{m1.index}, {m2.index}};
    out.consistent = m1.index == m2.index;
    out.records = {{"b1", m1.index}, {"b2", m2.index}};
    out.success = out.consistent && out.schedule.meets_deadline && m1.index == inst.u;
    return out;
}

} // namespace pbqc
