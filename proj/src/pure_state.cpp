#include "pbqc/pure_state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pbqc {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNormTol = 1e-10;

std::vector<std::size_t> make_strides(const std::vector<int>& dims) {
    std::vector<std::size_t> s(dims.size());
    std::size_t acc = 1;
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        s[k] = acc;
        acc *= static_cast<std::size_t>(dims[k]);
    }
    return s;
}

std::size_t total_dim(const std::vector<int>& dims) {
    std::size_t acc = 1;
    for (int d : dims) {
        if (d != 2 && d != 3) throw std::invalid_argument("subsystem dimensions must be 2 or 3");
        acc *= static_cast<std::size_t>(d);
        if (acc > kMaxAmplitudes) throw std::invalid_argument("register exceeds the 16-qubit-equivalent cap");
    }
    if (dims.empty()) throw std::invalid_argument("empty register");
    return acc;
}

void check_qubit_target(const PureState& s, int t) {
    if (t < 0 || t >= s.num_subsystems()) throw std::invalid_argument("target out of range");
    if (s.dims()[t] != 2) throw std::invalid_argument("gate targets a non-qubit subsystem");
}

} // namespace

void validate_angles(const BlochAngles& a) {
    if (!(a.theta >= 0.0 && a.theta <= kPi)) throw std::invalid_argument("theta outside [0, pi]");
    if (!(a.phi >= 0.0 && a.phi < 2 * kPi)) throw std::invalid_argument("phi outside [0, 2*pi)");
}

PureState::PureState(std::vector<int> dims)
    : dims_(std::move(dims)), strides_(make_strides(dims_)), amps_(total_dim(dims_)) {
    amps_[0] = 1.0;
}

PureState PureState::from_amplitudes(std::vector<int> dims, std::vector<cplx> amps) {
    PureState s(std::move(dims));
    if (amps.size() != s.amps_.size()) throw std::invalid_argument("amplitude vector has wrong length");
    s.amps_ = std::move(amps);
    if (std::abs(s.norm() - 1.0) > kNormTol) throw std::invalid_argument("state is not normalized");
    return s;
}

PureState PureState::basis_state(std::vector<int> dims, const std::vector<int>& digits) {
    PureState s(std::move(dims));
    if (digits.size() != s.dims_.size()) throw std::invalid_argument("digit count mismatch");
    std::size_t idx = 0;
    for (std::size_t k = 0; k < digits.size(); ++k) {
        if (digits[k] < 0 || digits[k] >= s.dims_[k]) throw std::invalid_argument("digit out of range");
        idx += static_cast<std::size_t>(digits[k]) * s.strides_[k];
    }
    s.amps_[0] = 0.0;
    s.amps_[idx] = 1.0;
    return s;
}

int PureState::digit(std::size_t index, int subsystem) const {
    return static_cast<int>((index / strides_[subsystem]) % static_cast<std::size_t>(dims_[subsystem]));
}

double PureState::norm() const {
    double acc = 0.0;
    for (const auto& a : amps_) acc += std::norm(a);
    return std::sqrt(acc);
}

std::string PureState::to_debug_text() const {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t k = 0; k < dims_.size(); ++k) os << (k ? " " : "") << dims_[k];
    os << "\n";
    for (const auto& a : amps_) os << a.real() << " " << a.imag() << "\n";
    return os.str();
}

PureState PureState::from_debug_text(const std::string& text) {
    std::istringstream is(text);
    std::string header;
    if (!std::getline(is, header)) throw std::invalid_argument("empty state text");
    std::istringstream hs(header);
    std::vector<int> dims;
    int d;
    while (hs >> d) dims.push_back(d);
    PureState s(dims);
    std::vector<cplx> amps;
    double re, im;
    while (is >> re >> im) amps.emplace_back(re, im);
    return from_amplitudes(dims, std::move(amps));
}

NamedGate NamedGate::single(Kind k, int target) {
    if (k == Kind::CNOT) throw std::invalid_argument("CNOT takes two targets");
    NamedGate g;
    g.kind = k;
    g.targets = {target};
    return g;
}

NamedGate NamedGate::cnot(int control, int target) {
    if (control == target) throw std::invalid_argument("CNOT control equals target");
    NamedGate g;
    g.kind = Kind::CNOT;
    g.targets = {control, target};
    return g;
}

NamedGate NamedGate::u3(int target, double theta, double phi, double lambda) {
    NamedGate g;
    g.kind = Kind::U3;
    g.targets = {target};
    g.theta = theta;
    g.phi = phi;
    g.lambda = lambda;
    return g;
}

Mat2 NamedGate::matrix2() const {
    switch (kind) {
        case Kind::H: return gate_matrix_h();
        case Kind::S: return gate_matrix_s();
        case Kind::T: return gate_matrix_t();
        case Kind::X: return gate_matrix_x();
        case Kind::Y: return gate_matrix_y();
        case Kind::Z: return gate_matrix_z();
        case Kind::U3: return gate_matrix_u3(theta, phi, lambda);
        case Kind::CNOT: break;
    }
    throw std::invalid_argument("matrix2: not a single-qubit gate");
}

NamedGate NamedGate::daggered() const {
    NamedGate g = *this;
    switch (kind) {
        case Kind::H:
        case Kind::X:
        case Kind::Y:
        case Kind::Z:
        case Kind::CNOT:
            return g;
        case Kind::S:
        case Kind::T: {
            // express the inverse as U3 with the right diagonal phases:
            // S^dag = diag(1, -i), T^dag = diag(1, e^{-i pi/4}); use U3(0,0,lambda)
            g.kind = Kind::U3;
            g.theta = 0.0;
            g.phi = 0.0;
            g.lambda = (kind == Kind::S) ? -kPi / 2 : -kPi / 4;
            return g;
        }
        case Kind::U3: {
            // inverse of u3(t,p,l) is u3(-t,-l,-p) up to global phase
            g.theta = -theta;
            g.phi = -lambda;
            g.lambda = -phi;
            return g;
        }
    }
    throw std::logic_error("daggered: unreachable");
}

std::string NamedGate::name() const {
    switch (kind) {
        case Kind::H: return "H";
        case Kind::S: return "S";
        case Kind::T: return "T";
        case Kind::X: return "X";
        case Kind::Y: return "Y";
        case Kind::Z: return "Z";
        case Kind::CNOT: return "CNOT";
        case Kind::U3: return "U3";
    }
    return "?";
}

Mat2 GateProduct::to_matrix() const {
    Mat2 m = mat2_identity();
    for (const auto& g : factors) m = mat2_mul(m, g.matrix2());
    return m;
}

GateProduct GateProduct::inverse() const {
    GateProduct inv;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) inv.factors.push_back(it->daggered());
    return inv;
}

bool GateProduct::is_clifford(double tol) const { return mat2_is_clifford(to_matrix(), tol); }

std::string GateProduct::str() const {
    if (factors.empty()) return "I";
    std::string out;
    for (std::size_t k = 0; k < factors.size(); ++k) {
        if (k) out += " ";
        out += factors[k].name();
    }
    return out;
}

GateProduct GateProduct::parse(const std::string& tokens) {
    GateProduct p;
    std::istringstream is(tokens);
    std::string tok;
    while (is >> tok) {
        if (tok == "I") continue;
        NamedGate::Kind k;
        if (tok == "H") k = NamedGate::Kind::H;
        else if (tok == "S") k = NamedGate::Kind::S;
        else if (tok == "T") k = NamedGate::Kind::T;
        else if (tok == "X") k = NamedGate::Kind::X;
        else if (tok == "Y") k = NamedGate::Kind::Y;
        else if (tok == "Z") k = NamedGate::Kind::Z;
        else throw std::invalid_argument("unknown gate token '" + tok + "'");
        p.factors.push_back(NamedGate::single(k, 0));
    }
    return p;
}

GateProduct compile_bit_program(const std::string& bits) {
    GateProduct p;
    for (char c : bits) {
        if (c == '0') p.factors.push_back(NamedGate::single(NamedGate::Kind::H, 0));
        else if (c == '1') p.factors.push_back(NamedGate::single(NamedGate::Kind::T, 0));
        else throw std::invalid_argument("program bits must be 0/1");
    }
    return p;
}

void CodeSpace::validate(double tol) const {
    if (states.empty()) throw std::invalid_argument("empty code space");
    const auto& dims = states[0].dims();
    for (const auto& s : states)
        if (s.dims() != dims) throw std::invalid_argument("code states on mismatched registers");
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = i; j < states.size(); ++j) {
            const cplx ip = inner(states[i], states[j]);
            const double want = (i == j) ? 1.0 : 0.0;
            if (std::abs(std::abs(ip) - want) > tol)
                throw std::invalid_argument("code states are not orthonormal");
        }
}

PureState make_qubit(const BlochAngles& a, bool anti) {
    validate_angles(a);
    const double c = std::cos(a.theta / 2), s = std::sin(a.theta / 2);
    std::vector<cplx> amps(2);
    if (!anti) {
        amps[0] = c;
        amps[1] = std::polar(s, a.phi);
    } else {
        amps[0] = s;
        amps[1] = -std::polar(c, a.phi);
    }
    return PureState::from_amplitudes({2}, std::move(amps));
}

PureState bell_pair() { return bell_state(0, 0); }

PureState bell_state(int a, int b) {
    std::vector<cplx> amps(4);
    const double s = 1.0 / std::sqrt(2.0);
    amps[static_cast<std::size_t>(0 * 2 + a)] = s;
    amps[static_cast<std::size_t>(1 * 2 + (1 - a))] = (b ? -s : s);
    return PureState::from_amplitudes({2, 2}, std::move(amps));
}

PureState make_ghz(int n, const std::vector<int>& a, int b1) {
    if (n < 2) throw std::invalid_argument("make_ghz: n >= 2 required");
    if (static_cast<int>(a.size()) != n) throw std::invalid_argument("make_ghz: |a| must equal n");
    std::vector<int> dims(n, 2);
    std::size_t i0 = 0, i1 = 0;
    std::size_t stride = static_cast<std::size_t>(1) << (n - 1);
    for (int k = 0; k < n; ++k, stride >>= 1) {
        if (a[k]) i0 += stride;
        else i1 += stride;
    }
    std::vector<cplx> amps(static_cast<std::size_t>(1) << n);
    const double s = 1.0 / std::sqrt(2.0);
    amps[i0] = s;
    amps[i1] = (b1 ? -s : s);
    return PureState::from_amplitudes(std::move(dims), std::move(amps));
}

PureState tensor(const PureState& a, const PureState& b) {
    std::vector<int> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    std::vector<cplx> amps(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) amps[i * b.size() + j] = a.amp(i) * b.amp(j);
    return PureState::from_amplitudes(std::move(dims), std::move(amps));
}

CodeSpace bell_code() {
    CodeSpace c;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) c.states.push_back(bell_state(a, b));
    return c;
}

std::vector<int> ghz_code_index_bits(int n, int index) {
    std::vector<int> bits(n);
    for (int k = 0; k < n; ++k) bits[k] = (index >> (n - 1 - k)) & 1;
    return bits;
}

CodeSpace ghz_code(int n) {
    CodeSpace c;
    for (int idx = 0; idx < (1 << n); ++idx) {
        const auto bits = ghz_code_index_bits(n, idx); // (b1, b2..bn)
        std::vector<int> a(n, 0);
        for (int k = 1; k < n; ++k) a[k] = bits[k];
        c.states.push_back(make_ghz(n, a, bits[0]));
    }
    return c;
}

PureState apply_unitary(const PureState& state, const std::vector<cplx>& matrix,
                        const std::vector<int>& targets) {
    if (targets.empty()) throw std::invalid_argument("apply_unitary: no targets");
    std::size_t block = 1;
    for (int t : targets) {
        if (t < 0 || t >= state.num_subsystems()) throw std::invalid_argument("target out of range");
        block *= static_cast<std::size_t>(state.dims()[t]);
    }
    for (std::size_t i = 0; i < targets.size(); ++i)
        for (std::size_t j = i + 1; j < targets.size(); ++j)
            if (targets[i] == targets[j]) throw std::invalid_argument("duplicate target");
    if (matrix.size() != block * block) throw std::invalid_argument("matrix size does not match targets");

    // offsets of each target-digit combination
    std::vector<std::size_t> offsets(block);
    for (std::size_t m = 0; m < block; ++m) {
        std::size_t rem = m, off = 0;
        for (int k = static_cast<int>(targets.size()) - 1; k >= 0; --k) {
            const int t = targets[static_cast<std::size_t>(k)];
            const std::size_t d = static_cast<std::size_t>(state.dims()[t]);
            off += (rem % d) * state.stride(t);
            rem /= d;
        }
        offsets[m] = off;
    }

    std::vector<cplx> out = state.amplitudes();
    std::vector<cplx> in(block), res(block);
    for (std::size_t base = 0; base < state.size(); ++base) {
        bool is_base = true;
        for (int t : targets)
            if (state.digit(base, t) != 0) { is_base = false; break; }
        if (!is_base) continue;
        for (std::size_t m = 0; m < block; ++m) in[m] = out[base + offsets[m]];
        for (std::size_t r = 0; r < block; ++r) {
            cplx acc = 0.0;
            for (std::size_t cidx = 0; cidx < block; ++cidx) acc += matrix[r * block + cidx] * in[cidx];
            res[r] = acc;
        }
        for (std::size_t m = 0; m < block; ++m) out[base + offsets[m]] = res[m];
    }
    return PureState::from_amplitudes(state.dims(), std::move(out));
}

PureState apply_gate(const PureState& state, const NamedGate& gate) {
    if (gate.kind == NamedGate::Kind::CNOT) {
        check_qubit_target(state, gate.targets[0]);
        check_qubit_target(state, gate.targets[1]);
        const std::vector<cplx> cnot = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0};
        return apply_unitary(state, cnot, gate.targets);
    }
    check_qubit_target(state, gate.targets[0]);
    const Mat2 m = gate.matrix2();
    return apply_unitary(state, {m[0], m[1], m[2], m[3]}, gate.targets);
}

PureState apply_product(const PureState& state, const GateProduct& product, int target) {
    const Mat2 m = product.to_matrix();
    return apply_unitary(state, {m[0], m[1], m[2], m[3]}, {target});
}

cplx inner(const PureState& a, const PureState& b) {
    if (a.dims() != b.dims()) throw std::invalid_argument("inner: register mismatch");
    cplx acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a.amp(i)) * b.amp(i);
    return acc;
}

double fidelity(const PureState& a, const PureState& b) { return std::norm(inner(a, b)); }

bool equal_up_to_phase(const PureState& a, const PureState& b, double tol) {
    return std::abs(std::abs(inner(a, b)) - 1.0) <= tol;
}

PureState apply_pauli(const PureState& state, const PauliString& p) {
    if (p.size() != state.num_subsystems()) throw std::invalid_argument("Pauli size mismatch");
    std::vector<cplx> out(state.size());
    // phase of the string itself
    cplx phase = 1.0;
    switch (((p.phase_power() % 4) + 4) % 4) {
        case 0: phase = 1.0; break;
        case 1: phase = cplx(0.0, 1.0); break;
        case 2: phase = -1.0; break;
        case 3: phase = cplx(0.0, -1.0); break;
    }
    for (int q = 0; q < p.size(); ++q)
        if (p.letter(q) != PauliLetter::I && state.dims()[q] != 2)
            throw std::invalid_argument("Pauli letter on a non-qubit subsystem");
    for (std::size_t i = 0; i < state.size(); ++i) {
        const cplx a = state.amp(i);
        if (a == cplx(0.0)) continue;
        std::size_t j = i;
        cplx f = phase;
        for (int q = 0; q < p.size(); ++q) {
            const int bit = state.digit(i, q);
            switch (p.letter(q)) {
                case PauliLetter::I: break;
                case PauliLetter::X:
                    j = bit ? j - state.stride(q) : j + state.stride(q);
                    break;
                case PauliLetter::Y:
                    j = bit ? j - state.stride(q) : j + state.stride(q);
                    f *= bit ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
                    break;
                case PauliLetter::Z:
                    if (bit) f = -f;
                    break;
            }
        }
        out[j] += f * a;
    }
    return PureState::from_amplitudes(state.dims(), std::move(out));
}

double pauli_plus_probability(const PureState& state, const PauliString& p) {
    if (!p.phase_is_real()) throw std::invalid_argument("measured Pauli must have a real phase");
    const PureState ps = apply_pauli(state, p);
    const double expect = inner(state, ps).real();
    return std::min(1.0, std::max(0.0, 0.5 * (1.0 + expect)));
}

namespace {

PauliMeasurement collapse_pauli(const PureState& state, const PauliString& p, int outcome, double prob) {
    const PureState ps = apply_pauli(state, p);
    std::vector<cplx> amps(state.size());
    const double scale = 1.0 / (2.0 * std::sqrt(prob));
    for (std::size_t i = 0; i < state.size(); ++i)
        amps[i] = (state.amp(i) + static_cast<double>(outcome) * ps.amp(i)) * scale;
    return {outcome, PureState::from_amplitudes(state.dims(), std::move(amps))};
}

} // namespace

PauliMeasurement measure_pauli(const PureState& state, const PauliString& p, Rng& rng) {
    const double pp = pauli_plus_probability(state, p);
    // zero-probability branches are never selected
    int outcome;
    if (pp < 1e-12) outcome = -1;
    else if (pp > 1.0 - 1e-12) outcome = +1;
    else outcome = rng.uniform() < pp ? +1 : -1;
    return collapse_pauli(state, p, outcome, outcome == +1 ? pp : 1.0 - pp);
}

PauliMeasurement measure_pauli_forced(const PureState& state, const PauliString& p, int outcome) {
    if (outcome != 1 && outcome != -1) throw std::invalid_argument("forced outcome must be +-1");
    const double pp = pauli_plus_probability(state, p);
    const double prob = outcome == +1 ? pp : 1.0 - pp;
    if (prob < 1e-12) throw ZeroProbabilityError("forced outcome has zero probability");
    return collapse_pauli(state, p, outcome, prob);
}

std::vector<double> projective_probabilities(const PureState& state, const CodeSpace& basis,
                                             const std::vector<int>& targets) {
    std::vector<double> probs(basis.states.size());
    for (std::size_t k = 0; k < basis.states.size(); ++k) {
        // norm^2 of the partial overlap <b_k|_targets |psi>
        const PureState& bk = basis.states[k];
        double acc = 0.0;
        // group amplitudes by the non-target configuration
        // res[rest] = sum_over_target_configs conj(bk[t]) * amp
        // accumulate directly: iterate all indices, bucket by rest-part
        std::vector<cplx> res(state.size() / bk.size(), 0.0);
        for (std::size_t i = 0; i < state.size(); ++i) {
            std::size_t tlin = 0, rest = 0;
            std::size_t rmul = 1;
            // rest index built over non-target subsystems (row-major order)
            for (int q = state.num_subsystems() - 1; q >= 0; --q) {
                bool is_t = false;
                std::size_t tpos = 0;
                for (std::size_t m = 0; m < targets.size(); ++m)
                    if (targets[m] == q) { is_t = true; tpos = m; break; }
                if (is_t) {
                    std::size_t mul = 1;
                    for (std::size_t m2 = tpos + 1; m2 < targets.size(); ++m2)
                        mul *= static_cast<std::size_t>(state.dims()[targets[m2]]);
                    tlin += static_cast<std::size_t>(state.digit(i, q)) * mul;
                } else {
                    rest += static_cast<std::size_t>(state.digit(i, q)) * rmul;
                    rmul *= static_cast<std::size_t>(state.dims()[q]);
                }
            }
            res[rest] += std::conj(bk.amp(tlin)) * state.amp(i);
        }
        for (const auto& r : res) acc += std::norm(r);
        probs[k] = acc;
    }
    return probs;
}

namespace {

ProjectiveMeasurement collapse_projective(const PureState& state, const CodeSpace& basis,
                                          const std::vector<int>& targets, int index, double prob) {
    const PureState& bk = basis.states[static_cast<std::size_t>(index)];
    // residual vector over non-targets
    std::vector<cplx> res(state.size() / bk.size(), 0.0);
    std::vector<std::size_t> tlin_of(state.size()), rest_of(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        std::size_t tlin = 0, rest = 0, rmul = 1;
        for (int q = state.num_subsystems() - 1; q >= 0; --q) {
            bool is_t = false;
            std::size_t tpos = 0;
            for (std::size_t m = 0; m < targets.size(); ++m)
                if (targets[m] == q) { is_t = true; tpos = m; break; }
            if (is_t) {
                std::size_t mul = 1;
                for (std::size_t m2 = tpos + 1; m2 < targets.size(); ++m2)
                    mul *= static_cast<std::size_t>(state.dims()[targets[m2]]);
                tlin += static_cast<std::size_t>(state.digit(i, q)) * mul;
            } else {
                rest += static_cast<std::size_t>(state.digit(i, q)) * rmul;
                rmul *= static_cast<std::size_t>(state.dims()[q]);
            }
        }
        tlin_of[i] = tlin;
        rest_of[i] = rest;
        res[rest] += std::conj(bk.amp(tlin)) * state.amp(i);
    }
    const double scale = 1.0 / std::sqrt(prob);
    std::vector<cplx> amps(state.size());
    for (std::size_t i = 0; i < state.size(); ++i)
        amps[i] = bk.amp(tlin_of[i]) * res[rest_of[i]] * scale;
    return {index, PureState::from_amplitudes(state.dims(), std::move(amps))};
}

void check_projective_args(const PureState& state, const CodeSpace& basis, const std::vector<int>& targets) {
    basis.validate();
    std::size_t tdim = 1;
    std::vector<int> tdims;
    for (int t : targets) {
        if (t < 0 || t >= state.num_subsystems()) throw std::invalid_argument("target out of range");
        tdims.push_back(state.dims()[t]);
        tdim *= static_cast<std::size_t>(state.dims()[t]);
    }
    if (basis.states[0].dims() != tdims) throw std::invalid_argument("basis register does not match targets");
    if (basis.states.size() != tdim) throw std::invalid_argument("basis does not span the measured space");
}

} // namespace

ProjectiveMeasurement projective_measure_on(const PureState& state, const CodeSpace& basis,
                                            const std::vector<int>& targets, Rng& rng) {
    check_projective_args(state, basis, targets);
    const auto probs = projective_probabilities(state, basis, targets);
    double r = rng.uniform();
    int index = -1;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        if (probs[k] < 1e-12) continue; // zero-probability branch never selected
        index = static_cast<int>(k);
        if (r < probs[k]) break;
        r -= probs[k];
    }
    return collapse_projective(state, basis, targets, index, probs[static_cast<std::size_t>(index)]);
}

ProjectiveMeasurement projective_measure_on_forced(const PureState& state, const CodeSpace& basis,
                                                   const std::vector<int>& targets, int index) {
    check_projective_args(state, basis, targets);
    const auto probs = projective_probabilities(state, basis, targets);
    if (index < 0 || index >= static_cast<int>(probs.size()))
        throw std::invalid_argument("forced index out of range");
    if (probs[static_cast<std::size_t>(index)] < 1e-12)
        throw ZeroProbabilityError("forced outcome has zero probability");
    return collapse_projective(state, basis, targets, index, probs[static_cast<std::size_t>(index)]);
}

ProjectiveMeasurement projective_measure(const PureState& state, const CodeSpace& basis, Rng& rng) {
    std::vector<int> targets(state.dims().size());
    for (std::size_t k = 0; k < targets.size(); ++k) targets[k] = static_cast<int>(k);
    return projective_measure_on(state, basis, targets, rng);
}

BellMeasurement bell_measure(const PureState& state, int q1, int q2, Rng& rng) {
    check_qubit_target(state, q1);
    check_qubit_target(state, q2);
    const auto m = projective_measure_on(state, bell_code(), {q1, q2}, rng);
    return {m.index / 2, m.index % 2, m.state};
}

BellMeasurement bell_measure_forced(const PureState& state, int q1, int q2, int a, int b) {
    check_qubit_target(state, q1);
    check_qubit_target(state, q2);
    const auto m = projective_measure_on_forced(state, bell_code(), {q1, q2}, a * 2 + b);
    return {a, b, m.state};
}

ClosureResult code_closure_check(const CodeSpace& code, const std::vector<PauliString>& byproducts) {
    code.validate();
    for (std::size_t bi = 0; bi < byproducts.size(); ++bi) {
        for (std::size_t ci = 0; ci < code.states.size(); ++ci) {
            const PureState mapped = apply_pauli(code.states[ci], byproducts[bi]);
            bool hit = false;
            for (const auto& target : code.states)
                if (equal_up_to_phase(mapped, target)) { hit = true; break; }
            if (!hit) return {false, ClosureWitness{bi, ci}};
        }
    }
    return {true, std::nullopt};
}

} // namespace pbqc
