// Dense pure-state simulation of small registers of qubits and qutrits.
// States are immutable values: every operation returns a new state.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pbqc/linalg.hpp"
#include "pbqc/pauli.hpp"
#include "pbqc/rng.hpp"

namespace pbqc {

// forcing an outcome whose Born probability vanishes
struct ZeroProbabilityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// register size cap: 16 qubit-equivalents
inline constexpr std::size_t kMaxAmplitudes = 1u << 16;

struct BlochAngles {
    double theta = 0.0; // [0, pi]
    double phi = 0.0;   // [0, 2*pi)
};
void validate_angles(const BlochAngles& a);

class PureState {
public:
    // |0...0> on the given subsystem dimensions (each 2 or 3)
    explicit PureState(std::vector<int> dims);
    static PureState from_amplitudes(std::vector<int> dims, std::vector<cplx> amps);
    static PureState basis_state(std::vector<int> dims, const std::vector<int>& digits);

    const std::vector<int>& dims() const { return dims_; }
    int num_subsystems() const { return static_cast<int>(dims_.size()); }
    std::size_t size() const { return amps_.size(); }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    const cplx& amp(std::size_t i) const { return amps_[i]; }

    int digit(std::size_t index, int subsystem) const;
    std::size_t stride(int subsystem) const { return strides_[subsystem]; }

    double norm() const;

    // interleaved real/imag decimal text, one amplitude per line
    std::string to_debug_text() const;
    static PureState from_debug_text(const std::string& text);

private:
    std::vector<int> dims_;
    std::vector<std::size_t> strides_;
    std::vector<cplx> amps_;
};

struct NamedGate {
    enum class Kind { H, S, T, X, Y, Z, CNOT, U3 };
    Kind kind;
    std::vector<int> targets;
    double theta = 0.0, phi = 0.0, lambda = 0.0; // U3 only

    static NamedGate single(Kind k, int target);
    static NamedGate cnot(int control, int target);
    static NamedGate u3(int target, double theta, double phi, double lambda);
    Mat2 matrix2() const; // single-qubit kinds only
    NamedGate daggered() const;
    std::string name() const;
};

// single-qubit gate factors in product order: factors[0] is applied last
struct GateProduct {
    std::vector<NamedGate> factors;

    Mat2 to_matrix() const;
    GateProduct inverse() const;
    bool is_clifford(double tol = 1e-9) const;
    std::string str() const;
    static GateProduct parse(const std::string& tokens); // e.g. "H T H T T"
};

// '0' -> H, '1' -> T, string order = product order ("01011" -> HTHTT)
GateProduct compile_bit_program(const std::string& bits);

struct CodeSpace {
    std::vector<PureState> states;
    void validate(double tol = 1e-10) const; // pairwise orthonormal, same dims
};

// states
PureState make_qubit(const BlochAngles& angles, bool anti = false);
PureState bell_pair();
// (|a> + (-1)^b1 |~a>)/sqrt(2)
PureState make_ghz(int n, const std::vector<int>& a, int b1);
PureState tensor(const PureState& a, const PureState& b);

// the four Bell states |Phi_ab>
PureState bell_state(int a, int b);
CodeSpace bell_code();
// 2^n GHZ codewords indexed by bits (b1, b2..bn), bn fastest
CodeSpace ghz_code(int n);
std::vector<int> ghz_code_index_bits(int n, int index);

// gates
PureState apply_gate(const PureState& state, const NamedGate& gate);
PureState apply_product(const PureState& state, const GateProduct& product, int target);
// matrix is square with dimension = product of target dims, row-major
PureState apply_unitary(const PureState& state, const std::vector<cplx>& matrix,
                        const std::vector<int>& targets);

// inner products
cplx inner(const PureState& a, const PureState& b);
double fidelity(const PureState& a, const PureState& b);
bool equal_up_to_phase(const PureState& a, const PureState& b, double tol = 1e-9);

// Pauli action (phase tracked; letters must sit on qubit subsystems)
PureState apply_pauli(const PureState& state, const PauliString& p);

// measurements return the outcome and the collapsed state
struct PauliMeasurement {
    int outcome; // +1 or -1
    PureState state;
};
PauliMeasurement measure_pauli(const PureState& state, const PauliString& p, Rng& rng);
PauliMeasurement measure_pauli_forced(const PureState& state, const PauliString& p, int outcome);
double pauli_plus_probability(const PureState& state, const PauliString& p);

struct BellMeasurement {
    int a, b; // Bell-code index of the projected pair
    PureState state;
};
BellMeasurement bell_measure(const PureState& state, int q1, int q2, Rng& rng);
BellMeasurement bell_measure_forced(const PureState& state, int q1, int q2, int a, int b);

struct ProjectiveMeasurement {
    int index;
    PureState state;
};
ProjectiveMeasurement projective_measure(const PureState& state, const CodeSpace& basis, Rng& rng);
// basis elements live on the listed target subsystems
ProjectiveMeasurement projective_measure_on(const PureState& state, const CodeSpace& basis,
                                            const std::vector<int>& targets, Rng& rng);
ProjectiveMeasurement projective_measure_on_forced(const PureState& state, const CodeSpace& basis,
                                                   const std::vector<int>& targets, int index);
std::vector<double> projective_probabilities(const PureState& state, const CodeSpace& basis,
                                             const std::vector<int>& targets);

struct ClosureWitness {
    std::size_t byproduct_index;
    std::size_t codeword_index;
};
struct ClosureResult {
    bool closed;
    std::optional<ClosureWitness> witness;
};
ClosureResult code_closure_check(const CodeSpace& code, const std::vector<PauliString>& byproducts);

} // namespace pbqc
