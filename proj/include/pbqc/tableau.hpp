// Clifford-only stabilizer tableau: n commuting, independent generators with
// real phases. Used for the symbolic Pauli bookkeeping of the cheating
// schemes; cross-checked against the dense simulator in the tests.
#pragma once

#include <optional>
#include <vector>

#include "pbqc/pauli.hpp"
#include "pbqc/rng.hpp"

namespace pbqc {

struct CliffordGate {
    enum class Kind { H, S, X, Y, Z, CNOT };
    Kind kind;
    std::vector<int> targets;

    static CliffordGate single(Kind k, int target);
    static CliffordGate cnot(int control, int target);
};

class StabilizerTableau {
public:
    static StabilizerTableau computational(int n); // <Z1, ..., Zn>
    static StabilizerTableau from_generators(std::vector<PauliString> generators);
    // stabilizers of (|a> + (-1)^b1 |~a>)/sqrt2
    static StabilizerTableau ghz(int n, const std::vector<int>& a, int b1);

    int size() const { return n_; }
    const std::vector<PauliString>& generators() const { return gens_; }

    StabilizerTableau apply_clifford(const CliffordGate& gate) const;

    struct Measurement;
    Measurement measure(const PauliString& pauli, Rng& rng) const;
    Measurement measure_forced(const PauliString& pauli, int outcome) const;

    // signed group membership: +1 / -1 when +-pauli is in the group
    std::optional<int> contains(const PauliString& pauli) const;
    // the single-qubit group element on this qubit, when one exists
    std::optional<PauliString> residual_stabilizer(int qubit) const;

private:
    StabilizerTableau(int n, std::vector<PauliString> gens) : n_(n), gens_(std::move(gens)) {}
    Measurement measure_impl(const PauliString& pauli, Rng* rng, int forced) const;

    int n_ = 0;
    std::vector<PauliString> gens_;
};

struct StabilizerTableau::Measurement {
    int outcome; // +1 or -1
    bool deterministic;
    StabilizerTableau tableau;
};

// basis of the first party's GHZ share after the others measure X (q=0) or
// Y (q=1): Y when an odd number of q bits are 1, X otherwise
PauliLetter ghz_party_rule(const std::vector<int>& q_bits);

} // namespace pbqc
