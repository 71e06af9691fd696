#include "pbqc/tableau.hpp"

#include <stdexcept>

namespace pbqc {

CliffordGate CliffordGate::single(Kind k, int target) {
    if (k == Kind::CNOT) throw std::invalid_argument("CNOT takes two targets");
    return {k, {target}};
}

CliffordGate CliffordGate::cnot(int control, int target) {
    if (control == target) throw std::invalid_argument("CNOT control equals target");
    return {Kind::CNOT, {control, target}};
}

namespace {

// conjugation of one phased Pauli by a Clifford gate, CHP-style bit rules
PauliString conjugate(const PauliString& p, const CliffordGate& g) {
    const int n = p.size();
    std::vector<bool> x(n), z(n);
    for (int q = 0; q < n; ++q) {
        x[q] = p.x_bit(q);
        z[q] = p.z_bit(q);
    }
    int phase = p.phase_power(); // generators keep this in {0,2}
    auto flip = [&phase]() { phase = (phase + 2) % 4; };

    switch (g.kind) {
        case CliffordGate::Kind::H: {
            const int a = g.targets[0];
            if (x[a] && z[a]) flip();
            std::swap(x[a], z[a]);
            break;
        }
        case CliffordGate::Kind::S: {
            const int a = g.targets[0];
            if (x[a] && z[a]) flip();
            z[a] = z[a] ^ x[a];
            break;
        }
        case CliffordGate::Kind::X: {
            const int a = g.targets[0];
            if (z[a]) flip();
            break;
        }
        case CliffordGate::Kind::Y: {
            const int a = g.targets[0];
            if (x[a] != z[a]) flip();
            break;
        }
        case CliffordGate::Kind::Z: {
            const int a = g.targets[0];
            if (x[a]) flip();
            break;
        }
        case CliffordGate::Kind::CNOT: {
            const int c = g.targets[0], t = g.targets[1];
            if (x[c] && z[t] && (x[t] == z[c])) flip();
            x[t] = x[t] ^ x[c];
            z[c] = z[c] ^ z[t];
            break;
        }
    }
    std::vector<PauliLetter> letters(n);
    for (int q = 0; q < n; ++q) {
        if (x[q] && z[q]) letters[q] = PauliLetter::Y;
        else if (x[q]) letters[q] = PauliLetter::X;
        else if (z[q]) letters[q] = PauliLetter::Z;
        else letters[q] = PauliLetter::I;
    }
    return PauliString(phase, std::move(letters));
}

// GF(2) rank of the generators' symplectic rows
int symplectic_rank(const std::vector<PauliString>& gens, int n) {
    std::vector<std::vector<bool>> rows;
    for (const auto& g : gens) {
        std::vector<bool> r(2 * n);
        for (int q = 0; q < n; ++q) {
            r[q] = g.x_bit(q);
            r[n + q] = g.z_bit(q);
        }
        rows.push_back(std::move(r));
    }
    int rank = 0;
    for (int col = 0; col < 2 * n && rank < static_cast<int>(rows.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][col]) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r)
            if (r != rank && rows[r][col])
                for (int c2 = 0; c2 < 2 * n; ++c2) rows[r][c2] = rows[r][c2] ^ rows[rank][c2];
        ++rank;
    }
    return rank;
}

} // namespace

StabilizerTableau StabilizerTableau::computational(int n) {
    std::vector<PauliString> gens;
    for (int q = 0; q < n; ++q) gens.push_back(PauliString::single(n, q, PauliLetter::Z));
    return StabilizerTableau(n, std::move(gens));
}

StabilizerTableau StabilizerTableau::from_generators(std::vector<PauliString> generators) {
    if (generators.empty()) throw std::invalid_argument("no generators");
    const int n = generators[0].size();
    if (static_cast<int>(generators.size()) != n)
        throw std::invalid_argument("need exactly n generators for n qubits");
    for (const auto& g : generators) {
        if (g.size() != n) throw std::invalid_argument("generator size mismatch");
        if (!g.phase_is_real()) throw std::invalid_argument("generator phase must be +-1");
    }
    for (std::size_t i = 0; i < generators.size(); ++i)
        for (std::size_t j = i + 1; j < generators.size(); ++j)
            if (!generators[i].commutes_with(generators[j]))
                throw std::invalid_argument("generators do not commute");
    if (symplectic_rank(generators, n) != n)
        throw std::invalid_argument("generators are not independent");
    return StabilizerTableau(n, std::move(generators));
}

StabilizerTableau StabilizerTableau::ghz(int n, const std::vector<int>& a, int b1) {
    if (n < 2) throw std::invalid_argument("ghz: n >= 2");
    if (static_cast<int>(a.size()) != n) throw std::invalid_argument("ghz: |a| must equal n");
    std::vector<PauliString> gens;
    // (-1)^b1 * (-1)^{sum a} X...X ; sign such that the state is stabilized:
    // X...X (|a> + s|~a>)/sqrt2 = (|~a> + s|a>)/sqrt2 = s * state, s = (-1)^b1
    {
        std::vector<PauliLetter> ls(n, PauliLetter::X);
        gens.emplace_back(b1 ? 2 : 0, std::move(ls));
    }
    for (int q = 1; q < n; ++q) {
        std::vector<PauliLetter> ls(n, PauliLetter::I);
        ls[q - 1] = PauliLetter::Z;
        ls[q] = PauliLetter::Z;
        const int sign_pow = (a[q - 1] ^ a[q]) ? 2 : 0; // Z_{q-1}Z_q eigenvalue (-1)^{a_{q-1}+a_q}
        gens.emplace_back(sign_pow, std::move(ls));
    }
    return from_generators(std::move(gens));
}

StabilizerTableau StabilizerTableau::apply_clifford(const CliffordGate& gate) const {
    for (int t : gate.targets)
        if (t < 0 || t >= n_) throw std::invalid_argument("gate target out of range");
    std::vector<PauliString> gens;
    gens.reserve(gens_.size());
    for (const auto& g : gens_) gens.push_back(conjugate(g, gate));
    return StabilizerTableau(n_, std::move(gens));
}

std::optional<int> StabilizerTableau::contains(const PauliString& pauli) const {
    if (pauli.size() != n_) throw std::invalid_argument("pauli size mismatch");
    if (!pauli.phase_is_real()) return std::nullopt;
    // solve for a generator subset matching the symplectic bits of pauli
    std::vector<std::vector<bool>> rows(gens_.size(), std::vector<bool>(2 * n_));
    for (std::size_t r = 0; r < gens_.size(); ++r)
        for (int q = 0; q < n_; ++q) {
            rows[r][q] = gens_[r].x_bit(q);
            rows[r][n_ + q] = gens_[r].z_bit(q);
        }
    std::vector<bool> want(2 * n_);
    for (int q = 0; q < n_; ++q) {
        want[q] = pauli.x_bit(q);
        want[n_ + q] = pauli.z_bit(q);
    }
    std::vector<std::uint64_t> combo(gens_.size());
    for (std::size_t r = 0; r < gens_.size(); ++r) combo[r] = 1ull << r;
    std::uint64_t want_combo = 0;
    int rank = 0;
    for (int col = 0; col < 2 * n_; ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][col]) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        std::swap(combo[rank], combo[pivot]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r)
            if (r != rank && rows[r][col]) {
                for (int c2 = 0; c2 < 2 * n_; ++c2) rows[r][c2] = rows[r][c2] ^ rows[rank][c2];
                combo[r] ^= combo[rank];
            }
        if (want[col]) {
            for (int c2 = 0; c2 < 2 * n_; ++c2) want[c2] = want[c2] ^ rows[rank][c2];
            want_combo ^= combo[rank];
        }
        ++rank;
    }
    for (int c2 = 0; c2 < 2 * n_; ++c2)
        if (want[c2]) return std::nullopt; // not in the group modulo phase
    // multiply out the subset to compare phases
    PauliString prod = PauliString::identity(n_);
    for (std::size_t r = 0; r < gens_.size(); ++r)
        if (want_combo & (1ull << r)) prod = prod.times(gens_[r]);
    if (prod.letters() != pauli.letters()) throw std::logic_error("contains: letter mismatch");
    const int diff = ((prod.phase_power() - pauli.phase_power()) % 4 + 4) % 4;
    if (diff == 0) return +1;
    if (diff == 2) return -1;
    return std::nullopt; // imaginary mismatch cannot happen for valid tableaus
}

StabilizerTableau::Measurement StabilizerTableau::measure_impl(const PauliString& pauli, Rng* rng,
                                                               int forced) const {
    if (pauli.size() != n_) throw std::invalid_argument("pauli size mismatch");
    if (!pauli.phase_is_real()) throw std::invalid_argument("measured Pauli must have phase +-1");
    int anti = -1;
    for (std::size_t r = 0; r < gens_.size(); ++r)
        if (!gens_[r].commutes_with(pauli)) { anti = static_cast<int>(r); break; }
    if (anti < 0) {
        // deterministic: +-pauli is in the group
        const auto sign = contains(pauli);
        if (!sign) throw std::logic_error("commuting Pauli not found in full-rank group");
        if (forced != 0 && forced != *sign)
            throw std::invalid_argument("forced outcome contradicts a deterministic measurement");
        return {*sign, true, *this};
    }
    const int outcome = forced != 0 ? forced : (rng->uniform() < 0.5 ? +1 : -1);
    std::vector<PauliString> gens = gens_;
    for (std::size_t r = 0; r < gens.size(); ++r) {
        if (static_cast<int>(r) == anti) continue;
        if (!gens[r].commutes_with(pauli)) gens[r] = gens[r].times(gens_[static_cast<std::size_t>(anti)]);
    }
    gens[static_cast<std::size_t>(anti)] = outcome == +1 ? pauli : pauli.negated();
    return {outcome, false, StabilizerTableau(n_, std::move(gens))};
}

StabilizerTableau::Measurement StabilizerTableau::measure(const PauliString& pauli, Rng& rng) const {
    return measure_impl(pauli, &rng, 0);
}

StabilizerTableau::Measurement StabilizerTableau::measure_forced(const PauliString& pauli,
                                                                 int outcome) const {
    if (outcome != 1 && outcome != -1) throw std::invalid_argument("forced outcome must be +-1");
    return measure_impl(pauli, nullptr, outcome);
}

std::optional<PauliString> StabilizerTableau::residual_stabilizer(int qubit) const {
    if (qubit < 0 || qubit >= n_) throw std::invalid_argument("qubit out of range");
    // eliminate the symplectic columns of every other qubit; a combination
    // that vanishes there is a group element supported on this qubit only
    std::vector<std::vector<bool>> rows(gens_.size());
    std::vector<int> cols;
    for (int q = 0; q < n_; ++q)
        if (q != qubit) {
            cols.push_back(q);
            cols.push_back(n_ + q);
        }
    for (std::size_t r = 0; r < gens_.size(); ++r) {
        rows[r].resize(cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const int col = cols[c];
            rows[r][c] = col < n_ ? gens_[r].x_bit(col) : gens_[r].z_bit(col - n_);
        }
    }
    std::vector<std::uint64_t> combo(gens_.size());
    for (std::size_t r = 0; r < gens_.size(); ++r) combo[r] = 1ull << r;
    int rank = 0;
    for (std::size_t col = 0; col < cols.size() && rank < static_cast<int>(rows.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][col]) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        std::swap(combo[rank], combo[pivot]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || !rows[r][col]) continue;
            for (std::size_t c2 = 0; c2 < cols.size(); ++c2)
                rows[r][c2] = rows[r][c2] ^ rows[rank][c2];
            combo[r] ^= combo[rank];
        }
        ++rank;
    }
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
        bool zero = true;
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (rows[r][c]) { zero = false; break; }
        if (!zero) continue;
        PauliString prod = PauliString::identity(n_);
        for (std::size_t g = 0; g < gens_.size(); ++g)
            if (combo[r] & (1ull << g)) prod = prod.times(gens_[g]);
        if (prod.letter(qubit) != PauliLetter::I) return prod;
    }
    return std::nullopt;
}

PauliLetter ghz_party_rule(const std::vector<int>& q_bits) {
    if (q_bits.size() < 2) throw std::invalid_argument("ghz_party_rule: N >= 3 required");
    int ones = 0;
    for (int b : q_bits) ones += (b ? 1 : 0);
    return (ones % 2 == 1) ? PauliLetter::Y : PauliLetter::X;
}

} // namespace pbqc
