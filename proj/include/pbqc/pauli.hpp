// Phased Pauli strings: i^k * (letter per qubit), qubit 1 leftmost in text form.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pbqc {

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_letter_char(PauliLetter l);

class PauliString {
public:
    PauliString() = default;
    PauliString(int phase_power, std::vector<PauliLetter> letters);

    static PauliString identity(int n);
    static PauliString single(int n, int qubit, PauliLetter letter, int sign = +1);
    // text form: optional sign/phase prefix (+, -, +i, -i, i) then letters, e.g. "-XIZY"
    static PauliString parse(std::string_view text);

    int size() const { return static_cast<int>(letters_.size()); }
    PauliLetter letter(int qubit) const { return letters_[qubit]; }
    const std::vector<PauliLetter>& letters() const { return letters_; }
    int phase_power() const { return phase_power_; } // phase = i^phase_power
    bool phase_is_real() const { return phase_power_ % 2 == 0; }
    int sign() const; // +1/-1, throws when the phase is imaginary

    bool is_identity() const;
    bool commutes_with(const PauliString& other) const;
    PauliString times(const PauliString& other) const;
    PauliString negated() const;

    std::string str() const;
    bool operator==(const PauliString& other) const = default;

    // symplectic bits
    bool x_bit(int qubit) const;
    bool z_bit(int qubit) const;

private:
    int phase_power_ = 0; // mod 4
    std::vector<PauliLetter> letters_;
};

} // namespace pbqc
