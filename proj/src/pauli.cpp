#include "pbqc/pauli.hpp"

#include <stdexcept>

namespace pbqc {

char pauli_letter_char(PauliLetter l) {
    switch (l) {
        case PauliLetter::I: return 'I';
        case PauliLetter::X: return 'X';
        case PauliLetter::Y: return 'Y';
        case PauliLetter::Z: return 'Z';
    }
    return '?';
}

namespace {

PauliLetter letter_from_char(char c) {
    switch (c) {
        case 'I': return PauliLetter::I;
        case 'X': return PauliLetter::X;
        case 'Y': return PauliLetter::Y;
        case 'Z': return PauliLetter::Z;
        default: throw std::invalid_argument(std::string("bad Pauli letter '") + c + "'");
    }
}

// i-power picked up when multiplying single letters a*b (e.g. X*Y = iZ)
int product_phase_power(PauliLetter a, PauliLetter b) {
    if (a == PauliLetter::I || b == PauliLetter::I || a == b) return 0;
    // cyclic XY=iZ, YZ=iX, ZX=iY; reversed order gives -i
    const int ai = static_cast<int>(a), bi = static_cast<int>(b);
    // X=1, Y=2, Z=3: (1,2)->+1, (2,3)->+1, (3,1)->+1
    if ((ai == 1 && bi == 2) || (ai == 2 && bi == 3) || (ai == 3 && bi == 1)) return 1;
    return 3;
}

PauliLetter letter_product(PauliLetter a, PauliLetter b) {
    if (a == PauliLetter::I) return b;
    if (b == PauliLetter::I) return a;
    if (a == b) return PauliLetter::I;
    const int ai = static_cast<int>(a), bi = static_cast<int>(b);
    return static_cast<PauliLetter>(6 - ai - bi); // X,Y,Z indices sum to 6
}

} // namespace

PauliString::PauliString(int phase_power, std::vector<PauliLetter> letters)
    : phase_power_(((phase_power % 4) + 4) % 4), letters_(std::move(letters)) {}

PauliString PauliString::identity(int n) {
    return PauliString(0, std::vector<PauliLetter>(n, PauliLetter::I));
}

PauliString PauliString::single(int n, int qubit, PauliLetter letter, int sign) {
    if (qubit < 0 || qubit >= n) throw std::invalid_argument("PauliString::single: qubit out of range");
    if (sign != 1 && sign != -1) throw std::invalid_argument("PauliString::single: sign must be +-1");
    std::vector<PauliLetter> ls(n, PauliLetter::I);
    ls[qubit] = letter;
    return PauliString(sign == 1 ? 0 : 2, std::move(ls));
}

PauliString PauliString::parse(std::string_view text) {
    int phase = 0;
    std::size_t pos = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        if (text[pos] == '-') phase = 2;
        ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
        phase = (phase + 1) % 4;
        ++pos;
    }
    if (pos >= text.size()) throw std::invalid_argument("PauliString::parse: no letters");
    std::vector<PauliLetter> ls;
    for (; pos < text.size(); ++pos) ls.push_back(letter_from_char(text[pos]));
    return PauliString(phase, std::move(ls));
}

int PauliString::sign() const {
    if (!phase_is_real()) throw std::logic_error("PauliString::sign: imaginary phase");
    return phase_power_ == 0 ? +1 : -1;
}

bool PauliString::is_identity() const {
    for (auto l : letters_)
        if (l != PauliLetter::I) return false;
    return true;
}

bool PauliString::commutes_with(const PauliString& other) const {
    if (size() != other.size()) throw std::invalid_argument("PauliString: size mismatch");
    int anti = 0;
    for (int q = 0; q < size(); ++q) {
        const PauliLetter a = letters_[q], b = other.letters_[q];
        if (a != PauliLetter::I && b != PauliLetter::I && a != b) ++anti;
    }
    return anti % 2 == 0;
}

PauliString PauliString::times(const PauliString& other) const {
    if (size() != other.size()) throw std::invalid_argument("PauliString: size mismatch");
    int phase = phase_power_ + other.phase_power_;
    std::vector<PauliLetter> ls(letters_.size());
    for (int q = 0; q < size(); ++q) {
        phase += product_phase_power(letters_[q], other.letters_[q]);
        ls[q] = letter_product(letters_[q], other.letters_[q]);
    }
    return PauliString(phase, std::move(ls));
}

PauliString PauliString::negated() const { return PauliString(phase_power_ + 2, letters_); }

std::string PauliString::str() const {
    std::string out;
    switch (phase_power_) {
        case 0: out = "+"; break;
        case 1: out = "+i"; break;
        case 2: out = "-"; break;
        case 3: out = "-i"; break;
    }
    for (auto l : letters_) out += pauli_letter_char(l);
    return out;
}

bool PauliString::x_bit(int qubit) const {
    return letters_[qubit] == PauliLetter::X || letters_[qubit] == PauliLetter::Y;
}

bool PauliString::z_bit(int qubit) const {
    return letters_[qubit] == PauliLetter::Z || letters_[qubit] == PauliLetter::Y;
}

} // namespace pbqc
