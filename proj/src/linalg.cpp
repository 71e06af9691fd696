#include "pbqc/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace pbqc {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 mat2_dagger(const Mat2& a) {
    return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

Vec2 mat2_apply(const Mat2& a, const Vec2& v) {
    return {a[0] * v[0] + a[1] * v[1], a[2] * v[0] + a[3] * v[1]};
}

cplx mat2_det(const Mat2& a) { return a[0] * a[3] - a[1] * a[2]; }

Mat2 mat2_identity() { return {1.0, 0.0, 0.0, 1.0}; }

Mat2 gate_matrix_h() {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, s, s, -s};
}

Mat2 gate_matrix_s() { return {1.0, 0.0, 0.0, cplx(0.0, 1.0)}; }

Mat2 gate_matrix_t() { return {1.0, 0.0, 0.0, std::polar(1.0, kPi / 4)}; }

Mat2 gate_matrix_x() { return {0.0, 1.0, 1.0, 0.0}; }

Mat2 gate_matrix_y() { return {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0}; }

Mat2 gate_matrix_z() { return {1.0, 0.0, 0.0, -1.0}; }

Mat2 gate_matrix_u3(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return {c, -std::polar(s, lambda), std::polar(s, phi), std::polar(c, phi + lambda)};
}

Mat2 rot_z(double angle) {
    return {std::polar(1.0, -angle / 2), 0.0, 0.0, std::polar(1.0, angle / 2)};
}

Mat2 rot_x(double angle) {
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    return {c, cplx(0.0, -s), cplx(0.0, -s), c};
}

namespace {

bool is_phased_pauli(const Mat2& m, double tol) {
    // diagonal +-phase, or antidiagonal +-phase (covers I, Z, X, Y up to phase)
    const double offd = std::abs(m[1]) + std::abs(m[2]);
    const double diag = std::abs(m[0]) + std::abs(m[3]);
    if (offd < tol && std::abs(std::abs(m[0]) - 1.0) < tol && std::abs(std::abs(m[3]) - 1.0) < tol) {
        const cplx r = m[3] / m[0];
        return std::abs(r - 1.0) < tol || std::abs(r + 1.0) < tol;
    }
    if (diag < tol && std::abs(std::abs(m[1]) - 1.0) < tol && std::abs(std::abs(m[2]) - 1.0) < tol) {
        const cplx r = m[2] / m[1];
        return std::abs(r - 1.0) < tol || std::abs(r + 1.0) < tol;
    }
    return false;
}

} // namespace

bool mat2_is_clifford(const Mat2& u, double tol) {
    const Mat2 ud = mat2_dagger(u);
    const Mat2 cx = mat2_mul(u, mat2_mul(gate_matrix_x(), ud));
    const Mat2 cz = mat2_mul(u, mat2_mul(gate_matrix_z(), ud));
    return is_phased_pauli(cx, tol) && is_phased_pauli(cz, tol);
}

EulerZxz euler_zxz(const Mat2& u) {
    // reduce to SU(2): v = u / sqrt(det u)
    cplx d = mat2_det(u);
    cplx sq = std::sqrt(d);
    Mat2 v = {u[0] / sq, u[1] / sq, u[2] / sq, u[3] / sq};
    // v = [[cos(xi/2) e^{-i(zeta+eta)/2}, -i sin(xi/2) e^{-i(zeta-eta)/2}],
    //      [-i sin(xi/2) e^{ i(zeta-eta)/2},  cos(xi/2) e^{ i(zeta+eta)/2}]]
    const double c = std::abs(v[0]);
    const double s = std::abs(v[2]);
    const double xi = 2.0 * std::atan2(s, c);
    double sum, diff;
    if (s < 1e-12) {
        sum = -2.0 * std::arg(v[0]);
        diff = 0.0;
    } else if (c < 1e-12) {
        diff = 2.0 * (std::arg(v[2]) + kPi / 2);
        sum = 0.0;
    } else {
        sum = -2.0 * std::arg(v[0]);
        diff = 2.0 * (std::arg(v[2]) + kPi / 2);
    }
    return {(sum + diff) / 2, xi, (sum - diff) / 2};
}

CMat CMat::identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

CMat CMat::mul(const CMat& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("CMat::mul: shape mismatch");
    CMat out(rows_, other.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const cplx aik = at(i, k);
            if (aik == cplx(0.0)) continue;
            for (int j = 0; j < other.cols_; ++j) out.at(i, j) += aik * other.at(k, j);
        }
    return out;
}

CMat CMat::dagger() const {
    CMat out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(j, i) = std::conj(at(i, j));
    return out;
}

std::vector<cplx> CMat::apply(const std::vector<cplx>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("CMat::apply: size mismatch");
    std::vector<cplx> out(rows_);
    for (int i = 0; i < rows_; ++i) {
        cplx acc = 0.0;
        for (int j = 0; j < cols_; ++j) acc += at(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

void hermitian_eig(const CMat& h, std::vector<double>& eigenvalues, CMat& vectors) {
    const int n = h.rows();
    if (h.cols() != n) throw std::invalid_argument("hermitian_eig: square matrix required");
    CMat a = h;
    CMat v = CMat::identity(n);
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(a.at(p, q));
        if (off < 1e-26) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a.at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double app = a.at(p, p).real();
                const double aqq = a.at(q, q).real();
                // unitary 2x2 rotation diagonalizing [[app, apq],[apq*, aqq]]
                const double phi = std::arg(apq);
                const double m = std::abs(apq);
                const double theta = 0.5 * std::atan2(2.0 * m, app - aqq);
                const double cth = std::cos(theta), sth = std::sin(theta);
                const cplx ei = std::polar(1.0, phi);
                // columns: [c, -s e^{i phi}; s e^{-i phi}, c] as right-multiplier
                for (int r = 0; r < n; ++r) {
                    const cplx arp = a.at(r, p), arq = a.at(r, q);
                    a.at(r, p) = cth * arp + sth * std::conj(ei) * arq;
                    a.at(r, q) = -sth * ei * arp + cth * arq;
                }
                for (int cidx = 0; cidx < n; ++cidx) {
                    const cplx apc = a.at(p, cidx), aqc = a.at(q, cidx);
                    a.at(p, cidx) = cth * apc + sth * ei * aqc;
                    a.at(q, cidx) = -sth * std::conj(ei) * apc + cth * aqc;
                }
                for (int r = 0; r < n; ++r) {
                    const cplx vrp = v.at(r, p), vrq = v.at(r, q);
                    v.at(r, p) = cth * vrp + sth * std::conj(ei) * vrq;
                    v.at(r, q) = -sth * ei * vrp + cth * vrq;
                }
            }
        }
    }
    eigenvalues.resize(n);
    for (int i = 0; i < n; ++i) eigenvalues[i] = a.at(i, i).real();
    // sort ascending, reorder columns
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (eigenvalues[idx[j]] < eigenvalues[idx[i]]) std::swap(idx[i], idx[j]);
    std::vector<double> ev(n);
    CMat vv(n, n);
    for (int j = 0; j < n; ++j) {
        ev[j] = eigenvalues[idx[j]];
        for (int i = 0; i < n; ++i) vv.at(i, j) = v.at(i, idx[j]);
    }
    eigenvalues = ev;
    vectors = vv;
}

CMat exp_i_hermitian(const CMat& h) {
    std::vector<double> ev;
    CMat v;
    hermitian_eig(h, ev, v);
    const int n = h.rows();
    CMat out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx acc = 0.0;
            for (int k = 0; k < n; ++k)
                acc += v.at(i, k) * std::polar(1.0, ev[k]) * std::conj(v.at(j, k));
            out.at(i, j) = acc;
        }
    return out;
}

double max_eig_herm2(double a00, const cplx& a01, double a11) {
    const double half = 0.5 * (a00 + a11);
    const double rad = std::sqrt(0.25 * (a00 - a11) * (a00 - a11) + std::norm(a01));
    return half + rad;
}

double max_eig_herm3(const std::array<cplx, 9>& m) {
    // trigonometric method for symmetric/Hermitian 3x3
    const double a = m[0].real(), b = m[4].real(), c = m[8].real();
    const double p1 = std::norm(m[1]) + std::norm(m[2]) + std::norm(m[5]);
    if (p1 < 1e-30) return std::max({a, b, c});
    const double q = (a + b + c) / 3.0;
    const double p2 = (a - q) * (a - q) + (b - q) * (b - q) + (c - q) * (c - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    // B = (A - q I)/p ; r = det(B)/2
    const cplx b01 = m[1] / p, b02 = m[2] / p, b12 = m[5] / p;
    const double d0 = (a - q) / p, d1 = (b - q) / p, d2 = (c - q) / p;
    const cplx det = d0 * (d1 * d2 - b12 * std::conj(b12)) - b01 * (std::conj(b01) * d2 - b12 * std::conj(b02)) +
                     b02 * (std::conj(b01) * std::conj(b12) - d1 * std::conj(b02));
    double r = det.real() / 2.0;
    r = std::min(1.0, std::max(-1.0, r));
    const double phi = std::acos(r) / 3.0;
    return q + 2.0 * p * std::cos(phi);
}

} // namespace pbqc
