// Small dense complex linear algebra used across the lab: 2x2 helpers for
// single-qubit work and a minimal NxN matrix for the numerical searches.
#pragma once

#include <array>
#include <complex>
#include <vector>

namespace pbqc {

using cplx = std::complex<double>;

// row-major 2x2
using Mat2 = std::array<cplx, 4>;
using Vec2 = std::array<cplx, 2>;

Mat2 mat2_mul(const Mat2& a, const Mat2& b);
Mat2 mat2_dagger(const Mat2& a);
Vec2 mat2_apply(const Mat2& a, const Vec2& v);
cplx mat2_det(const Mat2& a);

Mat2 mat2_identity();
Mat2 gate_matrix_h();
Mat2 gate_matrix_s();
Mat2 gate_matrix_t();
Mat2 gate_matrix_x();
Mat2 gate_matrix_y();
Mat2 gate_matrix_z();
Mat2 gate_matrix_u3(double theta, double phi, double lambda);
Mat2 rot_z(double angle);
Mat2 rot_x(double angle);

// true when mat conjugates X and Z into (phased) Pauli operators
bool mat2_is_clifford(const Mat2& u, double tol = 1e-9);

// ZXZ Euler split: u ~ exp(i*delta) Rz(zeta) Rx(xi) Rz(eta)
struct EulerZxz {
    double zeta, xi, eta;
};
EulerZxz euler_zxz(const Mat2& u);

// minimal dense complex matrix, row-major
class CMat {
public:
    CMat() : rows_(0), cols_(0) {}
    CMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
    static CMat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    cplx& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const cplx& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    CMat mul(const CMat& other) const;
    CMat dagger() const;
    std::vector<cplx> apply(const std::vector<cplx>& v) const;

private:
    int rows_, cols_;
    std::vector<cplx> a_;
};

// eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi sweeps;
// eigenvalues ascending, columns of vectors are the eigenvectors
void hermitian_eig(const CMat& h, std::vector<double>& eigenvalues, CMat& vectors);

// exp(i*H) for Hermitian H
CMat exp_i_hermitian(const CMat& h);

// largest eigenvalue of a 3x3 Hermitian matrix (closed form)
double max_eig_herm3(const std::array<cplx, 9>& m);

// largest eigenvalue of a 2x2 Hermitian matrix
double max_eig_herm2(double a00, const cplx& a01, double a11);

} // namespace pbqc
