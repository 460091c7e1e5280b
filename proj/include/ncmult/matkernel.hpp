#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace ncmult {

using cplx = std::complex<double>;

// Sentinel for p = infinity in Schatten/L_p exponents.
inline constexpr double kInfExp = std::numeric_limits<double>::infinity();

// Dense complex matrix, row-major.
struct CMatrix {
    int rows = 0, cols = 0;
    std::vector<cplx> a;

    CMatrix() = default;
    CMatrix(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c) {}

    cplx& operator()(int i, int j) { return a[std::size_t(i) * cols + j]; }
    const cplx& operator()(int i, int j) const { return a[std::size_t(i) * cols + j]; }

    bool square() const { return rows == cols; }

    static CMatrix identity(int n);
    static CMatrix zero(int r, int c) { return CMatrix(r, c); }
    static CMatrix diag(const std::vector<cplx>& d);
};

CMatrix operator+(const CMatrix& A, const CMatrix& B);
CMatrix operator-(const CMatrix& A, const CMatrix& B);
CMatrix operator*(const CMatrix& A, const CMatrix& B);
CMatrix operator*(cplx s, const CMatrix& A);
inline CMatrix operator*(double s, const CMatrix& A) { return cplx(s, 0.0) * A; }

CMatrix adjoint(const CMatrix& A);
CMatrix transpose(const CMatrix& A);
CMatrix conj_entries(const CMatrix& A);
cplx trace(const CMatrix& A);
double fro_norm(const CMatrix& A);
double max_abs(const CMatrix& A);
// max_ij |A_ij - conj(A_ji)|
double herm_asymmetry(const CMatrix& A);
// A ⊗ B
CMatrix kron(const CMatrix& A, const CMatrix& B);

struct SpectralData {
    std::vector<double> eigenvalues; // ascending
    CMatrix eigenvectors;            // unitary, columns match eigenvalues
};

// Cyclic Jacobi eigensolver for Hermitian matrices. Rejects inputs whose
// asymmetry exceeds 1e-12 * max(1, |A|_max), reporting the offending value.
SpectralData hermitian_eig(const CMatrix& A);

// f(A) for Hermitian A through the spectral decomposition.
CMatrix hermitian_function(const CMatrix& A, const std::function<double(double)>& f);
CMatrix hermitian_function(const SpectralData& sd, const std::function<double(double)>& f);

struct PolarDecomposition {
    CMatrix u;    // partial isometry supported on range(absA)
    CMatrix absA; // (A*A)^{1/2}, PSD
};

// A = u |A| for any square A; zero singular directions are dropped from u.
PolarDecomposition polar(const CMatrix& A);

// A^theta for PSD A and theta in (0,1]. Eigenvalues in [-1e-10*scale, 0) are
// clipped to 0; larger negativity is a contract violation.
CMatrix psd_power(const CMatrix& A, double theta);

// Same power map without the (0,1] exponent restriction; internal consumers
// (Schatten duals) need exponents above 1.
CMatrix psd_power_any(const CMatrix& A, double theta);

// (weight * sum sigma_i^p)^(1/p), or max sigma_i when p = kInfExp.
double schatten_norm(const CMatrix& A, double p, double weight);

// Singular values, descending.
std::vector<double> singular_values(const CMatrix& A);

// Nearest PSD matrix in Frobenius norm (negative eigenvalues zeroed).
CMatrix psd_project(const CMatrix& A);

// Unit-norm element of the conjugate Schatten class norming A: u|A|^{p-1}/|A|_p^{p-1}
// for finite p > 1, the polar isometry at p = 1, and a normalized top singular
// projection at p = infinity. Same trace weight on both sides.
CMatrix schatten_dual(const CMatrix& A, double p, double weight);

} // namespace ncmult
