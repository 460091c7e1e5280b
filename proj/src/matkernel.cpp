#include "ncmult/matkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ncmult {

CMatrix CMatrix::identity(int n) {
    CMatrix I(n, n);
    for (int i = 0; i < n; ++i) I(i, i) = 1.0;
    return I;
}

CMatrix CMatrix::diag(const std::vector<cplx>& d) {
    CMatrix D(int(d.size()), int(d.size()));
    for (int i = 0; i < D.rows; ++i) D(i, i) = d[std::size_t(i)];
    return D;
}

static void check_same_shape(const CMatrix& A, const CMatrix& B, const char* op) {
    if (A.rows != B.rows || A.cols != B.cols)
        throw std::invalid_argument(std::string(op) + ": shape mismatch");
}

CMatrix operator+(const CMatrix& A, const CMatrix& B) {
    check_same_shape(A, B, "operator+");
    CMatrix C = A;
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] += B.a[i];
    return C;
}

CMatrix operator-(const CMatrix& A, const CMatrix& B) {
    check_same_shape(A, B, "operator-");
    CMatrix C = A;
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] -= B.a[i];
    return C;
}

CMatrix operator*(const CMatrix& A, const CMatrix& B) {
    if (A.cols != B.rows) throw std::invalid_argument("operator*: inner dimension mismatch");
    CMatrix C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int k = 0; k < A.cols; ++k) {
            const cplx aik = A(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            const cplx* brow = &B.a[std::size_t(k) * B.cols];
            cplx* crow = &C.a[std::size_t(i) * C.cols];
            for (int j = 0; j < B.cols; ++j) crow[j] += aik * brow[j];
        }
    }
    return C;
}

CMatrix operator*(cplx s, const CMatrix& A) {
    CMatrix C = A;
    for (auto& v : C.a) v *= s;
    return C;
}

CMatrix adjoint(const CMatrix& A) {
    CMatrix C(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) C(j, i) = std::conj(A(i, j));
    return C;
}

CMatrix transpose(const CMatrix& A) {
    CMatrix C(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) C(j, i) = A(i, j);
    return C;
}

CMatrix conj_entries(const CMatrix& A) {
    CMatrix C = A;
    for (auto& v : C.a) v = std::conj(v);
    return C;
}

cplx trace(const CMatrix& A) {
    cplx t = 0.0;
    for (int i = 0; i < std::min(A.rows, A.cols); ++i) t += A(i, i);
    return t;
}

double fro_norm(const CMatrix& A) {
    double s = 0.0;
    for (const auto& v : A.a) s += std::norm(v);
    return std::sqrt(s);
}

double max_abs(const CMatrix& A) {
    double m = 0.0;
    for (const auto& v : A.a) m = std::max(m, std::abs(v));
    return m;
}

double herm_asymmetry(const CMatrix& A) {
    if (!A.square()) return std::numeric_limits<double>::infinity();
    double m = 0.0;
    for (int i = 0; i < A.rows; ++i)
        for (int j = i; j < A.cols; ++j)
            m = std::max(m, std::abs(A(i, j) - std::conj(A(j, i))));
    return m;
}

CMatrix kron(const CMatrix& A, const CMatrix& B) {
    CMatrix C(A.rows * B.rows, A.cols * B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) {
            const cplx aij = A(i, j);
            if (aij == cplx(0.0, 0.0)) continue;
            for (int k = 0; k < B.rows; ++k)
                for (int l = 0; l < B.cols; ++l)
                    C(i * B.rows + k, j * B.cols + l) = aij * B(k, l);
        }
    return C;
}

namespace {

// Zero the (p,q) entry of Hermitian A with the classical small-angle rotation
// (|theta| <= pi/4, the Forsythe-Henrici condition for cyclic convergence) and
// apply it to rows/columns (p,q) of A and columns (p,q) of V.
void jacobi_rotate(CMatrix& A, CMatrix& V, int p, int q) {
    const cplx f = A(p, q);
    const double app = A(p, p).real();
    const double aqq = A(q, q).real();
    const double fa = std::abs(f);
    if (fa == 0.0) return;

    // phase so that the block reduces to the real symmetric case
    const cplx ph = f / fa;
    const double tau = (aqq - app) / (2.0 * fa);
    const double t = (tau >= 0.0) ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                  : 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const cplx s = t * c * std::conj(ph);
    // U = [[c, -conj(s)], [s, c]] zeroes (U* A U)(p,q)
    const cplx u11 = c, u12 = -std::conj(s), u21 = s, u22 = c;

    const int n = A.rows;
    for (int k = 0; k < n; ++k) { // A <- A U on columns p,q
        const cplx akp = A(k, p), akq = A(k, q);
        A(k, p) = akp * u11 + akq * u21;
        A(k, q) = akp * u12 + akq * u22;
    }
    for (int k = 0; k < n; ++k) { // A <- U* A on rows p,q
        const cplx apk = A(p, k), aqk = A(q, k);
        A(p, k) = std::conj(u11) * apk + std::conj(u21) * aqk;
        A(q, k) = std::conj(u12) * apk + std::conj(u22) * aqk;
    }
    for (int k = 0; k < n; ++k) { // V <- V U
        const cplx vkp = V(k, p), vkq = V(k, q);
        V(k, p) = vkp * u11 + vkq * u21;
        V(k, q) = vkp * u12 + vkq * u22;
    }
    A(p, q) = 0.0;
    A(q, p) = 0.0;
    A(p, p) = cplx(A(p, p).real(), 0.0);
    A(q, q) = cplx(A(q, q).real(), 0.0);
}

double offdiag_fro(const CMatrix& A) {
    double s = 0.0;
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j)
            if (i != j) s += std::norm(A(i, j));
    return std::sqrt(s);
}

} // namespace

SpectralData hermitian_eig(const CMatrix& A) {
    if (!A.square()) throw std::invalid_argument("hermitian_eig: matrix not square");
    const double scale = std::max(1.0, max_abs(A));
    const double asym = herm_asymmetry(A);
    if (asym > 1e-12 * scale)
        throw std::invalid_argument("hermitian_eig: input not Hermitian, max asymmetry = " +
                                    std::to_string(asym));

    const int n = A.rows;
    CMatrix W(n, n);
    for (int i = 0; i < n; ++i) {
        W(i, i) = cplx(A(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const cplx v = 0.5 * (A(i, j) + std::conj(A(j, i)));
            W(i, j) = v;
            W(j, i) = std::conj(v);
        }
    }
    CMatrix V = CMatrix::identity(n);

    const double anorm = fro_norm(W);
    const double tol = 1e-13 * std::max(anorm, 1e-300);
    for (int sweep = 0; sweep < 60; ++sweep) {
        if (offdiag_fro(W) <= tol) break;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) jacobi_rotate(W, V, p, q);
    }

    std::vector<int> order(std::size_t(n), 0);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return W(i, i).real() < W(j, j).real(); });

    SpectralData sd;
    sd.eigenvalues.resize(std::size_t(n));
    sd.eigenvectors = CMatrix(n, n);
    for (int c = 0; c < n; ++c) {
        sd.eigenvalues[std::size_t(c)] = W(order[std::size_t(c)], order[std::size_t(c)]).real();
        for (int r = 0; r < n; ++r) sd.eigenvectors(r, c) = V(r, order[std::size_t(c)]);
    }
    return sd;
}

CMatrix hermitian_function(const SpectralData& sd, const std::function<double(double)>& f) {
    const int n = sd.eigenvectors.rows;
    CMatrix D(n, n);
    for (int i = 0; i < n; ++i) D(i, i) = f(sd.eigenvalues[std::size_t(i)]);
    return sd.eigenvectors * D * adjoint(sd.eigenvectors);
}

CMatrix hermitian_function(const CMatrix& A, const std::function<double(double)>& f) {
    return hermitian_function(hermitian_eig(A), f);
}

PolarDecomposition polar(const CMatrix& A) {
    if (!A.square()) throw std::invalid_argument("polar: matrix not square");
    const int n = A.rows;
    SpectralData sd = hermitian_eig(adjoint(A) * A);
    std::vector<double> sigma(sd.eigenvalues.size());
    double smax = 0.0;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        sigma[i] = std::sqrt(std::max(0.0, sd.eigenvalues[i]));
        smax = std::max(smax, sigma[i]);
    }
    const double cutoff = smax * 1e-13;

    PolarDecomposition pd;
    pd.absA = CMatrix(n, n);
    pd.u = CMatrix(n, n);
    const CMatrix& V = sd.eigenvectors;
    CMatrix AV = A * V;
    for (int k = 0; k < n; ++k) {
        const double s = sigma[std::size_t(k)];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                pd.absA(i, j) += s * V(i, k) * std::conj(V(j, k));
        if (s > cutoff) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    pd.u(i, j) += (AV(i, k) / s) * std::conj(V(j, k));
        }
    }
    return pd;
}

static CMatrix psd_power_impl(const CMatrix& A, double theta) {
    SpectralData sd = hermitian_eig(A);
    const double lmax = sd.eigenvalues.empty() ? 0.0 : sd.eigenvalues.back();
    const double scale = std::max(1.0, std::abs(lmax));
    const double thr = -1e-10 * scale;
    for (double lam : sd.eigenvalues)
        if (lam < thr)
            throw std::invalid_argument("psd_power: input not PSD, min eigenvalue = " +
                                        std::to_string(sd.eigenvalues.front()));
    // eigenvalues at roundoff level are kernel directions, not data
    const double zero_floor = 1e-13 * scale;
    return hermitian_function(sd, [theta, zero_floor](double x) {
        return x <= zero_floor ? 0.0 : std::pow(x, theta);
    });
}

CMatrix psd_power(const CMatrix& A, double theta) {
    if (!(theta > 0.0 && theta <= 1.0))
        throw std::invalid_argument("psd_power: theta must lie in (0,1]");
    return psd_power_impl(A, theta);
}

CMatrix psd_power_any(const CMatrix& A, double theta) {
    if (!(theta > 0.0)) throw std::invalid_argument("psd_power_any: theta must be positive");
    return psd_power_impl(A, theta);
}

std::vector<double> singular_values(const CMatrix& A) {
    SpectralData sd = hermitian_eig(adjoint(A) * A);
    std::vector<double> s(sd.eigenvalues.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] = std::sqrt(std::max(0.0, sd.eigenvalues[sd.eigenvalues.size() - 1 - i]));
    return s;
}

double schatten_norm(const CMatrix& A, double p, double weight) {
    if (!(p >= 1.0)) throw std::invalid_argument("schatten_norm: p must satisfy p >= 1");
    if (!(weight > 0.0)) throw std::invalid_argument("schatten_norm: weight must be positive");
    std::vector<double> s = singular_values(A);
    if (std::isinf(p)) return s.empty() ? 0.0 : s.front();
    double acc = 0.0;
    for (double v : s) acc += std::pow(v, p);
    return std::pow(weight * acc, 1.0 / p);
}

CMatrix psd_project(const CMatrix& A) {
    return hermitian_function(A, [](double x) { return x > 0.0 ? x : 0.0; });
}

CMatrix schatten_dual(const CMatrix& A, double p, double weight) {
    if (!(p >= 1.0)) throw std::invalid_argument("schatten_dual: p must satisfy p >= 1");
    const int n = A.rows;
    SpectralData sd = hermitian_eig(adjoint(A) * A);
    std::vector<double> sigma(sd.eigenvalues.size());
    double smax = 0.0;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        sigma[i] = std::sqrt(std::max(0.0, sd.eigenvalues[i]));
        smax = std::max(smax, sigma[i]);
    }
    if (smax <= 0.0) return CMatrix::zero(n, n);
    const CMatrix& V = sd.eigenvectors;
    CMatrix AV = A * V;

    // y = sum_k u_k c_k v_k^* with u_k = A v_k / sigma_k on the support
    std::vector<double> coeff(sigma.size(), 0.0);
    if (std::isinf(p)) {
        const double thr = smax * (1.0 - 1e-12);
        double mass = 0.0;
        for (double s : sigma)
            if (s >= thr) mass += 1.0;
        for (std::size_t k = 0; k < sigma.size(); ++k)
            if (sigma[k] >= thr) coeff[k] = 1.0 / (weight * mass);
    } else if (p == 1.0) {
        const double cutoff = smax * 1e-13;
        for (std::size_t k = 0; k < sigma.size(); ++k)
            if (sigma[k] > cutoff) coeff[k] = 1.0;
    } else {
        double accp = 0.0;
        for (double s : sigma) accp += std::pow(s, p);
        const double normp = std::pow(weight * accp, 1.0 / p);
        const double cutoff = smax * 1e-13;
        for (std::size_t k = 0; k < sigma.size(); ++k)
            if (sigma[k] > cutoff)
                coeff[k] = std::pow(sigma[k], p - 1.0) / std::pow(normp, p - 1.0);
    }

    CMatrix Y(n, n);
    for (std::size_t k = 0; k < sigma.size(); ++k) {
        if (coeff[k] == 0.0 || sigma[k] <= 0.0) continue;
        const double c = coeff[k] / sigma[k];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) Y(i, j) += c * AV(i, int(k)) * std::conj(V(j, int(k)));
    }
    return Y;
}

} // namespace ncmult
