#pragma once

#include "ncmult/matkernel.hpp"
#include "ncmult/rng.hpp"

#include <string>
#include <vector>

namespace ncmult {

// Constant of the theta-power perturbation inequality, from the dyadic
// induction bound; its doubled form covers the self-adjoint case.
inline constexpr double kThetaPowerConstant = 2.2071067811865475244; // (3 + sqrt 2)/2
inline constexpr double kSelfAdjointPowerConstant = 4.4142135623730950488;

// Completely positive (or transpose-twisted positive) map on n x n matrices.
// Subunital and trace-nonincreasing by construction: sum K*K <= 1 and
// sum KK* <= 1, both verified spectrally.
struct KrausMap {
    int dim = 0;
    std::vector<CMatrix> kraus;
    bool transpose_twist = false;
};

KrausMap make_kraus_map(std::vector<CMatrix> kraus, bool transpose_twist);
KrausMap random_kraus_map(int n, int k, std::uint64_t seed, bool transpose_twist);

// T(x) = sum K_i* x K_i, with x replaced by its transpose under the twist.
CMatrix apply_map(const KrausMap& map, const CMatrix& x);

struct GapReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0; // rhs - lhs
    std::string instance;
};

// (1/2) Int_{-S}^{S} a^{-is} (a g + g b) b^{is} ds/cosh(pi s) by trapezoid rule;
// converges to a^{1/2} g b^{1/2}. Kernel directions are excluded from the
// unitary phases.
CMatrix lemma11_quadrature(const CMatrix& alpha, const CMatrix& beta, const CMatrix& gamma,
                           double S, double h);

// |x^t - y^t|_p <= |x - y|_{tp}^t for PSD x, y (one-sided Powers-Stormer).
GapReport powers_stormer_gap(const CMatrix& x, const CMatrix& y, double theta, double p);

// |T(x) - T(sqrt x)^2|_{2p} <= (1/2) |T(x^2) - T(x)^2|_p^{1/2}.
GapReport theoremB_gap(const KrausMap& map, const CMatrix& x, double p);

// |T(x^t) - x^t|_{2/t} <= C |T(x) - x|_2^{t/2} |x|_2^{t/2}, C = kThetaPowerConstant.
GapReport cor13_gap(const KrausMap& map, const CMatrix& x, double theta);

// |T(u|y|^t) - u|y|^t|_{2/t} <= C |T(y) - y|_2^{t/4} |y|_2^{3t/4} for self-adjoint y,
// C = kSelfAdjointPowerConstant.
GapReport cor14_gap(const KrausMap& map, const CMatrix& y, double theta);

// Frequency-support control of fractional powers on Z_N: applies the triangular
// symbol zeta_beta, beta = alpha/(2 eps), to g = f^{2/p} and reports
// |T_zeta g - g|_p^p against the theta-power bound C^p |zeta fhat - fhat|_2 |f|_2.
struct FreqSupportReport {
    double correction_norm = 0.0;
    double bound = 0.0;
};
FreqSupportReport freq_support_control(const std::vector<cplx>& fhat, double alpha, double eps,
                                       int p);

// Nonnegative step function on a shared finite partition with cell measures.
struct StepFunction {
    std::vector<double> weights;
    std::vector<double> values;
};

double step_l1(const StepFunction& f);
double step_l1_distance(const StepFunction& f, const StepFunction& g);

// Level t with sum_l |1_{xi>t} - 1_{eta_l>t}|_1 < eps |1_{xi>t}|_1, which exists
// by the layer-cake identity whenever sum_l |xi - eta_l|_1 < eps |xi|_1.
double threshold_select(const StepFunction& xi, const std::vector<StepFunction>& etas,
                        double eps);

// Instance generators for the randomized suites.
CMatrix random_matrix(int n, Rng& rng);
CMatrix random_hermitian(int n, Rng& rng);
CMatrix random_psd(int n, Rng& rng);

} // namespace ncmult
