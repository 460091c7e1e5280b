#pragma once

#include "ncmult/ascent.hpp"
#include "ncmult/groups.hpp"
#include "ncmult/matkernel.hpp"
#include "ncmult/vna.hpp"

#include <iosfwd>
#include <vector>

namespace ncmult {

// Entrywise multiplier symbol m_ij, optionally of Herz-Schur provenance
// m_ij = m(g_i^{-1} g_j).
struct SchurSymbol {
    CMatrix M;
    GroupPtr provenance_group;        // null for abstract symbols
    std::vector<int> section;         // group elements backing the rows/columns

    int size() const { return M.rows; }
    double max_abs_entry() const { return max_abs(M); }
};

SchurSymbol herz_schur(const Symbol& m);
SchurSymbol herz_schur_section(const Symbol& m, const std::vector<int>& section);

CMatrix schur_apply(const SchurSymbol& sym, const CMatrix& A);

struct SchurNormEstimate {
    double lower_bound = 0.0;
    CMatrix witness;
    bool converged = false;
};

// Certified lower bound of |S_m : S_p -> S_p| (unnormalized Schatten norms);
// exact max |m_ij| at p = 2.
SchurNormEstimate schur_norm_estimate(const SchurSymbol& sym, double p, const NormBudget& budget,
                                      const std::vector<CMatrix>& warm_starts = {});

// Certificate for the factorization value: columns x_i of x and y_j of y with
// <x_i, y_j> = m_ij and value = max|x_i| max|y_j|.
struct Factorization {
    CMatrix x;
    CMatrix y;
    double value = 0.0;
    double reproduction_error = 0.0; // max_ij |<x_i,y_j> - m_ij|
};

struct CbNormResult {
    double value = 0.0;
    Factorization certificate;
    bool converged = true;
    double lower = 0.0, upper = 0.0; // final bisection bracket
};

// cb norm at p = infinity by bisection over t of the PSD-completion feasibility
// [[A, M], [M*, B]] >= 0 with diagonals <= t, solved by Dykstra alternating
// projections between the PSD cone and the affine/box constraints.
CbNormResult cb_inf_norm(const SchurSymbol& sym, double tol);

struct SectionValue {
    int size = 0;
    double estimate = 0.0;
};

// Estimates along nested sections (each symbol the leading principal submatrix
// of the next); each ascent is warm started with the previous witness, so the
// reported values are nondecreasing up to roundoff.
std::vector<SectionValue> finite_section_sup(const std::vector<SchurSymbol>& sections, double p,
                                             const NormBudget& budget);

struct TransferenceReport {
    double fourier_side = 0.0;
    double schur_side = 0.0;
};

// Fourier vs Herz-Schur multiplier norms on Z_n; p = 2 is exact on both sides,
// p = infinity compares the l1 norm of the inverse DFT (the exact convolution
// norm on the commutative algebra) with the factorization value.
TransferenceReport transference_check(const Symbol& m, double p, double tol);

struct SchurPeriodizeReport {
    double quotient_value = 0.0;
    double lifted_value = 0.0;
    double conjugation_residual = 0.0;
};

// Herz-Schur norms of m_q on G/H versus its periodization on G; the reindexing
// by cosets identifies S_{m_pi} with S_{m_q} (x) id exactly.
SchurPeriodizeReport schur_periodize_check(const GroupPtr& G, const std::vector<int>& H_elems,
                                           const Symbol& m_q, double p, const NormBudget& budget);

// Text format: "schur <n>" then n rows of 2n reals (re im pairs).
void write_schur_symbol(std::ostream& os, const SchurSymbol& sym);
SchurSymbol read_schur_symbol(std::istream& is);

} // namespace ncmult
