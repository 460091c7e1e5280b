#pragma once

#include "ncmult/ascent.hpp"
#include "ncmult/groups.hpp"
#include "ncmult/matkernel.hpp"

#include <iosfwd>
#include <vector>

namespace ncmult {

// f = sum_g fhat(g) lambda(g) in the group von Neumann algebra of a finite group.
struct AlgebraElement {
    GroupPtr group;
    std::vector<cplx> coeffs;

    AlgebraElement() = default;
    AlgebraElement(GroupPtr g, std::vector<cplx> c) : group(std::move(g)), coeffs(std::move(c)) {}
    static AlgebraElement delta(const GroupPtr& g, int element);
    static AlgebraElement zero(const GroupPtr& g);
};

// Multiplier symbol m : G -> C.
struct Symbol {
    GroupPtr group;
    std::vector<cplx> values;

    Symbol() = default;
    Symbol(GroupPtr g, std::vector<cplx> v) : group(std::move(g)), values(std::move(v)) {}
    static Symbol constant(const GroupPtr& g, cplx c);
    double max_abs() const;
    Symbol conjugated() const;          // g -> conj(m(g))
    Symbol reversed() const;            // g -> m(g^{-1})
    Symbol restricted(const Subgroup& H) const;
};

bool same_group(const GroupPtr& a, const GroupPtr& b);

// |G| x |G| matrix sum_g fhat(g) Perm(g), Perm(g) = left translation.
CMatrix regular_rep(const AlgebraElement& f);
CMatrix left_translation(const FiniteGroup& g, int element);
// Coefficients of a matrix in the image of the regular representation.
AlgebraElement coefficients_of(const GroupPtr& g, const CMatrix& M);

cplx plancherel_trace(const AlgebraElement& f); // fhat(e)
AlgebraElement adjoint_element(const AlgebraElement& f);
AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& h);
AlgebraElement operator+(const AlgebraElement& f, const AlgebraElement& h);
AlgebraElement operator-(const AlgebraElement& f, const AlgebraElement& h);
AlgebraElement operator*(cplx s, const AlgebraElement& f);

// tau(|f|^p)^{1/p} with the normalized trace; p = kInfExp for the operator norm.
double lp_norm(const AlgebraElement& f, double p);
double l2_norm(const AlgebraElement& f);

// Coefficient restriction onto the subgroup, as an element of L(H).
AlgebraElement cond_expectation(const AlgebraElement& f, const Subgroup& H);
// Inclusion L(H) -> L(G); trace-preserving, isometric on every L_p.
AlgebraElement embed(const AlgebraElement& f_on_sub, const Subgroup& H);

AlgebraElement fourier_multiplier(const Symbol& m, const AlgebraElement& f);

struct NormEstimate {
    double lower_bound = 0.0;
    AlgebraElement witness;
    bool converged = false;
};

// Certified lower bound for ||T_m : L_p -> L_p|| by nonlinear power iteration;
// exact (max |m|) at p = 2. Extra starting witnesses may be supplied.
NormEstimate multiplier_norm_estimate(const Symbol& m, double p, const NormBudget& budget,
                                      const std::vector<AlgebraElement>& warm_starts = {});

// Matched-budget estimates for T_{m|H} on L(H) and T_m on L(G); the full-group
// ascent is seeded with the embedded subgroup witness, so est_full >= est_sub
// up to roundoff whenever the true restriction inequality holds.
struct RestrictionEstimates {
    double est_sub = 0.0;
    double est_full = 0.0;
};
RestrictionEstimates restriction_estimates(const Symbol& m, const Subgroup& H, double p,
                                           const NormBudget& budget);

// Both sides of Fell absorption (Lemma-2.3 style): norms of
// sum a_g (x) lambda(g) (x) pi(g) and sum a_g (x) lambda(g) at p = 2 and p = inf.
struct FellReport {
    double with_pi_p2 = 0.0;
    double without_pi_p2 = 0.0;
    double with_pi_inf = 0.0;
    double without_pi_inf = 0.0;
};
FellReport fell_absorption_check(const GroupPtr& G, const std::vector<CMatrix>& a,
                                 const std::vector<CMatrix>& pi);

// Text format: "<kind> <group-label>" then one "index re im" line per element.
void write_symbol(std::ostream& os, const Symbol& m);
Symbol read_symbol(std::istream& is, const GroupPtr& g);
void write_element(std::ostream& os, const AlgebraElement& f);
AlgebraElement read_element(std::istream& is, const GroupPtr& g);

} // namespace ncmult
