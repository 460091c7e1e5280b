#include "ncmult/schur.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace ncmult {

namespace {

struct SchurSpace {
    using Vec = CMatrix;
    const CMatrix* M;

    Vec apply(const Vec& A) const {
        Vec R = A;
        for (std::size_t i = 0; i < R.a.size(); ++i) R.a[i] *= M->a[i];
        return R;
    }
    Vec apply_adjoint(const Vec& A) const {
        Vec R = A;
        for (std::size_t i = 0; i < R.a.size(); ++i) R.a[i] *= std::conj(M->a[i]);
        return R;
    }
    double norm(const Vec& A, double p) const { return schatten_norm(A, p, 1.0); }
    Vec dual(const Vec& A, double p) const { return schatten_dual(A, p, 1.0); }
    Vec scale(const Vec& A, double s) const { return cplx(s, 0.0) * A; }
    Vec random_start(Rng& rng) const {
        Vec A(M->rows, M->cols);
        for (auto& v : A.a) v = rng.cnormal();
        return A;
    }
};

std::pair<int, int> argmax_entry(const CMatrix& M) {
    int bi = 0, bj = 0;
    double best = -1.0;
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < M.cols; ++j)
            if (std::abs(M(i, j)) > best) {
                best = std::abs(M(i, j));
                bi = i;
                bj = j;
            }
    return {bi, bj};
}

// Projection onto {W Hermitian : offdiagonal block = M, Re diag <= t}; the
// constraints touch disjoint coordinates, so the projection is coordinatewise.
void project_constraints(CMatrix& W, const CMatrix& M, double t) {
    const int n = M.rows;
    for (int i = 0; i < 2 * n; ++i) {
        for (int j = i + 1; j < 2 * n; ++j) {
            const cplx v = 0.5 * (W(i, j) + std::conj(W(j, i)));
            W(i, j) = v;
            W(j, i) = std::conj(v);
        }
        W(i, i) = std::min(W(i, i).real(), t);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            W(i, n + j) = M(i, j);
            W(n + j, i) = std::conj(M(i, j));
        }
}

struct FeasibilityOutcome {
    bool feasible = false;
    bool decided = true;
    CMatrix psd_point; // PSD iterate, near the constraint set when feasible
};

// Dykstra alternating projections between the PSD cone and the constraint set.
// Converged when successive constraint-set iterates differ by < 1e-9 (scaled);
// the probe is feasible when the converged point meets the cone. Early exits:
// a tiny cone gap is immediately feasible, a translating iterate (displacement
// settled while the gap stays large) is infeasible.
FeasibilityOutcome block_completion_feasible(const CMatrix& M, double t, const CMatrix* warm,
                                             int iteration_cap, double feas_tol) {
    const int n = M.rows;
    const int d = 2 * n;
    CMatrix x = warm ? *warm : CMatrix::zero(d, d);
    if (!warm)
        for (int i = 0; i < d; ++i) x(i, i) = t;
    project_constraints(x, M, t);

    CMatrix p = CMatrix::zero(d, d), q = CMatrix::zero(d, d);
    const double conv_tol = 1e-9 * std::max(1.0, t);
    constexpr int kWindow = 120;
    std::vector<double> gaps;
    gaps.reserve(std::size_t(iteration_cap));
    FeasibilityOutcome out;
    for (int it = 0; it < iteration_cap; ++it) {
        CMatrix y = psd_project(x + p);
        p = (x + p) - y;
        CMatrix z = y + q;
        project_constraints(z, M, t);
        q = (y + q) - z;
        const double gap = fro_norm(z - y);
        const double disp = fro_norm(z - x);
        out.psd_point = std::move(y);
        x = std::move(z);
        if (gap < feas_tol) {
            out.feasible = true;
            return out;
        }
        if (disp < conv_tol) {
            out.feasible = gap < 10.0 * feas_tol;
            return out;
        }
        gaps.push_back(gap);
        // a stagnant gap means the sets stay a fixed distance apart; a feasible
        // probe keeps shrinking it, however slowly
        if (it >= 2 * kWindow && gap > 0.999 * gaps[std::size_t(it - kWindow)]) return out;
    }
    // cap hit: still descending counts as feasible, anything else is undecided
    const std::size_t last = gaps.size() - 1;
    if (last >= 1000 && gaps[last] < 0.7 * gaps[last - 1000]) {
        out.feasible = true;
        return out;
    }
    out.decided = false; // treated as infeasible
    return out;
}

// Moore-Penrose inverse of a Hermitian PSD-ish matrix via its spectrum.
CMatrix pseudo_inverse_hermitian(const CMatrix& G) {
    SpectralData sd = hermitian_eig(G);
    const double lmax = sd.eigenvalues.empty() ? 0.0 : std::abs(sd.eigenvalues.back());
    const double cut = std::max(lmax, 1e-300) * 1e-12;
    return hermitian_function(sd, [cut](double x) { return x > cut ? 1.0 / x : 0.0; });
}

double factorization_value(const CMatrix& X, const CMatrix& Y, double* pmx = nullptr,
                           double* pmy = nullptr) {
    double mx = 0.0, my = 0.0;
    for (int i = 0; i < X.cols; ++i) {
        double nx = 0.0, ny = 0.0;
        for (int k = 0; k < X.rows; ++k) {
            nx += std::norm(X(k, i));
            ny += std::norm(Y(k, i));
        }
        mx = std::max(mx, std::sqrt(nx));
        my = std::max(my, std::sqrt(ny));
    }
    if (pmx) *pmx = mx;
    if (pmy) *pmy = my;
    return mx * my;
}

// Alternating least-norm updates of the factorization <x_i, y_j> = m_ij: with
// one side fixed, the minimal-norm solution shrinks every column at once. The
// resulting value is always a certified upper bound; it is optimal whenever it
// meets the entrywise lower bound.
Factorization polish_factorization(const CMatrix& M, int rounds) {
    const int n = M.rows;
    CMatrix X = conj_entries(transpose(M)); // columns x_i = conj(row_i), so <x_i, e_j> = m_ij
    CMatrix Y = CMatrix::identity(n);

    Factorization best;
    best.value = std::numeric_limits<double>::infinity();
    auto consider = [&](const CMatrix& Xc, const CMatrix& Yc) {
        double err = 0.0;
        CMatrix ip = adjoint(Xc) * Yc;
        err = max_abs(ip - M);
        const double val = factorization_value(Xc, Yc);
        if (err <= 1e-9 * std::max(1.0, max_abs(M)) && val < best.value) {
            best.x = Xc;
            best.y = Yc;
            best.value = val;
            best.reproduction_error = err;
        }
    };
    consider(X, Y);
    for (int r = 0; r < rounds; ++r) {
        X = Y * pseudo_inverse_hermitian(adjoint(Y) * Y) * adjoint(M);
        Y = X * pseudo_inverse_hermitian(adjoint(X) * X) * M;
        double mx = 0.0, my = 0.0;
        factorization_value(X, Y, &mx, &my);
        if (mx > 0.0 && my > 0.0) { // balance the two sides
            const double s = std::sqrt(my / mx);
            X = cplx(s, 0.0) * X;
            Y = cplx(1.0 / s, 0.0) * Y;
        }
        consider(X, Y);
    }
    return best;
}

Factorization extract_factorization(const CMatrix& W, const CMatrix& M) {
    const int n = M.rows;
    SpectralData sd = hermitian_eig(W);
    const int d = W.rows;
    CMatrix R(d, d); // W = R^* R with R = diag(sqrt lambda^+) V^*
    for (int k = 0; k < d; ++k) {
        const double s = std::sqrt(std::max(0.0, sd.eigenvalues[std::size_t(k)]));
        for (int j = 0; j < d; ++j) R(k, j) = s * std::conj(sd.eigenvectors(j, k));
    }
    Factorization f;
    f.x = CMatrix(d, n);
    f.y = CMatrix(d, n);
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < n; ++i) {
            f.x(k, i) = R(k, i);
            f.y(k, i) = R(k, n + i);
        }
    double mx = 0.0, my = 0.0, err = 0.0;
    for (int i = 0; i < n; ++i) {
        double nx = 0.0, ny = 0.0;
        for (int k = 0; k < d; ++k) {
            nx += std::norm(f.x(k, i));
            ny += std::norm(f.y(k, i));
        }
        mx = std::max(mx, std::sqrt(nx));
        my = std::max(my, std::sqrt(ny));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx ip = 0.0;
            for (int k = 0; k < d; ++k) ip += std::conj(f.x(k, i)) * f.y(k, j);
            err = std::max(err, std::abs(ip - M(i, j)));
        }
    f.value = mx * my;
    f.reproduction_error = err;
    return f;
}

} // namespace

SchurSymbol herz_schur(const Symbol& m) {
    std::vector<int> all(std::size_t(m.group->n));
    for (int g = 0; g < m.group->n; ++g) all[std::size_t(g)] = g;
    return herz_schur_section(m, all);
}

SchurSymbol herz_schur_section(const Symbol& m, const std::vector<int>& section) {
    SchurSymbol sym;
    sym.provenance_group = m.group;
    sym.section = section;
    const int s = int(section.size());
    sym.M = CMatrix(s, s);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
            sym.M(i, j) = m.values[std::size_t(m.group->op(
                m.group->inverse(section[std::size_t(i)]), section[std::size_t(j)]))];
    return sym;
}

CMatrix schur_apply(const SchurSymbol& sym, const CMatrix& A) {
    if (A.rows != sym.M.rows || A.cols != sym.M.cols)
        throw std::invalid_argument("schur_apply: size mismatch");
    CMatrix R = A;
    for (std::size_t i = 0; i < R.a.size(); ++i) R.a[i] *= sym.M.a[i];
    return R;
}

SchurNormEstimate schur_norm_estimate(const SchurSymbol& sym, double p, const NormBudget& budget,
                                      const std::vector<CMatrix>& warm_starts) {
    if (!(p >= 1.0)) throw std::invalid_argument("schur_norm_estimate: p must satisfy p >= 1");
    if (budget.restarts <= 0 || budget.iterations <= 0)
        throw std::invalid_argument("schur_norm_estimate: zero budget");
    const auto [bi, bj] = argmax_entry(sym.M);

    SchurNormEstimate est;
    if (p == 2.0) {
        // Hilbert-Schmidt acts entrywise
        est.lower_bound = std::abs(sym.M(bi, bj));
        est.witness = CMatrix::zero(sym.M.rows, sym.M.cols);
        est.witness(bi, bj) = 1.0;
        est.converged = true;
        return est;
    }

    std::vector<CMatrix> starts = warm_starts;
    CMatrix unit = CMatrix::zero(sym.M.rows, sym.M.cols);
    unit(bi, bj) = 1.0; // matrix unit is exact at p = 2 and strong elsewhere
    starts.push_back(std::move(unit));

    SchurSpace space{&sym.M};
    auto out = power_ascent(space, p, budget, std::move(starts));
    est.lower_bound = out.value;
    est.witness = std::move(out.witness);
    est.converged = out.converged;
    return est;
}

CbNormResult cb_inf_norm(const SchurSymbol& sym, double tol) {
    if (!sym.M.square()) throw std::invalid_argument("cb_inf_norm: symbol must be square");
    if (!(tol > 0.0)) throw std::invalid_argument("cb_inf_norm: tolerance must be positive");
    const CMatrix& M = sym.M;
    const int n = M.rows;

    double lo = max_abs(M); // never above the cb norm
    double maxrow = 0.0, maxcol = 0.0;
    for (int i = 0; i < n; ++i) {
        double r = 0.0, c = 0.0;
        for (int j = 0; j < n; ++j) {
            r += std::norm(M(i, j));
            c += std::norm(M(j, i));
        }
        maxrow = std::max(maxrow, std::sqrt(r));
        maxcol = std::max(maxcol, std::sqrt(c));
    }
    double hi = std::max(lo, std::min(maxrow, maxcol));
    const double scale = std::max(1.0, hi);
    const double feas_tol = 1e-8 * scale;
    const int cap = 5000;

    CbNormResult res;
    if (hi <= 0.0) { // zero symbol
        res.certificate.x = CMatrix::zero(1, n);
        res.certificate.y = CMatrix::zero(1, n);
        return res;
    }

    // Factorization polish alone often certifies the value: it returns an upper
    // bound that meets the entrywise lower bound on peaked symbols, skipping
    // the ill-conditioned near-boundary feasibility probes entirely.
    Factorization polished = polish_factorization(M, 300);
    if (std::isfinite(polished.value)) hi = std::min(hi, polished.value);
    if (hi - lo <= tol) {
        res.value = hi;
        res.lower = lo;
        res.upper = hi;
        res.certificate = polished;
        return res;
    }

    // bisection with Dykstra feasibility; the Gram matrix of the polished
    // factorization is a known feasible starting point at t = hi
    CMatrix warm(2 * n, 2 * n);
    {
        const CMatrix& X = polished.x;
        const CMatrix& Y = polished.y;
        CMatrix XY(X.rows, 2 * n);
        for (int k = 0; k < X.rows; ++k)
            for (int i = 0; i < n; ++i) {
                XY(k, i) = X(k, i);
                XY(k, n + i) = Y(k, i);
            }
        warm = adjoint(XY) * XY;
        project_constraints(warm, M, hi);
    }

    CMatrix best_feasible = warm;
    const int depth = int(std::ceil(std::log2(std::max(2.0, (hi - lo) / tol))));
    for (int step = 0; step < depth && hi - lo > tol; ++step) {
        const double mid = 0.5 * (lo + hi);
        FeasibilityOutcome out = block_completion_feasible(M, mid, &best_feasible, cap, feas_tol);
        if (out.feasible) {
            hi = mid;
            best_feasible = out.psd_point;
        } else {
            lo = mid;
            if (!out.decided) res.converged = false;
        }
    }

    // final certificate solve slightly inside the feasible region
    const double t_cert = hi + 0.5 * tol;
    FeasibilityOutcome fin = block_completion_feasible(M, t_cert, &best_feasible, 4 * cap,
                                                       std::min(feas_tol, 1e-9 * scale));
    res.certificate = extract_factorization(fin.psd_point, M);
    if (polished.value <= res.certificate.value &&
        polished.reproduction_error <= res.certificate.reproduction_error)
        res.certificate = polished;
    res.lower = lo;
    res.upper = hi;
    res.value = hi;
    return res;
}

std::vector<SectionValue> finite_section_sup(const std::vector<SchurSymbol>& sections, double p,
                                             const NormBudget& budget) {
    std::vector<SectionValue> table;
    table.reserve(sections.size());
    CMatrix prev_witness;
    int prev_size = 0;
    for (std::size_t s = 0; s < sections.size(); ++s) {
        const SchurSymbol& sym = sections[s];
        const int size = sym.size();
        if (size < prev_size)
            throw std::invalid_argument("finite_section_sup: sections must be nondecreasing");
        std::vector<CMatrix> warm;
        if (prev_size > 0) {
            CMatrix lifted = CMatrix::zero(size, size); // pad with zeros, same S_p norm
            for (int i = 0; i < prev_size; ++i)
                for (int j = 0; j < prev_size; ++j) lifted(i, j) = prev_witness(i, j);
            warm.push_back(std::move(lifted));
        }
        NormBudget b = budget;
        b.seed = Rng(budget.seed, s).next_u64();
        SchurNormEstimate est = schur_norm_estimate(sym, p, b, warm);
        table.push_back(SectionValue{size, est.lower_bound});
        prev_witness = est.witness;
        prev_size = size;
    }
    return table;
}

TransferenceReport transference_check(const Symbol& m, double p, double tol) {
    const GroupPtr& G = m.group;
    if (!G->abelian)
        throw std::invalid_argument("transference_check: desk form needs a cyclic group");
    const int n = G->n;
    TransferenceReport rep;
    if (p == 2.0) {
        rep.fourier_side = m.max_abs();
        rep.schur_side = herz_schur(m).max_abs_entry();
        return rep;
    }
    if (!std::isinf(p))
        throw std::invalid_argument("transference_check: only p = 2 and p = infinity supported");

    // l1 norm of the inverse DFT: the exact norm of convolution by m-check on
    // the n-point commutative algebra
    double l1 = 0.0;
    for (int x = 0; x < n; ++x) {
        cplx acc = 0.0;
        for (int k = 0; k < n; ++k)
            acc += m.values[std::size_t(k)] *
                   std::polar(1.0, 6.283185307179586477 * double(k) * double(x) / double(n));
        l1 += std::abs(acc) / double(n);
    }
    rep.fourier_side = l1;
    rep.schur_side = cb_inf_norm(herz_schur(m), tol).value;
    return rep;
}

SchurPeriodizeReport schur_periodize_check(const GroupPtr& G, const std::vector<int>& H_elems,
                                           const Symbol& m_q, double p, const NormBudget& budget) {
    CosetStructure cs = coset_structure(G, H_elems);
    if (!cs.normal) throw std::invalid_argument("schur_periodize_check: subgroup is not normal");
    GroupPtr quotient = cs.quotient_ptr();
    if (!same_group(m_q.group, quotient))
        throw std::invalid_argument("schur_periodize_check: symbol group is not the quotient");

    Symbol m_pi(G, std::vector<cplx>(std::size_t(G->n)));
    for (int g = 0; g < G->n; ++g)
        m_pi.values[std::size_t(g)] = m_q.values[std::size_t(cs.coset_of[std::size_t(g)])];

    SchurSymbol Mq = herz_schur(m_q);
    SchurSymbol Mpi = herz_schur(m_pi);

    SchurPeriodizeReport rep;
    // conjugation identity on matrix units: m_pi(g1^{-1} g2) = m_q(c(g1)^{-1} c(g2))
    const FiniteGroup& quo = *quotient;
    for (int g1 = 0; g1 < G->n; ++g1)
        for (int g2 = 0; g2 < G->n; ++g2) {
            const cplx lhs = m_pi.values[std::size_t(G->op(G->inverse(g1), g2))];
            const cplx rhs = m_q.values[std::size_t(
                quo.op(quo.inverse(cs.coset_of[std::size_t(g1)]), cs.coset_of[std::size_t(g2)]))];
            rep.conjugation_residual = std::max(rep.conjugation_residual, std::abs(lhs - rhs));
        }

    if (p == 2.0) {
        rep.quotient_value = Mq.max_abs_entry();
        rep.lifted_value = Mpi.max_abs_entry();
        return rep;
    }

    NormBudget bq = budget;
    bq.seed = Rng(budget.seed, 29).next_u64();
    SchurNormEstimate eq = schur_norm_estimate(Mq, p, bq);
    rep.quotient_value = eq.lower_bound;

    // lift the quotient witness through the coset reindexing (h factor pinned
    // at the identity); same Schatten norm, same multiplier value
    CMatrix lifted = CMatrix::zero(G->n, G->n);
    const int e_sub = cs.subgroup.index_in_sub[std::size_t(G->identity)];
    for (int g1 = 0; g1 < G->n; ++g1) {
        if (cs.factor[std::size_t(g1)] != e_sub) continue;
        for (int g2 = 0; g2 < G->n; ++g2) {
            if (cs.factor[std::size_t(g2)] != e_sub) continue;
            lifted(g1, g2) =
                eq.witness(cs.coset_of[std::size_t(g1)], cs.coset_of[std::size_t(g2)]);
        }
    }
    SchurNormEstimate epi = schur_norm_estimate(Mpi, p, budget, {lifted});
    rep.lifted_value = epi.lower_bound;
    return rep;
}

void write_schur_symbol(std::ostream& os, const SchurSymbol& sym) {
    const int n = sym.size();
    os << "schur " << n << '\n';
    os.precision(17);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            os << sym.M(i, j).real() << ' ' << sym.M(i, j).imag();
            os << (j + 1 == n ? '\n' : ' ');
        }
    }
}

SchurSymbol read_schur_symbol(std::istream& is) {
    std::string tag;
    int n = 0;
    if (!(is >> tag >> n) || tag != "schur" || n < 1)
        throw std::runtime_error("read_schur_symbol: malformed header");
    SchurSymbol sym;
    sym.M = CMatrix(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double re, im;
            if (!(is >> re >> im)) throw std::runtime_error("read_schur_symbol: malformed entry");
            sym.M(i, j) = cplx(re, im);
        }
    return sym;
}

} // namespace ncmult
