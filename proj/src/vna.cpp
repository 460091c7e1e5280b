#include "ncmult/vna.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace ncmult {

namespace {

void require_same_group(const GroupPtr& a, const GroupPtr& b, const char* op) {
    if (!same_group(a, b)) throw std::invalid_argument(std::string(op) + ": group mismatch");
}

cplx phase_of(cplx z) {
    const double a = std::abs(z);
    return a > 0.0 ? z / a : cplx(0.0, 0.0);
}

} // namespace

bool same_group(const GroupPtr& a, const GroupPtr& b) {
    if (a == b) return true;
    return a && b && a->n == b->n && a->label == b->label;
}

AlgebraElement AlgebraElement::delta(const GroupPtr& g, int element) {
    AlgebraElement f(g, std::vector<cplx>(std::size_t(g->n)));
    f.coeffs[std::size_t(element)] = 1.0;
    return f;
}

AlgebraElement AlgebraElement::zero(const GroupPtr& g) {
    return AlgebraElement(g, std::vector<cplx>(std::size_t(g->n)));
}

Symbol Symbol::constant(const GroupPtr& g, cplx c) {
    return Symbol(g, std::vector<cplx>(std::size_t(g->n), c));
}

double Symbol::max_abs() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
}

Symbol Symbol::conjugated() const {
    Symbol s = *this;
    for (auto& v : s.values) v = std::conj(v);
    return s;
}

Symbol Symbol::reversed() const {
    Symbol s(group, std::vector<cplx>(values.size()));
    for (int g = 0; g < group->n; ++g)
        s.values[std::size_t(g)] = values[std::size_t(group->inverse(g))];
    return s;
}

Symbol Symbol::restricted(const Subgroup& H) const {
    require_same_group(group, H.parent, "Symbol::restricted");
    std::vector<cplx> vals(H.elements.size());
    for (std::size_t i = 0; i < H.elements.size(); ++i)
        vals[i] = values[std::size_t(H.elements[i])];
    return Symbol(H.group, std::move(vals));
}

CMatrix left_translation(const FiniteGroup& g, int element) {
    CMatrix P(g.n, g.n);
    for (int y = 0; y < g.n; ++y) P(g.op(element, y), y) = 1.0;
    return P;
}

CMatrix regular_rep(const AlgebraElement& f) {
    const FiniteGroup& g = *f.group;
    CMatrix M(g.n, g.n);
    for (int x = 0; x < g.n; ++x) {
        const cplx c = f.coeffs[std::size_t(x)];
        if (c == cplx(0.0, 0.0)) continue;
        for (int y = 0; y < g.n; ++y) M(g.op(x, y), y) += c;
    }
    return M;
}

AlgebraElement coefficients_of(const GroupPtr& g, const CMatrix& M) {
    AlgebraElement f = AlgebraElement::zero(g);
    const double w = 1.0 / double(g->n);
    for (int x = 0; x < g->n; ++x) {
        cplx acc = 0.0;
        for (int y = 0; y < g->n; ++y) acc += M(g->op(x, y), y);
        f.coeffs[std::size_t(x)] = w * acc;
    }
    return f;
}

cplx plancherel_trace(const AlgebraElement& f) {
    return f.coeffs[std::size_t(f.group->identity)];
}

AlgebraElement adjoint_element(const AlgebraElement& f) {
    AlgebraElement r = AlgebraElement::zero(f.group);
    for (int g = 0; g < f.group->n; ++g)
        r.coeffs[std::size_t(g)] = std::conj(f.coeffs[std::size_t(f.group->inverse(g))]);
    return r;
}

AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& h) {
    require_same_group(f.group, h.group, "convolve");
    const FiniteGroup& g = *f.group;
    AlgebraElement r = AlgebraElement::zero(f.group);
    for (int k = 0; k < g.n; ++k) {
        const cplx fk = f.coeffs[std::size_t(k)];
        if (fk == cplx(0.0, 0.0)) continue;
        const int kinv = g.inverse(k);
        for (int x = 0; x < g.n; ++x)
            r.coeffs[std::size_t(x)] += fk * h.coeffs[std::size_t(g.op(kinv, x))];
    }
    return r;
}

AlgebraElement operator+(const AlgebraElement& f, const AlgebraElement& h) {
    require_same_group(f.group, h.group, "operator+");
    AlgebraElement r = f;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += h.coeffs[i];
    return r;
}

AlgebraElement operator-(const AlgebraElement& f, const AlgebraElement& h) {
    require_same_group(f.group, h.group, "operator-");
    AlgebraElement r = f;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] -= h.coeffs[i];
    return r;
}

AlgebraElement operator*(cplx s, const AlgebraElement& f) {
    AlgebraElement r = f;
    for (auto& v : r.coeffs) v *= s;
    return r;
}

double l2_norm(const AlgebraElement& f) {
    double s = 0.0;
    for (const auto& v : f.coeffs) s += std::norm(v);
    return std::sqrt(s);
}

namespace {

// Gelfand transform against the character table, aligned with the regular
// representation's eigenvalues: F_r = sum_g conj(chi_r(g)) fhat(g).
std::vector<cplx> gelfand(const FiniteGroup& g, const std::vector<cplx>& c) {
    const CMatrix& X = *g.characters;
    std::vector<cplx> F(std::size_t(g.n));
    for (int r = 0; r < g.n; ++r) {
        cplx acc = 0.0;
        for (int a = 0; a < g.n; ++a) acc += std::conj(X(r, a)) * c[std::size_t(a)];
        F[std::size_t(r)] = acc;
    }
    return F;
}

std::vector<cplx> ungelfand(const FiniteGroup& g, const std::vector<cplx>& F) {
    const CMatrix& X = *g.characters;
    std::vector<cplx> c(std::size_t(g.n));
    const double w = 1.0 / double(g.n);
    for (int a = 0; a < g.n; ++a) {
        cplx acc = 0.0;
        for (int r = 0; r < g.n; ++r) acc += X(r, a) * F[std::size_t(r)];
        c[std::size_t(a)] = w * acc;
    }
    return c;
}

double spectral_lp(const std::vector<cplx>& F, double p, double weight) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& v : F) m = std::max(m, std::abs(v));
        return m;
    }
    double acc = 0.0;
    for (const auto& v : F) acc += std::pow(std::abs(v), p);
    return std::pow(weight * acc, 1.0 / p);
}

std::vector<cplx> spectral_dual(const std::vector<cplx>& F, double p, double weight) {
    std::vector<cplx> D(F.size());
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& v : F) m = std::max(m, std::abs(v));
        if (m <= 0.0) return D;
        const double thr = m * (1.0 - 1e-12);
        double mass = 0.0;
        for (const auto& v : F)
            if (std::abs(v) >= thr) mass += 1.0;
        for (std::size_t i = 0; i < F.size(); ++i)
            if (std::abs(F[i]) >= thr) D[i] = phase_of(F[i]) / (weight * mass);
        return D;
    }
    if (p == 1.0) {
        for (std::size_t i = 0; i < F.size(); ++i) D[i] = phase_of(F[i]);
        return D;
    }
    const double np = spectral_lp(F, p, weight);
    if (np <= 0.0) return D;
    for (std::size_t i = 0; i < F.size(); ++i)
        D[i] = phase_of(F[i]) * std::pow(std::abs(F[i]) / np, p - 1.0) / 1.0;
    // scale so the dual has unit conjugate norm: |D|_{p'} = 1 by construction
    return D;
}

// Ascent backend on the regular representation (any finite group).
struct DenseElementSpace {
    using Vec = std::vector<cplx>;
    GroupPtr group;
    std::vector<cplx> symbol;
    double weight;

    Vec apply(const Vec& c) const {
        Vec r(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) r[i] = symbol[i] * c[i];
        return r;
    }
    Vec apply_adjoint(const Vec& c) const {
        Vec r(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) r[i] = std::conj(symbol[i]) * c[i];
        return r;
    }
    double norm(const Vec& c, double p) const {
        return schatten_norm(regular_rep(AlgebraElement(group, c)), p, weight);
    }
    Vec dual(const Vec& c, double p) const {
        CMatrix D = schatten_dual(regular_rep(AlgebraElement(group, c)), p, weight);
        return coefficients_of(group, D).coeffs;
    }
    Vec scale(const Vec& c, double s) const {
        Vec r = c;
        for (auto& v : r) v *= s;
        return r;
    }
    Vec random_start(Rng& rng) const {
        Vec r(std::size_t(group->n));
        for (auto& v : r) v = rng.cnormal();
        return r;
    }
};

// Ascent backend through the character table (abelian constructions); the
// regular representation is diagonal there, so functional calculus is
// pointwise on the Gelfand side.
struct AbelianElementSpace {
    using Vec = std::vector<cplx>;
    GroupPtr group;
    std::vector<cplx> symbol;
    double weight;

    Vec apply(const Vec& c) const {
        Vec r(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) r[i] = symbol[i] * c[i];
        return r;
    }
    Vec apply_adjoint(const Vec& c) const {
        Vec r(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) r[i] = std::conj(symbol[i]) * c[i];
        return r;
    }
    double norm(const Vec& c, double p) const {
        return spectral_lp(gelfand(*group, c), p, weight);
    }
    Vec dual(const Vec& c, double p) const {
        return ungelfand(*group, spectral_dual(gelfand(*group, c), p, weight));
    }
    Vec scale(const Vec& c, double s) const {
        Vec r = c;
        for (auto& v : r) v *= s;
        return r;
    }
    Vec random_start(Rng& rng) const {
        Vec r(std::size_t(group->n));
        for (auto& v : r) v = rng.cnormal();
        return r;
    }
};

} // namespace

double lp_norm(const AlgebraElement& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must satisfy p >= 1");
    const double w = 1.0 / double(f.group->n);
    if (f.group->characters) return spectral_lp(gelfand(*f.group, f.coeffs), p, w);
    return schatten_norm(regular_rep(f), p, w);
}

AlgebraElement cond_expectation(const AlgebraElement& f, const Subgroup& H) {
    require_same_group(f.group, H.parent, "cond_expectation");
    AlgebraElement r = AlgebraElement::zero(H.group);
    for (std::size_t i = 0; i < H.elements.size(); ++i)
        r.coeffs[i] = f.coeffs[std::size_t(H.elements[i])];
    return r;
}

AlgebraElement embed(const AlgebraElement& f_on_sub, const Subgroup& H) {
    require_same_group(f_on_sub.group, H.group, "embed");
    AlgebraElement r = AlgebraElement::zero(H.parent);
    for (std::size_t i = 0; i < H.elements.size(); ++i)
        r.coeffs[std::size_t(H.elements[i])] = f_on_sub.coeffs[i];
    return r;
}

AlgebraElement fourier_multiplier(const Symbol& m, const AlgebraElement& f) {
    require_same_group(m.group, f.group, "fourier_multiplier");
    AlgebraElement r = f;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] *= m.values[i];
    return r;
}

NormEstimate multiplier_norm_estimate(const Symbol& m, double p, const NormBudget& budget,
                                      const std::vector<AlgebraElement>& warm_starts) {
    if (!(p >= 1.0)) throw std::invalid_argument("multiplier_norm_estimate: p must satisfy p >= 1");
    if (budget.restarts <= 0 || budget.iterations <= 0)
        throw std::invalid_argument("multiplier_norm_estimate: zero budget");
    const GroupPtr& G = m.group;

    if (p == 2.0) {
        // T_m is diagonal on the Plancherel basis; the norm is max |m|.
        int arg = 0;
        for (int g = 1; g < G->n; ++g)
            if (std::abs(m.values[std::size_t(g)]) > std::abs(m.values[std::size_t(arg)])) arg = g;
        NormEstimate est;
        est.lower_bound = std::abs(m.values[std::size_t(arg)]);
        est.witness = AlgebraElement::delta(G, arg);
        est.converged = true;
        return est;
    }

    std::vector<std::vector<cplx>> starts;
    starts.reserve(warm_starts.size() + 1);
    for (const auto& ws : warm_starts) {
        require_same_group(ws.group, G, "multiplier_norm_estimate warm start");
        starts.push_back(ws.coeffs);
    }
    // the delta at argmax |m| is exact at p = 2 and a strong start elsewhere
    {
        int arg = 0;
        for (int g = 1; g < G->n; ++g)
            if (std::abs(m.values[std::size_t(g)]) > std::abs(m.values[std::size_t(arg)])) arg = g;
        starts.push_back(AlgebraElement::delta(G, arg).coeffs);
    }

    NormEstimate est;
    if (G->characters) {
        AbelianElementSpace space{G, m.values, 1.0 / double(G->n)};
        auto out = power_ascent(space, p, budget, std::move(starts));
        est.lower_bound = out.value;
        est.witness = AlgebraElement(G, std::move(out.witness));
        est.converged = out.converged;
    } else {
        DenseElementSpace space{G, m.values, 1.0 / double(G->n)};
        auto out = power_ascent(space, p, budget, std::move(starts));
        est.lower_bound = out.value;
        est.witness = AlgebraElement(G, std::move(out.witness));
        est.converged = out.converged;
    }
    return est;
}

RestrictionEstimates restriction_estimates(const Symbol& m, const Subgroup& H, double p,
                                           const NormBudget& budget) {
    require_same_group(m.group, H.parent, "restriction_estimates");
    Symbol mH = m.restricted(H);
    NormBudget sub_budget = budget;
    sub_budget.seed = Rng(budget.seed, 17).next_u64();
    NormEstimate sub = multiplier_norm_estimate(mH, p, sub_budget);
    std::vector<AlgebraElement> warm;
    if (!sub.witness.coeffs.empty()) warm.push_back(embed(sub.witness, H));
    NormEstimate full = multiplier_norm_estimate(m, p, budget, warm);
    return RestrictionEstimates{sub.lower_bound, full.lower_bound};
}

FellReport fell_absorption_check(const GroupPtr& G, const std::vector<CMatrix>& a,
                                 const std::vector<CMatrix>& pi) {
    const int n = G->n;
    if (int(a.size()) != n || int(pi.size()) != n)
        throw std::invalid_argument("fell_absorption_check: need one coefficient and one unitary per element");
    const int k = a.front().rows;
    const int d = pi.front().rows;
    for (const auto& M : a)
        if (M.rows != k || M.cols != k)
            throw std::invalid_argument("fell_absorption_check: coefficient size mismatch");
    for (const auto& U : pi) {
        if (U.rows != d || U.cols != d)
            throw std::invalid_argument("fell_absorption_check: representation size mismatch");
        if (max_abs(adjoint(U) * U - CMatrix::identity(d)) > 1e-10)
            throw std::invalid_argument("fell_absorption_check: representation not unitary");
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (max_abs(pi[std::size_t(x)] * pi[std::size_t(y)] - pi[std::size_t(G->op(x, y))]) >
                1e-10)
                throw std::invalid_argument(
                    "fell_absorption_check: representation is not a homomorphism at pair (" +
                    std::to_string(x) + "," + std::to_string(y) + ")");

    CMatrix with_pi(k * n * d, k * n * d);
    CMatrix without_pi(k * n, k * n);
    for (int g = 0; g < n; ++g) {
        const CMatrix lam = left_translation(*G, g);
        without_pi = without_pi + kron(a[std::size_t(g)], lam);
        with_pi = with_pi + kron(a[std::size_t(g)], kron(lam, pi[std::size_t(g)]));
    }
    FellReport rep;
    rep.with_pi_p2 = schatten_norm(with_pi, 2.0, 1.0 / double(k * n * d));
    rep.without_pi_p2 = schatten_norm(without_pi, 2.0, 1.0 / double(k * n));
    rep.with_pi_inf = schatten_norm(with_pi, kInfExp, 1.0);
    rep.without_pi_inf = schatten_norm(without_pi, kInfExp, 1.0);
    return rep;
}

namespace {

void write_lines(std::ostream& os, const char* kind, const std::string& label,
                 const std::vector<cplx>& v) {
    os << kind << ' ' << label << '\n';
    os.precision(17);
    for (std::size_t i = 0; i < v.size(); ++i)
        os << i << ' ' << v[i].real() << ' ' << v[i].imag() << '\n';
}

std::vector<cplx> read_lines(std::istream& is, const char* kind, const GroupPtr& g) {
    std::string tag, label;
    if (!(is >> tag >> label) || tag != kind)
        throw std::runtime_error(std::string("read_") + kind + ": malformed header");
    if (label != g->label)
        throw std::runtime_error(std::string("read_") + kind + ": group label mismatch: " + label);
    std::vector<cplx> v(std::size_t(g->n));
    for (int i = 0; i < g->n; ++i) {
        std::size_t idx;
        double re, im;
        if (!(is >> idx >> re >> im) || idx >= v.size())
            throw std::runtime_error(std::string("read_") + kind + ": malformed entry");
        v[idx] = cplx(re, im);
    }
    return v;
}

} // namespace

void write_symbol(std::ostream& os, const Symbol& m) {
    write_lines(os, "symbol", m.group->label, m.values);
}

Symbol read_symbol(std::istream& is, const GroupPtr& g) {
    return Symbol(g, read_lines(is, "symbol", g));
}

void write_element(std::ostream& os, const AlgebraElement& f) {
    write_lines(os, "element", f.group->label, f.coeffs);
}

AlgebraElement read_element(std::istream& is, const GroupPtr& g) {
    return AlgebraElement(g, read_lines(is, "element", g));
}

} // namespace ncmult
