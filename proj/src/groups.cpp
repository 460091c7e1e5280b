#include "ncmult/groups.hpp"

#include "ncmult/rng.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ncmult {

namespace {

constexpr int kFullCheckOrder = 64;     // associativity on all triples up to here
constexpr int kSampledTriples = 20000;  // beyond that, sampled
constexpr int kMaxCharacterOrder = 1024;

void validate_axioms(const FiniteGroup& g) {
    const int n = g.n;
    const int e = g.identity;
    for (int a = 0; a < n; ++a) {
        if (g.op(e, a) != a || g.op(a, e) != a)
            throw std::logic_error("group " + g.label + ": identity axiom fails at " +
                                   std::to_string(a));
        if (g.op(a, g.inverse(a)) != e || g.op(g.inverse(a), a) != e)
            throw std::logic_error("group " + g.label + ": inverse axiom fails at " +
                                   std::to_string(a));
    }
    auto assoc = [&](int a, int b, int c) {
        if (g.op(g.op(a, b), c) != g.op(a, g.op(b, c)))
            throw std::logic_error("group " + g.label + ": associativity fails at (" +
                                   std::to_string(a) + "," + std::to_string(b) + "," +
                                   std::to_string(c) + ")");
    };
    if (n <= kFullCheckOrder) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) assoc(a, b, c);
    } else {
        Rng rng(0xA5CU, std::uint64_t(n));
        for (int t = 0; t < kSampledTriples; ++t)
            assoc(int(rng.below(std::uint64_t(n))), int(rng.below(std::uint64_t(n))),
                  int(rng.below(std::uint64_t(n))));
    }
}

bool table_abelian(const FiniteGroup& g) {
    for (int a = 0; a < g.n; ++a)
        for (int b = a + 1; b < g.n; ++b)
            if (g.op(a, b) != g.op(b, a)) return false;
    return true;
}

GroupPtr finalize(FiniteGroup g) {
    validate_axioms(g);
    g.abelian = table_abelian(g);
    return std::make_shared<const FiniteGroup>(std::move(g));
}

std::vector<int> compute_inverses(const FiniteGroup& g) {
    std::vector<int> inv(std::size_t(g.n), -1);
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
            if (g.op(a, b) == g.identity) {
                inv[std::size_t(a)] = b;
                break;
            }
    return inv;
}

} // namespace

GroupPtr cyclic_group(int n) {
    if (n < 1) throw std::invalid_argument("cyclic_group: order must be positive");
    FiniteGroup g;
    g.n = n;
    g.label = "cyclic" + std::to_string(n);
    g.identity = 0;
    g.mult.resize(std::size_t(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.mult[std::size_t(a) * n + b] = (a + b) % n;
    g.inv.resize(std::size_t(n));
    for (int a = 0; a < n; ++a) g.inv[std::size_t(a)] = (n - a) % n;
    if (n <= kMaxCharacterOrder) {
        auto X = std::make_shared<CMatrix>(n, n);
        for (int r = 0; r < n; ++r)
            for (int a = 0; a < n; ++a) {
                const double ang = 2.0 * 3.14159265358979323846 * double(r) * double(a) / double(n);
                (*X)(r, a) = cplx(std::cos(ang), std::sin(ang));
            }
        g.characters = X;
    }
    return finalize(std::move(g));
}

GroupPtr product_group(const GroupPtr& g1, const GroupPtr& g2) {
    const int n1 = g1->n, n2 = g2->n, n = n1 * n2;
    FiniteGroup g;
    g.n = n;
    g.label = "product(" + g1->label + "," + g2->label + ")";
    g.identity = g1->identity * n2 + g2->identity;
    g.mult.resize(std::size_t(n) * n);
    for (int a = 0; a < n; ++a) {
        const int a1 = a / n2, a2 = a % n2;
        for (int b = 0; b < n; ++b) {
            const int b1 = b / n2, b2 = b % n2;
            g.mult[std::size_t(a) * n + b] = g1->op(a1, b1) * n2 + g2->op(a2, b2);
        }
    }
    g.inv.resize(std::size_t(n));
    for (int a = 0; a < n; ++a)
        g.inv[std::size_t(a)] = g1->inverse(a / n2) * n2 + g2->inverse(a % n2);
    if (g1->characters && g2->characters && n <= kMaxCharacterOrder) {
        auto X = std::make_shared<CMatrix>(n, n);
        const CMatrix& X1 = *g1->characters;
        const CMatrix& X2 = *g2->characters;
        for (int r = 0; r < n; ++r)
            for (int a = 0; a < n; ++a)
                (*X)(r, a) = X1(r / n2, a / n2) * X2(r % n2, a % n2);
        g.characters = X;
    }
    return finalize(std::move(g));
}

GroupPtr dihedral_group(int n) {
    if (n < 1) throw std::invalid_argument("dihedral_group: parameter must be positive");
    const int m = 2 * n; // element a + n*e is r^a s^e
    FiniteGroup g;
    g.n = m;
    g.label = "dihedral" + std::to_string(n);
    g.identity = 0;
    g.mult.resize(std::size_t(m) * m);
    auto idx = [n](int a, int e) { return ((a % n) + n) % n + n * e; };
    for (int a = 0; a < n; ++a)
        for (int e = 0; e < 2; ++e)
            for (int b = 0; b < n; ++b)
                for (int f = 0; f < 2; ++f)
                    g.mult[std::size_t(idx(a, e)) * m + idx(b, f)] =
                        idx(e ? a - b : a + b, e ^ f);
    g.inv = compute_inverses(g);
    return finalize(std::move(g));
}

GroupPtr symmetric_group(int n) {
    if (n < 1) throw std::invalid_argument("symmetric_group: parameter must be positive");
    if (n > 5)
        throw std::invalid_argument("symmetric_group: n > 5 rejected, table too large for desk scale");
    std::vector<std::vector<int>> perms;
    std::vector<int> base(std::size_t(n), 0);
    std::iota(base.begin(), base.end(), 0);
    do {
        perms.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    const int m = int(perms.size());
    std::map<std::vector<int>, int> rank;
    for (int i = 0; i < m; ++i) rank[perms[std::size_t(i)]] = i;

    FiniteGroup g;
    g.n = m;
    g.label = "symmetric" + std::to_string(n);
    g.identity = 0; // identity permutation is lexicographically first
    g.mult.resize(std::size_t(m) * m);
    std::vector<int> comp(std::size_t(n), 0);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            for (int x = 0; x < n; ++x)
                comp[std::size_t(x)] = perms[std::size_t(a)][std::size_t(perms[std::size_t(b)][std::size_t(x)])];
            g.mult[std::size_t(a) * m + b] = rank.at(comp);
        }
    g.inv = compute_inverses(g);
    return finalize(std::move(g));
}

GroupPtr heisenberg_mod(int n) {
    if (n < 1) throw std::invalid_argument("heisenberg_mod: parameter must be positive");
    const int m = n * n * n; // element a + n*b + n^2*c is (a,b,c)
    FiniteGroup g;
    g.n = m;
    g.label = "heisenberg" + std::to_string(n);
    g.identity = 0;
    g.mult.resize(std::size_t(m) * m);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const int lhs = a + n * b + n * n * c;
                for (int a2 = 0; a2 < n; ++a2)
                    for (int b2 = 0; b2 < n; ++b2)
                        for (int c2 = 0; c2 < n; ++c2) {
                            const int rhs = a2 + n * b2 + n * n * c2;
                            const int ra = (a + a2) % n;
                            const int rb = (b + b2) % n;
                            const int rc = (c + c2 + a * b2) % n;
                            g.mult[std::size_t(lhs) * m + rhs] = ra + n * rb + n * n * rc;
                        }
            }
    g.inv = compute_inverses(g);
    return finalize(std::move(g));
}

Subgroup make_subgroup(const GroupPtr& G, std::vector<int> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    if (elems.empty()) throw std::invalid_argument("make_subgroup: empty element set");
    for (int e : elems)
        if (e < 0 || e >= G->n) throw std::invalid_argument("make_subgroup: element out of range");

    std::vector<int> pos(std::size_t(G->n), -1);
    for (std::size_t i = 0; i < elems.size(); ++i) pos[std::size_t(elems[i])] = int(i);
    for (int a : elems) {
        if (pos[std::size_t(G->inverse(a))] < 0)
            throw std::invalid_argument("make_subgroup: not closed under inverse at element " +
                                        std::to_string(a));
        for (int b : elems)
            if (pos[std::size_t(G->op(a, b))] < 0)
                throw std::invalid_argument("make_subgroup: not closed under product at pair (" +
                                            std::to_string(a) + "," + std::to_string(b) + ")");
    }

    const int h = int(elems.size());
    FiniteGroup sub;
    sub.n = h;
    sub.label = G->label + "-sub" + std::to_string(h);
    sub.identity = pos[std::size_t(G->identity)];
    sub.mult.resize(std::size_t(h) * h);
    sub.inv.resize(std::size_t(h));
    for (int i = 0; i < h; ++i) {
        sub.inv[std::size_t(i)] = pos[std::size_t(G->inverse(elems[std::size_t(i)]))];
        for (int j = 0; j < h; ++j)
            sub.mult[std::size_t(i) * h + j] =
                pos[std::size_t(G->op(elems[std::size_t(i)], elems[std::size_t(j)]))];
    }
    Subgroup s;
    s.parent = G;
    s.group = finalize(std::move(sub));
    s.elements = std::move(elems);
    s.index_in_sub = std::move(pos);
    return s;
}

bool is_normal(const FiniteGroup& G, const Subgroup& H) {
    for (int g = 0; g < G.n; ++g)
        for (int h : H.elements)
            if (H.index_in_sub[std::size_t(G.op(G.op(g, h), G.inverse(g)))] < 0) return false;
    return true;
}

CosetStructure coset_structure(const GroupPtr& G, const std::vector<int>& H_elems,
                               CosetConvention convention) {
    CosetStructure cs;
    cs.parent = G;
    cs.subgroup = make_subgroup(G, H_elems);
    cs.convention = convention;
    const int n = G->n;
    cs.coset_of.assign(std::size_t(n), -1);
    cs.factor.assign(std::size_t(n), -1);

    for (int g = 0; g < n; ++g) {
        if (cs.coset_of[std::size_t(g)] >= 0) continue;
        const int c = int(cs.transversal.size());
        cs.transversal.push_back(g);
        for (int hi : cs.subgroup.elements) {
            const int member = convention == CosetConvention::LeftCosets ? G->op(g, hi)
                                                                         : G->op(hi, g);
            cs.coset_of[std::size_t(member)] = c;
            cs.factor[std::size_t(member)] = cs.subgroup.index_in_sub[std::size_t(hi)];
        }
    }
    if (int(cs.transversal.size()) * int(cs.subgroup.elements.size()) != n)
        throw std::logic_error("coset_structure: cosets do not partition the group");

    cs.normal = is_normal(*G, cs.subgroup);
    if (cs.normal) {
        const int q = int(cs.transversal.size());
        FiniteGroup quo;
        quo.n = q;
        quo.label = G->label + "/" + cs.subgroup.group->label;
        quo.identity = cs.coset_of[std::size_t(G->identity)];
        quo.mult.resize(std::size_t(q) * q);
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b)
                quo.mult[std::size_t(a) * q + b] = cs.coset_of[std::size_t(
                    G->op(cs.transversal[std::size_t(a)], cs.transversal[std::size_t(b)]))];
        quo.inv = compute_inverses(quo);
        validate_axioms(quo);
        quo.abelian = table_abelian(quo);
        cs.quotient = std::move(quo);
    }
    return cs;
}

GroupPtr CosetStructure::quotient_ptr() const {
    if (!quotient) throw std::logic_error("quotient_ptr: subgroup is not normal");
    return std::make_shared<const FiniteGroup>(*quotient);
}

CrtIso crt_iso(long long p, long long q) {
    if (p < 1 || q < 1) throw std::invalid_argument("crt_iso: moduli must be positive");
    if (std::gcd(p, q) != 1)
        throw std::invalid_argument("crt_iso: moduli not coprime, gcd = " +
                                    std::to_string(std::gcd(p, q)));
    return CrtIso{p, q};
}

std::pair<long long, long long> CrtIso::forward(long long k) const {
    const long long m = p * q;
    k = ((k % m) + m) % m;
    return {k % p, k % q};
}

long long CrtIso::inverse(long long k1, long long k2) const {
    // smallest nonnegative k with k = k1 (mod p), k = k2 (mod q)
    const long long m = p * q;
    for (long long t = ((k1 % p) + p) % p; t < m; t += p)
        if (t % q == ((k2 % q) + q) % q) return t;
    throw std::logic_error("crt_iso: inverse not found");
}

void write_group(std::ostream& os, const FiniteGroup& g) {
    os << "group " << g.label << ' ' << g.n << '\n';
    for (int a = 0; a < g.n; ++a) {
        for (int b = 0; b < g.n; ++b) os << g.op(a, b) << (b + 1 == g.n ? '\n' : ' ');
    }
}

GroupPtr read_group(std::istream& is) {
    std::string tag;
    FiniteGroup g;
    if (!(is >> tag >> g.label >> g.n) || tag != "group")
        throw std::runtime_error("read_group: malformed header");
    if (g.n < 1) throw std::runtime_error("read_group: invalid order");
    g.mult.resize(std::size_t(g.n) * g.n);
    for (auto& v : g.mult) {
        if (!(is >> v) || v < 0 || v >= g.n)
            throw std::runtime_error("read_group: malformed table entry");
    }
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
            if (g.op(a, b) == -1) throw std::runtime_error("read_group: incomplete table");
    // identity = the a with a*b = b for all b
    g.identity = -1;
    for (int a = 0; a < g.n && g.identity < 0; ++a) {
        bool ok = true;
        for (int b = 0; b < g.n; ++b)
            if (g.op(a, b) != b || g.op(b, a) != b) { ok = false; break; }
        if (ok) g.identity = a;
    }
    if (g.identity < 0) throw std::runtime_error("read_group: no identity element");
    g.inv = compute_inverses(g);
    for (int a = 0; a < g.n; ++a)
        if (g.inv[std::size_t(a)] < 0) throw std::runtime_error("read_group: missing inverse");
    return finalize(std::move(g));
}

} // namespace ncmult
