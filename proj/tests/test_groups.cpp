#include "doctest.h"

#include "ncmult/groups.hpp"

#include <numeric>
#include <sstream>

using namespace ncmult;

namespace {

// brute-force isomorphism search for small orders
bool isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
    if (a.n != b.n) return false;
    std::vector<int> perm(std::size_t(a.n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (perm[std::size_t(a.identity)] != b.identity) continue;
        bool ok = true;
        for (int x = 0; x < a.n && ok; ++x)
            for (int y = 0; y < a.n && ok; ++y)
                if (perm[std::size_t(a.op(x, y))] !=
                    b.op(perm[std::size_t(x)], perm[std::size_t(y)]))
                    ok = false;
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

bool commutes_everywhere(const FiniteGroup& g) {
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
            if (g.op(a, b) != g.op(b, a)) return false;
    return true;
}

} // namespace

TEST_SUITE_BEGIN("groups");

TEST_CASE("cyclic groups") {
    GroupPtr t = cyclic_group(1);
    CHECK(t->n == 1);
    CHECK(t->identity == 0);

    GroupPtr c6 = cyclic_group(6);
    CHECK(c6->abelian);
    CHECK(c6->op(4, 5) == 3);
    CHECK(c6->inverse(2) == 4);
    REQUIRE(c6->characters);
    // character orthogonality
    const CMatrix& X = *c6->characters;
    for (int r = 0; r < 6; ++r)
        for (int s = 0; s < 6; ++s) {
            cplx acc = 0.0;
            for (int g = 0; g < 6; ++g) acc += X(r, g) * std::conj(X(s, g));
            CHECK(std::abs(acc - (r == s ? cplx(6.0, 0.0) : cplx(0.0, 0.0))) < 1e-12);
        }
}

TEST_CASE("product group isomorphic to cyclic by CRT") {
    GroupPtr p = product_group(cyclic_group(2), cyclic_group(3));
    CHECK(p->n == 6);
    CHECK(p->abelian);
    CHECK(isomorphic(*p, *cyclic_group(6)));
}

TEST_CASE("dihedral and symmetric") {
    GroupPtr d4 = dihedral_group(4);
    CHECK(d4->n == 8);
    CHECK(!d4->abelian);

    GroupPtr s3 = symmetric_group(3);
    CHECK(s3->n == 6);
    CHECK(!s3->abelian);
    CHECK(isomorphic(*s3, *dihedral_group(3)));
    CHECK_THROWS_AS(symmetric_group(6), std::invalid_argument);
}

TEST_CASE("heisenberg_mod is nonabelian of order n^3") {
    GroupPtr h2 = heisenberg_mod(2);
    CHECK(h2->n == 8);
    CHECK(!commutes_everywhere(*h2));
    GroupPtr h3 = heisenberg_mod(3);
    CHECK(h3->n == 27);
    CHECK(!commutes_everywhere(*h3));
}

TEST_CASE("subgroup validation names the violating pair") {
    GroupPtr c6 = cyclic_group(6);
    CHECK_THROWS_WITH_AS(make_subgroup(c6, {0, 1, 5}), doctest::Contains("(1,1)"),
                         std::invalid_argument);
    CHECK_THROWS_AS(make_subgroup(c6, {0, 1}), std::invalid_argument);
    Subgroup h = make_subgroup(c6, {0, 2, 4});
    CHECK(h.group->n == 3);
    CHECK(h.index_in_sub[4] == 2);
}

TEST_CASE("coset structure and factorization identity") {
    GroupPtr d4 = dihedral_group(4);

    SUBCASE("H = G gives one coset with h(g) = g") {
        std::vector<int> all(8);
        std::iota(all.begin(), all.end(), 0);
        CosetStructure cs = coset_structure(d4, all);
        CHECK(cs.transversal.size() == 1);
        for (int g = 0; g < 8; ++g)
            CHECK(cs.subgroup.elements[std::size_t(cs.factor[std::size_t(g)])] == g);
    }

    SUBCASE("trivial H gives |G| cosets with h(g) = e") {
        CosetStructure cs = coset_structure(d4, {0});
        CHECK(cs.transversal.size() == 8);
        for (int g = 0; g < 8; ++g) CHECK(cs.factor[std::size_t(g)] == 0);
    }

    SUBCASE("rotations in dihedral(4): quotient is cyclic(2)") {
        CosetStructure cs = coset_structure(d4, {0, 1, 2, 3});
        CHECK(cs.transversal.size() == 2);
        REQUIRE(cs.normal);
        REQUIRE(cs.quotient);
        CHECK(isomorphic(*cs.quotient, *cyclic_group(2)));
    }

    SUBCASE("reassembly under both conventions") {
        for (CosetConvention conv : {CosetConvention::LeftCosets, CosetConvention::RightCosets}) {
            CosetStructure cs = coset_structure(d4, {0, 2}, conv);
            for (int g = 0; g < 8; ++g) {
                const int sigma = cs.transversal[std::size_t(cs.coset_of[std::size_t(g)])];
                const int h = cs.subgroup.elements[std::size_t(cs.factor[std::size_t(g)])];
                const int back = conv == CosetConvention::LeftCosets ? d4->op(sigma, h)
                                                                     : d4->op(h, sigma);
                CHECK(back == g);
            }
            CHECK(cs.transversal.size() * cs.subgroup.elements.size() == 8);
        }
    }
}

TEST_CASE("crt_iso") {
    CrtIso iso = crt_iso(2, 3);
    CHECK(iso.forward(1) == std::pair<long long, long long>{1, 1});
    CHECK(iso.forward(0) == std::pair<long long, long long>{0, 0});

    CrtIso big = crt_iso(3, 5);
    std::vector<bool> seen(15, false);
    for (long long k = 0; k < 15; ++k) {
        auto [k1, k2] = big.forward(k);
        CHECK(big.inverse(k1, k2) == k);
        const std::size_t flat = std::size_t(k1 * 5 + k2);
        CHECK(!seen[flat]);
        seen[flat] = true;
    }
    // homomorphism on all pairs
    for (long long x = 0; x < 15; ++x)
        for (long long y = 0; y < 15; ++y) {
            auto [a1, a2] = big.forward(x);
            auto [b1, b2] = big.forward(y);
            auto [s1, s2] = big.forward(x + y);
            CHECK((a1 + b1) % 3 == s1);
            CHECK((a2 + b2) % 5 == s2);
        }

    CHECK_THROWS_AS(crt_iso(4, 6), std::invalid_argument);
}

TEST_CASE("group serialization round trip") {
    GroupPtr h2 = heisenberg_mod(2);
    std::stringstream ss;
    write_group(ss, *h2);
    GroupPtr back = read_group(ss);
    CHECK(back->n == h2->n);
    CHECK(back->mult == h2->mult);
    CHECK(back->identity == h2->identity);
}

TEST_SUITE_END();
