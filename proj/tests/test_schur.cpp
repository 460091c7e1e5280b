#include "doctest.h"

#include "ncmult/almostmult.hpp"
#include "ncmult/schur.hpp"

#include <cmath>
#include <sstream>

using namespace ncmult;

namespace {

SchurSymbol abstract_symbol(CMatrix M) {
    SchurSymbol s;
    s.M = std::move(M);
    return s;
}

SchurSymbol rank_one(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    const int n = int(a.size());
    CMatrix M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = a[std::size_t(i)] * b[std::size_t(j)];
    return abstract_symbol(std::move(M));
}

CMatrix all_ones(int n) {
    CMatrix M(n, n);
    for (auto& v : M.a) v = 1.0;
    return M;
}

} // namespace

TEST_SUITE_BEGIN("schur");

TEST_CASE("schur_apply basics") {
    Rng rng(3);
    CMatrix A = random_matrix(4, rng);
    SchurSymbol ones = abstract_symbol(all_ones(4));
    CHECK(fro_norm(schur_apply(ones, A) - A) == 0.0);

    CMatrix D(4, 4);
    for (int i = 0; i < 4; ++i) D(i, i) = 1.0;
    SchurSymbol diag = abstract_symbol(std::move(D));
    CMatrix extracted = schur_apply(diag, A);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(std::abs(extracted(i, j) - (i == j ? A(i, j) : cplx(0, 0))) == 0.0);

    CHECK_THROWS_AS(schur_apply(diag, CMatrix::identity(3)), std::invalid_argument);
}

TEST_CASE("p = 2 norm is the max entry, exactly") {
    Rng rng(5);
    CMatrix M = random_matrix(5, rng);
    SchurSymbol sym = abstract_symbol(M);
    SchurNormEstimate est = schur_norm_estimate(sym, 2.0, NormBudget{2, 10, 1e-9, 1});
    CHECK(est.lower_bound == doctest::Approx(max_abs(M)).epsilon(1e-14));
    // contractivity at p = 2 with that constant on random inputs
    for (int rep = 0; rep < 5; ++rep) {
        CMatrix A = random_matrix(5, rng);
        CHECK(schatten_norm(schur_apply(sym, A), 2.0, 1.0) <=
              max_abs(M) * schatten_norm(A, 2.0, 1.0) * (1.0 + 1e-12));
    }
}

TEST_CASE("all-ones symbol is the identity map at every p") {
    SchurSymbol ones = abstract_symbol(all_ones(3));
    for (double p : {1.0, 2.0, 4.0, kInfExp}) {
        SchurNormEstimate est = schur_norm_estimate(ones, p, NormBudget{2, 40, 1e-10, 11});
        CHECK(est.lower_bound == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK_THROWS_AS(schur_norm_estimate(ones, 4.0, NormBudget{0, 0, 1e-9, 1}),
                    std::invalid_argument);
}

TEST_CASE("rank-one symbol at p = infinity") {
    std::vector<cplx> a{cplx(0.5, 0.0), cplx(-1.5, 0.5), cplx(0.2, 0.0)};
    std::vector<cplx> b{cplx(1.0, -1.0), cplx(0.3, 0.0), cplx(0.0, 0.7)};
    double ma = 0.0, mb = 0.0;
    for (const auto& v : a) ma = std::max(ma, std::abs(v));
    for (const auto& v : b) mb = std::max(mb, std::abs(v));

    SchurSymbol sym = rank_one(a, b);
    SchurNormEstimate est = schur_norm_estimate(sym, kInfExp, NormBudget{3, 60, 1e-11, 17});
    CHECK(est.lower_bound == doctest::Approx(ma * mb).epsilon(1e-6));

    CbNormResult cb = cb_inf_norm(sym, 1e-7);
    CHECK(cb.value == doctest::Approx(ma * mb).epsilon(1e-6));
    CHECK(cb.certificate.reproduction_error <= 1e-7);
}

TEST_CASE("cb_inf_norm on the all-ones symbol") {
    CbNormResult cb = cb_inf_norm(abstract_symbol(all_ones(4)), 1e-7);
    CHECK(std::abs(cb.value - 1.0) <= 1e-6);
    CHECK(cb.certificate.reproduction_error <= 1e-7);
    CHECK(cb.certificate.value <= cb.value + 1e-6);
}

TEST_CASE("cb_inf_norm upper-triangular truncation against a dense search") {
    CMatrix T(2, 2);
    T(0, 0) = 1.0;
    T(0, 1) = 1.0;
    T(1, 1) = 1.0;
    SchurSymbol sym = abstract_symbol(T);
    CbNormResult cb = cb_inf_norm(sym, 1e-6);

    // oracle: randomized factorization descent at dimension <= 4
    Rng rng(23);
    double best = 1e30;
    for (int trial = 0; trial < 4000; ++trial) {
        CMatrix X(4, 2), Y(4, 2);
        for (auto& v : X.a) v = rng.cnormal();
        // solve for y columns to match <x_i, y_j> = m_ij in least squares by
        // projecting onto the span; here simply adjust Y = X (X^+ ...) is
        // overkill: sample Y too and keep feasible-(ish) pairs
        for (auto& v : Y.a) v = rng.cnormal();
        // Newton-free polish: rescale Y columns to satisfy the diagonal pairings
        // <x_j, y_j> = 1 and check the off-diagonals
        bool ok = true;
        for (int j = 0; j < 2 && ok; ++j) {
            cplx ip = 0.0;
            for (int k = 0; k < 4; ++k) ip += std::conj(X(k, j)) * Y(k, j);
            if (std::abs(ip) < 1e-3) ok = false;
            else
                for (int k = 0; k < 4; ++k) Y(k, j) /= ip;
        }
        if (!ok) continue;
        cplx off10 = 0.0, off01 = 0.0;
        for (int k = 0; k < 4; ++k) {
            off10 += std::conj(X(k, 1)) * Y(k, 0);
            off01 += std::conj(X(k, 0)) * Y(k, 1);
        }
        if (std::abs(off10) > 1e-2 || std::abs(off01 - cplx(1, 0)) > 1e-2) continue;
        double mx = 0.0, my = 0.0;
        for (int j = 0; j < 2; ++j) {
            double nx = 0.0, ny = 0.0;
            for (int k = 0; k < 4; ++k) {
                nx += std::norm(X(k, j));
                ny += std::norm(Y(k, j));
            }
            mx = std::max(mx, std::sqrt(nx));
            my = std::max(my, std::sqrt(ny));
        }
        best = std::min(best, mx * my);
    }
    // the dense search only produces upper bounds; the bisection value must not
    // exceed any of them materially and must dominate the p=2 lower bound
    CHECK(cb.value <= best * 1.05);
    CHECK(cb.value >= 1.0 - 1e-9);
    CHECK(cb.certificate.reproduction_error <= 1e-6);
}

TEST_CASE("cb certificate reproduces PSD correlation symbols") {
    Rng rng(29);
    CMatrix B = random_matrix(4, rng);
    CMatrix P = adjoint(B) * B;
    for (int i = 0; i < 4; ++i) {
        const double d = std::sqrt(P(i, i).real());
        for (int j = 0; j < 4; ++j) {
            P(i, j) /= d;
            P(j, i) /= d;
        }
    }
    // unit diagonal PSD: factorization at t = 1 exists (x_i = y_i)
    CbNormResult cb = cb_inf_norm(abstract_symbol(P), 1e-6);
    CHECK(cb.value >= 1.0 - 1e-9);
    CHECK(cb.value <= 1.0 + 1e-4);
    CHECK(cb.certificate.reproduction_error <= 1e-7);
}

TEST_CASE("cb restriction to principal submatrices") {
    Rng rng(31);
    CMatrix M = random_matrix(4, rng);
    SchurSymbol sym = abstract_symbol(M);
    CMatrix Msub(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) Msub(i, j) = M(i, j);
    const double full = cb_inf_norm(sym, 1e-6).value;
    const double sub = cb_inf_norm(abstract_symbol(Msub), 1e-6).value;
    CHECK(sub <= full + 1e-5);
}

TEST_CASE("finite sections are nondecreasing") {
    GroupPtr c32 = cyclic_group(32);
    Symbol m(c32, std::vector<cplx>(32));
    Rng rng(37);
    for (auto& v : m.values) v = (rng.uniform() < 0.5 ? -1.0 : 1.0);

    std::vector<SchurSymbol> sections;
    for (int s : {4, 8, 12, 16, 24, 32}) {
        std::vector<int> idx(std::size_t(s), 0);
        for (int i = 0; i < s; ++i) idx[std::size_t(i)] = i;
        sections.push_back(herz_schur_section(m, idx));
    }
    auto table = finite_section_sup(sections, 4.0, NormBudget{2, 40, 1e-9, 5});
    for (std::size_t i = 1; i < table.size(); ++i)
        CHECK(table[i].estimate >= table[i - 1].estimate * (1.0 - 0.01));

    // constant symbol: all section values equal |c|
    Symbol c = Symbol::constant(c32, cplx(0.0, -2.0));
    std::vector<SchurSymbol> csec{herz_schur_section(c, {0}),
                                  herz_schur_section(c, {0, 1, 2, 3})};
    auto ctable = finite_section_sup(csec, 4.0, NormBudget{2, 30, 1e-9, 6});
    CHECK(ctable[0].estimate == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(ctable[1].estimate == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("herz-schur structure") {
    GroupPtr d4 = dihedral_group(4);
    Rng rng(41);
    Symbol m(d4, std::vector<cplx>(8));
    for (auto& v : m.values) v = rng.cnormal();
    SchurSymbol hs = herz_schur(m);
    for (int i = 0; i < 8; ++i)
        CHECK(std::abs(hs.M(i, i) - m.values[std::size_t(d4->identity)]) == 0.0);
    CHECK(std::abs(hs.M(2, 5) - m.values[std::size_t(d4->op(d4->inverse(2), 5))]) == 0.0);
}

TEST_CASE("transference on cyclic groups") {
    GroupPtr c8 = cyclic_group(8);

    SUBCASE("constant symbol") {
        Symbol one = Symbol::constant(c8, 1.0);
        TransferenceReport r2 = transference_check(one, 2.0, 1e-6);
        CHECK(r2.fourier_side == doctest::Approx(1.0));
        CHECK(r2.schur_side == doctest::Approx(1.0));
        TransferenceReport ri = transference_check(one, kInfExp, 1e-7);
        CHECK(ri.fourier_side == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(ri.schur_side == doctest::Approx(1.0).epsilon(1e-5));
    }

    SUBCASE("character spike") {
        Symbol spike(c8, std::vector<cplx>(8));
        spike.values[3] = 1.0;
        TransferenceReport ri = transference_check(spike, kInfExp, 1e-7);
        CHECK(ri.fourier_side == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(ri.schur_side == doctest::Approx(1.0).epsilon(2e-2));
    }

    SUBCASE("random real symbols agree within 2 percent") {
        Rng rng(43);
        for (int rep = 0; rep < 3; ++rep) {
            Symbol m(c8, std::vector<cplx>(8));
            for (auto& v : m.values) v = rng.uniform(-1.0, 1.0);
            TransferenceReport r2 = transference_check(m, 2.0, 1e-6);
            CHECK(r2.fourier_side == doctest::Approx(r2.schur_side).epsilon(1e-12));
            TransferenceReport ri = transference_check(m, kInfExp, 1e-6);
            const double gap = std::abs(ri.fourier_side - ri.schur_side) /
                               std::max(ri.fourier_side, ri.schur_side);
            CHECK(gap <= 0.02);
        }
    }

    SUBCASE("unsupported p") {
        Symbol one = Symbol::constant(c8, 1.0);
        CHECK_THROWS_AS(transference_check(one, 4.0, 1e-6), std::invalid_argument);
    }
}

TEST_CASE("schur periodization") {
    GroupPtr d4 = dihedral_group(4);
    const std::vector<int> center{0, 2}; // rotation by pi generates the center
    CosetStructure cs = coset_structure(d4, center);
    REQUIRE(cs.normal);
    GroupPtr quo = cs.quotient_ptr();

    SUBCASE("constant quotient symbol") {
        Symbol one = Symbol::constant(quo, 1.0);
        SchurPeriodizeReport rep = schur_periodize_check(d4, center, one, 2.0, NormBudget{});
        CHECK(rep.quotient_value == doctest::Approx(1.0));
        CHECK(rep.lifted_value == doctest::Approx(1.0));
        CHECK(rep.conjugation_residual == 0.0);
    }

    SUBCASE("trivial subgroup keeps the same matrix") {
        CosetStructure triv = coset_structure(d4, {0});
        Symbol m(triv.quotient_ptr(), std::vector<cplx>(8));
        Rng rng(47);
        for (auto& v : m.values) v = rng.cnormal();
        SchurPeriodizeReport rep = schur_periodize_check(d4, {0}, m, 2.0, NormBudget{});
        CHECK(rep.quotient_value == doctest::Approx(rep.lifted_value).epsilon(1e-12));
    }

    SUBCASE("random quotient symbols at p = 4 agree within 2 percent") {
        Rng rng(53);
        for (int rep2 = 0; rep2 < 3; ++rep2) {
            Symbol m(quo, std::vector<cplx>(std::size_t(quo->n)));
            for (auto& v : m.values) v = rng.cnormal();
            SchurPeriodizeReport rep =
                schur_periodize_check(d4, center, m, 4.0, NormBudget{3, 60, 1e-10, 7});
            CHECK(rep.conjugation_residual == 0.0);
            CHECK(rep.quotient_value <= rep.lifted_value * 1.02);
            CHECK(rep.lifted_value <= rep.quotient_value * 1.25); // same ballpark
        }
    }
}

TEST_CASE("schur symbol serialization") {
    Rng rng(59);
    SchurSymbol sym = abstract_symbol(random_matrix(3, rng));
    std::stringstream ss;
    write_schur_symbol(ss, sym);
    SchurSymbol back = read_schur_symbol(ss);
    CHECK(fro_norm(back.M - sym.M) < 1e-15);
}

TEST_SUITE_END();
