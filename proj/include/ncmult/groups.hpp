#pragma once

#include "ncmult/matkernel.hpp"

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ncmult {

// Finite group as dense index tables; elements are 0..n-1, identity included.
// Constructions that know the dual (cyclic groups and their products) carry a
// character table so norms can bypass the regular representation.
struct FiniteGroup {
    int n = 0;
    std::vector<int> mult; // n*n, row-major: mult[a*n+b] = a*b
    std::vector<int> inv;
    int identity = 0;
    std::string label;
    bool abelian = false;
    std::shared_ptr<const CMatrix> characters; // rows: characters, cols: elements

    int op(int a, int b) const { return mult[std::size_t(a) * n + b]; }
    int inverse(int a) const { return inv[std::size_t(a)]; }
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

GroupPtr cyclic_group(int n);
GroupPtr product_group(const GroupPtr& g1, const GroupPtr& g2);
GroupPtr dihedral_group(int n);   // order 2n
GroupPtr symmetric_group(int n);  // n <= 5
GroupPtr heisenberg_mod(int n);   // order n^3, upper-triangular convention

// Element set closed under product/inverse, with its own group structure and
// index maps back into G.
struct Subgroup {
    GroupPtr parent;
    GroupPtr group;
    std::vector<int> elements;     // subgroup index -> G index
    std::vector<int> index_in_sub; // G index -> subgroup index or -1
};

// Throws naming the violating pair if elems is not a subgroup.
Subgroup make_subgroup(const GroupPtr& G, std::vector<int> elems);

bool is_normal(const FiniteGroup& G, const Subgroup& H);

// Which side the transversal factors on: LeftCosets decomposes g = sigma(gH) h(g),
// RightCosets decomposes g = h(g) sigma(Hg).
enum class CosetConvention { LeftCosets, RightCosets };

struct CosetStructure {
    GroupPtr parent;
    Subgroup subgroup;
    CosetConvention convention = CosetConvention::LeftCosets;
    std::vector<int> coset_of;    // G index -> coset index
    std::vector<int> transversal; // coset index -> representative in G
    std::vector<int> factor;      // G index -> subgroup index of h(g)
    bool normal = false;
    std::optional<FiniteGroup> quotient; // present when subgroup is normal
    GroupPtr quotient_ptr() const;
};

CosetStructure coset_structure(const GroupPtr& G, const std::vector<int>& H_elems,
                               CosetConvention convention = CosetConvention::LeftCosets);

// CRT bijection Z_pq <-> Z_p x Z_q for coprime p, q.
struct CrtIso {
    long long p = 0, q = 0;
    std::pair<long long, long long> forward(long long k) const;
    long long inverse(long long k1, long long k2) const;
};

CrtIso crt_iso(long long p, long long q);

// Text format: "group <label> <n>" then one multiplication-table row per line.
void write_group(std::ostream& os, const FiniteGroup& g);
GroupPtr read_group(std::istream& is);

} // namespace ncmult
