#pragma once

#include <cstdint>
#include <optional>

#include "gsig/common.hpp"

namespace gsig {

// Dense matrix over Z with arbitrary-precision entries. Lattices are row spans.
struct IntMatrix {
    int rows = 0, cols = 0;
    std::vector<Int> a;  // row-major

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);

    std::vector<Int> row(int i) const;
    void set_row(int i, const std::vector<Int>& v);
    IntMatrix transpose() const;

    bool operator==(const IntMatrix&) const = default;
};

IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y);
IntMatrix mat_stack(const IntMatrix& top, const IntMatrix& bottom);
bool is_zero_row(const IntMatrix& m, int i);

// Exact determinant (fraction-free Bareiss elimination).
Int det(const IntMatrix& m);

// Row Hermite normal form h = u*m with u unimodular. Pivots positive, entries
// above a pivot reduced into [0, pivot). Nonzero rows of h come first.
struct HnfResult {
    IntMatrix h;
    IntMatrix u;
    int rank = 0;
};
HnfResult hnf(const IntMatrix& m);

// Smith normal form u*m*v = d with |det u| = |det v| = 1 and d diagonal with
// d[0] | d[1] | ... ; vinv is the exact inverse of v.
struct SnfResult {
    IntMatrix u, d, v, vinv;
    int rank = 0;
};
SnfResult snf(const IntMatrix& m);

// Every hnf/snf call re-verifies its certificate; these counters record how
// many verifications ran (a failed verification throws std::logic_error).
struct CertificateStats {
    std::uint64_t hnf_verified;
    std::uint64_t snf_verified;
};
CertificateStats certificate_stats();

// Rows spanning the left kernel {x : x*m = 0}.
IntMatrix kernel(const IntMatrix& m);

// A lattice in Z^ambient stored by its canonical HNF basis (independent rows).
struct LatticeBasis {
    int ambient = 0;
    IntMatrix basis;  // rank x ambient, HNF

    int rank() const { return basis.rows; }
};

LatticeBasis lattice_from_rows(const IntMatrix& generators);
LatticeBasis full_lattice(int n);
LatticeBasis zero_lattice(int n);

bool member(const std::vector<Int>& v, const LatticeBasis& L);
LatticeBasis lattice_sum(const LatticeBasis& L1, const LatticeBasis& L2);

// {v in Z^n : v*A in span(L)} for A an n x m matrix acting on row vectors.
LatticeBasis preimage(const IntMatrix& A, const LatticeBasis& L);

// Unique representative of v + span(L), reduced against the HNF pivots.
std::vector<Int> canonical_coset_rep(std::vector<Int> v, const LatticeBasis& L);

// Integer solution x of x*basis = v, if one exists.
std::optional<std::vector<Int>> solve_in_lattice(const LatticeBasis& L, const std::vector<Int>& v);

// Finitely generated abelian group in invariant-factor form. Factors form a
// divisibility chain with trivial (=1) factors dropped and 0 meaning a free
// summand; free factors come last.
struct AbelianQuotient {
    std::vector<Int> factors;

    bool finite() const;
    Int order() const;  // only valid when finite()
    int free_rank() const;
    std::string to_string() const;
};

// JSON form {rows, cols, data row-major as decimal strings}.
std::string matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const std::string& text);

// span(big)/span(small) with generator lifts (one row per stored factor).
struct QuotientResult {
    AbelianQuotient group;
    IntMatrix lifts;

    // coordinate machinery: x*big_basis = v, y = x*v_transform, factor i of
    // the quotient reads off y[kept[i]] modulo diag[kept[i]]
    IntMatrix big_basis;
    IntMatrix v_transform;
    std::vector<Int> diag;  // full invariant-factor diagonal, 0 = free
    std::vector<int> kept;  // positions of the stored (non-trivial) factors
};
QuotientResult quotient(const IntMatrix& big_gens, const IntMatrix& small_gens);

// Coordinates of v + span(small) in the quotient's generators, one entry per
// stored factor (reduced mod d for finite factors). Throws data_error when v
// is not in span(big).
std::vector<Int> quotient_coordinates(const QuotientResult& q, const std::vector<Int>& v);

}  // namespace gsig
