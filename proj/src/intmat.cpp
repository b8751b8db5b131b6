#include "gsig/intmat.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

#include <nlohmann/json.hpp>

namespace gsig {

namespace {

std::atomic<std::uint64_t> g_hnf_verified{0};
std::atomic<std::uint64_t> g_snf_verified{0};

}  // namespace

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
    if (rows.empty()) return IntMatrix(0, 0);
    IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows; ++i) {
        if (static_cast<int>(rows[i].size()) != m.cols)
            throw std::logic_error("ragged rows");
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

std::vector<Int> IntMatrix::row(int i) const {
    return std::vector<Int>(a.begin() + static_cast<size_t>(i) * cols,
                            a.begin() + static_cast<size_t>(i + 1) * cols);
}

void IntMatrix::set_row(int i, const std::vector<Int>& v) {
    for (int j = 0; j < cols; ++j) at(i, j) = v[j];
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols != y.rows) throw std::logic_error("mat_mul shape mismatch");
    IntMatrix z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Int& v = x.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < y.cols; ++j) z.at(i, j) += v * y.at(k, j);
        }
    return z;
}

IntMatrix mat_stack(const IntMatrix& top, const IntMatrix& bottom) {
    if (top.rows == 0) return bottom;
    if (bottom.rows == 0) return top;
    if (top.cols != bottom.cols) throw std::logic_error("mat_stack shape mismatch");
    IntMatrix z(top.rows + bottom.rows, top.cols);
    std::copy(top.a.begin(), top.a.end(), z.a.begin());
    std::copy(bottom.a.begin(), bottom.a.end(), z.a.begin() + top.a.size());
    return z;
}

bool is_zero_row(const IntMatrix& m, int i) {
    for (int j = 0; j < m.cols; ++j)
        if (m.at(i, j) != 0) return false;
    return true;
}

Int det(const IntMatrix& m) {
    if (m.rows != m.cols) throw std::logic_error("det of non-square matrix");
    int n = m.rows;
    if (n == 0) return 1;
    IntMatrix w = m;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (w.at(k, k) == 0) {
            int swap = -1;
            for (int i = k + 1; i < n; ++i)
                if (w.at(i, k) != 0) { swap = i; break; }
            if (swap < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(swap, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int t = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                w.at(i, j) = t;
            }
        prev = w.at(k, k);
    }
    return sign > 0 ? w.at(n - 1, n - 1) : Int(-w.at(n - 1, n - 1));
}

namespace {

void swap_rows(IntMatrix& m, int i, int j) {
    if (i == j) return;
    for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
}

void negate_row(IntMatrix& m, int i) {
    for (int c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
}

// row_i -= q * row_k
void row_axpy(IntMatrix& m, int i, int k, const Int& q) {
    if (q == 0) return;
    for (int c = 0; c < m.cols; ++c) m.at(i, c) -= q * m.at(k, c);
}

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int trunc_div(const Int& a, const Int& b) {
    Int q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

void check_unimodular(const IntMatrix& u, const char* who) {
    Int d = det(u);
    if (d != 1 && d != -1)
        throw std::logic_error(std::string(who) + ": transform is not unimodular");
}

}  // namespace

HnfResult hnf(const IntMatrix& m) {
    HnfResult res;
    res.h = m;
    res.u = IntMatrix::identity(m.rows);
    IntMatrix& h = res.h;
    IntMatrix& u = res.u;

    int r = 0;
    for (int j = 0; j < m.cols && r < m.rows; ++j) {
        // Euclidean descent in column j: repeatedly reduce against the
        // minimal-absolute-value pivot (lowest row index on ties).
        for (;;) {
            int piv = -1;
            for (int i = r; i < m.rows; ++i) {
                if (h.at(i, j) == 0) continue;
                if (piv < 0 || mpz_cmpabs(h.at(i, j).get_mpz_t(), h.at(piv, j).get_mpz_t()) < 0)
                    piv = i;
            }
            if (piv < 0) break;
            swap_rows(h, r, piv);
            swap_rows(u, r, piv);
            bool clean = true;
            for (int i = r + 1; i < m.rows; ++i) {
                if (h.at(i, j) == 0) continue;
                Int q = trunc_div(h.at(i, j), h.at(r, j));
                row_axpy(h, i, r, q);
                row_axpy(u, i, r, q);
                if (h.at(i, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h.at(r, j) == 0) continue;
        if (h.at(r, j) < 0) {
            negate_row(h, r);
            negate_row(u, r);
        }
        for (int i = 0; i < r; ++i) {
            Int q = floor_div(h.at(i, j), h.at(r, j));
            row_axpy(h, i, r, q);
            row_axpy(u, i, r, q);
        }
        ++r;
    }
    res.rank = r;

    if (mat_mul(res.u, m) != res.h) throw std::logic_error("hnf: certificate u*m != h");
    check_unimodular(res.u, "hnf");
    g_hnf_verified.fetch_add(1, std::memory_order_relaxed);
    return res;
}

namespace {

// column j1 of d gets -q * column j0; v tracks the op, vinv its inverse.
void col_axpy(IntMatrix& d, IntMatrix& v, IntMatrix& vinv, int j1, int j0, const Int& q) {
    if (q == 0) return;
    for (int i = 0; i < d.rows; ++i) d.at(i, j1) -= q * d.at(i, j0);
    for (int i = 0; i < v.rows; ++i) v.at(i, j1) -= q * v.at(i, j0);
    for (int c = 0; c < vinv.cols; ++c) vinv.at(j0, c) += q * vinv.at(j1, c);
}

void col_swap(IntMatrix& d, IntMatrix& v, IntMatrix& vinv, int j0, int j1) {
    if (j0 == j1) return;
    for (int i = 0; i < d.rows; ++i) std::swap(d.at(i, j0), d.at(i, j1));
    for (int i = 0; i < v.rows; ++i) std::swap(v.at(i, j0), v.at(i, j1));
    swap_rows(vinv, j0, j1);
}

}  // namespace

SnfResult snf(const IntMatrix& m) {
    SnfResult res;
    res.d = m;
    res.u = IntMatrix::identity(m.rows);
    res.v = IntMatrix::identity(m.cols);
    res.vinv = IntMatrix::identity(m.cols);
    IntMatrix& d = res.d;
    IntMatrix& u = res.u;
    IntMatrix& v = res.v;
    IntMatrix& vinv = res.vinv;

    int nmin = std::min(m.rows, m.cols);
    int t = 0;
    while (t < nmin) {
        int pi = -1, pj = -1;
        for (int i = t; i < m.rows; ++i)
            for (int j = t; j < m.cols; ++j) {
                if (d.at(i, j) == 0) continue;
                if (pi < 0 || mpz_cmpabs(d.at(i, j).get_mpz_t(), d.at(pi, pj).get_mpz_t()) < 0) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        swap_rows(d, t, pi);
        swap_rows(u, t, pi);
        col_swap(d, v, vinv, t, pj);

        bool dirty = false;
        for (int i = t + 1; i < m.rows; ++i) {
            if (d.at(i, t) == 0) continue;
            Int q = trunc_div(d.at(i, t), d.at(t, t));
            row_axpy(d, i, t, q);
            row_axpy(u, i, t, q);
            if (d.at(i, t) != 0) dirty = true;
        }
        for (int j = t + 1; j < m.cols; ++j) {
            if (d.at(t, j) == 0) continue;
            Int q = trunc_div(d.at(t, j), d.at(t, t));
            col_axpy(d, v, vinv, j, t, q);
            if (d.at(t, j) != 0) dirty = true;
        }
        if (dirty) continue;

        // pivot must divide the remaining block; if not, pull the offending
        // row up and run the euclidean step again
        bool divides = true;
        for (int i = t + 1; i < m.rows && divides; ++i)
            for (int j = t + 1; j < m.cols && divides; ++j) {
                if (d.at(i, j) % d.at(t, t) != 0) {
                    row_axpy(d, t, i, Int(-1));
                    row_axpy(u, t, i, Int(-1));
                    divides = false;
                }
            }
        if (!divides) continue;

        if (d.at(t, t) < 0) {
            negate_row(d, t);
            negate_row(u, t);
        }
        ++t;
    }
    res.rank = t;

    if (mat_mul(mat_mul(res.u, m), res.v) != res.d)
        throw std::logic_error("snf: certificate u*m*v != d");
    if (mat_mul(res.v, res.vinv) != IntMatrix::identity(m.cols))
        throw std::logic_error("snf: v*vinv != id");
    check_unimodular(res.u, "snf");
    check_unimodular(res.v, "snf");
    for (int i = 0; i + 1 < res.rank; ++i)
        if (d.at(i + 1, i + 1) % d.at(i, i) != 0)
            throw std::logic_error("snf: divisibility chain broken");
    g_snf_verified.fetch_add(1, std::memory_order_relaxed);
    return res;
}

CertificateStats certificate_stats() {
    return {g_hnf_verified.load(), g_snf_verified.load()};
}

IntMatrix kernel(const IntMatrix& m) {
    HnfResult r = hnf(m);
    IntMatrix k(m.rows - r.rank, m.rows);
    for (int i = r.rank; i < m.rows; ++i)
        for (int j = 0; j < m.rows; ++j) k.at(i - r.rank, j) = r.u.at(i, j);
    return k;
}

LatticeBasis lattice_from_rows(const IntMatrix& generators) {
    HnfResult r = hnf(generators);
    LatticeBasis L;
    L.ambient = generators.cols;
    L.basis = IntMatrix(r.rank, generators.cols);
    for (int i = 0; i < r.rank; ++i)
        for (int j = 0; j < generators.cols; ++j) L.basis.at(i, j) = r.h.at(i, j);
    return L;
}

LatticeBasis full_lattice(int n) {
    LatticeBasis L;
    L.ambient = n;
    L.basis = IntMatrix::identity(n);
    return L;
}

LatticeBasis zero_lattice(int n) {
    LatticeBasis L;
    L.ambient = n;
    L.basis = IntMatrix(0, n);
    return L;
}

namespace {

int pivot_col(const IntMatrix& b, int i) {
    for (int j = 0; j < b.cols; ++j)
        if (b.at(i, j) != 0) return j;
    throw std::logic_error("zero row in lattice basis");
}

}  // namespace

std::vector<Int> canonical_coset_rep(std::vector<Int> v, const LatticeBasis& L) {
    if (static_cast<int>(v.size()) != L.ambient)
        throw std::logic_error("canonical_coset_rep: dimension mismatch");
    for (int i = 0; i < L.basis.rows; ++i) {
        int p = pivot_col(L.basis, i);
        Int q = floor_div(v[p], L.basis.at(i, p));
        if (q == 0) continue;
        for (int j = p; j < L.ambient; ++j) v[j] -= q * L.basis.at(i, j);
    }
    return v;
}

bool member(const std::vector<Int>& v, const LatticeBasis& L) {
    std::vector<Int> r = canonical_coset_rep(v, L);
    return std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; });
}

LatticeBasis lattice_sum(const LatticeBasis& L1, const LatticeBasis& L2) {
    if (L1.ambient != L2.ambient) throw std::logic_error("lattice_sum: dimension mismatch");
    LatticeBasis L = lattice_from_rows(mat_stack(L1.basis, L2.basis));
    L.ambient = L1.ambient;
    return L;
}

LatticeBasis preimage(const IntMatrix& A, const LatticeBasis& L) {
    if (A.cols != L.ambient) throw std::logic_error("preimage: dimension mismatch");
    int n = A.rows;
    IntMatrix stacked = mat_stack(A, L.basis);
    IntMatrix k = kernel(stacked);
    IntMatrix proj(k.rows, n);
    for (int i = 0; i < k.rows; ++i)
        for (int j = 0; j < n; ++j) proj.at(i, j) = k.at(i, j);
    LatticeBasis res = lattice_from_rows(proj);
    res.ambient = n;
    return res;
}

std::optional<std::vector<Int>> solve_in_lattice(const LatticeBasis& L, const std::vector<Int>& v) {
    if (static_cast<int>(v.size()) != L.ambient)
        throw std::logic_error("solve_in_lattice: dimension mismatch");
    std::vector<Int> w = v;
    std::vector<Int> x(L.basis.rows, Int(0));
    for (int i = 0; i < L.basis.rows; ++i) {
        int p = pivot_col(L.basis, i);
        if (w[p] % L.basis.at(i, p) != 0) return std::nullopt;
        Int q = w[p] / L.basis.at(i, p);
        x[i] = q;
        if (q != 0)
            for (int j = p; j < L.ambient; ++j) w[j] -= q * L.basis.at(i, j);
    }
    for (const Int& c : w)
        if (c != 0) return std::nullopt;
    return x;
}

bool AbelianQuotient::finite() const {
    return std::none_of(factors.begin(), factors.end(), [](const Int& d) { return d == 0; });
}

Int AbelianQuotient::order() const {
    Int o = 1;
    for (const Int& d : factors) {
        if (d == 0) throw std::logic_error("order of infinite group");
        o *= d;
    }
    return o;
}

int AbelianQuotient::free_rank() const {
    return static_cast<int>(std::count(factors.begin(), factors.end(), Int(0)));
}

std::string AbelianQuotient::to_string() const {
    if (factors.empty()) return "0";
    std::ostringstream os;
    int free = free_rank();
    bool first = true;
    if (free > 0) {
        os << "Z";
        if (free > 1) os << "^" << free;
        first = false;
    }
    for (const Int& d : factors) {
        if (d == 0) continue;
        if (!first) os << " x ";
        os << "Z/" << d.get_str();
        first = false;
    }
    return os.str();
}

std::string matrix_to_json(const IntMatrix& m) {
    nlohmann::ordered_json j;
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    auto data = nlohmann::json::array();
    for (const Int& x : m.a) data.push_back(x.get_str());
    j["data"] = data;
    return j.dump();
}

IntMatrix matrix_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw spec_error(std::string("bad matrix json: ") + e.what());
    }
    IntMatrix m(j.at("rows").get<int>(), j.at("cols").get<int>());
    const auto& data = j.at("data");
    if (data.size() != m.a.size()) throw spec_error("matrix json: wrong data length");
    for (size_t i = 0; i < m.a.size(); ++i) m.a[i] = int_from_string(data[i].get<std::string>());
    return m;
}

QuotientResult quotient(const IntMatrix& big_gens, const IntMatrix& small_gens) {
    LatticeBasis big = lattice_from_rows(big_gens);
    int r = big.rank();

    IntMatrix rel(small_gens.rows, r);
    for (int i = 0; i < small_gens.rows; ++i) {
        auto x = solve_in_lattice(big, small_gens.row(i));
        if (!x) throw data_error("quotient: small lattice is not contained in big lattice");
        rel.set_row(i, *x);
    }

    SnfResult s = snf(rel);
    QuotientResult res;
    IntMatrix gens = mat_mul(s.vinv, big.basis);  // row i generates factor i
    for (int i = 0; i < r; ++i) {
        Int d = i < s.rank ? s.d.at(i, i) : Int(0);
        res.diag.push_back(d);
        if (d == 1) continue;
        res.group.factors.push_back(d);
        res.kept.push_back(i);
    }
    res.lifts = IntMatrix(static_cast<int>(res.kept.size()), big.ambient);
    for (size_t i = 0; i < res.kept.size(); ++i)
        res.lifts.set_row(static_cast<int>(i), gens.row(res.kept[i]));
    res.big_basis = big.basis;
    res.v_transform = s.v;
    return res;
}

std::vector<Int> quotient_coordinates(const QuotientResult& q, const std::vector<Int>& v) {
    LatticeBasis big;
    big.ambient = q.big_basis.cols;
    big.basis = q.big_basis;
    auto x = solve_in_lattice(big, v);
    if (!x) throw data_error("quotient_coordinates: vector not in the big lattice");
    std::vector<Int> out;
    out.reserve(q.kept.size());
    for (int pos : q.kept) {
        Int y = 0;
        for (int j = 0; j < q.v_transform.rows; ++j) y += (*x)[j] * q.v_transform.at(j, pos);
        if (q.diag[pos] != 0) mpz_fdiv_r(y.get_mpz_t(), y.get_mpz_t(), q.diag[pos].get_mpz_t());
        out.push_back(y);
    }
    return out;
}

}  // namespace gsig
