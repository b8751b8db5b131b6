#include "gsig/chars.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

namespace gsig {

namespace {

// reduce an exponent-count vector modulo the cyclotomic polynomial, in place
void reduce_counts(long n, std::vector<Int>& counts) {
    const std::vector<Int>& phi = Cyclotomic::minimal_polynomial(n);
    size_t deg = phi.size() - 1;
    for (size_t d = counts.size(); d-- > deg;) {
        Int c = counts[d];
        if (c == 0) continue;
        for (size_t k = 0; k < phi.size(); ++k) counts[d - deg + k] -= c * phi[k];
    }
    counts.resize(deg);
}

void verify_orthogonality(const CharacterTable& t) {
    const FiniteGroup& g = *t.group;
    const ConjugacyClasses& cc = g.classes;
    int n = t.count();
    if (n != cc.count()) throw data_error("character table: wrong number of irreducibles");
    Int degsq = 0;
    for (int i = 0; i < n; ++i) {
        const Cyclotomic& deg = t.irreducibles[i].values[cc.class_of[0]];
        if (!deg.is_integer() || deg.integer_value() <= 0)
            throw data_error("character table: degrees must be positive integers");
        degsq += deg.integer_value() * deg.integer_value();
    }
    if (degsq != g.order) throw data_error("character table: degree sum check failed");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            bool ok;
            if (t.has_root_form()) {
                std::vector<Int> counts(t.root_order, Int(0));
                for (int c = 0; c < cc.count(); ++c)
                    counts[pos_mod(t.root_exponents[i][c] - t.root_exponents[j][c],
                                   t.root_order)] += cc.sizes[c];
                reduce_counts(t.root_order, counts);
                ok = counts[0] == (i == j ? g.order : 0);
                for (size_t k = 1; k < counts.size() && ok; ++k) ok = counts[k] == 0;
            } else {
                Cyclotomic acc;
                for (int c = 0; c < cc.count(); ++c)
                    acc = acc + Rat(cc.sizes[c]) * (t.irreducibles[i].values[c] *
                                                    t.irreducibles[j].values[c].conj());
                ok = acc == (i == j ? Cyclotomic(Rat(g.order)) : Cyclotomic());
            }
            if (!ok) throw data_error("character table: row orthogonality failed");
        }
}

void fill_conj_perm(CharacterTable& t) {
    int n = t.count();
    t.conj_perm.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            bool match = true;
            for (size_t c = 0; c < t.irreducibles[i].values.size() && match; ++c)
                match = t.irreducibles[i].values[c].conj() == t.irreducibles[j].values[c];
            if (match) {
                t.conj_perm[i] = j;
                break;
            }
        }
        if (t.conj_perm[i] < 0) throw data_error("character table: no conjugate partner");
    }
}

CharacterTable abelian_table(const GroupPtr& g) {
    const Abelianization& ab = g->ab;
    const ConjugacyClasses& cc = g->classes;
    long n_exp = g->exponent;
    int k = static_cast<int>(ab.factors.size());

    // characters = dual group, indexed by exponent tuples in lexicographic order
    std::vector<std::vector<long>> tuples;
    std::vector<long> cur(k, 0);
    for (;;) {
        tuples.push_back(cur);
        int pos = k - 1;
        while (pos >= 0) {
            if (++cur[pos] < ab.factors[pos].get_si()) break;
            cur[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
        if (k == 0) break;
    }
    if (k == 0) tuples = {{}};

    CharacterTable t;
    t.group = g;
    t.root_order = n_exp;
    for (const auto& a : tuples) {
        ClassFunction f;
        f.group = g;
        f.values.reserve(cc.count());
        std::vector<long> exps;
        exps.reserve(cc.count());
        for (int c = 0; c < cc.count(); ++c) {
            const auto& p = ab.project[cc.reps[c]];
            long e = 0;
            for (int i = 0; i < k; ++i) {
                long di = ab.factors[i].get_si();
                e = pos_mod(e + a[i] * p[i].get_si() % di * (n_exp / di), n_exp);
            }
            f.values.push_back(Cyclotomic::root_of_unity(n_exp, e));
            exps.push_back(e);
        }
        t.irreducibles.push_back(std::move(f));
        t.root_exponents.push_back(std::move(exps));
    }
    return t;
}

CharacterTable sym3_table(const GroupPtr& g) {
    const ConjugacyClasses& cc = g->classes;
    int c1 = cc.class_of[0], c3 = -1, c2 = -1;
    for (int c = 0; c < cc.count(); ++c) {
        int o = g->elt_order[cc.reps[c]];
        if (o == 3) c3 = c;
        if (o == 2) c2 = c;
    }
    if (cc.count() != 3 || c3 < 0 || c2 < 0)
        throw table_error("order-6 group does not match the built-in table");
    auto mk = [&](Rat v1, Rat v3, Rat v2) {
        ClassFunction f;
        f.group = g;
        f.values.resize(3);
        f.values[c1] = Cyclotomic(v1);
        f.values[c3] = Cyclotomic(v3);
        f.values[c2] = Cyclotomic(v2);
        return f;
    };
    CharacterTable t;
    t.group = g;
    t.irreducibles = {mk(1, 1, 1), mk(1, 1, -1), mk(2, -1, 0)};
    return t;
}

}  // namespace

CharacterTable char_table(const GroupPtr& g) {
    CharacterTable t;
    if (g->is_abelian())
        t = abelian_table(g);
    else if (g->order == 6)
        t = sym3_table(g);
    else
        throw table_error("no character table available for '" + g->spec +
                          "' (abelian and order-6 nonabelian groups are built in)");
    verify_orthogonality(t);
    fill_conj_perm(t);
    return t;
}

CharacterTable char_table_from_json(const GroupPtr& g, const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw spec_error(std::string("bad table json: ") + e.what());
    }
    const ConjugacyClasses& cc = g->classes;
    long order = j.at("order").get<long>();
    std::vector<int> reps = j.at("classes").get<std::vector<int>>();
    if (reps != cc.reps) throw spec_error("table json: class representatives do not match");
    CharacterTable t;
    t.group = g;
    for (const auto& row : j.at("irreducibles")) {
        ClassFunction f;
        f.group = g;
        for (const auto& val : row) {
            long vo = val.at("order").get<long>();
            if (order % vo != 0) throw spec_error("table json: value order does not divide table order");
            std::vector<Rat> coeffs;
            for (const auto& c : val.at("coeffs")) coeffs.emplace_back(c.get<std::string>());
            for (Rat& r : coeffs) r.canonicalize();
            if (coeffs.size() != static_cast<size_t>(euler_phi(vo)))
                throw spec_error("table json: wrong coefficient count");
            f.values.push_back(Cyclotomic::from_coeffs(vo, coeffs).promoted(order));
        }
        if (static_cast<int>(f.values.size()) != cc.count())
            throw spec_error("table json: wrong number of class values");
        t.irreducibles.push_back(std::move(f));
    }
    verify_orthogonality(t);
    fill_conj_perm(t);
    return t;
}

std::vector<Int> cyclic_multiplicities(long n, const std::vector<long>& exps, long h) {
    std::vector<long> is;
    for (long e : exps) {
        long r = pos_mod(e, n);
        if (r == 0) throw data_error("cyclic_multiplicities: exponent divisible by n");
        is.push_back(r);
    }
    long q = static_cast<long>(is.size());
    std::vector<Int> m(n);
    m[0] = h;
    for (long j = 1; j < n; ++j) {
        Int sum = 0;
        for (long i : is) {
            long k = gcd_l(n, i);
            long l = i / k;
            long mod = n / k;
            long r = pos_mod(j * l, mod);
            if (r == 0) r = mod;
            sum += Int(k) * r;
        }
        if (sum % n != 0) throw data_error("cyclic_multiplicities: exponent sum is not a relation");
        m[j] = Int(h) - 1 + q - sum / n;
    }
    // dimension checksum against the covering genus
    long s = 0;
    for (long i : is) s += n - gcd_l(n, i);
    if (s % 2 != 0) throw data_error("cyclic_multiplicities: no integral genus");
    Int genus = Int(1) + Int(n) * (h - 1) + s / 2;
    Int total = 0;
    for (const Int& x : m) total += x;
    if (total != genus) throw std::logic_error("cyclic_multiplicities: dimension checksum failed");
    return m;
}

ClassFunction action_character(const OrbitData& d, const RealizationWitness& w) {
    if (!verify_witness(d, w)) throw data_error("action_character: witness does not realize the data");
    const FiniteGroup& g = *d.group;
    const ConjugacyClasses& cc = g.classes;
    long gen = genus(d, w.h);
    long n_exp = g.exponent;

    ClassFunction f;
    f.group = d.group;
    f.values.resize(cc.count());
    for (int c = 0; c < cc.count(); ++c) {
        int y = cc.reps[c];
        if (y == 0) {
            f.values[c] = Cyclotomic(Rat(static_cast<long>(gen))).promoted(n_exp);
            continue;
        }
        long n = g.elt_order[y];
        std::vector<long> exps;
        for (auto [e, m] : restrict_exponents(d, y))
            for (long i = 0; i < m; ++i) exps.push_back(e);
        long hy = quotient_genus(d, gen, cyclic_subgroup(g, y).member_ids);
        std::vector<Int> nj = cyclic_multiplicities(n, exps, hy);
        std::vector<Rat> poly(n);
        for (long j = 0; j < n; ++j) poly[j] = Rat(nj[j]);
        f.values[c] = Cyclotomic::from_coeffs(n, poly).promoted(n_exp);
    }
    return f;
}

MultiplicityVector multiplicities(const ClassFunction& f, const CharacterTable& t) {
    if (f.group != t.group) throw data_error("multiplicities: group mismatch");
    const FiniteGroup& g = *t.group;
    const ConjugacyClasses& cc = g.classes;

    bool root_form = t.has_root_form();
    for (const Cyclotomic& v : f.values) root_form &= t.root_order % v.order() == 0;

    MultiplicityVector mv;
    if (root_form) {
        long n = t.root_order;
        std::vector<std::vector<Rat>> fc;
        fc.reserve(cc.count());
        for (const Cyclotomic& v : f.values) fc.push_back(v.promoted(n).coeffs());
        for (int i = 0; i < t.count(); ++i) {
            // sum |C| f(C) zeta^{-E(i,C)}: shift the coefficients of f(C)
            std::vector<Rat> acc(n, Rat(0));
            for (int c = 0; c < cc.count(); ++c) {
                long shift = pos_mod(-t.root_exponents[i][c], n);
                for (size_t d = 0; d < fc[c].size(); ++d) {
                    if (fc[c][d] == 0) continue;
                    acc[(d + shift) % n] += cc.sizes[c] * fc[c][d];
                }
            }
            Cyclotomic s = Rat(1, g.order) * Cyclotomic::from_coeffs(n, std::move(acc));
            if (!s.is_integer())
                throw data_error("multiplicities: non-integral multiplicity (not a virtual character)");
            mv.coeffs.push_back(s.integer_value());
        }
        return mv;
    }

    for (int i = 0; i < t.count(); ++i) {
        Cyclotomic acc;
        for (int c = 0; c < cc.count(); ++c)
            acc = acc + Rat(cc.sizes[c]) * (f.values[c] * t.irreducibles[i].values[c].conj());
        acc = Rat(1, g.order) * acc;
        if (!acc.is_integer())
            throw data_error("multiplicities: non-integral multiplicity (not a virtual character)");
        mv.coeffs.push_back(acc.integer_value());
    }
    return mv;
}

ClassFunction class_function_from_multiplicities(const CharacterTable& t,
                                                 const std::vector<Int>& coeffs) {
    if (coeffs.size() != static_cast<size_t>(t.count()))
        throw data_error("class_function_from_multiplicities: wrong length");
    ClassFunction f;
    f.group = t.group;
    f.values.assign(t.group->classes.count(), Cyclotomic());
    for (int i = 0; i < t.count(); ++i) {
        if (coeffs[i] == 0) continue;
        for (size_t c = 0; c < f.values.size(); ++c)
            f.values[c] = f.values[c] + Rat(coeffs[i]) * t.irreducibles[i].values[c];
    }
    return f;
}

ClassFunction regular_character(const GroupPtr& g) {
    ClassFunction f;
    f.group = g;
    f.values.assign(g->classes.count(), Cyclotomic());
    f.values[g->classes.class_of[0]] = Cyclotomic(Rat(g->order));
    return f;
}

ClassFunction perm_class_function(const GroupPtr& g, const Subgroup& h) {
    if (!is_subgroup(*g, h)) throw data_error("perm_class_function: not a subgroup");
    const ConjugacyClasses& cc = g->classes;
    ClassFunction f;
    f.group = g;
    for (int c = 0; c < cc.count(); ++c) {
        int y = cc.reps[c];
        long fixed = 0;
        for (int a = 0; a < g->order; ++a)
            if (h.contains(g->mul(g->mul(g->inv[a], y), a))) ++fixed;
        f.values.push_back(Cyclotomic(Rat(fixed, h.order())));
    }
    return f;
}

MultiplicityVector perm_character(const GroupPtr& g, const Subgroup& h, const CharacterTable& t) {
    return multiplicities(perm_class_function(g, h), t);
}

ClassFunction induce(const ClassFunction& f, const SubgroupContext& h) {
    if (f.group != h.sub) throw data_error("induce: class function is not over the subgroup");
    const GroupPtr& g = h.inclusion.codomain;
    const ConjugacyClasses& cc = g->classes;
    ClassFunction out;
    out.group = g;
    for (int c = 0; c < cc.count(); ++c) {
        int y = cc.reps[c];
        Cyclotomic acc;
        for (int a = 0; a < g->order; ++a) {
            int z = g->mul(g->mul(g->inv[a], y), a);
            int sz = h.from_parent[z];
            if (sz < 0) continue;
            acc = acc + f.values[h.sub->classes.class_of[sz]];
        }
        out.values.push_back(Rat(1, h.sub->order) * acc);
    }
    return out;
}

ClassFunction restrict_cf(const ClassFunction& f, const SubgroupContext& h) {
    const GroupPtr& g = h.inclusion.codomain;
    if (f.group != g) throw data_error("restrict_cf: class function is not over the parent");
    ClassFunction out;
    out.group = h.sub;
    for (int c = 0; c < h.sub->classes.count(); ++c) {
        int y = h.to_parent[h.sub->classes.reps[c]];
        out.values.push_back(f.values[g->classes.class_of[y]]);
    }
    return out;
}

Cyclotomic inner_product(const ClassFunction& a, const ClassFunction& b) {
    if (a.group != b.group) throw data_error("inner_product: group mismatch");
    const ConjugacyClasses& cc = a.group->classes;
    Cyclotomic acc;
    for (int c = 0; c < cc.count(); ++c)
        acc = acc + Rat(cc.sizes[c]) * (a.values[c] * b.values[c].conj());
    return Rat(1, a.group->order) * acc;
}

bool rational_lattice_check(long n) {
    GroupPtr g = build_group("cyclic " + std::to_string(n));
    CharacterTable t = char_table(g);

    std::vector<std::vector<Int>> perm_rows;
    for (long d : divisors(n)) {
        Subgroup h = cyclic_subgroup(*g, g->power(1 % static_cast<int>(n), n / d));
        perm_rows.push_back(perm_character(g, h, t).coeffs);
    }

    std::vector<std::vector<Int>> stable_rows;
    std::vector<bool> seen(n, false);
    for (long j = 0; j < n; ++j) {
        if (seen[j]) continue;
        std::vector<Int> row(n, Int(0));
        for (long kk = 0; kk < n; ++kk) {
            if (gcd_l(kk, n) != 1) continue;
            long jj = (j * kk) % n;
            if (!seen[jj]) {
                seen[jj] = true;
                row[jj] = 1;
            }
        }
        stable_rows.push_back(row);
    }

    LatticeBasis a = lattice_from_rows(IntMatrix::from_rows(perm_rows));
    LatticeBasis b = lattice_from_rows(IntMatrix::from_rows(stable_rows));
    return a.basis == b.basis;
}

}  // namespace gsig
