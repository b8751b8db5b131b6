#include "gsig/group.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace gsig {

namespace {

// Abstract element used only while enumerating: exponent vectors for
// cyclic/abelian specs, permutation images (0-based) for perm specs.
using ElemRep = std::vector<int>;

struct GroupSeed {
    enum class Kind { Cyclic, Abelian, Perm } kind;
    std::vector<int> moduli;        // abelian orders
    int degree = 0;                 // perm degree
    std::vector<ElemRep> gens;
    ElemRep identity;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

long parse_long(const std::string& tok) {
    size_t pos = 0;
    long v;
    try {
        v = std::stol(tok, &pos);
    } catch (const std::exception&) {
        throw spec_error("expected an integer, got '" + tok + "'");
    }
    if (pos != tok.size()) throw spec_error("expected an integer, got '" + tok + "'");
    return v;
}

ElemRep parse_permutation(const std::string& text, int degree) {
    ElemRep p(degree);
    for (int i = 0; i < degree; ++i) p[i] = i;
    std::vector<std::vector<int>> cycles;
    size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) { ++i; continue; }
        if (text[i] != '(') throw spec_error("bad cycle notation: '" + text + "'");
        size_t close = text.find(')', i);
        if (close == std::string::npos) throw spec_error("unclosed cycle in '" + text + "'");
        std::istringstream is(text.substr(i + 1, close - i - 1));
        std::vector<int> cyc;
        std::string tok;
        while (is >> tok) {
            long pt = parse_long(tok);
            if (pt < 1 || pt > degree) throw spec_error("cycle point out of range in '" + text + "'");
            cyc.push_back(static_cast<int>(pt - 1));
        }
        std::set<int> distinct(cyc.begin(), cyc.end());
        if (distinct.size() != cyc.size()) throw spec_error("repeated point in cycle '" + text + "'");
        if (!cyc.empty()) cycles.push_back(cyc);
        i = close + 1;
    }
    // compose cycles right to left
    for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
        ElemRep q(degree);
        for (int j = 0; j < degree; ++j) q[j] = j;
        const auto& cyc = *it;
        for (size_t j = 0; j < cyc.size(); ++j) q[cyc[j]] = cyc[(j + 1) % cyc.size()];
        ElemRep r(degree);
        for (int j = 0; j < degree; ++j) r[j] = p[q[j]];
        p = r;
    }
    return p;
}

GroupSeed parse_spec(const std::string& spec) {
    GroupSeed seed;
    std::string body = trim(spec);
    if (body.rfind("cyclic", 0) == 0) {
        long n = parse_long(trim(body.substr(6)));
        if (n < 1) throw spec_error("cyclic order must be >= 1");
        seed.kind = GroupSeed::Kind::Cyclic;
        seed.moduli = {static_cast<int>(n)};
        seed.identity = {0};
        seed.gens = {{1 % static_cast<int>(n)}};
        return seed;
    }
    if (body.rfind("abelian", 0) == 0) {
        std::istringstream is(body.substr(7));
        std::string tok;
        while (is >> tok) {
            long n = parse_long(tok);
            if (n < 1) throw spec_error("abelian orders must be >= 1");
            seed.moduli.push_back(static_cast<int>(n));
        }
        if (seed.moduli.empty()) throw spec_error("abelian spec needs at least one order");
        seed.kind = GroupSeed::Kind::Abelian;
        int k = static_cast<int>(seed.moduli.size());
        seed.identity.assign(k, 0);
        for (int i = 0; i < k; ++i) {
            ElemRep g(k, 0);
            g[i] = 1 % seed.moduli[i];
            seed.gens.push_back(g);
        }
        return seed;
    }
    if (body.rfind("perm", 0) == 0) {
        auto parts = split(body, ';');
        std::string head = trim(parts[0]);
        long d = parse_long(trim(head.substr(4)));
        if (d < 1 || d > 1000) throw spec_error("perm degree out of range");
        seed.kind = GroupSeed::Kind::Perm;
        seed.degree = static_cast<int>(d);
        seed.identity.resize(seed.degree);
        for (int i = 0; i < seed.degree; ++i) seed.identity[i] = i;
        for (size_t i = 1; i < parts.size(); ++i) {
            std::string g = trim(parts[i]);
            if (g.empty()) continue;
            seed.gens.push_back(parse_permutation(g, seed.degree));
        }
        if (seed.gens.empty()) throw spec_error("perm spec needs at least one generator");
        return seed;
    }
    throw spec_error("unknown group spec: '" + spec + "' (expected cyclic/abelian/perm)");
}

ElemRep compose(const GroupSeed& seed, const ElemRep& x, const ElemRep& y) {
    if (seed.kind == GroupSeed::Kind::Perm) {
        ElemRep z(seed.degree);
        for (int i = 0; i < seed.degree; ++i) z[i] = x[y[i]];
        return z;
    }
    ElemRep z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = (x[i] + y[i]) % seed.moduli[i];
    return z;
}

std::string abelian_gen_letter(int i) {
    static const char* letters[] = {"x", "y", "z", "w", "u", "v", "s", "t"};
    if (i < 8) return letters[i];
    return "g" + std::to_string(i + 1);
}

std::string abelian_label(const ElemRep& e) {
    std::string out;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        out += abelian_gen_letter(static_cast<int>(i));
        if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
    return out.empty() ? "1" : out;
}

std::string cycle_label(const ElemRep& p) {
    std::string out;
    std::vector<bool> seen(p.size(), false);
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == static_cast<int>(i)) continue;
        out += "(";
        size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first) out += " ";
            out += std::to_string(j + 1);
            first = false;
            j = p[j];
        }
        out += ")";
    }
    return out.empty() ? "()" : out;
}

void compute_conjugacy(FiniteGroup& g) {
    auto& cc = g.classes;
    cc.class_of.assign(g.order, -1);
    for (int x = 0; x < g.order; ++x) {
        if (cc.class_of[x] >= 0) continue;
        int idx = cc.count();
        cc.reps.push_back(x);
        int size = 0;
        for (int a = 0; a < g.order; ++a) {
            int y = g.conjugate(a, x);
            if (cc.class_of[y] < 0) {
                cc.class_of[y] = idx;
                ++size;
            }
        }
        cc.sizes.push_back(size);
    }
    cc.inverse_class.resize(cc.count());
    for (int c = 0; c < cc.count(); ++c) cc.inverse_class[c] = cc.class_of[g.inv[cc.reps[c]]];
}

std::vector<int> closure(const FiniteGroup& g, std::vector<int> gens) {
    std::vector<bool> in(g.order, false);
    std::deque<int> queue;
    in[0] = true;
    std::vector<int> members = {0};
    queue.push_back(0);
    std::sort(gens.begin(), gens.end());
    for (int x : gens)
        if (!in[x]) {
            in[x] = true;
            members.push_back(x);
            queue.push_back(x);
        }
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (int y : gens) {
            int z = g.mul(x, y);
            if (!in[z]) {
                in[z] = true;
                members.push_back(z);
                queue.push_back(z);
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

void compute_commutator_and_abelianization(FiniteGroup& g) {
    std::set<int> comm_gens;
    for (int x = 0; x < g.order; ++x)
        for (int y = 0; y < g.order; ++y)
            comm_gens.insert(g.mul(g.mul(x, y), g.mul(g.inv[x], g.inv[y])));
    g.commutator_members = closure(g, std::vector<int>(comm_gens.begin(), comm_gens.end()));

    // cosets of [G,G], represented by their least member
    std::vector<int> coset_rep(g.order, -1);
    std::vector<int> coset_index(g.order, -1);
    std::vector<int> coset_leaders;
    for (int x = 0; x < g.order; ++x) {
        if (coset_rep[x] >= 0) continue;
        int idx = static_cast<int>(coset_leaders.size());
        coset_leaders.push_back(x);
        for (int n : g.commutator_members) {
            int y = g.mul(x, n);
            coset_rep[y] = x;
            coset_index[y] = idx;
        }
    }
    int m = static_cast<int>(coset_leaders.size());
    int r = static_cast<int>(g.generators.size());

    if (r == 0) {  // trivial group
        g.ab.factors.clear();
        g.ab.project.assign(g.order, {});
        return;
    }

    // BFS exponent vectors over the quotient, then Schreier relations
    std::vector<std::vector<Int>> exps(m);
    std::vector<bool> seen(m, false);
    std::deque<int> queue;
    seen[coset_index[0]] = true;
    exps[coset_index[0]].assign(r, Int(0));
    queue.push_back(coset_index[0]);
    std::vector<int> quotient_mul(static_cast<size_t>(m) * r);
    for (int c = 0; c < m; ++c)
        for (int i = 0; i < r; ++i)
            quotient_mul[static_cast<size_t>(c) * r + i] =
                coset_index[g.mul(coset_leaders[c], g.generators[i])];
    while (!queue.empty()) {
        int c = queue.front();
        queue.pop_front();
        for (int i = 0; i < r; ++i) {
            int c2 = quotient_mul[static_cast<size_t>(c) * r + i];
            if (!seen[c2]) {
                seen[c2] = true;
                exps[c2] = exps[c];
                exps[c2][i] += 1;
                queue.push_back(c2);
            }
        }
    }
    IntMatrix rel(m * r, r);
    for (int c = 0; c < m; ++c)
        for (int i = 0; i < r; ++i) {
            int c2 = quotient_mul[static_cast<size_t>(c) * r + i];
            for (int j = 0; j < r; ++j)
                rel.at(c * r + i, j) = exps[c][j] - exps[c2][j] + (i == j ? 1 : 0);
        }
    SnfResult s = snf(rel);
    if (s.rank != r) throw std::logic_error("abelianization: quotient is not finite");

    std::vector<int> kept;
    for (int i = 0; i < r; ++i) {
        if (s.d.at(i, i) == 1) continue;
        g.ab.factors.push_back(s.d.at(i, i));
        kept.push_back(i);
    }
    g.ab.project.assign(g.order, {});
    for (int x = 0; x < g.order; ++x) {
        const auto& e = exps[coset_index[x]];
        std::vector<Int> v;
        v.reserve(kept.size());
        for (size_t t = 0; t < kept.size(); ++t) {
            Int y = 0;
            for (int j = 0; j < r; ++j) y += e[j] * s.v.at(j, kept[t]);
            Int d = g.ab.factors[t];
            mpz_fdiv_r(y.get_mpz_t(), y.get_mpz_t(), d.get_mpz_t());
            v.push_back(y);
        }
        g.ab.project[x] = std::move(v);
    }
}

}  // namespace

int FiniteGroup::power(int x, long e) const {
    long m = elt_order[x];
    e = pos_mod(e, m);
    int acc = 0;
    int base = x;
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

bool FiniteGroup::is_abelian() const {
    for (int x = 0; x < order; ++x)
        for (int y = x + 1; y < order; ++y)
            if (mul(x, y) != mul(y, x)) return false;
    return true;
}

int FiniteGroup::element_by_name(const std::string& name) const {
    auto it = label_to_id.find(name);
    if (it != label_to_id.end()) return it->second;
    try {
        size_t pos = 0;
        long id = std::stol(name, &pos);
        if (pos == name.size() && id >= 0 && id < order) return static_cast<int>(id);
    } catch (const std::exception&) {
    }
    throw spec_error("unknown element '" + name + "'");
}

GroupPtr build_group(const std::string& spec, int order_cap) {
    GroupSeed seed = parse_spec(spec);
    if (seed.kind != GroupSeed::Kind::Perm) {
        long order = 1;
        for (int n : seed.moduli) {
            order *= n;
            if (order > order_cap) throw cap_error("group order exceeds cap");
        }
    }

    auto g = std::make_shared<FiniteGroup>();
    g->spec = trim(spec);

    // breadth-first enumeration from the identity
    std::map<ElemRep, int> ids;
    std::vector<ElemRep> elems;
    ids[seed.identity] = 0;
    elems.push_back(seed.identity);
    g->bfs_parent.push_back(-1);
    g->bfs_via_gen.push_back(-1);
    std::deque<int> queue = {0};
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (size_t i = 0; i < seed.gens.size(); ++i) {
            ElemRep z = compose(seed, elems[x], seed.gens[i]);
            if (ids.count(z)) continue;
            if (static_cast<int>(elems.size()) >= order_cap)
                throw cap_error("group closure exceeds order cap");
            int id = static_cast<int>(elems.size());
            ids[z] = id;
            elems.push_back(z);
            g->bfs_parent.push_back(x);
            g->bfs_via_gen.push_back(static_cast<int>(i));
            queue.push_back(id);
        }
    }
    g->order = static_cast<int>(elems.size());
    g->bfs_order.resize(g->order);
    for (int i = 0; i < g->order; ++i) g->bfs_order[i] = i;

    g->cayley.resize(static_cast<size_t>(g->order) * g->order);
    for (int x = 0; x < g->order; ++x)
        for (int y = 0; y < g->order; ++y)
            g->cayley[static_cast<size_t>(x) * g->order + y] = ids.at(compose(seed, elems[x], elems[y]));

    g->inv.assign(g->order, -1);
    for (int x = 0; x < g->order; ++x)
        for (int y = 0; y < g->order; ++y)
            if (g->mul(x, y) == 0) {
                g->inv[x] = y;
                break;
            }

    g->elt_order.assign(g->order, 1);
    for (int x = 0; x < g->order; ++x) {
        int y = x, n = 1;
        while (y != 0) {
            y = g->mul(y, x);
            ++n;
        }
        g->elt_order[x] = n;
        g->exponent = lcm_l(g->exponent, n);
    }

    for (const ElemRep& gen : seed.gens) g->generators.push_back(ids.at(gen));

    g->labels.resize(g->order);
    for (int x = 0; x < g->order; ++x) {
        g->labels[x] = seed.kind == GroupSeed::Kind::Perm ? cycle_label(elems[x])
                                                          : abelian_label(elems[x]);
    }
    if (seed.kind == GroupSeed::Kind::Perm) {
        // alias letters for the generators, matching common usage a, b, c, ...
        for (size_t i = 0; i < g->generators.size() && i < 8; ++i) {
            std::string alias(1, static_cast<char>('a' + i));
            int id = g->generators[i];
            if (g->labels[id].front() == '(') g->labels[id] = alias;
        }
    }
    for (int x = 0; x < g->order; ++x) g->label_to_id.emplace(g->labels[x], x);

    compute_conjugacy(*g);
    compute_commutator_and_abelianization(*g);
    return g;
}

const ConjugacyClasses& conjugacy_classes(const FiniteGroup& g) { return g.classes; }

bool Subgroup::contains(int id) const {
    return std::binary_search(member_ids.begin(), member_ids.end(), id);
}

bool Subgroup::operator<(const Subgroup& o) const {
    if (member_ids.size() != o.member_ids.size()) return member_ids.size() < o.member_ids.size();
    return member_ids < o.member_ids;
}

Subgroup commutator_subgroup(const FiniteGroup& g) { return Subgroup{g.commutator_members}; }

const Abelianization& abelianization(const FiniteGroup& g) { return g.ab; }

Subgroup trivial_subgroup() { return Subgroup{{0}}; }

Subgroup whole_group(const FiniteGroup& g) {
    Subgroup s;
    s.member_ids.resize(g.order);
    for (int i = 0; i < g.order; ++i) s.member_ids[i] = i;
    return s;
}

Subgroup cyclic_subgroup(const FiniteGroup& g, int id) {
    std::vector<int> members = {0};
    int y = id;
    while (y != 0) {
        members.push_back(y);
        y = g.mul(y, id);
    }
    std::sort(members.begin(), members.end());
    return Subgroup{members};
}

Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens) {
    return Subgroup{closure(g, gens)};
}

bool is_subgroup(const FiniteGroup& g, const Subgroup& s) {
    if (s.member_ids.empty() || s.member_ids.front() != 0) return false;
    for (int x : s.member_ids) {
        if (x < 0 || x >= g.order) return false;
        if (!s.contains(g.inv[x])) return false;
        for (int y : s.member_ids)
            if (!s.contains(g.mul(x, y))) return false;
    }
    return true;
}

namespace {

Subgroup conjugate_subgroup(const FiniteGroup& g, const Subgroup& s, int a) {
    std::vector<int> members;
    members.reserve(s.member_ids.size());
    for (int x : s.member_ids) members.push_back(g.conjugate(a, x));
    std::sort(members.begin(), members.end());
    return Subgroup{members};
}

std::vector<SubgroupClass> group_into_classes(const FiniteGroup& g, const std::set<Subgroup>& all) {
    std::vector<SubgroupClass> out;
    std::set<Subgroup> assigned;
    for (const Subgroup& s : all) {
        if (assigned.count(s)) continue;
        SubgroupClass cls;
        std::set<Subgroup> orbit;
        for (int a = 0; a < g.order; ++a) orbit.insert(conjugate_subgroup(g, s, a));
        cls.rep = *orbit.begin();
        cls.members.assign(orbit.begin(), orbit.end());
        for (const Subgroup& t : orbit) assigned.insert(t);
        out.push_back(std::move(cls));
    }
    std::sort(out.begin(), out.end(),
              [](const SubgroupClass& a, const SubgroupClass& b) { return a.rep < b.rep; });
    return out;
}

}  // namespace

std::vector<SubgroupClass> subgroups(const FiniteGroup& g, SubgroupMode mode) {
    if (mode == SubgroupMode::Cyclic && g.order > 2000)
        throw cap_error("cyclic subgroup enumeration capped at order 2000");
    if (mode == SubgroupMode::All && g.order > 200)
        throw cap_error("full subgroup enumeration capped at order 200");

    std::set<Subgroup> found;
    found.insert(trivial_subgroup());
    for (int x = 0; x < g.order; ++x) found.insert(cyclic_subgroup(g, x));

    if (mode == SubgroupMode::All) {
        // grow by one generator at a time until no new subgroup appears
        std::deque<Subgroup> work(found.begin(), found.end());
        while (!work.empty()) {
            Subgroup h = work.front();
            work.pop_front();
            for (int x = 0; x < g.order; ++x) {
                if (h.contains(x)) continue;
                std::vector<int> gens = h.member_ids;
                gens.push_back(x);
                Subgroup bigger{closure(g, gens)};
                if (found.insert(bigger).second) work.push_back(bigger);
            }
        }
    }
    return group_into_classes(g, found);
}

std::vector<int> double_cosets(const FiniteGroup& g, const Subgroup& h, const Subgroup& k) {
    if (!is_subgroup(g, h) || !is_subgroup(g, k)) throw data_error("double_cosets: not a subgroup");
    std::vector<bool> seen(g.order, false);
    std::vector<int> reps;
    for (int s = 0; s < g.order; ++s) {
        if (seen[s]) continue;
        reps.push_back(s);
        for (int a : k.member_ids) {
            int as = g.mul(a, s);
            for (int b : h.member_ids) seen[g.mul(as, b)] = true;
        }
    }
    return reps;
}

Homomorphism make_homomorphism(const GroupPtr& domain, const GroupPtr& codomain,
                               const std::vector<int>& generator_images) {
    if (generator_images.size() != domain->generators.size())
        throw spec_error("make_homomorphism: need one image per generator");
    Homomorphism f;
    f.domain = domain;
    f.codomain = codomain;
    f.image.assign(domain->order, -1);
    f.image[0] = 0;
    for (int id : domain->bfs_order) {
        if (id == 0) continue;
        int p = domain->bfs_parent[id];
        int gi = domain->bfs_via_gen[id];
        f.image[id] = codomain->mul(f.image[p], generator_images[gi]);
    }

    auto check = [&](int x, int y) {
        return f.image[domain->mul(x, y)] == codomain->mul(f.image[x], f.image[y]);
    };
    if (domain->order <= 64) {
        for (int x = 0; x < domain->order; ++x)
            for (int y = 0; y < domain->order; ++y)
                if (!check(x, y)) throw data_error("images are inconsistent with the domain relations");
    } else {
        std::mt19937 rng(0x5eed);
        std::uniform_int_distribution<int> pick(0, domain->order - 1);
        for (int t = 0; t < 10000; ++t)
            if (!check(pick(rng), pick(rng)))
                throw data_error("images are inconsistent with the domain relations");
    }
    return f;
}

Homomorphism identity_homomorphism(const GroupPtr& g) {
    Homomorphism f;
    f.domain = g;
    f.codomain = g;
    f.image.resize(g->order);
    for (int i = 0; i < g->order; ++i) f.image[i] = i;
    return f;
}

SubgroupContext materialize(const GroupPtr& g, const Subgroup& s) {
    if (!is_subgroup(*g, s)) throw data_error("materialize: not a subgroup");
    SubgroupContext ctx;
    ctx.to_parent = s.member_ids;
    ctx.from_parent.assign(g->order, -1);
    int n = s.order();
    for (int i = 0; i < n; ++i) ctx.from_parent[s.member_ids[i]] = i;

    auto k = std::make_shared<FiniteGroup>();
    k->spec = "subgroup[" + std::to_string(n) + "] of " + g->spec;
    k->order = n;
    k->cayley.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            k->cayley[static_cast<size_t>(i) * n + j] =
                ctx.from_parent[g->mul(s.member_ids[i], s.member_ids[j])];
    k->inv.resize(n);
    k->elt_order.resize(n);
    for (int i = 0; i < n; ++i) {
        k->inv[i] = ctx.from_parent[g->inv[s.member_ids[i]]];
        k->elt_order[i] = g->elt_order[s.member_ids[i]];
        k->exponent = lcm_l(k->exponent, k->elt_order[i]);
    }
    k->labels.resize(n);
    for (int i = 0; i < n; ++i) k->labels[i] = g->labels[s.member_ids[i]];
    for (int i = 0; i < n; ++i) k->label_to_id.emplace(k->labels[i], i);

    // greedy minimal generating set, then BFS spanning words over it
    std::vector<int> gens;
    Subgroup have = trivial_subgroup();
    while (have.order() < n) {
        int next = -1;
        for (int x : s.member_ids)
            if (!have.contains(x)) { next = x; break; }
        gens.push_back(ctx.from_parent[next]);
        std::vector<int> kgens;
        for (int kg : gens) kgens.push_back(s.member_ids[kg]);
        std::vector<int> grown = closure(*g, kgens);
        have = Subgroup{grown};
    }
    k->generators = gens;
    k->bfs_parent.assign(n, -1);
    k->bfs_via_gen.assign(n, -1);
    k->bfs_order = {0};
    std::deque<int> queue = {0};
    std::vector<bool> seen(n, false);
    seen[0] = true;
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (size_t i = 0; i < gens.size(); ++i) {
            int z = k->mul(x, gens[i]);
            if (seen[z]) continue;
            seen[z] = true;
            k->bfs_parent[z] = x;
            k->bfs_via_gen[z] = static_cast<int>(i);
            k->bfs_order.push_back(z);
            queue.push_back(z);
        }
    }
    compute_conjugacy(*k);
    compute_commutator_and_abelianization(*k);

    ctx.sub = k;
    ctx.inclusion.domain = ctx.sub;
    ctx.inclusion.codomain = g;
    ctx.inclusion.image = ctx.to_parent;
    return ctx;
}

std::optional<Homomorphism> find_monomorphism(const GroupPtr& h, const GroupPtr& g) {
    if (h->order > g->order || g->order % h->order != 0) return std::nullopt;
    int r = static_cast<int>(h->generators.size());
    std::vector<int> images(r, -1);

    // depth-first over candidate generator images in ascending id order
    std::function<std::optional<Homomorphism>(int)> extend =
        [&](int depth) -> std::optional<Homomorphism> {
        if (depth == r) {
            Homomorphism f;
            try {
                f = make_homomorphism(h, g, images);
            } catch (const data_error&) {
                return std::nullopt;
            }
            std::set<int> img(f.image.begin(), f.image.end());
            if (static_cast<int>(img.size()) != h->order) return std::nullopt;
            return f;
        }
        int hord = h->elt_order[h->generators[depth]];
        for (int cand = 0; cand < g->order; ++cand) {
            if (g->elt_order[cand] != hord) continue;
            images[depth] = cand;
            if (auto f = extend(depth + 1)) return f;
        }
        images[depth] = -1;
        return std::nullopt;
    };
    return extend(0);
}

std::string group_to_json(const FiniteGroup& g) {
    nlohmann::ordered_json j;
    j["order"] = g.order;
    j["cayley"] = g.cayley;
    j["labels"] = g.labels;
    return j.dump();
}

}  // namespace gsig
