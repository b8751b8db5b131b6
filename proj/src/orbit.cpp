#include "gsig/orbit.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace gsig {

bool OrbitData::empty() const {
    return std::all_of(mult.begin(), mult.end(), [](long m) { return m == 0; });
}

long OrbitData::entry_count() const {
    long q = 0;
    for (long m : mult) q += m;
    return q;
}

OrbitData empty_data(const GroupPtr& g) {
    return OrbitData{g, std::vector<long>(g->classes.count(), 0)};
}

namespace {

void check_psi(const OrbitData& d) {
    const FiniteGroup& g = *d.group;
    const auto& ab = g.ab;
    size_t k = ab.factors.size();
    std::vector<Int> acc(k, Int(0));
    for (int c = 0; c < g.classes.count(); ++c) {
        if (d.mult[c] == 0) continue;
        const auto& p = ab.project[g.classes.reps[c]];
        for (size_t i = 0; i < k; ++i) acc[i] += d.mult[c] * p[i];
    }
    for (size_t i = 0; i < k; ++i)
        if (acc[i] % ab.factors[i] != 0)
            throw data_error("product of the entries does not lie in the commutator subgroup");
}

}  // namespace

OrbitData make_data(const GroupPtr& g, const std::vector<std::pair<int, long>>& entries) {
    OrbitData d = empty_data(g);
    for (auto [id, m] : entries) {
        if (id < 0 || id >= g->order) throw spec_error("element id out of range");
        if (m < 0) throw spec_error("multiplicities must be nonnegative");
        d.mult[g->classes.class_of[id]] += m;
    }
    check_psi(d);
    return d;
}

OrbitData data_from_class_counts(const GroupPtr& g, std::vector<long> class_mult) {
    if (static_cast<int>(class_mult.size()) != g->classes.count())
        throw std::logic_error("class count mismatch");
    OrbitData d{g, std::move(class_mult)};
    check_psi(d);
    return d;
}

OrbitData reduce(const OrbitData& d) {
    const ConjugacyClasses& cc = d.group->classes;
    OrbitData r = d;
    r.mult[cc.class_of[0]] = 0;
    for (int c = 0; c < cc.count(); ++c) {
        int ci = cc.inverse_class[c];
        if (c == cc.class_of[0]) continue;
        if (ci == c) {
            r.mult[c] %= 2;
        } else if (c < ci) {
            long m = std::min(r.mult[c], r.mult[ci]);
            r.mult[c] -= m;
            r.mult[ci] -= m;
        }
    }
    return r;
}

bool is_reduced(const OrbitData& d) { return reduce(d).mult == d.mult; }

bool same_bg_class(const OrbitData& a, const OrbitData& b) {
    if (a.group != b.group) throw data_error("orbit data over different groups");
    return reduce(a).mult == reduce(b).mult;
}

OrbitData concat(const OrbitData& a, const OrbitData& b) {
    if (a.group != b.group) throw data_error("orbit data over different groups");
    OrbitData c = a;
    for (size_t i = 0; i < c.mult.size(); ++i) c.mult[i] += b.mult[i];
    return c;
}

OrbitData add(const OrbitData& a, const OrbitData& b) { return reduce(concat(a, b)); }

OrbitData neg(const OrbitData& d) {
    const ConjugacyClasses& cc = d.group->classes;
    OrbitData n = empty_data(d.group);
    for (int c = 0; c < cc.count(); ++c) n.mult[cc.inverse_class[c]] += d.mult[c];
    return reduce(n);
}

OrbitData scaled(long n, const OrbitData& d) {
    if (n < 0) throw std::logic_error("scaled: negative multiple, use neg");
    OrbitData s = d;
    for (long& m : s.mult) m *= n;
    return reduce(s);
}

OrbitData lambda_power(long n, const OrbitData& d) {
    const FiniteGroup& g = *d.group;
    long e = pos_mod(n, g.exponent);
    OrbitData out = empty_data(d.group);
    for (int c = 0; c < g.classes.count(); ++c) {
        if (d.mult[c] == 0) continue;
        int z = g.power(g.classes.reps[c], e);
        out.mult[g.classes.class_of[z]] += d.mult[c];
    }
    return reduce(out);
}

OrbitData pushforward(const Homomorphism& f, const OrbitData& d) {
    if (f.domain != d.group) throw data_error("pushforward: data is not over the domain");
    const FiniteGroup& g = *f.codomain;
    OrbitData out = empty_data(f.codomain);
    for (int c = 0; c < d.group->classes.count(); ++c) {
        if (d.mult[c] == 0) continue;
        int z = f.apply(d.group->classes.reps[c]);
        out.mult[g.classes.class_of[z]] += d.mult[c];
    }
    return reduce(out);
}

namespace {

// Raw restriction as (parent element, multiplicity) contributions: for every
// orbit of K on the cosets g<gamma>, the distinguished generator of the point
// stabilizer K cap g<gamma>g^-1, skipping free orbits.
std::vector<std::pair<int, long>> restrict_parent_elements(const OrbitData& d,
                                                                const std::vector<int>& members) {
    const FiniteGroup& g = *d.group;
    std::vector<bool> in_k(g.order, false);
    for (int x : members) in_k[x] = true;

    std::vector<std::pair<int, long>> out;
    for (int c = 0; c < g.classes.count(); ++c) {
        if (d.mult[c] == 0) continue;
        int gamma = g.classes.reps[c];
        int nu = g.elt_order[gamma];
        if (gamma == 0) continue;

        // cosets a<gamma>, least member as representative
        std::vector<int> coset_of(g.order, -1);
        std::vector<int> coset_reps;
        for (int a = 0; a < g.order; ++a) {
            if (coset_of[a] >= 0) continue;
            int idx = static_cast<int>(coset_reps.size());
            coset_reps.push_back(a);
            int z = a;
            for (int e = 0; e < nu; ++e) {
                coset_of[z] = idx;
                z = g.mul(z, gamma);
            }
        }

        std::vector<bool> visited(coset_reps.size(), false);
        for (size_t idx = 0; idx < coset_reps.size(); ++idx) {
            if (visited[idx]) continue;
            int a = coset_reps[idx];
            for (int kk : members) visited[coset_of[g.mul(kk, a)]] = true;
            // smallest positive power of the conjugate landing in K
            int z = gamma;
            for (int e = 1; e < nu; ++e) {
                int conj = g.mul(g.mul(a, z), g.inv[a]);
                if (in_k[conj]) {
                    out.emplace_back(conj, d.mult[c]);
                    break;
                }
                z = g.mul(z, gamma);
            }
        }
    }
    return out;
}

}  // namespace

OrbitData restrict_raw(const OrbitData& d, const SubgroupContext& k) {
    if (k.inclusion.codomain != d.group) throw data_error("restrict: subgroup of a different group");
    auto contrib = restrict_parent_elements(d, k.to_parent);
    OrbitData out = empty_data(k.sub);
    for (auto [z, m] : contrib) {
        int sz = k.from_parent[z];
        if (sz < 0) throw std::logic_error("restrict: contribution outside the subgroup");
        out.mult[k.sub->classes.class_of[sz]] += m;
    }
    check_psi(out);
    return out;
}

OrbitData restrict_data(const OrbitData& d, const SubgroupContext& k) {
    return reduce(restrict_raw(d, k));
}

std::vector<std::pair<long, long>> restrict_exponents(const OrbitData& d, int y) {
    const FiniteGroup& g = *d.group;
    std::vector<int> members = cyclic_subgroup(g, y).member_ids;
    std::map<int, long> exponent_of;
    int z = 0;
    for (long e = 0; e < g.elt_order[y]; ++e) {
        exponent_of[z] = e;
        z = g.mul(z, y);
    }
    std::vector<std::pair<long, long>> out;
    for (auto [elem, m] : restrict_parent_elements(d, members)) out.emplace_back(exponent_of.at(elem), m);
    return out;
}

bool double_coset_check(const GroupPtr& g, const SubgroupContext& h, const SubgroupContext& k,
                        const OrbitData& d) {
    if (d.group != h.sub) throw data_error("double_coset_check: data must be over H");
    OrbitData lhs = restrict_data(pushforward(h.inclusion, d), k);

    Subgroup hsub{h.to_parent};
    Subgroup ksub{k.to_parent};
    OrbitData rhs = empty_data(k.sub);
    for (int s : double_cosets(*g, hsub, ksub)) {
        // sHs^-1 and the conjugation map f_s : H -> sHs^-1
        std::vector<int> conj_members;
        conj_members.reserve(h.to_parent.size());
        for (int x : h.to_parent) conj_members.push_back(g->conjugate(s, x));
        std::sort(conj_members.begin(), conj_members.end());
        SubgroupContext hs_ctx = materialize(g, Subgroup{conj_members});

        Homomorphism f_s;
        f_s.domain = h.sub;
        f_s.codomain = hs_ctx.sub;
        f_s.image.resize(h.sub->order);
        for (int i = 0; i < h.sub->order; ++i)
            f_s.image[i] = hs_ctx.from_parent[g->conjugate(s, h.to_parent[i])];
        OrbitData d_s = pushforward(f_s, d);

        // H_s = sHs^-1 cap K as a subgroup of sHs^-1
        std::vector<int> inter;
        for (int i = 0; i < hs_ctx.sub->order; ++i)
            if (ksub.contains(hs_ctx.to_parent[i])) inter.push_back(i);
        SubgroupContext inter_ctx = materialize(hs_ctx.sub, Subgroup{inter});
        OrbitData restricted = restrict_data(d_s, inter_ctx);

        // j : H_s -> K
        Homomorphism j;
        j.domain = inter_ctx.sub;
        j.codomain = k.sub;
        j.image.resize(inter_ctx.sub->order);
        for (int i = 0; i < inter_ctx.sub->order; ++i)
            j.image[i] = k.from_parent[hs_ctx.to_parent[inter_ctx.to_parent[i]]];
        rhs = add(rhs, pushforward(j, restricted));
    }
    return same_bg_class(lhs, rhs);
}

BGStructure bg_structure(const GroupPtr& g) {
    const ConjugacyClasses& cc = g->classes;
    const Abelianization& ab = g->ab;
    int t = cc.count();
    int k = static_cast<int>(ab.factors.size());

    // ker Psi = {v : sum v_c proj(rep_c) = 0 mod (d_i)} via an integer kernel
    // with congruence columns
    IntMatrix stacked(t + k, k);
    for (int c = 0; c < t; ++c)
        for (int i = 0; i < k; ++i) stacked.at(c, i) = ab.project[cc.reps[c]][i];
    for (int i = 0; i < k; ++i) stacked.at(t + i, i) = ab.factors[i];
    IntMatrix ker = kernel(stacked);
    IntMatrix ker_gens(ker.rows, t);
    for (int i = 0; i < ker.rows; ++i)
        for (int j = 0; j < t; ++j) ker_gens.at(i, j) = ker.at(i, j);

    // N = <e_identity> + <e_c + e_{c^-1}>
    std::vector<std::vector<Int>> n_rows;
    {
        std::vector<Int> row(t, Int(0));
        row[cc.class_of[0]] = 1;
        n_rows.push_back(row);
    }
    for (int c = 0; c < t; ++c) {
        int ci = cc.inverse_class[c];
        if (ci < c) continue;
        std::vector<Int> row(t, Int(0));
        row[c] += 1;
        row[ci] += 1;
        n_rows.push_back(row);
    }

    BGStructure st;
    st.group = g;
    st.coords = quotient(ker_gens, IntMatrix::from_rows(n_rows));

    std::vector<OrbitData> free_basis, torsion_basis;
    for (size_t i = 0; i < st.coords.group.factors.size(); ++i) {
        const Int& f = st.coords.group.factors[i];
        if (f != 0 && f != 2)
            throw std::logic_error("orbit-data group has a factor other than Z and Z/2");
        // negative lift coordinates move to the inverse class
        OrbitData lift = empty_data(g);
        for (int c = 0; c < t; ++c) {
            const Int& e = st.coords.lifts.at(static_cast<int>(i), c);
            if (e >= 0)
                lift.mult[c] += e.get_si();
            else
                lift.mult[cc.inverse_class[c]] += Int(-e).get_si();
        }
        lift = reduce(lift);
        if (f == 0) {
            st.free_slots.push_back(static_cast<int>(i));
            free_basis.push_back(lift);
        } else {
            st.torsion_slots.push_back(static_cast<int>(i));
            torsion_basis.push_back(lift);
        }
    }
    st.free_rank = static_cast<int>(free_basis.size());
    st.two_torsion = static_cast<int>(torsion_basis.size());
    st.basis = std::move(free_basis);
    st.basis.insert(st.basis.end(), torsion_basis.begin(), torsion_basis.end());
    return st;
}

BGCoordinates coordinates(const OrbitData& d, const BGStructure& st) {
    if (d.group != st.group) throw data_error("coordinates: data over a different group");
    std::vector<Int> v(d.mult.begin(), d.mult.end());
    std::vector<Int> y = quotient_coordinates(st.coords, v);
    BGCoordinates out;
    for (int slot : st.free_slots) out.free_part.push_back(y[slot]);
    for (int slot : st.torsion_slots) out.torsion_part.push_back(static_cast<int>(y[slot].get_si()));
    return out;
}

OrbitData from_coordinates(const BGStructure& st, const BGCoordinates& c) {
    OrbitData acc = empty_data(st.group);
    for (int i = 0; i < st.free_rank; ++i) {
        const Int& coeff = c.free_part[i];
        if (coeff >= 0)
            acc = concat(acc, scaled(coeff.get_si(), st.basis[i]));
        else
            acc = concat(acc, scaled(Int(-coeff).get_si(), neg(st.basis[i])));
    }
    for (int i = 0; i < st.two_torsion; ++i)
        if (c.torsion_part[i] % 2 != 0) acc = concat(acc, st.basis[st.free_rank + i]);
    return reduce(acc);
}

long genus(const OrbitData& d, long h) {
    const FiniteGroup& g = *d.group;
    long s = 0;  // |G| sum m_i (1 - 1/nu_i)
    for (int c = 0; c < g.classes.count(); ++c) {
        if (d.mult[c] == 0) continue;
        int nu = g.elt_order[g.classes.reps[c]];
        s += d.mult[c] * (g.order - g.order / nu);
    }
    long twog = 2 + g.order * (2 * h - 2) + s;
    if (twog % 2 != 0) throw data_error("genus: no integral solution");
    long gg = twog / 2;
    if (gg < 0) throw data_error("genus: negative genus");
    return gg;
}

long quotient_genus(const OrbitData& d, long g, const std::vector<int>& k_members) {
    const FiniteGroup& gr = *d.group;
    long k_order = static_cast<long>(k_members.size());
    long s = 0;
    for (auto [z, m] : restrict_parent_elements(d, k_members))
        s += m * (k_order - k_order / gr.elt_order[z]);
    long numer = 2 * g - 2 - s + 2 * k_order;
    if (numer % (2 * k_order) != 0) throw data_error("quotient genus is not integral");
    return numer / (2 * k_order);
}

RealizationWitness realize(const OrbitData& d) {
    check_psi(d);
    const FiniteGroup& g = *d.group;
    RealizationWitness w;
    for (int c = 0; c < g.classes.count(); ++c)
        for (long i = 0; i < d.mult[c]; ++i) w.xi_images.push_back(g.classes.reps[c]);

    int prod = 0;
    for (int xi : w.xi_images) prod = g.mul(prod, xi);
    int target = g.inv[prod];

    // shortest product of commutators equal to target, BFS over [G,G]
    std::map<int, std::pair<int, int>> comm_pair;  // value -> one (u, v) with [u,v] = value
    for (int u = 0; u < g.order; ++u)
        for (int v = 0; v < g.order; ++v) {
            int c = g.mul(g.mul(u, v), g.mul(g.inv[u], g.inv[v]));
            comm_pair.try_emplace(c, u, v);
        }
    std::vector<int> dist(g.order, -1), via(g.order, -1), from(g.order, -1);
    std::deque<int> queue;
    dist[0] = 0;
    queue.push_back(0);
    while (!queue.empty() && dist[target] < 0) {
        int x = queue.front();
        queue.pop_front();
        for (const auto& [c, uv] : comm_pair) {
            int z = g.mul(x, c);
            if (dist[z] >= 0) continue;
            dist[z] = dist[x] + 1;
            via[z] = c;
            from[z] = x;
            queue.push_back(z);
        }
    }
    if (dist[target] < 0) throw std::logic_error("realize: target not reachable in [G,G]");
    std::vector<int> word;
    for (int x = target; x != 0; x = from[x]) word.push_back(via[x]);
    std::reverse(word.begin(), word.end());
    for (int c : word) {
        auto [u, v] = comm_pair.at(c);
        w.a_images.push_back(u);
        w.b_images.push_back(v);
    }
    // one trivial handle per generator forces surjectivity
    for (int gen : g.generators) {
        w.a_images.push_back(gen);
        w.b_images.push_back(0);
    }
    w.h = static_cast<long>(w.a_images.size());

    if (!verify_witness(d, w)) throw std::logic_error("realize: witness verification failed");
    return w;
}

bool verify_witness(const OrbitData& d, const RealizationWitness& w) {
    const FiniteGroup& g = *d.group;
    if (static_cast<long>(w.a_images.size()) != w.h ||
        static_cast<long>(w.b_images.size()) != w.h)
        return false;

    int prod = 0;
    for (size_t i = 0; i < w.a_images.size(); ++i) {
        int a = w.a_images[i], b = w.b_images[i];
        prod = g.mul(prod, g.mul(g.mul(a, b), g.mul(g.inv[a], g.inv[b])));
    }
    for (int xi : w.xi_images) prod = g.mul(prod, xi);
    if (prod != 0) return false;

    std::vector<long> class_count(g.classes.count(), 0);
    for (int xi : w.xi_images) ++class_count[g.classes.class_of[xi]];
    if (class_count != d.mult) return false;

    std::vector<int> gens = w.a_images;
    gens.insert(gens.end(), w.b_images.begin(), w.b_images.end());
    gens.insert(gens.end(), w.xi_images.begin(), w.xi_images.end());
    return generated_subgroup(g, gens).order() == g.order;
}

long fixed_point_count(const OrbitData& d, int y) {
    if (y == 0) throw data_error("fixed points are counted for nontrivial elements only");
    const FiniteGroup& g = *d.group;
    long total = 0;
    for (int c = 0; c < g.classes.count(); ++c) {
        if (d.mult[c] == 0) continue;
        int gamma = g.classes.reps[c];
        int nu = g.elt_order[gamma];
        if (gamma == 0) continue;
        std::vector<bool> seen(g.order, false);
        for (int a = 0; a < g.order; ++a) {
            if (seen[a]) continue;
            int z = a;
            for (int e = 0; e < nu; ++e) {
                seen[z] = true;
                z = g.mul(z, gamma);
            }
            // does y lie in a<gamma>a^-1?
            int p = gamma;
            for (int e = 1; e < nu; ++e) {
                if (g.mul(g.mul(a, p), g.inv[a]) == y) {
                    total += d.mult[c];
                    break;
                }
                p = g.mul(p, gamma);
            }
        }
    }
    return total;
}

namespace {

std::string trim_copy(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

OrbitData parse_data_text(const GroupPtr& g, const std::string& text) {
    std::string body = trim_copy(text);
    if (body.size() < 2 || body.front() != '[' || body.back() != ']')
        throw spec_error("orbit data must be of the form [entry, entry, ...]");
    body = body.substr(1, body.size() - 2);

    std::vector<std::pair<int, long>> entries;
    std::istringstream is(body);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        tok = trim_copy(tok);
        if (tok.empty()) {
            if (entries.empty() && is.eof()) break;
            throw spec_error("empty entry in orbit data");
        }
        auto it = g->label_to_id.find(tok);
        if (it != g->label_to_id.end()) {
            entries.emplace_back(it->second, 1);
            continue;
        }
        size_t caret = tok.rfind('^');
        if (caret == std::string::npos || caret == 0 || caret + 1 == tok.size()) {
            entries.emplace_back(g->element_by_name(tok), 1);
            continue;
        }
        std::string head = trim_copy(tok.substr(0, caret));
        std::string tail = trim_copy(tok.substr(caret + 1));
        long m;
        try {
            size_t pos = 0;
            m = std::stoll(tail, &pos);
            if (pos != tail.size()) throw std::invalid_argument(tail);
        } catch (const std::exception&) {
            throw spec_error("bad multiplicity in entry '" + tok + "'");
        }
        if (m < 0) throw spec_error("multiplicities must be nonnegative");
        entries.emplace_back(g->element_by_name(head), m);
    }
    return make_data(g, entries);
}

std::string data_to_text(const OrbitData& d) {
    const FiniteGroup& g = *d.group;
    std::ostringstream os;
    os << "[";
    bool first = true;
    for (int c = 0; c < g.classes.count(); ++c) {
        if (d.mult[c] == 0) continue;
        if (!first) os << ", ";
        os << g.labels[g.classes.reps[c]];
        if (d.mult[c] > 1) os << "^" << d.mult[c];
        first = false;
    }
    os << "]";
    return os.str();
}

std::string data_to_json(const OrbitData& d) {
    nlohmann::ordered_json j;
    j["group"] = d.group->spec;
    auto entries = nlohmann::json::array();
    const FiniteGroup& g = *d.group;
    for (int c = 0; c < g.classes.count(); ++c) {
        if (d.mult[c] == 0) continue;
        entries.push_back({g.classes.reps[c], d.mult[c]});
    }
    j["entries"] = entries;
    return j.dump();
}

OrbitData parse_data_json(const GroupPtr& g, const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw spec_error(std::string("bad data json: ") + e.what());
    }
    if (j.at("group").get<std::string>() != g->spec)
        throw spec_error("data json is for group '" + j.at("group").get<std::string>() + "'");
    std::vector<std::pair<int, long>> entries;
    for (const auto& e : j.at("entries"))
        entries.emplace_back(e.at(0).get<int>(), e.at(1).get<long>());
    return make_data(g, entries);
}

OrbitData parse_data(const GroupPtr& g, const std::string& text) {
    std::string t = trim_copy(text);
    if (!t.empty() && t.front() == '{') return parse_data_json(g, t);
    return parse_data_text(g, t);
}

}  // namespace gsig
