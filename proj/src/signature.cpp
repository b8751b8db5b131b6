#include "gsig/signature.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gsig/class_number.hpp"

namespace gsig {

std::string variant_name(const RelationSpec& v) {
    switch (v.kind) {
        case Variant::D: return "D";
        case Variant::E: return "E";
        case Variant::Dprime: return "Dprime";
    }
    return "?";
}

RelationSpec parse_variant(const std::string& name) {
    std::string n;
    for (char c : name) n += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (n == "d") return {Variant::D, {}};
    if (n == "e") return {Variant::E, {}};
    if (n == "dprime" || n == "d'") return {Variant::Dprime, {}};
    throw spec_error("unknown variant '" + name + "' (expected d, e or dprime)");
}

std::vector<Subgroup> default_dprime_list(const GroupPtr& g) {
    std::set<Subgroup> list;
    list.insert(trivial_subgroup());
    list.insert(whole_group(*g));
    Subgroup comm = commutator_subgroup(*g);
    for (int c = 0; c < g->classes.count(); ++c) {
        int rep = g->classes.reps[c];
        if (rep == 0 || !comm.contains(rep)) continue;
        list.insert(cyclic_subgroup(*g, rep));
    }
    return std::vector<Subgroup>(list.begin(), list.end());
}

LatticeBasis relation_lattice(const GroupPtr& g, const CharacterTable& t, const RelationSpec& v) {
    std::vector<Subgroup> family;
    if (v.kind == Variant::Dprime) {
        bool has_trivial = false, has_whole = false;
        for (const Subgroup& s : v.dprime_list) {
            has_trivial |= s.order() == 1;
            has_whole |= s.order() == g->order;
        }
        if (!has_trivial || !has_whole)
            throw data_error("Dprime list must contain the trivial subgroup and the whole group");
        family = v.dprime_list;
    } else {
        SubgroupMode mode = v.kind == Variant::D ? SubgroupMode::Cyclic : SubgroupMode::All;
        for (const SubgroupClass& cls : subgroups(*g, mode)) family.push_back(cls.rep);
        if (v.kind == Variant::D) family.push_back(whole_group(*g));
    }
    std::vector<std::vector<Int>> rows;
    rows.reserve(family.size());
    for (const Subgroup& h : family) rows.push_back(perm_character(g, h, t).coeffs);
    LatticeBasis L = lattice_from_rows(IntMatrix::from_rows(rows));
    L.ambient = t.count();
    return L;
}

namespace {

std::vector<Int> apply_conj_perm(const CharacterTable& t, const std::vector<Int>& v) {
    std::vector<Int> w(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[t.conj_perm[i]] = v[i];
    return w;
}

std::vector<Int> vec_sub(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

std::vector<Int> vec_scale(const Int& s, const std::vector<Int>& a) {
    std::vector<Int> c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = s * a[i];
    return c;
}

}  // namespace

ThetaContext make_theta_context(const GroupPtr& g, RelationSpec v) {
    return make_theta_context(g, std::move(v), char_table(g));
}

ThetaContext make_theta_context(const GroupPtr& g, RelationSpec v, CharacterTable t) {
    if (v.kind == Variant::Dprime && v.dprime_list.empty()) v.dprime_list = default_dprime_list(g);
    ThetaContext ctx;
    ctx.group = g;
    ctx.table = std::move(t);
    ctx.variant = std::move(v);
    ctx.relations = relation_lattice(g, ctx.table, ctx.variant);

    int n = ctx.table.count();
    IntMatrix one_plus_sigma(n, n);
    for (int i = 0; i < n; ++i) {
        one_plus_sigma.at(i, i) += 1;
        one_plus_sigma.at(i, ctx.table.conj_perm[i]) += 1;
    }
    ctx.a_lattice = preimage(one_plus_sigma, ctx.relations);
    ctx.a_group = quotient(ctx.a_lattice.basis, ctx.relations.basis);
    return ctx;
}

std::vector<Int> theta(const ThetaContext& ctx, const OrbitData& d) {
    if (d.group != ctx.group) throw data_error("theta: data over a different group");
    RealizationWitness w = realize(d);
    MultiplicityVector m = multiplicities(action_character(d, w), ctx.table);

    // independence of the realization: one extra trivial handle shifts the
    // character by the regular representation, which the relations absorb
    RealizationWitness w2 = w;
    w2.a_images.push_back(0);
    w2.b_images.push_back(0);
    w2.h += 1;
    MultiplicityVector m2 = multiplicities(action_character(d, w2), ctx.table);

    std::vector<Int> r1 = canonical_coset_rep(m.coeffs, ctx.relations);
    std::vector<Int> r2 = canonical_coset_rep(m2.coeffs, ctx.relations);
    if (r1 != r2) throw std::logic_error("theta: image depends on the realization");

    // lands in the anti-self-conjugate part
    std::vector<Int> sum = m.coeffs;
    std::vector<Int> conj = apply_conj_perm(ctx.table, m.coeffs);
    for (size_t i = 0; i < sum.size(); ++i) sum[i] += conj[i];
    if (!member(sum, ctx.relations))
        throw std::logic_error("theta: image does not land in the anti-self-conjugate part");
    return r1;
}

std::vector<Int> conjugate_coset(const ThetaContext& ctx, const std::vector<Int>& v) {
    return canonical_coset_rep(apply_conj_perm(ctx.table, v), ctx.relations);
}

std::vector<Int> restrict_vector(const ThetaContext& parent, const SubgroupContext& sub,
                                 const ThetaContext& child, const std::vector<Int>& v) {
    ClassFunction f = class_function_from_multiplicities(parent.table, v);
    return multiplicities(restrict_cf(f, sub), child.table).coeffs;
}

std::vector<Int> induce_vector(const ThetaContext& child, const SubgroupContext& sub,
                               const ThetaContext& parent, const std::vector<Int>& v) {
    ClassFunction f = class_function_from_multiplicities(child.table, v);
    return multiplicities(induce(f, sub), parent.table).coeffs;
}

bool verify_res_square(const ThetaContext& parent, const SubgroupContext& sub,
                       const ThetaContext& child, const OrbitData& d) {
    std::vector<Int> via_data = theta(child, restrict_data(d, sub));
    std::vector<Int> via_rep =
        canonical_coset_rep(restrict_vector(parent, sub, child, theta(parent, d)), child.relations);
    return via_data == via_rep;
}

bool verify_ind_square(const ThetaContext& child, const SubgroupContext& sub,
                       const ThetaContext& parent, const OrbitData& d_over_sub) {
    std::vector<Int> via_data = theta(parent, pushforward(sub.inclusion, d_over_sub));
    std::vector<Int> via_rep = canonical_coset_rep(
        induce_vector(child, sub, parent, theta(child, d_over_sub)), parent.relations);
    return via_data == via_rep;
}

bool verify_conj(const ThetaContext& ctx, const OrbitData& d) {
    return theta(ctx, neg(d)) == conjugate_coset(ctx, theta(ctx, d));
}

std::vector<PairImage> cancelling_pair_images(const ThetaContext& ctx) {
    const ConjugacyClasses& cc = ctx.group->classes;
    std::vector<PairImage> out;
    for (int c = 0; c < cc.count(); ++c) {
        if (cc.reps[c] == 0) continue;
        std::vector<long> counts(cc.count(), 0);
        counts[c] += 1;
        counts[cc.inverse_class[c]] += 1;
        std::vector<Int> img = theta(ctx, data_from_class_counts(ctx.group, counts));
        bool zero = std::all_of(img.begin(), img.end(), [](const Int& x) { return x == 0; });
        out.push_back(PairImage{c, std::move(img), zero});
    }
    return out;
}

namespace {

struct IndexComputation {
    BGStructure bg;
    std::vector<std::vector<Int>> theta_rows;  // one per basis element
    bool injective_on_free = false;
    AbelianQuotient quot;  // A / theta(B)
};

IndexComputation compute_index(const ThetaContext& ctx) {
    IndexComputation out;
    out.bg = bg_structure(ctx.group);
    for (const OrbitData& b : out.bg.basis) out.theta_rows.push_back(theta(ctx, b));

    int r = out.bg.free_rank;
    if (r == 0) {
        out.injective_on_free = true;
    } else {
        IntMatrix free_images(r, ctx.table.count());
        for (int i = 0; i < r; ++i) free_images.set_row(i, out.theta_rows[i]);
        LatticeBasis ker = preimage(free_images, ctx.relations);
        out.injective_on_free = ker.rank() == 0;
    }

    IntMatrix theta_mat(static_cast<int>(out.theta_rows.size()), ctx.table.count());
    for (size_t i = 0; i < out.theta_rows.size(); ++i)
        theta_mat.set_row(static_cast<int>(i), out.theta_rows[i]);
    IntMatrix big = mat_stack(ctx.a_group.lifts, ctx.relations.basis);
    IntMatrix small = mat_stack(theta_mat, ctx.relations.basis);
    out.quot = quotient(big, small).group;
    return out;
}

SignatureReport base_report(const GroupPtr& g, const ThetaContext& ctx,
                            const IndexComputation& ic) {
    SignatureReport rep;
    rep.group_spec = g->spec;
    rep.variant = variant_name(ctx.variant);
    rep.bg_free_rank = ic.bg.free_rank;
    rep.bg_two_torsion = ic.bg.two_torsion;
    for (const OrbitData& b : ic.bg.basis) rep.bg_basis.push_back(data_to_text(b));
    for (const auto& row : ic.theta_rows) {
        std::vector<std::string> srow;
        for (const Int& x : row) srow.push_back(x.get_str());
        rep.theta_images.push_back(std::move(srow));
    }
    rep.a_structure = ctx.a_group.group.to_string();
    rep.injective_on_free = ic.injective_on_free;
    rep.index_finite = ic.quot.finite();
    rep.index = rep.index_finite ? ic.quot.order().get_str() : "infinite";
    return rep;
}

}  // namespace

SignatureReport index_report(const ThetaContext& ctx) {
    return base_report(ctx.group, ctx, compute_index(ctx));
}

SignatureReport index_report(const GroupPtr& g, const RelationSpec& v) {
    return index_report(make_theta_context(g, v));
}

SignatureReport cp_report(long p) {
    if (!is_prime(p) || p == 2) throw spec_error("cp report needs an odd prime");
    if (p > 31) throw cap_error("cp report capped at p <= 31");
    GroupPtr g = build_group("cyclic " + std::to_string(p));
    ThetaContext ctx = make_theta_context(g, {Variant::E, {}});
    IndexComputation ic = compute_index(ctx);
    SignatureReport rep = base_report(g, ctx, ic);

    OracleInfo oracle;
    oracle.p = p;
    oracle.h_maillet = h_minus_maillet(p).get_str();
    oracle.h_bernoulli = h_minus_bernoulli(p).get_str();
    oracle.match = ic.quot.finite() && oracle.h_maillet == oracle.h_bernoulli &&
                   ic.quot.order().get_str() == oracle.h_maillet;
    rep.oracle = oracle;
    return rep;
}

SignatureReport cpcp_report(long p) {
    if (p != 3 && p != 5) throw cap_error("cpcp report supports p = 3 and p = 5");
    GroupPtr g = build_group("abelian " + std::to_string(p) + " " + std::to_string(p));
    ThetaContext ctx = make_theta_context(g, {Variant::E, {}});
    IndexComputation ic = compute_index(ctx);
    SignatureReport rep = base_report(g, ctx, ic);
    auto& aux = rep.auxiliary;

    // the p+1 cyclic subgroups of order p, each with its own context
    std::vector<SubgroupContext> subs;
    for (const SubgroupClass& cls : subgroups(*g, SubgroupMode::Cyclic))
        if (cls.rep.order() == p) subs.push_back(materialize(g, cls.rep));
    std::vector<ThetaContext> sub_ctx;
    std::vector<BGStructure> sub_bg;
    for (const SubgroupContext& s : subs) {
        sub_ctx.push_back(make_theta_context(s.sub, {Variant::E, {}}));
        sub_bg.push_back(bg_structure(s.sub));
    }
    aux.emplace_back("order_p_subgroups", std::to_string(subs.size()));

    // [B_G : sum of the pushed-forward B_{G_j}]
    {
        std::vector<std::vector<Int>> rows;
        for (size_t j = 0; j < subs.size(); ++j)
            for (const OrbitData& b : sub_bg[j].basis)
                rows.push_back(coordinates(pushforward(subs[j].inclusion, b), ic.bg).free_part);
        QuotientResult q = quotient(IntMatrix::identity(ic.bg.free_rank), IntMatrix::from_rows(rows));
        aux.emplace_back("index_bsum_in_b",
                         q.group.finite() ? q.group.order().get_str() : "infinite");
    }

    // composite maps on orbit data: push then restrict is multiplication by p
    {
        bool ok = true;
        for (size_t j = 0; j < subs.size() && ok; ++j)
            for (const OrbitData& b : sub_bg[j].basis) {
                for (size_t l = 0; l < subs.size() && ok; ++l) {
                    OrbitData lhs = restrict_data(pushforward(subs[j].inclusion, b), subs[l]);
                    OrbitData rhs = l == j ? scaled(p, b) : empty_data(subs[l].sub);
                    ok = same_bg_class(lhs, rhs);
                }
            }
        for (const OrbitData& b : ic.bg.basis) {
            if (!ok) break;
            OrbitData acc = empty_data(g);
            for (const SubgroupContext& s : subs)
                acc = add(acc, pushforward(s.inclusion, restrict_data(b, s)));
            ok = same_bg_class(acc, scaled(p, b));
        }
        aux.emplace_back("composite_on_data_is_times_p", ok ? "true" : "false");
    }

    // composite maps on A: res.ind and ind.res are multiplication by p
    {
        bool ok = true;
        for (size_t j = 0; j < subs.size() && ok; ++j)
            for (int row = 0; row < sub_ctx[j].a_group.lifts.rows && ok; ++row) {
                std::vector<Int> vj = sub_ctx[j].a_group.lifts.row(row);
                std::vector<Int> w = induce_vector(sub_ctx[j], subs[j], ctx, vj);
                for (size_t l = 0; l < subs.size() && ok; ++l) {
                    std::vector<Int> u = restrict_vector(ctx, subs[l], sub_ctx[l], w);
                    std::vector<Int> expect =
                        l == j ? vec_scale(p, vj) : std::vector<Int>(vj.size(), Int(0));
                    ok = member(vec_sub(u, expect), sub_ctx[l].relations);
                }
            }
        for (int row = 0; row < ctx.a_group.lifts.rows && ok; ++row) {
            std::vector<Int> v = ctx.a_group.lifts.row(row);
            std::vector<Int> acc(v.size(), Int(0));
            for (size_t j = 0; j < subs.size(); ++j) {
                std::vector<Int> u =
                    induce_vector(sub_ctx[j], subs[j], ctx, restrict_vector(ctx, subs[j], sub_ctx[j], v));
                for (size_t i = 0; i < acc.size(); ++i) acc[i] += u[i];
            }
            ok = member(vec_sub(acc, vec_scale(p, v)), ctx.relations);
        }
        aux.emplace_back("composite_on_a_is_times_p", ok ? "true" : "false");
    }

    ClassNumberResult h = h_minus(p);
    Int h_target;  // (h_p^-)^{p+1}
    mpz_pow_ui(h_target.get_mpz_t(), h.h_minus.get_mpz_t(), static_cast<unsigned long>(p + 1));

    // [A_G : sum of the induced A_{G_j}]
    Int asum_order = -1;
    {
        std::vector<std::vector<Int>> rows;
        for (size_t j = 0; j < subs.size(); ++j)
            for (int row = 0; row < sub_ctx[j].a_group.lifts.rows; ++row)
                rows.push_back(induce_vector(sub_ctx[j], subs[j], ctx,
                                             sub_ctx[j].a_group.lifts.row(row)));
        IntMatrix small = mat_stack(IntMatrix::from_rows(rows), ctx.relations.basis);
        IntMatrix big = mat_stack(ctx.a_group.lifts, ctx.relations.basis);
        QuotientResult q = quotient(big, small);
        aux.emplace_back("index_asum_in_a",
                         q.group.finite() ? q.group.order().get_str() : "infinite");
        if (q.group.finite()) {
            asum_order = q.group.order();
            Int o = asum_order;
            int i_exp = 0;
            while (o % p == 0) {
                o /= p;
                ++i_exp;
            }
            aux.emplace_back("index_asum_is_p_power", o == 1 ? "true" : "false");
            aux.emplace_back("index_asum_exponent", std::to_string(i_exp));
        }
    }

    // third route: [A_G : image of the summed orbit-data groups], computed
    // directly; both factorizations, through theta(B_G) and through the
    // summed anti-self-conjugate parts, must reproduce it
    {
        std::vector<std::vector<Int>> rows;
        for (size_t j = 0; j < subs.size(); ++j)
            for (const OrbitData& b : sub_bg[j].basis)
                rows.push_back(induce_vector(sub_ctx[j], subs[j], ctx, theta(sub_ctx[j], b)));
        IntMatrix small = mat_stack(IntMatrix::from_rows(rows), ctx.relations.basis);
        IntMatrix big = mat_stack(ctx.a_group.lifts, ctx.relations.basis);
        QuotientResult q = quotient(big, small);
        aux.emplace_back("index_bsum_in_a",
                         q.group.finite() ? q.group.order().get_str() : "infinite");
        bool consistent = false;
        if (q.group.finite() && ic.quot.finite() && asum_order > 0) {
            Int pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p),
                          static_cast<unsigned long>(p - 1));
            consistent = q.group.order() == ic.quot.order() * pw &&
                         q.group.order() == asum_order * h_target;
        }
        aux.emplace_back("index_chain_consistent", consistent ? "true" : "false");
    }

    // k with A_G = Z^{(p^2-1)/2} + (Z/p)^k
    {
        int k = 0;
        bool all_p = true;
        for (const Int& f : ctx.a_group.group.factors) {
            if (f == 0) continue;
            ++k;
            all_p &= f == p;
        }
        aux.emplace_back("a_torsion_rank_k", std::to_string(k));
        aux.emplace_back("a_torsion_all_p", all_p ? "true" : "false");
    }

    // conjecture: delta against (h_p^-)^{p+1}
    aux.emplace_back("h_minus", h.h_minus.get_str());
    aux.emplace_back("conjecture_target", h_target.get_str());
    aux.emplace_back("conjecture_match",
                     ic.quot.finite() && ic.quot.order() == h_target ? "true" : "false");

    // restriction/induction membership transfer on the basis elements
    {
        IntMatrix img_g = mat_stack(
            [&] {
                IntMatrix t(static_cast<int>(ic.theta_rows.size()), ctx.table.count());
                for (size_t i = 0; i < ic.theta_rows.size(); ++i)
                    t.set_row(static_cast<int>(i), ic.theta_rows[i]);
                return t;
            }(),
            ctx.relations.basis);
        LatticeBasis image_g = lattice_from_rows(img_g);
        std::vector<LatticeBasis> image_j;
        for (size_t j = 0; j < subs.size(); ++j) {
            std::vector<std::vector<Int>> rows;
            for (const OrbitData& b : sub_bg[j].basis) rows.push_back(theta(sub_ctx[j], b));
            for (int i = 0; i < sub_ctx[j].relations.basis.rows; ++i)
                rows.push_back(sub_ctx[j].relations.basis.row(i));
            image_j.push_back(lattice_from_rows(IntMatrix::from_rows(rows)));
        }

        bool ok_1a = true;
        for (int row = 0; row < ctx.a_group.lifts.rows; ++row) {
            std::vector<Int> v = ctx.a_group.lifts.row(row);
            bool hyp = true;
            for (size_t j = 0; j < subs.size() && hyp; ++j)
                hyp = member(restrict_vector(ctx, subs[j], sub_ctx[j], v), image_j[j]);
            if (hyp && !member(v, image_g)) ok_1a = false;
        }
        bool ok_1b = true;
        for (size_t j = 0; j < subs.size(); ++j)
            for (int row = 0; row < sub_ctx[j].a_group.lifts.rows; ++row) {
                std::vector<Int> vj = sub_ctx[j].a_group.lifts.row(row);
                bool hyp = member(induce_vector(sub_ctx[j], subs[j], ctx, vj), image_g);
                if (hyp && !member(vj, image_j[j])) ok_1b = false;
            }
        aux.emplace_back("restriction_membership_transfer", ok_1a ? "true" : "false");
        aux.emplace_back("induction_membership_transfer", ok_1b ? "true" : "false");
    }

    return rep;
}

std::string report_to_json(const SignatureReport& r) {
    nlohmann::ordered_json j;
    j["group"] = r.group_spec;
    j["variant"] = r.variant;
    j["bg"] = {{"free_rank", r.bg_free_rank},
               {"two_torsion", r.bg_two_torsion},
               {"basis", r.bg_basis}};
    j["theta_images"] = r.theta_images;
    j["a_group"] = r.a_structure;
    j["injective_on_free"] = r.injective_on_free;
    j["index"] = r.index;
    if (r.oracle) {
        j["oracle"] = {{"p", r.oracle->p},
                       {"h_minus_maillet", r.oracle->h_maillet},
                       {"h_minus_bernoulli", r.oracle->h_bernoulli},
                       {"match", r.oracle->match}};
    }
    if (!r.auxiliary.empty()) {
        nlohmann::ordered_json aux;
        for (const auto& [k, v] : r.auxiliary) aux[k] = v;
        j["auxiliary"] = aux;
    }
    return j.dump(2);
}

std::string report_to_text(const SignatureReport& r) {
    std::ostringstream os;
    os << "group:             " << r.group_spec << "\n";
    os << "variant:           " << r.variant << "\n";
    os << "bg:                Z^" << r.bg_free_rank << " x (Z/2)^" << r.bg_two_torsion << "\n";
    for (const std::string& b : r.bg_basis) os << "  basis            " << b << "\n";
    os << "theta images:\n";
    for (const auto& row : r.theta_images) {
        os << "  (";
        for (size_t i = 0; i < row.size(); ++i) os << (i ? ", " : "") << row[i];
        os << ")\n";
    }
    os << "a_group:           " << r.a_structure << "\n";
    os << "injective_on_free: " << (r.injective_on_free ? "true" : "false") << "\n";
    os << "index:             " << r.index << "\n";
    if (r.oracle) {
        os << "oracle:            p=" << r.oracle->p << " h_minus=" << r.oracle->h_maillet << "/"
           << r.oracle->h_bernoulli << " match=" << (r.oracle->match ? "true" : "false") << "\n";
    }
    for (const auto& [k, v] : r.auxiliary) os << k << ": " << v << "\n";
    return os.str();
}

}  // namespace gsig
