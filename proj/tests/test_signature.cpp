#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gsig/signature.hpp"

using namespace gsig;

namespace {

constexpr const char* kSym3 = "perm 3; (1 2 3); (1 2)";

OrbitData sample_data(const GroupPtr& g, std::mt19937& rng, int k) {
    std::uniform_int_distribution<int> pick(0, g->order - 1);
    std::vector<std::pair<int, long>> entries;
    int prod = 0;
    for (int i = 0; i < k; ++i) {
        int x = pick(rng);
        prod = g->mul(prod, x);
        entries.emplace_back(x, 1);
    }
    entries.emplace_back(g->inv[prod], 1);
    return make_data(g, entries);
}

}  // namespace

TEST_CASE("relation lattices: cyclic groups have one variant") {
    for (long n : {6L, 9L, 12L}) {
        GroupPtr g = build_group("cyclic " + std::to_string(n));
        CharacterTable t = char_table(g);
        LatticeBasis d = relation_lattice(g, t, {Variant::D, {}});
        LatticeBasis e = relation_lattice(g, t, {Variant::E, {}});
        CHECK(d.basis == e.basis);
    }
}

TEST_CASE("relation lattices for the order-6 group") {
    GroupPtr g = build_group(kSym3);
    CharacterTable t = char_table(g);
    // all subgroups: the span has full rank and theta must vanish
    LatticeBasis d = relation_lattice(g, t, {Variant::D, {}});
    CHECK(d.rank() == 3);
    CHECK(d.basis == IntMatrix::identity(3));
    // the chosen smaller list leaves the two-dimensional character alive
    LatticeBasis dp = relation_lattice(g, t, {Variant::Dprime, default_dprime_list(g)});
    CHECK(dp.rank() == 3);
    std::vector<Int> chi2 = {0, 0, 1};
    CHECK_FALSE(member(chi2, dp));
    std::vector<Int> twice = {0, 0, 2};
    CHECK(member(twice, dp));

    RelationSpec missing{Variant::Dprime, {trivial_subgroup()}};
    CHECK_THROWS_AS(relation_lattice(g, t, missing), data_error);
}

TEST_CASE("theta golden values") {
    GroupPtr c3 = build_group("cyclic 3");
    ThetaContext ctx = make_theta_context(c3, {Variant::E, {}});
    CHECK(theta(ctx, empty_data(c3)) == std::vector<Int>{0, 0, 0});
    std::vector<Int> img = theta(ctx, make_data(c3, {{1, 3}}));
    CHECK(img != std::vector<Int>{0, 0, 0});
    // the faithful character class: (0,1,0) reduced against the relations
    CHECK(img == canonical_coset_rep({0, 1, 0}, ctx.relations));

    GroupPtr c4 = build_group("cyclic 4");
    ThetaContext ctx4 = make_theta_context(c4, {Variant::E, {}});
    CHECK(theta(ctx4, empty_data(c4)) == std::vector<Int>(4, Int(0)));
}

TEST_CASE("theta vanishes identically on the order-6 group with all relations") {
    GroupPtr g = build_group(kSym3);
    ThetaContext ctx = make_theta_context(g, {Variant::E, {}});
    std::mt19937 rng(15);
    for (int t = 0; t < 10; ++t) {
        std::vector<Int> img = theta(ctx, sample_data(g, rng, 3));
        CHECK(img == std::vector<Int>{0, 0, 0});
    }
}

TEST_CASE("theta with the Dprime variant detects the order-two generator") {
    GroupPtr g = build_group(kSym3);
    ThetaContext ctx = make_theta_context(g, {Variant::Dprime, {}});
    OrbitData d = make_data(g, {{g->element_by_name("a"), 1}});
    CHECK(theta(ctx, d) == std::vector<Int>{0, 0, 1});
    // twice the generator dies
    CHECK(theta(ctx, concat(d, d)) == std::vector<Int>{0, 0, 0});
}

TEST_CASE("theta is additive as cosets") {
    std::mt19937 rng(77);
    for (const char* spec : {"cyclic 9", "abelian 3 3"}) {
        GroupPtr g = build_group(spec);
        ThetaContext ctx = make_theta_context(g, {Variant::E, {}});
        for (int t = 0; t < 20; ++t) {
            OrbitData d1 = sample_data(g, rng, 3);
            OrbitData d2 = sample_data(g, rng, 3);
            std::vector<Int> sum = theta(ctx, d1);
            std::vector<Int> t2 = theta(ctx, d2);
            for (size_t i = 0; i < sum.size(); ++i) sum[i] += t2[i];
            CHECK(theta(ctx, add(d1, d2)) == canonical_coset_rep(sum, ctx.relations));
        }
    }
}

TEST_CASE("anti-self-conjugate part of cyclic groups has the expected rank") {
    for (long n : {3L, 5L, 7L, 9L}) {
        GroupPtr g = build_group("cyclic " + std::to_string(n));
        ThetaContext ctx = make_theta_context(g, {Variant::E, {}});
        CHECK(ctx.a_group.group.free_rank() == (n - 1) / 2);
        CHECK(ctx.a_group.group.finite() == ((n - 1) / 2 == 0));
    }
    for (long n : {4L, 6L, 8L, 12L}) {
        GroupPtr g = build_group("cyclic " + std::to_string(n));
        ThetaContext ctx = make_theta_context(g, {Variant::E, {}});
        CHECK(ctx.a_group.group.free_rank() == n / 2 - 1);
    }
}

TEST_CASE("anti-self-conjugate part of the 3x3 group carries p-torsion") {
    GroupPtr g = build_group("abelian 3 3");
    ThetaContext ctx = make_theta_context(g, {Variant::E, {}});
    CHECK(ctx.a_group.group.free_rank() == 4);
    for (const Int& f : ctx.a_group.group.factors)
        if (f != 0) CHECK(f == 3);
}

TEST_CASE("index reports for small cyclic groups") {
    SignatureReport r5 = index_report(build_group("cyclic 5"), {Variant::E, {}});
    CHECK(r5.bg_free_rank == 2);
    CHECK(r5.injective_on_free);
    CHECK(r5.index == "1");

    SignatureReport r2 = index_report(build_group("cyclic 2"), {Variant::E, {}});
    CHECK(r2.bg_free_rank == 0);
    CHECK(r2.bg_two_torsion == 0);
    CHECK(r2.index_finite);

    SignatureReport rp = cp_report(7);
    REQUIRE(rp.oracle.has_value());
    CHECK(rp.oracle->match);
    CHECK(rp.index == "1");
    CHECK_THROWS_AS(cp_report(4), spec_error);
    CHECK_THROWS_AS(cp_report(37), cap_error);
}

TEST_CASE("restriction square for a cyclic tower") {
    GroupPtr g = build_group("cyclic 9");
    ThetaContext cg = make_theta_context(g, {Variant::E, {}});
    SubgroupContext sub = materialize(g, cyclic_subgroup(*g, 3));
    ThetaContext ck = make_theta_context(sub.sub, {Variant::E, {}});
    std::mt19937 rng(1);
    for (int t = 0; t < 10; ++t) CHECK(verify_res_square(cg, sub, ck, sample_data(g, rng, 3)));
}

TEST_CASE("induction square into the order-6 group with the Dprime target") {
    GroupPtr g = build_group(kSym3);
    ThetaContext cg = make_theta_context(g, {Variant::Dprime, {}});
    SubgroupContext sub = materialize(g, cyclic_subgroup(*g, g->element_by_name("a")));
    ThetaContext ch = make_theta_context(sub.sub, {Variant::E, {}});
    OrbitData yyy = make_data(sub.sub, {{1, 3}});
    CHECK(verify_ind_square(ch, sub, cg, yyy));
    // and the image is the two-dimensional character class
    CHECK(theta(cg, pushforward(sub.inclusion, yyy)) == std::vector<Int>{0, 0, 1});
}

TEST_CASE("conjugation identities") {
    std::mt19937 rng(9);
    for (const char* spec : {"cyclic 12", "abelian 3 3"}) {
        GroupPtr g = build_group(spec);
        ThetaContext ctx = make_theta_context(g, {Variant::E, {}});
        for (int t = 0; t < 10; ++t) CHECK(verify_conj(ctx, sample_data(g, rng, 3)));
    }
    // order-two images are self-conjugate
    GroupPtr v4 = build_group("abelian 2 2");
    ThetaContext ctx4 = make_theta_context(v4, {Variant::E, {}});
    for (const OrbitData& b : bg_structure(v4).basis) {
        std::vector<Int> img = theta(ctx4, b);
        CHECK(img == conjugate_coset(ctx4, img));
    }
}

TEST_CASE("cancelling-pair images document the Dprime defect") {
    GroupPtr g = build_group(kSym3);
    ThetaContext dp = make_theta_context(g, {Variant::Dprime, {}});
    int nonzero = 0;
    for (const PairImage& pi : cancelling_pair_images(dp)) {
        if (pi.zero) continue;
        ++nonzero;
        CHECK(g->elt_order[g->classes.reps[pi.class_index]] == 2);
        CHECK(pi.image == std::vector<Int>{0, 0, 1});
    }
    CHECK(nonzero == 1);
    // with all relations present every pair dies
    ThetaContext e = make_theta_context(g, {Variant::E, {}});
    for (const PairImage& pi : cancelling_pair_images(e)) CHECK(pi.zero);
}

namespace {

// the standard order-8 dihedral table, fed through the user-table path
ThetaContext dihedral8_context() {
    GroupPtr g = build_group("perm 4; (1 2 3 4); (1 3)");
    const ConjugacyClasses& cc = g->classes;
    // classes: identity, the central rotation, the order-4 rotations, and the
    // two reflection classes; key the table to that layout
    int c1 = cc.class_of[0], cr2 = -1, cr = -1;
    std::vector<int> refl;
    for (int c = 0; c < 5; ++c) {
        int o = g->elt_order[cc.reps[c]];
        if (o == 4) cr = c;
        if (o == 2 && cc.sizes[c] == 1) cr2 = c;
        if (o == 2 && cc.sizes[c] == 2) refl.push_back(c);
    }
    auto value = [](long v) {
        return std::string("{\"order\":1,\"coeffs\":[\"") + std::to_string(v) + "\"]}";
    };
    std::vector<std::vector<long>> rows = {
        {1, 1, 1, 1, 1}, {1, 1, 1, -1, -1}, {1, 1, -1, 1, -1}, {1, 1, -1, -1, 1}, {2, -2, 0, 0, 0}};
    std::string json = "{\"order\":4,\"classes\":[";
    for (int c = 0; c < 5; ++c) json += (c ? "," : "") + std::to_string(cc.reps[c]);
    json += "],\"irreducibles\":[";
    for (size_t i = 0; i < rows.size(); ++i) {
        std::vector<std::string> vals(5);
        vals[c1] = value(rows[i][0]);
        vals[cr2] = value(rows[i][1]);
        vals[cr] = value(rows[i][2]);
        vals[refl[0]] = value(rows[i][3]);
        vals[refl[1]] = value(rows[i][4]);
        json += i ? "," : "";
        json += "[" + vals[0] + "," + vals[1] + "," + vals[2] + "," + vals[3] + "," + vals[4] + "]";
    }
    json += "]}";
    return make_theta_context(g, {Variant::E, {}}, char_table_from_json(g, json));
}

}  // namespace

TEST_CASE("user tables drive theta on the dihedral group of order 8") {
    ThetaContext ctx = dihedral8_context();
    GroupPtr g = ctx.group;
    CHECK(ctx.table.conj_perm == std::vector<int>{0, 1, 2, 3, 4});  // everything real
    SignatureReport rep = index_report(ctx);
    CHECK(rep.bg_free_rank == 0);
    CHECK(rep.bg_two_torsion == 2);
    CHECK(rep.injective_on_free);  // vacuous, no free part
    CHECK(rep.index_finite);

    std::mt19937 rng(61);
    for (int i = 0; i < 10; ++i) {
        OrbitData d = sample_data(g, rng, 3);
        CHECK(verify_conj(ctx, d));
        OrbitData d2 = sample_data(g, rng, 3);
        std::vector<Int> sum = theta(ctx, d);
        std::vector<Int> t2 = theta(ctx, d2);
        for (size_t k = 0; k < sum.size(); ++k) sum[k] += t2[k];
        CHECK(theta(ctx, add(d, d2)) == canonical_coset_rep(sum, ctx.relations));
    }
}

TEST_CASE("commuting squares across the rotation subgroup of the dihedral group") {
    ThetaContext cg = dihedral8_context();
    GroupPtr g = cg.group;
    SubgroupContext sub = materialize(g, cyclic_subgroup(*g, g->element_by_name("a")));
    REQUIRE(sub.sub->order == 4);
    ThetaContext ck = make_theta_context(sub.sub, {Variant::E, {}});
    std::mt19937 rng(62);
    for (int i = 0; i < 8; ++i) {
        CHECK(verify_res_square(cg, sub, ck, sample_data(g, rng, 3)));
        CHECK(verify_ind_square(ck, sub, cg, sample_data(sub.sub, rng, 3)));
    }
}

TEST_CASE("report serialization round-trips through fixed field order") {
    SignatureReport rep = cp_report(5);
    std::string j = report_to_json(rep);
    CHECK(j.find("\"group\"") < j.find("\"variant\""));
    CHECK(j.find("\"variant\"") < j.find("\"index\""));
    CHECK(j.find("\"oracle\"") != std::string::npos);
    std::string t = report_to_text(rep);
    CHECK(t.find("index:") != std::string::npos);

    SignatureReport rep2 = cp_report(5);
    CHECK(report_to_json(rep2) == j);  // byte-stable
}

TEST_CASE("the 3x3 report carries the expected auxiliary indices") {
    SignatureReport rep = cpcp_report(3);
    CHECK(rep.index == "1");
    bool saw_bsum = false, saw_comp = false;
    for (const auto& [k, v] : rep.auxiliary) {
        if (k == "index_bsum_in_b") {
            saw_bsum = true;
            CHECK(v == "9");
        }
        if (k == "composite_on_a_is_times_p") {
            saw_comp = true;
            CHECK(v == "true");
        }
    }
    CHECK(saw_bsum);
    CHECK(saw_comp);
    CHECK_THROWS_AS(cpcp_report(7), cap_error);
}
