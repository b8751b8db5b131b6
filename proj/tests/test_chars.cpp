#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gsig/chars.hpp"

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

TEST_CASE("cyclic tables are the dual group with the generator convention") {
    GroupPtr c3 = build_group("cyclic 3");
    CharacterTable t = char_table(c3);
    REQUIRE(t.count() == 3);
    for (long j = 0; j < 3; ++j)
        for (long k = 0; k < 3; ++k)
            CHECK(t.irreducibles[j].values[k] == Cyclotomic::root_of_unity(3, j * k));
    CHECK(t.conj_perm == std::vector<int>{0, 2, 1});
}

TEST_CASE("exponent-two groups have real tables") {
    GroupPtr v4 = build_group("abelian 2 2");
    CharacterTable t = char_table(v4);
    REQUIRE(t.count() == 4);
    for (const ClassFunction& f : t.irreducibles)
        for (const Cyclotomic& v : f.values) CHECK(v.is_rational());
    CHECK(t.conj_perm == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("the order-6 nonabelian table") {
    GroupPtr s3 = build_group(kSym3);
    CharacterTable t = char_table(s3);
    REQUIRE(t.count() == 3);
    std::multiset<long> degrees;
    for (const ClassFunction& f : t.irreducibles)
        degrees.insert(f.values[s3->classes.class_of[0]].integer_value().get_si());
    CHECK(degrees == std::multiset<long>{1, 1, 2});
}

TEST_CASE("nonabelian groups beyond order 6 need a user table") {
    CHECK_THROWS_AS(char_table(build_group("perm 4; (1 2 3 4); (1 3)")), table_error);
}

TEST_CASE("user table files are validated by orthogonality") {
    GroupPtr c2 = build_group("cyclic 2");
    std::string good = R"({"order": 2, "classes": [0, 1], "irreducibles":
        [[{"order":1,"coeffs":["1"]},{"order":1,"coeffs":["1"]}],
         [{"order":1,"coeffs":["1"]},{"order":1,"coeffs":["-1"]}]]})";
    CHECK_NOTHROW(char_table_from_json(c2, good));
    std::string bad = R"({"order": 2, "classes": [0, 1], "irreducibles":
        [[{"order":1,"coeffs":["1"]},{"order":1,"coeffs":["1"]}],
         [{"order":1,"coeffs":["1"]},{"order":1,"coeffs":["1"]}]]})";
    CHECK_THROWS_AS(char_table_from_json(c2, bad), data_error);
}

TEST_CASE("multiplicity formula golden values") {
    // no branching: trivial plus (h-1) regular
    for (long n : {4L, 9L}) {
        std::vector<Int> m = cyclic_multiplicities(n, {}, 3);
        CHECK(m[0] == 3);
        for (long j = 1; j < n; ++j) CHECK(m[j] == 2);
    }
    // frozen hand evaluation
    CHECK(cyclic_multiplicities(5, {1, 1, 3}, 0) == std::vector<Int>{0, 1, 1, 0, 0});
    // exponents divisible by n are rejected
    CHECK_THROWS_AS(cyclic_multiplicities(6, {6}, 1), data_error);
    // non-relations have no consistent multiplicities
    CHECK_THROWS_AS(cyclic_multiplicities(3, {1}, 1), data_error);
}

TEST_CASE("action character of a free involution-pair action") {
    GroupPtr c2 = build_group("cyclic 2");
    OrbitData d = empty_data(c2);
    RealizationWitness w;
    w.h = 2;
    w.a_images = {1, 1};
    w.b_images = {0, 0};
    CHECK(verify_witness(d, w));
    CHECK(genus(d, 2) == 3);
    ClassFunction f = action_character(d, w);
    CHECK(f.values[c2->classes.class_of[0]] == Cyclotomic(Rat(3)));
    // trivial + regular: value 1 at the involution (the fixed-point identity
    // forces it: no fixed points, so twice the value is 2)
    CHECK(f.values[c2->classes.class_of[1]] == Cyclotomic(Rat(1)));
    MultiplicityVector mv = multiplicities(f, char_table(c2));
    CHECK(mv.coeffs == std::vector<Int>{2, 1});  // 2*trivial + sign
}

TEST_CASE("action character dimension equals the genus") {
    std::mt19937 rng(14);
    for (const char* spec : {"cyclic 6", "cyclic 9", kSym3, "abelian 3 3"}) {
        GroupPtr g = build_group(spec);
        CharacterTable t = char_table(g);
        for (int tcase = 0; tcase < 5; ++tcase) {
            OrbitData d = sample_data(g, rng, 3);
            RealizationWitness w = realize(d);
            ClassFunction f = action_character(d, w);
            CHECK(f.values[g->classes.class_of[0]] ==
                  Cyclotomic(Rat(static_cast<long>(genus(d, w.h)))));
            // decomposition has nonnegative pieces summing to the genus
            MultiplicityVector mv = multiplicities(f, t);
            Int dim = 0;
            for (int i = 0; i < t.count(); ++i)
                dim += mv.coeffs[i] * t.irreducibles[i].values[g->classes.class_of[0]].integer_value();
            CHECK(dim == genus(d, w.h));
            for (const Int& c : mv.coeffs) CHECK(c >= 0);
        }
    }
}

TEST_CASE("regular character decomposes as degrees") {
    GroupPtr s3 = build_group(kSym3);
    CharacterTable t = char_table(s3);
    MultiplicityVector mv = multiplicities(regular_character(s3), t);
    CHECK(mv.coeffs == std::vector<Int>{1, 1, 2});
    GroupPtr c4 = build_group("cyclic 4");
    MultiplicityVector mv4 = multiplicities(regular_character(c4), char_table(c4));
    CHECK(mv4.coeffs == std::vector<Int>{1, 1, 1, 1});
}

TEST_CASE("non-virtual class functions are rejected") {
    GroupPtr c2 = build_group("cyclic 2");
    ClassFunction f;
    f.group = c2;
    f.values = {Cyclotomic(Rat(1)), Cyclotomic(Rat(0))};  // <f, chi> = 1/2
    CHECK_THROWS_AS(multiplicities(f, char_table(c2)), data_error);
}

TEST_CASE("permutation characters") {
    GroupPtr s3 = build_group(kSym3);
    CharacterTable t = char_table(s3);
    CHECK(perm_character(s3, whole_group(*s3), t).coeffs == std::vector<Int>{1, 0, 0});
    CHECK(perm_character(s3, trivial_subgroup(), t).coeffs == std::vector<Int>{1, 1, 2});
    Subgroup a3 = cyclic_subgroup(*s3, s3->element_by_name("a"));
    CHECK(perm_character(s3, a3, t).coeffs == std::vector<Int>{1, 1, 0});
    Subgroup c2 = cyclic_subgroup(*s3, s3->element_by_name("b"));
    CHECK(perm_character(s3, c2, t).coeffs == std::vector<Int>{1, 0, 1});
}

TEST_CASE("induction of the trivial character matches the permutation character") {
    GroupPtr g = build_group("cyclic 12");
    CharacterTable t = char_table(g);
    for (int id : {2, 3, 4, 6}) {
        SubgroupContext sub = materialize(g, cyclic_subgroup(*g, id));
        CharacterTable ts = char_table(sub.sub);
        ClassFunction triv = class_function_from_multiplicities(
            ts, [&] {
                std::vector<Int> e(ts.count(), Int(0));
                e[0] = 1;
                return e;
            }());
        MultiplicityVector via_induce = multiplicities(induce(triv, sub), t);
        CHECK(via_induce == perm_character(g, Subgroup{sub.to_parent}, t));
    }
}

TEST_CASE("Frobenius reciprocity on sampled pairs") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> coeff(-2, 2);
    for (const char* spec : {"cyclic 12", kSym3, "abelian 3 3"}) {
        GroupPtr g = build_group(spec);
        CharacterTable tg = char_table(g);
        for (const SubgroupClass& cls : subgroups(*g, SubgroupMode::All)) {
            SubgroupContext sub = materialize(g, cls.rep);
            CharacterTable th = char_table(sub.sub);
            for (int t = 0; t < 4; ++t) {
                std::vector<Int> cf(th.count());
                for (Int& c : cf) c = coeff(rng);
                ClassFunction f = class_function_from_multiplicities(th, cf);
                for (int i = 0; i < tg.count(); ++i) {
                    Cyclotomic lhs = inner_product(induce(f, sub), tg.irreducibles[i]);
                    Cyclotomic rhs = inner_product(f, restrict_cf(tg.irreducibles[i], sub));
                    CHECK(lhs == rhs);
                }
            }
        }
    }
}

TEST_CASE("permutation characters span the stable lattice") {
    CHECK(rational_lattice_check(1));
    CHECK(rational_lattice_check(12));
    CHECK(rational_lattice_check(30));
}
