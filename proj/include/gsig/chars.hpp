#pragma once

#include "gsig/cyclotomic.hpp"
#include "gsig/orbit.hpp"

namespace gsig {

struct ClassFunction {
    GroupPtr group;
    std::vector<Cyclotomic> values;  // one value per conjugacy class
};

// Irreducible complex characters; verified against row orthogonality on
// construction. conj_perm pairs each character with its complex conjugate.
struct CharacterTable {
    GroupPtr group;
    std::vector<ClassFunction> irreducibles;
    std::vector<int> conj_perm;

    // when every value is a root of unity (dual-group tables), the exponent
    // matrix value(i, c) = zeta_{root_order}^{root_exponents[i][c]} enables
    // inner products by exponent counting instead of polynomial products
    long root_order = 0;
    std::vector<std::vector<long>> root_exponents;

    int count() const { return static_cast<int>(irreducibles.size()); }
    bool has_root_form() const { return !root_exponents.empty(); }
};

// Computed as the dual group for abelian groups; the symmetric group on three
// letters ships built in. Other nonabelian groups need a user table.
CharacterTable char_table(const GroupPtr& g);

// JSON: {"order": N, "classes": [rep ids], "irreducibles": [[{order, coeffs}...]]}
CharacterTable char_table_from_json(const GroupPtr& g, const std::string& json_text);

struct MultiplicityVector {
    std::vector<Int> coeffs;  // aligned with the table's irreducibles

    bool operator==(const MultiplicityVector&) const = default;
};

// Multiplicities of the unitarized homology representation of a cyclic-group
// action from its branch exponents and quotient genus; index j corresponds to
// the character sending the distinguished generator to zeta_n^j. h may be any
// integer (virtual characters are allowed).
std::vector<Int> cyclic_multiplicities(long n, const std::vector<long>& exps, long h);

// Character of the action on first homology for a realized datum: value g at
// the identity, and on y != 1 the value determined by restricting to <y>.
ClassFunction action_character(const OrbitData& d, const RealizationWitness& w);

MultiplicityVector multiplicities(const ClassFunction& f, const CharacterTable& t);
ClassFunction class_function_from_multiplicities(const CharacterTable& t,
                                                 const std::vector<Int>& coeffs);

ClassFunction regular_character(const GroupPtr& g);
ClassFunction perm_class_function(const GroupPtr& g, const Subgroup& h);
MultiplicityVector perm_character(const GroupPtr& g, const Subgroup& h, const CharacterTable& t);

ClassFunction induce(const ClassFunction& f, const SubgroupContext& h);       // h.sub up to parent
ClassFunction restrict_cf(const ClassFunction& f, const SubgroupContext& h);  // parent down to h.sub

Cyclotomic inner_product(const ClassFunction& a, const ClassFunction& b);

// The span of the permutation characters of C_n equals the lattice of
// Galois-stable multiplicity vectors.
bool rational_lattice_check(long n);

}  // namespace gsig
