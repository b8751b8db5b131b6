#pragma once

#include "gsig/chars.hpp"

namespace gsig {

// Relation sublattice of the representation ring used as the target quotient:
//   D      - characters induced from cyclic subgroups and from G itself
//   E      - characters induced from all subgroups
//   Dprime - characters induced from an explicit subgroup list, which must
//            contain the trivial subgroup and G
enum class Variant { D, E, Dprime };

struct RelationSpec {
    Variant kind = Variant::E;
    std::vector<Subgroup> dprime_list;
};

std::string variant_name(const RelationSpec& v);
RelationSpec parse_variant(const std::string& name);  // "d" | "e" | "dprime"

// Default subgroup list for the Dprime variant: trivial, G, and the cyclic
// subgroups generated by nontrivial class representatives lying in [G,G].
std::vector<Subgroup> default_dprime_list(const GroupPtr& g);

LatticeBasis relation_lattice(const GroupPtr& g, const CharacterTable& t, const RelationSpec& v);

// Everything needed to evaluate the signature homomorphism against one
// relation variant: the table, the relation lattice, and the anti-self-
// conjugate part A = {a : a + conj(a) = 0 in the quotient}.
struct ThetaContext {
    GroupPtr group;
    CharacterTable table;
    RelationSpec variant;
    LatticeBasis relations;
    LatticeBasis a_lattice;
    QuotientResult a_group;  // a_lattice / relations with generator lifts
};

ThetaContext make_theta_context(const GroupPtr& g, RelationSpec v);
ThetaContext make_theta_context(const GroupPtr& g, RelationSpec v, CharacterTable t);

// Image of the datum under the signature homomorphism, as the canonical coset
// representative modulo the relation lattice. Verifies that the result is
// independent of the realization genus and that it lands in A.
std::vector<Int> theta(const ThetaContext& ctx, const OrbitData& d);

// Canonical representative of the complex-conjugate coset.
std::vector<Int> conjugate_coset(const ThetaContext& ctx, const std::vector<Int>& v);

// Restriction / induction of multiplicity vectors between a group and a
// materialized subgroup (plain vectors; callers reduce modulo relations).
std::vector<Int> restrict_vector(const ThetaContext& parent, const SubgroupContext& sub,
                                 const ThetaContext& child, const std::vector<Int>& v);
std::vector<Int> induce_vector(const ThetaContext& child, const SubgroupContext& sub,
                               const ThetaContext& parent, const std::vector<Int>& v);

// Commuting-square and conjugation checks.
bool verify_res_square(const ThetaContext& parent, const SubgroupContext& sub,
                       const ThetaContext& child, const OrbitData& d);
bool verify_ind_square(const ThetaContext& child, const SubgroupContext& sub,
                       const ThetaContext& parent, const OrbitData& d_over_sub);
bool verify_conj(const ThetaContext& ctx, const OrbitData& d);

// Image of the cancelling pair [c, c^-1] for every nontrivial class c. A
// nonzero image means the variant's relations do not kill that pair, i.e.
// the map is not well defined on that representative choice.
struct PairImage {
    int class_index;
    std::vector<Int> image;
    bool zero;
};
std::vector<PairImage> cancelling_pair_images(const ThetaContext& ctx);

struct OracleInfo {
    long p = 0;
    std::string h_maillet, h_bernoulli;
    bool match = false;
};

struct SignatureReport {
    std::string group_spec;
    std::string variant;
    int bg_free_rank = 0;
    int bg_two_torsion = 0;
    std::vector<std::string> bg_basis;
    std::vector<std::vector<std::string>> theta_images;
    std::string a_structure;
    bool injective_on_free = false;
    bool index_finite = false;
    std::string index;  // decimal string, or "infinite"
    std::optional<OracleInfo> oracle;
    std::vector<std::pair<std::string, std::string>> auxiliary;
};

SignatureReport index_report(const ThetaContext& ctx);
SignatureReport index_report(const GroupPtr& g, const RelationSpec& v);
SignatureReport cp_report(long p);    // odd prime <= 31
SignatureReport cpcp_report(long p);  // p in {3, 5}

std::string report_to_json(const SignatureReport& r);
std::string report_to_text(const SignatureReport& r);

}  // namespace gsig
