#pragma once

#include "gsig/group.hpp"

namespace gsig {

// Multiset of conjugacy classes whose representative product lies in [G,G].
// The reduced form (no identity entries, no opposite pairs, ambivalent
// multiplicities 0/1) is the canonical representative of its class in the
// group of singular orbit data.
struct OrbitData {
    GroupPtr group;
    std::vector<long> mult;  // per conjugacy class, >= 0

    bool empty() const;
    long entry_count() const;  // total multiplicity
};

OrbitData empty_data(const GroupPtr& g);

// entries are (element id, multiplicity); throws data_error when the product
// of the entries does not lie in the commutator subgroup.
OrbitData make_data(const GroupPtr& g, const std::vector<std::pair<int, long>>& entries);
OrbitData data_from_class_counts(const GroupPtr& g, std::vector<long> class_mult);

OrbitData reduce(const OrbitData& d);
bool is_reduced(const OrbitData& d);
bool same_bg_class(const OrbitData& a, const OrbitData& b);

OrbitData concat(const OrbitData& a, const OrbitData& b);  // unreduced sum
OrbitData add(const OrbitData& a, const OrbitData& b);     // reduced sum
OrbitData neg(const OrbitData& d);
OrbitData scaled(long n, const OrbitData& d);  // n >= 0 copies, reduced
OrbitData lambda_power(long n, const OrbitData& d);

OrbitData pushforward(const Homomorphism& f, const OrbitData& d);

// Branch data of the restricted action before any cancellation; needed for
// genus bookkeeping. restrict_data is the induced map on orbit-data groups.
OrbitData restrict_raw(const OrbitData& d, const SubgroupContext& k);
OrbitData restrict_data(const OrbitData& d, const SubgroupContext& k);

// Raw restriction to the cyclic subgroup generated by y, as exponents of y.
std::vector<std::pair<long, long>> restrict_exponents(const OrbitData& d, int y);

// Checks the double coset identity
//   res_K . push_i = sum_s push_j . res_{H_s} . push_{f_s}
// as elements of the orbit-data group of K.
bool double_coset_check(const GroupPtr& g, const SubgroupContext& h, const SubgroupContext& k,
                        const OrbitData& d);

// Structure of the group of singular orbit data: Z^free_rank x (Z/2)^two_torsion.
struct BGStructure {
    GroupPtr group;
    int free_rank = 0;
    int two_torsion = 0;
    std::vector<OrbitData> basis;  // free generators first, then order-2 generators

    QuotientResult coords;  // ker Psi / N machinery
    std::vector<int> free_slots, torsion_slots;  // indices into coords factors
};
BGStructure bg_structure(const GroupPtr& g);

struct BGCoordinates {
    std::vector<Int> free_part;
    std::vector<int> torsion_part;  // 0/1
};
BGCoordinates coordinates(const OrbitData& d, const BGStructure& st);
OrbitData from_coordinates(const BGStructure& st, const BGCoordinates& c);

// Riemann-Hurwitz: 2g - 2 = |G|(2h - 2) + |G| sum m_i (1 - 1/nu_i).
long genus(const OrbitData& d, long h);
// Solves the same equation inside K for the raw restricted data at fixed g.
long quotient_genus(const OrbitData& d, long g, const std::vector<int>& k_members);

// Images under a surface-kernel surjection certifying that the data is
// realized by an action: prod [a_i,b_i] xi_1 ... xi_q = 1, the images
// generate, and each xi lies in its declared class.
struct RealizationWitness {
    long h = 0;
    std::vector<int> a_images, b_images;
    std::vector<int> xi_images;
};
RealizationWitness realize(const OrbitData& d);
bool verify_witness(const OrbitData& d, const RealizationWitness& w);

long fixed_point_count(const OrbitData& d, int y);

// text form `[g1^m1, g2^m2, ...]` with element labels or ids
OrbitData parse_data_text(const GroupPtr& g, const std::string& text);
std::string data_to_text(const OrbitData& d);

// JSON form {"group": spec, "entries": [[id, mult], ...]}; parsing checks the
// embedded spec against the supplied group
std::string data_to_json(const OrbitData& d);
OrbitData parse_data_json(const GroupPtr& g, const std::string& text);

// accepts either form, by leading character
OrbitData parse_data(const GroupPtr& g, const std::string& text);

}  // namespace gsig
