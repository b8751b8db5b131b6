#pragma once

#include <cstdint>
#include <map>
#include <memory>

#include "gsig/intmat.hpp"

namespace gsig {

constexpr int kDefaultOrderCap = 2000;

struct ConjugacyClasses {
    std::vector<int> class_of;       // element id -> class index
    std::vector<int> reps;           // class index -> least member id
    std::vector<int> sizes;          // class index -> class size
    std::vector<int> inverse_class;  // class index -> class of the inverses

    int count() const { return static_cast<int>(reps.size()); }
};

// G/[G,G] in invariant-factor form together with the projection map.
struct Abelianization {
    std::vector<Int> factors;               // d_1 | d_2 | ..., all >= 2
    std::vector<std::vector<Int>> project;  // element id -> coordinates, reduced mod d_i

    bool is_zero(const std::vector<Int>& v) const {
        for (const Int& c : v)
            if (c != 0) return false;
        return true;
    }
};

// Finite group materialized as a full Cayley table. Element id 0 is the
// identity; ids follow breadth-first discovery from the identity over the
// generators in listed order, so runs are reproducible. Immutable once built.
class FiniteGroup {
public:
    std::string spec;  // the defining group-spec text
    int order = 0;
    std::vector<int32_t> cayley;  // order x order, row-major
    std::vector<int> inv;
    std::vector<int> elt_order;
    std::vector<int> generators;  // element ids
    std::vector<std::string> labels;
    std::map<std::string, int> label_to_id;  // labels plus generator aliases
    long exponent = 1;                       // lcm of element orders

    // spanning words from the BFS: element = mul(parent, generators[via_gen])
    std::vector<int> bfs_parent, bfs_via_gen, bfs_order;

    ConjugacyClasses classes;
    std::vector<int> commutator_members;  // sorted ids of [G,G]
    Abelianization ab;

    int mul(int x, int y) const { return cayley[static_cast<size_t>(x) * order + y]; }
    int conjugate(int g, int x) const { return mul(mul(g, x), inv[g]); }  // g x g^-1
    int power(int x, long e) const;
    bool is_abelian() const;
    int element_by_name(const std::string& name) const;  // label, alias or decimal id
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Group-spec grammar: `cyclic n`, `abelian n1 n2 ...`, or
// `perm d; (cycles); (cycles); ...` with 1-based points.
GroupPtr build_group(const std::string& spec, int order_cap = kDefaultOrderCap);

const ConjugacyClasses& conjugacy_classes(const FiniteGroup& g);

struct Subgroup {
    std::vector<int> member_ids;  // sorted, closed, contains 0

    int order() const { return static_cast<int>(member_ids.size()); }
    bool contains(int id) const;
    bool operator==(const Subgroup&) const = default;
    bool operator<(const Subgroup& o) const;
};

Subgroup commutator_subgroup(const FiniteGroup& g);
const Abelianization& abelianization(const FiniteGroup& g);

Subgroup trivial_subgroup();
Subgroup whole_group(const FiniteGroup& g);
Subgroup cyclic_subgroup(const FiniteGroup& g, int id);
Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens);
bool is_subgroup(const FiniteGroup& g, const Subgroup& s);

enum class SubgroupMode { All, Cyclic };

// One entry per conjugacy class of subgroups; `members` lists the whole class.
struct SubgroupClass {
    Subgroup rep;
    std::vector<Subgroup> members;
};
std::vector<SubgroupClass> subgroups(const FiniteGroup& g, SubgroupMode mode);

// Least-id representatives s of the double cosets KsH; their union covers G.
std::vector<int> double_cosets(const FiniteGroup& g, const Subgroup& h, const Subgroup& k);

struct Homomorphism {
    GroupPtr domain, codomain;
    std::vector<int> image;  // total map on domain ids

    int apply(int id) const { return image[id]; }
};

// Extends generator images along the BFS spanning words and verifies
// multiplicativity (exhaustively for |domain| <= 64, else on 10^4 fixed-seed
// samples). Throws data_error when the images violate the domain relations.
Homomorphism make_homomorphism(const GroupPtr& domain, const GroupPtr& codomain,
                               const std::vector<int>& generator_images);

Homomorphism identity_homomorphism(const GroupPtr& g);

// A subgroup materialized as a standalone group. Sub-ids are sorted by parent
// id, so sub-id 0 is the identity and the layout is reproducible.
struct SubgroupContext {
    GroupPtr sub;
    Homomorphism inclusion;       // sub -> parent
    std::vector<int> to_parent;   // sub id -> parent id
    std::vector<int> from_parent; // parent id -> sub id or -1
};
SubgroupContext materialize(const GroupPtr& g, const Subgroup& s);

// Least injective homomorphism h -> g extending to generator images in
// lexicographic order, if any exists.
std::optional<Homomorphism> find_monomorphism(const GroupPtr& h, const GroupPtr& g);

std::string group_to_json(const FiniteGroup& g);

}  // namespace gsig
