#pragma once

#include "pretop/amc.hpp"
#include "pretop/parallel.hpp"
#include "pretop/wtypes.hpp"

namespace pretop::sites {

/// Indexed covering family: arrows with a common codomain; repeats are
/// allowed (the index set matters, not the arrow set).
struct CoveringFamily {
    std::string id;
    std::string target;
    std::vector<std::string> arrows;
};

struct Site {
    CategoryRef cat;
    std::map<std::string, std::vector<CoveringFamily>> cov; // per object

    std::vector<const CoveringFamily*> families() const;
    const std::vector<CoveringFamily>& families_on(const std::string& obj) const;
};

void validate_site(const Site& s);

/// The defining commutative square of the site presentation, over finite
/// sets: index pairs over families on the left, arrows over objects on the
/// right.
amc::Square site_square(const Site& s);

struct SiteCheck {
    bool ok = true;
    std::vector<std::string> witnesses;
};

// Axiom (C): every covering family pulls back along every arrow up to
// factorization through its members.
SiteCheck check_site(const Site& s);
// (M): some family on each object contains its identity.
SiteCheck check_M(const Site& s);
// (L): composite refinements are refined by a single family.
SiteCheck check_L(const Site& s);

struct CollectionSiteReport {
    bool collection;
    std::vector<std::string> notes;
};
CollectionSiteReport is_collection_site(const Site& s, bool strong);

// Refinement through the canonical square on the index map; over
// finite sets this is the identity square, so the output is isomorphic.
Site refine_to_collection_site(const Site& s);

struct GenerateResult {
    Site site;                              // families realized at the last level
    std::vector<std::map<std::string, std::vector<std::string>>> levels; // ids per object
    wtypes::DepFixpointResult chain;        // the raw indexed fixpoint
    std::map<std::string, std::vector<std::size_t>> level_sizes() const;
};

/// Inductively generated Grothendieck families: the identity family plus
/// composites of a covering family with generated families on its domains,
/// iterated to `depth` through the indexed fixpoint.
/// Error("SiteAxiomCViolated") when the input fails axiom (C).
GenerateResult generate_cov(const Site& s, std::size_t depth);

using Sieve = std::set<std::string>; // arrow ids, precomposition-closed

struct GrothendieckTopology {
    CategoryRef cat;
    std::map<std::string, std::set<Sieve>> covering; // per object
};

Sieve maximal_sieve(const FiniteCategory& cat, const std::string& obj);
Sieve sieve_generated(const FiniteCategory& cat, const CoveringFamily& u);
std::vector<Sieve> all_sieves(const FiniteCategory& cat, const std::string& obj);

// Least topology whose covering sieves include those generated by the site's
// families; saturation to a fixed point under stability and transitivity.
GrothendieckTopology sieve_saturate(const Site& s);
bool topology_valid(const GrothendieckTopology& j);

/// Element tuples over a covering family satisfying the matching equations.
std::vector<std::vector<std::string>> compatible_families(const Presheaf& p,
                                                          const CoveringFamily& u);

struct SheafVerdict {
    bool sheaf = true;
    std::string detail; // failing family/sieve and amalgamation count
};
SheafVerdict is_sheaf(const Presheaf& p, const Site& s);
SheafVerdict is_sheaf(const Presheaf& p, const GrothendieckTopology& j);

struct Sheafification {
    Presheaf plus_once;
    Presheaf sheaf;   // plus applied twice
    NatTrans unit;    // P -> P++
};
Sheafification sheafify(const Presheaf& p, const GrothendieckTopology& j);

// Colimits of sheaves: computed in presheaves, then sheafified. Limits stay
// pointwise. Error("TopologyMismatch") when the inputs disagree on the base.
Presheaf sheaf_sum(const Presheaf& a, const Presheaf& b, const GrothendieckTopology& j);
Presheaf sheaf_quotient(const NatTrans& r0, const NatTrans& r1,
                        const GrothendieckTopology& j);
PshPullback sheaf_pullback(const NatTrans& f, const NatTrans& g);

struct EquivalenceVerdict {
    bool equivalent = true;
    std::string discrepancy;
};

// Same sheaves over every presheaf with stalks <= bound. The scan over the
// presheaf universe is the data-parallel kernel of this module.
EquivalenceVerdict sheaf_equivalence_check(const Site& s1, const Site& s2, std::size_t bound,
                                           ExecMode mode = default_exec_mode());
EquivalenceVerdict sheaf_equivalence_check(const Site& s1, const GrothendieckTopology& j,
                                           std::size_t bound,
                                           ExecMode mode = default_exec_mode());

struct UniversalCheck {
    bool ok = true;
    std::size_t sheaves_checked = 0;
    std::vector<std::string> notes;
};

// Every map from P into a sheaf of stalk size <= bound factors uniquely
// through the unit.
UniversalCheck sheafification_universal(const Presheaf& p, const GrothendieckTopology& j,
                                        std::size_t bound);

} // namespace pretop::sites
