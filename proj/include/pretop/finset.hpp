#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pretop/error.hpp"
#include "pretop/labels.hpp"

namespace pretop {

/// Finite set of distinct element labels. Label order is the canonical total
/// order used wherever a deterministic representative has to be picked.
struct FinSetObj {
    std::vector<std::string> elems;

    bool contains(const std::string& e) const;
    std::size_t size() const { return elems.size(); }

    bool operator==(const FinSetObj&) const = default;
};

struct FinSetMap {
    FinSetObj dom;
    FinSetObj cod;
    std::map<std::string, std::string> table;

    const std::string& operator()(const std::string& e) const;

    bool operator==(const FinSetMap&) const = default;
};

void require_valid(const FinSetObj& x);
void require_valid(const FinSetMap& f);

FinSetMap fs_identity(const FinSetObj& x);
FinSetMap fs_compose(const FinSetMap& g, const FinSetMap& f);
FinSetMap fs_map(const FinSetObj& dom, const FinSetObj& cod,
                 const std::function<std::string(const std::string&)>& fn);

bool fs_is_injective(const FinSetMap& f);
bool fs_is_surjective(const FinSetMap& f);
// Any missed codomain element (surjectivity counterexample).
std::optional<std::string> fs_missed_element(const FinSetMap& f);
// Section of a surjection (least-preimage choice); Error("NotSurjective") otherwise.
FinSetMap fs_section(const FinSetMap& f);

std::vector<std::string> fs_fiber(const FinSetMap& f, const std::string& a);

// ---- finite limits ----
FinSetObj fs_terminal();
FinSetObj fs_initial();
FinSetMap fs_to_terminal(const FinSetObj& x);
FinSetMap fs_from_initial(const FinSetObj& x);

struct FsProduct {
    FinSetObj obj;       // elements lbl_pair(a, b)
    FinSetMap proj1;
    FinSetMap proj2;
};
FsProduct fs_product(const FinSetObj& x, const FinSetObj& y);
// Mediating map into a product.
FinSetMap fs_pair(const FsProduct& p, const FinSetMap& f, const FinSetMap& g);

struct FsPullback {
    FinSetObj obj;       // pairs (b, c) with f(b) = g(c)
    FinSetMap proj1;     // -> dom(f)
    FinSetMap proj2;     // -> dom(g)
};
FsPullback fs_pullback(const FinSetMap& f, const FinSetMap& g); // f: B->A, g: C->A
FinSetMap fs_pullback_pair(const FsPullback& p, const FinSetMap& f, const FinSetMap& g);

struct FsEqualizer {
    FinSetObj obj;
    FinSetMap mono;
};
FsEqualizer fs_equalizer(const FinSetMap& f, const FinSetMap& g);

// ---- regular / exact structure ----
struct FsFactorization {
    FinSetObj image;
    FinSetMap cover;  // dom(f) ->> image
    FinSetMap mono;   // image >-> cod(f)
};
FsFactorization fs_image_factorization(const FinSetMap& f);

/// Relation on X presented as a parallel pair r0, r1: R -> X.
struct FsRelation {
    FinSetObj rel;
    FinSetMap r0;
    FinSetMap r1;
};
FsRelation fs_relation_from_pairs(const FinSetObj& x,
                                  const std::vector<std::pair<std::string, std::string>>& pairs);
FsRelation fs_diagonal(const FinSetObj& x);
FsRelation fs_total_relation(const FinSetObj& x);
FsRelation fs_kernel_pair(const FinSetMap& f);

// Pair (x, y) is related (some r in R with r0(r)=x, r1(r)=y).
bool fs_related(const FsRelation& r, const std::string& x, const std::string& y);

// Reflexive/symmetric/transitive check; witness pair on failure.
struct FsEquivCheck {
    bool ok;
    std::string failed_law;                  // "reflexive" | "symmetric" | "transitive"
    std::pair<std::string, std::string> witness;
};
FsEquivCheck fs_check_equivalence(const FsRelation& r);

struct FsQuotient {
    FinSetMap q;                 // X ->> X/R, class labels = least member label
    bool kernel_pair_matches;    // R and ker(q) have the same related pairs
    bool coequalizes;            // q r0 = q r1
    bool stable_on_samples;      // exactness re-checked under sampled pullbacks
    std::vector<std::string> notes;
};
// Error("NotEquivalenceRelation") with the witness pair in the message if R
// fails the laws.
FsQuotient fs_quotient_equiv(const FsRelation& r);

// Plain coequalizer of a parallel pair (quotient by the generated equivalence).
FinSetMap fs_coequalizer(const FinSetMap& r0, const FinSetMap& r1);

struct FsSum {
    FinSetObj obj;               // labels inl(a) / inr(b)
    FinSetMap inl;
    FinSetMap inr;
};
FsSum fs_sum(const FinSetObj& x, const FinSetObj& y);
FinSetMap fs_copair(const FsSum& s, const FinSetMap& f, const FinSetMap& g);

// ---- locally cartesian closed structure ----

/// Π_f g for f: B -> A, g: X -> B. Fiber over a = sections of g over B_a;
/// elements are section-table labels.
struct FsDepProduct {
    FinSetObj obj;
    FinSetMap proj;                                  // -> A
    // decoded sections: element label -> (b -> x) table
    std::map<std::string, std::map<std::string, std::string>> sections;
};
FsDepProduct fs_dependent_product(const FinSetMap& f, const FinSetMap& g);

// Exhaustive check of Hom_{/B}(f^*(h), g) ~ Hom_{/A}(h, Π_f g) for one h: Y -> A.
bool fs_check_pi_adjunction(const FinSetMap& f, const FinSetMap& g, const FinSetMap& h);

struct FsExponential {
    FinSetObj obj;                                   // function-table labels
    std::map<std::string, std::map<std::string, std::string>> tables;
};
FsExponential fs_exponential(const FinSetObj& p, const FinSetObj& x); // X^P
// Postcomposition e^P: X^P -> Y^P for e: X -> Y.
FinSetMap fs_exp_postcompose(const FsExponential& xp, const FsExponential& yp,
                             const FinSetMap& e, const FinSetObj& p);

// ---- enumeration ----
std::vector<FinSetMap> fs_all_maps(const FinSetObj& x, const FinSetObj& y);
std::vector<FinSetMap> fs_all_surjections(const FinSetObj& x, const FinSetObj& y);
std::vector<FinSetMap> fs_all_injections(const FinSetObj& x, const FinSetObj& y);
// Slice maps u: (f1: X -> A) -> (f2: Y -> A) with f2 u = f1.
std::vector<FinSetMap> fs_slice_hom(const FinSetMap& f1, const FinSetMap& f2);

FinSetObj fs_canonical(std::size_t n, const std::string& prefix = "x");

} // namespace pretop
