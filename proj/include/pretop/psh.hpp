#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pretop/category.hpp"
#include "pretop/parallel.hpp"

namespace pretop {

// Categorical structure of the presheaf category over a finite base. All
// constructions are stalkwise; covers are stagewise surjections.

bool psh_is_cover(const NatTrans& t);
bool psh_is_mono(const NatTrans& t);
// First (object, element) of the codomain missed by a non-cover.
std::vector<std::string> psh_cover_witness(const NatTrans& t);

struct PshProduct {
    Presheaf obj;
    NatTrans proj1;
    NatTrans proj2;
};
PshProduct psh_product(const Presheaf& p, const Presheaf& q);
NatTrans psh_pair(const PshProduct& pr, const NatTrans& f, const NatTrans& g);

struct PshPullback {
    Presheaf obj;
    NatTrans proj1;
    NatTrans proj2;
};
PshPullback psh_pullback(const NatTrans& f, const NatTrans& g);

struct PshEqualizer {
    Presheaf obj;
    NatTrans mono;
};
PshEqualizer psh_equalizer(const NatTrans& f, const NatTrans& g);

struct PshSum {
    Presheaf obj;
    NatTrans inl;
    NatTrans inr;
};
PshSum psh_sum(const Presheaf& p, const Presheaf& q);

struct PshFactorization {
    Presheaf image;
    NatTrans cover;
    NatTrans mono;
};
PshFactorization psh_image_factorization(const NatTrans& f);

// Coequalizer of a parallel pair (stalkwise quotient by the generated
// equivalence closed under the action).
NatTrans psh_coequalizer(const NatTrans& r0, const NatTrans& r1);

NatTrans psh_to_terminal(const Presheaf& p);

/// Canonical cover: ∐_{(C, x ∈ P(C))} y(C) ->> P. Weakly initial among covers
/// of P, which is what turns quantifiers over arbitrary covers into a single
/// check. Elements are encoded as (C, x, w) with w: Y -> C.
struct PshCanonicalCover {
    Presheaf total;
    NatTrans cover;
    // element label at stage Y -> (summand object C, summand element x, arrow w)
    std::map<std::string, std::vector<std::string>> decode;
};
PshCanonicalCover psh_canonical_cover(const Presheaf& p);

/// Fiber of g: D -> C over an element c ∈ C(stage), as a presheaf over the
/// base: F(Y) = {(w: Y -> stage, d ∈ D(Y)) : g(d) = c·w}. `body` projects to
/// D; `ctx` records the context component w.
struct PshFiber {
    Presheaf obj;
    NatTrans body;                              // -> D
    std::map<std::string, std::string> ctx;     // element -> arrow id w
};
PshFiber psh_fiber(const NatTrans& g, const std::string& stage, const std::string& c);

/// Exponential Q^P with elements at stage C the natural families
/// t(w: Y -> C, p ∈ P(Y)) ∈ Q(Y).
struct PshExponential {
    Presheaf obj;
    using Table = std::map<std::pair<std::string, std::string>, std::string>; // (w,p) -> value
    std::map<std::string, std::map<std::string, Table>> tables; // stage -> label -> table
};
PshExponential psh_exponential(const Presheaf& p, const Presheaf& q);
// Postcomposition e^P: Q^P -> R^P for e: Q -> R.
NatTrans psh_exp_postcompose(const PshExponential& qp, const PshExponential& rp,
                             const NatTrans& e, const Presheaf& p);

// All presheaves over `base` with stalk sizes <= bound, canonical labels,
// deterministic order. The workhorse behind every "over all presheaves"
// quantifier in the sheaf and choice checks. Stalk-size vectors are filled
// in independently, so the enumeration runs as a parallel kernel with a
// serial reference path.
std::vector<Presheaf> psh_universe(const CategoryRef& base, std::size_t max_stalk);
std::vector<Presheaf> psh_universe(const CategoryRef& base, std::size_t max_stalk,
                                   ExecMode mode);

// Isomorphism search (exhaustive).
bool psh_isomorphic(const Presheaf& p, const Presheaf& q);

// First natural transformation whose components all satisfy `admissible`,
// found by depth-first search with naturality pruning.
std::optional<NatTrans> psh_find_nat(
    const Presheaf& dom, const Presheaf& cod,
    const std::function<bool(const std::string&, const std::string&, const std::string&)>&
        admissible);

// Relabel stalk elements canonically (obj#k) preserving structure.
Presheaf psh_canonicalize(const Presheaf& p);

} // namespace pretop
