#pragma once

#include <memory>
#include <mutex>
#include <optional>

#include "pretop/ambient.hpp"

namespace pretop::amc {

/// Oriented commuting square. The property-bearing direction runs left to
/// right: f is the right-hand map, g the left-hand one.
///
///        q
///   D ------> B
///   |g        |f
///   v    p    v
///   C ------> A
struct Square {
    Ambient amb;
    AMap f;  // right: B -> A
    AMap g;  // left:  D -> C
    AMap p;  // bottom: C -> A
    AMap q;  // top:    D -> B
};

Square identity_square(const Ambient& amb, const AMap& f);
// Flip across the main diagonal: the left map becomes the right one.
Square transpose(const Square& sq);
bool commutes(const Square& sq);

struct CoveringCheck {
    bool covering;
    AMap canonical;                     // D -> B x_A C
    std::vector<std::string> witnesses; // what failed, if anything
};
// Error("NotCommuting") when the square does not commute.
CoveringCheck is_covering_square(const Square& sq);

struct CollectionCheck {
    bool collection;
    std::vector<std::string> trace;
};

/// Fiberwise refinement property: for every stage element c of C and the
/// weakly initial cover e of the fiber D_c, some c' over the same point of A
/// admits h: D_{c'} -> D_c over B factoring through e (a cover when strong).
/// Exact over finite sets and finite presheaves.
CollectionCheck is_collection_square(const Square& sq, bool strong);

/// The equivalent characterization for covering squares: for every stage
/// element a of A and the weakly initial cover e of B_a, some c over a admits
/// t: D_c -> E with e ∘ t = q_c.
CollectionCheck collection_square_by_lifting(const Square& sq);

enum class ChoiceVerdict { Choice, NotChoice, ChoiceUpToBound };

struct ChoiceReport {
    ChoiceVerdict verdict;
    std::vector<std::string> notes; // counterexample cover or bound note
};

/// Is exponentiation by P cover-preserving? Exact over finite sets and for
/// degenerate presheaves; otherwise exhaustive over covers between
/// presheaves of stalk size <= bound, with a qualified verdict at the bound.
ChoiceReport check_choice_object(const Ambient& amb, const AObj& p, std::size_t bound);

struct ProjectiveReport {
    bool projective;
    std::vector<std::string> notes; // non-split cover on failure
};
ProjectiveReport is_projective(const Ambient& amb, const AObj& p);

struct EnoughProjectivesReport {
    bool ok;
    std::vector<std::string> notes;
};
EnoughProjectivesReport has_enough_projectives(const Ambient& amb, std::size_t bound);

struct AmcSearchOptions {
    bool projective_path = true;   // projective-cover construction
    bool choice_path = true;       // fibers-internally-split classification
    std::size_t bound = 1;         // universe bound for the generic search
};

struct AmcSquareResult {
    bool found = false;
    std::optional<Square> square;
    std::string path;              // which construction produced it
    std::vector<std::string> trace;
};

/// A square that is both covering and strong collection with f on the right,
/// or NotFound after bounded search.
AmcSquareResult find_amc_square(const Ambient& amb, const AMap& f,
                                const AmcSearchOptions& opts = {});

/// Class of small maps over finite sets, generated by the fibers of a single
/// map rho: membership of g: T -> S asks that every fiber of g is covered by
/// some fiber of rho. Intensional: the predicate is kept, not an extension.
class SmallMapClass {
public:
    struct Verdict {
        bool member;
        std::vector<std::string> witness;
    };

    explicit SmallMapClass(FinSetMap rho, std::optional<Square> provenance = std::nullopt);

    const FinSetMap& representation() const { return rho_; }
    const std::optional<Square>& provenance() const { return provenance_; }

    Verdict membership(const FinSetMap& g) const;
    bool member(const FinSetMap& g) const { return membership(g).member; }

private:
    struct Cache {
        std::mutex mtx;
        std::map<std::string, Verdict> verdicts;  // keyed by map structure
    };

    FinSetMap rho_;
    std::vector<std::vector<std::string>> fibers_;  // fibers of rho, by cod element
    std::optional<Square> provenance_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Class generated by a representation pi: E -> U (maps covered by a pullback
// of pi).
SmallMapClass small_class_from_representation(const FinSetMap& pi);

// Extraction direction: the class generated by the left map of a covering
// strong-collection square over finite sets.
// Error("SquareNotStrongCollection") / Error("NotCommuting").
SmallMapClass small_class_from_square(const Square& sq);

/// The explicit covering + strong collection square on f built from a
/// representation: C = {(a, u, p: E_u ->> B_a)}, D adds a point of E_u.
/// Error("NotInClass") when f is not small, Error("NotARepresentation") when
/// pi fails its own membership.
Square rp_square_from_representation(const FinSetMap& f, const SmallMapClass& cls);

struct S1Instance {
    FinSetMap member;  // f: B -> A in the class
    FinSetMap along;   // k: A' -> A
};
struct S2Instance {
    Square sq;         // covering square; left member must force right member
};
struct S3Instance {
    FinSetMap cover;   // p: Y ->> X
    FinSetMap member;  // f: X -> A in the class
};

struct AxiomReport {
    bool ok;
    std::vector<std::string> lines;  // one per instance
};

AxiomReport check_small_axioms(const SmallMapClass& cls,
                               const std::vector<S1Instance>& s1,
                               const std::vector<S2Instance>& s2,
                               const std::vector<S3Instance>& s3);

struct SetAmcVerdict {
    bool holds;
    std::vector<std::string> witness;  // description of a failing surjection
};

/// Set-level multiple choice for a family of surjections onto X: every
/// surjection q: Z ->> X with |Z| <= z_bound (up to relabelling of Z) admits
/// some p_i = q ∘ f. Error("NotSurjective") if a family member is not onto.
SetAmcVerdict set_amc_check(const FinSetObj& x, const std::vector<FinSetMap>& family,
                            std::size_t z_bound);

// The S3 witness square for one instance, exposed for inspection.
struct S3Witness {
    bool found;
    std::optional<Square> square;
    std::vector<std::string> notes;
};
S3Witness s3_collection_square(const SmallMapClass& cls, const FinSetMap& cover,
                               const FinSetMap& member);

} // namespace pretop::amc
