#pragma once

#include <mutex>
#include <optional>

#include "pretop/ambient.hpp"

namespace pretop::completion {

enum class Flavor { ExLex, ExReg };

/// Object of the exact completion: an ambient carrier with a (pseudo-)
/// equivalence relation presented as a parallel pair, together with chosen
/// witness maps for reflexivity, symmetry and transitivity. In the ex/reg
/// flavor the pair is additionally jointly monic.
struct CompObj {
    AObj carrier;
    AMap r0, r1;      // R -> X
    AMap refl;        // X -> R
    AMap sym;         // R -> R
    AMap trans;       // R x_X R -> R  (domain is the canonical pullback of r1, r0)
};

// Equations for the witnesses; Error("NotEquivalenceRelation") on failure,
// Error("NotMonic") for ex/reg objects whose pair is not jointly monic.
void validate(const CompObj& o, Flavor flavor);

// Discrete object y(X): the diagonal relation with identity witnesses.
CompObj discrete_obj(const AObj& x);

// Kernel relation of an ambient map q: X -> Q, with searched witnesses.
CompObj kernel_obj(const AMap& q);

// Relation given by a parallel pair; witnesses found by exhaustive search.
CompObj obj_from_relation(const AObj& x, const AMap& rel0, const AMap& rel1, Flavor flavor);

/// Map of the completion: a relation-respecting tracker, considered modulo
/// the codomain relation.
struct CompMap {
    CompObj dom;
    CompObj cod;
    AMap tracker;
};

// Does a tracker witness map exist R_dom -> R_cod?
bool tracker_valid(const CompObj& a, const CompObj& b, const AMap& t);
// t ~ t': the pair factors through the codomain relation.
bool trackers_equivalent(const CompObj& a, const CompObj& b, const AMap& t, const AMap& t2);

bool comp_equal(const CompMap& f, const CompMap& g);
CompMap comp_identity(const CompObj& a);
CompMap comp_compose(const CompMap& g, const CompMap& f);

// All maps A -> B, one canonical representative per tracker class.
std::vector<CompMap> comp_hom(const CompObj& a, const CompObj& b);

bool comp_is_iso(const CompMap& f);
bool comp_is_mono(const CompMap& f);
// Cover test: the mono part of the image factorization is invertible.
bool comp_is_cover(const CompMap& f);

struct CompProduct {
    CompObj obj;
    CompMap proj1;
    CompMap proj2;
};
CompProduct comp_product(const CompObj& a, const CompObj& b);
CompObj comp_terminal(const Ambient& amb);

struct CompEqualizer {
    CompObj obj;
    CompMap mono;
};
CompEqualizer comp_equalizer(const CompMap& f, const CompMap& g);

struct CompFactorization {
    CompObj image;    // carrier of dom with the pulled-back codomain relation
    CompMap cover;
    CompMap mono;
};
CompFactorization comp_image(const CompMap& f);

/// Quotient of A by the additional relation presented by the ambient span
/// s0, s1: S -> carrier(A): the carrier keeps, the relation closes up.
struct CompQuotient {
    CompObj obj;
    CompMap q;
    bool exact;              // span-generated relation = kernel pair of q
    bool stable_on_samples;  // re-verified under sampled pullbacks
};
CompQuotient comp_quotient(const CompObj& a, const AMap& s0, const AMap& s1);

// ---------------------------------------------------------------- recognition

enum class Criteria { ExLexStyle, ExRegStyle };

struct RecognitionReport {
    bool full = true;
    bool faithful = true;
    bool covering = true;
    bool third = true;    // projectives match (ExLexStyle) / full on subobjects
    std::vector<std::string> notes;
    bool ok() const { return full && faithful && covering && third; }
};

/// Sample universe for recognition checks: completion objects assembled from
/// the ambient object sample and kernel relations of sampled surjections
/// (plus a non-monic pseudo-relation in the ex/lex flavor).
struct SampleUniverse {
    Ambient amb;
    Flavor flavor;
    std::vector<AObj> carriers;       // functor source sample
    std::vector<CompObj> objects;     // completion-side sample
};
SampleUniverse make_sample(const Ambient& amb, Flavor flavor, std::size_t bound);

/// Prop-style recognition of the unit into the completion, restricted to
/// `source` carriers: full and faithful, covering, and either image objects
/// are exactly the projectives (ExLexStyle) or the image is full on
/// subobjects (ExRegStyle). Sample-bounded, so the verdict reads
/// "consistent with" rather than "is".
RecognitionReport check_recognition(const SampleUniverse& u, Criteria criteria,
                                    const std::vector<AObj>& source);

RecognitionReport check_recog_exlex(const Ambient& amb, std::size_t bound);
RecognitionReport check_recog_exreg(const Ambient& amb, std::size_t bound);

struct CoincidenceReport {
    bool hypotheses_ok = true;
    std::string failed_hypothesis;
    RecognitionReport recognition;
    bool ok() const { return hypotheses_ok && recognition.ok(); }
};

/// The comparison from the ex/lex completion of the projectives to the
/// ex/reg completion: checks the closure hypotheses on the sample, then the
/// three ex/lex recognition conditions for the projective-restricted unit.
/// `declared` optionally restricts which objects count as projectives
/// (checked against the sample); leave empty to compute them.
CoincidenceReport proj_coincidence(const Ambient& amb, std::size_t bound,
                                   const std::vector<AObj>& declared = {});

} // namespace pretop::completion
