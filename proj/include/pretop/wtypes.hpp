#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pretop/finset.hpp"

namespace pretop::wtypes {

/// Polynomial endofunctor of finite sets presented by a map f: B -> A;
/// applied to X it yields Σ_{a ∈ A} X^{B_a}.
struct PolyFunctor {
    FinSetMap f;

    const FinSetObj& shapes() const { return f.cod; }
    std::vector<std::string> fiber(const std::string& a) const { return fs_fiber(f, a); }
};

// Convenience constructor from arities: each op name gets fiber elements
// "<op>:0" .. "<op>:k-1".
PolyFunctor poly_from_arities(const std::map<std::string, std::size_t>& arities);

struct PolyApplication {
    FinSetObj obj;  // labels (a,{b>x;...})
    // label -> (shape, children table)
    std::map<std::string, std::pair<std::string, std::map<std::string, std::string>>> decode;
};
PolyApplication apply_poly(const PolyFunctor& pf, const FinSetObj& x);

/// Well-founded tree over a signature: a shape and one subtree per fiber
/// element. Structural equality; children keyed in label order.
struct WTree {
    std::string root;
    std::map<std::string, WTree> children;

    bool operator==(const WTree&) const = default;
    bool operator<(const WTree& o) const { return encode() < o.encode(); }
    std::string encode() const;
    std::size_t height() const;
};

WTree sup(const PolyFunctor& pf, const std::string& a,
          const std::map<std::string, WTree>& children);

enum class WKind { Empty, Finite, InfiniteTruncated };

struct WTypeResult {
    WKind kind;
    bool stabilized;
    std::vector<std::vector<WTree>> levels;  // W_0, W_1, ... (trees of height <= n)
    std::vector<std::size_t> level_sizes() const;
    const std::vector<WTree>& value() const { return levels.back(); }
};

/// Chain W_0 = ∅, W_{n+1} = P_f(W_n), stopped at stabilization or at `cap`.
/// Classification is by the fiber criterion (all fibers inhabited: empty
/// W-type; no fiber inhabited: W = shapes; mixed: infinite), which the test
/// suite replays against the chain itself.
WTypeResult wtype(const PolyFunctor& pf, std::size_t cap);

/// Algebra for P_f: carrier X and structure map s: P_f(X) -> X given as a
/// table on the canonical labels of apply_poly(pf, X).
struct WAlgebra {
    FinSetObj carrier;
    std::map<std::string, std::string> structure;
};

// The unique algebra morphism value at a tree: wfold(sup_a(t)) = s(a, wfold∘t).
// Error("SignatureMismatch") if the tree is not over pf's signature.
std::string wfold(const PolyFunctor& pf, const WAlgebra& alg, const WTree& t);

// ---------------------------------------------------------------- ranks

/// Signature built from a family of surjections p_i: Y_i ->> X: shapes are
/// the family indexes plus a zero and a successor constructor with fibers
/// B_zero = ∅ and B_succ = {0}.
struct RankSignature {
    PolyFunctor pf;
    std::vector<std::string> index_ctors;
    std::string zero_ctor;
    std::string succ_ctor;
    // index ctor -> (fiber element -> element of X)
    std::map<std::string, std::map<std::string, std::string>> proj;
    FinSetObj x;
};

// Error("NotSurjective") naming the offending family index.
RankSignature rank_signature(const FinSetObj& x, const std::vector<FinSetMap>& family);

// rank(sup_zero) = 0; rank(sup_succ(t)) = rank(t(0)) + 1;
// rank(sup_i(t)) = max over branches (0 when the fiber is empty).
std::size_t rank(const RankSignature& sig, const WTree& t);

struct RankClosureReport {
    bool zero_attained = false;
    bool succ_closed = false;
    bool sup_closed = false;
    std::set<std::size_t> attained;   // ranks attained within the depth
    std::vector<std::string> notes;
    bool ok() const { return zero_attained && succ_closed && sup_closed; }
};

/// Enumerates trees to `depth` and checks that the attained ranks contain 0,
/// are successor-closed within the depth, and realize the max of every
/// X-indexed tuple of attained ranks through some family index.
RankClosureReport rank_closure_demo(const FinSetObj& x, const std::vector<FinSetMap>& family,
                                    std::size_t depth);

// ---------------------------------------------------------------- dependent

/// Indexed container: per index an (ordered) list of constructors, each with
/// a list of argument indices. (FX)_C = 1 + Σ_{U ∈ ctors(C)} Π_j X_{arg_j}.
struct DepConstructor {
    std::string id;
    std::vector<std::string> arg_indices;
};

struct DepPolyFunctor {
    std::vector<std::string> indices;
    std::map<std::string, std::vector<DepConstructor>> ctors;
};

struct DepFixpointResult {
    // levels[n][index] = element encodings ("*" or sup_U(...)), sorted
    std::vector<std::map<std::string, std::vector<std::string>>> levels;
    bool stabilized;
    std::map<std::string, std::size_t> sizes_at(std::size_t level) const;
};

DepFixpointResult dep_fixpoint(const DepPolyFunctor& f, std::size_t cap);

// ---------------------------------------------------------------- free algebras

/// Equation side: first-order term over the signature with variables.
struct TermPat {
    bool is_var = false;
    std::string head;
    std::vector<TermPat> args;
};

TermPat pat_var(std::string name);
TermPat pat_app(std::string head, std::vector<TermPat> args = {});

struct FreeAlgebraResult {
    std::vector<WTree> term_trees;               // enumerated to cap applications
    std::vector<std::string> terms;              // their encodings, sorted
    std::map<std::string, std::string> cls;      // term -> representative
    std::vector<std::string> class_reps;
    bool approximate;                            // equations present: classes
                                                 // may merge past the cap
    PolyFunctor pf;                              // signature + generators
};

/// Term algebra on `sig` over nullary generator symbols, enumerated to `cap`
/// nested applications, quotiented by the congruence generated by the
/// equations restricted to the enumerated terms.
FreeAlgebraResult free_algebra(const std::map<std::string, std::size_t>& sig,
                               const FinSetObj& generators,
                               const std::vector<std::pair<TermPat, TermPat>>& equations,
                               std::size_t cap);

struct UniversalReport {
    bool ok;
    std::size_t algebras_checked;
    std::vector<std::string> notes;
};

/// Exhaustive universal-property check: for every algebra of the signature
/// with carrier size <= bound satisfying the equations and every generator
/// assignment, evaluation is the unique structure-respecting extension on
/// the enumerated classes.
UniversalReport free_universal_report(const FreeAlgebraResult& fr,
                                      const std::map<std::string, std::size_t>& sig,
                                      const FinSetObj& generators,
                                      const std::vector<std::pair<TermPat, TermPat>>& equations,
                                      std::size_t bound);

} // namespace pretop::wtypes
