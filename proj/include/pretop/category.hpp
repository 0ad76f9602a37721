#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pretop/error.hpp"

namespace pretop {

/// A finitely presented category: object ids, arrow ids with dom/cod, and a
/// full composition table. Validation is exhaustive (these categories have a
/// handful of arrows, so the O(n^3) associativity sweep is free).
struct Arrow {
    std::string id;
    std::string dom;
    std::string cod;

    bool operator==(const Arrow&) const = default;
    auto operator<=>(const Arrow&) const = default;
};

struct FiniteCategory {
    std::string name;
    std::vector<std::string> objects;
    std::vector<Arrow> arrows;
    std::map<std::string, std::string> identity;                       // object -> arrow id
    std::map<std::pair<std::string, std::string>, std::string> comp;   // (g, f) -> g∘f

    bool has_object(const std::string& x) const;
    bool has_arrow(const std::string& f) const;
    const Arrow& arrow(const std::string& f) const;
    const std::string& dom(const std::string& f) const { return arrow(f).dom; }
    const std::string& cod(const std::string& f) const { return arrow(f).cod; }
    const std::string& id_of(const std::string& obj) const;

    // g∘f, defined when cod(f) = dom(g).
    const std::string& compose(const std::string& g, const std::string& f) const;

    // All arrows X -> Y, in declaration order.
    std::vector<std::string> hom(const std::string& x, const std::string& y) const;
    // All arrows with the given codomain.
    std::vector<std::string> arrows_into(const std::string& y) const;

    bool operator==(const FiniteCategory&) const = default;
};

using CategoryRef = std::shared_ptr<const FiniteCategory>;

/// First violated law with witnesses, or nothing if the category is lawful.
struct CategoryViolation {
    std::string code;                    // MissingIdentity | NonAssociative | BadComposite | ...
    std::vector<std::string> witnesses;  // arrow/object ids involved
    std::string message;
};

std::optional<CategoryViolation> validate_category(const FiniteCategory& c);

// Throwing form; returns a shared ref for downstream structures to hang on to.
CategoryRef require_valid(FiniteCategory c);

// Fills in missing identity arrows (id_<obj>) and all composites that are
// forced by the unit laws; complains only if a listed composite conflicts.
FiniteCategory complete_identities(FiniteCategory c);

// ---- standard small categories used across the test corpus ----
FiniteCategory terminal_category();            // one object "*"
FiniteCategory arrow_category();               // objects C, D; u: D -> C
FiniteCategory arrow_category_01();            // objects 0, 1; u: 0 -> 1
FiniteCategory parallel_pair_category();       // objects a, b; u, v: a -> b
FiniteCategory span_category();                // objects s, l, r; f: s->l, g: s->r
FiniteCategory chain3_category();              // 0 -> 1 -> 2 with composite

/// Functor between finite categories; preservation of identities, dom/cod and
/// composition is checked exhaustively.
struct Functor {
    CategoryRef source;
    CategoryRef target;
    std::map<std::string, std::string> on_objects;
    std::map<std::string, std::string> on_arrows;
};

std::optional<CategoryViolation> validate_functor(const Functor& f);

/// Presheaf on a finite category: a finite stalk per object and a
/// contravariant action. act is keyed by (arrow f: D -> C, element of
/// stalk(C)) and lands in stalk(D).
struct Presheaf {
    CategoryRef base;
    std::map<std::string, std::vector<std::string>> stalk;
    std::map<std::pair<std::string, std::string>, std::string> act;

    const std::vector<std::string>& stalk_at(const std::string& obj) const;
    const std::string& restrict(const std::string& elem, const std::string& arrow) const;
    std::size_t total_size() const;
    bool has_elem(const std::string& obj, const std::string& elem) const;

    bool operator==(const Presheaf&) const = default;
};

struct PresheafViolation {
    std::string code;
    std::string message;
};

std::optional<PresheafViolation> validate_presheaf(const Presheaf& p);

// Asserts the action laws; every constructor in the library funnels through
// this so no lawless presheaf circulates.
Presheaf require_valid(Presheaf p);

Presheaf yoneda_embed(const CategoryRef& c, const std::string& x);
Presheaf terminal_presheaf(const CategoryRef& c);
Presheaf initial_presheaf(const CategoryRef& c);

/// Natural transformation presented by components: (object, element of
/// P(object)) -> element of Q(object).
struct NatTrans {
    Presheaf dom;
    Presheaf cod;
    std::map<std::pair<std::string, std::string>, std::string> component;

    const std::string& apply(const std::string& obj, const std::string& elem) const;

    bool operator==(const NatTrans&) const = default;
};

bool natural(const NatTrans& t);

// Exhaustive enumeration of all natural transformations P -> Q.
// Throws Error("BaseMismatch") if the bases differ.
std::vector<NatTrans> presheaf_hom(const Presheaf& p, const Presheaf& q);

NatTrans psh_identity(const Presheaf& p);
NatTrans psh_compose(const NatTrans& g, const NatTrans& f);
bool psh_is_iso(const NatTrans& t);

} // namespace pretop
