#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "pretop/category.hpp"
#include "pretop/finset.hpp"
#include "pretop/fintop.hpp"
#include "pretop/psh.hpp"

namespace pretop {

/// Tagged finite-limit environment: finite sets, finite spaces, or finite
/// presheaves over a fixed base. The completion and square machinery is
/// written against this surface so one implementation runs in all three.
class Ambient {
public:
    enum class Kind { FinSet, FinTop, FinPsh };

    static Ambient finset() { return Ambient(Kind::FinSet, nullptr); }
    static Ambient fintop() { return Ambient(Kind::FinTop, nullptr); }
    static Ambient finpsh(CategoryRef base) { return Ambient(Kind::FinPsh, std::move(base)); }

    Kind kind() const { return kind_; }
    const CategoryRef& base() const { return base_; }

    bool operator==(const Ambient& o) const {
        if (kind_ != o.kind_) return false;
        if (kind_ != Kind::FinPsh) return true;
        return *base_ == *o.base_;
    }

private:
    Ambient(Kind k, CategoryRef b) : kind_(k), base_(std::move(b)) {}
    Kind kind_;
    CategoryRef base_;
};

struct AObj {
    std::variant<FinSetObj, FinTopSpace, Presheaf> v;

    const FinSetObj& fs() const { return std::get<FinSetObj>(v); }
    const FinTopSpace& ft() const { return std::get<FinTopSpace>(v); }
    const Presheaf& psh() const { return std::get<Presheaf>(v); }
    std::size_t size() const;

    bool operator==(const AObj&) const = default;
};

struct AMap {
    std::variant<FinSetMap, FinTopMap, NatTrans> v;

    const FinSetMap& fs() const { return std::get<FinSetMap>(v); }
    const FinTopMap& ft() const { return std::get<FinTopMap>(v); }
    const NatTrans& psh() const { return std::get<NatTrans>(v); }
    AObj dom() const;
    AObj cod() const;

    bool operator==(const AMap&) const = default;
};

AMap amb_identity(const AObj& x);
AMap amb_compose(const AMap& g, const AMap& f);

bool amb_is_cover(const AMap& f);
bool amb_is_mono(const AMap& f);

AObj amb_terminal(const Ambient& amb);
AMap amb_to_terminal(const Ambient& amb, const AObj& x);

struct AmbProduct {
    AObj obj;
    AMap proj1;
    AMap proj2;
};
AmbProduct amb_product(const AObj& x, const AObj& y);
AMap amb_pair(const AmbProduct& p, const AMap& f, const AMap& g);

struct AmbPullback {
    AObj obj;
    AMap proj1;
    AMap proj2;
};
AmbPullback amb_pullback(const AMap& f, const AMap& g);
// Mediating map (u, v): W -> pullback for a commuting cone.
AMap amb_into_pullback(const AmbPullback& p, const AMap& u, const AMap& v);

struct AmbEqualizer {
    AObj obj;
    AMap mono;
};
AmbEqualizer amb_equalizer(const AMap& f, const AMap& g);

struct AmbFactorization {
    AObj image;
    AMap cover;
    AMap mono;
};
AmbFactorization amb_image_factorization(const AMap& f);

std::vector<AMap> amb_hom(const AObj& x, const AObj& y);

// Weakly initial cover: identity in FinSet/FinTop, the representable-sum
// cover in FinPsh.
AMap amb_canonical_cover(const AObj& x);

// Sample object universe up to a size bound (carriers / stalks), canonical
// labels, deterministic order.
std::vector<AObj> amb_objects_upto(const Ambient& amb, std::size_t bound);

// Elements of an object as (stage, label) pairs; the stage is "" outside
// presheaf ambients. Deterministic order.
std::vector<std::pair<std::string, std::string>> amb_elements(const AObj& x);
// Elementwise application.
const std::string& amb_apply(const AMap& f, const std::string& stage,
                             const std::string& elem);
// Subobject on a chosen element set (must be action-closed for presheaves;
// carries the subspace topology for spaces).
AObj amb_subobject(const AObj& total, const std::set<std::pair<std::string, std::string>>& keep);
AMap amb_sub_include(const AObj& sub, const AObj& total);

// Stable structural key, used for caching and report determinism.
std::string amb_encode(const AObj& x);
std::string amb_encode(const AMap& f);

// First structure map whose values all satisfy `admissible(stage, from, to)`,
// or nothing. Constraint-directed: far cheaper than filtering amb_hom.
std::optional<AMap> amb_find_map(
    const AObj& from, const AObj& to,
    const std::function<bool(const std::string&, const std::string&, const std::string&)>&
        admissible);

// Coequalizer of a parallel pair (exact ambients: FinSet and FinPsh).
AMap amb_coequalizer(const AMap& r0, const AMap& r1);

bool amb_isomorphic(const AObj& x, const AObj& y);

} // namespace pretop
