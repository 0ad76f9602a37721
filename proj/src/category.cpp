#include "pretop/category.hpp"

#include <algorithm>

namespace pretop {

bool FiniteCategory::has_object(const std::string& x) const {
    return std::find(objects.begin(), objects.end(), x) != objects.end();
}

bool FiniteCategory::has_arrow(const std::string& f) const {
    return std::any_of(arrows.begin(), arrows.end(),
                       [&](const Arrow& a) { return a.id == f; });
}

const Arrow& FiniteCategory::arrow(const std::string& f) const {
    for (const auto& a : arrows)
        if (a.id == f) return a;
    throw Error("UnknownArrow", "no arrow named '" + f + "' in category " + name);
}

const std::string& FiniteCategory::id_of(const std::string& obj) const {
    auto it = identity.find(obj);
    if (it == identity.end())
        throw Error("UnknownObject", "no identity for object '" + obj + "'");
    return it->second;
}

const std::string& FiniteCategory::compose(const std::string& g, const std::string& f) const {
    auto it = comp.find({g, f});
    if (it == comp.end())
        throw Error("BadComposite", "composite " + g + " o " + f + " not in table");
    return it->second;
}

std::vector<std::string> FiniteCategory::hom(const std::string& x, const std::string& y) const {
    std::vector<std::string> out;
    for (const auto& a : arrows)
        if (a.dom == x && a.cod == y) out.push_back(a.id);
    return out;
}

std::vector<std::string> FiniteCategory::arrows_into(const std::string& y) const {
    std::vector<std::string> out;
    for (const auto& a : arrows)
        if (a.cod == y) out.push_back(a.id);
    return out;
}

std::optional<CategoryViolation> validate_category(const FiniteCategory& c) {
    // distinct ids
    {
        std::set<std::string> seen;
        for (const auto& o : c.objects)
            if (!seen.insert(o).second)
                return CategoryViolation{"DuplicateName", {o}, "duplicate object id " + o};
        seen.clear();
        for (const auto& a : c.arrows)
            if (!seen.insert(a.id).second)
                return CategoryViolation{"DuplicateName", {a.id}, "duplicate arrow id " + a.id};
    }
    for (const auto& a : c.arrows) {
        if (!c.has_object(a.dom) || !c.has_object(a.cod))
            return CategoryViolation{"UnknownObject",
                                     {a.id, a.dom, a.cod},
                                     "arrow " + a.id + " has unknown endpoint"};
    }
    // identities present and well-typed
    for (const auto& o : c.objects) {
        auto it = c.identity.find(o);
        if (it == c.identity.end())
            return CategoryViolation{"MissingIdentity", {o}, "object " + o + " has no identity"};
        if (!c.has_arrow(it->second))
            return CategoryViolation{"MissingIdentity", {o, it->second}, "identity arrow missing"};
        const Arrow& a = c.arrow(it->second);
        if (a.dom != o || a.cod != o)
            return CategoryViolation{"MissingIdentity", {o, a.id}, "identity arrow not an endomap"};
    }
    // composition table: defined exactly on composable pairs, endpoints right
    for (const auto& g : c.arrows) {
        for (const auto& f : c.arrows) {
            bool composable = (f.cod == g.dom);
            auto it = c.comp.find({g.id, f.id});
            if (composable && it == c.comp.end())
                return CategoryViolation{"BadComposite", {g.id, f.id},
                                         "missing composite " + g.id + " o " + f.id};
            if (!composable && it != c.comp.end())
                return CategoryViolation{"BadComposite", {g.id, f.id},
                                         "composite of non-composable pair listed"};
            if (composable) {
                if (!c.has_arrow(it->second))
                    return CategoryViolation{"BadComposite", {g.id, f.id, it->second},
                                             "composite names unknown arrow"};
                const Arrow& gf = c.arrow(it->second);
                if (gf.dom != f.dom || gf.cod != g.cod)
                    return CategoryViolation{"BadComposite", {g.id, f.id, gf.id},
                                             "composite has wrong endpoints"};
            }
        }
    }
    // unit laws
    for (const auto& f : c.arrows) {
        const std::string& idc = c.identity.at(f.cod);
        const std::string& idd = c.identity.at(f.dom);
        if (c.compose(idc, f.id) != f.id)
            return CategoryViolation{"MissingIdentity", {idc, f.id},
                                     "left unit law fails at " + f.id};
        if (c.compose(f.id, idd) != f.id)
            return CategoryViolation{"MissingIdentity", {f.id, idd},
                                     "right unit law fails at " + f.id};
    }
    // associativity
    for (const auto& h : c.arrows)
        for (const auto& g : c.arrows)
            for (const auto& f : c.arrows) {
                if (f.cod != g.dom || g.cod != h.dom) continue;
                const std::string& a = c.compose(h.id, c.compose(g.id, f.id));
                const std::string& b = c.compose(c.compose(h.id, g.id), f.id);
                if (a != b)
                    return CategoryViolation{"NonAssociative", {h.id, g.id, f.id},
                                             "h(gf) = " + a + " but (hg)f = " + b};
            }
    return std::nullopt;
}

CategoryRef require_valid(FiniteCategory c) {
    if (auto v = validate_category(c))
        throw Error(v->code, v->message);
    return std::make_shared<const FiniteCategory>(std::move(c));
}

FiniteCategory complete_identities(FiniteCategory c) {
    for (const auto& o : c.objects) {
        if (c.identity.count(o)) continue;
        std::string id = "id_" + o;
        c.identity[o] = id;
        if (!c.has_arrow(id)) c.arrows.push_back({id, o, o});
    }
    // unit composites
    for (const auto& f : c.arrows) {
        auto idc = c.identity.find(f.cod);
        auto idd = c.identity.find(f.dom);
        if (idc != c.identity.end() && !c.comp.count({idc->second, f.id}))
            c.comp[{idc->second, f.id}] = f.id;
        if (idd != c.identity.end() && !c.comp.count({f.id, idd->second}))
            c.comp[{f.id, idd->second}] = f.id;
    }
    return c;
}

FiniteCategory terminal_category() {
    FiniteCategory c;
    c.name = "1";
    c.objects = {"*"};
    return complete_identities(std::move(c));
}

FiniteCategory arrow_category() {
    FiniteCategory c;
    c.name = "arrow";
    c.objects = {"C", "D"};
    c.arrows = {{"u", "D", "C"}};
    return complete_identities(std::move(c));
}

FiniteCategory arrow_category_01() {
    FiniteCategory c;
    c.name = "arrow01";
    c.objects = {"0", "1"};
    c.arrows = {{"u", "0", "1"}};
    return complete_identities(std::move(c));
}

FiniteCategory parallel_pair_category() {
    FiniteCategory c;
    c.name = "pair";
    c.objects = {"a", "b"};
    c.arrows = {{"u", "a", "b"}, {"v", "a", "b"}};
    return complete_identities(std::move(c));
}

FiniteCategory span_category() {
    FiniteCategory c;
    c.name = "span";
    c.objects = {"s", "l", "r"};
    c.arrows = {{"f", "s", "l"}, {"g", "s", "r"}};
    return complete_identities(std::move(c));
}

FiniteCategory chain3_category() {
    FiniteCategory c;
    c.name = "chain3";
    c.objects = {"0", "1", "2"};
    c.arrows = {{"f", "0", "1"}, {"g", "1", "2"}, {"gf", "0", "2"}};
    c.comp[{"g", "f"}] = "gf";
    return complete_identities(std::move(c));
}

std::optional<CategoryViolation> validate_functor(const Functor& fn) {
    const FiniteCategory& s = *fn.source;
    const FiniteCategory& t = *fn.target;
    for (const auto& o : s.objects) {
        auto it = fn.on_objects.find(o);
        if (it == fn.on_objects.end() || !t.has_object(it->second))
            return CategoryViolation{"UnknownObject", {o}, "object map incomplete at " + o};
    }
    for (const auto& a : s.arrows) {
        auto it = fn.on_arrows.find(a.id);
        if (it == fn.on_arrows.end() || !t.has_arrow(it->second))
            return CategoryViolation{"UnknownArrow", {a.id}, "arrow map incomplete at " + a.id};
        const Arrow& fa = t.arrow(it->second);
        if (fa.dom != fn.on_objects.at(a.dom) || fa.cod != fn.on_objects.at(a.cod))
            return CategoryViolation{"BadComposite", {a.id}, "functor breaks dom/cod at " + a.id};
    }
    for (const auto& o : s.objects)
        if (fn.on_arrows.at(s.id_of(o)) != t.id_of(fn.on_objects.at(o)))
            return CategoryViolation{"MissingIdentity", {o}, "functor breaks identity at " + o};
    for (const auto& g : s.arrows)
        for (const auto& f : s.arrows) {
            if (f.cod != g.dom) continue;
            const std::string& lhs = fn.on_arrows.at(s.compose(g.id, f.id));
            const std::string& rhs =
                t.compose(fn.on_arrows.at(g.id), fn.on_arrows.at(f.id));
            if (lhs != rhs)
                return CategoryViolation{"BadComposite", {g.id, f.id},
                                         "functor breaks composition at (" + g.id + "," + f.id + ")"};
        }
    return std::nullopt;
}

const std::vector<std::string>& Presheaf::stalk_at(const std::string& obj) const {
    static const std::vector<std::string> empty;
    auto it = stalk.find(obj);
    return it == stalk.end() ? empty : it->second;
}

const std::string& Presheaf::restrict(const std::string& elem, const std::string& arrow) const {
    auto it = act.find({arrow, elem});
    if (it == act.end())
        throw Error("BadAction", "presheaf action undefined at (" + arrow + "," + elem + ")");
    return it->second;
}

std::size_t Presheaf::total_size() const {
    std::size_t n = 0;
    for (const auto& [o, s] : stalk) n += s.size();
    return n;
}

bool Presheaf::has_elem(const std::string& obj, const std::string& elem) const {
    const auto& s = stalk_at(obj);
    return std::find(s.begin(), s.end(), elem) != s.end();
}

std::optional<PresheafViolation> validate_presheaf(const Presheaf& p) {
    if (!p.base) return PresheafViolation{"BaseMismatch", "presheaf has no base category"};
    const FiniteCategory& c = *p.base;
    for (const auto& [o, elems] : p.stalk) {
        if (!c.has_object(o))
            return PresheafViolation{"UnknownObject", "stalk over unknown object " + o};
        std::set<std::string> seen(elems.begin(), elems.end());
        if (seen.size() != elems.size())
            return PresheafViolation{"DuplicateName", "duplicate element in stalk " + o};
    }
    // action total, well-typed, lawful
    for (const auto& a : c.arrows) {
        for (const auto& e : p.stalk_at(a.cod)) {
            auto it = p.act.find({a.id, e});
            if (it == p.act.end())
                return PresheafViolation{"BadAction",
                                         "action missing at (" + a.id + "," + e + ")"};
            if (!p.has_elem(a.dom, it->second))
                return PresheafViolation{"BadAction",
                                         "action lands outside stalk at (" + a.id + "," + e + ")"};
        }
    }
    for (const auto& [k, v] : p.act) {
        if (!c.has_arrow(k.first))
            return PresheafViolation{"UnknownArrow", "action keyed by unknown arrow " + k.first};
        if (!p.has_elem(c.cod(k.first), k.second))
            return PresheafViolation{"BadAction", "action keyed by stray element " + k.second};
        (void)v;
    }
    // p · id = p
    for (const auto& o : c.objects)
        for (const auto& e : p.stalk_at(o))
            if (p.restrict(e, c.id_of(o)) != e)
                return PresheafViolation{"BadAction", "identity action moves " + e + " at " + o};
    // (p · f) · g = p · (fg)  for f: D -> C, g: E -> D
    for (const auto& f : c.arrows)
        for (const auto& g : c.arrows) {
            if (g.cod != f.dom) continue;
            const std::string& fg = c.compose(f.id, g.id);
            for (const auto& e : p.stalk_at(f.cod))
                if (p.restrict(p.restrict(e, f.id), g.id) != p.restrict(e, fg))
                    return PresheafViolation{"BadAction",
                                             "action breaks composition at (" + f.id + "," +
                                                 g.id + "," + e + ")"};
        }
    return std::nullopt;
}

Presheaf require_valid(Presheaf p) {
    if (auto v = validate_presheaf(p)) throw Error(v->code, v->message);
    return p;
}

Presheaf yoneda_embed(const CategoryRef& c, const std::string& x) {
    if (!c->has_object(x)) throw Error("UnknownObject", "yoneda at unknown object " + x);
    Presheaf p;
    p.base = c;
    for (const auto& o : c->objects) p.stalk[o] = c->hom(o, x);
    for (const auto& f : c->arrows)            // f: D -> C
        for (const auto& g : p.stalk_at(f.cod)) // g: C -> x
            p.act[{f.id, g}] = c->compose(g, f.id);
    return require_valid(std::move(p));
}

Presheaf terminal_presheaf(const CategoryRef& c) {
    Presheaf p;
    p.base = c;
    for (const auto& o : c->objects) p.stalk[o] = {"*"};
    for (const auto& f : c->arrows) p.act[{f.id, "*"}] = "*";
    return require_valid(std::move(p));
}

Presheaf initial_presheaf(const CategoryRef& c) {
    Presheaf p;
    p.base = c;
    for (const auto& o : c->objects) p.stalk[o] = {};
    return require_valid(std::move(p));
}

const std::string& NatTrans::apply(const std::string& obj, const std::string& elem) const {
    auto it = component.find({obj, elem});
    if (it == component.end())
        throw Error("BadComponent", "component undefined at (" + obj + "," + elem + ")");
    return it->second;
}

bool natural(const NatTrans& t) {
    const FiniteCategory& c = *t.dom.base;
    for (const auto& f : c.arrows)              // f: D -> C
        for (const auto& e : t.dom.stalk_at(f.cod))
            if (t.apply(f.dom, t.dom.restrict(e, f.id)) !=
                t.cod.restrict(t.apply(f.cod, e), f.id))
                return false;
    return true;
}

std::vector<NatTrans> presheaf_hom(const Presheaf& p, const Presheaf& q) {
    if (!p.base || !q.base || !(*p.base == *q.base))
        throw Error("BaseMismatch", "presheaf_hom over different base categories");
    const FiniteCategory& c = *p.base;

    // Flatten domain elements; assign images object by object with naturality
    // checked as soon as both sides of a constraint are fixed.
    std::vector<std::pair<std::string, std::string>> slots; // (object, element)
    for (const auto& o : c.objects)
        for (const auto& e : p.stalk_at(o)) slots.push_back({o, e});

    std::vector<NatTrans> out;
    NatTrans cur{p, q, {}};

    auto consistent = [&](std::size_t upto) {
        // check all naturality squares whose two slots are both assigned
        for (const auto& f : c.arrows) {
            for (const auto& e : p.stalk_at(f.cod)) {
                auto src = cur.component.find({f.cod, e});
                if (src == cur.component.end()) continue;
                auto dst = cur.component.find({f.dom, p.restrict(e, f.id)});
                if (dst == cur.component.end()) continue;
                if (q.restrict(src->second, f.id) != dst->second) return false;
            }
        }
        (void)upto;
        return true;
    };

    // Depth-first over slots.
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == slots.size()) {
            out.push_back(cur);
            return;
        }
        const auto& [o, e] = slots[i];
        for (const auto& v : q.stalk_at(o)) {
            cur.component[{o, e}] = v;
            if (consistent(i)) self(self, i + 1);
            cur.component.erase({o, e});
        }
    };
    rec(rec, 0);
    return out;
}

NatTrans psh_identity(const Presheaf& p) {
    NatTrans t{p, p, {}};
    for (const auto& [o, elems] : p.stalk)
        for (const auto& e : elems) t.component[{o, e}] = e;
    return t;
}

NatTrans psh_compose(const NatTrans& g, const NatTrans& f) {
    if (!(f.cod == g.dom)) throw Error("ShapeMismatch", "psh_compose: middle objects differ");
    NatTrans t{f.dom, g.cod, {}};
    for (const auto& [k, v] : f.component) t.component[k] = g.apply(k.first, v);
    return t;
}

bool psh_is_iso(const NatTrans& t) {
    // componentwise bijection suffices
    for (const auto& [o, elems] : t.dom.stalk) {
        std::set<std::string> image;
        for (const auto& e : elems) image.insert(t.apply(o, e));
        if (image.size() != elems.size()) return false;
        if (image.size() != t.cod.stalk_at(o).size()) return false;
    }
    for (const auto& [o, elems] : t.cod.stalk)
        if (t.dom.stalk_at(o).size() != elems.size()) return false;
    return true;
}

} // namespace pretop
