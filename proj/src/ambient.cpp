#include "pretop/ambient.hpp"

namespace pretop {

namespace {

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void mixed() { throw Error("AmbientMismatch", "maps from different ambients"); }

} // namespace

std::size_t AObj::size() const {
    return std::visit(overloaded{[](const FinSetObj& x) { return x.elems.size(); },
                                 [](const FinTopSpace& x) { return x.carrier.elems.size(); },
                                 [](const Presheaf& x) { return x.total_size(); }},
                      v);
}

AObj AMap::dom() const {
    return std::visit(overloaded{[](const FinSetMap& f) { return AObj{f.dom}; },
                                 [](const FinTopMap& f) { return AObj{f.dom}; },
                                 [](const NatTrans& f) { return AObj{f.dom}; }},
                      v);
}

AObj AMap::cod() const {
    return std::visit(overloaded{[](const FinSetMap& f) { return AObj{f.cod}; },
                                 [](const FinTopMap& f) { return AObj{f.cod}; },
                                 [](const NatTrans& f) { return AObj{f.cod}; }},
                      v);
}

AMap amb_identity(const AObj& x) {
    return std::visit(overloaded{[](const FinSetObj& o) { return AMap{fs_identity(o)}; },
                                 [](const FinTopSpace& o) { return AMap{ft_identity(o)}; },
                                 [](const Presheaf& o) { return AMap{psh_identity(o)}; }},
                      x.v);
}

AMap amb_compose(const AMap& g, const AMap& f) {
    if (f.v.index() != g.v.index()) mixed();
    if (auto* ff = std::get_if<FinSetMap>(&f.v)) return AMap{fs_compose(g.fs(), *ff)};
    if (auto* ff = std::get_if<FinTopMap>(&f.v)) return AMap{ft_compose(g.ft(), *ff)};
    return AMap{psh_compose(g.psh(), f.psh())};
}

bool amb_is_cover(const AMap& f) {
    return std::visit(overloaded{[](const FinSetMap& m) { return fs_is_surjective(m); },
                                 [](const FinTopMap& m) { return ft_is_cover(m); },
                                 [](const NatTrans& m) { return psh_is_cover(m); }},
                      f.v);
}

bool amb_is_mono(const AMap& f) {
    return std::visit(overloaded{[](const FinSetMap& m) { return fs_is_injective(m); },
                                 [](const FinTopMap& m) { return ft_is_mono(m); },
                                 [](const NatTrans& m) { return psh_is_mono(m); }},
                      f.v);
}

AObj amb_terminal(const Ambient& amb) {
    switch (amb.kind()) {
        case Ambient::Kind::FinSet: return AObj{fs_terminal()};
        case Ambient::Kind::FinTop: return AObj{ft_terminal()};
        case Ambient::Kind::FinPsh: return AObj{terminal_presheaf(amb.base())};
    }
    throw Error("AmbientMismatch", "unreachable");
}

AMap amb_to_terminal(const Ambient& amb, const AObj& x) {
    switch (amb.kind()) {
        case Ambient::Kind::FinSet: return AMap{fs_to_terminal(x.fs())};
        case Ambient::Kind::FinTop: return AMap{ft_to_terminal(x.ft())};
        case Ambient::Kind::FinPsh: return AMap{psh_to_terminal(x.psh())};
    }
    throw Error("AmbientMismatch", "unreachable");
}

AmbProduct amb_product(const AObj& x, const AObj& y) {
    if (x.v.index() != y.v.index()) mixed();
    if (auto* o = std::get_if<FinSetObj>(&x.v)) {
        auto p = fs_product(*o, y.fs());
        return {AObj{p.obj}, AMap{p.proj1}, AMap{p.proj2}};
    }
    if (auto* o = std::get_if<FinTopSpace>(&x.v)) {
        auto p = ft_product(*o, y.ft());
        return {AObj{p.obj}, AMap{p.proj1}, AMap{p.proj2}};
    }
    auto p = psh_product(x.psh(), y.psh());
    return {AObj{p.obj}, AMap{p.proj1}, AMap{p.proj2}};
}

AMap amb_pair(const AmbProduct& p, const AMap& f, const AMap& g) {
    if (auto* ff = std::get_if<FinSetMap>(&f.v)) {
        FsProduct pr{p.obj.fs(), p.proj1.fs(), p.proj2.fs()};
        return AMap{fs_pair(pr, *ff, g.fs())};
    }
    if (auto* ff = std::get_if<FinTopMap>(&f.v)) {
        FinTopMap out{ff->dom, p.obj.ft(), {}};
        for (const auto& e : ff->dom.carrier.elems)
            out.table[e] = lbl_pair((*ff)(e), g.ft()(e));
        return AMap{out};
    }
    PshProduct pr{p.obj.psh(), p.proj1.psh(), p.proj2.psh()};
    return AMap{psh_pair(pr, f.psh(), g.psh())};
}

AmbPullback amb_pullback(const AMap& f, const AMap& g) {
    if (f.v.index() != g.v.index()) mixed();
    if (auto* ff = std::get_if<FinSetMap>(&f.v)) {
        auto p = fs_pullback(*ff, g.fs());
        return {AObj{p.obj}, AMap{p.proj1}, AMap{p.proj2}};
    }
    if (auto* ff = std::get_if<FinTopMap>(&f.v)) {
        auto p = ft_pullback(*ff, g.ft());
        return {AObj{p.obj}, AMap{p.proj1}, AMap{p.proj2}};
    }
    auto p = psh_pullback(f.psh(), g.psh());
    return {AObj{p.obj}, AMap{p.proj1}, AMap{p.proj2}};
}

AMap amb_into_pullback(const AmbPullback& p, const AMap& u, const AMap& v) {
    if (u.v.index() != v.v.index()) mixed();
    if (auto* uu = std::get_if<FinSetMap>(&u.v)) {
        FsPullback pb{p.obj.fs(), p.proj1.fs(), p.proj2.fs()};
        return AMap{fs_pullback_pair(pb, *uu, v.fs())};
    }
    if (auto* uu = std::get_if<FinTopMap>(&u.v)) {
        FinTopMap out{uu->dom, p.obj.ft(), {}};
        for (const auto& e : uu->dom.carrier.elems)
            out.table[e] = lbl_pair((*uu)(e), v.ft()(e));
        return AMap{out};
    }
    const NatTrans& un = u.psh();
    const NatTrans& vn = v.psh();
    NatTrans t{un.dom, p.obj.psh(), {}};
    for (const auto& [k, val] : un.component)
        t.component[k] = lbl_pair(val, vn.component.at(k));
    return AMap{t};
}

AmbEqualizer amb_equalizer(const AMap& f, const AMap& g) {
    if (f.v.index() != g.v.index()) mixed();
    if (auto* ff = std::get_if<FinSetMap>(&f.v)) {
        auto e = fs_equalizer(*ff, g.fs());
        return {AObj{e.obj}, AMap{e.mono}};
    }
    if (auto* ff = std::get_if<FinTopMap>(&f.v)) {
        auto e = ft_equalizer(*ff, g.ft());
        return {AObj{e.obj}, AMap{e.mono}};
    }
    auto e = psh_equalizer(f.psh(), g.psh());
    return {AObj{e.obj}, AMap{e.mono}};
}

AmbFactorization amb_image_factorization(const AMap& f) {
    if (auto* ff = std::get_if<FinSetMap>(&f.v)) {
        auto r = fs_image_factorization(*ff);
        return {AObj{r.image}, AMap{r.cover}, AMap{r.mono}};
    }
    if (auto* ff = std::get_if<FinTopMap>(&f.v)) {
        auto r = ft_image_factorization(*ff);
        return {AObj{r.image}, AMap{r.cover}, AMap{r.mono}};
    }
    auto r = psh_image_factorization(f.psh());
    return {AObj{r.image}, AMap{r.cover}, AMap{r.mono}};
}

std::vector<AMap> amb_hom(const AObj& x, const AObj& y) {
    if (x.v.index() != y.v.index()) mixed();
    std::vector<AMap> out;
    if (auto* o = std::get_if<FinSetObj>(&x.v)) {
        for (auto& f : fs_all_maps(*o, y.fs())) out.push_back(AMap{std::move(f)});
        return out;
    }
    if (auto* o = std::get_if<FinTopSpace>(&x.v)) {
        for (auto& f : ft_all_maps(*o, y.ft())) out.push_back(AMap{std::move(f)});
        return out;
    }
    for (auto& f : presheaf_hom(x.psh(), y.psh())) out.push_back(AMap{std::move(f)});
    return out;
}

AMap amb_canonical_cover(const AObj& x) {
    return std::visit(
        overloaded{[](const FinSetObj& o) { return AMap{fs_identity(o)}; },
                   [](const FinTopSpace& o) { return AMap{ft_identity(o)}; },
                   [](const Presheaf& o) { return AMap{psh_canonical_cover(o).cover}; }},
        x.v);
}

std::vector<std::pair<std::string, std::string>> amb_elements(const AObj& x) {
    std::vector<std::pair<std::string, std::string>> out;
    if (auto* o = std::get_if<FinSetObj>(&x.v)) {
        for (const auto& e : o->elems) out.push_back({"", e});
        return out;
    }
    if (auto* o = std::get_if<FinTopSpace>(&x.v)) {
        for (const auto& e : o->carrier.elems) out.push_back({"", e});
        return out;
    }
    const Presheaf& p = x.psh();
    for (const auto& obj : p.base->objects)
        for (const auto& e : p.stalk_at(obj)) out.push_back({obj, e});
    return out;
}

const std::string& amb_apply(const AMap& f, const std::string& stage,
                             const std::string& elem) {
    if (auto* m = std::get_if<FinSetMap>(&f.v)) return (*m)(elem);
    if (auto* m = std::get_if<FinTopMap>(&f.v)) return (*m)(elem);
    return f.psh().apply(stage, elem);
}

AObj amb_subobject(const AObj& total,
                   const std::set<std::pair<std::string, std::string>>& keep) {
    if (auto* o = std::get_if<FinSetObj>(&total.v)) {
        FinSetObj sub;
        for (const auto& e : o->elems)
            if (keep.count({"", e})) sub.elems.push_back(e);
        return AObj{sub};
    }
    if (auto* o = std::get_if<FinTopSpace>(&total.v)) {
        std::set<std::string> pts;
        for (const auto& [s, e] : keep) pts.insert(e);
        return AObj{ft_subspace(*o, pts)};
    }
    const Presheaf& p = total.psh();
    Presheaf sub;
    sub.base = p.base;
    for (const auto& obj : p.base->objects) {
        sub.stalk[obj] = {};
        for (const auto& e : p.stalk_at(obj))
            if (keep.count({obj, e})) sub.stalk[obj].push_back(e);
    }
    for (const auto& ar : p.base->arrows)
        for (const auto& e : sub.stalk_at(ar.cod))
            sub.act[{ar.id, e}] = p.restrict(e, ar.id);
    return AObj{require_valid(std::move(sub))};
}

AMap amb_sub_include(const AObj& sub, const AObj& total) {
    if (auto* o = std::get_if<FinSetObj>(&sub.v)) {
        FinSetMap inc{*o, total.fs(), {}};
        for (const auto& e : o->elems) inc.table[e] = e;
        return AMap{inc};
    }
    if (auto* o = std::get_if<FinTopSpace>(&sub.v)) {
        FinTopMap inc{*o, total.ft(), {}};
        for (const auto& e : o->carrier.elems) inc.table[e] = e;
        return AMap{inc};
    }
    NatTrans inc{sub.psh(), total.psh(), {}};
    for (const auto& [obj, elems] : sub.psh().stalk)
        for (const auto& e : elems) inc.component[{obj, e}] = e;
    return AMap{inc};
}

std::string amb_encode(const AObj& x) {
    std::string out;
    if (auto* o = std::get_if<FinTopSpace>(&x.v)) {
        out = "top[";
        for (const auto& u : o->opens) {
            out += "{";
            for (const auto& e : u) out += e + " ";
            out += "}";
        }
        out += "]";
    }
    if (auto* p = std::get_if<Presheaf>(&x.v)) {
        out = "psh[";
        for (const auto& [k, v] : p->act)
            out += k.first + "," + k.second + ">" + v + ";";
        out += "]";
    }
    out += "(";
    for (const auto& [s, e] : amb_elements(x)) out += s + ":" + e + ";";
    return out + ")";
}

std::string amb_encode(const AMap& f) {
    std::string out = amb_encode(f.dom()) + "->" + amb_encode(f.cod()) + "[";
    for (const auto& [s, e] : amb_elements(f.dom()))
        out += s + ":" + e + ">" + amb_apply(f, s, e) + ";";
    return out + "]";
}

std::optional<AMap> amb_find_map(
    const AObj& from, const AObj& to,
    const std::function<bool(const std::string&, const std::string&, const std::string&)>&
        admissible) {
    if (auto* o = std::get_if<FinSetObj>(&from.v)) {
        // any elementwise choice is a map: take the first admissible value
        FinSetMap f{*o, to.fs(), {}};
        for (const auto& e : o->elems) {
            bool hit = false;
            for (const auto& v : to.fs().elems)
                if (admissible("", e, v)) {
                    f.table[e] = v;
                    hit = true;
                    break;
                }
            if (!hit) return std::nullopt;
        }
        return AMap{f};
    }
    if (auto* o = std::get_if<FinTopSpace>(&from.v)) {
        // backtrack over admissible values; continuity checked at the leaves
        const auto& elems = o->carrier.elems;
        FinTopMap f{*o, to.ft(), {}};
        std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
            if (i == elems.size()) return ft_continuous(f.dom, f.cod, f.table);
            for (const auto& v : to.ft().carrier.elems) {
                if (!admissible("", elems[i], v)) continue;
                f.table[elems[i]] = v;
                if (rec(i + 1)) return true;
            }
            f.table.erase(elems[i]);
            return false;
        };
        if (rec(0)) return AMap{f};
        return std::nullopt;
    }
    auto nat = psh_find_nat(from.psh(), to.psh(), admissible);
    if (!nat) return std::nullopt;
    return AMap{*nat};
}

AMap amb_coequalizer(const AMap& r0, const AMap& r1) {
    if (r0.v.index() != r1.v.index()) mixed();
    if (auto* m0 = std::get_if<FinSetMap>(&r0.v)) return AMap{fs_coequalizer(*m0, r1.fs())};
    if (std::holds_alternative<NatTrans>(r0.v))
        return AMap{psh_coequalizer(r0.psh(), r1.psh())};
    throw Error("AmbientMismatch", "coequalizers need an exact ambient");
}

bool amb_isomorphic(const AObj& x, const AObj& y) {
    if (x.v.index() != y.v.index()) return false;
    if (std::holds_alternative<FinSetObj>(x.v)) return x.fs().size() == y.fs().size();
    if (std::holds_alternative<Presheaf>(x.v)) return psh_isomorphic(x.psh(), y.psh());
    for (const auto& f : ft_all_maps(x.ft(), y.ft()))
        for (const auto& g : ft_all_maps(y.ft(), x.ft()))
            if (ft_compose(g, f) == ft_identity(x.ft()) &&
                ft_compose(f, g) == ft_identity(y.ft()))
                return true;
    return x.size() == 0 && y.size() == 0;
}

std::vector<AObj> amb_objects_upto(const Ambient& amb, std::size_t bound) {
    std::vector<AObj> out;
    switch (amb.kind()) {
        case Ambient::Kind::FinSet:
            for (std::size_t n = 0; n <= bound; ++n) out.push_back(AObj{fs_canonical(n)});
            return out;
        case Ambient::Kind::FinTop:
            // discrete, indiscrete and Sierpinski-like samples per size
            for (std::size_t n = 0; n <= bound; ++n) {
                auto c = fs_canonical(n);
                out.push_back(AObj{ft_discrete(c)});
                if (n >= 2) out.push_back(AObj{ft_indiscrete(c)});
            }
            out.push_back(AObj{ft_sierpinski()});
            return out;
        case Ambient::Kind::FinPsh:
            for (auto& p : psh_universe(amb.base(), bound)) out.push_back(AObj{std::move(p)});
            return out;
    }
    throw Error("AmbientMismatch", "unreachable");
}

} // namespace pretop
