#include "pretop/fintop.hpp"

#include <algorithm>

namespace pretop {

namespace {

std::set<std::string> set_union(const std::set<std::string>& a, const std::set<std::string>& b) {
    std::set<std::string> out = a;
    out.insert(b.begin(), b.end());
    return out;
}

std::set<std::string> set_inter(const std::set<std::string>& a, const std::set<std::string>& b) {
    std::set<std::string> out;
    for (const auto& e : a)
        if (b.count(e)) out.insert(e);
    return out;
}

// Close a family under finite unions and intersections, adding ∅ and carrier.
std::set<std::set<std::string>> close_family(std::set<std::set<std::string>> fam,
                                             const FinSetObj& carrier) {
    fam.insert(std::set<std::string>{});
    fam.insert(std::set<std::string>(carrier.elems.begin(), carrier.elems.end()));
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::set<std::string>> cur(fam.begin(), fam.end());
        for (const auto& a : cur)
            for (const auto& b : cur) {
                if (fam.insert(set_union(a, b)).second) changed = true;
                if (fam.insert(set_inter(a, b)).second) changed = true;
            }
    }
    return fam;
}

std::set<std::string> preimage(const std::map<std::string, std::string>& table,
                               const FinSetObj& dom, const std::set<std::string>& v) {
    std::set<std::string> out;
    for (const auto& e : dom.elems)
        if (v.count(table.at(e))) out.insert(e);
    return out;
}

} // namespace

const std::string& FinTopMap::operator()(const std::string& e) const {
    auto it = table.find(e);
    if (it == table.end()) throw Error("BadMap", "space map undefined at '" + e + "'");
    return it->second;
}

void require_valid(const FinTopSpace& x) {
    require_valid(x.carrier);
    std::set<std::string> all(x.carrier.elems.begin(), x.carrier.elems.end());
    if (!x.opens.count({}) || !x.opens.count(all))
        throw Error("BadTopology", "open family must contain ∅ and the carrier");
    for (const auto& u : x.opens) {
        for (const auto& p : u)
            if (!all.count(p)) throw Error("BadTopology", "open set leaves the carrier");
        for (const auto& v : x.opens) {
            if (!x.opens.count(set_union(u, v)))
                throw Error("BadTopology", "opens not closed under union");
            if (!x.opens.count(set_inter(u, v)))
                throw Error("BadTopology", "opens not closed under intersection");
        }
    }
}

bool ft_continuous(const FinTopSpace& x, const FinTopSpace& y,
                   const std::map<std::string, std::string>& table) {
    for (const auto& v : y.opens)
        if (!x.is_open(preimage(table, x.carrier, v))) return false;
    return true;
}

void require_valid(const FinTopMap& f) {
    require_valid(f.dom);
    require_valid(f.cod);
    FinSetMap underlying{f.dom.carrier, f.cod.carrier, f.table};
    require_valid(underlying);
    if (!ft_continuous(f.dom, f.cod, f.table))
        throw Error("NotContinuous", "map has a non-open preimage");
}

FinTopSpace ft_discrete(const FinSetObj& x) {
    FinTopSpace s{x, {}};
    // all subsets
    std::vector<std::set<std::string>> subs{{}};
    for (const auto& e : x.elems) {
        std::vector<std::set<std::string>> next = subs;
        for (auto u : subs) {
            u.insert(e);
            next.push_back(std::move(u));
        }
        subs = std::move(next);
    }
    s.opens.insert(subs.begin(), subs.end());
    return s;
}

FinTopSpace ft_indiscrete(const FinSetObj& x) {
    FinTopSpace s{x, {}};
    s.opens.insert(std::set<std::string>{});
    s.opens.insert(std::set<std::string>(x.elems.begin(), x.elems.end()));
    return s;
}

FinTopSpace ft_sierpinski() {
    FinTopSpace s{FinSetObj{{"c", "o"}}, {}};
    s.opens = {{}, {"o"}, {"c", "o"}};
    return s;
}

FinTopMap ft_identity(const FinTopSpace& x) {
    return FinTopMap{x, x, fs_identity(x.carrier).table};
}

FinTopMap ft_compose(const FinTopMap& g, const FinTopMap& f) {
    if (!(f.cod == g.dom)) throw Error("ShapeMismatch", "ft_compose: cod(f) != dom(g)");
    FinTopMap h{f.dom, g.cod, {}};
    for (const auto& e : f.dom.carrier.elems) h.table[e] = g(f(e));
    return h;
}

FinTopSpace ft_terminal() { return ft_discrete(fs_terminal()); }

FinTopMap ft_to_terminal(const FinTopSpace& x) {
    FinTopMap f{x, ft_terminal(), {}};
    for (const auto& e : x.carrier.elems) f.table[e] = "*";
    return f;
}

FtProduct ft_product(const FinTopSpace& x, const FinTopSpace& y) {
    auto p = fs_product(x.carrier, y.carrier);
    FinTopSpace obj{p.obj, {}};
    // box opens generate the product topology; close under union
    std::set<std::set<std::string>> boxes;
    for (const auto& u : x.opens)
        for (const auto& v : y.opens) {
            std::set<std::string> box;
            for (const auto& a : u)
                for (const auto& b : v) box.insert(lbl_pair(a, b));
            boxes.insert(std::move(box));
        }
    obj.opens = close_family(std::move(boxes), p.obj);
    return FtProduct{obj, FinTopMap{obj, x, p.proj1.table}, FinTopMap{obj, y, p.proj2.table}};
}

FinTopSpace ft_subspace(const FinTopSpace& x, const std::set<std::string>& pts) {
    FinTopSpace s;
    for (const auto& e : x.carrier.elems)
        if (pts.count(e)) s.carrier.elems.push_back(e);
    for (const auto& u : x.opens) s.opens.insert(set_inter(u, pts));
    return s;
}

FtEqualizer ft_equalizer(const FinTopMap& f, const FinTopMap& g) {
    if (!(f.dom == g.dom && f.cod == g.cod))
        throw Error("ShapeMismatch", "ft_equalizer: not a parallel pair");
    std::set<std::string> pts;
    for (const auto& e : f.dom.carrier.elems)
        if (f(e) == g(e)) pts.insert(e);
    FinTopSpace sub = ft_subspace(f.dom, pts);
    FinTopMap mono{sub, f.dom, {}};
    for (const auto& e : sub.carrier.elems) mono.table[e] = e;
    return FtEqualizer{sub, mono};
}

FtPullback ft_pullback(const FinTopMap& f, const FinTopMap& g) {
    if (!(f.cod == g.cod)) throw Error("ShapeMismatch", "ft_pullback: codomains differ");
    auto prod = ft_product(f.dom, g.dom);
    std::set<std::string> pts;
    for (const auto& b : f.dom.carrier.elems)
        for (const auto& c : g.dom.carrier.elems)
            if (f(b) == g(c)) pts.insert(lbl_pair(b, c));
    FinTopSpace sub = ft_subspace(prod.obj, pts);
    FinTopMap p1{sub, f.dom, {}}, p2{sub, g.dom, {}};
    for (const auto& e : sub.carrier.elems) {
        p1.table[e] = prod.proj1.table.at(e);
        p2.table[e] = prod.proj2.table.at(e);
    }
    return FtPullback{sub, p1, p2};
}

bool ft_is_cover(const FinTopMap& f) {
    FinSetMap u{f.dom.carrier, f.cod.carrier, f.table};
    if (!fs_is_surjective(u)) return false;
    // every set with open preimage must already be open (quotient topology)
    std::vector<std::set<std::string>> subs{{}};
    for (const auto& e : f.cod.carrier.elems) {
        std::vector<std::set<std::string>> next = subs;
        for (auto s : subs) {
            s.insert(e);
            next.push_back(std::move(s));
        }
        subs = std::move(next);
    }
    for (const auto& v : subs)
        if (f.dom.is_open(preimage(f.table, f.dom.carrier, v)) && !f.cod.is_open(v))
            return false;
    return true;
}

bool ft_is_mono(const FinTopMap& f) {
    return fs_is_injective(FinSetMap{f.dom.carrier, f.cod.carrier, f.table});
}

FtFactorization ft_image_factorization(const FinTopMap& f) {
    auto fact = fs_image_factorization(FinSetMap{f.dom.carrier, f.cod.carrier, f.table});
    // image carries the quotient topology from the domain
    FinTopSpace img{fact.image, {}};
    std::vector<std::set<std::string>> subs{{}};
    for (const auto& e : img.carrier.elems) {
        std::vector<std::set<std::string>> next = subs;
        for (auto s : subs) {
            s.insert(e);
            next.push_back(std::move(s));
        }
        subs = std::move(next);
    }
    for (const auto& v : subs)
        if (f.dom.is_open(preimage(fact.cover.table, f.dom.carrier, v))) img.opens.insert(v);
    return FtFactorization{img, FinTopMap{f.dom, img, fact.cover.table},
                           FinTopMap{img, f.cod, fact.mono.table}};
}

std::vector<FinTopMap> ft_all_maps(const FinTopSpace& x, const FinTopSpace& y) {
    std::vector<FinTopMap> out;
    for (const auto& f : fs_all_maps(x.carrier, y.carrier))
        if (ft_continuous(x, y, f.table)) out.push_back(FinTopMap{x, y, f.table});
    return out;
}

} // namespace pretop
