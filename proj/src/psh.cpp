#include "pretop/psh.hpp"

#include <algorithm>
#include <functional>

#include "pretop/labels.hpp"
#include "pretop/parallel.hpp"

namespace pretop {

bool psh_is_cover(const NatTrans& t) { return psh_cover_witness(t).empty(); }

std::vector<std::string> psh_cover_witness(const NatTrans& t) {
    for (const auto& [o, elems] : t.cod.stalk) {
        std::set<std::string> image;
        for (const auto& e : t.dom.stalk_at(o)) image.insert(t.apply(o, e));
        for (const auto& e : elems)
            if (!image.count(e)) return {o, e};
    }
    return {};
}

bool psh_is_mono(const NatTrans& t) {
    for (const auto& [o, elems] : t.dom.stalk) {
        std::set<std::string> image;
        for (const auto& e : elems)
            if (!image.insert(t.apply(o, e)).second) return false;
    }
    return true;
}

PshProduct psh_product(const Presheaf& p, const Presheaf& q) {
    if (!(*p.base == *q.base)) throw Error("BaseMismatch", "psh_product over different bases");
    PshProduct out;
    out.obj.base = p.base;
    for (const auto& o : p.base->objects) {
        for (const auto& a : p.stalk_at(o))
            for (const auto& b : q.stalk_at(o))
                out.obj.stalk[o].push_back(lbl_pair(a, b));
        if (!out.obj.stalk.count(o)) out.obj.stalk[o] = {};
    }
    for (const auto& f : p.base->arrows)
        for (const auto& a : p.stalk_at(f.cod))
            for (const auto& b : q.stalk_at(f.cod))
                out.obj.act[{f.id, lbl_pair(a, b)}] =
                    lbl_pair(p.restrict(a, f.id), q.restrict(b, f.id));
    out.obj = require_valid(std::move(out.obj));
    out.proj1 = NatTrans{out.obj, p, {}};
    out.proj2 = NatTrans{out.obj, q, {}};
    for (const auto& o : p.base->objects)
        for (const auto& a : p.stalk_at(o))
            for (const auto& b : q.stalk_at(o)) {
                out.proj1.component[{o, lbl_pair(a, b)}] = a;
                out.proj2.component[{o, lbl_pair(a, b)}] = b;
            }
    return out;
}

NatTrans psh_pair(const PshProduct& pr, const NatTrans& f, const NatTrans& g) {
    if (!(f.dom == g.dom)) throw Error("ShapeMismatch", "psh_pair: domains differ");
    NatTrans t{f.dom, pr.obj, {}};
    for (const auto& [k, v] : f.component)
        t.component[k] = lbl_pair(v, g.component.at(k));
    return t;
}

PshPullback psh_pullback(const NatTrans& f, const NatTrans& g) {
    if (!(f.cod == g.cod)) throw Error("ShapeMismatch", "psh_pullback: codomains differ");
    PshPullback out;
    out.obj.base = f.dom.base;
    for (const auto& o : f.dom.base->objects) {
        out.obj.stalk[o] = {};
        for (const auto& b : f.dom.stalk_at(o))
            for (const auto& c : g.dom.stalk_at(o))
                if (f.apply(o, b) == g.apply(o, c))
                    out.obj.stalk[o].push_back(lbl_pair(b, c));
    }
    for (const auto& ar : f.dom.base->arrows)
        for (const auto& b : f.dom.stalk_at(ar.cod))
            for (const auto& c : g.dom.stalk_at(ar.cod))
                if (f.apply(ar.cod, b) == g.apply(ar.cod, c))
                    out.obj.act[{ar.id, lbl_pair(b, c)}] =
                        lbl_pair(f.dom.restrict(b, ar.id), g.dom.restrict(c, ar.id));
    out.obj = require_valid(std::move(out.obj));
    out.proj1 = NatTrans{out.obj, f.dom, {}};
    out.proj2 = NatTrans{out.obj, g.dom, {}};
    for (const auto& [o, elems] : out.obj.stalk)
        for (const auto& e : elems) {
            // e = (b,c); recover components from the projections' tables
            for (const auto& b : f.dom.stalk_at(o))
                for (const auto& c : g.dom.stalk_at(o))
                    if (lbl_pair(b, c) == e) {
                        out.proj1.component[{o, e}] = b;
                        out.proj2.component[{o, e}] = c;
                    }
        }
    return out;
}

PshEqualizer psh_equalizer(const NatTrans& f, const NatTrans& g) {
    if (!(f.dom == g.dom && f.cod == g.cod))
        throw Error("ShapeMismatch", "psh_equalizer: not a parallel pair");
    PshEqualizer out;
    out.obj.base = f.dom.base;
    for (const auto& o : f.dom.base->objects) {
        out.obj.stalk[o] = {};
        for (const auto& e : f.dom.stalk_at(o))
            if (f.apply(o, e) == g.apply(o, e)) out.obj.stalk[o].push_back(e);
    }
    for (const auto& ar : f.dom.base->arrows)
        for (const auto& e : out.obj.stalk_at(ar.cod))
            out.obj.act[{ar.id, e}] = f.dom.restrict(e, ar.id);
    out.obj = require_valid(std::move(out.obj));
    out.mono = NatTrans{out.obj, f.dom, {}};
    for (const auto& [o, elems] : out.obj.stalk)
        for (const auto& e : elems) out.mono.component[{o, e}] = e;
    return out;
}

PshSum psh_sum(const Presheaf& p, const Presheaf& q) {
    if (!(*p.base == *q.base)) throw Error("BaseMismatch", "psh_sum over different bases");
    PshSum out;
    out.obj.base = p.base;
    out.inl = NatTrans{p, {}, {}};
    out.inr = NatTrans{q, {}, {}};
    for (const auto& o : p.base->objects) {
        out.obj.stalk[o] = {};
        for (const auto& a : p.stalk_at(o)) {
            out.obj.stalk[o].push_back(lbl_tag("inl", a));
            out.inl.component[{o, a}] = lbl_tag("inl", a);
        }
        for (const auto& b : q.stalk_at(o)) {
            out.obj.stalk[o].push_back(lbl_tag("inr", b));
            out.inr.component[{o, b}] = lbl_tag("inr", b);
        }
    }
    for (const auto& ar : p.base->arrows) {
        for (const auto& a : p.stalk_at(ar.cod))
            out.obj.act[{ar.id, lbl_tag("inl", a)}] = lbl_tag("inl", p.restrict(a, ar.id));
        for (const auto& b : q.stalk_at(ar.cod))
            out.obj.act[{ar.id, lbl_tag("inr", b)}] = lbl_tag("inr", q.restrict(b, ar.id));
    }
    out.obj = require_valid(std::move(out.obj));
    out.inl.cod = out.obj;
    out.inr.cod = out.obj;
    return out;
}

PshFactorization psh_image_factorization(const NatTrans& f) {
    PshFactorization out;
    out.image.base = f.dom.base;
    for (const auto& o : f.dom.base->objects) {
        out.image.stalk[o] = {};
        std::set<std::string> img;
        for (const auto& e : f.dom.stalk_at(o)) img.insert(f.apply(o, e));
        for (const auto& e : f.cod.stalk_at(o))
            if (img.count(e)) out.image.stalk[o].push_back(e);
    }
    for (const auto& ar : f.dom.base->arrows)
        for (const auto& e : out.image.stalk_at(ar.cod))
            out.image.act[{ar.id, e}] = f.cod.restrict(e, ar.id);
    out.image = require_valid(std::move(out.image));
    out.cover = NatTrans{f.dom, out.image, f.component};
    out.mono = NatTrans{out.image, f.cod, {}};
    for (const auto& [o, elems] : out.image.stalk)
        for (const auto& e : elems) out.mono.component[{o, e}] = e;
    return out;
}

NatTrans psh_coequalizer(const NatTrans& r0, const NatTrans& r1) {
    if (!(r0.dom == r1.dom && r0.cod == r1.cod))
        throw Error("ShapeMismatch", "psh_coequalizer: not a parallel pair");
    const Presheaf& x = r0.cod;
    const FiniteCategory& c = *x.base;

    // stalkwise union-find, then close under the action until stable
    std::map<std::pair<std::string, std::string>, std::string> parent;
    auto key = [](const std::string& o, const std::string& e) { return std::make_pair(o, e); };
    std::function<std::string(const std::string&, const std::string&)> find =
        [&](const std::string& o, const std::string& e) -> std::string {
        auto k = key(o, e);
        auto it = parent.find(k);
        if (it == parent.end() || it->second == e) {
            parent[k] = e;
            return e;
        }
        std::string r = find(o, it->second);
        parent[k] = r;
        return r;
    };
    auto unite = [&](const std::string& o, const std::string& a, const std::string& b) {
        std::string ra = find(o, a), rb = find(o, b);
        if (ra == rb) return false;
        if (rb < ra) std::swap(ra, rb);
        parent[key(o, rb)] = ra;
        return true;
    };

    for (const auto& [o, elems] : r0.dom.stalk)
        for (const auto& e : elems) unite(o, r0.apply(o, e), r1.apply(o, e));

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& ar : c.arrows)
            for (const auto& e1 : x.stalk_at(ar.cod))
                for (const auto& e2 : x.stalk_at(ar.cod))
                    if (find(ar.cod, e1) == find(ar.cod, e2))
                        if (unite(ar.dom, x.restrict(e1, ar.id), x.restrict(e2, ar.id)))
                            changed = true;
    }

    Presheaf q;
    q.base = x.base;
    for (const auto& o : c.objects) {
        q.stalk[o] = {};
        std::set<std::string> classes;
        for (const auto& e : x.stalk_at(o)) classes.insert(find(o, e));
        q.stalk[o].assign(classes.begin(), classes.end());
    }
    for (const auto& ar : c.arrows)
        for (const auto& e : q.stalk_at(ar.cod))
            q.act[{ar.id, e}] = find(ar.dom, x.restrict(e, ar.id));
    q = require_valid(std::move(q));

    NatTrans t{x, q, {}};
    for (const auto& [o, elems] : x.stalk)
        for (const auto& e : elems) t.component[{o, e}] = find(o, e);
    return t;
}

NatTrans psh_to_terminal(const Presheaf& p) {
    NatTrans t{p, terminal_presheaf(p.base), {}};
    for (const auto& [o, elems] : p.stalk)
        for (const auto& e : elems) t.component[{o, e}] = "*";
    return t;
}

PshCanonicalCover psh_canonical_cover(const Presheaf& p) {
    const FiniteCategory& c = *p.base;
    PshCanonicalCover out;
    out.total.base = p.base;
    out.cover = NatTrans{{}, p, {}};
    for (const auto& y : c.objects) out.total.stalk[y] = {};
    // summand y(C) for every (C, x ∈ P(C)); element at stage Y = (C, x, w: Y -> C)
    for (const auto& ob : c.objects)
        for (const auto& x : p.stalk_at(ob))
            for (const auto& y : c.objects)
                for (const auto& w : c.hom(y, ob)) {
                    std::string e = lbl_triple(ob, x, w);
                    out.total.stalk[y].push_back(e);
                    out.decode[e] = {ob, x, w};
                    out.cover.component[{y, e}] = p.restrict(x, w);
                }
    for (const auto& ar : c.arrows)  // ar: Y' -> Y acts by w -> w∘ar
        for (const auto& e : out.total.stalk_at(ar.cod)) {
            const auto& d = out.decode.at(e);
            out.total.act[{ar.id, e}] = lbl_triple(d[0], d[1], c.compose(d[2], ar.id));
        }
    out.total = require_valid(std::move(out.total));
    out.cover.dom = out.total;
    return out;
}

PshFiber psh_fiber(const NatTrans& g, const std::string& stage, const std::string& c) {
    const Presheaf& d = g.dom;
    const Presheaf& codom = g.cod;
    const FiniteCategory& base = *d.base;
    if (!codom.has_elem(stage, c))
        throw Error("UnknownObject", "fiber point not in the stalk at " + stage);
    PshFiber out;
    out.obj.base = d.base;
    out.body = NatTrans{{}, d, {}};
    for (const auto& y : base.objects) {
        out.obj.stalk[y] = {};
        for (const auto& w : base.hom(y, stage))
            for (const auto& el : d.stalk_at(y))
                if (g.apply(y, el) == codom.restrict(c, w)) {
                    std::string e = lbl_pair(w, el);
                    out.obj.stalk[y].push_back(e);
                    out.ctx[e] = w;
                    out.body.component[{y, e}] = el;
                }
    }
    for (const auto& ar : base.arrows)  // (w, el) · ar = (w∘ar, el·ar)
        for (const auto& e : out.obj.stalk_at(ar.cod)) {
            const std::string& w = out.ctx.at(e);
            const std::string& el = out.body.component.at({ar.cod, e});
            out.obj.act[{ar.id, e}] =
                lbl_pair(base.compose(w, ar.id), d.restrict(el, ar.id));
        }
    out.obj = require_valid(std::move(out.obj));
    out.body.dom = out.obj;
    return out;
}

PshExponential psh_exponential(const Presheaf& p, const Presheaf& q) {
    if (!(*p.base == *q.base)) throw Error("BaseMismatch", "psh_exponential over different bases");
    const FiniteCategory& base = *p.base;
    PshExponential out;
    out.obj.base = p.base;

    // elements at stage C = natural transformations y(C) x P -> Q; the table
    // records the value at each (w: Y -> C, p ∈ P(Y))
    auto label_of = [](const PshExponential::Table& t) {
        std::map<std::string, std::string> flat;
        for (const auto& [k, v] : t) flat[lbl_pair(k.first, k.second)] = v;
        return lbl_table(flat);
    };
    for (const auto& cobj : base.objects) {
        auto yc = yoneda_embed(p.base, cobj);
        auto prod = psh_product(yc, p);
        out.obj.stalk[cobj] = {};
        for (const auto& t : presheaf_hom(prod.obj, q)) {
            PshExponential::Table table;
            for (const auto& y : base.objects)
                for (const auto& w : base.hom(y, cobj))
                    for (const auto& pe : p.stalk_at(y))
                        table[{w, pe}] = t.apply(y, lbl_pair(w, pe));
            std::string e = label_of(table);
            out.obj.stalk[cobj].push_back(e);
            out.tables[cobj][e] = std::move(table);
        }
        std::sort(out.obj.stalk[cobj].begin(), out.obj.stalk[cobj].end());
    }
    // action along u: C' -> C precomposes: t'(w', p) = t(u ∘ w', p)
    for (const auto& ar : base.arrows) {
        const std::string& cfrom = ar.dom; // C'
        const std::string& cto = ar.cod;   // C
        for (const auto& e : out.obj.stalk_at(cto)) {
            const auto& t = out.tables.at(cto).at(e);
            PshExponential::Table t2;
            for (const auto& y : base.objects)
                for (const auto& w2 : base.hom(y, cfrom))
                    for (const auto& pe : p.stalk_at(y))
                        t2[{w2, pe}] = t.at({base.compose(ar.id, w2), pe});
            out.obj.act[{ar.id, e}] = label_of(t2);
        }
    }
    out.obj = require_valid(std::move(out.obj));
    return out;
}

NatTrans psh_exp_postcompose(const PshExponential& qp, const PshExponential& rp,
                             const NatTrans& e, const Presheaf& p) {
    (void)p;
    (void)rp;
    auto label_of = [](const PshExponential::Table& t) {
        std::map<std::string, std::string> flat;
        for (const auto& [k, v] : t) flat[lbl_pair(k.first, k.second)] = v;
        return lbl_table(flat);
    };
    NatTrans t{qp.obj, rp.obj, {}};
    for (const auto& [stage, tabs] : qp.tables)
        for (const auto& [label, table] : tabs) {
            PshExponential::Table t2;
            for (const auto& [k, v] : table) {
                // the value at key (w, pe) lives at stage dom(w)
                const std::string& y = qp.obj.base->dom(k.first);
                t2[k] = e.apply(y, v);
            }
            t.component[{stage, label}] = label_of(t2);
        }
    return t;
}

namespace {

void fill_universe_for_sizes(const CategoryRef& base, const std::vector<Arrow>& arrows,
                             const std::vector<std::size_t>& sizes,
                             std::vector<Presheaf>& out) {
    const FiniteCategory& c = *base;
    Presheaf proto;
    proto.base = base;
    for (std::size_t k = 0; k < c.objects.size(); ++k) {
        proto.stalk[c.objects[k]] = {};
        for (std::size_t j = 0; j < sizes[k]; ++j)
            proto.stalk[c.objects[k]].push_back(c.objects[k] + "#" + std::to_string(j));
    }
    for (const auto& o : c.objects)
        for (const auto& e : proto.stalk_at(o)) proto.act[{c.id_of(o), e}] = e;

    // assign action tables arrow by arrow, checking functor laws at the end
    std::function<void(std::size_t, Presheaf&)> assign = [&](std::size_t ai, Presheaf& cur) {
        if (ai == arrows.size()) {
            if (!validate_presheaf(cur)) out.push_back(cur);
            return;
        }
        const Arrow& ar = arrows[ai];
        const auto& from = cur.stalk_at(ar.cod);
        const auto& to = cur.stalk_at(ar.dom);
        if (from.empty()) {
            assign(ai + 1, cur);
            return;
        }
        if (to.empty()) return; // no possible action table
        std::vector<std::size_t> pick(from.size(), 0);
        while (true) {
            for (std::size_t k = 0; k < from.size(); ++k)
                cur.act[{ar.id, from[k]}] = to[pick[k]];
            assign(ai + 1, cur);
            std::size_t k = 0;
            while (k < pick.size() && ++pick[k] == to.size()) pick[k++] = 0;
            if (k == pick.size()) break;
        }
        for (const auto& e : from) cur.act.erase({ar.id, e});
    };
    assign(0, proto);
}

} // namespace

std::vector<Presheaf> psh_universe(const CategoryRef& base, std::size_t max_stalk,
                                   ExecMode mode) {
    const FiniteCategory& c = *base;

    // non-identity arrows, in declaration order
    std::vector<Arrow> arrows;
    for (const auto& a : c.arrows) {
        bool is_id = false;
        for (const auto& o : c.objects)
            if (c.id_of(o) == a.id) is_id = true;
        if (!is_id) arrows.push_back(a);
    }

    // all stalk-size vectors, then independent fills per vector
    std::vector<std::vector<std::size_t>> combos;
    std::vector<std::size_t> sizes(c.objects.size(), 0);
    std::function<void(std::size_t)> choose = [&](std::size_t i) {
        if (i == c.objects.size()) {
            combos.push_back(sizes);
            return;
        }
        for (std::size_t s = 0; s <= max_stalk; ++s) {
            sizes[i] = s;
            choose(i + 1);
        }
    };
    choose(0);

    std::vector<std::vector<Presheaf>> chunks(combos.size());
    parallel_for(combos.size(), mode, [&](std::size_t i) {
        fill_universe_for_sizes(base, arrows, combos[i], chunks[i]);
    });
    std::vector<Presheaf> out;
    for (auto& ch : chunks)
        for (auto& p : ch) out.push_back(std::move(p));
    return out;
}

std::vector<Presheaf> psh_universe(const CategoryRef& base, std::size_t max_stalk) {
    return psh_universe(base, max_stalk, default_exec_mode());
}

bool psh_isomorphic(const Presheaf& p, const Presheaf& q) {
    if (!(*p.base == *q.base)) return false;
    for (const auto& o : p.base->objects)
        if (p.stalk_at(o).size() != q.stalk_at(o).size()) return false;
    for (const auto& t : presheaf_hom(p, q))
        if (psh_is_iso(t)) return true;
    return p.total_size() == 0 && q.total_size() == 0;
}

std::optional<NatTrans> psh_find_nat(
    const Presheaf& dom, const Presheaf& cod,
    const std::function<bool(const std::string&, const std::string&, const std::string&)>&
        admissible) {
    std::vector<std::pair<std::string, std::string>> slots;
    for (const auto& o : dom.base->objects)
        for (const auto& e : dom.stalk_at(o)) slots.push_back({o, e});
    NatTrans cur{dom, cod, {}};
    std::optional<NatTrans> found;

    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        if (i == slots.size()) {
            found = cur;
            return true;
        }
        const auto& [o, e] = slots[i];
        for (const auto& v : cod.stalk_at(o)) {
            if (!admissible(o, e, v)) continue;
            cur.component[{o, e}] = v;
            bool ok = true;
            for (const auto& ar : dom.base->arrows) {
                for (const auto& ecod : dom.stalk_at(ar.cod)) {
                    auto src = cur.component.find({ar.cod, ecod});
                    if (src == cur.component.end()) continue;
                    auto dst = cur.component.find({ar.dom, dom.restrict(ecod, ar.id)});
                    if (dst == cur.component.end()) continue;
                    if (cod.restrict(src->second, ar.id) != dst->second) ok = false;
                }
                if (!ok) break;
            }
            if (ok && rec(i + 1)) return true;
            cur.component.erase({o, e});
        }
        return false;
    };
    rec(0);
    return found;
}

Presheaf psh_canonicalize(const Presheaf& p) {
    Presheaf out;
    out.base = p.base;
    std::map<std::pair<std::string, std::string>, std::string> rename;
    for (const auto& o : p.base->objects) {
        out.stalk[o] = {};
        std::size_t i = 0;
        for (const auto& e : p.stalk_at(o)) {
            std::string ne = o + "#" + std::to_string(i++);
            rename[{o, e}] = ne;
            out.stalk[o].push_back(ne);
        }
    }
    for (const auto& ar : p.base->arrows)
        for (const auto& e : p.stalk_at(ar.cod))
            out.act[{ar.id, rename.at({ar.cod, e})}] =
                rename.at({ar.dom, p.restrict(e, ar.id)});
    return require_valid(std::move(out));
}

} // namespace pretop
