#include "pretop/finset.hpp"

#include <algorithm>

namespace pretop {

bool FinSetObj::contains(const std::string& e) const {
    return std::find(elems.begin(), elems.end(), e) != elems.end();
}

const std::string& FinSetMap::operator()(const std::string& e) const {
    auto it = table.find(e);
    if (it == table.end())
        throw Error("BadMap", "map undefined at element '" + e + "'");
    return it->second;
}

void require_valid(const FinSetObj& x) {
    std::set<std::string> seen(x.elems.begin(), x.elems.end());
    if (seen.size() != x.elems.size())
        throw Error("DuplicateName", "finite set has repeated labels");
}

void require_valid(const FinSetMap& f) {
    require_valid(f.dom);
    require_valid(f.cod);
    for (const auto& e : f.dom.elems) {
        auto it = f.table.find(e);
        if (it == f.table.end())
            throw Error("BadMap", "no image for element '" + e + "'");
        if (!f.cod.contains(it->second))
            throw Error("BadMap", "image of '" + e + "' not in codomain");
    }
    if (f.table.size() != f.dom.elems.size())
        throw Error("BadMap", "map table keyed by stray elements");
}

FinSetMap fs_identity(const FinSetObj& x) {
    FinSetMap f{x, x, {}};
    for (const auto& e : x.elems) f.table[e] = e;
    return f;
}

FinSetMap fs_compose(const FinSetMap& g, const FinSetMap& f) {
    if (!(f.cod == g.dom)) throw Error("ShapeMismatch", "fs_compose: cod(f) != dom(g)");
    FinSetMap h{f.dom, g.cod, {}};
    for (const auto& e : f.dom.elems) h.table[e] = g(f(e));
    return h;
}

FinSetMap fs_map(const FinSetObj& dom, const FinSetObj& cod,
                 const std::function<std::string(const std::string&)>& fn) {
    FinSetMap f{dom, cod, {}};
    for (const auto& e : dom.elems) f.table[e] = fn(e);
    require_valid(f);
    return f;
}

bool fs_is_injective(const FinSetMap& f) {
    std::set<std::string> image;
    for (const auto& e : f.dom.elems)
        if (!image.insert(f(e)).second) return false;
    return true;
}

bool fs_is_surjective(const FinSetMap& f) { return !fs_missed_element(f).has_value(); }

std::optional<std::string> fs_missed_element(const FinSetMap& f) {
    std::set<std::string> image;
    for (const auto& e : f.dom.elems) image.insert(f(e));
    for (const auto& c : f.cod.elems)
        if (!image.count(c)) return c;
    return std::nullopt;
}

FinSetMap fs_section(const FinSetMap& f) {
    FinSetMap s{f.cod, f.dom, {}};
    for (const auto& c : f.cod.elems) {
        auto fib = fs_fiber(f, c);
        if (fib.empty())
            throw Error("NotSurjective", "no preimage for '" + c + "'");
        std::sort(fib.begin(), fib.end());
        s.table[c] = fib.front();
    }
    return s;
}

std::vector<std::string> fs_fiber(const FinSetMap& f, const std::string& a) {
    std::vector<std::string> out;
    for (const auto& e : f.dom.elems)
        if (f(e) == a) out.push_back(e);
    return out;
}

FinSetObj fs_terminal() { return FinSetObj{{"*"}}; }
FinSetObj fs_initial() { return FinSetObj{{}}; }

FinSetMap fs_to_terminal(const FinSetObj& x) {
    return fs_map(x, fs_terminal(), [](const std::string&) { return "*"; });
}

FinSetMap fs_from_initial(const FinSetObj& x) { return FinSetMap{fs_initial(), x, {}}; }

FsProduct fs_product(const FinSetObj& x, const FinSetObj& y) {
    FsProduct p;
    for (const auto& a : x.elems)
        for (const auto& b : y.elems) p.obj.elems.push_back(lbl_pair(a, b));
    p.proj1 = FinSetMap{p.obj, x, {}};
    p.proj2 = FinSetMap{p.obj, y, {}};
    for (const auto& a : x.elems)
        for (const auto& b : y.elems) {
            p.proj1.table[lbl_pair(a, b)] = a;
            p.proj2.table[lbl_pair(a, b)] = b;
        }
    return p;
}

FinSetMap fs_pair(const FsProduct& p, const FinSetMap& f, const FinSetMap& g) {
    if (!(f.dom == g.dom)) throw Error("ShapeMismatch", "fs_pair: domains differ");
    return fs_map(f.dom, p.obj,
                  [&](const std::string& e) { return lbl_pair(f(e), g(e)); });
}

FsPullback fs_pullback(const FinSetMap& f, const FinSetMap& g) {
    if (!(f.cod == g.cod)) throw Error("ShapeMismatch", "fs_pullback: codomains differ");
    FsPullback p;
    p.proj1 = FinSetMap{{}, f.dom, {}};
    p.proj2 = FinSetMap{{}, g.dom, {}};
    for (const auto& b : f.dom.elems)
        for (const auto& c : g.dom.elems)
            if (f(b) == g(c)) {
                std::string e = lbl_pair(b, c);
                p.obj.elems.push_back(e);
                p.proj1.table[e] = b;
                p.proj2.table[e] = c;
            }
    p.proj1.dom = p.obj;
    p.proj2.dom = p.obj;
    return p;
}

FinSetMap fs_pullback_pair(const FsPullback& p, const FinSetMap& f, const FinSetMap& g) {
    if (!(f.dom == g.dom)) throw Error("ShapeMismatch", "fs_pullback_pair: domains differ");
    return fs_map(f.dom, p.obj,
                  [&](const std::string& e) { return lbl_pair(f(e), g(e)); });
}

FsEqualizer fs_equalizer(const FinSetMap& f, const FinSetMap& g) {
    if (!(f.dom == g.dom && f.cod == g.cod))
        throw Error("ShapeMismatch", "fs_equalizer: not a parallel pair");
    FsEqualizer e;
    for (const auto& x : f.dom.elems)
        if (f(x) == g(x)) e.obj.elems.push_back(x);
    e.mono = FinSetMap{e.obj, f.dom, {}};
    for (const auto& x : e.obj.elems) e.mono.table[x] = x;
    return e;
}

FsFactorization fs_image_factorization(const FinSetMap& f) {
    FsFactorization r;
    std::set<std::string> img;
    for (const auto& e : f.dom.elems) img.insert(f(e));
    for (const auto& c : f.cod.elems)
        if (img.count(c)) r.image.elems.push_back(c);
    r.cover = FinSetMap{f.dom, r.image, f.table};
    r.mono = FinSetMap{r.image, f.cod, {}};
    for (const auto& c : r.image.elems) r.mono.table[c] = c;
    return r;
}

FsRelation fs_relation_from_pairs(
    const FinSetObj& x, const std::vector<std::pair<std::string, std::string>>& pairs) {
    FsRelation r;
    r.r0 = FinSetMap{{}, x, {}};
    r.r1 = FinSetMap{{}, x, {}};
    for (const auto& [a, b] : pairs) {
        if (!x.contains(a) || !x.contains(b))
            throw Error("UnknownObject", "relation pair outside the carrier");
        std::string e = lbl_pair(a, b);
        if (r.rel.contains(e)) continue;
        r.rel.elems.push_back(e);
        r.r0.table[e] = a;
        r.r1.table[e] = b;
    }
    r.r0.dom = r.rel;
    r.r1.dom = r.rel;
    return r;
}

FsRelation fs_diagonal(const FinSetObj& x) {
    std::vector<std::pair<std::string, std::string>> ps;
    for (const auto& e : x.elems) ps.push_back({e, e});
    return fs_relation_from_pairs(x, ps);
}

FsRelation fs_total_relation(const FinSetObj& x) {
    std::vector<std::pair<std::string, std::string>> ps;
    for (const auto& a : x.elems)
        for (const auto& b : x.elems) ps.push_back({a, b});
    return fs_relation_from_pairs(x, ps);
}

FsRelation fs_kernel_pair(const FinSetMap& f) {
    std::vector<std::pair<std::string, std::string>> ps;
    for (const auto& a : f.dom.elems)
        for (const auto& b : f.dom.elems)
            if (f(a) == f(b)) ps.push_back({a, b});
    return fs_relation_from_pairs(f.dom, ps);
}

bool fs_related(const FsRelation& r, const std::string& x, const std::string& y) {
    for (const auto& e : r.rel.elems)
        if (r.r0(e) == x && r.r1(e) == y) return true;
    return false;
}

FsEquivCheck fs_check_equivalence(const FsRelation& r) {
    const FinSetObj& x = r.r0.cod;
    for (const auto& a : x.elems)
        if (!fs_related(r, a, a)) return {false, "reflexive", {a, a}};
    for (const auto& e : r.rel.elems) {
        if (!fs_related(r, r.r1(e), r.r0(e)))
            return {false, "symmetric", {r.r0(e), r.r1(e)}};
    }
    for (const auto& a : x.elems)
        for (const auto& b : x.elems)
            for (const auto& c : x.elems)
                if (fs_related(r, a, b) && fs_related(r, b, c) && !fs_related(r, a, c))
                    return {false, "transitive", {a, c}};
    return {true, "", {"", ""}};
}

namespace {

// Union-find over element labels.
struct UnionFind {
    std::map<std::string, std::string> parent;
    const std::string& find(const std::string& x) {
        auto it = parent.find(x);
        if (it == parent.end()) {
            parent[x] = x;
            return parent[x];
        }
        if (it->second == x) return it->second;
        const std::string root = find(it->second);
        parent[x] = root;
        return parent[x];
    }
    void unite(const std::string& a, const std::string& b) {
        std::string ra = find(a), rb = find(b);
        if (ra == rb) return;
        // keep the lexicographically least label as root
        if (rb < ra) std::swap(ra, rb);
        parent[rb] = ra;
    }
};

FinSetMap quotient_by(const FinSetObj& x,
                      const std::vector<std::pair<std::string, std::string>>& gens) {
    UnionFind uf;
    for (const auto& e : x.elems) uf.find(e);
    for (const auto& [a, b] : gens) uf.unite(a, b);
    std::set<std::string> classes;
    for (const auto& e : x.elems) classes.insert(uf.find(e));
    FinSetObj q;
    q.elems.assign(classes.begin(), classes.end());
    return fs_map(x, q, [&](const std::string& e) { return uf.find(e); });
}

} // namespace

FinSetMap fs_coequalizer(const FinSetMap& r0, const FinSetMap& r1) {
    if (!(r0.dom == r1.dom && r0.cod == r1.cod))
        throw Error("ShapeMismatch", "fs_coequalizer: not a parallel pair");
    std::vector<std::pair<std::string, std::string>> gens;
    for (const auto& e : r0.dom.elems) gens.push_back({r0(e), r1(e)});
    return quotient_by(r0.cod, gens);
}

FsQuotient fs_quotient_equiv(const FsRelation& r) {
    auto chk = fs_check_equivalence(r);
    if (!chk.ok)
        throw Error("NotEquivalenceRelation",
                    chk.failed_law + " fails at (" + chk.witness.first + "," +
                        chk.witness.second + ")");
    FsQuotient out;
    out.q = fs_coequalizer(r.r0, r.r1);

    auto ker = fs_kernel_pair(out.q);
    out.kernel_pair_matches = true;
    for (const auto& a : out.q.dom.elems)
        for (const auto& b : out.q.dom.elems)
            if (fs_related(r, a, b) != fs_related(ker, a, b)) out.kernel_pair_matches = false;

    out.coequalizes = (fs_compose(out.q, r.r0) == fs_compose(out.q, r.r1));

    // stability: pull the exact diagram back along a few maps into the quotient
    out.stable_on_samples = true;
    const FinSetObj& q_cod = out.q.cod;
    std::vector<FinSetMap> samples;
    if (!q_cod.elems.empty()) {
        samples.push_back(fs_identity(q_cod));
        samples.push_back(fs_map(fs_terminal(), q_cod,
                                 [&](const std::string&) { return q_cod.elems.front(); }));
        FinSetObj two{{"s0", "s1"}};
        samples.push_back(fs_map(two, q_cod, [&](const std::string&) {
            return q_cod.elems.back();
        }));
    }
    for (const auto& p : samples) {
        auto px = fs_pullback(p, out.q);                 // P x_Q X
        // pulled-back quotient map: (p, x) -> p
        FinSetMap pq = px.proj1;
        bool ok = fs_is_surjective(pq);
        // kernel pair of pq must equal the pulled-back relation
        auto ker2 = fs_kernel_pair(pq);
        for (const auto& e1 : px.obj.elems)
            for (const auto& e2 : px.obj.elems) {
                bool rel_pulled = (pq(e1) == pq(e2)) &&
                                  fs_related(r, px.proj2(e1), px.proj2(e2));
                if (rel_pulled != fs_related(ker2, e1, e2)) ok = false;
            }
        if (!ok) out.stable_on_samples = false;
    }
    out.notes.push_back("classes=" + std::to_string(out.q.cod.size()));
    return out;
}

FsSum fs_sum(const FinSetObj& x, const FinSetObj& y) {
    FsSum s;
    s.inl = FinSetMap{x, {}, {}};
    s.inr = FinSetMap{y, {}, {}};
    for (const auto& a : x.elems) {
        std::string e = lbl_tag("inl", a);
        s.obj.elems.push_back(e);
        s.inl.table[a] = e;
    }
    for (const auto& b : y.elems) {
        std::string e = lbl_tag("inr", b);
        s.obj.elems.push_back(e);
        s.inr.table[b] = e;
    }
    s.inl.cod = s.obj;
    s.inr.cod = s.obj;
    return s;
}

FinSetMap fs_copair(const FsSum& s, const FinSetMap& f, const FinSetMap& g) {
    if (!(f.cod == g.cod)) throw Error("ShapeMismatch", "fs_copair: codomains differ");
    FinSetMap h{s.obj, f.cod, {}};
    for (const auto& [a, e] : s.inl.table) h.table[e] = f(a);
    for (const auto& [b, e] : s.inr.table) h.table[e] = g(b);
    return h;
}

namespace {

// All assignments of `keys` into `values`, reported as tables.
void all_tables(const std::vector<std::string>& keys, const std::vector<std::string>& values,
                std::map<std::string, std::string>& cur, std::size_t i,
                const std::function<void(const std::map<std::string, std::string>&)>& emit) {
    if (i == keys.size()) {
        emit(cur);
        return;
    }
    for (const auto& v : values) {
        cur[keys[i]] = v;
        all_tables(keys, values, cur, i + 1, emit);
    }
    cur.erase(keys[i]);
}

} // namespace

FsDepProduct fs_dependent_product(const FinSetMap& f, const FinSetMap& g) {
    if (!(g.cod == f.dom)) throw Error("ShapeMismatch", "fs_dependent_product: cod(g) != dom(f)");
    FsDepProduct out;
    out.proj = FinSetMap{{}, f.cod, {}};
    for (const auto& a : f.cod.elems) {
        auto ba = fs_fiber(f, a);
        // sections s: B_a -> X with g(s(b)) = b
        std::vector<std::map<std::string, std::string>> secs{{}};
        for (const auto& b : ba) {
            std::vector<std::map<std::string, std::string>> next;
            for (const auto& s : secs)
                for (const auto& x : fs_fiber(g, b)) {
                    auto s2 = s;
                    s2[b] = x;
                    next.push_back(std::move(s2));
                }
            secs = std::move(next);
        }
        for (const auto& s : secs) {
            std::string e = lbl_pair(a, lbl_table(s));
            out.obj.elems.push_back(e);
            out.sections[e] = s;
            out.proj.table[e] = a;
        }
    }
    out.proj.dom = out.obj;
    return out;
}

bool fs_check_pi_adjunction(const FinSetMap& f, const FinSetMap& g, const FinSetMap& h) {
    // Hom_{/A}(h, Pi_f g) vs Hom_{/B}(f^* h, g), compared through the
    // explicit transpose, for h: Y -> A.
    if (!(h.cod == f.cod)) throw Error("ShapeMismatch", "fs_check_pi_adjunction: h not over A");
    auto pi = fs_dependent_product(f, g);
    auto right = fs_slice_hom(h, pi.proj);

    auto pb = fs_pullback(f, h); // f^* h: B x_A Y -> B via proj1
    auto left = fs_slice_hom(pb.proj1, g);

    if (left.size() != right.size()) return false;

    // transpose right-to-left and check it lands in (and exhausts) left
    std::set<std::map<std::string, std::string>> left_tables;
    for (const auto& m : left) left_tables.insert(m.table);
    std::set<std::map<std::string, std::string>> seen;
    for (const auto& m : right) {
        FinSetMap t{pb.obj, g.dom, {}};
        for (const auto& e : pb.obj.elems) {
            const std::string& b = pb.proj1(e);
            const std::string& y = pb.proj2(e);
            t.table[e] = pi.sections.at(m(y)).at(b);
        }
        if (!left_tables.count(t.table)) return false;
        if (!seen.insert(t.table).second) return false; // transpose not injective
    }
    return seen.size() == left_tables.size();
}

FsExponential fs_exponential(const FinSetObj& p, const FinSetObj& x) {
    FsExponential out;
    std::map<std::string, std::string> cur;
    all_tables(p.elems, x.elems, cur, 0, [&](const std::map<std::string, std::string>& t) {
        std::string e = lbl_table(t);
        out.obj.elems.push_back(e);
        out.tables[e] = t;
    });
    return out;
}

FinSetMap fs_exp_postcompose(const FsExponential& xp, const FsExponential& yp,
                             const FinSetMap& e, const FinSetObj& p) {
    (void)p;
    FinSetMap out{xp.obj, yp.obj, {}};
    for (const auto& [label, t] : xp.tables) {
        std::map<std::string, std::string> t2;
        for (const auto& [k, v] : t) t2[k] = e(v);
        out.table[label] = lbl_table(t2);
    }
    return out;
}

std::vector<FinSetMap> fs_all_maps(const FinSetObj& x, const FinSetObj& y) {
    std::vector<FinSetMap> out;
    if (x.elems.empty()) {
        out.push_back(FinSetMap{x, y, {}});
        return out;
    }
    if (y.elems.empty()) return out;
    std::map<std::string, std::string> cur;
    all_tables(x.elems, y.elems, cur, 0, [&](const std::map<std::string, std::string>& t) {
        out.push_back(FinSetMap{x, y, t});
    });
    return out;
}

std::vector<FinSetMap> fs_all_surjections(const FinSetObj& x, const FinSetObj& y) {
    std::vector<FinSetMap> out;
    for (auto& f : fs_all_maps(x, y))
        if (fs_is_surjective(f)) out.push_back(std::move(f));
    return out;
}

std::vector<FinSetMap> fs_all_injections(const FinSetObj& x, const FinSetObj& y) {
    std::vector<FinSetMap> out;
    for (auto& f : fs_all_maps(x, y))
        if (fs_is_injective(f)) out.push_back(std::move(f));
    return out;
}

std::vector<FinSetMap> fs_slice_hom(const FinSetMap& f1, const FinSetMap& f2) {
    if (!(f1.cod == f2.cod)) throw Error("ShapeMismatch", "fs_slice_hom: different bases");
    std::vector<FinSetMap> out;
    for (auto& u : fs_all_maps(f1.dom, f2.dom))
        if (fs_compose(f2, u) == f1) out.push_back(std::move(u));
    return out;
}

FinSetObj fs_canonical(std::size_t n, const std::string& prefix) {
    FinSetObj x;
    for (std::size_t i = 0; i < n; ++i) x.elems.push_back(prefix + std::to_string(i));
    return x;
}

} // namespace pretop
