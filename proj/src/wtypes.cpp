#include "pretop/wtypes.hpp"

#include <algorithm>
#include <functional>

#include "pretop/labels.hpp"

namespace pretop::wtypes {

PolyFunctor poly_from_arities(const std::map<std::string, std::size_t>& arities) {
    FinSetObj a, b;
    std::map<std::string, std::string> table;
    for (const auto& [op, k] : arities) {
        a.elems.push_back(op);
        for (std::size_t i = 0; i < k; ++i) {
            std::string e = op + ":" + std::to_string(i);
            b.elems.push_back(e);
            table[e] = op;
        }
    }
    return PolyFunctor{FinSetMap{b, a, table}};
}

PolyApplication apply_poly(const PolyFunctor& pf, const FinSetObj& x) {
    PolyApplication out;
    for (const auto& a : pf.shapes().elems) {
        auto fib = pf.fiber(a);
        std::vector<std::map<std::string, std::string>> tables{{}};
        for (const auto& b : fib) {
            std::vector<std::map<std::string, std::string>> next;
            for (const auto& t : tables)
                for (const auto& e : x.elems) {
                    auto t2 = t;
                    t2[b] = e;
                    next.push_back(std::move(t2));
                }
            tables = std::move(next);
        }
        for (const auto& t : tables) {
            std::string label = lbl_pair(a, lbl_table(t));
            out.obj.elems.push_back(label);
            out.decode[label] = {a, t};
        }
    }
    return out;
}

std::string WTree::encode() const {
    if (children.empty()) return root;
    std::string out = root + "(";
    bool first = true;
    for (const auto& [b, t] : children) {
        if (!first) out += ",";
        out += t.encode();
        first = false;
    }
    return out + ")";
}

std::size_t WTree::height() const {
    std::size_t h = 0;
    for (const auto& [b, t] : children) h = std::max(h, t.height());
    return h + 1;
}

WTree sup(const PolyFunctor& pf, const std::string& a,
          const std::map<std::string, WTree>& children) {
    if (!pf.shapes().contains(a))
        throw Error("SignatureMismatch", "unknown shape '" + a + "'");
    auto fib = pf.fiber(a);
    if (fib.size() != children.size())
        throw Error("SignatureMismatch", "children do not match the fiber of '" + a + "'");
    for (const auto& b : fib)
        if (!children.count(b))
            throw Error("SignatureMismatch", "missing child at fiber element '" + b + "'");
    return WTree{a, children};
}

std::vector<std::size_t> WTypeResult::level_sizes() const {
    std::vector<std::size_t> out;
    for (const auto& l : levels) out.push_back(l.size());
    return out;
}

WTypeResult wtype(const PolyFunctor& pf, std::size_t cap) {
    WTypeResult out;
    bool some_empty_fiber = false, some_inhabited_fiber = false;
    for (const auto& a : pf.shapes().elems)
        (pf.fiber(a).empty() ? some_empty_fiber : some_inhabited_fiber) = true;

    if (!some_empty_fiber)
        out.kind = WKind::Empty;  // no leaf shape, well-foundedness forbids trees
    else if (!some_inhabited_fiber)
        out.kind = WKind::Finite; // only leaves
    else
        out.kind = WKind::InfiniteTruncated;

    out.levels.push_back({}); // W_0
    out.stabilized = false;
    for (std::size_t n = 0; n < cap && !out.stabilized; ++n) {
        const auto& prev = out.levels.back();
        std::set<WTree> next;
        for (const auto& a : pf.shapes().elems) {
            auto fib = pf.fiber(a);
            std::vector<std::map<std::string, WTree>> assigns{{}};
            for (const auto& b : fib) {
                std::vector<std::map<std::string, WTree>> grown;
                for (const auto& t : assigns)
                    for (const auto& w : prev) {
                        auto t2 = t;
                        t2.emplace(b, w);
                        grown.push_back(std::move(t2));
                    }
                assigns = std::move(grown);
            }
            for (const auto& t : assigns) next.insert(WTree{a, t});
        }
        std::vector<WTree> level(next.begin(), next.end());
        if (level == out.levels.back()) {
            out.stabilized = true;
        } else {
            out.levels.push_back(std::move(level));
        }
    }
    return out;
}

std::string wfold(const PolyFunctor& pf, const WAlgebra& alg, const WTree& t) {
    if (!pf.shapes().contains(t.root))
        throw Error("SignatureMismatch", "tree shape '" + t.root + "' not in signature");
    auto fib = pf.fiber(t.root);
    if (fib.size() != t.children.size())
        throw Error("SignatureMismatch", "tree branching does not match fiber");
    std::map<std::string, std::string> folded;
    for (const auto& b : fib) {
        auto it = t.children.find(b);
        if (it == t.children.end())
            throw Error("SignatureMismatch", "missing branch at '" + b + "'");
        folded[b] = wfold(pf, alg, it->second);
    }
    auto key = lbl_pair(t.root, lbl_table(folded));
    auto it = alg.structure.find(key);
    if (it == alg.structure.end())
        throw Error("SignatureMismatch", "algebra has no value at " + key);
    return it->second;
}

// ---------------------------------------------------------------- ranks

RankSignature rank_signature(const FinSetObj& x, const std::vector<FinSetMap>& family) {
    RankSignature sig;
    sig.x = x;
    sig.zero_ctor = "zero";
    sig.succ_ctor = "succ";
    FinSetObj a, b;
    std::map<std::string, std::string> table;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto& p = family[i];
        if (!(p.cod == x))
            throw Error("ShapeMismatch", "family member " + std::to_string(i) +
                                             " is not a map onto the carrier");
        if (!fs_is_surjective(p))
            throw Error("NotSurjective", "family member " + std::to_string(i));
        std::string ctor = "i" + std::to_string(i);
        sig.index_ctors.push_back(ctor);
        a.elems.push_back(ctor);
        for (const auto& y : p.dom.elems) {
            std::string e = ctor + ":" + y;
            b.elems.push_back(e);
            table[e] = ctor;
            sig.proj[ctor][e] = p(y);
        }
    }
    a.elems.push_back(sig.zero_ctor);
    a.elems.push_back(sig.succ_ctor);
    b.elems.push_back(sig.succ_ctor + ":0");
    table[sig.succ_ctor + ":0"] = sig.succ_ctor;
    sig.pf = PolyFunctor{FinSetMap{b, a, table}};
    return sig;
}

std::size_t rank(const RankSignature& sig, const WTree& t) {
    if (t.root == sig.zero_ctor) return 0;
    if (t.root == sig.succ_ctor) {
        auto it = t.children.find(sig.succ_ctor + ":0");
        if (it == t.children.end())
            throw Error("SignatureMismatch", "successor node without its branch");
        return rank(sig, it->second) + 1;
    }
    if (std::find(sig.index_ctors.begin(), sig.index_ctors.end(), t.root) ==
        sig.index_ctors.end())
        throw Error("SignatureMismatch", "shape '" + t.root + "' not in the rank signature");
    std::size_t m = 0;
    for (const auto& [b, sub] : t.children) m = std::max(m, rank(sig, sub));
    return m;
}

RankClosureReport rank_closure_demo(const FinSetObj& x, const std::vector<FinSetMap>& family,
                                    std::size_t depth) {
    RankClosureReport rep;
    auto sig = rank_signature(x, family);
    auto w = wtype(sig.pf, depth);

    // closure witnesses come from one level down, so their sups and
    // successors still fit inside the enumerated depth
    const auto& inner =
        w.levels.size() >= 2 ? w.levels[w.levels.size() - 2] : w.levels.back();
    const auto& full = w.levels.back();
    std::set<std::size_t> inner_ranks, full_ranks;
    std::map<std::size_t, WTree> witness;
    for (const auto& t : inner) {
        std::size_t r = rank(sig, t);
        inner_ranks.insert(r);
        witness.emplace(r, t);
    }
    for (const auto& t : full) full_ranks.insert(rank(sig, t));
    rep.attained = full_ranks;

    rep.zero_attained = rep.attained.count(0) != 0;
    if (!rep.zero_attained) rep.notes.push_back("0 not attained");

    rep.succ_closed = true;
    for (auto r : inner_ranks)
        if (!full_ranks.count(r + 1)) {
            rep.succ_closed = false;
            rep.notes.push_back("successor of " + std::to_string(r) + " not attained");
        }

    // every X-indexed tuple of witnessed ranks must have its max realized by
    // a sup over some family index, via t(b) = witness(alpha_{p_i(b)})
    rep.sup_closed = true;
    std::vector<std::size_t> pool(inner_ranks.begin(), inner_ranks.end());
    if (pool.empty()) {
        rep.sup_closed = x.elems.empty();
        if (!rep.sup_closed) rep.notes.push_back("no ranks attained");
        return rep;
    }
    std::vector<std::size_t> tuple(x.elems.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == x.elems.size()) {
            std::map<std::string, std::size_t> alpha;
            std::size_t want = 0;
            for (std::size_t k = 0; k < x.elems.size(); ++k) {
                alpha[x.elems[k]] = pool[tuple[k]];
                want = std::max(want, pool[tuple[k]]);
            }
            for (const auto& ctor : sig.index_ctors) {
                std::map<std::string, WTree> children;
                for (const auto& [b, xv] : sig.proj[ctor])
                    children.emplace(b, witness.at(alpha[xv]));
                WTree t = sup(sig.pf, ctor, children);
                if (rank(sig, t) == want) return; // realized
            }
            rep.sup_closed = false;
            rep.notes.push_back("no sup realizes max " + std::to_string(want));
            return;
        }
        for (std::size_t k = 0; k < pool.size() && rep.notes.size() < 16; ++k) {
            tuple[i] = k;
            rec(i + 1);
        }
    };
    rec(0);
    return rep;
}

// ---------------------------------------------------------------- dependent

std::map<std::string, std::size_t> DepFixpointResult::sizes_at(std::size_t level) const {
    std::map<std::string, std::size_t> out;
    for (const auto& [idx, elems] : levels.at(level)) out[idx] = elems.size();
    return out;
}

DepFixpointResult dep_fixpoint(const DepPolyFunctor& f, std::size_t cap) {
    DepFixpointResult out;
    std::map<std::string, std::vector<std::string>> cur;
    for (const auto& i : f.indices) cur[i] = {};
    out.levels.push_back(cur);
    out.stabilized = false;
    for (std::size_t n = 0; n < cap && !out.stabilized; ++n) {
        std::map<std::string, std::vector<std::string>> next;
        for (const auto& idx : f.indices) {
            std::set<std::string> elems;
            elems.insert("*");
            auto it = f.ctors.find(idx);
            if (it != f.ctors.end())
                for (const auto& u : it->second) {
                    std::vector<std::vector<std::string>> tuples{{}};
                    for (const auto& arg : u.arg_indices) {
                        std::vector<std::vector<std::string>> grown;
                        for (const auto& t : tuples)
                            for (const auto& e : cur.at(arg)) {
                                auto t2 = t;
                                t2.push_back(e);
                                grown.push_back(std::move(t2));
                            }
                        tuples = std::move(grown);
                    }
                    for (const auto& t : tuples)
                        elems.insert("sup_" + u.id + "(" + join(t, ",") + ")");
                }
            next[idx] = std::vector<std::string>(elems.begin(), elems.end());
        }
        if (next == cur) {
            out.stabilized = true;
        } else {
            out.levels.push_back(next);
            cur = std::move(next);
        }
    }
    return out;
}

// ---------------------------------------------------------------- free algebras

TermPat pat_var(std::string name) { return TermPat{true, std::move(name), {}}; }
TermPat pat_app(std::string head, std::vector<TermPat> args) {
    return TermPat{false, std::move(head), std::move(args)};
}

namespace {

std::string encode_app(const std::string& op, const std::vector<std::string>& args) {
    if (args.empty()) return op;
    return op + "(" + join(args, ",") + ")";
}

std::optional<std::string> instantiate(const TermPat& p,
                                       const std::map<std::string, std::string>& sub) {
    if (p.is_var) {
        auto it = sub.find(p.head);
        if (it == sub.end()) return std::nullopt;
        return it->second;
    }
    std::vector<std::string> args;
    for (const auto& a : p.args) {
        auto v = instantiate(a, sub);
        if (!v) return std::nullopt;
        args.push_back(*v);
    }
    return encode_app(p.head, args);
}

void collect_vars(const TermPat& p, std::set<std::string>& out) {
    if (p.is_var) {
        out.insert(p.head);
        return;
    }
    for (const auto& a : p.args) collect_vars(a, out);
}

struct TermUF {
    std::map<std::string, std::string> parent;
    std::string find(const std::string& x) {
        auto it = parent.find(x);
        if (it == parent.end() || it->second == x) {
            parent[x] = x;
            return x;
        }
        std::string r = find(it->second);
        parent[x] = r;
        return r;
    }
    bool unite(const std::string& a, const std::string& b) {
        std::string ra = find(a), rb = find(b);
        if (ra == rb) return false;
        if (rb < ra) std::swap(ra, rb);
        parent[rb] = ra;
        return true;
    }
};

using OpTable = std::map<std::pair<std::string, std::vector<std::string>>, std::string>;

std::optional<std::string> eval_tree_in(const WTree& t, const OpTable& ops) {
    std::vector<std::string> args;
    for (const auto& [k, sub] : t.children) {
        auto v = eval_tree_in(sub, ops);
        if (!v) return std::nullopt;
        args.push_back(*v);
    }
    auto it = ops.find({t.root, args});
    if (it == ops.end()) return std::nullopt;
    return it->second;
}

} // namespace

FreeAlgebraResult free_algebra(const std::map<std::string, std::size_t>& sig,
                               const FinSetObj& generators,
                               const std::vector<std::pair<TermPat, TermPat>>& equations,
                               std::size_t cap) {
    std::map<std::string, std::size_t> full = sig;
    for (const auto& g : generators.elems) {
        if (full.count(g))
            throw Error("DuplicateName", "generator '" + g + "' clashes with an operation");
        full[g] = 0;
    }
    FreeAlgebraResult out;
    out.pf = poly_from_arities(full);
    out.approximate = !equations.empty();

    // terms with at most `cap` nested applications = chain level cap+1
    auto w = wtype(out.pf, cap + 1);
    out.term_trees = w.value();
    for (const auto& t : out.term_trees) out.terms.push_back(t.encode());
    std::set<std::string> termset(out.terms.begin(), out.terms.end());

    TermUF uf;
    for (const auto& t : out.terms) uf.find(t);

    // instantiate equations over the enumerated terms
    for (const auto& [lhs, rhs] : equations) {
        std::set<std::string> vars;
        collect_vars(lhs, vars);
        collect_vars(rhs, vars);
        std::vector<std::string> vlist(vars.begin(), vars.end());
        if (out.terms.empty()) continue;
        std::vector<std::size_t> pick(vlist.size(), 0);
        while (true) {
            std::map<std::string, std::string> sub;
            for (std::size_t i = 0; i < vlist.size(); ++i) sub[vlist[i]] = out.terms[pick[i]];
            auto l = instantiate(lhs, sub);
            auto r = instantiate(rhs, sub);
            if (l && r && termset.count(*l) && termset.count(*r)) uf.unite(*l, *r);
            std::size_t k = 0;
            while (k < pick.size() && ++pick[k] == out.terms.size()) pick[k++] = 0;
            if (k == pick.size() || pick.empty()) break;
        }
    }

    // congruence propagation: same op, equivalent arguments
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < out.term_trees.size(); ++i)
            for (std::size_t j = i + 1; j < out.term_trees.size(); ++j) {
                const WTree& a = out.term_trees[i];
                const WTree& b = out.term_trees[j];
                if (a.root != b.root) continue;
                bool congruent = true;
                for (const auto& [k, sub] : a.children)
                    if (uf.find(sub.encode()) != uf.find(b.children.at(k).encode()))
                        congruent = false;
                if (congruent && uf.unite(a.encode(), b.encode())) changed = true;
            }
    }

    std::set<std::string> reps;
    for (const auto& t : out.terms) {
        out.cls[t] = uf.find(t);
        reps.insert(out.cls[t]);
    }
    out.class_reps.assign(reps.begin(), reps.end());
    return out;
}

UniversalReport free_universal_report(const FreeAlgebraResult& fr,
                                      const std::map<std::string, std::size_t>& sig,
                                      const FinSetObj& generators,
                                      const std::vector<std::pair<TermPat, TermPat>>& equations,
                                      std::size_t bound) {
    UniversalReport rep{true, 0, {}};
    std::map<std::string, WTree> by_code;
    for (const auto& t : fr.term_trees) by_code.emplace(t.encode(), t);

    for (std::size_t n = 1; n <= bound; ++n) {
        auto carrier = fs_canonical(n, "m");

        // all interpretations of the operation symbols
        std::vector<OpTable> interps{{}};
        for (const auto& [op, arity] : sig) {
            std::vector<std::vector<std::string>> tuples{{}};
            for (std::size_t i = 0; i < arity; ++i) {
                std::vector<std::vector<std::string>> grown;
                for (const auto& t : tuples)
                    for (const auto& e : carrier.elems) {
                        auto t2 = t;
                        t2.push_back(e);
                        grown.push_back(std::move(t2));
                    }
                tuples = std::move(grown);
            }
            std::vector<OpTable> grown;
            for (const auto& base : interps) {
                std::vector<std::size_t> pick(tuples.size(), 0);
                while (true) {
                    auto m = base;
                    for (std::size_t i = 0; i < tuples.size(); ++i)
                        m[{op, tuples[i]}] = carrier.elems[pick[i]];
                    grown.push_back(std::move(m));
                    std::size_t k = 0;
                    while (k < pick.size() && ++pick[k] == carrier.elems.size()) pick[k++] = 0;
                    if (k == pick.size() || pick.empty()) break;
                }
            }
            interps = std::move(grown);
        }

        for (const auto& opint : interps) {
            // candidate must satisfy the equations
            bool satisfies = true;
            for (const auto& [lhs, rhs] : equations) {
                std::set<std::string> vars;
                collect_vars(lhs, vars);
                collect_vars(rhs, vars);
                std::vector<std::string> vlist(vars.begin(), vars.end());
                std::function<std::optional<std::string>(
                    const TermPat&, const std::map<std::string, std::string>&)>
                    go = [&](const TermPat& q, const std::map<std::string, std::string>& env)
                    -> std::optional<std::string> {
                    if (q.is_var) return env.at(q.head);
                    std::vector<std::string> args;
                    for (const auto& a : q.args) {
                        auto v = go(a, env);
                        if (!v) return std::nullopt;
                        args.push_back(*v);
                    }
                    auto it = opint.find({q.head, args});
                    if (it == opint.end()) return std::nullopt;
                    return it->second;
                };
                std::vector<std::size_t> pick(vlist.size(), 0);
                while (satisfies) {
                    std::map<std::string, std::string> env;
                    for (std::size_t i = 0; i < vlist.size(); ++i)
                        env[vlist[i]] = carrier.elems[pick[i]];
                    if (go(lhs, env) != go(rhs, env)) satisfies = false;
                    std::size_t k = 0;
                    while (k < pick.size() && ++pick[k] == carrier.elems.size()) pick[k++] = 0;
                    if (k == pick.size() || pick.empty()) break;
                }
                if (!satisfies) break;
            }
            if (!satisfies) continue;
            ++rep.algebras_checked;

            std::vector<std::size_t> gpick(generators.elems.size(), 0);
            while (true) {
                auto ops_full = opint;
                for (std::size_t i = 0; i < generators.elems.size(); ++i)
                    ops_full[{generators.elems[i], {}}] = carrier.elems[gpick[i]];

                // evaluation must be constant on congruence classes
                std::map<std::string, std::string> value_of_rep;
                bool well_defined = true;
                for (const auto& t : fr.terms) {
                    auto v = eval_tree_in(by_code.at(t), ops_full);
                    if (!v) {
                        well_defined = false;
                        break;
                    }
                    auto it = value_of_rep.find(fr.cls.at(t));
                    if (it == value_of_rep.end())
                        value_of_rep[fr.cls.at(t)] = *v;
                    else if (it->second != *v)
                        well_defined = false;
                }
                if (!well_defined) {
                    rep.ok = false;
                    rep.notes.push_back("evaluation not constant on classes at size " +
                                        std::to_string(n));
                }

                // uniqueness among class functions respecting the structure
                if (well_defined && fr.class_reps.size() <= 6) {
                    std::vector<std::size_t> fpick(fr.class_reps.size(), 0);
                    while (true) {
                        std::map<std::string, std::string> h;
                        for (std::size_t i = 0; i < fr.class_reps.size(); ++i)
                            h[fr.class_reps[i]] = carrier.elems[fpick[i]];
                        bool hom = true;
                        for (const auto& t : fr.terms) {
                            const WTree& tree = by_code.at(t);
                            std::vector<std::string> args;
                            for (const auto& [k, sub] : tree.children)
                                args.push_back(h.at(fr.cls.at(sub.encode())));
                            auto it = ops_full.find({tree.root, args});
                            if (it == ops_full.end() || it->second != h.at(fr.cls.at(t))) {
                                hom = false;
                                break;
                            }
                        }
                        if (hom)
                            for (const auto& [rep_label, v] : value_of_rep)
                                if (h.at(rep_label) != v) {
                                    rep.ok = false;
                                    rep.notes.push_back("a second structure-respecting map");
                                }
                        std::size_t k = 0;
                        while (k < fpick.size() && ++fpick[k] == carrier.elems.size())
                            fpick[k++] = 0;
                        if (k == fpick.size() || fpick.empty()) break;
                    }
                }

                std::size_t k = 0;
                while (k < gpick.size() && ++gpick[k] == carrier.elems.size()) gpick[k++] = 0;
                if (k == gpick.size() || gpick.empty()) break;
            }
        }
    }
    return rep;
}

} // namespace pretop::wtypes
