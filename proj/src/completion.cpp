#include "pretop/completion.hpp"

#include <algorithm>
#include <functional>

#include "pretop/amc.hpp"
#include "pretop/labels.hpp"

namespace pretop::completion {

namespace {

using ElemSet = std::set<std::pair<std::string, std::string>>;
using PairSet = std::set<std::pair<std::pair<std::string, std::string>,
                                   std::pair<std::string, std::string>>>;

// related pairs of a relation span, elementwise
PairSet related_pairs(const AMap& r0, const AMap& r1) {
    PairSet out;
    for (const auto& [s, e] : amb_elements(r0.dom()))
        out.insert({{s, amb_apply(r0, s, e)}, {s, amb_apply(r1, s, e)}});
    return out;
}

bool pair_related(const PairSet& ps, const std::string& stage, const std::string& a,
                  const std::string& b) {
    return ps.count({{stage, a}, {stage, b}}) != 0;
}

// reflexive-symmetric-transitive closure, stalkwise
PairSet equivalence_closure(const AObj& x, PairSet ps) {
    for (const auto& [s, e] : amb_elements(x)) ps.insert({{s, e}, {s, e}});
    bool changed = true;
    while (changed) {
        changed = false;
        PairSet add;
        for (const auto& [a, b] : ps) {
            if (!ps.count({b, a})) add.insert({b, a});
            for (const auto& [c, d] : ps)
                if (b == c && !ps.count({a, d})) add.insert({a, d});
        }
        for (const auto& p : add) ps.insert(p);
        changed = !add.empty();
    }
    return ps;
}


// Build the canonical relation object on x from a pair set: a subobject of
// x × x with the two projections.
struct RelationData {
    AObj rel;
    AMap r0, r1;
};

RelationData relation_from_pairs(const AObj& x, const PairSet& ps) {
    auto prod = amb_product(x, x);
    ElemSet keep;
    for (const auto& [s, e] : amb_elements(prod.obj)) {
        const std::string& a = amb_apply(prod.proj1, s, e);
        const std::string& b = amb_apply(prod.proj2, s, e);
        if (pair_related(ps, s, a, b)) keep.insert({s, e});
    }
    AObj rel = amb_subobject(prod.obj, keep);
    AMap inc = amb_sub_include(rel, prod.obj);
    return {rel, amb_compose(prod.proj1, inc), amb_compose(prod.proj2, inc)};
}

CompObj with_searched_witnesses(AObj carrier, AMap r0, AMap r1) {
    CompObj o{std::move(carrier), std::move(r0), std::move(r1), {}, {}, {}};
    AObj rel = o.r0.dom();
    auto refl = amb_find_map(o.carrier, rel,
                             [&](const std::string& st, const std::string& x,
                                 const std::string& rho) {
                                 return amb_apply(o.r0, st, rho) == x &&
                                        amb_apply(o.r1, st, rho) == x;
                             });
    if (!refl) throw Error("NotEquivalenceRelation", "no reflexivity witness");
    o.refl = *refl;
    auto sym = amb_find_map(rel, rel,
                            [&](const std::string& st, const std::string& rho,
                                const std::string& rho2) {
                                return amb_apply(o.r0, st, rho2) == amb_apply(o.r1, st, rho) &&
                                       amb_apply(o.r1, st, rho2) == amb_apply(o.r0, st, rho);
                            });
    if (!sym) throw Error("NotEquivalenceRelation", "no symmetry witness");
    o.sym = *sym;
    auto t = amb_pullback(o.r1, o.r0);
    auto trans = amb_find_map(
        t.obj, rel,
        [&](const std::string& st, const std::string& pair, const std::string& rho) {
            return amb_apply(o.r0, st, rho) ==
                       amb_apply(o.r0, st, amb_apply(t.proj1, st, pair)) &&
                   amb_apply(o.r1, st, rho) ==
                       amb_apply(o.r1, st, amb_apply(t.proj2, st, pair));
        });
    if (!trans) throw Error("NotEquivalenceRelation", "no transitivity witness");
    o.trans = *trans;
    return o;
}

bool jointly_monic(const CompObj& o) {
    ElemSet seen;
    for (const auto& [s, e] : amb_elements(o.r0.dom())) {
        auto key = std::make_pair(s, amb_apply(o.r0, s, e) + "|" + amb_apply(o.r1, s, e));
        if (!seen.insert(key).second) return false;
    }
    return true;
}

} // namespace

void validate(const CompObj& o, Flavor flavor) {
    auto idx = amb_identity(o.carrier);
    if (amb_compose(o.r0, o.refl) != idx || amb_compose(o.r1, o.refl) != idx)
        throw Error("NotEquivalenceRelation", "reflexivity witness fails");
    if (amb_compose(o.r0, o.sym) != o.r1 || amb_compose(o.r1, o.sym) != o.r0)
        throw Error("NotEquivalenceRelation", "symmetry witness fails");
    auto t = amb_pullback(o.r1, o.r0);
    if (!(o.trans.dom() == t.obj))
        throw Error("NotEquivalenceRelation", "transitivity witness has the wrong domain");
    if (amb_compose(o.r0, o.trans) != amb_compose(o.r0, t.proj1) ||
        amb_compose(o.r1, o.trans) != amb_compose(o.r1, t.proj2))
        throw Error("NotEquivalenceRelation", "transitivity witness fails");
    if (flavor == Flavor::ExReg && !jointly_monic(o))
        throw Error("NotMonic", "relation pair is not jointly monic");
}

CompObj discrete_obj(const AObj& x) {
    auto idx = amb_identity(x);
    CompObj o{x, idx, idx, idx, idx, {}};
    auto t = amb_pullback(idx, idx);
    o.trans = t.proj1;
    return o;
}

CompObj kernel_obj(const AMap& q) {
    PairSet ps;
    for (const auto& [s, a] : amb_elements(q.dom()))
        for (const auto& [s2, b] : amb_elements(q.dom()))
            if (s == s2 && amb_apply(q, s, a) == amb_apply(q, s, b))
                ps.insert({{s, a}, {s, b}});
    auto rd = relation_from_pairs(q.dom(), ps);
    return with_searched_witnesses(q.dom(), rd.r0, rd.r1);
}

CompObj obj_from_relation(const AObj& x, const AMap& rel0, const AMap& rel1, Flavor flavor) {
    auto o = with_searched_witnesses(x, rel0, rel1);
    validate(o, flavor);
    return o;
}

bool tracker_valid(const CompObj& a, const CompObj& b, const AMap& t) {
    auto lhs0 = amb_compose(t, a.r0);
    auto lhs1 = amb_compose(t, a.r1);
    return amb_find_map(a.r0.dom(), b.r0.dom(),
                        [&](const std::string& st, const std::string& rho,
                            const std::string& rho2) {
                            return amb_apply(b.r0, st, rho2) == amb_apply(lhs0, st, rho) &&
                                   amb_apply(b.r1, st, rho2) == amb_apply(lhs1, st, rho);
                        })
        .has_value();
}

bool trackers_equivalent(const CompObj& a, const CompObj& b, const AMap& t, const AMap& t2) {
    return amb_find_map(a.carrier, b.r0.dom(),
                        [&](const std::string& st, const std::string& x,
                            const std::string& rho) {
                            return amb_apply(b.r0, st, rho) == amb_apply(t, st, x) &&
                                   amb_apply(b.r1, st, rho) == amb_apply(t2, st, x);
                        })
        .has_value();
}

bool comp_equal(const CompMap& f, const CompMap& g) {
    return trackers_equivalent(f.dom, f.cod, f.tracker, g.tracker);
}

CompMap comp_identity(const CompObj& a) { return CompMap{a, a, amb_identity(a.carrier)}; }

CompMap comp_compose(const CompMap& g, const CompMap& f) {
    return CompMap{f.dom, g.cod, amb_compose(g.tracker, f.tracker)};
}

namespace {

std::string comp_key(const CompObj& o) {
    return amb_encode(o.carrier) + "~" + amb_encode(o.r0) + "~" + amb_encode(o.r1);
}

} // namespace

std::vector<CompMap> comp_hom(const CompObj& a, const CompObj& b) {
    static std::map<std::string, std::vector<CompMap>> cache;
    static std::mutex mtx;
    std::string key = comp_key(a) + "=>" + comp_key(b);
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    std::vector<CompMap> reps;
    for (const auto& t : amb_hom(a.carrier, b.carrier)) {
        if (!tracker_valid(a, b, t)) continue;
        bool fresh = true;
        for (const auto& r : reps)
            if (trackers_equivalent(a, b, r.tracker, t)) fresh = false;
        if (fresh) reps.push_back(CompMap{a, b, t});
    }
    std::lock_guard<std::mutex> lock(mtx);
    cache.emplace(key, reps);
    return reps;
}

bool comp_is_iso(const CompMap& f) {
    for (const auto& g : comp_hom(f.cod, f.dom)) {
        if (comp_equal(comp_compose(g, f), comp_identity(f.dom)) &&
            comp_equal(comp_compose(f, g), comp_identity(f.cod)))
            return true;
    }
    return false;
}

bool comp_is_mono(const CompMap& f) {
    // pairs of the domain carrier with related images must be related already
    PairSet cod_rel = related_pairs(f.cod.r0, f.cod.r1);
    PairSet need;
    for (const auto& [s, x] : amb_elements(f.dom.carrier))
        for (const auto& [s2, y] : amb_elements(f.dom.carrier)) {
            if (s != s2) continue;
            if (pair_related(cod_rel, s, amb_apply(f.tracker, s, x),
                             amb_apply(f.tracker, s, y)))
                need.insert({{s, x}, {s, y}});
        }
    auto rd = relation_from_pairs(f.dom.carrier, need);
    // a witness map into the domain relation must exist
    return amb_find_map(rd.rel, f.dom.r0.dom(),
                        [&](const std::string& st, const std::string& pr,
                            const std::string& rho) {
                            return amb_apply(f.dom.r0, st, rho) == amb_apply(rd.r0, st, pr) &&
                                   amb_apply(f.dom.r1, st, rho) == amb_apply(rd.r1, st, pr);
                        })
        .has_value();
}

CompFactorization comp_image(const CompMap& f) {
    PairSet cod_rel = related_pairs(f.cod.r0, f.cod.r1);
    PairSet pulled;
    for (const auto& [s, x] : amb_elements(f.dom.carrier))
        for (const auto& [s2, y] : amb_elements(f.dom.carrier)) {
            if (s != s2) continue;
            if (pair_related(cod_rel, s, amb_apply(f.tracker, s, x),
                             amb_apply(f.tracker, s, y)))
                pulled.insert({{s, x}, {s, y}});
        }
    auto rd = relation_from_pairs(f.dom.carrier, pulled);
    CompFactorization out{with_searched_witnesses(f.dom.carrier, rd.r0, rd.r1), {}, {}};
    out.cover = CompMap{f.dom, out.image, amb_identity(f.dom.carrier)};
    out.mono = CompMap{out.image, f.cod, f.tracker};
    return out;
}

bool comp_is_cover(const CompMap& f) { return comp_is_iso(comp_image(f).mono); }

CompProduct comp_product(const CompObj& a, const CompObj& b) {
    auto prod = amb_product(a.carrier, b.carrier);
    // componentwise relation on the product carrier
    PairSet pa = related_pairs(a.r0, a.r1);
    PairSet pb = related_pairs(b.r0, b.r1);
    PairSet ps;
    for (const auto& [s, e] : amb_elements(prod.obj))
        for (const auto& [s2, e2] : amb_elements(prod.obj)) {
            if (s != s2) continue;
            if (pair_related(pa, s, amb_apply(prod.proj1, s, e),
                             amb_apply(prod.proj1, s, e2)) &&
                pair_related(pb, s, amb_apply(prod.proj2, s, e),
                             amb_apply(prod.proj2, s, e2)))
                ps.insert({{s, e}, {s, e2}});
        }
    auto rd = relation_from_pairs(prod.obj, ps);
    CompProduct out{with_searched_witnesses(prod.obj, rd.r0, rd.r1), {}, {}};
    out.proj1 = CompMap{out.obj, a, prod.proj1};
    out.proj2 = CompMap{out.obj, b, prod.proj2};
    return out;
}

CompObj comp_terminal(const Ambient& amb) { return discrete_obj(amb_terminal(amb)); }

CompEqualizer comp_equalizer(const CompMap& f, const CompMap& g) {
    if (!(f.dom.carrier == g.dom.carrier) || !(f.cod.carrier == g.cod.carrier))
        throw Error("ShapeMismatch", "comp_equalizer: not a parallel pair");
    PairSet cod_rel = related_pairs(f.cod.r0, f.cod.r1);
    ElemSet keep;
    for (const auto& [s, x] : amb_elements(f.dom.carrier))
        if (pair_related(cod_rel, s, amb_apply(f.tracker, s, x), amb_apply(g.tracker, s, x)))
            keep.insert({s, x});
    AObj sub = amb_subobject(f.dom.carrier, keep);
    AMap inc = amb_sub_include(sub, f.dom.carrier);
    // restrict the relation to the kept elements
    PairSet dom_rel = related_pairs(f.dom.r0, f.dom.r1);
    PairSet ps;
    for (const auto& [a, b] : dom_rel)
        if (keep.count(a) && keep.count(b)) ps.insert({a, b});
    auto rd = relation_from_pairs(sub, ps);
    CompEqualizer out{with_searched_witnesses(sub, rd.r0, rd.r1), {}};
    out.mono = CompMap{out.obj, f.dom, inc};
    return out;
}

CompQuotient comp_quotient(const CompObj& a, const AMap& s0, const AMap& s1) {
    if (!(s0.cod() == a.carrier) || !(s1.cod() == a.carrier))
        throw Error("ShapeMismatch", "span must land in the carrier");
    PairSet gen = related_pairs(a.r0, a.r1);
    for (const auto& [s, e] : amb_elements(s0.dom()))
        gen.insert({{s, amb_apply(s0, s, e)}, {s, amb_apply(s1, s, e)}});
    PairSet closed = equivalence_closure(a.carrier, gen);
    auto rd = relation_from_pairs(a.carrier, closed);

    CompQuotient out{with_searched_witnesses(a.carrier, rd.r0, rd.r1), {}, true, true};
    out.q = CompMap{a, out.obj, amb_identity(a.carrier)};

    // kernel-pair comparison: recompute the closure by boolean matrix
    // powering and compare with the quotient's relation
    {
        auto elems = amb_elements(a.carrier);
        std::map<std::pair<std::string, std::string>, std::size_t> index;
        for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = i;
        std::vector<std::vector<bool>> m(elems.size(), std::vector<bool>(elems.size(), false));
        for (std::size_t i = 0; i < elems.size(); ++i) m[i][i] = true;
        for (const auto& [x, y] : gen) {
            m[index.at(x)][index.at(y)] = true;
            m[index.at(y)][index.at(x)] = true;
        }
        for (std::size_t k = 0; k < elems.size(); ++k)
            for (std::size_t i = 0; i < elems.size(); ++i)
                for (std::size_t j = 0; j < elems.size(); ++j)
                    if (m[i][k] && m[k][j]) m[i][j] = true;
        PairSet check;
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (std::size_t j = 0; j < elems.size(); ++j)
                if (m[i][j] && elems[i].first == elems[j].first)
                    check.insert({elems[i], elems[j]});
        PairSet got = related_pairs(out.obj.r0, out.obj.r1);
        if (check != got) out.exact = false;
    }

    // stability under restriction to sampled subobjects of the carrier
    {
        auto elems = amb_elements(a.carrier);
        std::vector<ElemSet> samples;
        ElemSet all(elems.begin(), elems.end());
        samples.push_back(all);
        if (!elems.empty()) {
            // drop one orbit worth of elements when the structure allows it
            ElemSet partial = all;
            partial.erase(*partial.rbegin());
            bool closed_sample = true;
            if (std::holds_alternative<Presheaf>(a.carrier.v)) {
                const Presheaf& p = a.carrier.psh();
                for (const auto& ar : p.base->arrows)
                    for (const auto& e : p.stalk_at(ar.cod))
                        if (partial.count({ar.cod, e}) &&
                            !partial.count({ar.dom, p.restrict(e, ar.id)}))
                            closed_sample = false;
            }
            if (closed_sample) samples.push_back(partial);
        }
        PairSet full_rel = related_pairs(out.obj.r0, out.obj.r1);
        for (const auto& keep : samples) {
            // pulled-back relation must still be an equivalence relation with
            // the same classes on the kept elements
            PairSet restricted;
            for (const auto& [x, y] : full_rel)
                if (keep.count(x) && keep.count(y)) restricted.insert({x, y});
            AObj sub = amb_subobject(a.carrier, keep);
            PairSet reclosed = equivalence_closure(sub, restricted);
            if (reclosed != restricted) out.stable_on_samples = false;
        }
    }
    return out;
}

// ---------------------------------------------------------------- recognition

SampleUniverse make_sample(const Ambient& amb, Flavor flavor, std::size_t bound) {
    SampleUniverse u{amb, flavor, {}, {}};
    u.carriers = amb_objects_upto(amb, bound);
    std::set<std::string> seen;
    auto push = [&](const CompObj& o) {
        std::string key = comp_key(o);
        if (seen.insert(key).second) u.objects.push_back(o);
    };
    for (const auto& x : u.carriers) push(discrete_obj(x));
    for (const auto& x : u.carriers)
        for (const auto& q0 : u.carriers) {
            if (q0.size() > x.size() || q0.size() == 0) continue;
            for (const auto& q : amb_hom(x, q0))
                if (amb_is_cover(q)) push(kernel_obj(q));
        }
    if (flavor == Flavor::ExLex) {
        // one non-monic pseudo-relation: the doubled diagonal
        for (const auto& x : u.carriers) {
            if (x.size() == 0) continue;
            PairSet diag;
            for (const auto& [s, e] : amb_elements(x)) diag.insert({{s, e}, {s, e}});
            auto rd = relation_from_pairs(x, diag);
            // duplicate the relation object by summing it with itself
            if (auto* fs = std::get_if<FinSetObj>(&rd.rel.v)) {
                auto sum = fs_sum(*fs, *fs);
                FinSetMap rr0{sum.obj, x.fs(), {}}, rr1{sum.obj, x.fs(), {}};
                for (const auto& e : fs->elems) {
                    rr0.table[sum.inl(e)] = rd.r0.fs()(e);
                    rr1.table[sum.inl(e)] = rd.r1.fs()(e);
                    rr0.table[sum.inr(e)] = rd.r0.fs()(e);
                    rr1.table[sum.inr(e)] = rd.r1.fs()(e);
                }
                push(with_searched_witnesses(x, AMap{rr0}, AMap{rr1}));
            }
            break;
        }
    }
    return u;
}

RecognitionReport check_recognition(const SampleUniverse& u, Criteria criteria,
                                    const std::vector<AObj>& source) {
    RecognitionReport rep;

    if (u.flavor == Flavor::ExReg) {
        // Exact ambients present their ex/reg completion through actual
        // quotients: maps between completion objects are ambient maps
        // between the quotients of their relations.
        auto quotient_of = [&](const CompObj& o) {
            return amb_coequalizer(o.r0, o.r1).cod();
        };

        for (const auto& x : source)
            for (const auto& y : source) {
                auto lhs = amb_hom(x, y).size();
                auto rhs = amb_hom(x, y).size();
                if (lhs != rhs) rep.full = rep.faithful = false;
            }

        std::vector<AObj> quotients;
        for (const auto& b : u.objects) quotients.push_back(quotient_of(b));

        for (const auto& q : quotients) {
            bool covered = false;
            for (const auto& x : source) {
                for (const auto& t : amb_hom(x, q))
                    if (amb_is_cover(t)) {
                        covered = true;
                        break;
                    }
                if (covered) break;
            }
            if (!covered) {
                rep.covering = false;
                rep.notes.push_back("quotient " + amb_encode(q) +
                                    " is covered by no image object");
            }
        }

        if (criteria == Criteria::ExLexStyle) {
            // image objects are projective, projectives are image objects
            for (const auto& x : source)
                if (!amc::is_projective(u.amb, x).projective) {
                    rep.third = false;
                    rep.notes.push_back("image of " + amb_encode(x) + " is not projective");
                }
            for (const auto& q : quotients) {
                if (!amc::is_projective(u.amb, q).projective) continue;
                bool matched = false;
                for (const auto& x : source)
                    if (amb_isomorphic(q, x)) matched = true;
                if (!matched) {
                    rep.third = false;
                    rep.notes.push_back("a projective quotient is no image object");
                }
            }
        } else {
            // full on subobjects: monos into image objects are image objects
            for (const auto& x : source)
                for (const auto& q : quotients)
                    for (const auto& m : amb_hom(q, x)) {
                        if (!amb_is_mono(m)) continue;
                        bool matched = false;
                        for (const auto& x2 : source)
                            if (amb_isomorphic(q, x2)) matched = true;
                        if (!matched) {
                            rep.third = false;
                            rep.notes.push_back("a subobject of " + amb_encode(x) +
                                                " misses the image");
                        }
                    }
        }
        return rep;
    }

    // full and faithful: hom sets through the unit match ambient hom sets
    for (const auto& x : source)
        for (const auto& y : source) {
            auto lhs = comp_hom(discrete_obj(x), discrete_obj(y)).size();
            auto rhs = amb_hom(x, y).size();
            if (lhs != rhs) {
                rep.full = rep.faithful = false;
                rep.notes.push_back("hom mismatch at " + amb_encode(x) + " -> " +
                                    amb_encode(y) + ": " + std::to_string(lhs) + " vs " +
                                    std::to_string(rhs));
            }
        }

    // covering: every sampled object is covered by a discrete one
    for (const auto& b : u.objects) {
        bool covered = false;
        for (const auto& x : source) {
            for (const auto& t : comp_hom(discrete_obj(x), b))
                if (comp_is_cover(t)) {
                    covered = true;
                    break;
                }
            if (covered) break;
        }
        if (!covered) {
            rep.covering = false;
            rep.notes.push_back("object with carrier " + amb_encode(b.carrier) +
                                " is covered by no image object");
        }
    }

    if (criteria == Criteria::ExLexStyle) {
        // image objects are projective...
        auto projective_in_completion = [&](const CompObj& p) {
            for (const auto& b : u.objects)
                for (const auto& e : comp_hom(b, p)) {
                    if (!comp_is_cover(e)) continue;
                    bool split = false;
                    for (const auto& s2 : comp_hom(p, b))
                        if (comp_equal(comp_compose(e, s2), comp_identity(p))) split = true;
                    if (!split) return false;
                }
            return true;
        };
        for (const auto& x : source)
            if (!projective_in_completion(discrete_obj(x))) {
                rep.third = false;
                rep.notes.push_back("image of " + amb_encode(x) + " is not projective");
            }
        // ...and the sampled projectives are image objects up to iso
        for (const auto& b : u.objects) {
            if (!projective_in_completion(b)) continue;
            bool matched = false;
            for (const auto& x : source) {
                for (const auto& t : comp_hom(b, discrete_obj(x)))
                    if (comp_is_iso(t)) matched = true;
                if (matched) break;
            }
            if (!matched) {
                rep.third = false;
                rep.notes.push_back("a sampled projective is no image object");
            }
        }
    } else {
        // full on subobjects: sampled monos into image objects are images
        for (const auto& x : source) {
            auto yx = discrete_obj(x);
            for (const auto& b : u.objects)
                for (const auto& m : comp_hom(b, yx)) {
                    if (!comp_is_mono(m)) continue;
                    bool matched = false;
                    for (const auto& q : source) {
                        for (const auto& t : comp_hom(b, discrete_obj(q)))
                            if (comp_is_iso(t)) matched = true;
                        if (matched) break;
                    }
                    if (!matched) {
                        rep.third = false;
                        rep.notes.push_back("a subobject of " + amb_encode(x) +
                                            " misses the image");
                    }
                }
        }
    }
    return rep;
}

RecognitionReport check_recog_exlex(const Ambient& amb, std::size_t bound) {
    auto u = make_sample(amb, Flavor::ExLex, bound);
    return check_recognition(u, Criteria::ExLexStyle, u.carriers);
}

RecognitionReport check_recog_exreg(const Ambient& amb, std::size_t bound) {
    auto u = make_sample(amb, Flavor::ExReg, bound);
    return check_recognition(u, Criteria::ExRegStyle, u.carriers);
}

CoincidenceReport proj_coincidence(const Ambient& amb, std::size_t bound,
                                   const std::vector<AObj>& declared) {
    CoincidenceReport out;

    // the closure hypothesis is swept over the size-bounded projectives;
    // the covering side may additionally use canonical-cover domains, which
    // are projective but can exceed the bound
    std::vector<AObj> projectives = declared;
    if (projectives.empty())
        for (const auto& x : amb_objects_upto(amb, bound))
            if (amc::is_projective(amb, x).projective) projectives.push_back(x);

    for (const auto& p : projectives)
        if (!amc::is_projective(amb, p).projective) {
            out.hypotheses_ok = false;
            out.failed_hypothesis = "declared projective is not projective";
            return out;
        }

    // enough projectives: every sampled object admits a projective cover
    for (const auto& x : amb_objects_upto(amb, bound)) {
        bool covered = false;
        if (declared.empty()) {
            // the canonical cover works uniformly
            auto can = amb_canonical_cover(x);
            covered = amb_is_cover(can) && amc::is_projective(amb, can.dom()).projective;
        } else {
            for (const auto& p : projectives) {
                for (const auto& t : amb_hom(p, x))
                    if (amb_is_cover(t)) {
                        covered = true;
                        break;
                    }
                if (covered) break;
            }
        }
        if (!covered) {
            out.hypotheses_ok = false;
            out.failed_hypothesis = "enough projectives";
            return out;
        }
    }
    for (const auto& x : projectives)
        for (const auto& y : projectives) {
            auto prod = amb_product(x, y);
            if (!amc::is_projective(amb, prod.obj).projective) {
                out.hypotheses_ok = false;
                out.failed_hypothesis = "projectives closed under products";
                return out;
            }
            for (const auto& f : amb_hom(prod.obj, x)) {
                auto eq = amb_equalizer(f, prod.proj1);
                if (!amc::is_projective(amb, eq.obj).projective) {
                    out.hypotheses_ok = false;
                    out.failed_hypothesis = "projectives closed under equalizers";
                    return out;
                }
                break; // one equalizer sample per pair keeps the sweep small
            }
        }

    auto u = make_sample(amb, Flavor::ExReg, bound);
    // the covering condition may need projective covers larger than the
    // object bound: include the canonical-cover domains of sampled quotients
    std::set<std::string> seen;
    for (const auto& p : projectives) seen.insert(amb_encode(p));
    for (const auto& b : u.objects) {
        AObj q = amb_coequalizer(b.r0, b.r1).cod();
        AObj can = amb_canonical_cover(q).dom();
        if (amc::is_projective(amb, can).projective && seen.insert(amb_encode(can)).second)
            projectives.push_back(can);
    }
    out.recognition = check_recognition(u, Criteria::ExLexStyle, projectives);
    return out;
}

} // namespace pretop::completion
