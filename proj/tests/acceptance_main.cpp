// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>

#include "pretop/completion.hpp"
#include "pretop/logic.hpp"
#include "pretop/sites.hpp"

#include "oracles.hpp"

using namespace pretop;

namespace {

int failures = 0;

void criterion(const std::string& name, double budget_s,
               const std::function<bool(std::vector<std::string>&)>& body) {
    std::vector<std::string> notes;
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body(notes);
    } catch (const std::exception& e) {
        notes.push_back(std::string("exception: ") + e.what());
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget_s > 0 && secs > budget_s) {
        ok = false;
        notes.push_back("time budget exceeded");
    }
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "  (" << secs << " s)\n";
    for (const auto& n : notes) std::cout << "       " << n << "\n";
    if (!ok) ++failures;
}

Presheaf two_over_one(const CategoryRef& c, const std::string& hi, const std::string& lo) {
    Presheaf p;
    p.base = c;
    p.stalk[hi] = {"x", "xp"};
    p.stalk[lo] = {"d"};
    p.act[{c->id_of(hi), "x"}] = "x";
    p.act[{c->id_of(hi), "xp"}] = "xp";
    p.act[{c->id_of(lo), "d"}] = "d";
    for (const auto& a : c->arrows)
        if (a.dom == lo && a.cod == hi) {
            p.act[{a.id, "x"}] = "d";
            p.act[{a.id, "xp"}] = "d";
        }
    return require_valid(std::move(p));
}

amc::Square stuck_square(const CategoryRef& c) {
    auto amb = Ambient::finpsh(c);
    auto x = two_over_one(c, "1", "0");
    auto one = terminal_presheaf(c);
    NatTrans to1 = psh_to_terminal(x);
    return amc::Square{amb, AMap{to1}, AMap{to1}, AMap{psh_identity(one)},
                       AMap{psh_identity(x)}};
}

FinSetMap random_map(std::mt19937& rng, const FinSetObj& dom, const FinSetObj& cod) {
    std::uniform_int_distribution<std::size_t> pick(0, cod.elems.size() - 1);
    FinSetMap f{dom, cod, {}};
    for (const auto& e : dom.elems) f.table[e] = cod.elems[pick(rng)];
    return f;
}

FinSetMap random_surjection(std::mt19937& rng, const FinSetObj& dom, const FinSetObj& cod) {
    std::uniform_int_distribution<std::size_t> pick(0, cod.elems.size() - 1);
    FinSetMap f{dom, cod, {}};
    for (std::size_t i = 0; i < dom.elems.size(); ++i)
        f.table[dom.elems[i]] =
            i < cod.elems.size() ? cod.elems[i] : cod.elems[pick(rng)];
    return f;
}

sites::Site demo_site(const CategoryRef& c) {
    sites::Site s;
    s.cat = c;
    s.cov["C"] = {sites::CoveringFamily{"U", "C", {"u"}}};
    s.cov["D"] = {sites::CoveringFamily{"V", "D", {"id_D"}}};
    return s;
}

std::vector<sites::Site> site_corpus() {
    std::vector<sites::Site> out;
    auto arrow = require_valid(arrow_category());
    out.push_back(demo_site(arrow));
    {
        sites::Site s;
        s.cat = arrow;
        for (const auto& o : arrow->objects)
            s.cov[o] = {sites::CoveringFamily{"max_" + o, o, {arrow->id_of(o)}}};
        out.push_back(s);
    }
    {
        sites::Site s;
        s.cat = arrow; // no families at all
        out.push_back(s);
    }
    {
        auto chain = require_valid(chain3_category());
        sites::Site s;
        s.cat = chain;
        s.cov["2"] = {sites::CoveringFamily{"W", "2", {"g", "gf"}}};
        s.cov["1"] = {sites::CoveringFamily{"I1", "1", {"id_1"}}};
        s.cov["0"] = {sites::CoveringFamily{"I0", "0", {"id_0"}}};
        out.push_back(s);
    }
    {
        auto pp = require_valid(parallel_pair_category());
        sites::Site s;
        s.cat = pp;
        s.cov["b"] = {sites::CoveringFamily{"UV", "b", {"u", "v"}}};
        s.cov["a"] = {sites::CoveringFamily{"Ia", "a", {"id_a"}}};
        out.push_back(s);
    }
    {
        auto span = require_valid(span_category());
        sites::Site s;
        s.cat = span;
        s.cov["l"] = {sites::CoveringFamily{"F", "l", {"f"}}};
        s.cov["r"] = {sites::CoveringFamily{"G", "r", {"g"}}};
        s.cov["s"] = {sites::CoveringFamily{"Is", "s", {"id_s"}}};
        out.push_back(s);
    }
    return out;
}

} // namespace

int main() {
    std::cout << "acceptance suite\n================\n";

    criterion("C1 representation square: covering + strong collection on 20 random pairs",
              10.0, [](std::vector<std::string>& notes) {
        std::mt19937 rng(41);
        std::uniform_int_distribution<std::size_t> sz(1, 4);
        std::size_t done = 0;
        while (done < 20) {
            auto a = fs_canonical(sz(rng), "a");
            auto b = fs_canonical(sz(rng), "b");
            auto f = random_map(rng, b, a);
            // randomized representation, all carriers <= 4, membership by
            // rejection
            auto u = fs_canonical(sz(rng), "u");
            auto e = fs_canonical(sz(rng), "e");
            auto pi = random_map(rng, e, u);
            auto cls = amc::small_class_from_representation(pi);
            if (!cls.member(f)) continue;
            auto sq = amc::rp_square_from_representation(f, cls);
            if (!amc::is_covering_square(sq).covering) {
                notes.push_back("covering fails at trial " + std::to_string(done));
                return false;
            }
            if (!amc::is_collection_square(sq, true).collection) {
                notes.push_back("strong collection fails at trial " + std::to_string(done));
                return false;
            }
            ++done;
        }
        notes.push_back("20/20 squares pass both checks");
        return true;
    });

    criterion("C2 class from a square: membership and the small-map axioms", 30.0,
              [](std::vector<std::string>& notes) {
        std::mt19937 rng(42);
        std::uniform_int_distribution<std::size_t> sz(1, 3);
        std::size_t done = 0;
        while (done < 10) {
            auto a = fs_canonical(sz(rng), "a");
            auto b = fs_canonical(sz(rng) + 1, "b");
            auto c = fs_canonical(a.size() + sz(rng), "c");
            auto f = random_map(rng, b, a);
            auto p = random_surjection(rng, c, a);
            auto pb = fs_pullback(f, p);
            amc::Square sq{Ambient::finset(), AMap{f}, AMap{pb.proj2}, AMap{p},
                           AMap{pb.proj1}};
            if (!amc::is_covering_square(sq).covering) continue;
            auto cls = amc::small_class_from_square(sq);
            if (!cls.member(f)) {
                notes.push_back("class misses its own right-hand map");
                return false;
            }
            // S1 along every map from carriers up to size 4, S2 on covering
            // squares over every sampled cover, S3 on a sampled cover
            std::vector<amc::S1Instance> s1;
            for (std::size_t nk = 1; nk <= 4; ++nk)
                for (const auto& k : fs_all_maps(fs_canonical(nk, "k"), a))
                    s1.push_back({f, k});
            std::vector<amc::S2Instance> s2{{sq}};
            for (std::size_t nc = a.size(); nc <= 4; ++nc) {
                auto c2 = fs_canonical(nc, "cc");
                auto p2 = random_surjection(rng, c2, a);
                auto pb2 = fs_pullback(f, p2);
                s2.push_back({amc::Square{Ambient::finset(), AMap{f}, AMap{pb2.proj2},
                                          AMap{p2}, AMap{pb2.proj1}}});
            }
            auto y = fs_canonical(b.size() + 1, "y");
            std::vector<amc::S3Instance> s3{{random_surjection(rng, y, b), f}};
            auto rep = amc::check_small_axioms(cls, s1, s2, s3);
            if (!rep.ok) {
                for (const auto& l : rep.lines) notes.push_back(l);
                return false;
            }
            ++done;
        }
        notes.push_back("10/10 squares generate classes passing S1, S2, S3 instances");
        return true;
    });

    criterion("C3 fiberwise refinement agrees with the lifting characterization", 30.0,
              [](std::vector<std::string>& notes) {
        std::size_t corpus = 0, agreements = 0;
        auto check = [&](const amc::Square& sq) {
            if (!amc::commutes(sq)) return;
            if (!amc::is_covering_square(sq).covering) return;
            ++corpus;
            bool lhs = amc::is_collection_square(sq, false).collection;
            bool rhs = amc::collection_square_by_lifting(sq).collection;
            if (lhs == rhs) ++agreements;
        };
        std::mt19937 rng(43);
        std::uniform_int_distribution<std::size_t> sz(1, 4);
        for (int t = 0; t < 35; ++t) {
            auto a = fs_canonical(sz(rng), "a");
            auto b = fs_canonical(sz(rng), "b");
            auto c = fs_canonical(a.size() + sz(rng) - 1, "c");
            auto f = random_map(rng, b, a);
            auto p = random_surjection(rng, c, a);
            auto pb = fs_pullback(f, p);
            check(amc::Square{Ambient::finset(), AMap{f}, AMap{pb.proj2}, AMap{p},
                              AMap{pb.proj1}});
            check(amc::identity_square(Ambient::finset(), AMap{f}));
        }
        auto arrow01 = require_valid(arrow_category_01());
        auto amb = Ambient::finpsh(arrow01);
        auto x = two_over_one(arrow01, "1", "0");
        check(stuck_square(arrow01));
        check(amc::transpose(stuck_square(arrow01)));
        check(amc::identity_square(amb, AMap{psh_identity(x)}));
        check(amc::identity_square(amb, AMap{psh_to_terminal(x)}));
        for (const auto& p : psh_universe(arrow01, 2)) {
            if (p.total_size() == 0) continue;
            check(amc::identity_square(amb, AMap{psh_to_terminal(p)}));
        }
        auto found = amc::find_amc_square(amb, AMap{psh_identity(x)});
        if (found.found) check(*found.square);
        notes.push_back(std::to_string(agreements) + "/" + std::to_string(corpus) +
                        " covering squares agree");
        return corpus >= 50 && agreements == corpus;
    });

    criterion("C4 chain sizes 0 1 2 5 26 and the finiteness trichotomy", 5.0,
              [](std::vector<std::string>& notes) {
        auto pf = wtypes::poly_from_arities({{"leaf", 0}, {"node", 2}});
        auto w = wtypes::wtype(pf, 4);
        if (w.level_sizes() != std::vector<std::size_t>{0, 1, 2, 5, 26}) {
            notes.push_back("binary chain diverges");
            return false;
        }
        // all fiber-size vectors with |A| <= 3, |B| <= 4, against the
        // cardinality-only oracle
        std::size_t sigs = 0;
        for (std::size_t na = 0; na <= 3; ++na) {
            std::vector<std::size_t> v(na, 0);
            std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t i,
                                                                    std::size_t used) {
                if (i == na) {
                    ++sigs;
                    std::map<std::string, std::size_t> ar;
                    for (std::size_t k = 0; k < na; ++k) ar["c" + std::to_string(k)] = v[k];
                    auto pf2 = wtypes::poly_from_arities(ar);
                    std::vector<std::size_t> sizes{0};
                    for (int n = 0; n < 6; ++n) {
                        std::size_t next = 0;
                        for (const auto& s : pf2.shapes().elems) {
                            std::size_t pw = 1;
                            for (std::size_t q = 0; q < pf2.fiber(s).size(); ++q)
                                pw *= sizes.back();
                            next += pw;
                        }
                        sizes.push_back(next);
                    }
                    bool stable = false;
                    std::size_t last = 0;
                    for (std::size_t n = 1; n < sizes.size(); ++n)
                        if (sizes[n] == sizes[n - 1]) {
                            stable = true;
                            last = sizes[n];
                            break;
                        }
                    std::size_t cap = 0;
                    while (cap + 1 < sizes.size() && sizes[cap + 1] <= 200) ++cap;
                    auto w2 = wtypes::wtype(pf2, cap);
                    for (std::size_t n = 0; n < w2.levels.size(); ++n)
                        if (w2.levels[n].size() != sizes[n]) return false;
                    if (stable && last == 0 && w2.kind != wtypes::WKind::Empty) return false;
                    if (stable && last > 0 && w2.kind != wtypes::WKind::Finite) return false;
                    if (!stable && w2.kind != wtypes::WKind::InfiniteTruncated) return false;
                    return true;
                }
                for (std::size_t s = 0; used + s <= 4; ++s) {
                    v[i] = s;
                    if (!rec(i + 1, used + s)) return false;
                }
                return true;
            };
            if (!rec(0, 0)) {
                notes.push_back("trichotomy disagrees with the chain oracle");
                return false;
            }
        }
        notes.push_back(std::to_string(sigs) + " signatures agree with the oracle");
        return true;
    });

    criterion("C5 rank equations on every tree to depth 4", 10.0,
              [](std::vector<std::string>& notes) {
        FinSetObj x = fs_canonical(2);
        std::vector<FinSetMap> family{fs_identity(x)};
        auto sig = wtypes::rank_signature(x, family);
        auto w = wtypes::wtype(sig.pf, 4);
        std::size_t checked = 0;
        std::function<bool(const wtypes::WTree&)> verify = [&](const wtypes::WTree& t) {
            ++checked;
            std::size_t r = wtypes::rank(sig, t);
            if (t.root == sig.zero_ctor && r != 0) return false;
            if (t.root == sig.succ_ctor &&
                r != wtypes::rank(sig, t.children.at("succ:0")) + 1)
                return false;
            if (t.root != sig.zero_ctor && t.root != sig.succ_ctor) {
                std::size_t mx = 0;
                for (const auto& [b, sub] : t.children)
                    mx = std::max(mx, wtypes::rank(sig, sub));
                if (r != mx) return false;
            }
            for (const auto& [b, sub] : t.children)
                if (!verify(sub)) return false;
            return true;
        };
        for (const auto& t : w.value())
            if (!verify(t)) {
                notes.push_back("equation fails at " + t.encode());
                return false;
            }
        notes.push_back(std::to_string(checked) + " nodes satisfy the three equations");
        return true;
    });

    criterion("C6 generated-family levels obey the fixed-point law on 6 sites", 10.0,
              [](std::vector<std::string>& notes) {
        auto corpus = site_corpus();
        for (const auto& s : corpus) {
            auto g = sites::generate_cov(s, 4);
            for (std::size_t n = 0; n + 1 < g.chain.levels.size(); ++n) {
                auto cur = g.chain.sizes_at(n);
                auto nxt = g.chain.sizes_at(n + 1);
                for (const auto& obj : s.cat->objects) {
                    std::size_t expect = 1;
                    for (const auto& u : s.families_on(obj)) {
                        std::size_t prod = 1;
                        for (const auto& a : u.arrows) prod *= cur.at(s.cat->dom(a));
                        expect += prod;
                    }
                    if (nxt.at(obj) != expect) {
                        notes.push_back("law fails on site over " + s.cat->name);
                        return false;
                    }
                }
            }
        }
        notes.push_back(std::to_string(corpus.size()) + " sites, every level exact");
        return true;
    });

    criterion("C7 sheaf equivalence: families vs generated families vs sieves", 60.0,
              [](std::vector<std::string>& notes) {
        auto corpus = site_corpus();
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            const auto& s = corpus[i];
            auto g = sites::generate_cov(s, 3);
            auto j = sites::sieve_saturate(s);
            auto e1 = sites::sheaf_equivalence_check(s, g.site, 2);
            auto e2 = sites::sheaf_equivalence_check(s, j, 2);
            auto e3 = sites::sheaf_equivalence_check(g.site, j, 2);
            if (!e1.equivalent || !e2.equivalent || !e3.equivalent) {
                notes.push_back("site #" + std::to_string(i) + ": " + e1.discrepancy +
                                e2.discrepancy + e3.discrepancy);
                return false;
            }
        }
        notes.push_back(std::to_string(corpus.size()) +
                        " sites, zero discrepancies over all presheaves with stalks <= 2");
        return true;
    });

    criterion("C8 sheafification: unit iso exactly on sheaves, idempotent, universal", 60.0,
              [](std::vector<std::string>& notes) {
        auto corpus = site_corpus();
        std::size_t presheaves = 0;
        for (const auto& s : corpus) {
            auto j = sites::sieve_saturate(s);
            for (const auto& p : psh_universe(s.cat, 2)) {
                ++presheaves;
                auto sh = sites::sheafify(p, j);
                if (!sites::is_sheaf(sh.sheaf, j).sheaf) {
                    notes.push_back("plus-plus output is not a sheaf");
                    return false;
                }
                if (psh_is_iso(sh.unit) != sites::is_sheaf(p, j).sheaf) {
                    notes.push_back("unit iso does not characterize sheaves");
                    return false;
                }
                auto again = sites::sheafify(sh.sheaf, j);
                if (!psh_is_iso(again.unit)) {
                    notes.push_back("sheafification is not idempotent");
                    return false;
                }
            }
            // universal property for a non-sheaf input on the demo site
            if (&s == &corpus.front()) {
                auto p = two_over_one(s.cat, "C", "D");
                auto uni = sites::sheafification_universal(p, j, 2);
                if (!uni.ok || uni.sheaves_checked == 0) {
                    notes.push_back("universal property fails on the demo presheaf");
                    return false;
                }
            }
        }
        notes.push_back(std::to_string(presheaves) + " presheaves across the corpus");
        return true;
    });

    criterion("C9 completion recognition over finite sets and presheaves", 120.0,
              [](std::vector<std::string>& notes) {
        auto exlex = completion::check_recog_exlex(Ambient::finset(), 3);
        if (!exlex.ok()) {
            notes.insert(notes.end(), exlex.notes.begin(), exlex.notes.end());
            return false;
        }
        auto exreg = completion::check_recog_exreg(Ambient::finset(), 3);
        if (!exreg.ok()) {
            notes.insert(notes.end(), exreg.notes.begin(), exreg.notes.end());
            return false;
        }
        auto arrow01 = require_valid(arrow_category_01());
        auto co = completion::proj_coincidence(Ambient::finpsh(arrow01), 2);
        if (!co.ok()) {
            notes.push_back(co.failed_hypothesis);
            notes.insert(notes.end(), co.recognition.notes.begin(),
                         co.recognition.notes.end());
            return false;
        }
        notes.push_back("ex/lex and ex/reg units recognized; projective comparison passes");
        return true;
    });

    criterion("C10 forcing agrees with the subpresheaf semantics on 100+ formulas", 60.0,
              [](std::vector<std::string>& notes) {
        using namespace pretop::logic;
        std::vector<std::pair<Structure, std::string>> structures;

        {
            auto c = require_valid(arrow_category_01());
            auto s = Structure::over_psh(c);
            auto x = two_over_one(c, "1", "0");
            auto y = yoneda_embed(c, "1");
            s.add_sort("X", x);
            s.add_sort("Y", y);
            NatTrans e{y, x, {}};
            e.component[{"1", "id_1"}] = "x";
            e.component[{"0", "u"}] = "d";
            s.add_func("e", e, "Y", "X");
            s.add_pred("P", {"X"}, {{"1", {"x"}}, {"0", {"d"}}});
            structures.push_back({s, "arrow"});
        }
        {
            auto c = require_valid(parallel_pair_category());
            auto s = Structure::over_psh(c);
            Presheaf q;
            q.base = c;
            q.stalk["b"] = {"s", "t", "w"};
            q.stalk["a"] = {"o", "o2"};
            for (const auto& el : q.stalk["b"]) q.act[{"id_b", el}] = el;
            for (const auto& el : q.stalk["a"]) q.act[{"id_a", el}] = el;
            q.act[{"u", "s"}] = "o";
            q.act[{"u", "t"}] = "o";
            q.act[{"u", "w"}] = "o2";
            q.act[{"v", "s"}] = "o";
            q.act[{"v", "t"}] = "o2";
            q.act[{"v", "w"}] = "o2";
            q = require_valid(std::move(q));
            auto y = yoneda_embed(c, "b");
            s.add_sort("X", q);
            s.add_sort("Y", y);
            NatTrans e{y, q, {}};
            e.component[{"b", "id_b"}] = "s";
            e.component[{"a", "u"}] = "o";
            e.component[{"a", "v"}] = "o";
            s.add_func("e", e, "Y", "X");
            s.add_pred("P", {"X"}, {{"b", {"s"}}, {"a", {"o"}}});
            structures.push_back({s, "pair"});
        }

        {
            // three-object base with a composite arrow
            auto c = require_valid(chain3_category());
            auto s = Structure::over_psh(c);
            Presheaf x;
            x.base = c;
            x.stalk["2"] = {"s", "t"};
            x.stalk["1"] = {"m", "n"};
            x.stalk["0"] = {"b"};
            for (const auto& el : x.stalk["2"]) x.act[{"id_2", el}] = el;
            for (const auto& el : x.stalk["1"]) x.act[{"id_1", el}] = el;
            x.act[{"id_0", "b"}] = "b";
            x.act[{"g", "s"}] = "m";
            x.act[{"g", "t"}] = "n";
            x.act[{"f", "m"}] = "b";
            x.act[{"f", "n"}] = "b";
            x.act[{"gf", "s"}] = "b";
            x.act[{"gf", "t"}] = "b";
            x = require_valid(std::move(x));
            auto y = yoneda_embed(c, "2");
            s.add_sort("X", x);
            s.add_sort("Y", y);
            NatTrans e{y, x, {}};
            e.component[{"2", "id_2"}] = "s";
            e.component[{"1", "g"}] = "m";
            e.component[{"0", "gf"}] = "b";
            s.add_func("e", e, "Y", "X");
            s.add_pred("P", {"X"}, {{"2", {"s"}}, {"1", {"m"}}, {"0", {"b"}}});
            structures.push_back({s, "chain3"});
        }

        // generated battery: prefixes over one and two variables
        std::vector<std::string> one_var = {"P(%v)", "~P(%v)", "P(%v) \\/ ~P(%v)",
                                            "~~P(%v)", "%v = %v"};
        std::vector<std::string> two_var = {
            "e(%w) = %v",         "e(%w) = %v -> P(%v)", "P(%v) /\\ P(e(%w))",
            "P(%v) \\/ P(e(%w))", "~(e(%w) = %v)",
        };
        std::size_t battery = 0, disagreements = 0;
        for (const auto& [s, tag] : structures) {
            std::vector<std::string> formulas;
            for (const auto& body : one_var)
                for (const auto& q : {"forall", "exists"}) {
                    std::string b = body;
                    while (b.find("%v") != std::string::npos)
                        b.replace(b.find("%v"), 2, "x0");
                    formulas.push_back(std::string(q) + " x0:X. " + b);
                }
            for (const auto& body : two_var)
                for (const auto& q1 : {"forall", "exists"})
                    for (const auto& q2 : {"forall", "exists"}) {
                        std::string b = body;
                        while (b.find("%v") != std::string::npos)
                            b.replace(b.find("%v"), 2, "x0");
                        while (b.find("%w") != std::string::npos)
                            b.replace(b.find("%w"), 2, "y0");
                        formulas.push_back(std::string(q1) + " x0:X. " + std::string(q2) +
                                           " y0:Y. " + b);
                        formulas.push_back(std::string(q1) + " y0:Y. " + std::string(q2) +
                                           " x0:X. " + b);
                    }
            // propositional combinations of a few closed seeds
            std::vector<std::string> closed = {
                "forall x0:X. P(x0)", "exists x0:X. ~P(x0)",
                "forall x0:X. exists y0:Y. e(y0) = x0"};
            for (const auto& l : closed)
                for (const auto& r : closed) {
                    formulas.push_back("(" + l + ") -> (" + r + ")");
                    formulas.push_back("(" + l + ") /\\ (" + r + ")");
                }

            for (const auto& text : formulas) {
                auto f = parse_formula(text, s.symbol_names());
                ++battery;
                oracle::LogicOracle orc{s, {}};
                auto den = orc.denote(*f);
                for (const auto& stage : s.base->objects) {
                    bool kj = force_at(*f, s, stage, {});
                    bool sem = den.count({stage, {}}) != 0;
                    if (kj != sem) {
                        ++disagreements;
                        notes.push_back("disagreement: " + text + " at stage " + stage +
                                        " [" + tag + "]");
                    }
                }
            }
        }
        notes.push_back(std::to_string(battery) + " formulas, " +
                        std::to_string(disagreements) + " disagreements");
        return battery >= 100 && disagreements == 0;
    });

    criterion("C11 negative witnesses are exhibited", 30.0,
              [](std::vector<std::string>& notes) {
        auto c = require_valid(arrow_category_01());
        auto amb = Ambient::finpsh(c);
        auto x = two_over_one(c, "1", "0");

        auto pr = amc::is_projective(amb, AObj{x});
        if (pr.projective) {
            notes.push_back("expected a non-projective presheaf");
            return false;
        }
        notes.push_back("non-projective presheaf: two sections over one");

        auto ch = amc::check_choice_object(amb, AObj{x}, 3);
        if (ch.verdict != amc::ChoiceVerdict::NotChoice) {
            notes.push_back("expected a non-choice object");
            return false;
        }
        notes.push_back("non-choice object: " + ch.notes.front());

        auto sq = stuck_square(c);
        if (!amc::is_covering_square(sq).covering ||
            amc::is_collection_square(sq, false).collection) {
            notes.push_back("expected a covering square failing collection");
            return false;
        }
        notes.push_back("covering square without the collection property: identity over a "
                        "collapsed pair");
        return true;
    });

    std::cout << (failures == 0 ? "all criteria pass\n"
                                : std::to_string(failures) + " criteria fail\n");
    return failures == 0 ? 0 : 1;
}
