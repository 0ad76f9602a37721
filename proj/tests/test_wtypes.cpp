#include <doctest.h>

#include <functional>

#include "pretop/labels.hpp"
#include "pretop/wtypes.hpp"

using namespace pretop;
using namespace pretop::wtypes;

TEST_SUITE_BEGIN("wtypes");

namespace {

PolyFunctor binary_tree_sig() {
    return poly_from_arities({{"leaf", 0}, {"node", 2}});
}

WTree leaf() { return WTree{"leaf", {}}; }

WTree node(const WTree& l, const WTree& r) {
    return WTree{"node", {{"node:0", l}, {"node:1", r}}};
}

// independent cardinality-only chain: |P(X)| = sum_a |X|^{|B_a|}
std::vector<std::size_t> size_chain(const PolyFunctor& pf, std::size_t cap) {
    std::vector<std::size_t> out{0};
    for (std::size_t n = 0; n < cap; ++n) {
        std::size_t next = 0;
        for (const auto& a : pf.shapes().elems) {
            std::size_t pw = 1;
            for (std::size_t i = 0; i < pf.fiber(a).size(); ++i) pw *= out.back();
            next += pw;
        }
        out.push_back(next);
    }
    return out;
}

} // namespace

TEST_CASE("apply_poly counts") {
    SUBCASE("empty fiber gives the constant-1 functor") {
        auto pf = poly_from_arities({{"a", 0}});
        CHECK(apply_poly(pf, fs_canonical(0)).obj.size() == 1);
        CHECK(apply_poly(pf, fs_canonical(3)).obj.size() == 1);
    }
    SUBCASE("binary signature on a 3-element set") {
        CHECK(apply_poly(binary_tree_sig(), fs_canonical(3)).obj.size() == 10);
    }
    SUBCASE("empty argument leaves only leaf shapes") {
        auto pf = poly_from_arities({{"leaf", 0}, {"node", 2}, {"tip", 0}});
        CHECK(apply_poly(pf, fs_canonical(0)).obj.size() == 2);
    }
}

TEST_CASE("wtype classification") {
    SUBCASE("all fibers inhabited: empty W-type") {
        auto pf = poly_from_arities({{"a", 1}});
        auto w = wtype(pf, 6);
        CHECK(w.kind == WKind::Empty);
        CHECK(w.stabilized);
        CHECK(w.value().empty());
    }
    SUBCASE("only leaves: W = shapes") {
        auto pf = poly_from_arities({{"x", 0}, {"y", 0}});
        auto w = wtype(pf, 6);
        CHECK(w.kind == WKind::Finite);
        CHECK(w.stabilized);
        CHECK(w.value().size() == 2);
    }
    SUBCASE("binary trees: the chain 0 1 2 5 26") {
        auto w = wtype(binary_tree_sig(), 4);
        CHECK(w.kind == WKind::InfiniteTruncated);
        CHECK(!w.stabilized);
        CHECK(w.level_sizes() == std::vector<std::size_t>{0, 1, 2, 5, 26});
    }
}

TEST_CASE("trichotomy agrees with the size-chain oracle on small signatures") {
    // all fiber-size vectors with |A| <= 3, |B| <= 4
    std::vector<std::vector<std::size_t>> shapes;
    for (std::size_t na = 0; na <= 3; ++na) {
        std::vector<std::size_t> v(na, 0);
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
            if (i == na) {
                shapes.push_back(v);
                return;
            }
            for (std::size_t s = 0; used + s <= 4; ++s) {
                v[i] = s;
                rec(i + 1, used + s);
            }
        };
        rec(0, 0);
    }
    const std::size_t cap = 6;
    for (const auto& fibers : shapes) {
        std::map<std::string, std::size_t> arities;
        for (std::size_t i = 0; i < fibers.size(); ++i)
            arities["c" + std::to_string(i)] = fibers[i];
        auto pf = poly_from_arities(arities);
        auto sizes = size_chain(pf, cap);
        // enumerate trees only while the level stays reviewably small
        std::size_t tree_cap = 0;
        while (tree_cap + 1 < sizes.size() && sizes[tree_cap + 1] <= 200) ++tree_cap;
        auto w = wtype(pf, tree_cap);
        for (std::size_t i = 0; i < w.levels.size(); ++i) CHECK(w.levels[i].size() == sizes[i]);
        bool oracle_stable = false;
        std::size_t last = 0;
        for (std::size_t i = 1; i < sizes.size(); ++i)
            if (sizes[i] == sizes[i - 1]) {
                oracle_stable = true;
                last = sizes[i];
                break;
            }
        if (oracle_stable && last == 0) CHECK(w.kind == WKind::Empty);
        if (oracle_stable && last > 0) CHECK(w.kind == WKind::Finite);
        if (!oracle_stable) CHECK(w.kind == WKind::InfiniteTruncated);
    }
}

TEST_CASE("chain levels are exactly the trees of bounded height") {
    auto pf = binary_tree_sig();
    auto w = wtype(pf, 4);
    for (std::size_t n = 0; n < w.levels.size(); ++n) {
        for (const auto& t : w.levels[n]) CHECK(t.height() <= n);
        if (n + 1 < w.levels.size()) {
            // inclusion into the next level
            std::set<std::string> next;
            for (const auto& t : w.levels[n + 1]) next.insert(t.encode());
            for (const auto& t : w.levels[n]) CHECK(next.count(t.encode()) == 1);
            // new elements have full height
            for (const auto& t : w.levels[n + 1])
                if (!std::any_of(w.levels[n].begin(), w.levels[n].end(),
                                 [&](const WTree& s) { return s == t; }))
                    CHECK(t.height() == n + 1);
        }
    }
}

TEST_CASE("wfold computes height and size") {
    auto pf = binary_tree_sig();
    SUBCASE("height algebra") {
        WAlgebra alg;
        alg.carrier = fs_canonical(5, "n");
        for (const auto& [label, dec] : apply_poly(pf, alg.carrier).decode) {
            if (dec.first == "leaf") {
                alg.structure[label] = "n0";
            } else {
                std::size_t mx = 0;
                for (const auto& [b, v] : dec.second)
                    mx = std::max(mx, static_cast<std::size_t>(v[1] - '0'));
                alg.structure[label] = "n" + std::to_string(std::min(mx + 1, std::size_t{4}));
            }
        }
        CHECK(wfold(pf, alg, leaf()) == "n0");
        CHECK(wfold(pf, alg, node(leaf(), leaf())) == "n1");
        CHECK(wfold(pf, alg, node(leaf(), node(leaf(), leaf()))) == "n2");
    }
    SUBCASE("node-count algebra") {
        WAlgebra alg;
        alg.carrier = fs_canonical(8, "n");
        for (const auto& [label, dec] : apply_poly(pf, alg.carrier).decode) {
            std::size_t total = 1;
            for (const auto& [b, v] : dec.second) total += v[1] - '0';
            alg.structure[label] = "n" + std::to_string(std::min(total, std::size_t{7}));
        }
        CHECK(wfold(pf, alg, node(leaf(), node(leaf(), leaf()))) == "n5");
    }
    SUBCASE("constant algebra") {
        WAlgebra alg;
        alg.carrier = FinSetObj{{"only"}};
        for (const auto& label : apply_poly(pf, alg.carrier).obj.elems)
            alg.structure[label] = "only";
        CHECK(wfold(pf, alg, node(leaf(), leaf())) == "only");
    }
    SUBCASE("signature mismatch") {
        WAlgebra alg;
        alg.carrier = FinSetObj{{"only"}};
        for (const auto& label : apply_poly(pf, alg.carrier).obj.elems)
            alg.structure[label] = "only";
        CHECK_THROWS_WITH_AS(wfold(pf, alg, WTree{"stray", {}}),
                             doctest::Contains("SignatureMismatch"), Error);
    }
}

TEST_CASE("wfold is the unique algebra morphism on a finite W") {
    auto pf = poly_from_arities({{"x", 0}, {"y", 0}});
    auto w = wtype(pf, 4);
    REQUIRE(w.kind == WKind::Finite);
    FinSetObj carrier_w;
    for (const auto& t : w.value()) carrier_w.elems.push_back(t.encode());

    for (std::size_t n = 1; n <= 3; ++n) {
        auto x = fs_canonical(n);
        auto app = apply_poly(pf, x);
        for (const auto& s : fs_all_maps(app.obj, x)) {
            WAlgebra alg{x, s.table};
            std::size_t morphisms = 0;
            for (const auto& h : fs_all_maps(carrier_w, x)) {
                bool ok = true;
                for (const auto& t : w.value()) {
                    auto key = lbl_pair(t.root, lbl_table({}));
                    if (h(t.encode()) != alg.structure.at(key)) ok = false;
                }
                if (ok) ++morphisms;
            }
            CHECK(morphisms == 1);
            for (const auto& t : w.value())
                CHECK(wfold(pf, alg, t) == alg.structure.at(lbl_pair(t.root, lbl_table({}))));
        }
    }
}

TEST_CASE("rank equations") {
    FinSetObj x = fs_canonical(3);
    auto p = fs_identity(x);
    auto sig = rank_signature(x, {p});

    WTree zero{"zero", {}};
    auto succ = [&](const WTree& t) { return WTree{"succ", {{"succ:0", t}}}; };

    CHECK(rank(sig, zero) == 0);
    CHECK(rank(sig, succ(zero)) == 1);

    std::map<std::string, WTree> children;
    children.emplace("i0:x0", zero);
    children.emplace("i0:x1", succ(zero));
    children.emplace("i0:x2", succ(succ(succ(zero))));
    CHECK(rank(sig, sup(sig.pf, "i0", children)) == 3);
}

TEST_CASE("rank equations hold on every enumerated tree") {
    FinSetObj x = fs_canonical(2);
    auto sig = rank_signature(x, {fs_identity(x)});
    auto w = wtype(sig.pf, 4);
    for (const auto& t : w.value()) {
        if (t.root == sig.zero_ctor) CHECK(rank(sig, t) == 0);
        if (t.root == sig.succ_ctor)
            CHECK(rank(sig, t) == rank(sig, t.children.at("succ:0")) + 1);
        if (t.root == "i0") {
            std::size_t mx = 0;
            for (const auto& [b, sub] : t.children) mx = std::max(mx, rank(sig, sub));
            CHECK(rank(sig, t) == mx);
        }
    }
}

TEST_CASE("rank closure demo") {
    SUBCASE("singleton carrier with the identity family") {
        FinSetObj one = fs_canonical(1);
        auto rep = rank_closure_demo(one, {fs_identity(one)}, 4);
        CHECK(rep.ok());
        // ranks attained by depth d are exactly 0..d-1
        CHECK(rep.attained == std::set<std::size_t>{0, 1, 2, 3});
    }
    SUBCASE("two-element carrier with the complete small family") {
        FinSetObj x = fs_canonical(2);
        std::vector<FinSetMap> family;
        for (std::size_t n = 2; n <= 3; ++n)
            for (const auto& q : fs_all_surjections(fs_canonical(n, "y"), x))
                family.push_back(q);
        auto rep = rank_closure_demo(x, family, 3);
        CHECK(rep.ok());
    }
    SUBCASE("the empty family cannot realize suprema") {
        FinSetObj x = fs_canonical(1);
        auto rep = rank_closure_demo(x, {}, 3);
        CHECK(rep.zero_attained);
        CHECK(!rep.sup_closed);
    }
}

TEST_CASE("dependent fixpoints") {
    SUBCASE("nullary constructors stabilize immediately") {
        DepPolyFunctor f;
        f.indices = {"C"};
        f.ctors["C"] = {{"U", {}}};
        auto r = dep_fixpoint(f, 5);
        CHECK(r.stabilized);
        CHECK(r.levels.size() == 2);
        CHECK(r.sizes_at(1).at("C") == 2);
    }
    SUBCASE("a unary constructor grows without stabilizing") {
        DepPolyFunctor f;
        f.indices = {"C"};
        f.ctors["C"] = {{"U", {"C"}}};
        auto r = dep_fixpoint(f, 5);
        CHECK(!r.stabilized);
        std::vector<std::size_t> sizes;
        for (std::size_t i = 0; i < r.levels.size(); ++i) sizes.push_back(r.sizes_at(i).at("C"));
        CHECK(sizes == std::vector<std::size_t>{0, 1, 2, 3, 4, 5});
    }
    SUBCASE("level sizes satisfy the fixed-point equation") {
        DepPolyFunctor f;
        f.indices = {"C", "D"};
        f.ctors["C"] = {{"U", {"D", "D"}}};
        f.ctors["D"] = {{"V", {"D"}}};
        auto r = dep_fixpoint(f, 4);
        for (std::size_t n = 0; n + 1 < r.levels.size(); ++n) {
            auto cur = r.sizes_at(n);
            auto next = r.sizes_at(n + 1);
            CHECK(next.at("C") == 1 + cur.at("D") * cur.at("D"));
            CHECK(next.at("D") == 1 + cur.at("D"));
        }
    }
}

TEST_CASE("free algebras") {
    SUBCASE("one constant, no operations") {
        auto fr = free_algebra({{"c", 0}}, FinSetObj{{"g"}}, {}, 3);
        CHECK(fr.class_reps.size() == 2);
        CHECK(!fr.approximate);
    }
    SUBCASE("one unary operation, one generator, cap 4") {
        auto fr = free_algebra({{"f", 1}}, FinSetObj{{"g"}}, {}, 4);
        CHECK(fr.terms ==
              std::vector<std::string>{"f(f(f(f(g))))", "f(f(f(g)))", "f(f(g))", "f(g)", "g"});
        CHECK(fr.class_reps.size() == 5);
    }
    SUBCASE("monoid equations collapse to words in one letter") {
        // unit e, binary m, associativity and unit laws; cap 2 applications
        // reaches words up to g^4, so 5 classes
        using P = TermPat;
        P X = pat_var("X"), Y = pat_var("Y"), Z = pat_var("Z");
        std::vector<std::pair<P, P>> eqs = {
            {pat_app("m", {pat_app("e"), X}), X},
            {pat_app("m", {X, pat_app("e")}), X},
            {pat_app("m", {pat_app("m", {X, Y}), Z}), pat_app("m", {X, pat_app("m", {Y, Z})})},
        };
        auto fr = free_algebra({{"e", 0}, {"m", 2}}, FinSetObj{{"g"}}, eqs, 2);
        CHECK(fr.approximate);
        // independent count: distinct letter-counts of enumerated terms
        std::set<std::size_t> lengths;
        for (const auto& t : fr.terms) {
            std::size_t len = 0;
            for (std::size_t i = 0; i < t.size(); ++i)
                if (t[i] == 'g') ++len;
            lengths.insert(len);
        }
        CHECK(fr.class_reps.size() == lengths.size());
        CHECK(fr.class_reps.size() == 5);
    }
    SUBCASE("universal property for the unary signature") {
        auto fr = free_algebra({{"f", 1}}, FinSetObj{{"g"}}, {}, 3);
        auto rep = free_universal_report(fr, {{"f", 1}}, FinSetObj{{"g"}}, {}, 3);
        CHECK(rep.ok);
        CHECK(rep.algebras_checked > 0);
    }
    SUBCASE("universal property for monoids, carrier size 2") {
        using P = TermPat;
        P X = pat_var("X"), Y = pat_var("Y"), Z = pat_var("Z");
        std::vector<std::pair<P, P>> eqs = {
            {pat_app("m", {pat_app("e"), X}), X},
            {pat_app("m", {X, pat_app("e")}), X},
            {pat_app("m", {pat_app("m", {X, Y}), Z}), pat_app("m", {X, pat_app("m", {Y, Z})})},
        };
        auto fr = free_algebra({{"e", 0}, {"m", 2}}, FinSetObj{{"g"}}, eqs, 2);
        auto rep = free_universal_report(fr, {{"e", 0}, {"m", 2}}, FinSetObj{{"g"}}, eqs, 2);
        CHECK(rep.ok);
        CHECK(rep.algebras_checked > 0);
    }
}

TEST_SUITE_END();
