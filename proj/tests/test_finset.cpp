#include <doctest.h>

#include "pretop/finset.hpp"

using namespace pretop;

TEST_SUITE_BEGIN("finset");

namespace {

FinSetObj two() { return FinSetObj{{"0", "1"}}; }

} // namespace

TEST_CASE("image factorization of a constant map") {
    auto f = fs_map(two(), two(), [](const std::string&) { return std::string("0"); });
    auto r = fs_image_factorization(f);
    CHECK(r.image.elems == std::vector<std::string>{"0"});
    CHECK(fs_is_surjective(r.cover));
    CHECK(fs_is_injective(r.mono));
    CHECK(fs_compose(r.mono, r.cover) == f);
}

TEST_CASE("image factorization of the identity") {
    FinSetObj x{{"a", "b"}};
    auto f = fs_identity(x);
    auto r = fs_image_factorization(f);
    CHECK(r.cover == f);
    CHECK(r.mono == f);
}

TEST_CASE("image factorization of a 3-to-2 map") {
    FinSetObj dom{{"1", "2", "3"}}, cod{{"x", "y"}};
    auto f = fs_map(dom, cod, [](const std::string& e) {
        return e == "3" ? std::string("y") : std::string("x");
    });
    auto r = fs_image_factorization(f);
    CHECK(r.image.elems == std::vector<std::string>{"x", "y"});
    CHECK(r.mono == fs_identity(cod));
}

TEST_CASE("factorizations of the same map are uniquely isomorphic") {
    // exhaustive over all maps between sets of size <= 3
    for (std::size_t n = 0; n <= 3; ++n)
        for (std::size_t m = 1; m <= 3; ++m) {
            auto x = fs_canonical(n, "a");
            auto y = fs_canonical(m, "b");
            for (const auto& f : fs_all_maps(x, y)) {
                auto r = fs_image_factorization(f);
                // any competing factorization through a subset of cod
                for (const auto& g : fs_all_surjections(x, r.image)) {
                    FinSetMap mono{r.image, y, {}};
                    // try every injection completing g to f
                    for (const auto& m2 : fs_all_injections(r.image, y)) {
                        if (fs_compose(m2, g) == f) {
                            // unique comparison iso between the two images
                            std::size_t isos = 0;
                            for (const auto& h : fs_all_maps(r.image, r.image))
                                if (fs_is_injective(h) && fs_is_surjective(h) &&
                                    fs_compose(h, r.cover) == g && fs_compose(m2, h) == r.mono)
                                    ++isos;
                            CHECK(isos == 1);
                        }
                    }
                    (void)mono;
                }
            }
        }
}

TEST_CASE("quotient by the diagonal is a bijection") {
    FinSetObj x{{"a", "b"}};
    auto q = fs_quotient_equiv(fs_diagonal(x));
    CHECK(q.q.cod.size() == 2);
    CHECK(q.kernel_pair_matches);
    CHECK(q.coequalizes);
    CHECK(q.stable_on_samples);
}

TEST_CASE("quotient by the total relation is terminal") {
    FinSetObj x{{"a", "b", "c"}};
    auto q = fs_quotient_equiv(fs_total_relation(x));
    CHECK(q.q.cod.size() == 1);
}

TEST_CASE("quotient by the relation generated by a~b") {
    FinSetObj x{{"a", "b", "c"}};
    auto r = fs_relation_from_pairs(
        x, {{"a", "a"}, {"b", "b"}, {"c", "c"}, {"a", "b"}, {"b", "a"}});
    auto q = fs_quotient_equiv(r);
    CHECK(q.q.cod.size() == 2);
    CHECK(q.q("a") == q.q("b"));
    CHECK(q.q("a") != q.q("c"));
    CHECK(q.kernel_pair_matches);
}

TEST_CASE("non-equivalence relations are rejected with a witness") {
    FinSetObj x{{"a", "b"}};
    auto r = fs_relation_from_pairs(x, {{"a", "a"}, {"b", "b"}, {"a", "b"}});
    CHECK_THROWS_WITH_AS(fs_quotient_equiv(r), doctest::Contains("symmetric"), Error);
}

TEST_CASE("dependent product counts sections") {
    // f: B -> A with A = {a}, B_a = {b1, b2}; g has 2 elements over b1, 3 over b2
    FinSetObj a{{"a"}}, b{{"b1", "b2"}};
    auto f = fs_map(b, a, [](const std::string&) { return std::string("a"); });
    FinSetObj xs{{"x1", "x2", "y1", "y2", "y3"}};
    auto g = fs_map(xs, b, [](const std::string& e) {
        return e[0] == 'x' ? std::string("b1") : std::string("b2");
    });
    auto pi = fs_dependent_product(f, g);
    CHECK(pi.obj.size() == 6);

    SUBCASE("empty fiber of f gives a singleton") {
        FinSetObj b0{{}};
        auto f0 = FinSetMap{b0, a, {}};
        auto g0 = FinSetMap{b0, b0, {}};
        auto pi0 = fs_dependent_product(f0, g0);
        CHECK(pi0.obj.size() == 1);
    }
    SUBCASE("empty fiber of g kills the product") {
        FinSetObj none{{}};
        auto g1 = FinSetMap{none, b, {}};
        auto pi1 = fs_dependent_product(f, g1);
        CHECK(pi1.obj.size() == 0);
    }
}

TEST_CASE("Pi adjunction holds on sampled instances") {
    FinSetObj a{{"a0", "a1"}}, b{{"b0", "b1", "b2"}};
    auto f = fs_map(b, a, [](const std::string& e) {
        return e == "b2" ? std::string("a1") : std::string("a0");
    });
    FinSetObj xs{{"p", "q", "r"}};
    auto g = fs_map(xs, b, [](const std::string& e) {
        if (e == "p") return std::string("b0");
        if (e == "q") return std::string("b1");
        return std::string("b2");
    });
    for (std::size_t n = 0; n <= 2; ++n) {
        auto y = fs_canonical(n, "y");
        for (const auto& h : fs_all_maps(y, a)) CHECK(fs_check_pi_adjunction(f, g, h));
    }
}

TEST_CASE("Beck-Chevalley smoke test: Pi commutes with pullback on fibers") {
    // Pi_f g computed before and after pulling back along k: A' -> A must
    // have matching fiber sizes.
    FinSetObj a{{"a0", "a1"}}, b{{"b0", "b1"}};
    auto f = fs_map(b, a, [](const std::string& e) {
        return e == "b0" ? std::string("a0") : std::string("a1");
    });
    FinSetObj xs{{"u", "v", "w"}};
    auto g = fs_map(xs, b, [](const std::string& e) {
        return e == "w" ? std::string("b1") : std::string("b0");
    });
    FinSetObj a2{{"z0", "z1"}};
    auto k = fs_map(a2, a, [](const std::string&) { return std::string("a0"); });

    auto pi = fs_dependent_product(f, g);
    // pulled-back data
    auto fb = fs_pullback(f, k); // B x_A A'
    auto f2 = fb.proj2;          // -> A'
    auto gb = fs_pullback(g, fb.proj1);
    auto g2 = gb.proj2;          // X x_B (B x_A A') -> B x_A A'
    auto pi2 = fs_dependent_product(f2, g2);
    for (const auto& z : a2.elems) {
        auto lhs = fs_fiber(pi2.proj, z).size();
        auto rhs = fs_fiber(pi.proj, k(z)).size();
        CHECK(lhs == rhs);
    }
}

TEST_CASE("sums are disjoint and stable under pullback") {
    FinSetObj x{{"a"}};
    auto s = fs_sum(x, x);
    CHECK(s.obj.size() == 2);
    CHECK(s.inl("a") != s.inr("a"));

    // pullback of inl along inr is empty
    auto pb = fs_pullback(s.inl, s.inr);
    CHECK(pb.obj.size() == 0);

    // stability: pull the sum diagram back along a map into it
    FinSetObj t{{"t0", "t1"}};
    auto h = fs_map(t, s.obj, [&](const std::string& e) {
        return e == "t0" ? s.inl("a") : s.inr("a");
    });
    auto pl = fs_pullback(s.inl, h);
    auto pr = fs_pullback(s.inr, h);
    CHECK(pl.obj.size() + pr.obj.size() == t.size());
}

TEST_CASE("coequalizer of identical maps changes nothing") {
    FinSetObj x{{"a", "b"}};
    auto f = fs_identity(x);
    auto q = fs_coequalizer(f, f);
    CHECK(q.cod.size() == x.size());
}

TEST_CASE("covers are stable under pullback") {
    for (std::size_t n = 1; n <= 3; ++n) {
        auto a = fs_canonical(2, "a");
        auto b = fs_canonical(3, "b");
        auto c = fs_canonical(n, "c");
        for (const auto& f : fs_all_surjections(b, a))
            for (const auto& g : fs_all_maps(c, a)) {
                auto pb = fs_pullback(f, g);
                CHECK(fs_is_surjective(pb.proj2));
            }
    }
}

TEST_CASE("every surjection splits") {
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::size_t m = 1; m <= n; ++m) {
            auto x = fs_canonical(n), y = fs_canonical(m, "y");
            for (const auto& f : fs_all_surjections(x, y)) {
                auto s = fs_section(f);
                CHECK(fs_compose(f, s) == fs_identity(y));
            }
        }
}

TEST_CASE("exponentials evaluate") {
    FinSetObj p{{"p0", "p1"}}, x{{"x0", "x1", "x2"}};
    auto e = fs_exponential(p, x);
    CHECK(e.obj.size() == 9);
    auto c = fs_map(x, x, [](const std::string&) { return std::string("x0"); });
    auto post = fs_exp_postcompose(e, e, c, p);
    CHECK(fs_is_surjective(post) == false);
}

TEST_SUITE_END();
