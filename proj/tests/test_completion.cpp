#include <doctest.h>

#include "pretop/completion.hpp"

using namespace pretop;
using namespace pretop::completion;

TEST_SUITE_BEGIN("completion");

TEST_CASE("hom sets through the unit match ambient hom sets") {
    auto amb = Ambient::finset();
    for (std::size_t n = 0; n <= 3; ++n)
        for (std::size_t m = 0; m <= 3; ++m) {
            auto x = discrete_obj(AObj{fs_canonical(n, "a")});
            auto y = discrete_obj(AObj{fs_canonical(m, "b")});
            CHECK(comp_hom(x, y).size() == amb_hom(AObj{fs_canonical(n, "a")},
                                                   AObj{fs_canonical(m, "b")})
                                               .size());
        }
    (void)amb;
}

TEST_CASE("total relation collapses hom sets to a point") {
    FinSetObj two{{"p", "q"}};
    auto rel = fs_total_relation(two);
    auto b = obj_from_relation(AObj{two}, AMap{rel.r0}, AMap{rel.r1}, Flavor::ExReg);
    auto a = discrete_obj(AObj{fs_canonical(2, "s")});
    CHECK(comp_hom(a, b).size() == 1);
    // and the quotient is isomorphic to the point
    auto one = comp_terminal(Ambient::finset());
    bool iso = false;
    for (const auto& t : comp_hom(b, one))
        if (comp_is_iso(t)) iso = true;
    CHECK(iso);
}

TEST_CASE("trackers from a discrete two-point space into the collapsed Sierpinski space") {
    // collapse the two points of the Sierpinski space; the relation carrier
    // is the subspace of the product, so the witnesses stay continuous
    auto sier = ft_sierpinski();
    auto pairs = fs_total_relation(sier.carrier);
    FinTopSpace relsp = ft_discrete(pairs.rel);
    auto q = comp_quotient(discrete_obj(AObj{sier}),
                           AMap{FinTopMap{relsp, sier, pairs.r0.table}},
                           AMap{FinTopMap{relsp, sier, pairs.r1.table}});
    auto disc2 = discrete_obj(AObj{ft_discrete(fs_canonical(2, "d"))});
    // 4 continuous maps, all identified by the total relation
    CHECK(comp_hom(disc2, q.obj).size() == 1);
}

TEST_CASE("products of discrete objects are discrete") {
    auto a = discrete_obj(AObj{fs_canonical(2, "a")});
    auto b = discrete_obj(AObj{fs_canonical(3, "b")});
    auto p = comp_product(a, b);
    CHECK(p.obj.carrier.size() == 6);
    // relation on the product is the diagonal
    CHECK(comp_is_mono(comp_identity(p.obj)));
    CHECK(comp_hom(p.obj, a).size() == comp_hom(discrete_obj(p.obj.carrier), a).size());
}

TEST_CASE("quotients") {
    SUBCASE("quotient of the total relation on 2 is the point") {
        auto a = discrete_obj(AObj{fs_canonical(2)});
        auto rel = fs_total_relation(fs_canonical(2));
        auto q = comp_quotient(a, AMap{rel.r0}, AMap{rel.r1});
        CHECK(q.exact);
        CHECK(q.stable_on_samples);
        bool iso = false;
        for (const auto& t : comp_hom(q.obj, comp_terminal(Ambient::finset())))
            if (comp_is_iso(t)) iso = true;
        CHECK(iso);
    }
    SUBCASE("Sierpinski collapse in ex/lex over spaces is exact") {
        auto sier = ft_sierpinski();
        auto a = discrete_obj(AObj{sier});
        auto pairs = fs_total_relation(sier.carrier);
        FinTopSpace relsp = ft_discrete(pairs.rel);
        auto q = comp_quotient(a, AMap{FinTopMap{relsp, sier, pairs.r0.table}},
                               AMap{FinTopMap{relsp, sier, pairs.r1.table}});
        CHECK(q.exact);
        CHECK(q.stable_on_samples);
    }
    SUBCASE("quotient by the diagonal changes nothing") {
        auto a = discrete_obj(AObj{fs_canonical(3)});
        auto d = fs_diagonal(fs_canonical(3));
        auto q = comp_quotient(a, AMap{d.r0}, AMap{d.r1});
        CHECK(q.exact);
        bool iso = false;
        for (const auto& t : comp_hom(q.obj, a))
            if (comp_is_iso(t)) iso = true;
        CHECK(iso);
    }
}

TEST_CASE("image factorization in the completion") {
    // collapse a discrete 2 through the total-relation object
    FinSetObj two{{"p", "q"}};
    auto rel = fs_total_relation(two);
    auto b = obj_from_relation(AObj{two}, AMap{rel.r0}, AMap{rel.r1}, Flavor::ExReg);
    auto a = discrete_obj(AObj{two});
    CompMap f{a, b, amb_identity(AObj{two})};
    auto fact = comp_image(f);
    CHECK(comp_is_cover(fact.cover));
    CHECK(comp_is_mono(fact.mono));
    CHECK(comp_equal(comp_compose(fact.mono, fact.cover), f));
    CHECK(comp_is_cover(f));
}

TEST_CASE("recognition of the finite-set completions") {
    auto amb = Ambient::finset();
    SUBCASE("ex/lex unit passes the three conditions") {
        auto rep = check_recog_exlex(amb, 3);
        CHECK(rep.ok());
    }
    SUBCASE("ex/reg unit passes full-on-subobjects") {
        auto rep = check_recog_exreg(amb, 3);
        CHECK(rep.ok());
    }
    SUBCASE("restricting the source breaks covering") {
        auto u = make_sample(amb, Flavor::ExLex, 2);
        std::vector<AObj> tiny{AObj{fs_canonical(0)}, AObj{fs_canonical(1)}};
        auto rep = check_recognition(u, Criteria::ExLexStyle, tiny);
        CHECK(!rep.covering);
        CHECK(!rep.notes.empty());
    }
    SUBCASE("a source missing a subobject fails fullness on subobjects") {
        auto u = make_sample(amb, Flavor::ExReg, 2);
        std::vector<AObj> gap{AObj{fs_canonical(0)}, AObj{fs_canonical(2)}};
        auto rep = check_recognition(u, Criteria::ExRegStyle, gap);
        CHECK(!rep.third);
    }
}

TEST_CASE("ex/lex recognition over finite spaces") {
    auto rep = check_recog_exlex(Ambient::fintop(), 1);
    CHECK(rep.ok());
}

TEST_CASE("a discrete-only sample models the identity functor") {
    // when every sampled object is discrete, the target behaves like the
    // ambient itself: all three conditions hold trivially
    auto amb = Ambient::finset();
    auto u = make_sample(amb, Flavor::ExLex, 2);
    SampleUniverse discrete_only{u.amb, u.flavor, u.carriers, {}};
    for (const auto& x : u.carriers) discrete_only.objects.push_back(discrete_obj(x));
    auto rep = check_recognition(discrete_only, Criteria::ExLexStyle, u.carriers);
    CHECK(rep.ok());
    auto rep2 = check_recognition(discrete_only, Criteria::ExRegStyle, u.carriers);
    CHECK(rep2.ok());
}

TEST_CASE("projective coincidence") {
    SUBCASE("over finite sets both completions collapse") {
        auto rep = proj_coincidence(Ambient::finset(), 2);
        CHECK(rep.hypotheses_ok);
        CHECK(rep.recognition.ok());
    }
    SUBCASE("an artificially restricted projective family fails the hypothesis") {
        std::vector<AObj> tiny{AObj{fs_canonical(1, "p")}};
        auto rep = proj_coincidence(Ambient::finset(), 2, tiny);
        CHECK(!rep.hypotheses_ok);
        CHECK(rep.failed_hypothesis == "enough projectives");
    }
    SUBCASE("presheaves over the arrow base with representable-sum projectives") {
        auto c = require_valid(arrow_category_01());
        auto rep = proj_coincidence(Ambient::finpsh(c), 2);
        CHECK(rep.hypotheses_ok);
        CHECK(rep.recognition.ok());
    }
}

TEST_SUITE_END();
