#include <doctest.h>

#include "pretop/fintop.hpp"

using namespace pretop;

TEST_SUITE_BEGIN("fintop");

TEST_CASE("open families must close under union and intersection") {
    FinTopSpace bad{FinSetObj{{"a", "b", "c"}}, {}};
    bad.opens = {{}, {"a"}, {"b"}, {"a", "b", "c"}};
    CHECK_THROWS_WITH_AS(require_valid(bad), doctest::Contains("union"), Error);
    bad.opens.insert({"a", "b"});
    CHECK_NOTHROW(require_valid(bad));
}

TEST_CASE("continuity by preimages") {
    auto sier = ft_sierpinski();
    auto disc = ft_discrete(FinSetObj{{"p", "q"}});
    // every map out of a discrete space is continuous
    CHECK(ft_all_maps(disc, sier).size() == 4);
    // into a discrete space only locally constant maps survive
    CHECK(ft_all_maps(sier, disc).size() == 2);
    // identity-carrier map from indiscrete to discrete is not continuous
    auto ind = ft_indiscrete(FinSetObj{{"p", "q"}});
    CHECK(!ft_continuous(ind, disc, fs_identity(FinSetObj{{"p", "q"}}).table));
}

TEST_CASE("products carry the box-generated topology") {
    auto sier = ft_sierpinski();
    auto p = ft_product(sier, sier);
    CHECK(p.obj.carrier.size() == 4);
    CHECK_NOTHROW(require_valid(p.obj));
    CHECK_NOTHROW(require_valid(p.proj1));
    CHECK_NOTHROW(require_valid(p.proj2));
}

TEST_CASE("covers are quotient maps, not mere surjections") {
    FinSetObj two{{"p", "q"}};
    auto disc = ft_discrete(two);
    auto ind = ft_indiscrete(two);
    // the continuous bijection discrete -> indiscrete is surjective but the
    // codomain misses opens with open preimages
    FinTopMap f{disc, ind, fs_identity(two).table};
    CHECK_NOTHROW(require_valid(f));
    CHECK(!ft_is_cover(f));
    // identity on the discrete space is a cover
    CHECK(ft_is_cover(ft_identity(disc)));
    // collapsing the Sierpinski space onto a point is a quotient
    auto one = ft_terminal();
    CHECK(ft_is_cover(ft_to_terminal(ft_sierpinski())));
    (void)one;
}

TEST_CASE("image factorization gives a quotient followed by a subspace mono") {
    auto sier = ft_sierpinski();
    auto disc3 = ft_discrete(FinSetObj{{"0", "1", "2"}});
    // constant map from Sierpinski into a bigger discrete space
    FinTopMap f{sier, disc3, {{"o", "1"}, {"c", "1"}}};
    auto r = ft_image_factorization(f);
    CHECK(r.image.carrier.size() == 1);
    CHECK(ft_is_cover(r.cover));
    CHECK(ft_is_mono(r.mono));
    CHECK(ft_compose(r.mono, r.cover) == f);
}

TEST_CASE("equalizers and pullbacks are subspaces") {
    auto sier = ft_sierpinski();
    auto id = ft_identity(sier);
    FinTopMap swapish{sier, sier, {{"o", "o"}, {"c", "o"}}};
    CHECK_NOTHROW(require_valid(swapish));
    auto eq = ft_equalizer(id, swapish);
    CHECK(eq.obj.carrier.elems == std::vector<std::string>{"o"});
    auto pb = ft_pullback(ft_to_terminal(sier), ft_to_terminal(sier));
    CHECK(pb.obj.carrier.size() == 4);
}

TEST_SUITE_END();
