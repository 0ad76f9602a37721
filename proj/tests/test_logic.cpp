#include <doctest.h>

#include "oracles.hpp"
#include "pretop/logic.hpp"
#include "pretop/psh.hpp"

using namespace pretop;
using namespace pretop::logic;

TEST_SUITE_BEGIN("logic");

namespace {

Presheaf two_over_one(const CategoryRef& c) {
    Presheaf p;
    p.base = c;
    p.stalk["1"] = {"x", "xp"};
    p.stalk["0"] = {"d"};
    p.act[{"id_1", "x"}] = "x";
    p.act[{"id_1", "xp"}] = "xp";
    p.act[{"id_0", "d"}] = "d";
    p.act[{"u", "x"}] = "d";
    p.act[{"u", "xp"}] = "d";
    return require_valid(std::move(p));
}

} // namespace

TEST_CASE("parser builds quantified ASTs") {
    auto f = parse_formula("forall x:X. x = x");
    CHECK(f->kind == FKind::Forall);
    CHECK(f->body->kind == FKind::Equals);
    CHECK(to_string(*f) == "forall x:X. x = x");

    auto g = parse_formula("exists y:Y. f(y) = c", {"f", "c"});
    CHECK(g->kind == FKind::Exists);
    CHECK(g->body->t2 == t_app("c"));
}

TEST_CASE("parser flags scope violations") {
    CHECK_THROWS_WITH_AS(parse_formula("forall x:X. P(y)", {"P"}),
                         doctest::Contains("SortError"), Error);
    CHECK_THROWS_WITH_AS(parse_formula("forall x:X."), doctest::Contains("SyntaxError"),
                         Error);
}

TEST_CASE("parser handles connectives and precedence") {
    auto f = parse_formula("forall x:X. x = x /\\ ~(x = x) -> false");
    CHECK(f->kind == FKind::Forall);
    CHECK(f->body->kind == FKind::Implies);
    auto g = parse_formula("true \\/ false & true");
    CHECK(g->kind == FKind::Or);
}

TEST_CASE("eval over the empty domain") {
    auto s = Structure::over_finset();
    s.add_sort("E", FinSetObj{{}});
    auto f = parse_formula("forall x:E. false");
    auto r = eval_finset(*f, s);
    CHECK(r.value);
}

TEST_CASE("surjectivity of the constant map fails with a counterexample") {
    auto s = Structure::over_finset();
    FinSetObj x{{"0", "1"}};
    s.add_sort("X", x);
    s.add_sort("Y", x);
    s.add_func("e", fs_map(x, x, [](const std::string&) { return std::string("0"); }), "Y",
               "X");
    auto f = parse_formula("forall x:X. exists y:Y. e(y) = x", {"e"});
    auto r = eval_finset(*f, s);
    CHECK(!r.value);
    REQUIRE(!r.witness.empty());
    CHECK(r.witness.back() == "counterexample x = 1");
}

TEST_CASE("the choice scheme holds in finite sets for every predicate") {
    // (forall p. exists x. phi(p,x)) -> (exists g. forall p. phi(p, ap(g,p)))
    FinSetObj p{{"p0", "p1"}}, x{{"x0", "x1"}};
    auto xp = fs_exponential(p, x);

    auto base = parse_formula(
        "(forall p:P. exists x:X. phi(p,x)) -> (exists g:XP. forall p:P. phi(p, ap(g,p)))",
        {"phi", "ap"});

    // all 16 interpretations of phi ⊆ P x X
    std::vector<std::pair<std::string, std::string>> cells;
    for (const auto& a : p.elems)
        for (const auto& b : x.elems) cells.push_back({a, b});
    for (unsigned mask = 0; mask < 16; ++mask) {
        auto s = Structure::over_finset();
        s.add_sort("P", p);
        s.add_sort("X", x);
        s.add_sort("XP", xp.obj);
        Structure::Func ap;
        ap.arg_sorts = {"XP", "P"};
        ap.res_sort = "X";
        for (const auto& [label, table] : xp.tables)
            for (const auto& pe : p.elems) ap.table[{"*", {label, pe}}] = table.at(pe);
        s.funcs["ap"] = ap;
        std::set<std::pair<std::string, std::vector<std::string>>> members;
        for (unsigned i = 0; i < cells.size(); ++i)
            if (mask & (1u << i)) members.insert({"*", {cells[i].first, cells[i].second}});
        s.add_pred("phi", {"P", "X"}, members);
        CHECK(eval_finset(*base, s).value);
    }
}

TEST_CASE("forcing equality of equal global elements") {
    auto c = require_valid(arrow_category_01());
    auto s = Structure::over_psh(c);
    s.add_sort("X", two_over_one(c));
    s.add_const("cx", "X", {{"1", "x"}, {"0", "d"}});
    auto f = parse_formula("cx = cx", {"cx"});
    CHECK(force(*f, s, "1").value);
    CHECK(force(*f, s, "0").value);
}

TEST_CASE("forcing surjectivity stagewise") {
    auto c = require_valid(arrow_category_01());

    SUBCASE("stagewise surjective map forces surjectivity everywhere") {
        auto x = two_over_one(c);
        auto s = Structure::over_psh(c);
        s.add_sort("X", x);
        s.add_sort("Y", x);
        s.add_func("e", psh_identity(x), "Y", "X");
        auto f = parse_formula("forall x:X. exists y:Y. e(y) = x", {"e"});
        CHECK(force(*f, s, "1").value);
        CHECK(force(*f, s, "0").value);
    }

    SUBCASE("surjective at stage 1 but not 0 is not forced at 0") {
        // Y = y(1); X has an extra point at stage 0 missed by e
        auto y1 = yoneda_embed(c, "1");
        Presheaf x;
        x.base = c;
        x.stalk["1"] = {"x"};
        x.stalk["0"] = {"d", "dp"};
        x.act[{"id_1", "x"}] = "x";
        x.act[{"id_0", "d"}] = "d";
        x.act[{"id_0", "dp"}] = "dp";
        x.act[{"u", "x"}] = "d";
        x = require_valid(std::move(x));
        NatTrans e{y1, x, {}};
        e.component[{"1", "id_1"}] = "x";
        e.component[{"0", "u"}] = "d";
        REQUIRE(natural(e));
        REQUIRE(!psh_is_cover(e));

        auto s = Structure::over_psh(c);
        s.add_sort("X", x);
        s.add_sort("Y", y1);
        s.add_func("e", e, "Y", "X");
        auto f = parse_formula("forall x:X. exists y:Y. e(y) = x", {"e"});
        CHECK(!force(*f, s, "0").value);
        // the universal quantifier reaches stage 0 from stage 1 as well
        CHECK(!force(*f, s, "1").value);
    }
}

TEST_CASE("force agrees with the subpresheaf-lattice oracle") {
    auto c = require_valid(arrow_category_01());
    auto x = two_over_one(c);
    auto y1 = yoneda_embed(c, "1");
    auto s = Structure::over_psh(c);
    s.add_sort("X", x);
    s.add_sort("Y", y1);
    NatTrans e{y1, x, {}};
    e.component[{"1", "id_1"}] = "x";
    e.component[{"0", "u"}] = "d";
    s.add_func("e", e, "Y", "X");
    std::set<std::pair<std::string, std::vector<std::string>>> members{
        {"1", {"x"}}, {"0", {"d"}}};
    s.add_pred("P", {"X"}, members);
    validate_structure(s);

    std::vector<std::string> formulas = {
        "forall a:X. exists b:Y. e(b) = a",
        "forall a:X. P(a)",
        "exists a:X. ~P(a)",
        "forall a:X. P(a) \\/ ~P(a)",
        "forall a:X. forall b:X. a = b -> P(a)",
        "exists b:Y. P(e(b))",
        "~(exists a:X. ~P(a))",
        "forall b:Y. exists a:X. e(b) = a /\\ P(a)",
    };
    for (const auto& text : formulas) {
        auto f = parse_formula(text, s.symbol_names());
        oracle::LogicOracle orc{s, {}};
        auto den = orc.denote(*f);
        for (const auto& stage : c->objects) {
            bool kj = force_at(*f, s, stage, {});
            bool sem = den.count({stage, {}}) != 0;
            CAPTURE(text);
            CAPTURE(stage);
            CHECK(kj == sem);
        }
    }
}

TEST_CASE("forcing is monotone along restriction") {
    auto c = require_valid(arrow_category_01());
    auto x = two_over_one(c);
    auto s = Structure::over_psh(c);
    s.add_sort("X", x);
    std::set<std::pair<std::string, std::vector<std::string>>> members{
        {"1", {"x"}}, {"0", {"d"}}};
    s.add_pred("P", {"X"}, members);

    // open formula with v free over X: truth at a stage must persist along
    // every arrow into it
    auto fp = f_or(f_pred("P", {t_var("v")}), f_not(f_pred("P", {t_var("v")})));
    std::map<std::string, std::string> env_sorts{{"v", "X"}};
    for (const auto& ar : c->arrows)
        for (const auto& ecod : x.stalk_at(ar.cod)) {
            std::map<std::string, std::string> env{{"v", ecod}};
            bool at_cod = force_at(*fp, s, ar.cod, env, env_sorts);
            std::map<std::string, std::string> env2{{"v", x.restrict(ecod, ar.id)}};
            bool at_dom = force_at(*fp, s, ar.dom, env2, env_sorts);
            if (at_cod) CHECK(at_dom);
        }
}

TEST_CASE("over a one-object base, force collapses to eval_finset") {
    auto s = Structure::over_finset();
    FinSetObj x{{"a", "b", "c"}};
    s.add_sort("X", x);
    s.add_func("f", fs_map(x, x, [](const std::string& e) {
                   return e == "a" ? std::string("b") : std::string("a");
               }),
               "X", "X");
    std::vector<std::string> formulas = {
        "forall p:X. exists q:X. f(q) = p",
        "exists p:X. f(p) = p",
        "forall p:X. ~(f(p) = p)",
        "forall p:X. f(f(p)) = p -> f(p) = p",
    };
    for (const auto& text : formulas) {
        auto f = parse_formula(text, s.symbol_names());
        CHECK(eval_finset(*f, s).value == force(*f, s, "*").value);
    }
}

TEST_SUITE_END();
