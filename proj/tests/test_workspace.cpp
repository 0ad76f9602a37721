#include <doctest.h>

#include <fstream>
#include <sstream>

#include "pretop/commands.hpp"

using namespace pretop;
using namespace pretop::cli;

TEST_SUITE_BEGIN("workspace");

namespace {

std::string demo_bundle() {
    return R"(
category C2
  objects: C D
  arrows: u D C
end
presheaf P on C2
  stalk C: x xp
  stalk D: d
  act u x = d
  act u xp = d
end
site S on C2
  family U on C: u
  family V on D: id_D
end
)";
}

} // namespace

TEST_CASE("empty input gives an empty workspace") {
    auto ws = parse_workspace_text("");
    CHECK(ws.categories.empty());
    CHECK(ws.presheaves.empty());
}

TEST_CASE("the demo bundle parses into three objects") {
    auto ws = parse_workspace_text(demo_bundle());
    CHECK(ws.categories.size() == 1);
    CHECK(ws.presheaves.size() == 1);
    CHECK(ws.sites_.size() == 1);
    CHECK(ws.categories.at("C2")->arrows.size() == 3); // identities filled in
}

TEST_CASE("dangling references are parse errors") {
    CHECK_THROWS_WITH_AS(parse_workspace_text("presheaf P on Nowhere\nend\n"),
                         doctest::Contains("UnknownName"), Error);
    CHECK_THROWS_WITH_AS(
        parse_workspace_text("category C\n  objects: X\nend\nsite S on C\n  family U on X: zz\nend\n"),
        doctest::Contains("UnknownArrow"), Error);
}

TEST_CASE("duplicate names are rejected") {
    std::string text = "set X: a\nset X: b\n";
    CHECK_THROWS_WITH_AS(parse_workspace_text(text), doctest::Contains("DuplicateName"), Error);
}

TEST_CASE("parse errors carry file and line") {
    try {
        parse_workspace_text("set\n", "bundle.txt");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("bundle.txt:1") != std::string::npos);
    }
}

TEST_CASE("maps, sets, spaces, sigs and formulas parse") {
    std::string text = R"(
set X: a b
map f: X -> X; a = b; b = a
space Sp: points o c; open; open o; open o c
sig tree: leaf/0 node/2
formula refl: forall x:X. x = x
)";
    auto ws = parse_workspace_text(text);
    CHECK(ws.maps.at("f")("a") == "b");
    CHECK(ws.spaces.at("Sp").opens.size() == 3);
    CHECK(ws.sigs.at("tree").shapes().size() == 2);
    CHECK(ws.formulas.count("refl"));
}

TEST_CASE("machine reports are byte-identical across runs") {
    auto ws = parse_workspace_text(demo_bundle());
    CmdOptions opt;
    opt.bound = 2;
    auto once = cmd_check_site(ws, "S", opt).to_json().dump();
    auto twice = cmd_check_site(ws, "S", opt).to_json().dump();
    CHECK(once == twice);
    // timing stays out of the machine form
    CHECK(once.find("elapsed") == std::string::npos);
}

TEST_CASE("command reports carry verdicts and claims") {
    auto ws = parse_workspace_text(demo_bundle());
    CmdOptions opt;
    opt.bound = 2;
    SUBCASE("check-category") {
        auto r = cmd_check_category(ws, "C2");
        CHECK(r.verdict == "pass");
        CHECK(r.exit_code(false) == 0);
    }
    SUBCASE("check-site") {
        CHECK(cmd_check_site(ws, "S", opt).verdict == "pass");
    }
    SUBCASE("saturate") {
        auto r = cmd_saturate(ws, "S", opt);
        CHECK(r.verdict == "pass");
    }
    SUBCASE("sheafify collapses the demo presheaf") {
        auto r = cmd_sheafify(ws, "S", "P", opt);
        CHECK(r.verdict == "pass");
        bool found = false;
        for (const auto& [k, v] : r.claims)
            if (k == "stalk@C" && v.find("1") == 0) found = true;
        CHECK(found);
    }
    SUBCASE("unknown names fail cleanly") {
        CHECK_THROWS_WITH_AS(cmd_check_site(ws, "zz", opt), doctest::Contains("UnknownName"),
                             Error);
    }
}

TEST_CASE("structures and evaluation through the front end") {
    std::string text = R"(
set X2: p q
map e: X2 -> X2; p = p; q = p
structure Surj over finset
  sort X = X2
  sort Y = X2
  func e = e : Y X
end
formula esurj: forall x:X. exists y:Y. e(y) = x
formula erefl: forall x:X. x = x
)";
    auto ws = parse_workspace_text(text);
    CmdOptions opt;
    auto r = cmd_eval(ws, "esurj", "Surj", "", opt);
    CHECK(r.verdict == "fail");
    CHECK(!r.witnesses.empty());
    CHECK(cmd_eval(ws, "erefl", "Surj", "", opt).verdict == "pass");
}


TEST_CASE("golden machine reports for the demo bundle") {
    std::string d = PRETOP_DATA_DIR;
    Workspace ws = parse_workspace({d + "/demo.cat", d + "/demo.psh", d + "/demo.site",
                                    d + "/bintree.sig", d + "/maps.fin"});
    auto golden = [&](const std::string& name) {
        std::ifstream in(d + "/golden/" + name);
        REQUIRE(in.good());
        std::stringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    CmdOptions opt;
    opt.bound = 2;
    CHECK(cmd_check_site(ws, "S", opt).to_json().dump(2) + "\n" == golden("check-site.json"));
    CHECK(cmd_sheafify(ws, "S", "P", opt).to_json().dump(2) + "\n" == golden("sheafify.json"));
    CmdOptions wopt;
    CHECK(cmd_wtype(ws, "bintree", wopt).to_json().dump(2) + "\n" == golden("wtype.json"));
    CHECK(cmd_rp_roundtrip(ws, "f", "pi", opt).to_json().dump(2) + "\n" == golden("rp.json"));
}

TEST_CASE("squares parse from named maps and must commute") {
    std::string text = R"(
set B: b0 b1
set A: a
map f: B -> A; b0 = a; b1 = a
map idb: B -> B; b0 = b0; b1 = b1
map ida: A -> A; a = a
square sq: f f ida idb
)";
    auto ws = parse_workspace_text(text);
    CHECK(ws.squares.count("sq") == 1);
    CHECK(amc::is_covering_square(ws.squares.at("sq")).covering);

    std::string bad = R"(
set B: b0 b1
map swap: B -> B; b0 = b1; b1 = b0
map idb: B -> B; b0 = b0; b1 = b1
square sq: idb idb idb swap
)";
    CHECK_THROWS_WITH_AS(parse_workspace_text(bad), doctest::Contains("NotCommuting"), Error);
}

TEST_CASE("relations feed completion instances through the front end") {
    std::string text = R"(
set X2: p q
relation tot on X2: (p,p) (p,q) (q,p) (q,q)
)";
    auto ws = parse_workspace_text(text);
    CmdOptions opt;
    opt.bound = 2;
    auto r = cmd_complete(ws, "exlex", opt, "X2", "tot");
    CHECK(r.verdict == "pass");
    bool exact = false;
    for (const auto& [k, v] : r.claims)
        if (k == "instance-exact" && v.find("yes") == 0) exact = true;
    CHECK(exact);
}

TEST_SUITE_END();
