#include "pretop/workspace.hpp"

#include <fstream>
#include <sstream>

namespace pretop::cli {

namespace {

struct Lines {
    std::string file;
    std::vector<std::string> lines;
    std::size_t at = 0;

    [[noreturn]] void fail(const std::string& msg, std::size_t line) const {
        throw Error("ParseError", file + ":" + std::to_string(line + 1) + ": " + msg);
    }

    bool done() const { return at >= lines.size(); }
    const std::string& peek() const { return lines[at]; }
    std::string next() { return lines[at++]; }
};

std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

// split "head: rest" at the first colon
std::pair<std::string, std::string> split_colon(const std::string& s) {
    auto pos = s.find(':');
    if (pos == std::string::npos) return {s, ""};
    return {s.substr(0, pos), s.substr(pos + 1)};
}

struct Parser {
    Workspace& ws;
    Lines& in;

    void require_fresh(const std::string& name) {
        bool taken = ws.categories.count(name) || ws.presheaves.count(name) ||
                     ws.nats.count(name) || ws.sites_.count(name) || ws.sets.count(name) ||
                     ws.maps.count(name) || ws.spaces.count(name) || ws.sigs.count(name) ||
                     ws.squares.count(name) || ws.structures.count(name) ||
                     ws.formulas.count(name);
        if (taken) throw Error("DuplicateName", "name '" + name + "' is already defined");
    }

    void category_block(const std::string& name) {
        FiniteCategory c;
        c.name = name;
        std::size_t start = in.at;
        while (!in.done()) {
            std::string raw = strip_comment(in.next());
            auto ts = tokens(raw);
            if (ts.empty()) continue;
            if (ts[0] == "end") {
                ws.categories[name] = require_valid(complete_identities(std::move(c)));
                return;
            }
            auto [head, rest] = split_colon(raw);
            auto hts = tokens(head);
            auto rts = tokens(rest);
            if (hts.size() == 1 && hts[0] == "objects") {
                for (const auto& o : rts) c.objects.push_back(o);
            } else if (hts.size() == 1 && hts[0] == "arrows") {
                if (rts.size() % 3 != 0) in.fail("arrows expects name dom cod triples", in.at - 1);
                for (std::size_t i = 0; i < rts.size(); i += 3)
                    c.arrows.push_back({rts[i], rts[i + 1], rts[i + 2]});
            } else if (hts.size() == 1 && hts[0] == "compose") {
                // g f = h
                if (rts.size() != 4 || rts[2] != "=")
                    in.fail("compose expects 'g f = h'", in.at - 1);
                c.comp[{rts[0], rts[1]}] = rts[3];
            } else {
                in.fail("unknown category line", in.at - 1);
            }
        }
        in.fail("category block never ends", start);
    }

    void presheaf_block(const std::string& name, const std::string& catname) {
        Presheaf p;
        p.base = ws.named(ws.categories, catname, "category");
        std::size_t start = in.at;
        while (!in.done()) {
            std::string raw = strip_comment(in.next());
            auto ts = tokens(raw);
            if (ts.empty()) continue;
            if (ts[0] == "end") {
                for (const auto& o : p.base->objects)
                    if (!p.stalk.count(o)) p.stalk[o] = {};
                // identity actions are implied
                for (const auto& o : p.base->objects)
                    for (const auto& e : p.stalk.at(o))
                        if (!p.act.count({p.base->id_of(o), e}))
                            p.act[{p.base->id_of(o), e}] = e;
                if (auto v = validate_presheaf(p)) throw Error(v->code, v->message);
                ws.presheaves[name] = std::move(p);
                return;
            }
            if (ts[0] == "stalk") {
                auto [head, rest] = split_colon(raw);
                auto hts = tokens(head);
                if (hts.size() != 2) in.fail("stalk expects 'stalk <obj>: e1 e2 ...'", in.at - 1);
                p.stalk[hts[1]] = tokens(rest);
            } else if (ts[0] == "act") {
                if (ts.size() != 5 || ts[3] != "=")
                    in.fail("act expects 'act <arrow> <elem> = <elem>'", in.at - 1);
                p.act[{ts[1], ts[2]}] = ts[4];
            } else {
                in.fail("unknown presheaf line", in.at - 1);
            }
        }
        in.fail("presheaf block never ends", start);
    }

    void site_block(const std::string& name, const std::string& catname) {
        sites::Site s;
        s.cat = ws.named(ws.categories, catname, "category");
        std::size_t start = in.at;
        while (!in.done()) {
            std::string raw = strip_comment(in.next());
            auto ts = tokens(raw);
            if (ts.empty()) continue;
            if (ts[0] == "end") {
                sites::validate_site(s);
                ws.sites_[name] = std::move(s);
                return;
            }
            if (ts[0] == "family") {
                // family U on C: a1 a2
                auto [head, rest] = split_colon(raw);
                auto hts = tokens(head);
                if (hts.size() != 4 || hts[2] != "on")
                    in.fail("family expects 'family <id> on <obj>: arrows'", in.at - 1);
                sites::CoveringFamily f;
                f.id = hts[1];
                f.target = hts[3];
                f.arrows = tokens(rest);
                s.cov[f.target].push_back(std::move(f));
            } else {
                in.fail("unknown site line", in.at - 1);
            }
        }
        in.fail("site block never ends", start);
    }

    void structure_block(const std::string& name, const std::vector<std::string>& header) {
        // structure S over finset   |   structure S over psh <category>
        logic::Structure st = logic::Structure::over_finset();
        if (header.size() == 4 && header[3] == "finset") {
            // done
        } else if (header.size() == 5 && header[3] == "psh") {
            st = logic::Structure::over_psh(ws.named(ws.categories, header[4], "category"));
        } else {
            in.fail("structure expects 'over finset' or 'over psh <category>'", in.at - 1);
        }
        std::size_t start = in.at;
        while (!in.done()) {
            std::string raw = strip_comment(in.next());
            auto ts = tokens(raw);
            if (ts.empty()) continue;
            if (ts[0] == "end") {
                logic::validate_structure(st);
                ws.structures[name] = std::move(st);
                return;
            }
            if (ts[0] == "sort" && ts.size() == 4 && ts[2] == "=") {
                if (st.finset)
                    st.add_sort(ts[1], ws.named(ws.sets, ts[3], "set"));
                else
                    st.add_sort(ts[1], ws.named(ws.presheaves, ts[3], "presheaf"));
            } else if (ts[0] == "func" && ts.size() == 7 && ts[2] == "=" && ts[4] == ":") {
                // func f = <map> : <dom sort> <res sort>
                if (st.finset)
                    st.add_func(ts[1], ws.named(ws.maps, ts[3], "map"), ts[5], ts[6]);
                else
                    st.add_func(ts[1], ws.named(ws.nats, ts[3], "nat"), ts[5], ts[6]);
            } else if (ts[0] == "const" && ts.size() >= 5 && ts[2] == ":" && ts[4] == "=") {
                // const c : X = e           (finset)
                // const c : X = stage:e ... (presheaf)
                std::map<std::string, std::string> per_stage;
                if (st.finset) {
                    if (ts.size() != 6) in.fail("const expects one value", in.at - 1);
                    per_stage["*"] = ts[5];
                } else {
                    for (std::size_t i = 5; i < ts.size(); ++i) {
                        auto [stage, val] = split_colon(ts[i]);
                        per_stage[stage] = tokens(val).empty() ? "" : tokens(val)[0];
                    }
                }
                st.add_const(ts[1], ts[3], per_stage);
            } else if (ts[0] == "pred" && ts.size() >= 4 && ts[2] == "on") {
                // pred P on X Y: (a,b) (c,d)     tuples; stage-tagged for psh
                auto [head, rest] = split_colon(raw);
                auto hts = tokens(head);
                std::vector<std::string> arg_sorts(hts.begin() + 3, hts.end());
                std::set<std::pair<std::string, std::vector<std::string>>> members;
                for (const auto& tok : tokens(rest)) {
                    std::string stage = "*", body = tok;
                    if (!st.finset) {
                        auto pos = tok.find('@');
                        if (pos == std::string::npos)
                            in.fail("presheaf pred members are stage@(..)", in.at - 1);
                        stage = tok.substr(0, pos);
                        body = tok.substr(pos + 1);
                    }
                    if (body.size() >= 2 && body.front() == '(' && body.back() == ')')
                        body = body.substr(1, body.size() - 2);
                    std::vector<std::string> tuple;
                    std::istringstream ss(body);
                    std::string part;
                    while (std::getline(ss, part, ',')) tuple.push_back(part);
                    members.insert({stage, tuple});
                }
                st.add_pred(hts[1], arg_sorts, members);
            } else {
                in.fail("unknown structure line", in.at - 1);
            }
        }
        in.fail("structure block never ends", start);
    }

    void one_liner(const std::string& raw) {
        auto [head, rest] = split_colon(raw);
        auto hts = tokens(head);
        if (hts.empty()) return;
        const std::string& kind = hts[0];

        if (kind == "set") {
            if (hts.size() != 2) in.fail("set expects 'set <name>: elems'", in.at - 1);
            require_fresh(hts[1]);
            FinSetObj x{tokens(rest)};
            require_valid(x);
            ws.sets[hts[1]] = std::move(x);
            return;
        }
        if (kind == "sig") {
            if (hts.size() != 2) in.fail("sig expects 'sig <name>: op/arity ...'", in.at - 1);
            require_fresh(hts[1]);
            std::map<std::string, std::size_t> arities;
            for (const auto& t : tokens(rest)) {
                auto slash = t.find('/');
                if (slash == std::string::npos) in.fail("operations look like name/arity", in.at - 1);
                arities[t.substr(0, slash)] = std::stoul(t.substr(slash + 1));
            }
            ws.sigs[hts[1]] = wtypes::poly_from_arities(arities);
            return;
        }
        if (kind == "map") {
            // map f: X -> Y; a = x; b = y
            if (hts.size() != 2) in.fail("map expects 'map <name>: X -> Y; a = x; ...'", in.at - 1);
            require_fresh(hts[1]);
            std::vector<std::string> parts;
            std::istringstream ss(rest);
            std::string part;
            while (std::getline(ss, part, ';')) parts.push_back(part);
            if (parts.empty()) in.fail("map needs 'X -> Y'", in.at - 1);
            auto sig = tokens(parts[0]);
            if (sig.size() != 3 || sig[1] != "->") in.fail("map needs 'X -> Y'", in.at - 1);
            FinSetMap f{ws.named(ws.sets, sig[0], "set"), ws.named(ws.sets, sig[2], "set"), {}};
            for (std::size_t i = 1; i < parts.size(); ++i) {
                auto kv = tokens(parts[i]);
                if (kv.empty()) continue;
                if (kv.size() != 3 || kv[1] != "=") in.fail("map entries look like 'a = x'", in.at - 1);
                f.table[kv[0]] = kv[2];
            }
            require_valid(f);
            ws.maps[hts[1]] = std::move(f);
            return;
        }
        if (kind == "space") {
            // space X: points a b; open; open a; open a b
            if (hts.size() != 2) in.fail("space expects 'space <name>: points ...; open ...'", in.at - 1);
            require_fresh(hts[1]);
            std::vector<std::string> parts;
            std::istringstream ss(rest);
            std::string part;
            while (std::getline(ss, part, ';')) parts.push_back(part);
            FinTopSpace sp;
            for (const auto& pt : parts) {
                auto ts2 = tokens(pt);
                if (ts2.empty()) continue;
                if (ts2[0] == "points")
                    sp.carrier.elems.assign(ts2.begin() + 1, ts2.end());
                else if (ts2[0] == "open")
                    sp.opens.insert(std::set<std::string>(ts2.begin() + 1, ts2.end()));
                else
                    in.fail("space parts are 'points ...' and 'open ...'", in.at - 1);
            }
            require_valid(sp);
            ws.spaces[hts[1]] = std::move(sp);
            return;
        }
        if (kind == "relation") {
            // relation R on X: (a,b) (b,a) ...
            auto hts2 = tokens(head);
            if (hts2.size() != 4 || hts2[2] != "on")
                in.fail("relation expects 'relation <name> on <set>: (a,b) ...'", in.at - 1);
            require_fresh(hts2[1]);
            const auto& x = ws.named(ws.sets, hts2[3], "set");
            std::vector<std::pair<std::string, std::string>> pairs;
            for (const auto& tok : tokens(rest)) {
                std::string body = tok;
                if (body.size() >= 2 && body.front() == '(' && body.back() == ')')
                    body = body.substr(1, body.size() - 2);
                auto comma = body.find(',');
                if (comma == std::string::npos)
                    in.fail("relation members look like (a,b)", in.at - 1);
                pairs.push_back({body.substr(0, comma), body.substr(comma + 1)});
            }
            auto rel = fs_relation_from_pairs(x, pairs);
            // stored as a pair of maps named <name>.r0 / <name>.r1
            ws.sets[hts2[1] + ".carrier"] = rel.rel;
            ws.maps[hts2[1] + ".r0"] = rel.r0;
            ws.maps[hts2[1] + ".r1"] = rel.r1;
            return;
        }
        if (kind == "formula") {
            if (hts.size() != 2) in.fail("formula expects 'formula <name>: text'", in.at - 1);
            require_fresh(hts[1]);
            ws.formulas[hts[1]] = rest;
            return;
        }
        if (kind == "nat") {
            // nat eta: P -> Q; C x = y; D d = dq
            if (hts.size() != 2) in.fail("nat expects 'nat <name>: P -> Q; obj e = e2; ...'", in.at - 1);
            require_fresh(hts[1]);
            std::vector<std::string> parts;
            std::istringstream ss(rest);
            std::string part;
            while (std::getline(ss, part, ';')) parts.push_back(part);
            auto sig = tokens(parts.empty() ? "" : parts[0]);
            if (sig.size() != 3 || sig[1] != "->") in.fail("nat needs 'P -> Q'", in.at - 1);
            NatTrans t{ws.named(ws.presheaves, sig[0], "presheaf"),
                       ws.named(ws.presheaves, sig[2], "presheaf"),
                       {}};
            for (std::size_t i = 1; i < parts.size(); ++i) {
                auto kv = tokens(parts[i]);
                if (kv.empty()) continue;
                if (kv.size() != 4 || kv[2] != "=")
                    in.fail("nat entries look like 'obj e = e2'", in.at - 1);
                t.component[{kv[0], kv[1]}] = kv[3];
            }
            if (!natural(t)) throw Error("BadComponent", "transformation is not natural");
            ws.nats[hts[1]] = std::move(t);
            return;
        }
        if (kind == "square") {
            // square sq: f g p q   (named finite-set maps: right left bottom top)
            if (hts.size() != 2) in.fail("square expects 'square <name>: f g p q'", in.at - 1);
            require_fresh(hts[1]);
            auto names = tokens(rest);
            if (names.size() != 4) in.fail("square needs four named maps", in.at - 1);
            amc::Square sq{Ambient::finset(), AMap{ws.named(ws.maps, names[0], "map")},
                           AMap{ws.named(ws.maps, names[1], "map")},
                           AMap{ws.named(ws.maps, names[2], "map")},
                           AMap{ws.named(ws.maps, names[3], "map")}};
            if (!amc::commutes(sq)) throw Error("NotCommuting", "square '" + hts[1] + "'");
            ws.squares.emplace(hts[1], std::move(sq));
            return;
        }
        in.fail("unknown directive '" + kind + "'", in.at - 1);
    }

    void run() {
        while (!in.done()) {
            std::string raw = strip_comment(in.next());
            auto ts = tokens(raw);
            if (ts.empty()) continue;
            if (ts[0] == "category") {
                if (ts.size() != 2) in.fail("category expects a name", in.at - 1);
                require_fresh(ts[1]);
                category_block(ts[1]);
            } else if (ts[0] == "presheaf") {
                if (ts.size() != 4 || ts[2] != "on")
                    in.fail("presheaf expects 'presheaf <name> on <category>'", in.at - 1);
                require_fresh(ts[1]);
                presheaf_block(ts[1], ts[3]);
            } else if (ts[0] == "site") {
                if (ts.size() != 4 || ts[2] != "on")
                    in.fail("site expects 'site <name> on <category>'", in.at - 1);
                require_fresh(ts[1]);
                site_block(ts[1], ts[3]);
            } else if (ts[0] == "structure") {
                if (ts.size() < 4 || ts[2] != "over")
                    in.fail("structure expects 'structure <name> over ...'", in.at - 1);
                require_fresh(ts[1]);
                structure_block(ts[1], ts);
            } else {
                one_liner(raw);
            }
        }
    }
};

} // namespace

Workspace parse_workspace_text(const std::string& text, const std::string& filename) {
    Lines in{filename, {}, 0};
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) in.lines.push_back(line);
    Workspace ws;
    Parser p{ws, in};
    p.run();
    return ws;
}

Workspace parse_workspace(const std::vector<std::string>& files) {
    Workspace ws;
    for (const auto& f : files) {
        std::ifstream fin(f);
        if (!fin) throw Error("ParseError", "cannot read file " + f);
        std::stringstream buf;
        buf << fin.rdbuf();
        Lines in{f, {}, 0};
        std::istringstream ss(buf.str());
        std::string line;
        while (std::getline(ss, line)) in.lines.push_back(line);
        Parser p{ws, in};
        p.run();
    }
    return ws;
}

} // namespace pretop::cli
