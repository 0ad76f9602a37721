#include "pretop/logic.hpp"

#include <algorithm>
#include <cctype>

#include "pretop/labels.hpp"

namespace pretop::logic {

FormulaPtr f_truth() { return std::make_shared<Formula>(Formula{FKind::Truth}); }
FormulaPtr f_falsity() { return std::make_shared<Formula>(Formula{FKind::Falsity}); }

FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
    Formula f{FKind::And};
    f.lhs = std::move(a);
    f.rhs = std::move(b);
    return std::make_shared<Formula>(std::move(f));
}

FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
    Formula f{FKind::Or};
    f.lhs = std::move(a);
    f.rhs = std::move(b);
    return std::make_shared<Formula>(std::move(f));
}

FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
    Formula f{FKind::Implies};
    f.lhs = std::move(a);
    f.rhs = std::move(b);
    return std::make_shared<Formula>(std::move(f));
}

FormulaPtr f_not(FormulaPtr a) {
    Formula f{FKind::Not};
    f.lhs = std::move(a);
    return std::make_shared<Formula>(std::move(f));
}

FormulaPtr f_equals(Term a, Term b) {
    Formula f{FKind::Equals};
    f.t1 = std::move(a);
    f.t2 = std::move(b);
    return std::make_shared<Formula>(std::move(f));
}

FormulaPtr f_forall(std::string var, std::string sort, FormulaPtr body) {
    Formula f{FKind::Forall};
    f.var = std::move(var);
    f.sort = std::move(sort);
    f.body = std::move(body);
    return std::make_shared<Formula>(std::move(f));
}

FormulaPtr f_exists(std::string var, std::string sort, FormulaPtr body) {
    Formula f{FKind::Exists};
    f.var = std::move(var);
    f.sort = std::move(sort);
    f.body = std::move(body);
    return std::make_shared<Formula>(std::move(f));
}

FormulaPtr f_pred(std::string name, std::vector<Term> args) {
    Formula f{FKind::Pred};
    f.pred = std::move(name);
    f.args = std::move(args);
    return std::make_shared<Formula>(std::move(f));
}

Term t_var(std::string name) { return Term{true, std::move(name), {}}; }
Term t_app(std::string head, std::vector<Term> args) {
    return Term{false, std::move(head), std::move(args)};
}

std::string to_string(const Term& t) {
    if (t.is_var) return t.head;
    if (t.args.empty()) return t.head;
    std::string out = t.head + "(";
    for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += ",";
        out += to_string(t.args[i]);
    }
    return out + ")";
}

std::string to_string(const Formula& f) {
    switch (f.kind) {
        case FKind::Truth: return "true";
        case FKind::Falsity: return "false";
        case FKind::And: return "(" + to_string(*f.lhs) + " /\\ " + to_string(*f.rhs) + ")";
        case FKind::Or: return "(" + to_string(*f.lhs) + " \\/ " + to_string(*f.rhs) + ")";
        case FKind::Implies:
            return "(" + to_string(*f.lhs) + " -> " + to_string(*f.rhs) + ")";
        case FKind::Not: return "~" + to_string(*f.lhs);
        case FKind::Equals: return to_string(f.t1) + " = " + to_string(f.t2);
        case FKind::Forall:
            return "forall " + f.var + ":" + f.sort + ". " + to_string(*f.body);
        case FKind::Exists:
            return "exists " + f.var + ":" + f.sort + ". " + to_string(*f.body);
        case FKind::Pred: {
            std::string out = f.pred + "(";
            for (std::size_t i = 0; i < f.args.size(); ++i) {
                if (i) out += ",";
                out += to_string(f.args[i]);
            }
            return out + ")";
        }
    }
    return "?";
}

int quantifier_depth(const Formula& f) {
    switch (f.kind) {
        case FKind::And:
        case FKind::Or:
        case FKind::Implies:
            return std::max(quantifier_depth(*f.lhs), quantifier_depth(*f.rhs));
        case FKind::Not: return quantifier_depth(*f.lhs);
        case FKind::Forall:
        case FKind::Exists: return 1 + quantifier_depth(*f.body);
        default: return 0;
    }
}

// ---------------------------------------------------------------- parser

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;
    const std::set<std::string>& symbols;
    std::vector<std::string> bound;

    [[noreturn]] void syntax(const std::string& msg) const {
        throw Error("SyntaxError", msg + " at position " + std::to_string(pos));
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(const std::string& tok) {
        skip_ws();
        if (text.compare(pos, tok.size(), tok) == 0) {
            pos += tok.size();
            return true;
        }
        return false;
    }

    bool peek(const std::string& tok) {
        skip_ws();
        return text.compare(pos, tok.size(), tok) == 0;
    }

    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' ||
               c == '#' || c == '*';
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && ident_char(text[pos])) ++pos;
        if (pos == start) syntax("expected identifier");
        return text.substr(start, pos - start);
    }

    bool peek_ident(const std::string& kw) {
        skip_ws();
        if (text.compare(pos, kw.size(), kw) != 0) return false;
        std::size_t after = pos + kw.size();
        return after >= text.size() || !ident_char(text[after]);
    }

    bool is_bound(const std::string& v) const {
        return std::find(bound.begin(), bound.end(), v) != bound.end();
    }

    Term term() {
        std::size_t at = pos;
        std::string head = ident();
        skip_ws();
        if (eat("(")) {
            std::vector<Term> args;
            if (!peek(")")) {
                args.push_back(term());
                while (eat(",")) args.push_back(term());
            }
            if (!eat(")")) syntax("expected ')'");
            if (!symbols.count(head))
                throw Error("SortError", "unknown symbol '" + head + "' at position " +
                                             std::to_string(at));
            return t_app(head, std::move(args));
        }
        if (is_bound(head)) return t_var(head);
        if (symbols.count(head)) return t_app(head);  // declared constant
        throw Error("SortError",
                    "unbound variable '" + head + "' at position " + std::to_string(at));
    }

    FormulaPtr formula() {
        if (peek_ident("forall") || peek_ident("exists")) {
            bool uni = peek_ident("forall");
            ident();
            std::string v = ident();
            if (!eat(":")) syntax("expected ':' after variable");
            std::string s = ident();
            if (!eat(".")) syntax("expected '.' after sort");
            bound.push_back(v);
            auto body = formula();
            bound.pop_back();
            return uni ? f_forall(v, s, body) : f_exists(v, s, body);
        }
        auto lhs = disj();
        if (eat("->")) return f_implies(lhs, formula());
        return lhs;
    }

    FormulaPtr disj() {
        auto lhs = conj();
        while (true) {
            if (eat("\\/") || (!peek("->") && eat("|")))
                lhs = f_or(lhs, conj());
            else
                return lhs;
        }
    }

    FormulaPtr conj() {
        auto lhs = neg();
        while (true) {
            if (eat("/\\") || eat("&"))
                lhs = f_and(lhs, neg());
            else
                return lhs;
        }
    }

    FormulaPtr neg() {
        if (eat("~") || eat("!")) return f_not(neg());
        return atom();
    }

    FormulaPtr atom() {
        if (eat("(")) {
            auto f = formula();
            if (!eat(")")) syntax("expected ')'");
            return f;
        }
        if (peek_ident("true")) {
            ident();
            return f_truth();
        }
        if (peek_ident("false")) {
            ident();
            return f_falsity();
        }
        if (peek_ident("forall") || peek_ident("exists")) return formula();
        std::size_t at = pos;
        Term t = term();
        if (eat("=")) return f_equals(std::move(t), term());
        // a bare application is a predicate atom
        if (!t.is_var) {
            std::vector<Term> args = t.args;
            return f_pred(t.head, std::move(args));
        }
        pos = at;
        syntax("expected '=' or predicate application");
    }
};

} // namespace

FormulaPtr parse_formula(const std::string& text, const std::set<std::string>& symbols) {
    Parser p{text, 0, symbols, {}};
    auto f = p.formula();
    p.skip_ws();
    if (p.pos != text.size()) p.syntax("trailing input");
    return f;
}

// ---------------------------------------------------------------- structures

Structure Structure::over_finset() {
    Structure s;
    s.base = require_valid(terminal_category());
    s.finset = true;
    return s;
}

Structure Structure::over_psh(CategoryRef base) {
    Structure s;
    s.base = std::move(base);
    s.finset = false;
    return s;
}

void Structure::add_sort(const std::string& name, const FinSetObj& x) {
    if (!finset) throw Error("AmbientMismatch", "finite-set sort in a presheaf structure");
    Presheaf p;
    p.base = base;
    p.stalk["*"] = x.elems;
    for (const auto& e : x.elems) p.act[{base->id_of("*"), e}] = e;
    sorts[name] = require_valid(std::move(p));
}

void Structure::add_sort(const std::string& name, const Presheaf& p) {
    if (!(*p.base == *base)) throw Error("BaseMismatch", "sort over a different base");
    sorts[name] = require_valid(p);
}

void Structure::add_func(const std::string& name, const FinSetMap& f,
                         const std::string& dom_sort, const std::string& res_sort) {
    Func fn;
    fn.arg_sorts = {dom_sort};
    fn.res_sort = res_sort;
    for (const auto& e : f.dom.elems) fn.table[{"*", {e}}] = f(e);
    funcs[name] = std::move(fn);
}

void Structure::add_func(const std::string& name, const NatTrans& f,
                         const std::string& dom_sort, const std::string& res_sort) {
    Func fn;
    fn.arg_sorts = {dom_sort};
    fn.res_sort = res_sort;
    for (const auto& [k, v] : f.component) fn.table[{k.first, {k.second}}] = v;
    funcs[name] = std::move(fn);
}

void Structure::add_const(const std::string& name, const std::string& sort_name,
                          const std::map<std::string, std::string>& value_per_stage) {
    Func fn;
    fn.res_sort = sort_name;
    for (const auto& [stage, v] : value_per_stage) fn.table[{stage, {}}] = v;
    funcs[name] = std::move(fn);
}

void Structure::add_pred(
    const std::string& name, const std::vector<std::string>& arg_sorts,
    const std::set<std::pair<std::string, std::vector<std::string>>>& members) {
    preds[name] = Pred{arg_sorts, members};
}

std::set<std::string> Structure::symbol_names() const {
    std::set<std::string> out;
    for (const auto& [n, fn] : funcs) out.insert(n);
    for (const auto& [n, pr] : preds) out.insert(n);
    return out;
}

const Presheaf& Structure::sort(const std::string& name) const {
    auto it = sorts.find(name);
    if (it == sorts.end()) throw Error("SortError", "unknown sort '" + name + "'");
    return it->second;
}

void validate_structure(const Structure& s) {
    const FiniteCategory& c = *s.base;
    for (const auto& [name, fn] : s.funcs) {
        const Presheaf& res = s.sort(fn.res_sort);
        // totality and well-typedness per stage
        for (const auto& obj : c.objects) {
            std::vector<std::vector<std::string>> tuples{{}};
            for (const auto& as : fn.arg_sorts) {
                std::vector<std::vector<std::string>> next;
                for (const auto& t : tuples)
                    for (const auto& e : s.sort(as).stalk_at(obj)) {
                        auto t2 = t;
                        t2.push_back(e);
                        next.push_back(std::move(t2));
                    }
                tuples = std::move(next);
            }
            for (const auto& t : tuples) {
                auto it = fn.table.find({obj, t});
                if (it == fn.table.end())
                    throw Error("SortError", "function " + name + " missing a value");
                if (!res.has_elem(obj, it->second))
                    throw Error("SortError", "function " + name + " lands outside its sort");
            }
        }
        // naturality
        for (const auto& ar : c.arrows) {
            for (const auto& [key, v] : fn.table) {
                if (key.first != ar.cod) continue;
                std::vector<std::string> restricted;
                for (std::size_t i = 0; i < key.second.size(); ++i)
                    restricted.push_back(
                        s.sort(fn.arg_sorts[i]).restrict(key.second[i], ar.id));
                auto it = fn.table.find({ar.dom, restricted});
                if (it == fn.table.end() || it->second != res.restrict(v, ar.id))
                    throw Error("SortError", "function " + name + " is not natural");
            }
        }
    }
    for (const auto& [name, pr] : s.preds) {
        for (const auto& ar : c.arrows)
            for (const auto& [stage, tuple] : pr.members) {
                if (stage != ar.cod) continue;
                std::vector<std::string> restricted;
                for (std::size_t i = 0; i < tuple.size(); ++i)
                    restricted.push_back(s.sort(pr.arg_sorts[i]).restrict(tuple[i], ar.id));
                if (!pr.members.count({ar.dom, restricted}))
                    throw Error("SortError",
                                "predicate " + name + " is not closed under restriction");
            }
    }
}

// ---------------------------------------------------------------- sorting

namespace {

std::string term_sort(const Term& t, const Structure& s,
                      const std::map<std::string, std::string>& var_sorts) {
    if (t.is_var) {
        auto it = var_sorts.find(t.head);
        if (it == var_sorts.end())
            throw Error("SortError", "unbound variable '" + t.head + "'");
        return it->second;
    }
    auto it = s.funcs.find(t.head);
    if (it == s.funcs.end())
        throw Error("SortError", "unknown function symbol '" + t.head + "'");
    if (it->second.arg_sorts.size() != t.args.size())
        throw Error("SortError", "arity mismatch at '" + t.head + "'");
    for (std::size_t i = 0; i < t.args.size(); ++i)
        if (term_sort(t.args[i], s, var_sorts) != it->second.arg_sorts[i])
            throw Error("SortError", "argument sort mismatch at '" + t.head + "'");
    return it->second.res_sort;
}

void sort_check_rec(const Formula& f, const Structure& s,
                    std::map<std::string, std::string>& var_sorts) {
    switch (f.kind) {
        case FKind::Truth:
        case FKind::Falsity: return;
        case FKind::And:
        case FKind::Or:
        case FKind::Implies:
            sort_check_rec(*f.lhs, s, var_sorts);
            sort_check_rec(*f.rhs, s, var_sorts);
            return;
        case FKind::Not: sort_check_rec(*f.lhs, s, var_sorts); return;
        case FKind::Equals: {
            if (term_sort(f.t1, s, var_sorts) != term_sort(f.t2, s, var_sorts))
                throw Error("SortError", "equality between different sorts");
            return;
        }
        case FKind::Forall:
        case FKind::Exists: {
            s.sort(f.sort); // must exist
            std::optional<std::string> saved;
            if (auto it = var_sorts.find(f.var); it != var_sorts.end()) saved = it->second;
            var_sorts[f.var] = f.sort;
            sort_check_rec(*f.body, s, var_sorts);
            if (saved)
                var_sorts[f.var] = *saved;
            else
                var_sorts.erase(f.var);
            return;
        }
        case FKind::Pred: {
            auto it = s.preds.find(f.pred);
            if (it == s.preds.end())
                throw Error("SortError", "unknown predicate '" + f.pred + "'");
            if (it->second.arg_sorts.size() != f.args.size())
                throw Error("SortError", "arity mismatch at predicate '" + f.pred + "'");
            for (std::size_t i = 0; i < f.args.size(); ++i)
                if (term_sort(f.args[i], s, var_sorts) != it->second.arg_sorts[i])
                    throw Error("SortError", "argument sort mismatch at '" + f.pred + "'");
            return;
        }
    }
}

} // namespace

void sort_check(const Formula& f, const Structure& s) {
    std::map<std::string, std::string> var_sorts;
    sort_check_rec(f, s, var_sorts);
}

// ---------------------------------------------------------------- evaluation

namespace {

using Env = std::map<std::string, std::string>;

std::string eval_term(const Term& t, const Structure& s, const std::string& stage,
                      const Env& env) {
    if (t.is_var) return env.at(t.head);
    std::vector<std::string> args;
    for (const auto& a : t.args) args.push_back(eval_term(a, s, stage, env));
    const auto& fn = s.funcs.at(t.head);
    auto it = fn.table.find({stage, args});
    if (it == fn.table.end())
        throw Error("SortError", "function '" + t.head + "' undefined on arguments");
    return it->second;
}

void collect_var_sorts(const Formula& f, std::map<std::string, std::string>& out) {
    switch (f.kind) {
        case FKind::And:
        case FKind::Or:
        case FKind::Implies:
            collect_var_sorts(*f.lhs, out);
            collect_var_sorts(*f.rhs, out);
            return;
        case FKind::Not: collect_var_sorts(*f.lhs, out); return;
        case FKind::Forall:
        case FKind::Exists:
            out[f.var] = f.sort;
            collect_var_sorts(*f.body, out);
            return;
        default: return;
    }
}

struct Forcer {
    const Structure& s;
    std::map<std::string, std::string> var_sorts;
    std::vector<std::string>* trace;

    Env restrict_env(const Env& env, const std::string& arrow) const {
        Env out;
        for (const auto& [v, e] : env)
            out[v] = s.sort(var_sorts.at(v)).restrict(e, arrow);
        return out;
    }

    void note(const std::string& line) const {
        if (trace) trace->push_back(line);
    }

    bool go(const Formula& f, const std::string& stage, const Env& env) const {
        switch (f.kind) {
            case FKind::Truth: return true;
            case FKind::Falsity: return false;
            case FKind::And: return go(*f.lhs, stage, env) && go(*f.rhs, stage, env);
            case FKind::Or: return go(*f.lhs, stage, env) || go(*f.rhs, stage, env);
            case FKind::Implies: {
                for (const auto& w : s.base->arrows_into(stage)) {
                    Env env2 = restrict_env(env, w);
                    const std::string& y = s.base->dom(w);
                    if (go(*f.lhs, y, env2) && !go(*f.rhs, y, env2)) {
                        note("implication fails along " + w + " at stage " + y);
                        return false;
                    }
                }
                return true;
            }
            case FKind::Not: {
                for (const auto& w : s.base->arrows_into(stage)) {
                    Env env2 = restrict_env(env, w);
                    if (go(*f.lhs, s.base->dom(w), env2)) return false;
                }
                return true;
            }
            case FKind::Equals:
                return eval_term(f.t1, s, stage, env) == eval_term(f.t2, s, stage, env);
            case FKind::Forall: {
                for (const auto& w : s.base->arrows_into(stage)) {
                    const std::string& y = s.base->dom(w);
                    Env env2 = restrict_env(env, w);
                    for (const auto& e : s.sort(f.sort).stalk_at(y)) {
                        env2[f.var] = e;
                        if (!go(*f.body, y, env2)) {
                            note("forall " + f.var + " fails at stage " + y + " with " +
                                 f.var + " = " + e);
                            return false;
                        }
                    }
                }
                return true;
            }
            case FKind::Exists: {
                Env env2 = env;
                for (const auto& e : s.sort(f.sort).stalk_at(stage)) {
                    env2[f.var] = e;
                    if (go(*f.body, stage, env2)) {
                        note("exists " + f.var + " witnessed by " + e + " at stage " + stage);
                        return true;
                    }
                }
                return false;
            }
            case FKind::Pred: {
                std::vector<std::string> args;
                for (const auto& a : f.args) args.push_back(eval_term(a, s, stage, env));
                return s.preds.at(f.pred).members.count({stage, args}) != 0;
            }
        }
        return false;
    }
};

struct Evaluator {
    const Structure& s;
    std::vector<std::string>* witness;

    bool go(const Formula& f, Env& env) const {
        switch (f.kind) {
            case FKind::Truth: return true;
            case FKind::Falsity: return false;
            case FKind::And: return go(*f.lhs, env) && go(*f.rhs, env);
            case FKind::Or: return go(*f.lhs, env) || go(*f.rhs, env);
            case FKind::Implies: return !go(*f.lhs, env) || go(*f.rhs, env);
            case FKind::Not: return !go(*f.lhs, env);
            case FKind::Equals:
                return eval_term(f.t1, s, "*", env) == eval_term(f.t2, s, "*", env);
            case FKind::Forall: {
                for (const auto& e : s.sort(f.sort).stalk_at("*")) {
                    env[f.var] = e;
                    bool ok = go(*f.body, env);
                    env.erase(f.var);
                    if (!ok) {
                        if (witness)
                            witness->push_back("counterexample " + f.var + " = " + e);
                        return false;
                    }
                }
                return true;
            }
            case FKind::Exists: {
                for (const auto& e : s.sort(f.sort).stalk_at("*")) {
                    env[f.var] = e;
                    bool ok = go(*f.body, env);
                    env.erase(f.var);
                    if (ok) {
                        if (witness) witness->push_back("witness " + f.var + " = " + e);
                        return true;
                    }
                }
                return false;
            }
            case FKind::Pred: {
                std::vector<std::string> args;
                for (const auto& a : f.args) args.push_back(eval_term(a, s, "*", env));
                return s.preds.at(f.pred).members.count({"*", args}) != 0;
            }
        }
        return false;
    }
};

} // namespace

bool force_at(const Formula& f, const Structure& s, const std::string& stage,
              const std::map<std::string, std::string>& env,
              const std::map<std::string, std::string>& env_sorts,
              std::vector<std::string>* trace) {
    Forcer fc{s, env_sorts, trace};
    collect_var_sorts(f, fc.var_sorts);
    return fc.go(f, stage, env);
}

ForceResult force(const Formula& f, const Structure& s, const std::string& stage) {
    sort_check(f, s);
    validate_structure(s);
    ForceResult out;
    out.value = force_at(f, s, stage, {}, {}, &out.trace);
    return out;
}

EvalResult eval_finset(const Formula& f, const Structure& s) {
    if (!s.finset) throw Error("AmbientMismatch", "eval_finset needs a finite-set structure");
    sort_check(f, s);
    validate_structure(s);
    EvalResult out;
    Env env;
    Evaluator ev{s, &out.witness};
    out.value = ev.go(f, env);
    return out;
}

} // namespace pretop::logic
