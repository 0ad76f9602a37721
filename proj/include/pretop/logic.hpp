#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "pretop/category.hpp"
#include "pretop/finset.hpp"

namespace pretop::logic {

/// First-order term: a variable or a function symbol applied to terms.
/// Constants are nullary function symbols.
struct Term {
    bool is_var = false;
    std::string head;
    std::vector<Term> args;

    bool operator==(const Term&) const = default;
};

enum class FKind { Truth, Falsity, And, Or, Implies, Not, Equals, Forall, Exists, Pred };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    FKind kind;
    FormulaPtr lhs, rhs;          // And / Or / Implies; Not uses lhs only
    Term t1, t2;                  // Equals
    std::string var, sort;        // Forall / Exists
    FormulaPtr body;
    std::string pred;             // Pred
    std::vector<Term> args;
};

FormulaPtr f_truth();
FormulaPtr f_falsity();
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_not(FormulaPtr a);
FormulaPtr f_equals(Term a, Term b);
FormulaPtr f_forall(std::string var, std::string sort, FormulaPtr body);
FormulaPtr f_exists(std::string var, std::string sort, FormulaPtr body);
FormulaPtr f_pred(std::string name, std::vector<Term> args);
Term t_var(std::string name);
Term t_app(std::string head, std::vector<Term> args = {});

std::string to_string(const Formula& f);
std::string to_string(const Term& t);
int quantifier_depth(const Formula& f);

/// Parser for the documented grammar:
///   formula  := ("forall"|"exists") IDENT ":" IDENT "." formula | impl
///   impl     := disj ("->" formula)?
///   disj     := conj (("\/"|"|") conj)*
///   conj     := neg  (("/\"|"&") neg)*
///   neg      := ("~"|"!") neg | atom
///   atom     := "true" | "false" | "(" formula ")" | term "=" term | PRED "(" terms ")"
///   term     := IDENT ("(" term ("," term)* ")")?
/// Free identifiers must be declared in `symbols` (function, constant and
/// predicate names); anything else is a scope violation.
FormulaPtr parse_formula(const std::string& text,
                         const std::set<std::string>& symbols = {});

/// A structure interprets sorts as presheaves over a base category (a
/// one-object base for plain finite sets), function symbols as stage-indexed
/// tables and predicate symbols as subpresheaves of sort products.
struct Structure {
    CategoryRef base;
    bool finset = false;   // base is the terminal category; stage is "*"

    std::map<std::string, Presheaf> sorts;

    struct Func {
        std::vector<std::string> arg_sorts;
        std::string res_sort;
        // (stage, argument tuple) -> value
        std::map<std::pair<std::string, std::vector<std::string>>, std::string> table;
    };
    std::map<std::string, Func> funcs;

    struct Pred {
        std::vector<std::string> arg_sorts;
        std::set<std::pair<std::string, std::vector<std::string>>> members;
    };
    std::map<std::string, Pred> preds;

    static Structure over_finset();
    static Structure over_psh(CategoryRef base);

    void add_sort(const std::string& name, const FinSetObj& x);
    void add_sort(const std::string& name, const Presheaf& p);
    void add_func(const std::string& name, const FinSetMap& f,
                  const std::string& dom_sort, const std::string& res_sort);
    void add_func(const std::string& name, const NatTrans& f,
                  const std::string& dom_sort, const std::string& res_sort);
    void add_const(const std::string& name, const std::string& sort,
                   const std::map<std::string, std::string>& value_per_stage);
    void add_pred(const std::string& name, const std::vector<std::string>& arg_sorts,
                  const std::set<std::pair<std::string, std::vector<std::string>>>& members);

    std::set<std::string> symbol_names() const;
    const Presheaf& sort(const std::string& name) const;
};

// Well-sortedness of a formula against a structure; throws
// Error("SortError") naming the offending variable/symbol.
void sort_check(const Formula& f, const Structure& s);

// Naturality of function tables and action-closure of predicates; throws on
// violation. Called by the evaluators.
void validate_structure(const Structure& s);

struct EvalResult {
    bool value;
    std::vector<std::string> witness;  // witnesses for ∃, counterexamples for ∀
};

/// Classical Tarski evaluation over a finite-set structure, with witness
/// reporting.
EvalResult eval_finset(const Formula& f, const Structure& s);

struct ForceResult {
    bool value;
    std::vector<std::string> trace;
};

/// Kripke–Joyal forcing at a stage of a presheaf structure. Disjunction and
/// existential take local witnesses at the current stage; implication and the
/// universal quantifier range over all arrows into it.
ForceResult force(const Formula& f, const Structure& s, const std::string& stage);

// Forcing with an explicit environment (elements of the sorts at `stage`);
// env_sorts assigns a sort to every free variable in env.
bool force_at(const Formula& f, const Structure& s, const std::string& stage,
              const std::map<std::string, std::string>& env,
              const std::map<std::string, std::string>& env_sorts = {},
              std::vector<std::string>* trace = nullptr);

} // namespace pretop::logic
