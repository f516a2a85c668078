// First-order syntax: variables, terms, formulas, substitutions, contexts.
//
// Terms and formulas are immutable shared trees with value semantics; copying
// a Term or Formula copies a pointer. Binders are named. Variables live in two
// disjoint pools: user variables (named, pool 1) and Henkin witnesses
// (numbered, pool 2, printed `#k`).
#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace henkin {

using BigNat = boost::multiprecision::mpz_int;

class SyntaxError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Pool : unsigned char { User = 1, Witness = 2 };

class VarId {
public:
    static VarId user(std::string name);
    static VarId witness(BigNat index);

    Pool pool() const { return pool_; }
    bool is_user() const { return pool_ == Pool::User; }
    bool is_witness() const { return pool_ == Pool::Witness; }
    const std::string& name() const { return name_; }  // pool 1 only
    const BigNat& index() const { return index_; }     // pool 2 only

    std::string str() const;

    friend bool operator==(const VarId& a, const VarId& b) {
        return a.pool_ == b.pool_ && a.name_ == b.name_ && a.index_ == b.index_;
    }
    friend bool operator<(const VarId& a, const VarId& b);

private:
    VarId(Pool pool, std::string name, BigNat index)
        : pool_(pool), name_(std::move(name)), index_(std::move(index)) {}

    Pool pool_;
    std::string name_;
    BigNat index_;
};

using VarSet = std::set<VarId>;

class Term {
public:
    struct Var {
        VarId id;
    };
    struct App {
        std::string fun;
        std::vector<Term> args;
    };
    using Node = std::variant<Var, App>;

    static Term var(VarId v);
    static Term var(const std::string& name) { return var(VarId::user(name)); }
    static Term app(std::string fun, std::vector<Term> args = {});

    const Node& node() const { return *node_; }
    bool is_var() const { return std::holds_alternative<Var>(*node_); }
    const VarId& as_var() const { return std::get<Var>(*node_).id; }
    const App& as_app() const { return std::get<App>(*node_); }

    bool same_node(const Term& other) const { return node_ == other.node_; }

    friend bool operator==(const Term& a, const Term& b);
    friend std::strong_ordering compare(const Term& a, const Term& b);
    friend bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

private:
    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

enum class Connective : unsigned char { Atom, Bot, Imp, Forall, And, Or, Exists };

class Formula;

namespace formula_nodes {
struct Atom;
struct Bot;
struct Imp;
struct Forall;
struct And;
struct Or;
struct Exists;
}  // namespace formula_nodes

class Formula {
public:
    using Atom = formula_nodes::Atom;
    using Bot = formula_nodes::Bot;
    using Imp = formula_nodes::Imp;
    using Forall = formula_nodes::Forall;
    using And = formula_nodes::And;
    using Or = formula_nodes::Or;
    using Exists = formula_nodes::Exists;
    struct Node;

    static Formula atom(std::string pred, std::vector<Term> args = {});
    static Formula bot();
    static Formula imp(Formula a, Formula b);
    static Formula neg(Formula a) { return imp(std::move(a), bot()); }
    static Formula conj(Formula a, Formula b);
    static Formula disj(Formula a, Formula b);
    static Formula forall(VarId x, Formula body);
    static Formula exists(VarId x, Formula body);
    static Formula forall(const std::string& x, Formula body) {
        return forall(VarId::user(x), std::move(body));
    }
    static Formula exists(const std::string& x, Formula body) {
        return exists(VarId::user(x), std::move(body));
    }

    const Node& node() const { return *node_; }
    Connective connective() const;
    bool is(Connective c) const { return connective() == c; }
    bool is_negation() const;  // A -> _|_

    const Atom& as_atom() const;
    const Imp& as_imp() const;
    const And& as_and() const;
    const Or& as_or() const;
    const Forall& as_forall() const;
    const Exists& as_exists() const;

    // Binder and body of a quantified formula (either quantifier).
    const VarId& bound_var() const;
    const Formula& body() const;

    bool same_node(const Formula& other) const { return node_ == other.node_; }

    friend bool operator==(const Formula& a, const Formula& b);
    friend std::strong_ordering compare(const Formula& a, const Formula& b);
    friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

private:
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

namespace formula_nodes {
struct Atom {
    std::string pred;
    std::vector<Term> args;
};
struct Bot {};
struct Imp {
    Formula lhs, rhs;
};
struct And {
    Formula lhs, rhs;
};
struct Or {
    Formula lhs, rhs;
};
struct Forall {
    VarId var;
    Formula body;
};
struct Exists {
    VarId var;
    Formula body;
};
}  // namespace formula_nodes

struct Formula::Node : std::variant<Atom, Bot, Imp, Forall, And, Or, Exists> {
    using variant::variant;
};

inline Connective Formula::connective() const { return static_cast<Connective>(node_->index()); }
inline const Formula::Atom& Formula::as_atom() const { return std::get<Atom>(*node_); }
inline const Formula::Imp& Formula::as_imp() const { return std::get<Imp>(*node_); }
inline const Formula::And& Formula::as_and() const { return std::get<And>(*node_); }
inline const Formula::Or& Formula::as_or() const { return std::get<Or>(*node_); }
inline const Formula::Forall& Formula::as_forall() const { return std::get<Forall>(*node_); }
inline const Formula::Exists& Formula::as_exists() const { return std::get<Exists>(*node_); }

// Context: rightmost element is the most recent hypothesis.
using Context = std::vector<Formula>;

// Finite simultaneous substitution. Variables outside the domain are fixed.
class Substitution {
public:
    Substitution() = default;
    static Substitution single(VarId x, Term t);

    bool empty() const { return map_.empty(); }
    const Term* find(const VarId& x) const;
    Term apply(const VarId& x) const;

    // Returns this extended (or overridden) with x <- t.
    Substitution with(VarId x, Term t) const;
    Substitution without(const VarId& x) const;

    // (this then other): x |-> (this x)[other].
    Substitution then(const Substitution& other) const;

    const std::map<VarId, Term>& bindings() const { return map_; }

private:
    std::map<VarId, Term> map_;
};

VarSet free_vars(const Term& t);
VarSet free_vars(const Formula& a);
VarSet free_vars(const Context& gamma);
// All variables, free or bound.
VarSet all_vars(const Formula& a);
bool occurs_free(const VarId& x, const Formula& a);
bool occurs_free(const VarId& x, const Context& gamma);

Term subst_term(const Term& t, const Substitution& s);
// Capture-avoiding simultaneous substitution. A bound variable is renamed only
// when keeping it would capture a variable of an inserted term; the new name is
// chosen by fresh_user_var.
Formula subst_formula(const Formula& a, const Substitution& s);
inline Formula instantiate(const Formula& quantified, const Term& t) {
    return subst_formula(quantified.body(),
                         Substitution::single(quantified.bound_var(), t));
}

// Deterministic fresh pool-1 name: strips trailing digits from `base` and
// appends the smallest positive integer giving a name outside `avoid`.
VarId fresh_user_var(const VarId& base, const VarSet& avoid);

bool alpha_equal(const Formula& a, const Formula& b);

std::size_t depth(const Formula& a);
std::size_t size(const Formula& a);

// True when every variable (free or bound) is a user variable.
bool only_user_vars(const Formula& a);

// Symbol tables with arities; names are unique per table.
class Signature {
public:
    void add_fun(const std::string& name, std::size_t arity);
    void add_pred(const std::string& name, std::size_t arity);
    // Records every symbol of `a`, failing on an arity clash.
    void absorb(const Formula& a);
    void absorb(const Term& t);

    bool has_fun(const std::string& name) const { return funs_.contains(name); }
    bool has_pred(const std::string& name) const { return preds_.contains(name); }
    std::size_t fun_arity(const std::string& name) const;
    std::size_t pred_arity(const std::string& name) const;

    // Throws SyntaxError when `a` uses an unknown symbol or a wrong arity.
    void validate(const Formula& a) const;
    void validate(const Term& t) const;

    const std::map<std::string, std::size_t>& funs() const { return funs_; }
    const std::map<std::string, std::size_t>& preds() const { return preds_; }

private:
    std::map<std::string, std::size_t> funs_;
    std::map<std::string, std::size_t> preds_;
};

// Finite theory; membership evidence is an index into `members`.
class Theory {
public:
    Theory() = default;
    explicit Theory(std::vector<Formula> members);

    const std::vector<Formula>& members() const { return members_; }
    const Formula& member(std::size_t i) const { return members_.at(i); }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }

private:
    std::vector<Formula> members_;
};

}  // namespace henkin
