// Natural-deduction proof terms for classical first-order logic.
//
// Hypotheses are de Bruijn indices counted from the right of the context.
// Primitive nodes are what the kernel checks; derived nodes (weak, efq, pi1,
// pi2, drinker, henkin-ex) are admissible rules that elaborate into primitive
// ones and are kept as-is by the extraction engine for readable output.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "henkin/syntax.hpp"

namespace henkin {

class ProofError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Derivation of Gamma ⊂ Gamma'. One step per element of Gamma', left to
// right: S keeps the next element of Gamma, N skips a new one.
class Inclusion {
public:
    Inclusion() = default;
    explicit Inclusion(std::vector<bool> keep) : keep_(std::move(keep)) {}
    static Inclusion identity(std::size_t n) { return Inclusion(std::vector<bool>(n, true)); }
    // "SNS" style text.
    static Inclusion parse(const std::string& steps);

    // L_N and L_S: extend the target by one element on the right.
    Inclusion skip() const;
    Inclusion keep() const;

    std::size_t target_size() const { return keep_.size(); }
    std::size_t source_size() const;
    bool is_identity() const;
    const std::vector<bool>& steps() const { return keep_; }

    // Index of source hypothesis i (from the right) inside the target.
    std::size_t map_index(std::size_t i) const;
    // Source context recovered from the target.
    Context source(const Context& target) const;
    // (*this) after inner: inner is Gamma ⊂ Gamma', *this is Gamma' ⊂ Gamma''.
    Inclusion after(const Inclusion& inner) const;
    // Prefix inclusion Gamma ⊂ Gamma, Delta where |Gamma| = n, |Delta| = extra.
    static Inclusion prefix(std::size_t n, std::size_t extra);

    std::string str() const;
    friend bool operator==(const Inclusion&, const Inclusion&) = default;

private:
    std::vector<bool> keep_;
};

enum class Rule : unsigned char {
    Ax, Dn, AppImp, AppForall, AbsImp, AbsForall,
    Pair, Proj1, Proj2, Inj1, Inj2, Case, ExIntro, ExElim,
    Weak, Efq, Pi1, Pi2, Drinker, HenkinEx,
};

bool is_primitive_rule(Rule r);
const char* rule_name(Rule r);

class Proof {
public:
    struct Node {
        Rule rule = Rule::Ax;
        std::size_t index = 0;           // Ax
        std::vector<Proof> kids;
        std::optional<Formula> formula;  // annotations
        std::optional<Term> term;        // AppForall, ExIntro
        std::optional<VarId> var;        // AbsForall eigenvariable; Drinker y; HenkinEx x
        std::optional<VarId> binder;     // AbsForall explicit binder
        std::optional<Inclusion> incl;   // Weak
    };

    static Proof ax(std::size_t i);
    static Proof dn(Proof p);
    static Proof app(Proof p, Proof q);
    static Proof inst(Proof p, Term t);
    static Proof lam(Formula a, Proof p);
    // Concludes forall b. A[y <- b] with b = binder or y.
    static Proof gen(VarId y, Proof p, std::optional<VarId> binder = std::nullopt);
    static Proof pair(Proof p, Proof q);
    static Proof fst(Proof p);
    static Proof snd(Proof p);
    static Proof inl(Formula right, Proof p);
    static Proof inr(Formula left, Proof p);
    static Proof cases(Proof p, Proof q, Proof r);
    static Proof exi(Term t, Formula exists, Proof p);
    static Proof exe(Proof p, Proof q);

    static Proof weak(Inclusion w, Proof p);
    static Proof efq(Formula a, Proof p);
    static Proof pi1(Formula h, Proof p);
    static Proof pi2(Formula h, Proof p);
    static Proof drinker(VarId y, Formula h, Proof p);
    static Proof henkin_ex(VarId x, Formula h, Proof p);

    static Proof from_node(Node n) { return Proof(std::move(n)); }

    const Node& node() const { return *node_; }
    Rule rule() const { return node_->rule; }
    const Proof& kid(std::size_t i) const { return node_->kids.at(i); }
    const std::vector<Proof>& kids() const { return node_->kids; }
    const Formula& formula() const { return *node_->formula; }
    const Term& term() const { return *node_->term; }
    const VarId& var() const { return *node_->var; }
    const std::optional<VarId>& binder() const { return node_->binder; }
    const Inclusion& incl() const { return *node_->incl; }
    std::size_t index() const { return node_->index; }

    bool same_node(const Proof& o) const { return node_ == o.node_; }
    Proof with_kids(std::vector<Proof> kids) const;

    friend bool operator==(const Proof& a, const Proof& b);

private:
    explicit Proof(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
    std::shared_ptr<const Node> node_;
};

bool is_primitive(const Proof& p);
std::size_t size(const Proof& p);
// Number of distinct nodes; extracted proofs share subproofs.
std::size_t dag_size(const Proof& p);
// Every variable mentioned by an annotation, eigenvariable, or binder.
VarSet proof_vars(const Proof& p);

}  // namespace henkin
