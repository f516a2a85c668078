// Admissible rules as primitive-only proof transformations.
//
// Every function takes primitive proofs and the context they live in and
// returns a primitive proof; none of them checks its inputs beyond what the
// construction needs, so callers re-check when in doubt.
#pragma once

#include "henkin/proof.hpp"

namespace henkin {

// p : Gamma |- A with Gamma = w.source(target)  ==>  target |- A.
// Eigenvariables of p that clash with the new hypotheses are renamed.
Proof weaken(const Inclusion& w, const Proof& p, const Context& target);

// p : Gamma, A |- B and q : Gamma |- A  ==>  Gamma |- B.
Proof subst_hyp(const Proof& p, const Proof& q, const Context& gamma, const Formula& a);

// Replaces free occurrences of the term variable y in p's annotations by z.
Proof rename_var(const Proof& p, const VarId& y, const VarId& z);

// p : Gamma |- _|_  ==>  Gamma |- a.
Proof efq(const Proof& p, const Formula& a, const Context& gamma);
// p : Gamma, A -> B |- _|_  ==>  Gamma |- A  (pi1),  Gamma |- ~B  (pi2).
Proof pi1(const Proof& p, const Formula& h, const Context& gamma);
Proof pi2(const Proof& p, const Formula& h, const Context& gamma);
// p : Gamma, A(y) -> forall x. A(x) |- _|_  ==>  Gamma |- _|_.
Proof drinker(const Proof& p, const VarId& y, const Formula& h, const Context& gamma);
// p : Gamma, (exists y. A(y)) -> A(x) |- _|_  ==>  Gamma |- _|_.
Proof henkin_ex(const Proof& p, const VarId& x, const Formula& h, const Context& gamma);

// Upper bound on distinct nodes built by one elaboration. Derived rules that
// use their premise twice double the output per nesting level.
inline constexpr std::size_t kElaborationBudget = std::size_t{1} << 18;

// Expands every derived node of p (checked in gamma) into primitive rules.
// Throws ProofError when the output would exceed the budget.
Proof elaborate(const Proof& p, const Context& gamma, std::size_t budget = kElaborationBudget);

}  // namespace henkin
