// Proof checking. `check` is the trusted kernel and accepts primitive rules
// only; `check_derived` also accepts the admissible rules, checking each
// against its schematic statement.
#pragma once

#include "henkin/proof.hpp"

namespace henkin {

Formula check(const Proof& p, const Context& gamma);
Formula check_derived(const Proof& p, const Context& gamma);

// Shape of a Henkin axiom for the derived drinker and henkin-ex rules.
// Throws ProofError when `h` is not A(y) -> forall x. A(x) (resp.
// (exists x. A(x)) -> A(y)) for the given y, or when y is not fresh.
void check_drinker_premise(const VarId& y, const Formula& h, const Context& gamma);
void check_henkin_ex_premise(const VarId& x, const Formula& h, const Context& gamma);

}  // namespace henkin
