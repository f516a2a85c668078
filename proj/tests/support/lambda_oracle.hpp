// Reference beta/eta machinery over plain de Bruijn lambda terms, written
// independently of the NbE implementation.
#pragma once

#include <memory>
#include <string>

#include "henkin/nbe.hpp"

namespace henkin::support {

struct Lam {
    enum class K { Var, App, Abs } k;
    std::size_t var = 0;
    std::shared_ptr<const nbe::MinFormula> dom;  // Abs
    std::shared_ptr<const Lam> f, a;             // App: f a; Abs: body in f
};
using LamP = std::shared_ptr<const Lam>;

LamP lvar(std::size_t i);
LamP lapp(LamP f, LamP a);
LamP labs(const nbe::MinFormula& dom, LamP body);

LamP from_proof(const nbe::MinProof& p);
bool lam_equal(const LamP& x, const LamP& y);
std::string lam_str(const LamP& t);

// Normal-order reduction to beta normal form; step budget guards runaway.
LamP beta_normal_form(const LamP& t, std::size_t budget = 1000000);
bool is_beta_normal(const LamP& t);

// Type-directed eta expansion of a beta-normal term of type a in gamma.
LamP eta_long(const LamP& t, const nbe::MinContext& gamma, const nbe::MinFormula& a);
// Beta-normal, and every neutral sits at atomic type.
bool is_eta_long(const LamP& t, const nbe::MinContext& gamma, const nbe::MinFormula& a);

}  // namespace henkin::support
