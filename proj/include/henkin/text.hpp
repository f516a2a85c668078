// Concrete syntax for terms, formulas, theories, and proof terms.
//
//   formula  ::= quant | imp
//   quant    ::= ("forall" | "exists") ident "." formula
//   imp      ::= or ("->" formula)?
//   or       ::= and ("\/" or)?
//   and      ::= unary ("/\" and)?
//   unary    ::= "~" unary | quant | atom | "(" formula ")"
//   atom     ::= "_|_" | ident ("(" term ("," term)* ")")?
//   term     ::= ident | ident "(" (term ("," term)*)? ")" | "#" digits
//
// A bare identifier in term position is a variable; a nullary function is
// written `c()`. `~A` abbreviates `A -> _|_` and is how such formulas print.
//
// Proofs are s-expressions: (ax i) (dn p) (app p q) (inst p t) (lam A p)
// (gen y p) (gen y x p) (pair p q) (fst p) (snd p) (inl B p) (inr A p)
// (case p q r) (exi t A p) (exe p q), plus the derived forms (weak "SNS" p)
// (efq A p) (pi1 H p) (pi2 H p) (drinker y H p) (henkin-ex x H p). Formula
// and term arguments are a bare identifier or a {...} block.
#pragma once

#include <string>
#include <string_view>

#include "henkin/proof.hpp"
#include "henkin/syntax.hpp"

namespace henkin {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at offset " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

struct ParseOptions {
    bool allow_witnesses = false;  // accept #k variables
};

Term parse_term(std::string_view text, ParseOptions opts = {});
Formula parse_formula(std::string_view text, ParseOptions opts = {});
// One formula per non-blank line; '%' starts a comment.
Theory parse_theory(std::string_view text);
Proof parse_proof(std::string_view text, ParseOptions opts = {.allow_witnesses = true});

std::string to_string(const Term& t);
std::string to_string(const Formula& a);
std::string to_string(const Context& gamma);
std::string to_string(const Proof& p);

}  // namespace henkin
