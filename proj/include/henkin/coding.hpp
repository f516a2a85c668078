// Godel coding of terms and formulas, enumeration levels, Henkin witnesses.
//
// Codes use tagged Cantor pairing: pair(a, b) >= max(a, b), so a witness
// variable #k occurring in A forces code(A) >= k.
#pragma once

#include "henkin/syntax.hpp"

namespace henkin {

BigNat cantor_pair(const BigNat& a, const BigNat& b);
BigNat symbol_code(const std::string& name);

BigNat code(const Term& t);
BigNat code(const Formula& a);
BigNat code(const VarId& x);

enum class Discipline : unsigned char { TwoClass, ThreeClass };
enum class LevelClass : unsigned char { Forall, Imp, Exists };

struct Level {
    BigNat value;
    LevelClass cls;
};

// Throws SyntaxError for atoms, _|_, conjunctions, disjunctions, and for
// existentials under the two-class discipline.
Level level_of(const Formula& a, Discipline d);

// Recovers the class of a level value under a discipline.
LevelClass class_of(const BigNat& level, Discipline d);

// v_{code(A)+1}; A must be quantified.
VarId henkin_witness(const Formula& a);

}  // namespace henkin
