#include "henkin/coding.hpp"

namespace henkin {

namespace {

constexpr unsigned kTermTags = 3;
constexpr unsigned kFormulaTags = 7;

BigNat code_list(const std::vector<Term>& ts, std::size_t from = 0) {
    if (from == ts.size()) return 0;
    return 1 + cantor_pair(code(ts[from]), code_list(ts, from + 1));
}

}  // namespace

BigNat cantor_pair(const BigNat& a, const BigNat& b) {
    BigNat s = a + b;
    return s * (s + 1) / 2 + b;
}

BigNat symbol_code(const std::string& name) {
    BigNat n = 1;
    for (unsigned char c : name) n = n * 256 + c;
    return n;
}

BigNat code(const VarId& x) {
    if (x.is_user()) return kTermTags * symbol_code(x.name());
    return kTermTags * x.index() + 1;
}

BigNat code(const Term& t) {
    if (t.is_var()) return code(t.as_var());
    const auto& f = t.as_app();
    return kTermTags * cantor_pair(symbol_code(f.fun), code_list(f.args)) + 2;
}

BigNat code(const Formula& a) {
    auto tagged = [](const BigNat& l, const BigNat& r, unsigned tag) {
        return kFormulaTags * cantor_pair(l, r) + tag;
    };
    switch (a.connective()) {
        case Connective::Atom:
            return tagged(symbol_code(a.as_atom().pred), code_list(a.as_atom().args), 0);
        case Connective::Bot:
            return 1;
        case Connective::Imp:
            return tagged(code(a.as_imp().lhs), code(a.as_imp().rhs), 2);
        case Connective::Forall:
            return tagged(code(a.bound_var()), code(a.body()), 3);
        case Connective::And:
            return tagged(code(a.as_and().lhs), code(a.as_and().rhs), 4);
        case Connective::Or:
            return tagged(code(a.as_or().lhs), code(a.as_or().rhs), 5);
        case Connective::Exists:
            return tagged(code(a.bound_var()), code(a.body()), 6);
    }
    return 0;
}

Level level_of(const Formula& a, Discipline d) {
    const unsigned k = d == Discipline::TwoClass ? 2 : 3;
    switch (a.connective()) {
        case Connective::Forall:
            return {k * code(a), LevelClass::Forall};
        case Connective::Imp:
            return {k * code(a) + 1, LevelClass::Imp};
        case Connective::Exists:
            if (d == Discipline::ThreeClass) return {k * code(a) + 2, LevelClass::Exists};
            throw SyntaxError("existential formulas have no level under the two-class discipline");
        default:
            throw SyntaxError("only quantified and implicational formulas have a level");
    }
}

LevelClass class_of(const BigNat& level, Discipline d) {
    const unsigned k = d == Discipline::TwoClass ? 2 : 3;
    unsigned r = static_cast<unsigned>(level % k);
    return r == 0 ? LevelClass::Forall : r == 1 ? LevelClass::Imp : LevelClass::Exists;
}

VarId henkin_witness(const Formula& a) {
    if (!a.is(Connective::Forall) && !a.is(Connective::Exists))
        throw SyntaxError("Henkin witnesses exist only for quantified formulas");
    return VarId::witness(code(a) + 1);
}

}  // namespace henkin
