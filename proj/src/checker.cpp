#include "henkin/checker.hpp"

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "henkin/text.hpp"

namespace henkin {

namespace {

[[noreturn]] void fail(const Proof& p, const Context& gamma, const std::string& msg) {
    throw ProofError(std::string(rule_name(p.rule())) + " in [" + to_string(gamma) + "]: " + msg);
}

void expect_alpha(const Proof& p, const Context& gamma, const Formula& got, const Formula& want) {
    if (!alpha_equal(got, want))
        fail(p, gamma, "expected " + to_string(want) + ", got " + to_string(got));
}

const Formula& expect_connective(const Proof& p, const Context& gamma, const Formula& a, Connective c,
                                 const char* what) {
    if (!a.is(c)) fail(p, gamma, std::string("expected ") + what + ", got " + to_string(a));
    return a;
}

class Checker {
public:
    explicit Checker(bool derived) : derived_(derived) {}

    // Extracted proofs share subproofs heavily; each (node, context) pair
    // is checked once.
    Formula run(const Proof& p, Context& gamma) {
        if (p.kids().empty()) return step(p, gamma);
        const Proof::Node* key = &p.node();
        if (auto it = memo_.find(key); it != memo_.end())
            for (const auto& [g, a] : it->second)
                if (g == gamma) return a;
        Formula a = step(p, gamma);
        memo_[key].emplace_back(gamma, a);
        return a;
    }

private:
    Formula step(const Proof& p, Context& gamma) {
        if (!derived_ && !is_primitive_rule(p.rule()))
            fail(p, gamma, "derived rule not accepted by the kernel");
        switch (p.rule()) {
            case Rule::Ax: {
                if (p.index() >= gamma.size())
                    fail(p, gamma, "index " + std::to_string(p.index()) + " out of scope");
                return gamma[gamma.size() - 1 - p.index()];
            }
            case Rule::Dn: {
                Formula a = run(p.kid(0), gamma);
                if (!a.is_negation() || !a.as_imp().lhs.is_negation())
                    fail(p, gamma, "premise is not a double negation: " + to_string(a));
                return a.as_imp().lhs.as_imp().lhs;
            }
            case Rule::AppImp: {
                Formula f = run(p.kid(0), gamma);
                expect_connective(p, gamma, f, Connective::Imp, "an implication");
                Formula a = run(p.kid(1), gamma);
                expect_alpha(p, gamma, a, f.as_imp().lhs);
                return f.as_imp().rhs;
            }
            case Rule::AppForall: {
                Formula f = run(p.kid(0), gamma);
                expect_connective(p, gamma, f, Connective::Forall, "a universal formula");
                return instantiate(f, p.term());
            }
            case Rule::AbsImp: {
                gamma.push_back(p.formula());
                std::optional<Formula> b;
                try {
                    b = run(p.kid(0), gamma);
                } catch (...) {
                    gamma.pop_back();
                    throw;
                }
                gamma.pop_back();
                return Formula::imp(p.formula(), *b);
            }
            case Rule::AbsForall: {
                const VarId& y = p.var();
                if (occurs_free(y, gamma)) fail(p, gamma, "eigenvariable " + y.str() + " occurs in the context");
                Formula a = run(p.kid(0), gamma);
                VarId x = p.binder().value_or(y);
                if (!x.is_user()) fail(p, gamma, "binder " + x.str() + " is not a user variable");
                if (x != y && occurs_free(x, a))
                    fail(p, gamma, "binder " + x.str() + " occurs free in " + to_string(a));
                Formula body = x == y ? a : subst_formula(a, Substitution::single(y, Term::var(x)));
                return Formula::forall(x, body);
            }
            case Rule::Pair:
                return Formula::conj(run(p.kid(0), gamma), run(p.kid(1), gamma));
            case Rule::Proj1:
            case Rule::Proj2: {
                Formula a = run(p.kid(0), gamma);
                expect_connective(p, gamma, a, Connective::And, "a conjunction");
                return p.rule() == Rule::Proj1 ? a.as_and().lhs : a.as_and().rhs;
            }
            case Rule::Inj1:
                return Formula::disj(run(p.kid(0), gamma), p.formula());
            case Rule::Inj2:
                return Formula::disj(p.formula(), run(p.kid(0), gamma));
            case Rule::Case: {
                Formula d = run(p.kid(0), gamma);
                expect_connective(p, gamma, d, Connective::Or, "a disjunction");
                Formula l = run(p.kid(1), gamma);
                Formula r = run(p.kid(2), gamma);
                expect_connective(p, gamma, l, Connective::Imp, "an implication");
                expect_connective(p, gamma, r, Connective::Imp, "an implication");
                expect_alpha(p, gamma, l.as_imp().lhs, d.as_or().lhs);
                expect_alpha(p, gamma, r.as_imp().lhs, d.as_or().rhs);
                expect_alpha(p, gamma, r.as_imp().rhs, l.as_imp().rhs);
                return l.as_imp().rhs;
            }
            case Rule::ExIntro: {
                const Formula& e = p.formula();
                expect_connective(p, gamma, e, Connective::Exists, "an existential annotation");
                Formula a = run(p.kid(0), gamma);
                expect_alpha(p, gamma, a, instantiate(e, p.term()));
                return e;
            }
            case Rule::ExElim: {
                Formula e = run(p.kid(0), gamma);
                expect_connective(p, gamma, e, Connective::Exists, "an existential formula");
                Formula u = run(p.kid(1), gamma);
                expect_connective(p, gamma, u, Connective::Forall, "a universal formula");
                const Formula& body = u.body();
                expect_connective(p, gamma, body, Connective::Imp, "a universal implication");
                const Formula& b = body.as_imp().rhs;
                if (occurs_free(u.bound_var(), b))
                    fail(p, gamma, "variable " + u.bound_var().str() + " escapes into " + to_string(b));
                expect_alpha(p, gamma, Formula::forall(u.bound_var(), body.as_imp().lhs),
                             Formula::forall(e.bound_var(), e.body()));
                return b;
            }
            case Rule::Weak: {
                Context src = p.incl().source(gamma);
                return run(p.kid(0), src);
            }
            case Rule::Efq: {
                Formula b = run(p.kid(0), gamma);
                expect_alpha(p, gamma, b, Formula::bot());
                return p.formula();
            }
            case Rule::Pi1:
            case Rule::Pi2: {
                const Formula& h = p.formula();
                expect_connective(p, gamma, h, Connective::Imp, "an implication annotation");
                expect_bot_under(p, gamma, h);
                return p.rule() == Rule::Pi1 ? h.as_imp().lhs : Formula::neg(h.as_imp().rhs);
            }
            case Rule::Drinker:
                try {
                    check_drinker_premise(p.var(), p.formula(), gamma);
                } catch (const ProofError& e) {
                    fail(p, gamma, e.what());
                }
                expect_bot_under(p, gamma, p.formula());
                return Formula::bot();
            case Rule::HenkinEx:
                try {
                    check_henkin_ex_premise(p.var(), p.formula(), gamma);
                } catch (const ProofError& e) {
                    fail(p, gamma, e.what());
                }
                expect_bot_under(p, gamma, p.formula());
                return Formula::bot();
        }
        fail(p, gamma, "unknown rule");
    }

    void expect_bot_under(const Proof& p, Context& gamma, const Formula& h) {
        gamma.push_back(h);
        std::optional<Formula> b;
        try {
            b = run(p.kid(0), gamma);
        } catch (...) {
            gamma.pop_back();
            throw;
        }
        gamma.pop_back();
        expect_alpha(p, gamma, *b, Formula::bot());
    }

    bool derived_;
    std::unordered_map<const Proof::Node*, std::vector<std::pair<Context, Formula>>> memo_;
};

}  // namespace

void check_drinker_premise(const VarId& y, const Formula& h, const Context& gamma) {
    if (!h.is(Connective::Imp) || !h.as_imp().rhs.is(Connective::Forall))
        throw ProofError("not a Henkin axiom A(y) -> forall x. A(x): " + to_string(h));
    const Formula& all = h.as_imp().rhs;
    if (!alpha_equal(h.as_imp().lhs, instantiate(all, Term::var(y))))
        throw ProofError("antecedent is not the instance at " + y.str() + ": " + to_string(h));
    if (occurs_free(y, all) || occurs_free(y, gamma))
        throw ProofError("witness " + y.str() + " is not fresh");
}

void check_henkin_ex_premise(const VarId& x, const Formula& h, const Context& gamma) {
    if (!h.is(Connective::Imp) || !h.as_imp().lhs.is(Connective::Exists))
        throw ProofError("not a Henkin axiom (exists y. A(y)) -> A(x): " + to_string(h));
    const Formula& ex = h.as_imp().lhs;
    if (!alpha_equal(h.as_imp().rhs, instantiate(ex, Term::var(x))))
        throw ProofError("consequent is not the instance at " + x.str() + ": " + to_string(h));
    if (occurs_free(x, ex) || occurs_free(x, gamma))
        throw ProofError("witness " + x.str() + " is not fresh");
}

Formula check(const Proof& p, const Context& gamma) {
    Context g = gamma;
    return Checker(false).run(p, g);
}

Formula check_derived(const Proof& p, const Context& gamma) {
    Context g = gamma;
    return Checker(true).run(p, g);
}

}  // namespace henkin
