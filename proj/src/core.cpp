#include "henkin/core.hpp"

#include "henkin/checker.hpp"
#include "henkin/elaborate.hpp"
#include "henkin/text.hpp"

namespace henkin {

Term as_term(const Individual& d) {
    if (const Term* t = std::any_cast<Term>(&d)) return *t;
    throw SemanticError("individual of the syntactic model is not a term");
}

Substitution to_substitution(const Assignment& sigma) {
    Substitution s;
    for (const auto& [x, d] : sigma.bindings()) s = s.with(x, as_term(d));
    return s;
}

Assignment identity_assignment() {
    return Assignment([](const VarId& x) -> Individual { return Term::var(x); });
}

namespace {

void expect_formula(const Member& q, const Formula& want, const char* where) {
    if (!alpha_equal(q.formula, want))
        throw ExtractionError(std::string(where) + ": evidence for " + to_string(q.formula) + " used at " +
                              to_string(want));
}

void expect_shape(const SemValue& m, const Formula& a) {
    if (!shape_check(m, a)) throw ExtractionError("truth value does not have the shape of " + to_string(a));
}

}  // namespace

Member CoreEngine::reify(const Formula& a, const Substitution& sigma, const SemValue& m) const {
    expect_shape(m, a);
    switch (a.connective()) {
        case Connective::Atom: {
            const Member& q = m.payload_as<Member>();
            expect_formula(q, subst_formula(a, sigma), "reify");
            return q;
        }
        case Connective::Bot:
            return run_->bot(m.payload_as<BotInT>());
        case Connective::Imp: {
            const auto& [lhs, rhs] = a.as_imp();
            return run_->ax_imp(subst_formula(a, sigma), kont_imp(lhs, rhs, sigma, m));
        }
        case Connective::Forall: {
            Member ax = run_->ax_forall(subst_formula(a, sigma));
            Term w = Term::var(ax.f.witness());
            const auto& [x, body] = a.as_forall();
            return run_->app_imp(ax, reify(body, sigma.with(x, w), m.at(w)));
        }
        case Connective::And: {
            const auto& [lhs, rhs] = a.as_and();
            return run_->pair(reify(lhs, sigma, m.fst()), reify(rhs, sigma, m.snd()));
        }
        case Connective::Or:
        case Connective::Exists:
            break;
    }
    throw ExtractionError("the core engine does not handle " + to_string(a) + "; use the kont engine");
}

SemValue CoreEngine::reflect(const Formula& a, const Substitution& sigma, const Member& q) const {
    switch (a.connective()) {
        case Connective::Atom:
            return SemValue::atom(q);
        case Connective::Bot:
            return SemValue::bot(run_->flush(q));
        case Connective::Imp: {
            CoreEngine self = *this;
            Formula lhs = a.as_imp().lhs;
            Formula rhs = a.as_imp().rhs;
            return SemValue::imp([self, lhs, rhs, sigma, q](const SemValue& m) {
                return self.reflect(rhs, sigma, self.run_->app_imp(q, self.reify(lhs, sigma, m)));
            });
        }
        case Connective::Forall: {
            CoreEngine self = *this;
            VarId x = a.bound_var();
            Formula body = a.body();
            return SemValue::forall([self, x, body, sigma, q](const Individual& d) {
                Term t = as_term(d);
                return self.reflect(body, sigma.with(x, t), self.run_->app_forall(q, t));
            });
        }
        case Connective::And: {
            const auto& [lhs, rhs] = a.as_and();
            return SemValue::pair(reflect(lhs, sigma, run_->proj(1, q)), reflect(rhs, sigma, run_->proj(2, q)));
        }
        case Connective::Or:
        case Connective::Exists:
            break;
    }
    throw ExtractionError("the core engine does not handle " + to_string(a) + "; use the kont engine");
}

RelConsK CoreEngine::kont_imp(const Formula& a, const Formula& b, const Substitution& sigma,
                              const SemValue& m) const {
    CoreEngine self = *this;
    return [self, a, b, sigma, m](const Refutation& r) {
        Extraction& run = *self.run_;
        SemValue ma = self.reflect(a, sigma, run.pi1(r));
        return run.flush(run.app_imp(run.pi2(r), self.reify(b, sigma, m.apply(ma))));
    };
}

SemValue CoreEngine::classic0(const Formula& a, const Substitution& sigma) const {
    CoreEngine self = *this;
    Formula nna = Formula::neg(Formula::neg(a));
    return SemValue::imp([self, a, nna, sigma](const SemValue& m) {
        return self.reflect(a, sigma, self.run_->dn(self.reify(nna, sigma, m)));
    });
}

SemValue CoreEngine::init0(std::size_t i) const {
    return reflect(run_->theory().member(i), Substitution(), run_->member_axiom(i));
}

ModelBundle CoreEngine::m0_bundle() const {
    CoreEngine self = *this;
    ModelBundle m;
    m.name = "M0";
    m.fun_interp = [](const std::string& f, const std::vector<Individual>& args) -> Individual {
        std::vector<Term> ts;
        ts.reserve(args.size());
        for (const auto& d : args) ts.push_back(as_term(d));
        return Term::app(f, std::move(ts));
    };
    m.classic = [self](const Formula& a, const Assignment& sigma) {
        return self.classic0(a, to_substitution(sigma));
    };
    m.theory_truth = [self](std::size_t i, const Assignment& sigma) {
        if (!to_substitution(sigma).empty())
            throw ExtractionError("theory truth in M0 is only available at the identity assignment");
        return self.init0(i);
    };
    return m;
}

void check_extraction_input(const Theory& theory, const Formula& a0, const ValidityWitness& psi) {
    if (!only_user_vars(a0)) throw ExtractionError("A0 may only use user variables");
    for (const auto& b : theory.members())
        if (!only_user_vars(b)) throw ExtractionError("theory members may only use user variables");
    if (!alpha_equal(psi.formula, a0))
        throw ExtractionError("witness " + psi.name + " is for " + to_string(psi.formula) + ", not " +
                              to_string(a0));
}

Extracted finish_extraction(const Extraction& run, const BotInT& b) {
    Extracted r;
    r.members = b.g;
    r.gamma = run.base_context(b.g);
    r.formula = run.a0();
    r.proof = run.dnabs(b);
    r.trace = run.trace();
    Formula got = check_derived(r.proof, r.gamma);
    if (!alpha_equal(got, run.a0()))
        throw ExtractionError("extracted proof concludes " + to_string(got) + ", expected " + to_string(run.a0()));
    try {
        r.primitive = elaborate(r.proof, r.gamma);
    } catch (const ProofError& e) {
        throw ExtractionError(std::string("elaboration failed: ") + e.what());
    }
    got = check(r.primitive, r.gamma);
    if (!alpha_equal(got, run.a0()))
        throw ExtractionError("elaborated proof concludes " + to_string(got));
    return r;
}

namespace {

bool in_core_fragment(const Formula& a) {
    switch (a.connective()) {
        case Connective::Atom:
        case Connective::Bot: return true;
        case Connective::Imp: return in_core_fragment(a.as_imp().lhs) && in_core_fragment(a.as_imp().rhs);
        case Connective::And: return in_core_fragment(a.as_and().lhs) && in_core_fragment(a.as_and().rhs);
        case Connective::Forall: return in_core_fragment(a.body());
        default: return false;
    }
}

}  // namespace

Extracted complete(const Theory& theory, const Formula& a0, const ValidityWitness& psi,
                   const ExtractOptions& opts) {
    check_extraction_input(theory, a0, psi);
    bool core = in_core_fragment(a0);
    for (const auto& b : theory.members()) core = core && in_core_fragment(b);
    if (!core) throw ExtractionError("the core engine handles _|_, ->, forall and /\\ only; use the kont engine");
    Extraction run(theory, a0, Discipline::TwoClass, opts.trace);
    CoreEngine engine(run);
    ModelBundle m0 = engine.m0_bundle();
    SemValue v = psi.run(m0, identity_assignment());
    Member q = engine.reify(a0, Substitution(), v);
    BotInT b = run.flush(run.app_imp(run.ax0(), q));
    return finish_extraction(run, b);
}

}  // namespace henkin
