#include "henkin/semantics.hpp"

#include <variant>

#include "henkin/checker.hpp"
#include "henkin/elaborate.hpp"
#include "henkin/text.hpp"

namespace henkin {

struct SemValue::Rep {
    Kind kind;
    std::any payload;
    ImpFn imp;
    ForallFn all;
    std::vector<SemValue> parts;  // And: two; Or, Exists: one
    int tag = 0;
    Individual witness;
};

namespace {

std::shared_ptr<SemValue::Rep> rep(SemValue::Kind k) {
    auto r = std::make_shared<SemValue::Rep>();
    r->kind = k;
    return r;
}

const char* kind_name(SemValue::Kind k) {
    switch (k) {
        case SemValue::Kind::Atom: return "atom";
        case SemValue::Kind::Bot: return "bottom";
        case SemValue::Kind::Imp: return "implication";
        case SemValue::Kind::Forall: return "universal";
        case SemValue::Kind::And: return "conjunction";
        case SemValue::Kind::Or: return "disjunction";
        case SemValue::Kind::Exists: return "existential";
    }
    return "?";
}

}  // namespace

SemValue SemValue::atom(std::any payload) {
    auto r = rep(Kind::Atom);
    r->payload = std::move(payload);
    return SemValue(std::move(r));
}

SemValue SemValue::bot(std::any payload) {
    auto r = rep(Kind::Bot);
    r->payload = std::move(payload);
    return SemValue(std::move(r));
}

SemValue SemValue::imp(ImpFn f) {
    auto r = rep(Kind::Imp);
    r->imp = std::move(f);
    return SemValue(std::move(r));
}

SemValue SemValue::forall(ForallFn f) {
    auto r = rep(Kind::Forall);
    r->all = std::move(f);
    return SemValue(std::move(r));
}

SemValue SemValue::pair(SemValue a, SemValue b) {
    auto r = rep(Kind::And);
    r->parts = {std::move(a), std::move(b)};
    return SemValue(std::move(r));
}

SemValue SemValue::inj(int tag, SemValue v) {
    if (tag != 1 && tag != 2) throw SemanticError("injection tag must be 1 or 2");
    auto r = rep(Kind::Or);
    r->tag = tag;
    r->parts = {std::move(v)};
    return SemValue(std::move(r));
}

SemValue SemValue::ex(Individual witness, SemValue v) {
    auto r = rep(Kind::Exists);
    r->witness = std::move(witness);
    r->parts = {std::move(v)};
    return SemValue(std::move(r));
}

SemValue::Kind SemValue::kind() const { return rep_->kind; }

namespace {

void expect_kind(SemValue::Kind got, SemValue::Kind want) {
    if (got != want)
        throw SemanticError(std::string("expected ") + kind_name(want) + " evidence, got " + kind_name(got));
}

}  // namespace

const std::any& SemValue::payload() const {
    if (rep_->kind != Kind::Atom && rep_->kind != Kind::Bot)
        throw SemanticError(std::string("no payload on ") + kind_name(rep_->kind) + " evidence");
    return rep_->payload;
}

SemValue SemValue::apply(const SemValue& arg) const {
    expect_kind(rep_->kind, Kind::Imp);
    return rep_->imp(arg);
}

SemValue SemValue::at(const Individual& d) const {
    expect_kind(rep_->kind, Kind::Forall);
    return rep_->all(d);
}

const SemValue& SemValue::fst() const {
    expect_kind(rep_->kind, Kind::And);
    return rep_->parts[0];
}

const SemValue& SemValue::snd() const {
    expect_kind(rep_->kind, Kind::And);
    return rep_->parts[1];
}

int SemValue::tag() const {
    expect_kind(rep_->kind, Kind::Or);
    return rep_->tag;
}

const SemValue& SemValue::inner() const {
    if (rep_->kind != Kind::Or && rep_->kind != Kind::Exists)
        throw SemanticError(std::string("no inner value on ") + kind_name(rep_->kind) + " evidence");
    return rep_->parts[0];
}

const Individual& SemValue::witness() const {
    expect_kind(rep_->kind, Kind::Exists);
    return rep_->witness;
}

// ---------------------------------------------------------------------------

Individual Assignment::lookup(const VarId& x) const {
    if (auto it = map_.find(x); it != map_.end()) return it->second;
    if (fallback_) return fallback_(x);
    throw SemanticError("unbound variable " + x.str());
}

Assignment Assignment::with(const VarId& x, Individual d) const {
    Assignment r = *this;
    r.map_[x] = std::move(d);
    return r;
}

Individual eval_term(const Term& t, const Assignment& sigma, const ModelBundle& m) {
    if (t.is_var()) return sigma.lookup(t.as_var());
    const auto& app = t.as_app();
    std::vector<Individual> args;
    args.reserve(app.args.size());
    for (const auto& a : app.args) args.push_back(eval_term(a, sigma, m));
    if (!m.fun_interp) throw SemanticError("model has no function interpretation");
    return m.fun_interp(app.fun, args);
}

bool shape_check(const SemValue& v, const Formula& a) {
    using K = SemValue::Kind;
    switch (a.connective()) {
        case Connective::Atom: return v.kind() == K::Atom;
        case Connective::Bot: return v.kind() == K::Bot;
        case Connective::Imp: return v.kind() == K::Imp;
        case Connective::Forall: return v.kind() == K::Forall;
        case Connective::And:
            return v.kind() == K::And && shape_check(v.fst(), a.as_and().lhs) &&
                   shape_check(v.snd(), a.as_and().rhs);
        case Connective::Or:
            if (v.kind() != K::Or) return false;
            return shape_check(v.inner(), v.tag() == 1 ? a.as_or().lhs : a.as_or().rhs);
        case Connective::Exists:
            return v.kind() == K::Exists;
    }
    return false;
}

// ---------------------------------------------------------------------------

namespace {

class Evaluator {
public:
    explicit Evaluator(std::shared_ptr<const ModelBundle> m) : m_(std::move(m)) {}

    SemValue run(const Proof& p, const Context& gamma, const std::vector<SemValue>& env,
                 const Assignment& sigma) const {
        switch (p.rule()) {
            case Rule::Ax:
                if (p.index() >= env.size()) throw SemanticError("environment too short");
                return env[env.size() - 1 - p.index()];
            case Rule::Dn: {
                Formula nna = check(p.kid(0), gamma);
                const Formula& a = nna.as_imp().lhs.as_imp().lhs;
                if (!m_->classic) throw SemanticError("model has no classical principle");
                return m_->classic(a, sigma).apply(run(p.kid(0), gamma, env, sigma));
            }
            case Rule::AppImp:
                return run(p.kid(0), gamma, env, sigma).apply(run(p.kid(1), gamma, env, sigma));
            case Rule::AppForall:
                return run(p.kid(0), gamma, env, sigma).at(eval_term(p.term(), sigma, *m_));
            case Rule::AbsImp: {
                Context g2 = gamma;
                g2.push_back(p.formula());
                Proof body = p.kid(0);
                Evaluator self = *this;
                return SemValue::imp([self, body, g2, env, sigma](const SemValue& v) {
                    std::vector<SemValue> e2 = env;
                    e2.push_back(v);
                    return self.run(body, g2, e2, sigma);
                });
            }
            case Rule::AbsForall: {
                Proof body = p.kid(0);
                VarId y = p.var();
                Evaluator self = *this;
                return SemValue::forall([self, body, gamma, env, sigma, y](const Individual& d) {
                    return self.run(body, gamma, env, sigma.with(y, d));
                });
            }
            case Rule::Pair:
                return SemValue::pair(run(p.kid(0), gamma, env, sigma), run(p.kid(1), gamma, env, sigma));
            case Rule::Proj1:
                return run(p.kid(0), gamma, env, sigma).fst();
            case Rule::Proj2:
                return run(p.kid(0), gamma, env, sigma).snd();
            case Rule::Inj1:
                return SemValue::inj(1, run(p.kid(0), gamma, env, sigma));
            case Rule::Inj2:
                return SemValue::inj(2, run(p.kid(0), gamma, env, sigma));
            case Rule::Case: {
                SemValue d = run(p.kid(0), gamma, env, sigma);
                const Proof& branch = d.tag() == 1 ? p.kid(1) : p.kid(2);
                return run(branch, gamma, env, sigma).apply(d.inner());
            }
            case Rule::ExIntro:
                return SemValue::ex(eval_term(p.term(), sigma, *m_), run(p.kid(0), gamma, env, sigma));
            case Rule::ExElim: {
                SemValue e = run(p.kid(0), gamma, env, sigma);
                return run(p.kid(1), gamma, env, sigma).at(e.witness()).apply(e.inner());
            }
            default:
                throw SemanticError(std::string("soundness_eval expects primitive rules, got ") +
                                    rule_name(p.rule()));
        }
    }

private:
    std::shared_ptr<const ModelBundle> m_;
};

}  // namespace

SemValue soundness_eval(const Proof& p, const Context& gamma, const std::vector<SemValue>& env,
                        const Assignment& sigma, const ModelBundle& m) {
    if (env.size() != gamma.size()) throw SemanticError("environment does not match the context");
    return Evaluator(std::make_shared<const ModelBundle>(m)).run(p, gamma, env, sigma);
}

// ---------------------------------------------------------------------------

namespace {

Formula X() { return Formula::atom("X"); }
Formula Y() { return Formula::atom("Y"); }

SemValue curry2(int pick) {
    return SemValue::imp([pick](const SemValue& x) {
        return SemValue::imp([pick, x](const SemValue& y) { return pick == 1 ? x : y; });
    });
}

}  // namespace

std::vector<std::string> canonical_witness_names() { return {"I", "K", "K2", "W1", "W2"}; }

ValidityWitness canonical_witness(const std::string& name) {
    ValidityWitness w;
    w.name = name;
    if (name == "I") {
        w.formula = Formula::imp(X(), X());
        w.run = [](const ModelBundle&, const Assignment&) {
            return SemValue::imp([](const SemValue& x) { return x; });
        };
        return w;
    }
    int pick = 0;
    if (name == "K") {
        w.formula = Formula::imp(X(), Formula::imp(Y(), X()));
        pick = 1;
    } else if (name == "K2") {
        w.formula = Formula::imp(X(), Formula::imp(Y(), Y()));
        pick = 2;
    } else if (name == "W1" || name == "W2") {
        w.formula = Formula::imp(X(), Formula::imp(X(), X()));
        pick = name == "W1" ? 1 : 2;
    } else {
        throw SemanticError("unknown witness " + name);
    }
    w.run = [pick](const ModelBundle&, const Assignment&) { return curry2(pick); };
    return w;
}

ValidityWitness validity_from_proof(const Theory& theory, const Formula& a, const Proof& p) {
    const Context& gamma = theory.members();
    Formula got = check_derived(p, gamma);
    if (!alpha_equal(got, a))
        throw ProofError("proof concludes " + to_string(got) + ", expected " + to_string(a));
    Proof prim = elaborate(p, gamma);
    ValidityWitness w;
    w.name = "proof";
    w.formula = a;
    w.run = [prim, gamma](const ModelBundle& m, const Assignment& sigma) {
        std::vector<SemValue> env;
        env.reserve(gamma.size());
        for (std::size_t i = 0; i < gamma.size(); ++i) env.push_back(m.theory_truth(i, sigma));
        return soundness_eval(prim, gamma, env, sigma, m);
    };
    return w;
}

}  // namespace henkin
