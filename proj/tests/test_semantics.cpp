#include <gtest/gtest.h>

#include <functional>

#include "corpus.hpp"
#include "generators.hpp"
#include "henkin/checker.hpp"
#include "henkin/elaborate.hpp"
#include "henkin/semantics.hpp"
#include "henkin/text.hpp"

using namespace henkin;

namespace {

// A two-element classical model with an independent truth-table oracle.
// Predicates are decided by a seeded hash of name and arguments.
struct BoolModel {
    std::uint64_t seed;

    static std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

    bool pred(const std::string& name, const std::vector<int>& args) const {
        std::uint64_t h = mix(seed, std::hash<std::string>{}(name));
        for (int a : args) h = mix(h, static_cast<std::uint64_t>(a) + 1);
        h = mix(h, 0x51);
        return (h >> 17) & 1;
    }

    static int fun(const std::string& name, const std::vector<int>& args) {
        int s = static_cast<int>(name.size());
        for (int a : args) s += a;
        return s % 2;
    }

    static int value(const Term& t, const Assignment& sigma) {
        if (t.is_var()) return std::any_cast<int>(sigma.lookup(t.as_var()));
        std::vector<int> args;
        for (const auto& a : t.as_app().args) args.push_back(value(a, sigma));
        return fun(t.as_app().fun, args);
    }

    bool holds(const Formula& a, const Assignment& sigma) const {
        switch (a.connective()) {
            case Connective::Atom: {
                std::vector<int> args;
                for (const auto& t : a.as_atom().args) args.push_back(value(t, sigma));
                return pred(a.as_atom().pred, args);
            }
            case Connective::Bot: return false;
            case Connective::Imp: return !holds(a.as_imp().lhs, sigma) || holds(a.as_imp().rhs, sigma);
            case Connective::And: return holds(a.as_and().lhs, sigma) && holds(a.as_and().rhs, sigma);
            case Connective::Or: return holds(a.as_or().lhs, sigma) || holds(a.as_or().rhs, sigma);
            case Connective::Forall:
                return holds(a.body(), sigma.with(a.bound_var(), 0)) && holds(a.body(), sigma.with(a.bound_var(), 1));
            case Connective::Exists:
                return holds(a.body(), sigma.with(a.bound_var(), 0)) || holds(a.body(), sigma.with(a.bound_var(), 1));
        }
        return false;
    }

    // Evidence for a true formula.
    SemValue evidence(const Formula& a, const Assignment& sigma) const {
        if (!holds(a, sigma)) throw SemanticError("no evidence for a false formula: " + to_string(a));
        switch (a.connective()) {
            case Connective::Atom: return SemValue::atom(std::string("true"));
            case Connective::Bot: break;
            case Connective::Imp: {
                BoolModel self = *this;
                Formula rhs = a.as_imp().rhs;
                return SemValue::imp([self, rhs, sigma](const SemValue&) { return self.evidence(rhs, sigma); });
            }
            case Connective::And:
                return SemValue::pair(evidence(a.as_and().lhs, sigma), evidence(a.as_and().rhs, sigma));
            case Connective::Or:
                if (holds(a.as_or().lhs, sigma)) return SemValue::inj(1, evidence(a.as_or().lhs, sigma));
                return SemValue::inj(2, evidence(a.as_or().rhs, sigma));
            case Connective::Forall: {
                BoolModel self = *this;
                Formula body = a.body();
                VarId x = a.bound_var();
                return SemValue::forall(
                    [self, body, x, sigma](const Individual& d) { return self.evidence(body, sigma.with(x, d)); });
            }
            case Connective::Exists: {
                int d = holds(a.body(), sigma.with(a.bound_var(), 0)) ? 0 : 1;
                return SemValue::ex(d, evidence(a.body(), sigma.with(a.bound_var(), d)));
            }
        }
        throw SemanticError("unreachable");
    }

    // Deep check: every probe that can be made with true arguments lands on
    // evidence of a true formula with the right shape.
    bool valid(const SemValue& v, const Formula& a, const Assignment& sigma) const {
        if (!holds(a, sigma)) return false;
        switch (a.connective()) {
            case Connective::Atom: return v.kind() == SemValue::Kind::Atom;
            case Connective::Bot: return false;
            case Connective::Imp:
                if (v.kind() != SemValue::Kind::Imp) return false;
                if (!holds(a.as_imp().lhs, sigma)) return true;
                return valid(v.apply(evidence(a.as_imp().lhs, sigma)), a.as_imp().rhs, sigma);
            case Connective::And:
                return v.kind() == SemValue::Kind::And && valid(v.fst(), a.as_and().lhs, sigma) &&
                       valid(v.snd(), a.as_and().rhs, sigma);
            case Connective::Or:
                if (v.kind() != SemValue::Kind::Or) return false;
                return valid(v.inner(), v.tag() == 1 ? a.as_or().lhs : a.as_or().rhs, sigma);
            case Connective::Forall:
                return v.kind() == SemValue::Kind::Forall &&
                       valid(v.at(0), a.body(), sigma.with(a.bound_var(), 0)) &&
                       valid(v.at(1), a.body(), sigma.with(a.bound_var(), 1));
            case Connective::Exists: {
                if (v.kind() != SemValue::Kind::Exists) return false;
                int d = std::any_cast<int>(v.witness());
                return valid(v.inner(), a.body(), sigma.with(a.bound_var(), d));
            }
        }
        return false;
    }

    ModelBundle bundle(const Theory& t) const {
        ModelBundle m;
        m.name = "bool";
        m.fun_interp = [](const std::string& f, const std::vector<Individual>& args) -> Individual {
            std::vector<int> xs;
            for (const auto& a : args) xs.push_back(std::any_cast<int>(a));
            return fun(f, xs);
        };
        BoolModel self = *this;
        m.classic = [self](const Formula& a, const Assignment& sigma) {
            return SemValue::imp([self, a, sigma](const SemValue&) { return self.evidence(a, sigma); });
        };
        m.theory_truth = [self, t](std::size_t i, const Assignment& sigma) { return self.evidence(t.member(i), sigma); };
        return m;
    }
};

Assignment zero_assignment() {
    return Assignment([](const VarId&) -> Individual { return 0; });
}

bool all_hold(const BoolModel& m, const Context& g, const Assignment& sigma) {
    for (const auto& a : g)
        if (!m.holds(a, sigma)) return false;
    return true;
}

std::vector<SemValue> env_for(const BoolModel& m, const Context& g, const Assignment& sigma) {
    std::vector<SemValue> env;
    for (const auto& a : g) env.push_back(m.evidence(a, sigma));
    return env;
}

}  // namespace

TEST(Soundness, CorpusInTwoElementModels) {
    for (const auto& e : support::load_corpus()) {
        Context g = e.theory.members();
        Proof p = elaborate(e.proof, g);
        int models = 0;
        for (std::uint64_t seed = 0; seed < 64; ++seed) {
            BoolModel m{seed};
            Assignment sigma = zero_assignment();
            if (!all_hold(m, g, sigma)) continue;
            ++models;
            SemValue v = soundness_eval(p, g, env_for(m, g, sigma), sigma, m.bundle(e.theory));
            EXPECT_TRUE(m.holds(e.formula, sigma)) << e.name << " seed " << seed;
            EXPECT_TRUE(shape_check(v, e.formula)) << e.name;
            EXPECT_TRUE(m.valid(v, e.formula, sigma)) << e.name << " seed " << seed;
        }
        EXPECT_GT(models, 0) << e.name;
    }
}

TEST(Soundness, RandomProofsInTwoElementModels) {
    support::Rng rng(301);
    support::ProofGen gen(rng);
    int evaluated = 0;
    for (int i = 0; i < 600; ++i) {
        Context g = support::random_context(rng, i % 3);
        support::Generated r = gen.forward(g, 7);
        BoolModel m{rng()};
        Assignment sigma = zero_assignment();
        if (!all_hold(m, g, sigma)) continue;
        ++evaluated;
        SemValue v = soundness_eval(r.proof, g, env_for(m, g, sigma), sigma, m.bundle(Theory()));
        ASSERT_TRUE(m.valid(v, r.formula, sigma)) << to_string(r.proof);
    }
    EXPECT_GT(evaluated, 100);
}

TEST(Soundness, RejectsDerivedRules) {
    BoolModel m{1};
    Context g{Formula::bot()};
    EXPECT_THROW(soundness_eval(parse_proof("(efq X (ax 0))"), g, {SemValue::bot(0)}, zero_assignment(),
                                m.bundle(Theory())),
                 SemanticError);
}

TEST(Soundness, ExplodingModelCarriesBotEvidence) {
    // A model where _|_ has a payload: ex falso still evaluates.
    ModelBundle m;
    m.name = "exploding";
    m.fun_interp = [](const std::string&, const std::vector<Individual>&) -> Individual { return 0; };
    m.classic = [](const Formula&, const Assignment&) {
        return SemValue::imp([](const SemValue& nn) {
            return nn.apply(SemValue::imp([](const SemValue&) { return SemValue::bot(std::string("boom")); }));
        });
    };
    // ~~X -> X applied to the constant refuter returns the bot payload.
    Proof p = parse_proof("(lam {~~X} (dn (ax 0)))");
    SemValue v = soundness_eval(p, {}, {}, zero_assignment(), m);
    SemValue out = v.apply(SemValue::imp([](const SemValue& f) { return f.apply(SemValue::atom(0)); }));
    EXPECT_EQ(out.kind(), SemValue::Kind::Bot);
    EXPECT_EQ(out.payload_as<std::string>(), "boom");
}

TEST(ShapeCheck, DetectsMismatches) {
    EXPECT_TRUE(shape_check(SemValue::pair(SemValue::atom(0), SemValue::atom(1)), parse_formula("X /\\ Y")));
    EXPECT_FALSE(shape_check(SemValue::atom(0), parse_formula("X /\\ Y")));
    EXPECT_FALSE(shape_check(SemValue::inj(1, SemValue::atom(0)), parse_formula("(X -> Y) \\/ Z")));
    EXPECT_TRUE(shape_check(SemValue::ex(0, SemValue::atom(0)), parse_formula("exists x. P(x)")));
}

TEST(Witness, CanonicalProjections) {
    BoolModel bm{7};
    ModelBundle m = bm.bundle(Theory());
    SemValue x = SemValue::atom(std::string("x"));
    SemValue y = SemValue::atom(std::string("y"));
    auto two = [&](const std::string& name) {
        return canonical_witness(name).run(m, zero_assignment()).apply(x).apply(y).payload_as<std::string>();
    };
    EXPECT_EQ(two("K"), "x");
    EXPECT_EQ(two("K2"), "y");
    EXPECT_EQ(two("W1"), "x");
    EXPECT_EQ(two("W2"), "y");
    EXPECT_EQ(canonical_witness("I").run(m, zero_assignment()).apply(x).payload_as<std::string>(), "x");
    EXPECT_EQ(canonical_witness("W1").formula, canonical_witness("W2").formula);
    EXPECT_THROW(canonical_witness("S"), std::exception);
}

TEST(Witness, FromProofAgreesWithCanonical) {
    BoolModel bm{7};
    ModelBundle m = bm.bundle(Theory());
    SemValue x = SemValue::atom(std::string("x"));
    SemValue y = SemValue::atom(std::string("y"));
    Formula k = parse_formula("X -> Y -> X");
    ValidityWitness w = validity_from_proof(Theory(), k, parse_proof("(lam {X} (lam {Y} (ax 1)))"));
    EXPECT_EQ(w.formula, k);
    EXPECT_EQ(w.run(m, zero_assignment()).apply(x).apply(y).payload_as<std::string>(), "x");
    EXPECT_THROW(validity_from_proof(Theory(), k, parse_proof("(lam {X} (lam {Y} (ax 0)))")), std::exception);
}
