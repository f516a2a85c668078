#include <gtest/gtest.h>

#include <chrono>

#include "corpus.hpp"
#include "henkin/checker.hpp"
#include "henkin/core.hpp"
#include "henkin/pretty.hpp"
#include "henkin/text.hpp"

using namespace henkin;

namespace {

Formula F(const char* s) { return parse_formula(s); }

// Rule skeleton with weakening nodes skipped.
std::string skeleton(const Proof& p) {
    if (p.rule() == Rule::Weak) return skeleton(p.kid(0));
    std::string s = rule_name(p.rule());
    if (p.kids().empty()) return s;
    s += "(";
    for (std::size_t i = 0; i < p.kids().size(); ++i) s += (i ? "," : "") + skeleton(p.kid(i));
    return s + ")";
}

Extracted extract_witness(const std::string& name, bool trace = false) {
    ValidityWitness w = canonical_witness(name);
    return complete(Theory(), w.formula, w, {.trace = trace});
}

void expect_roundtrip(const support::CorpusEntry& e, const Extracted& r) {
    EXPECT_TRUE(alpha_equal(r.formula, e.formula)) << e.name;
    ASSERT_EQ(r.gamma.size(), r.members.size()) << e.name;
    for (std::size_t i = 0; i < r.members.size(); ++i) {
        ASSERT_LT(r.members[i], e.theory.size()) << e.name;
        EXPECT_EQ(r.gamma[i], e.theory.member(r.members[i])) << e.name;
    }
    EXPECT_TRUE(is_primitive(r.primitive)) << e.name;
    EXPECT_TRUE(alpha_equal(check(r.primitive, r.gamma), e.formula)) << e.name;
    EXPECT_TRUE(alpha_equal(check_derived(r.proof, r.gamma), e.formula)) << e.name;
}

}  // namespace

TEST(Golden, KTreeIsByteEqual) {
    auto t0 = std::chrono::steady_clock::now();
    Extracted r = extract_witness("K");
    std::string tree = pretty(r.proof, r.gamma);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    EXPECT_EQ(tree, support::golden("k_tree.txt"));
    EXPECT_LT(secs, 1.0);
}

TEST(Golden, K2TreeIsByteEqual) {
    Extracted r = extract_witness("K2");
    EXPECT_EQ(pretty(r.proof, r.gamma), support::golden("k2_tree.txt"));
}

TEST(Golden, KMatchesTheHandDerivedTerm) {
    // p0 refutes ~A0 with A0; p1 = app(pi2 p0, ax); result app(pi2 p1, pi1 p0).
    const std::string p0 = "app(ax,ax)";
    const std::string p1 = "app(pi2(" + p0 + "),ax)";
    EXPECT_EQ(skeleton(extract_witness("K").proof), "dn(lam(app(pi2(" + p1 + "),pi1(" + p0 + "))))");
}

TEST(Golden, K2SharesTheInnerRefutation) {
    // Both branches reuse p1': app(pi2 p1', pi1 p1').
    const std::string p0 = "app(ax,ax)";
    const std::string p1 = "app(pi2(" + p0 + "),ax)";
    Extracted r = extract_witness("K2");
    EXPECT_EQ(skeleton(r.proof), "dn(lam(app(pi2(" + p1 + "),pi1(" + p1 + "))))");
    const Proof& body = r.proof.kid(0).kid(0);
    EXPECT_EQ(to_string(body.kid(0).kid(0)), to_string(body.kid(1).kid(0)));
}

TEST(Witnesses, W1AndW2Differ) {
    Extracted w1 = extract_witness("W1");
    Extracted w2 = extract_witness("W2");
    EXPECT_EQ(w1.formula, w2.formula);
    EXPECT_NE(to_string(w1.proof), to_string(w2.proof));
    EXPECT_NE(to_string(w1.primitive), to_string(w2.primitive));
    EXPECT_EQ(check(w1.primitive, {}), F("X -> X -> X"));
    EXPECT_EQ(check(w2.primitive, {}), F("X -> X -> X"));
}

TEST(Witnesses, EveryCanonicalWitnessExtracts) {
    for (const auto& name : canonical_witness_names()) {
        Extracted r = extract_witness(name);
        EXPECT_TRUE(r.gamma.empty()) << name;
        EXPECT_EQ(check(r.primitive, {}), canonical_witness(name).formula) << name;
    }
}

TEST(Extraction, IsDeterministic) {
    EXPECT_EQ(to_string(extract_witness("K").proof), to_string(extract_witness("K").proof));
}

TEST(Extraction, TraceRecordsSharesAndFlushes) {
    Extracted r = extract_witness("K", true);
    auto has_prefix = [&](const std::string& pre) {
        for (const auto& line : r.trace)
            if (line.rfind(pre, 0) == 0) return true;
        return false;
    };
    EXPECT_TRUE(has_prefix("SHARE n="));
    EXPECT_TRUE(has_prefix("FLUSH/I⊃"));
    EXPECT_TRUE(has_prefix("FLUSH/I0"));
    EXPECT_TRUE(extract_witness("K").trace.empty());
}

TEST(Corpus, CoreEntriesRoundTrip) {
    int done = 0;
    for (const auto& e : support::load_corpus()) {
        if (e.engine != "core") continue;
        ASSERT_TRUE(support::core_fragment(e)) << e.name;
        ValidityWitness psi = validity_from_proof(e.theory, e.formula, e.proof);
        expect_roundtrip(e, complete(e.theory, e.formula, psi));
        ++done;
    }
    EXPECT_GE(done, 20);
}

TEST(Corpus, TheoryMembersAreSelectedFromT0) {
    for (const auto& e : support::load_corpus()) {
        if (e.name != "theory_chain") continue;
        Extracted r = complete(e.theory, e.formula, validity_from_proof(e.theory, e.formula, e.proof));
        EXPECT_FALSE(r.members.empty());
    }
}

TEST(Inputs, CoreRejectsDisjunctionAndExistential) {
    Theory t;
    Formula a = F("X \\/ ~X");
    ValidityWitness psi{"em", a, [](const ModelBundle&, const Assignment&) -> SemValue {
                            throw std::logic_error("not run");
                        }};
    EXPECT_THROW(complete(t, a, psi), ExtractionError);
    Formula e = F("exists x. P(x)");
    psi.formula = e;
    EXPECT_THROW(complete(Theory({F("P(c)")}), e, psi), ExtractionError);
}

TEST(Inputs, WitnessMustMatchGoal) {
    EXPECT_THROW(complete(Theory(), F("X -> X"), canonical_witness("K")), ExtractionError);
}

TEST(Engine, ReflectThenReifyPreservesMembers) {
    Theory t({F("X"), F("X -> Y"), F("forall x. P(x)"), F("X /\\ Y")});
    Extraction run(t, F("Y"), Discipline::TwoClass, false);
    CoreEngine eng(run);
    for (std::size_t i = 0; i < t.size(); ++i) {
        Member q = run.member_axiom(i);
        SemValue v = eng.reflect(t.member(i), Substitution(), q);
        EXPECT_TRUE(shape_check(v, t.member(i)));
        Member back = eng.reify(t.member(i), Substitution(), v);
        EXPECT_TRUE(alpha_equal(back.formula, t.member(i)));
        EXPECT_NO_THROW(run.validate(back));
    }
}

TEST(Engine, ModelInterpretsTermsSyntactically) {
    Theory t;
    Extraction run(t, F("X"), Discipline::TwoClass, false);
    ModelBundle m = CoreEngine(run).m0_bundle();
    Term s = parse_term("f(a, g(b))");
    EXPECT_EQ(as_term(eval_term(s, identity_assignment(), m)), s);
}
