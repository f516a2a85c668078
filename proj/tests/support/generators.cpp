#include "generators.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "henkin/checker.hpp"

namespace henkin::support {

namespace {

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

const char* const kVars[] = {"a", "b", "u", "x", "y", "z"};
const char* const kBinders[] = {"x", "y", "z"};

}  // namespace

Term random_term(Rng& rng, const FormulaShape& shape, std::size_t depth) {
    std::size_t r = pick(rng, 10);
    if (depth > 0 && r < 2) return Term::app("f", {random_term(rng, shape, depth - 1)});
    if (depth > 0 && r == 2)
        return Term::app("g", {random_term(rng, shape, depth - 1), random_term(rng, shape, depth - 1)});
    if (r == 3) return Term::app("c");
    if (shape.witnesses && r == 4) {
        std::uint64_t k = std::uniform_int_distribution<std::uint64_t>(0, 1u << 20)(rng);
        if (coin(rng, 0.1)) k *= 1000003;
        return Term::var(VarId::witness(k));
    }
    return Term::var(kVars[pick(rng, std::size(kVars))]);
}

Formula random_formula(Rng& rng, const FormulaShape& shape) {
    if (shape.depth == 0 || coin(rng, 0.2)) {
        switch (pick(rng, 6)) {
            case 0: return Formula::atom("X");
            case 1: return Formula::atom("Y");
            case 2: return Formula::bot();
            case 3: return Formula::atom("P", {random_term(rng, shape)});
            case 4: return Formula::atom("Q", {random_term(rng, shape), random_term(rng, shape)});
            default: return Formula::atom("R", {random_term(rng, shape, 2)});
        }
    }
    FormulaShape sub = shape;
    sub.depth = shape.depth - 1;
    std::size_t n = shape.quantifiers ? (shape.or_exists ? 6 : 4) : (shape.or_exists ? 3 : 2);
    std::size_t r = pick(rng, n);
    // Order: imp, and, [or], [forall, exists] with holes closed up.
    std::vector<Connective> menu = {Connective::Imp, Connective::And};
    if (shape.or_exists) menu.push_back(Connective::Or);
    if (shape.quantifiers) {
        menu.push_back(Connective::Forall);
        menu.push_back(Connective::Forall);
        if (shape.or_exists) menu.push_back(Connective::Exists);
    }
    Connective c = menu[r % menu.size()];
    switch (c) {
        case Connective::Imp: return Formula::imp(random_formula(rng, sub), random_formula(rng, sub));
        case Connective::And: return Formula::conj(random_formula(rng, sub), random_formula(rng, sub));
        case Connective::Or: return Formula::disj(random_formula(rng, sub), random_formula(rng, sub));
        case Connective::Forall: return Formula::forall(kBinders[pick(rng, 3)], random_formula(rng, sub));
        default: return Formula::exists(kBinders[pick(rng, 3)], random_formula(rng, sub));
    }
}

Proof insert_hyp(const Proof& p, std::size_t pos) {
    switch (p.rule()) {
        case Rule::Ax: return Proof::ax(p.index() >= pos ? p.index() + 1 : p.index());
        case Rule::AbsImp: return p.with_kids({insert_hyp(p.kid(0), pos + 1)});
        default: {
            std::vector<Proof> kids;
            kids.reserve(p.kids().size());
            for (const auto& k : p.kids()) kids.push_back(insert_hyp(k, pos));
            return p.with_kids(std::move(kids));
        }
    }
}

Context random_context(Rng& rng, std::size_t n) {
    FormulaShape shape;
    shape.depth = 2;
    Context g;
    for (std::size_t i = 0; i < n; ++i) g.push_back(random_formula(rng, shape));
    return g;
}

VarId ProofGen::fresh(const std::string& stem) { return VarId::user(stem + std::to_string(++counter_)); }

Formula ProofGen::small_formula() {
    FormulaShape shape;
    shape.depth = 2;
    return random_formula(*rng_, shape);
}

Term ProofGen::pool_term() {
    if (!pool_.empty() && coin(*rng_, 0.6)) return pool_[pick(*rng_, pool_.size())];
    FormulaShape shape;
    return random_term(*rng_, shape);
}

std::optional<Proof> ProofGen::goal(const Context& gamma, const Formula& a, std::size_t fuel) {
    for (std::size_t i = 0; i < gamma.size(); ++i)
        if (alpha_equal(gamma[gamma.size() - 1 - i], a)) return Proof::ax(i);
    if (fuel == 0) return std::nullopt;
    if (a.is(Connective::Imp)) {
        Context ext = gamma;
        ext.push_back(a.as_imp().lhs);
        if (auto body = goal(ext, a.as_imp().rhs, fuel - 1)) return Proof::lam(a.as_imp().lhs, *body);
    }
    if (a.is(Connective::And)) {
        auto l = goal(gamma, a.as_and().lhs, fuel - 1);
        auto r = goal(gamma, a.as_and().rhs, fuel - 1);
        if (l && r) return Proof::pair(*l, *r);
    }
    return std::nullopt;
}

Generated ProofGen::forward(const Context& gamma, std::size_t fuel) {
    Rng& rng = *rng_;
    if (fuel == 0 || coin(rng, 0.15)) {
        if (gamma.empty()) {
            Formula b = small_formula();
            return {Proof::lam(b, Proof::ax(0)), Formula::imp(b, b)};
        }
        std::size_t i = pick(rng, gamma.size());
        return {Proof::ax(i), gamma[gamma.size() - 1 - i]};
    }
    switch (pick(rng, 11)) {
        case 0: {  // introduce an implication
            Formula b = small_formula();
            Context ext = gamma;
            ext.push_back(b);
            Generated body = forward(ext, fuel - 1);
            return {Proof::lam(b, body.proof), Formula::imp(b, body.formula)};
        }
        case 1: {  // beta redex
            Generated arg = forward(gamma, fuel / 2);
            Context ext = gamma;
            ext.push_back(arg.formula);
            Generated body = forward(ext, fuel / 2);
            return {Proof::app(Proof::lam(arg.formula, body.proof), arg.proof), body.formula};
        }
        case 2: {  // eliminate whatever comes out
            Generated g = forward(gamma, fuel - 1);
            const Formula& c = g.formula;
            if (c.is(Connective::And))
                return coin(rng) ? Generated{Proof::fst(g.proof), c.as_and().lhs}
                                 : Generated{Proof::snd(g.proof), c.as_and().rhs};
            if (c.is(Connective::Forall)) {
                Term t = pool_term();
                return {Proof::inst(g.proof, t), instantiate(c, t)};
            }
            if (c.is(Connective::Imp))
                if (auto a = goal(gamma, c.as_imp().lhs, 2)) return {Proof::app(g.proof, *a), c.as_imp().rhs};
            return g;
        }
        case 3: {
            Generated l = forward(gamma, fuel / 2);
            Generated r = forward(gamma, fuel / 2);
            return {Proof::pair(l.proof, r.proof), Formula::conj(l.formula, r.formula)};
        }
        case 4: {  // generalize over a fresh eigenvariable
            VarId y = fresh("g");
            pool_.push_back(Term::var(y));
            Generated g = forward(gamma, fuel - 1);
            pool_.pop_back();
            return {Proof::gen(y, g.proof), Formula::forall(y, g.formula)};
        }
        case 5: {  // classical detour
            Generated g = forward(gamma, fuel - 1);
            Formula nc = Formula::neg(g.formula);
            return {Proof::dn(Proof::lam(nc, Proof::app(Proof::ax(0), insert_hyp(g.proof, 0)))), g.formula};
        }
        case 6: {
            Generated g = forward(gamma, fuel - 1);
            Formula other = small_formula();
            if (coin(rng)) return {Proof::inl(other, g.proof), Formula::disj(g.formula, other)};
            return {Proof::inr(other, g.proof), Formula::disj(other, g.formula)};
        }
        case 7: {  // case split with a shared conclusion
            Generated d = forward(gamma, fuel / 2);
            Formula l = d.formula, r = small_formula();
            Proof dp = d.proof;
            if (!d.formula.is(Connective::Or)) {
                dp = Proof::inl(r, d.proof);
                l = d.formula;
            } else {
                l = d.formula.as_or().lhs;
                r = d.formula.as_or().rhs;
            }
            Generated c = forward(gamma, fuel / 2);
            Proof q1 = Proof::lam(l, insert_hyp(c.proof, 0));
            Proof q2 = Proof::lam(r, insert_hyp(c.proof, 0));
            return {Proof::cases(dp, q1, q2), c.formula};
        }
        case 8: {  // existential introduction over a pool variable
            Generated g = forward(gamma, fuel - 1);
            VarSet fv = free_vars(g.formula);
            std::vector<VarId> cands(fv.begin(), fv.end());
            if (cands.empty()) {
                VarId x = fresh("e");
                return {Proof::exi(pool_term(), Formula::exists(x, g.formula), g.proof),
                        Formula::exists(x, g.formula)};
            }
            VarId v = cands[pick(rng, cands.size())];
            VarId x = fresh("e");
            Formula body = subst_formula(g.formula, Substitution::single(v, Term::var(x)));
            Formula ex = Formula::exists(x, body);
            return {Proof::exi(Term::var(v), ex, g.proof), ex};
        }
        case 9: {  // existential elimination
            Generated e = forward(gamma, fuel / 2);
            Formula ex = e.formula;
            Proof ep = e.proof;
            if (!ex.is(Connective::Exists)) {
                VarId x = fresh("e");
                ex = Formula::exists(x, e.formula);
                ep = Proof::exi(pool_term(), ex, e.proof);
            }
            Generated d = forward(gamma, fuel / 2);
            VarId y = fresh("g");
            Formula inst = instantiate(ex, Term::var(y));
            Proof u = Proof::gen(y, Proof::lam(inst, insert_hyp(d.proof, 0)));
            return {Proof::exe(ep, u), d.formula};
        }
        default: {  // use an implication hypothesis
            std::vector<std::size_t> imps;
            for (std::size_t i = 0; i < gamma.size(); ++i)
                if (gamma[gamma.size() - 1 - i].is(Connective::Imp)) imps.push_back(i);
            if (!imps.empty()) {
                std::size_t i = imps[pick(rng, imps.size())];
                const Formula& h = gamma[gamma.size() - 1 - i];
                if (auto a = goal(gamma, h.as_imp().lhs, 2)) return {Proof::app(Proof::ax(i), *a), h.as_imp().rhs};
            }
            return forward(gamma, fuel - 1);
        }
    }
}

ProofGen::Refutation ProofGen::refutation(const Context& gamma, std::size_t pos, std::size_t fuel) {
    Generated g = forward(gamma, fuel);
    Context out = gamma;
    out.insert(out.end() - static_cast<std::ptrdiff_t>(pos), Formula::neg(g.formula));
    return {out, Proof::app(Proof::ax(pos), insert_hyp(g.proof, pos))};
}

nbe::MinFormula random_min_formula(Rng& rng, std::size_t depth) {
    static const char* const atoms[] = {"X", "Y", "Z"};
    if (depth == 0 || coin(rng, 0.35)) return nbe::MinFormula::atom(atoms[pick(rng, 3)]);
    return nbe::MinFormula::imp(random_min_formula(rng, depth - 1), random_min_formula(rng, depth - 1));
}

namespace {

std::optional<nbe::MinProof> min_goal(Rng& rng, const nbe::MinContext& gamma, const nbe::MinFormula& a,
                                      std::size_t fuel) {
    for (std::size_t i = 0; i < gamma.size(); ++i)
        if (gamma[gamma.size() - 1 - i] == a) return nbe::MinProof::ax(i);
    if (fuel == 0) return std::nullopt;
    if (!a.is_atom()) {
        nbe::MinContext ext = gamma;
        ext.push_back(a.lhs());
        if (auto b = min_goal(rng, ext, a.rhs(), fuel - 1)) return nbe::MinProof::abs(a.lhs(), *b);
    }
    // Apply a hypothesis whose result is a.
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        const nbe::MinFormula& h = gamma[gamma.size() - 1 - i];
        if (!h.is_atom() && h.rhs() == a)
            if (auto arg = min_goal(rng, gamma, h.lhs(), fuel - 1)) return nbe::MinProof::app(nbe::MinProof::ax(i), *arg);
    }
    return std::nullopt;
}

}  // namespace

MinGenerated random_min_proof(Rng& rng, const nbe::MinContext& gamma, std::size_t fuel) {
    using nbe::MinFormula;
    using nbe::MinProof;
    if (fuel == 0 || coin(rng, 0.1)) {
        if (gamma.empty()) {
            MinFormula b = random_min_formula(rng, 1);
            return {MinProof::abs(b, MinProof::ax(0)), MinFormula::imp(b, b)};
        }
        std::size_t i = pick(rng, gamma.size());
        return {MinProof::ax(i), gamma[gamma.size() - 1 - i]};
    }
    switch (pick(rng, 4)) {
        case 0: {
            MinFormula b = random_min_formula(rng, 2);
            nbe::MinContext ext = gamma;
            ext.push_back(b);
            MinGenerated body = random_min_proof(rng, ext, fuel - 1);
            return {MinProof::abs(b, body.proof), MinFormula::imp(b, body.formula)};
        }
        case 1:
        case 2: {  // beta redex, possibly nested through the recursion
            MinGenerated arg = random_min_proof(rng, gamma, fuel / 2);
            nbe::MinContext ext = gamma;
            ext.push_back(arg.formula);
            MinGenerated body = random_min_proof(rng, ext, fuel / 2);
            return {MinProof::app(MinProof::abs(arg.formula, body.proof), arg.proof), body.formula};
        }
        default: {
            MinGenerated f = random_min_proof(rng, gamma, fuel - 1);
            if (!f.formula.is_atom())
                if (auto a = min_goal(rng, gamma, f.formula.lhs(), 3))
                    return {MinProof::app(f.proof, *a), f.formula.rhs()};
            return f;
        }
    }
}

std::vector<Formula> distinct_formulas(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    FormulaShape shape;
    shape.depth = 5;
    shape.witnesses = true;
    std::set<Formula> seen;
    std::vector<Formula> out;
    while (out.size() < n) {
        Formula a = random_formula(rng, shape);
        if (seen.insert(a).second) out.push_back(a);
    }
    return out;
}

namespace {

void term_witnesses(const Term& t, std::vector<BigNat>& out) {
    if (t.is_var()) {
        if (t.as_var().is_witness()) out.push_back(t.as_var().index());
        return;
    }
    for (const auto& a : t.as_app().args) term_witnesses(a, out);
}

}  // namespace

void witness_indices(const Formula& a, std::vector<BigNat>& out) {
    switch (a.connective()) {
        case Connective::Atom:
            for (const auto& t : a.as_atom().args) term_witnesses(t, out);
            break;
        case Connective::Bot: break;
        case Connective::Imp:
            witness_indices(a.as_imp().lhs, out);
            witness_indices(a.as_imp().rhs, out);
            break;
        case Connective::And:
            witness_indices(a.as_and().lhs, out);
            witness_indices(a.as_and().rhs, out);
            break;
        case Connective::Or:
            witness_indices(a.as_or().lhs, out);
            witness_indices(a.as_or().rhs, out);
            break;
        case Connective::Forall:
        case Connective::Exists:
            if (a.bound_var().is_witness()) out.push_back(a.bound_var().index());
            witness_indices(a.body(), out);
            break;
    }
}

Formula drinker_axiom(ProofGen& gen, const VarId& y) {
    Formula a = gen.small_formula();
    Formula ay = subst_formula(a, Substitution::single(VarId::user("x"), Term::var(y)));
    return Formula::imp(ay, Formula::forall("x", a));
}

Formula henkin_ex_axiom(ProofGen& gen, const VarId& y) {
    Formula a = gen.small_formula();
    Formula ay = subst_formula(a, Substitution::single(VarId::user("x"), Term::var(y)));
    return Formula::imp(Formula::exists("x", a), ay);
}

namespace {

BotInT never(const Refutation&) { throw std::logic_error("continuation should not run"); }

}  // namespace

Member MemberGen::leaf() {
    FormulaShape shape;
    shape.depth = 2;
    shape.or_exists = false;
    int pick = static_cast<int>(rng_() % (ex_.discipline() == Discipline::ThreeClass ? 5 : 4));
    switch (pick) {
        case 0: return ex_.member_axiom(rng_() % ex_.theory().size());
        case 1: return ex_.ax_forall(Formula::forall("x", random_formula(rng_, shape)));
        case 2:
            return ex_.ax_imp(Formula::imp(random_formula(rng_, shape), random_formula(rng_, shape)), never);
        case 3: return ex_.ax0();
        default: return ex_.ax_exists(Formula::exists("x", random_formula(rng_, shape)));
    }
}

Member MemberGen::tree(int depth) {
    if (depth == 0 || rng_() % 3 == 0) {
        if (!pool_.empty() && rng_() % 3 == 0) return pool_[rng_() % pool_.size()];
        Member m = leaf();
        pool_.push_back(m);
        return m;
    }
    return ex_.pair(tree(depth - 1), tree(depth - 1));
}

}  // namespace henkin::support
