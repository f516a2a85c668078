#include "henkin/elaborate.hpp"

#include <optional>
#include <unordered_map>
#include <vector>

namespace henkin {

namespace {

// Nodes the running elaboration may still build.
thread_local std::size_t* budget_left = nullptr;

// Walks over shared proofs visit each (node, depth, context, inclusion)
// once, so a DAG stays a DAG. Entries hold their input so node addresses
// are not reused while the table is alive.
class Memo {
public:
    template <class F>
    Proof get(const Proof& p, std::size_t depth, const Context& ctx, F&& compute, const Inclusion* w = nullptr) {
        if (p.kids().empty()) return compute();
        const Proof::Node* key = &p.node();
        if (auto it = table_.find(key); it != table_.end())
            for (const auto& e : it->second)
                if (e.depth == depth && (!w || e.incl == *w) && e.ctx == ctx) return e.out;
        Proof out = compute();
        if (budget_left && (*budget_left)-- == 0) throw ProofError("elaborated proof exceeds the node budget");
        table_[key].push_back({p, depth, w ? *w : Inclusion(), ctx, out});
        return out;
    }

private:
    struct Entry {
        Proof in;
        std::size_t depth;
        Inclusion incl;
        Context ctx;
        Proof out;
    };
    std::unordered_map<const Proof::Node*, std::vector<Entry>> table_;
};

// While an elaboration runs, every weakening it performs shares one table.
thread_local Memo* shared_weaken = nullptr;

Proof rename_walk(const Proof& p, const VarId& y, const Substitution& s, Memo& memo) {
    if (p.rule() == Rule::AbsForall && p.var() == y) return p;
    return memo.get(p, 0, {}, [&] {
        Proof::Node n = p.node();
        if (n.formula) n.formula = subst_formula(*n.formula, s);
        if (n.term) n.term = subst_term(*n.term, s);
        if (n.var && *n.var == y) n.var = s.apply(y).as_var();
        for (auto& k : n.kids) k = rename_walk(k, y, s, memo);
        return Proof::from_node(std::move(n));
    });
}

// Hypothesis renaming under `depth` local binders, with target context for
// eigenvariable freshness.
Proof weaken_walk(const Proof& p, const Inclusion& w, std::size_t depth, Context& target, Memo& memo);

Proof weaken_step(const Proof& p, const Inclusion& w, std::size_t depth, Context& target, Memo& memo) {
    switch (p.rule()) {
        case Rule::Ax:
            if (p.index() < depth) return p;
            return Proof::ax(w.map_index(p.index() - depth) + depth);
        case Rule::AbsImp: {
            target.push_back(p.formula());
            Proof body = weaken_walk(p.kid(0), w, depth + 1, target, memo);
            target.pop_back();
            return Proof::lam(p.formula(), std::move(body));
        }
        case Rule::AbsForall: {
            const VarId& y = p.var();
            Proof sub = p.kid(0);
            VarId eigen = y;
            if (occurs_free(y, target)) {
                VarSet avoid = free_vars(target);
                VarSet used = proof_vars(sub);
                avoid.insert(used.begin(), used.end());
                avoid.insert(y);
                if (p.binder()) avoid.insert(*p.binder());
                eigen = fresh_user_var(y.is_user() ? y : VarId::user("y"), avoid);
                sub = rename_var(sub, y, eigen);
            }
            Proof body = weaken_walk(sub, w, depth, target, memo);
            return Proof::gen(eigen, std::move(body), p.binder().value_or(y));
        }
        default: {
            if (!is_primitive_rule(p.rule())) throw ProofError("weaken expects a primitive proof");
            std::vector<Proof> kids;
            kids.reserve(p.kids().size());
            for (const auto& k : p.kids()) kids.push_back(weaken_walk(k, w, depth, target, memo));
            return p.with_kids(std::move(kids));
        }
    }
}

Proof weaken_walk(const Proof& p, const Inclusion& w, std::size_t depth, Context& target, Memo& memo) {
    return memo.get(p, depth, target, [&] { return weaken_step(p, w, depth, target, memo); }, &w);
}

Proof subst_walk(const Proof& p, const Proof& q, std::size_t gamma_size, Context& ctx, std::size_t depth,
                 Memo& memo);

Proof subst_step(const Proof& p, const Proof& q, std::size_t gamma_size, Context& ctx, std::size_t depth,
                 Memo& memo) {
    switch (p.rule()) {
        case Rule::Ax:
            if (p.index() < depth) return p;
            if (p.index() == depth) return weaken(Inclusion::prefix(gamma_size, depth), q, ctx);
            return Proof::ax(p.index() - 1);
        case Rule::AbsImp: {
            ctx.push_back(p.formula());
            Proof body = subst_walk(p.kid(0), q, gamma_size, ctx, depth + 1, memo);
            ctx.pop_back();
            return Proof::lam(p.formula(), std::move(body));
        }
        default: {
            if (!is_primitive_rule(p.rule())) throw ProofError("subst_hyp expects a primitive proof");
            std::vector<Proof> kids;
            kids.reserve(p.kids().size());
            for (const auto& k : p.kids()) kids.push_back(subst_walk(k, q, gamma_size, ctx, depth, memo));
            return p.with_kids(std::move(kids));
        }
    }
}

Proof subst_walk(const Proof& p, const Proof& q, std::size_t gamma_size, Context& ctx, std::size_t depth,
                 Memo& memo) {
    return memo.get(p, depth, ctx, [&] { return subst_step(p, q, gamma_size, ctx, depth, memo); });
}

Context extend(Context gamma, std::initializer_list<Formula> more) {
    gamma.insert(gamma.end(), more.begin(), more.end());
    return gamma;
}

const Formula::Imp& expect_imp(const Formula& h, const char* rule) {
    if (!h.is(Connective::Imp)) throw ProofError(std::string(rule) + " expects an implication hypothesis");
    return h.as_imp();
}

// Gamma, H  ⊂  Gamma, X, H
Inclusion insert_before_last(std::size_t n) { return Inclusion::prefix(n, 1).keep(); }

}  // namespace

Proof rename_var(const Proof& p, const VarId& y, const VarId& z) {
    if (y == z) return p;
    Memo memo;
    return rename_walk(p, y, Substitution::single(y, Term::var(z)), memo);
}

Proof weaken(const Inclusion& w, const Proof& p, const Context& target) {
    if (w.target_size() != target.size()) throw ProofError("inclusion does not match the target context");
    if (w.is_identity()) return p;
    Context t = target;
    if (shared_weaken) return weaken_walk(p, w, 0, t, *shared_weaken);
    Memo memo;
    return weaken_walk(p, w, 0, t, memo);
}

Proof subst_hyp(const Proof& p, const Proof& q, const Context& gamma, const Formula& /*a*/) {
    Context ctx = gamma;
    Memo memo;
    return subst_walk(p, q, gamma.size(), ctx, 0, memo);
}

Proof efq(const Proof& p, const Formula& a, const Context& gamma) {
    Formula na = Formula::neg(a);
    Context ext = extend(gamma, {na});
    return Proof::dn(Proof::lam(na, weaken(Inclusion::prefix(gamma.size(), 1), p, ext)));
}

Proof pi1(const Proof& p, const Formula& h, const Context& gamma) {
    const auto& [a, b] = expect_imp(h, "pi1");
    Formula na = Formula::neg(a);
    Context g1 = extend(gamma, {na});
    Proof shuffled = weaken(insert_before_last(gamma.size()), p, extend(gamma, {na, h}));
    Context g2 = extend(gamma, {na, a});
    Proof absurd = Proof::app(Proof::ax(1), Proof::ax(0));
    Proof q = Proof::lam(a, efq(absurd, b, g2));
    return Proof::dn(Proof::lam(na, subst_hyp(shuffled, q, g1, h)));
}

Proof pi2(const Proof& p, const Formula& h, const Context& gamma) {
    const auto& [a, b] = expect_imp(h, "pi2");
    Context g1 = extend(gamma, {b});
    Proof shuffled = weaken(insert_before_last(gamma.size()), p, extend(gamma, {b, h}));
    Proof q = Proof::lam(a, Proof::ax(1));
    return Proof::lam(b, subst_hyp(shuffled, q, g1, h));
}

Proof drinker(const Proof& p, const VarId& y, const Formula& h, const Context& gamma) {
    const auto& imp = expect_imp(h, "drinker");
    if (!imp.rhs.is(Connective::Forall)) throw ProofError("drinker expects A(y) -> forall x. A(x)");
    const VarId& x = imp.rhs.bound_var();
    return Proof::app(pi2(p, h, gamma), Proof::gen(y, pi1(p, h, gamma), x));
}

Proof henkin_ex(const Proof& p, const VarId& x, const Formula& h, const Context& gamma) {
    const auto& imp = expect_imp(h, "henkin-ex");
    if (!imp.lhs.is(Connective::Exists)) throw ProofError("henkin-ex expects (exists y. A(y)) -> A(x)");
    const VarId& y = imp.lhs.bound_var();
    return Proof::exe(pi1(p, h, gamma), Proof::gen(x, pi2(p, h, gamma), y));
}

namespace {

Proof elab(const Proof& p, Context& gamma, Memo& memo);

Proof elab_step(const Proof& p, Context& gamma, Memo& memo) {
    auto under = [&](const Formula& h) {
        gamma.push_back(h);
        std::optional<Proof> r;
        try {
            r = elab(p.kid(0), gamma, memo);
        } catch (...) {
            gamma.pop_back();
            throw;
        }
        gamma.pop_back();
        return *r;
    };
    switch (p.rule()) {
        case Rule::Ax:
            return p;
        case Rule::AbsImp:
            return Proof::lam(p.formula(), under(p.formula()));
        case Rule::Weak: {
            Context src = p.incl().source(gamma);
            return weaken(p.incl(), elab(p.kid(0), src, memo), gamma);
        }
        case Rule::Efq:
            return efq(elab(p.kid(0), gamma, memo), p.formula(), gamma);
        case Rule::Pi1:
            return pi1(under(p.formula()), p.formula(), gamma);
        case Rule::Pi2:
            return pi2(under(p.formula()), p.formula(), gamma);
        case Rule::Drinker:
            return drinker(under(p.formula()), p.var(), p.formula(), gamma);
        case Rule::HenkinEx:
            return henkin_ex(under(p.formula()), p.var(), p.formula(), gamma);
        default: {
            std::vector<Proof> kids;
            kids.reserve(p.kids().size());
            for (const auto& k : p.kids()) kids.push_back(elab(k, gamma, memo));
            return p.with_kids(std::move(kids));
        }
    }
}

Proof elab(const Proof& p, Context& gamma, Memo& memo) {
    return memo.get(p, 0, gamma, [&] { return elab_step(p, gamma, memo); });
}

}  // namespace

Proof elaborate(const Proof& p, const Context& gamma, std::size_t budget) {
    Context g = gamma;
    Memo memo;
    Memo weakening;
    struct Restore {
        Memo* weaken;
        std::size_t* budget;
        ~Restore() {
            shared_weaken = weaken;
            budget_left = budget;
        }
    } restore{shared_weaken, budget_left};
    shared_weaken = &weakening;
    budget_left = &budget;
    return elab(p, g, memo);
}

}  // namespace henkin
