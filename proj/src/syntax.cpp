#include "henkin/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <utility>

namespace henkin {

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

// ---------------------------------------------------------------------------
// Variables

VarId VarId::user(std::string name) {
    if (name.empty()) throw SyntaxError("empty variable name");
    return VarId(Pool::User, std::move(name), 0);
}

VarId VarId::witness(BigNat index) { return VarId(Pool::Witness, {}, std::move(index)); }

std::string VarId::str() const { return is_user() ? name_ : "#" + index_.str(); }

bool operator<(const VarId& a, const VarId& b) {
    if (a.pool_ != b.pool_) return a.pool_ < b.pool_;
    if (a.is_user()) return a.name_ < b.name_;
    return a.index_ < b.index_;
}

// ---------------------------------------------------------------------------
// Terms

Term Term::var(VarId v) { return Term(std::make_shared<const Node>(Var{std::move(v)})); }

Term Term::app(std::string fun, std::vector<Term> args) {
    if (fun.empty()) throw SyntaxError("empty function symbol");
    return Term(std::make_shared<const Node>(App{std::move(fun), std::move(args)}));
}

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    return compare(a, b) == 0;
}

std::strong_ordering compare(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (a.is_var() != b.is_var()) return a.is_var() ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.is_var()) {
        const auto& x = a.as_var();
        const auto& y = b.as_var();
        if (x == y) return std::strong_ordering::equal;
        return x < y ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    const auto& fa = a.as_app();
    const auto& fb = b.as_app();
    if (auto c = fa.fun <=> fb.fun; c != 0) return c;
    if (auto c = fa.args.size() <=> fb.args.size(); c != 0) return c;
    for (std::size_t i = 0; i < fa.args.size(); ++i)
        if (auto c = compare(fa.args[i], fb.args[i]); c != 0) return c;
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Formulas

Formula Formula::atom(std::string pred, std::vector<Term> args) {
    if (pred.empty()) throw SyntaxError("empty predicate symbol");
    return Formula(std::make_shared<const Node>(Atom{std::move(pred), std::move(args)}));
}

Formula Formula::bot() {
    static const Formula b(std::make_shared<const Node>(Bot{}));
    return b;
}

Formula Formula::imp(Formula a, Formula b) {
    return Formula(std::make_shared<const Node>(Imp{std::move(a), std::move(b)}));
}

Formula Formula::conj(Formula a, Formula b) {
    return Formula(std::make_shared<const Node>(And{std::move(a), std::move(b)}));
}

Formula Formula::disj(Formula a, Formula b) {
    return Formula(std::make_shared<const Node>(Or{std::move(a), std::move(b)}));
}

Formula Formula::forall(VarId x, Formula body) {
    return Formula(std::make_shared<const Node>(Forall{std::move(x), std::move(body)}));
}

Formula Formula::exists(VarId x, Formula body) {
    return Formula(std::make_shared<const Node>(Exists{std::move(x), std::move(body)}));
}

bool Formula::is_negation() const { return is(Connective::Imp) && as_imp().rhs.is(Connective::Bot); }

const VarId& Formula::bound_var() const {
    if (is(Connective::Forall)) return as_forall().var;
    if (is(Connective::Exists)) return as_exists().var;
    throw SyntaxError("bound_var on a non-quantified formula");
}

const Formula& Formula::body() const {
    if (is(Connective::Forall)) return as_forall().body;
    if (is(Connective::Exists)) return as_exists().body;
    throw SyntaxError("body on a non-quantified formula");
}

namespace {

std::strong_ordering compare_terms(const std::vector<Term>& a, const std::vector<Term>& b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (auto c = compare(a[i], b[i]); c != 0) return c;
    return std::strong_ordering::equal;
}

std::strong_ordering compare_vars(const VarId& a, const VarId& b) {
    if (a == b) return std::strong_ordering::equal;
    return a < b ? std::strong_ordering::less : std::strong_ordering::greater;
}

}  // namespace

std::strong_ordering compare(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.node_->index() <=> b.node_->index(); c != 0) return c;
    switch (a.connective()) {
        case Connective::Atom: {
            const auto& x = a.as_atom();
            const auto& y = b.as_atom();
            if (auto c = x.pred <=> y.pred; c != 0) return c;
            return compare_terms(x.args, y.args);
        }
        case Connective::Bot:
            return std::strong_ordering::equal;
        case Connective::Imp:
            if (auto c = compare(a.as_imp().lhs, b.as_imp().lhs); c != 0) return c;
            return compare(a.as_imp().rhs, b.as_imp().rhs);
        case Connective::And:
            if (auto c = compare(a.as_and().lhs, b.as_and().lhs); c != 0) return c;
            return compare(a.as_and().rhs, b.as_and().rhs);
        case Connective::Or:
            if (auto c = compare(a.as_or().lhs, b.as_or().lhs); c != 0) return c;
            return compare(a.as_or().rhs, b.as_or().rhs);
        case Connective::Forall:
        case Connective::Exists:
            if (auto c = compare_vars(a.bound_var(), b.bound_var()); c != 0) return c;
            return compare(a.body(), b.body());
    }
    return std::strong_ordering::equal;
}

bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }

// ---------------------------------------------------------------------------
// Substitutions

Substitution Substitution::single(VarId x, Term t) {
    Substitution s;
    s.map_.insert_or_assign(std::move(x), std::move(t));
    return s;
}

const Term* Substitution::find(const VarId& x) const {
    auto it = map_.find(x);
    return it == map_.end() ? nullptr : &it->second;
}

Term Substitution::apply(const VarId& x) const {
    if (const Term* t = find(x)) return *t;
    return Term::var(x);
}

Substitution Substitution::with(VarId x, Term t) const {
    Substitution s = *this;
    s.map_.insert_or_assign(std::move(x), std::move(t));
    return s;
}

Substitution Substitution::without(const VarId& x) const {
    Substitution s = *this;
    s.map_.erase(x);
    return s;
}

Substitution Substitution::then(const Substitution& other) const {
    Substitution s;
    for (const auto& [x, t] : map_) s.map_.insert_or_assign(x, subst_term(t, other));
    for (const auto& [x, t] : other.map_)
        if (!map_.contains(x)) s.map_.insert_or_assign(x, t);
    return s;
}

// ---------------------------------------------------------------------------
// Free variables

namespace {

void collect(const Term& t, VarSet& out) {
    std::visit(overloaded{[&](const Term::Var& v) { out.insert(v.id); },
                          [&](const Term::App& f) {
                              for (const auto& a : f.args) collect(a, out);
                          }},
               t.node());
}

void collect_free(const Formula& a, VarSet& out) {
    switch (a.connective()) {
        case Connective::Atom:
            for (const auto& t : a.as_atom().args) collect(t, out);
            return;
        case Connective::Bot:
            return;
        case Connective::Imp:
            collect_free(a.as_imp().lhs, out);
            collect_free(a.as_imp().rhs, out);
            return;
        case Connective::And:
            collect_free(a.as_and().lhs, out);
            collect_free(a.as_and().rhs, out);
            return;
        case Connective::Or:
            collect_free(a.as_or().lhs, out);
            collect_free(a.as_or().rhs, out);
            return;
        case Connective::Forall:
        case Connective::Exists: {
            VarSet inner;
            collect_free(a.body(), inner);
            inner.erase(a.bound_var());
            out.insert(inner.begin(), inner.end());
            return;
        }
    }
}

void collect_all(const Formula& a, VarSet& out) {
    switch (a.connective()) {
        case Connective::Atom:
            for (const auto& t : a.as_atom().args) collect(t, out);
            return;
        case Connective::Bot:
            return;
        case Connective::Imp:
            collect_all(a.as_imp().lhs, out);
            collect_all(a.as_imp().rhs, out);
            return;
        case Connective::And:
            collect_all(a.as_and().lhs, out);
            collect_all(a.as_and().rhs, out);
            return;
        case Connective::Or:
            collect_all(a.as_or().lhs, out);
            collect_all(a.as_or().rhs, out);
            return;
        case Connective::Forall:
        case Connective::Exists:
            out.insert(a.bound_var());
            collect_all(a.body(), out);
            return;
    }
}

}  // namespace

VarSet free_vars(const Term& t) {
    VarSet out;
    collect(t, out);
    return out;
}

VarSet free_vars(const Formula& a) {
    VarSet out;
    collect_free(a, out);
    return out;
}

VarSet free_vars(const Context& gamma) {
    VarSet out;
    for (const auto& a : gamma) collect_free(a, out);
    return out;
}

VarSet all_vars(const Formula& a) {
    VarSet out;
    collect_all(a, out);
    return out;
}

bool occurs_free(const VarId& x, const Formula& a) { return free_vars(a).contains(x); }

bool occurs_free(const VarId& x, const Context& gamma) {
    return std::ranges::any_of(gamma, [&](const Formula& a) { return occurs_free(x, a); });
}

// ---------------------------------------------------------------------------
// Substitution application

Term subst_term(const Term& t, const Substitution& s) {
    if (s.empty()) return t;
    return std::visit(overloaded{[&](const Term::Var& v) -> Term {
                                     if (const Term* r = s.find(v.id)) return *r;
                                     return t;
                                 },
                                 [&](const Term::App& f) -> Term {
                                     std::vector<Term> args;
                                     args.reserve(f.args.size());
                                     bool changed = false;
                                     for (const auto& a : f.args) {
                                         args.push_back(subst_term(a, s));
                                         changed = changed || !args.back().same_node(a);
                                     }
                                     return changed ? Term::app(f.fun, std::move(args)) : t;
                                 }},
                      t.node());
}

VarId fresh_user_var(const VarId& base, const VarSet& avoid) {
    std::string stem = base.is_user() ? base.name() : std::string("x");
    while (stem.size() > 1 && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
    if (std::isdigit(static_cast<unsigned char>(stem.back()))) stem = "x";
    for (std::size_t k = 1;; ++k) {
        VarId candidate = VarId::user(stem + std::to_string(k));
        if (!avoid.contains(candidate)) return candidate;
    }
}

namespace {

Formula subst_impl(const Formula& a, const Substitution& s);

Formula subst_binder(const Formula& a, const Substitution& s) {
    const VarId& x = a.bound_var();
    const Formula& body = a.body();
    // Keep only bindings that matter inside the body.
    Substitution inner;
    VarSet body_free = free_vars(body);
    body_free.erase(x);
    for (const auto& [y, t] : s.bindings())
        if (body_free.contains(y)) inner = inner.with(y, t);
    if (inner.empty()) return a;

    bool capture = false;
    VarSet inserted;
    for (const auto& [y, t] : inner.bindings()) {
        VarSet fv = free_vars(t);
        if (fv.contains(x)) capture = true;
        inserted.insert(fv.begin(), fv.end());
    }
    VarId binder = x;
    if (capture) {
        VarSet avoid = inserted;
        VarSet all = all_vars(body);
        avoid.insert(all.begin(), all.end());
        avoid.insert(body_free.begin(), body_free.end());
        binder = fresh_user_var(x, avoid);
        inner = inner.with(x, Term::var(binder));
    }
    Formula new_body = subst_impl(body, inner);
    return a.is(Connective::Forall) ? Formula::forall(binder, std::move(new_body))
                                    : Formula::exists(binder, std::move(new_body));
}

Formula subst_impl(const Formula& a, const Substitution& s) {
    switch (a.connective()) {
        case Connective::Atom: {
            const auto& at = a.as_atom();
            std::vector<Term> args;
            bool changed = false;
            for (const auto& t : at.args) {
                args.push_back(subst_term(t, s));
                changed = changed || !args.back().same_node(t);
            }
            return changed ? Formula::atom(at.pred, std::move(args)) : a;
        }
        case Connective::Bot:
            return a;
        case Connective::Imp: {
            Formula l = subst_impl(a.as_imp().lhs, s);
            Formula r = subst_impl(a.as_imp().rhs, s);
            if (l.same_node(a.as_imp().lhs) && r.same_node(a.as_imp().rhs)) return a;
            return Formula::imp(std::move(l), std::move(r));
        }
        case Connective::And: {
            Formula l = subst_impl(a.as_and().lhs, s);
            Formula r = subst_impl(a.as_and().rhs, s);
            if (l.same_node(a.as_and().lhs) && r.same_node(a.as_and().rhs)) return a;
            return Formula::conj(std::move(l), std::move(r));
        }
        case Connective::Or: {
            Formula l = subst_impl(a.as_or().lhs, s);
            Formula r = subst_impl(a.as_or().rhs, s);
            if (l.same_node(a.as_or().lhs) && r.same_node(a.as_or().rhs)) return a;
            return Formula::disj(std::move(l), std::move(r));
        }
        case Connective::Forall:
        case Connective::Exists:
            return subst_binder(a, s);
    }
    return a;
}

}  // namespace

Formula subst_formula(const Formula& a, const Substitution& s) {
    if (s.empty()) return a;
    return subst_impl(a, s);
}

// ---------------------------------------------------------------------------
// Alpha-equivalence: compare with binder maps (de Bruijn levels).

namespace {

using BinderMap = std::map<VarId, std::size_t>;

bool alpha_var(const VarId& x, const VarId& y, const BinderMap& lx, const BinderMap& ly) {
    auto ix = lx.find(x);
    auto iy = ly.find(y);
    if (ix == lx.end() && iy == ly.end()) return x == y;
    if (ix == lx.end() || iy == ly.end()) return false;
    return ix->second == iy->second;
}

bool alpha_term(const Term& s, const Term& t, const BinderMap& ls, const BinderMap& lt) {
    if (s.is_var() != t.is_var()) return false;
    if (s.is_var()) return alpha_var(s.as_var(), t.as_var(), ls, lt);
    const auto& f = s.as_app();
    const auto& g = t.as_app();
    if (f.fun != g.fun || f.args.size() != g.args.size()) return false;
    for (std::size_t i = 0; i < f.args.size(); ++i)
        if (!alpha_term(f.args[i], g.args[i], ls, lt)) return false;
    return true;
}

bool alpha_impl(const Formula& a, const Formula& b, BinderMap& la, BinderMap& lb, std::size_t depth) {
    if (la.empty() && lb.empty() && a.same_node(b)) return true;
    if (a.connective() != b.connective()) return false;
    switch (a.connective()) {
        case Connective::Atom: {
            const auto& x = a.as_atom();
            const auto& y = b.as_atom();
            if (x.pred != y.pred || x.args.size() != y.args.size()) return false;
            for (std::size_t i = 0; i < x.args.size(); ++i)
                if (!alpha_term(x.args[i], y.args[i], la, lb)) return false;
            return true;
        }
        case Connective::Bot:
            return true;
        case Connective::Imp:
            return alpha_impl(a.as_imp().lhs, b.as_imp().lhs, la, lb, depth) &&
                   alpha_impl(a.as_imp().rhs, b.as_imp().rhs, la, lb, depth);
        case Connective::And:
            return alpha_impl(a.as_and().lhs, b.as_and().lhs, la, lb, depth) &&
                   alpha_impl(a.as_and().rhs, b.as_and().rhs, la, lb, depth);
        case Connective::Or:
            return alpha_impl(a.as_or().lhs, b.as_or().lhs, la, lb, depth) &&
                   alpha_impl(a.as_or().rhs, b.as_or().rhs, la, lb, depth);
        case Connective::Forall:
        case Connective::Exists: {
            const VarId& x = a.bound_var();
            const VarId& y = b.bound_var();
            auto saved_a = la.find(x) == la.end() ? std::nullopt : std::optional(la[x]);
            auto saved_b = lb.find(y) == lb.end() ? std::nullopt : std::optional(lb[y]);
            la[x] = depth;
            lb[y] = depth;
            bool ok = alpha_impl(a.body(), b.body(), la, lb, depth + 1);
            if (saved_a) la[x] = *saved_a; else la.erase(x);
            if (saved_b) lb[y] = *saved_b; else lb.erase(y);
            return ok;
        }
    }
    return false;
}

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) {
    BinderMap la, lb;
    return alpha_impl(a, b, la, lb, 0);
}

std::size_t depth(const Formula& a) {
    switch (a.connective()) {
        case Connective::Atom:
        case Connective::Bot:
            return 1;
        case Connective::Imp:
            return 1 + std::max(depth(a.as_imp().lhs), depth(a.as_imp().rhs));
        case Connective::And:
            return 1 + std::max(depth(a.as_and().lhs), depth(a.as_and().rhs));
        case Connective::Or:
            return 1 + std::max(depth(a.as_or().lhs), depth(a.as_or().rhs));
        case Connective::Forall:
        case Connective::Exists:
            return 1 + depth(a.body());
    }
    return 1;
}

std::size_t size(const Formula& a) {
    switch (a.connective()) {
        case Connective::Atom:
        case Connective::Bot:
            return 1;
        case Connective::Imp:
            return 1 + size(a.as_imp().lhs) + size(a.as_imp().rhs);
        case Connective::And:
            return 1 + size(a.as_and().lhs) + size(a.as_and().rhs);
        case Connective::Or:
            return 1 + size(a.as_or().lhs) + size(a.as_or().rhs);
        case Connective::Forall:
        case Connective::Exists:
            return 1 + size(a.body());
    }
    return 1;
}

bool only_user_vars(const Formula& a) {
    VarSet all = all_vars(a);
    return std::ranges::all_of(all, [](const VarId& v) { return v.is_user(); });
}

// ---------------------------------------------------------------------------
// Signatures and theories

void Signature::add_fun(const std::string& name, std::size_t arity) {
    auto [it, inserted] = funs_.emplace(name, arity);
    if (!inserted && it->second != arity)
        throw SyntaxError("function symbol '" + name + "' used with arities " +
                          std::to_string(it->second) + " and " + std::to_string(arity));
}

void Signature::add_pred(const std::string& name, std::size_t arity) {
    auto [it, inserted] = preds_.emplace(name, arity);
    if (!inserted && it->second != arity)
        throw SyntaxError("predicate symbol '" + name + "' used with arities " +
                          std::to_string(it->second) + " and " + std::to_string(arity));
}

void Signature::absorb(const Term& t) {
    if (t.is_var()) return;
    add_fun(t.as_app().fun, t.as_app().args.size());
    for (const auto& a : t.as_app().args) absorb(a);
}

void Signature::absorb(const Formula& a) {
    switch (a.connective()) {
        case Connective::Atom:
            add_pred(a.as_atom().pred, a.as_atom().args.size());
            for (const auto& t : a.as_atom().args) absorb(t);
            return;
        case Connective::Bot:
            return;
        case Connective::Imp:
            absorb(a.as_imp().lhs);
            absorb(a.as_imp().rhs);
            return;
        case Connective::And:
            absorb(a.as_and().lhs);
            absorb(a.as_and().rhs);
            return;
        case Connective::Or:
            absorb(a.as_or().lhs);
            absorb(a.as_or().rhs);
            return;
        case Connective::Forall:
        case Connective::Exists:
            absorb(a.body());
            return;
    }
}

std::size_t Signature::fun_arity(const std::string& name) const {
    auto it = funs_.find(name);
    if (it == funs_.end()) throw SyntaxError("unknown function symbol '" + name + "'");
    return it->second;
}

std::size_t Signature::pred_arity(const std::string& name) const {
    auto it = preds_.find(name);
    if (it == preds_.end()) throw SyntaxError("unknown predicate symbol '" + name + "'");
    return it->second;
}

void Signature::validate(const Term& t) const {
    if (t.is_var()) return;
    const auto& f = t.as_app();
    if (fun_arity(f.fun) != f.args.size())
        throw SyntaxError("function symbol '" + f.fun + "' expects " +
                          std::to_string(fun_arity(f.fun)) + " arguments");
    for (const auto& a : f.args) validate(a);
}

void Signature::validate(const Formula& a) const {
    switch (a.connective()) {
        case Connective::Atom: {
            const auto& at = a.as_atom();
            if (pred_arity(at.pred) != at.args.size())
                throw SyntaxError("predicate symbol '" + at.pred + "' expects " +
                                  std::to_string(pred_arity(at.pred)) + " arguments");
            for (const auto& t : at.args) validate(t);
            return;
        }
        case Connective::Bot:
            return;
        case Connective::Imp:
            validate(a.as_imp().lhs);
            validate(a.as_imp().rhs);
            return;
        case Connective::And:
            validate(a.as_and().lhs);
            validate(a.as_and().rhs);
            return;
        case Connective::Or:
            validate(a.as_or().lhs);
            validate(a.as_or().rhs);
            return;
        case Connective::Forall:
        case Connective::Exists:
            validate(a.body());
            return;
    }
}

Theory::Theory(std::vector<Formula> members) : members_(std::move(members)) {
    for (const auto& b : members_)
        if (!only_user_vars(b)) throw SyntaxError("theory members may only use user variables");
}

}  // namespace henkin
