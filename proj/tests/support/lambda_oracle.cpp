#include "lambda_oracle.hpp"

#include <stdexcept>
#include <vector>

namespace henkin::support {

using nbe::MinContext;
using nbe::MinFormula;

LamP lvar(std::size_t i) { return std::make_shared<const Lam>(Lam{Lam::K::Var, i, nullptr, nullptr, nullptr}); }
LamP lapp(LamP f, LamP a) {
    return std::make_shared<const Lam>(Lam{Lam::K::App, 0, nullptr, std::move(f), std::move(a)});
}
LamP labs(const MinFormula& dom, LamP body) {
    return std::make_shared<const Lam>(
        Lam{Lam::K::Abs, 0, std::make_shared<const MinFormula>(dom), std::move(body), nullptr});
}

LamP from_proof(const nbe::MinProof& p) {
    switch (p.kind()) {
        case nbe::MinProof::Kind::Ax: return lvar(p.index());
        case nbe::MinProof::Kind::App: return lapp(from_proof(p.fn()), from_proof(p.arg()));
        case nbe::MinProof::Kind::Abs: return labs(p.dom(), from_proof(p.body()));
    }
    throw std::logic_error("bad proof");
}

bool lam_equal(const LamP& x, const LamP& y) {
    if (x->k != y->k) return false;
    switch (x->k) {
        case Lam::K::Var: return x->var == y->var;
        case Lam::K::App: return lam_equal(x->f, y->f) && lam_equal(x->a, y->a);
        case Lam::K::Abs: return *x->dom == *y->dom && lam_equal(x->f, y->f);
    }
    return false;
}

std::string lam_str(const LamP& t) {
    switch (t->k) {
        case Lam::K::Var: return std::to_string(t->var);
        case Lam::K::App: return "(" + lam_str(t->f) + " " + lam_str(t->a) + ")";
        case Lam::K::Abs: return "(\\" + t->dom->str() + ". " + lam_str(t->f) + ")";
    }
    return "?";
}

namespace {

// Adds d to every variable >= cutoff.
LamP shift(const LamP& t, long d, std::size_t cutoff) {
    switch (t->k) {
        case Lam::K::Var:
            return t->var >= cutoff ? lvar(static_cast<std::size_t>(static_cast<long>(t->var) + d)) : t;
        case Lam::K::App: return lapp(shift(t->f, d, cutoff), shift(t->a, d, cutoff));
        case Lam::K::Abs: return labs(*t->dom, shift(t->f, d, cutoff + 1));
    }
    return t;
}

// t[j := s]
LamP subst(const LamP& t, std::size_t j, const LamP& s) {
    switch (t->k) {
        case Lam::K::Var: return t->var == j ? s : t;
        case Lam::K::App: return lapp(subst(t->f, j, s), subst(t->a, j, s));
        case Lam::K::Abs: return labs(*t->dom, subst(t->f, j + 1, shift(s, 1, 0)));
    }
    return t;
}

LamP beta(const LamP& abs, const LamP& arg) { return shift(subst(abs->f, 0, shift(arg, 1, 0)), -1, 0); }

// One leftmost-outermost step; nullptr when normal.
LamP step(const LamP& t) {
    switch (t->k) {
        case Lam::K::Var: return nullptr;
        case Lam::K::Abs: {
            LamP b = step(t->f);
            return b ? labs(*t->dom, b) : nullptr;
        }
        case Lam::K::App: {
            if (t->f->k == Lam::K::Abs) return beta(t->f, t->a);
            if (LamP f = step(t->f)) return lapp(f, t->a);
            if (LamP a = step(t->a)) return lapp(t->f, a);
            return nullptr;
        }
    }
    return nullptr;
}

MinFormula type_of(const LamP& t, const MinContext& gamma) {
    switch (t->k) {
        case Lam::K::Var:
            if (t->var >= gamma.size()) throw std::logic_error("unbound variable");
            return gamma[gamma.size() - 1 - t->var];
        case Lam::K::App: {
            MinFormula f = type_of(t->f, gamma);
            if (f.is_atom()) throw std::logic_error("ill-typed application");
            return f.rhs();
        }
        case Lam::K::Abs: {
            MinContext ext = gamma;
            ext.push_back(*t->dom);
            return MinFormula::imp(*t->dom, type_of(t->f, ext));
        }
    }
    throw std::logic_error("bad term");
}

}  // namespace

LamP beta_normal_form(const LamP& t, std::size_t budget) {
    LamP cur = t;
    while (budget-- > 0) {
        LamP next = step(cur);
        if (!next) return cur;
        cur = next;
    }
    throw std::runtime_error("beta reduction budget exhausted");
}

bool is_beta_normal(const LamP& t) { return step(t) == nullptr; }

LamP eta_long(const LamP& t, const MinContext& gamma, const MinFormula& a) {
    if (t->k == Lam::K::Abs) {
        MinContext ext = gamma;
        ext.push_back(*t->dom);
        return labs(*t->dom, eta_long(t->f, ext, a.rhs()));
    }
    // Neutral: expand the arguments of the spine, then the whole term.
    std::vector<LamP> args;
    LamP head = t;
    while (head->k == Lam::K::App) {
        args.push_back(head->a);
        head = head->f;
    }
    MinFormula ht = type_of(head, gamma);
    LamP out = head;
    for (auto it = args.rbegin(); it != args.rend(); ++it) {
        out = lapp(out, eta_long(*it, gamma, ht.lhs()));
        ht = ht.rhs();
    }
    if (a.is_atom()) return out;
    MinContext ext = gamma;
    ext.push_back(a.lhs());
    LamP x = eta_long(lvar(0), ext, a.lhs());
    return labs(a.lhs(), eta_long(lapp(shift(out, 1, 0), x), ext, a.rhs()));
}

bool is_eta_long(const LamP& t, const MinContext& gamma, const MinFormula& a) {
    if (!a.is_atom()) {
        if (t->k != Lam::K::Abs || !(*t->dom == a.lhs())) return false;
        MinContext ext = gamma;
        ext.push_back(a.lhs());
        return is_eta_long(t->f, ext, a.rhs());
    }
    std::vector<LamP> args;
    LamP head = t;
    while (head->k == Lam::K::App) {
        args.push_back(head->a);
        head = head->f;
    }
    if (head->k != Lam::K::Var) return false;
    MinFormula ht = type_of(head, gamma);
    for (auto it = args.rbegin(); it != args.rend(); ++it) {
        if (ht.is_atom() || !is_eta_long(*it, gamma, ht.lhs())) return false;
        ht = ht.rhs();
    }
    return ht == a;
}

}  // namespace henkin::support
