#include "henkin/proof.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace henkin {

// ---------------------------------------------------------------------------
// Inclusion

Inclusion Inclusion::parse(const std::string& steps) {
    std::vector<bool> keep;
    keep.reserve(steps.size());
    for (char c : steps) {
        if (c == 'S') keep.push_back(true);
        else if (c == 'N') keep.push_back(false);
        else throw ProofError(std::string("bad inclusion step '") + c + "'");
    }
    return Inclusion(std::move(keep));
}

Inclusion Inclusion::skip() const {
    Inclusion r = *this;
    r.keep_.push_back(false);
    return r;
}

Inclusion Inclusion::keep() const {
    Inclusion r = *this;
    r.keep_.push_back(true);
    return r;
}

std::size_t Inclusion::source_size() const {
    return static_cast<std::size_t>(std::count(keep_.begin(), keep_.end(), true));
}

bool Inclusion::is_identity() const {
    return std::all_of(keep_.begin(), keep_.end(), [](bool b) { return b; });
}

std::size_t Inclusion::map_index(std::size_t i) const {
    std::size_t n = keep_.size();
    for (std::size_t pos = 0; pos < n; ++pos) {
        if (!keep_[n - 1 - pos]) continue;
        if (i == 0) return pos;
        --i;
    }
    throw ProofError("inclusion does not cover hypothesis index");
}

Context Inclusion::source(const Context& target) const {
    if (target.size() != keep_.size())
        throw ProofError("inclusion witness expects a context of length " +
                         std::to_string(keep_.size()) + ", got " + std::to_string(target.size()));
    Context out;
    for (std::size_t j = 0; j < keep_.size(); ++j)
        if (keep_[j]) out.push_back(target[j]);
    return out;
}

Inclusion Inclusion::after(const Inclusion& inner) const {
    if (source_size() != inner.target_size()) throw ProofError("inclusions do not compose");
    std::vector<bool> out;
    out.reserve(keep_.size());
    std::size_t k = 0;
    for (bool b : keep_) out.push_back(b ? inner.keep_[k++] : false);
    return Inclusion(std::move(out));
}

Inclusion Inclusion::prefix(std::size_t n, std::size_t extra) {
    std::vector<bool> keep(n, true);
    keep.resize(n + extra, false);
    return Inclusion(std::move(keep));
}

std::string Inclusion::str() const {
    std::string s;
    for (bool b : keep_) s += b ? 'S' : 'N';
    return s;
}

// ---------------------------------------------------------------------------
// Rules

bool is_primitive_rule(Rule r) { return static_cast<unsigned>(r) <= static_cast<unsigned>(Rule::ExElim); }

const char* rule_name(Rule r) {
    switch (r) {
        case Rule::Ax: return "ax";
        case Rule::Dn: return "dn";
        case Rule::AppImp: return "app";
        case Rule::AppForall: return "inst";
        case Rule::AbsImp: return "lam";
        case Rule::AbsForall: return "gen";
        case Rule::Pair: return "pair";
        case Rule::Proj1: return "fst";
        case Rule::Proj2: return "snd";
        case Rule::Inj1: return "inl";
        case Rule::Inj2: return "inr";
        case Rule::Case: return "case";
        case Rule::ExIntro: return "exi";
        case Rule::ExElim: return "exe";
        case Rule::Weak: return "weak";
        case Rule::Efq: return "efq";
        case Rule::Pi1: return "pi1";
        case Rule::Pi2: return "pi2";
        case Rule::Drinker: return "drinker";
        case Rule::HenkinEx: return "henkin-ex";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Constructors

namespace {

Proof::Node make(Rule r, std::vector<Proof> kids) {
    Proof::Node n;
    n.rule = r;
    n.kids = std::move(kids);
    return n;
}

}  // namespace

Proof Proof::ax(std::size_t i) {
    Node n;
    n.index = i;
    return Proof(std::move(n));
}

Proof Proof::dn(Proof p) { return Proof(make(Rule::Dn, {std::move(p)})); }

Proof Proof::app(Proof p, Proof q) { return Proof(make(Rule::AppImp, {std::move(p), std::move(q)})); }

Proof Proof::inst(Proof p, Term t) {
    Node n = make(Rule::AppForall, {std::move(p)});
    n.term = std::move(t);
    return Proof(std::move(n));
}

Proof Proof::lam(Formula a, Proof p) {
    Node n = make(Rule::AbsImp, {std::move(p)});
    n.formula = std::move(a);
    return Proof(std::move(n));
}

Proof Proof::gen(VarId y, Proof p, std::optional<VarId> binder) {
    Node n = make(Rule::AbsForall, {std::move(p)});
    if (binder && *binder == y) binder.reset();
    n.var = std::move(y);
    n.binder = std::move(binder);
    return Proof(std::move(n));
}

Proof Proof::pair(Proof p, Proof q) { return Proof(make(Rule::Pair, {std::move(p), std::move(q)})); }
Proof Proof::fst(Proof p) { return Proof(make(Rule::Proj1, {std::move(p)})); }
Proof Proof::snd(Proof p) { return Proof(make(Rule::Proj2, {std::move(p)})); }

Proof Proof::inl(Formula right, Proof p) {
    Node n = make(Rule::Inj1, {std::move(p)});
    n.formula = std::move(right);
    return Proof(std::move(n));
}

Proof Proof::inr(Formula left, Proof p) {
    Node n = make(Rule::Inj2, {std::move(p)});
    n.formula = std::move(left);
    return Proof(std::move(n));
}

Proof Proof::cases(Proof p, Proof q, Proof r) {
    return Proof(make(Rule::Case, {std::move(p), std::move(q), std::move(r)}));
}

Proof Proof::exi(Term t, Formula exists, Proof p) {
    Node n = make(Rule::ExIntro, {std::move(p)});
    n.term = std::move(t);
    n.formula = std::move(exists);
    return Proof(std::move(n));
}

Proof Proof::exe(Proof p, Proof q) { return Proof(make(Rule::ExElim, {std::move(p), std::move(q)})); }

Proof Proof::weak(Inclusion w, Proof p) {
    Node n = make(Rule::Weak, {std::move(p)});
    n.incl = std::move(w);
    return Proof(std::move(n));
}

Proof Proof::efq(Formula a, Proof p) {
    Node n = make(Rule::Efq, {std::move(p)});
    n.formula = std::move(a);
    return Proof(std::move(n));
}

Proof Proof::pi1(Formula h, Proof p) {
    Node n = make(Rule::Pi1, {std::move(p)});
    n.formula = std::move(h);
    return Proof(std::move(n));
}

Proof Proof::pi2(Formula h, Proof p) {
    Node n = make(Rule::Pi2, {std::move(p)});
    n.formula = std::move(h);
    return Proof(std::move(n));
}

Proof Proof::drinker(VarId y, Formula h, Proof p) {
    Node n = make(Rule::Drinker, {std::move(p)});
    n.var = std::move(y);
    n.formula = std::move(h);
    return Proof(std::move(n));
}

Proof Proof::henkin_ex(VarId x, Formula h, Proof p) {
    Node n = make(Rule::HenkinEx, {std::move(p)});
    n.var = std::move(x);
    n.formula = std::move(h);
    return Proof(std::move(n));
}

Proof Proof::with_kids(std::vector<Proof> kids) const {
    Node n = *node_;
    n.kids = std::move(kids);
    return Proof(std::move(n));
}

bool operator==(const Proof& a, const Proof& b) {
    if (a.node_ == b.node_) return true;
    const Proof::Node& x = *a.node_;
    const Proof::Node& y = *b.node_;
    return x.rule == y.rule && x.index == y.index && x.formula == y.formula && x.term == y.term &&
           x.var == y.var && x.binder == y.binder && x.incl == y.incl && x.kids == y.kids;
}

namespace {

using Seen = std::unordered_set<const Proof::Node*>;

bool primitive_walk(const Proof& p, Seen& seen) {
    if (!seen.insert(&p.node()).second) return true;
    if (!is_primitive_rule(p.rule())) return false;
    return std::all_of(p.kids().begin(), p.kids().end(), [&](const Proof& k) { return primitive_walk(k, seen); });
}

std::size_t size_walk(const Proof& p, std::unordered_map<const Proof::Node*, std::size_t>& memo) {
    if (auto it = memo.find(&p.node()); it != memo.end()) return it->second;
    std::size_t n = 1;
    for (const auto& k : p.kids()) n += size_walk(k, memo);
    memo.emplace(&p.node(), n);
    return n;
}

}  // namespace

bool is_primitive(const Proof& p) {
    Seen seen;
    return primitive_walk(p, seen);
}

std::size_t size(const Proof& p) {
    std::unordered_map<const Proof::Node*, std::size_t> memo;
    return size_walk(p, memo);
}

std::size_t dag_size(const Proof& p) {
    Seen seen;
    std::vector<const Proof*> todo{&p};
    while (!todo.empty()) {
        const Proof* q = todo.back();
        todo.pop_back();
        if (!seen.insert(&q->node()).second) continue;
        for (const auto& k : q->kids()) todo.push_back(&k);
    }
    return seen.size();
}

namespace {

void collect_proof_vars(const Proof& p, VarSet& out, Seen& seen) {
    if (!seen.insert(&p.node()).second) return;
    const auto& n = p.node();
    if (n.formula) {
        VarSet v = all_vars(*n.formula);
        out.insert(v.begin(), v.end());
    }
    if (n.term) {
        VarSet v = free_vars(*n.term);
        out.insert(v.begin(), v.end());
    }
    if (n.var) out.insert(*n.var);
    if (n.binder) out.insert(*n.binder);
    for (const auto& k : n.kids) collect_proof_vars(k, out, seen);
}

}  // namespace

VarSet proof_vars(const Proof& p) {
    VarSet out;
    Seen seen;
    collect_proof_vars(p, out, seen);
    return out;
}

}  // namespace henkin
