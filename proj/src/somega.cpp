#include "henkin/somega.hpp"

#include <algorithm>

#include "henkin/checker.hpp"
#include "henkin/text.hpp"

namespace henkin {

// ---------------------------------------------------------------------------
// Subset derivations

SubsetProof SubsetProof::i0(JProof g) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::I0;
    n->level = 0;
    n->g = std::move(g);
    return SubsetProof(std::move(n));
}

SubsetProof SubsetProof::isn(const BigNat& k, const SubsetProof& f) {
    if (k < 0) throw ExtractionError("negative I_S count");
    if (k == 0) return f;
    auto n = std::make_shared<Node>();
    n->kind = Kind::ISn;
    n->level = f.level() + k;
    if (f.kind() == Kind::ISn) {
        n->count = f.count() + k;
        n->inner = f.node_->inner;
    } else {
        n->count = k;
        n->inner = std::make_shared<const SubsetProof>(f);
    }
    return SubsetProof(std::move(n));
}

SubsetProof SubsetProof::wrap(Kind kind, const SubsetProof& f, Formula a, std::optional<VarId> w, RelConsK k) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->level = f.level() + 1;
    n->inner = std::make_shared<const SubsetProof>(f);
    n->formula = std::move(a);
    n->witness = std::move(w);
    n->k = std::move(k);
    return SubsetProof(std::move(n));
}

SubsetProof SubsetProof::iforall(const SubsetProof& f, Formula axiom, VarId witness) {
    return wrap(Kind::IForall, f, std::move(axiom), std::move(witness), nullptr);
}

SubsetProof SubsetProof::iexists(const SubsetProof& f, Formula axiom, VarId witness) {
    return wrap(Kind::IExists, f, std::move(axiom), std::move(witness), nullptr);
}

SubsetProof SubsetProof::iimp(const SubsetProof& f, Formula imp, RelConsK k) {
    if (!k) throw ExtractionError("I_imp needs a continuation");
    return wrap(Kind::IImp, f, std::move(imp), std::nullopt, std::move(k));
}

std::string SubsetProof::str() const {
    switch (kind()) {
        case Kind::I0: {
            std::string s = "I0[";
            for (std::size_t i = 0; i < g().size(); ++i) s += (i ? "," : "") + std::to_string(g()[i]);
            return s + "]";
        }
        case Kind::ISn: return "IS^" + count().str() + "(" + inner().str() + ")";
        case Kind::IForall: return "Iforall(" + inner().str() + ")";
        case Kind::IExists: return "Iexists(" + inner().str() + ")";
        case Kind::IImp: return "Iimp(" + inner().str() + ")";
    }
    return "?";
}

SubsetProof inj(const BigNat& n) { return SubsetProof::isn(n, SubsetProof::i0({})); }

HenkinContext context_of(const SubsetProof& f) {
    std::vector<const SubsetProof*> wraps;
    const SubsetProof* cur = &f;
    while (cur->kind() != SubsetProof::Kind::I0) {
        if (cur->is_wrap()) wraps.push_back(cur);
        cur = &cur->inner();
    }
    HenkinContext c;
    c.base = cur->g();
    for (auto it = wraps.rbegin(); it != wraps.rend(); ++it)
        c.added.push_back({(*it)->level(), (*it)->formula()});
    return c;
}

HenkinContext henkin_union(const HenkinContext& a, const HenkinContext& b) {
    HenkinContext u;
    u.base = a.base;
    u.base.insert(u.base.end(), b.base.begin(), b.base.end());
    std::size_t i = 0, j = 0;
    while (i < a.added.size() || j < b.added.size()) {
        if (j == b.added.size() || (i < a.added.size() && a.added[i].key < b.added[j].key)) {
            u.added.push_back(a.added[i++]);
        } else if (i == a.added.size() || b.added[j].key < a.added[i].key) {
            u.added.push_back(b.added[j++]);
        } else {
            if (!(a.added[i].formula == b.added[j].formula))
                throw ExtractionError("two formulas added at the same stage");
            u.added.push_back(a.added[i++]);
            ++j;
        }
    }
    return u;
}

Inclusion incl_prime(int side, const HenkinContext& a, const HenkinContext& b) {
    if (side != 1 && side != 2) throw ExtractionError("inclusion side must be 1 or 2");
    std::vector<bool> keep;
    keep.insert(keep.end(), a.base.size(), side == 1);
    keep.insert(keep.end(), b.base.size(), side == 2);
    keep.push_back(true);
    std::size_t i = 0, j = 0;
    while (i < a.added.size() || j < b.added.size()) {
        if (j == b.added.size() || (i < a.added.size() && a.added[i].key < b.added[j].key)) {
            keep.push_back(side == 1);
            ++i;
        } else if (i == a.added.size() || b.added[j].key < a.added[i].key) {
            keep.push_back(side == 2);
            ++j;
        } else {
            keep.push_back(true);
            ++i;
            ++j;
        }
    }
    return Inclusion(std::move(keep));
}

namespace {

using Kind = SubsetProof::Kind;

SubsetProof rewrap(const SubsetProof& node, const SubsetProof& inner) {
    switch (node.kind()) {
        case Kind::IForall: return SubsetProof::iforall(inner, node.formula(), node.witness());
        case Kind::IExists: return SubsetProof::iexists(inner, node.formula(), node.witness());
        case Kind::IImp: return SubsetProof::iimp(inner, node.formula(), node.kont());
        default: throw ExtractionError("rewrap of a non-extension node");
    }
}

// One I_S step down from an I_S run.
SubsetProof lower(const SubsetProof& f) { return SubsetProof::isn(f.count() - 1, f.inner()); }

SubsetProof join(const SubsetProof& f1, const SubsetProof& f2) {
    if (f1.kind() == Kind::I0 && f2.kind() == Kind::I0) {
        JProof g = f1.g();
        g.insert(g.end(), f2.g().begin(), f2.g().end());
        return SubsetProof::i0(std::move(g));
    }
    if (f1.kind() == Kind::ISn && f2.kind() == Kind::ISn) {
        BigNat k = std::min(f1.count(), f2.count());
        return SubsetProof::isn(k, hjoin(SubsetProof::isn(f1.count() - k, f1.inner()),
                                         SubsetProof::isn(f2.count() - k, f2.inner())));
    }
    if (f1.is_wrap()) {
        if (f2.is_wrap()) {
            if (f1.kind() != f2.kind() || !(f1.formula() == f2.formula()))
                throw ExtractionError("distinct formulas added at stage " + f1.level().str());
            return rewrap(f1, join(f1.inner(), f2.inner()));
        }
        if (f2.kind() != Kind::ISn) throw ExtractionError("malformed subset derivation");
        return rewrap(f1, join(f1.inner(), lower(f2)));
    }
    if (f2.is_wrap() && f1.kind() == Kind::ISn) return rewrap(f2, join(lower(f1), f2.inner()));
    throw ExtractionError("malformed subset derivation");
}

}  // namespace

SubsetProof hjoin(const SubsetProof& f1, const SubsetProof& f2) {
    const BigNat& n1 = f1.level();
    const BigNat& n2 = f2.level();
    if (n1 == n2) return join(f1, f2);
    if (n1 > n2) {
        if (f1.kind() == Kind::ISn) {
            if (f1.inner().level() >= n2) return SubsetProof::isn(f1.count(), hjoin(f1.inner(), f2));
            BigNat d = n1 - n2;
            return SubsetProof::isn(d, join(SubsetProof::isn(f1.count() - d, f1.inner()), f2));
        }
        return rewrap(f1, hjoin(f1.inner(), f2));
    }
    if (f2.kind() == Kind::ISn) {
        if (f2.inner().level() >= n1) return SubsetProof::isn(f2.count(), hjoin(f1, f2.inner()));
        BigNat d = n2 - n1;
        return SubsetProof::isn(d, join(f1, SubsetProof::isn(f2.count() - d, f2.inner())));
    }
    return rewrap(f2, hjoin(f1, f2.inner()));
}

// ---------------------------------------------------------------------------
// Extraction

Extraction::Extraction(Theory theory, Formula a0, Discipline d, bool trace)
    : theory_(std::move(theory)),
      a0_(a0),
      neg_a0_(Formula::neg(a0)),
      discipline_(d),
      tracing_(trace) {}

Context Extraction::base_context(const JProof& g) const {
    Context out;
    out.reserve(g.size());
    for (std::size_t i : g) out.push_back(theory_.member(i));
    return out;
}

Context Extraction::flatten(const HenkinContext& c) const {
    Context out = base_context(c.base);
    out.push_back(neg_a0_);
    for (const auto& a : c.added) out.push_back(a.formula);
    return out;
}

void Extraction::emit(std::string line) {
    if (tracing_) trace_.push_back(std::move(line));
}

Proof Extraction::weak(const Inclusion& w, const Proof& p) const {
    if (w.is_identity()) return p;
    if (p.rule() == Rule::Weak) return Proof::weak(w.after(p.incl()), p.kid(0));
    return Proof::weak(w, p);
}

Shared Extraction::share(const Member& a, const Member& b) {
    HenkinContext ca = context_of(a.f);
    HenkinContext cb = context_of(b.f);
    Shared s{hjoin(a.f, b.f), {}};
    s.proofs.push_back(weak(incl_prime(1, ca, cb), a.p));
    s.proofs.push_back(weak(incl_prime(2, ca, cb), b.p));
    if (tracing_) emit("SHARE n=" + s.f.level().str() + " [" + to_string(flatten(s.f)) + "]");
    return s;
}

Shared Extraction::share3(const Member& a, const Member& b, const Member& c) {
    Shared s1 = share(a, b);
    Member mid{s1.f, s1.proofs[1], b.formula};
    Shared s2 = share(mid, c);
    Inclusion w = incl_prime(1, context_of(s1.f), context_of(c.f));
    return Shared{s2.f, {weak(w, s1.proofs[0]), s2.proofs[0], s2.proofs[1]}};
}

BotInT Extraction::flush(const Member& q) {
    if (!q.formula.is(Connective::Bot)) throw ExtractionError("flush expects a member for _|_");
    SubsetProof f = q.f;
    Proof p = q.p;
    for (;;) {
        switch (f.kind()) {
            case Kind::I0:
                emit("FLUSH/I0 [" + to_string(base_context(f.g())) + "]");
                return BotInT{f.g(), p};
            case Kind::ISn:
                f = SubsetProof(f.inner());
                break;
            case Kind::IForall: {
                SubsetProof inner = f.inner();
                try {
                    check_drinker_premise(f.witness(), f.formula(), flatten(inner));
                } catch (const ProofError& e) {
                    throw ExtractionError(std::string("flush: ") + e.what());
                }
                emit("FLUSH/I∀ " + f.witness().str() + " : " + to_string(f.formula()));
                p = Proof::drinker(f.witness(), f.formula(), p);
                f = inner;
                break;
            }
            case Kind::IExists: {
                SubsetProof inner = f.inner();
                try {
                    check_henkin_ex_premise(f.witness(), f.formula(), flatten(inner));
                } catch (const ProofError& e) {
                    throw ExtractionError(std::string("flush: ") + e.what());
                }
                emit("FLUSH/I∃ " + f.witness().str() + " : " + to_string(f.formula()));
                p = Proof::henkin_ex(f.witness(), f.formula(), p);
                f = inner;
                break;
            }
            case Kind::IImp:
                emit("FLUSH/I⊃→k " + to_string(f.formula()));
                return f.kont()(Refutation{f.inner(), p, f.formula()});
        }
    }
}

Member Extraction::ax0() { return Member{SubsetProof::i0({}), Proof::ax(0), neg_a0_}; }

Member Extraction::ax_imp(const Formula& imp, RelConsK k) {
    Level l = level_of(imp, discipline_);
    if (l.cls != LevelClass::Imp) throw ExtractionError("ax_imp expects an implication");
    return Member{SubsetProof::iimp(henkin::inj(l.value), imp, std::move(k)), Proof::ax(0), imp};
}

Member Extraction::ax_forall(const Formula& all) {
    Level l = level_of(all, discipline_);
    if (l.cls != LevelClass::Forall) throw ExtractionError("ax_forall expects a universal formula");
    VarId w = henkin_witness(all);
    Formula axiom = Formula::imp(instantiate(all, Term::var(w)), all);
    return Member{SubsetProof::iforall(henkin::inj(l.value), axiom, w), Proof::ax(0), axiom};
}

Member Extraction::ax_exists(const Formula& ex) {
    Level l = level_of(ex, discipline_);
    if (l.cls != LevelClass::Exists) throw ExtractionError("ax_exists expects an existential formula");
    VarId w = henkin_witness(ex);
    Formula axiom = Formula::imp(ex, instantiate(ex, Term::var(w)));
    return Member{SubsetProof::iexists(henkin::inj(l.value), axiom, w), Proof::ax(0), axiom};
}

Member Extraction::bot(const BotInT& b) { return Member{SubsetProof::i0(b.g), b.p, Formula::bot()}; }

Member Extraction::app_imp(const Member& q, const Member& r) {
    if (!q.formula.is(Connective::Imp)) throw ExtractionError("APP expects an implication");
    Shared s = share(q, r);
    return Member{s.f, Proof::app(s.proofs[0], s.proofs[1]), q.formula.as_imp().rhs};
}

Member Extraction::app_forall(const Member& q, const Term& t) {
    if (!q.formula.is(Connective::Forall)) throw ExtractionError("APP-forall expects a universal formula");
    return Member{q.f, Proof::inst(q.p, t), instantiate(q.formula, t)};
}

Member Extraction::dn(const Member& q) {
    if (!q.formula.is_negation() || !q.formula.as_imp().lhs.is_negation())
        throw ExtractionError("DN expects a double negation");
    return Member{q.f, Proof::dn(q.p), q.formula.as_imp().lhs.as_imp().lhs};
}

Member Extraction::pi1(const Refutation& r) {
    return Member{r.f, Proof::pi1(r.h, r.p), r.h.as_imp().lhs};
}

Member Extraction::pi2(const Refutation& r) {
    return Member{r.f, Proof::pi2(r.h, r.p), Formula::neg(r.h.as_imp().rhs)};
}

Member Extraction::pair(const Member& q1, const Member& q2) {
    Shared s = share(q1, q2);
    return Member{s.f, Proof::pair(s.proofs[0], s.proofs[1]), Formula::conj(q1.formula, q2.formula)};
}

Member Extraction::proj(int i, const Member& q) {
    if (!q.formula.is(Connective::And)) throw ExtractionError("projection expects a conjunction");
    const auto& c = q.formula.as_and();
    return i == 1 ? Member{q.f, Proof::fst(q.p), c.lhs} : Member{q.f, Proof::snd(q.p), c.rhs};
}

Member Extraction::inj(int i, const Member& q, const Formula& other) {
    if (i == 1) return Member{q.f, Proof::inl(other, q.p), Formula::disj(q.formula, other)};
    return Member{q.f, Proof::inr(other, q.p), Formula::disj(other, q.formula)};
}

Member Extraction::cases(const Member& q, const Member& q1, const Member& q2) {
    if (!q1.formula.is(Connective::Imp)) throw ExtractionError("CASE expects implications");
    Shared s = share3(q, q1, q2);
    return Member{s.f, Proof::cases(s.proofs[0], s.proofs[1], s.proofs[2]), q1.formula.as_imp().rhs};
}

Member Extraction::exi(const Term& t, const Formula& ex, const Member& q) {
    return Member{q.f, Proof::exi(t, ex, q.p), ex};
}

Member Extraction::member_axiom(std::size_t i) {
    return Member{SubsetProof::i0({i}), Proof::ax(1), theory_.member(i)};
}

Member Extraction::efq(const BotInT& b, const Formula& a) {
    return Member{SubsetProof::i0(b.g), Proof::efq(a, b.p), a};
}

Proof Extraction::dnabs(const BotInT& b) const { return Proof::dn(Proof::lam(neg_a0_, b.p)); }

void Extraction::validate(const Member& q) const {
    Formula got = check_derived(q.p, flatten(q.f));
    if (!alpha_equal(got, q.formula))
        throw ExtractionError("member proves " + to_string(got) + ", expected " + to_string(q.formula));
}

}  // namespace henkin
