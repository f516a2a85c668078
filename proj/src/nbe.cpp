#include "henkin/nbe.hpp"

namespace henkin::nbe {

// ---------------------------------------------------------------------------
// Syntax

struct MinFormula::Rep {
    std::string name;  // empty for ->
    std::vector<MinFormula> kids;
};

MinFormula MinFormula::atom(std::string name) {
    if (name.empty()) throw MinError("atom name must be non-empty");
    auto r = std::make_shared<Rep>();
    r->name = std::move(name);
    return MinFormula(std::move(r));
}

MinFormula MinFormula::imp(MinFormula a, MinFormula b) {
    auto r = std::make_shared<Rep>();
    r->kids = {std::move(a), std::move(b)};
    return MinFormula(std::move(r));
}

bool MinFormula::is_atom() const { return !rep_->name.empty(); }
const std::string& MinFormula::name() const {
    if (!is_atom()) throw MinError("not an atom");
    return rep_->name;
}

const MinFormula& MinFormula::lhs() const {
    if (is_atom()) throw MinError("not an implication");
    return rep_->kids[0];
}
const MinFormula& MinFormula::rhs() const {
    if (is_atom()) throw MinError("not an implication");
    return rep_->kids[1];
}

std::string MinFormula::str() const {
    if (is_atom()) return name();
    std::string l = lhs().str();
    if (!lhs().is_atom()) l = "(" + l + ")";
    return l + " -> " + rhs().str();
}

bool operator==(const MinFormula& a, const MinFormula& b) {
    if (a.rep_ == b.rep_) return true;
    if (a.is_atom() || b.is_atom()) return a.is_atom() && b.is_atom() && a.name() == b.name();
    return a.lhs() == b.lhs() && a.rhs() == b.rhs();
}

struct MinProof::Rep {
    Kind kind;
    std::size_t index = 0;
    std::vector<MinFormula> dom;
    std::vector<MinProof> kids;
};

MinProof MinProof::ax(std::size_t i) {
    auto r = std::make_shared<Rep>();
    r->kind = Kind::Ax;
    r->index = i;
    return MinProof(std::move(r));
}

MinProof MinProof::app(MinProof f, MinProof a) {
    auto r = std::make_shared<Rep>();
    r->kind = Kind::App;
    r->kids = {std::move(f), std::move(a)};
    return MinProof(std::move(r));
}

MinProof MinProof::abs(MinFormula dom, MinProof body) {
    auto r = std::make_shared<Rep>();
    r->kind = Kind::Abs;
    r->dom = {std::move(dom)};
    r->kids = {std::move(body)};
    return MinProof(std::move(r));
}

MinProof::Kind MinProof::kind() const { return rep_->kind; }
std::size_t MinProof::index() const { return rep_->index; }
const MinProof& MinProof::fn() const {
    if (kind() != Kind::App) throw MinError("not an application");
    return rep_->kids[0];
}
const MinProof& MinProof::arg() const {
    if (kind() != Kind::App) throw MinError("not an application");
    return rep_->kids[1];
}
const MinFormula& MinProof::dom() const {
    if (kind() != Kind::Abs) throw MinError("not an abstraction");
    return rep_->dom[0];
}
const MinProof& MinProof::body() const {
    if (kind() != Kind::Abs) throw MinError("not an abstraction");
    return rep_->kids[0];
}

std::string MinProof::str() const {
    switch (kind()) {
        case Kind::Ax: return "(ax " + std::to_string(index()) + ")";
        case Kind::App: return "(app " + fn().str() + " " + arg().str() + ")";
        case Kind::Abs: return "(lam {" + dom().str() + "} " + body().str() + ")";
    }
    return {};
}

bool operator==(const MinProof& a, const MinProof& b) {
    if (a.rep_ == b.rep_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case MinProof::Kind::Ax: return a.index() == b.index();
        case MinProof::Kind::App: return a.fn() == b.fn() && a.arg() == b.arg();
        case MinProof::Kind::Abs: return a.dom() == b.dom() && a.body() == b.body();
    }
    return false;
}

MinFormula check_min(const MinProof& p, const MinContext& gamma) {
    switch (p.kind()) {
        case MinProof::Kind::Ax:
            if (p.index() >= gamma.size())
                throw MinError("ax " + std::to_string(p.index()) + " out of range in a context of size " +
                               std::to_string(gamma.size()));
            return gamma[gamma.size() - 1 - p.index()];
        case MinProof::Kind::App: {
            MinFormula f = check_min(p.fn(), gamma);
            MinFormula a = check_min(p.arg(), gamma);
            if (f.is_atom()) throw MinError("app: " + f.str() + " is not an implication");
            if (!(f.lhs() == a)) throw MinError("app: expected " + f.lhs().str() + ", got " + a.str());
            return f.rhs();
        }
        case MinProof::Kind::Abs: {
            MinContext ext = gamma;
            ext.push_back(p.dom());
            return MinFormula::imp(p.dom(), check_min(p.body(), ext));
        }
    }
    throw MinError("unknown proof node");
}

MinProof weaken_min(const Inclusion& h, const MinProof& p) {
    switch (p.kind()) {
        case MinProof::Kind::Ax: return MinProof::ax(h.map_index(p.index()));
        case MinProof::Kind::App: return MinProof::app(weaken_min(h, p.fn()), weaken_min(h, p.arg()));
        case MinProof::Kind::Abs: return MinProof::abs(p.dom(), weaken_min(h.keep(), p.body()));
    }
    throw MinError("unknown proof node");
}

std::size_t size(const MinProof& p) {
    switch (p.kind()) {
        case MinProof::Kind::Ax: return 1;
        case MinProof::Kind::App: return 1 + size(p.fn()) + size(p.arg());
        case MinProof::Kind::Abs: return 1 + size(p.body());
    }
    return 0;
}

MinFormula to_min(const Formula& a) {
    if (a.is(Connective::Atom)) {
        if (!a.as_atom().args.empty()) throw MinError("minimal logic atoms take no arguments");
        return MinFormula::atom(a.as_atom().pred);
    }
    if (a.is(Connective::Imp)) return MinFormula::imp(to_min(a.as_imp().lhs), to_min(a.as_imp().rhs));
    throw MinError("minimal logic has atoms and -> only");
}

MinProof to_min(const Proof& p) {
    switch (p.rule()) {
        case Rule::Ax: return MinProof::ax(p.index());
        case Rule::AppImp: return MinProof::app(to_min(p.kid(0)), to_min(p.kid(1)));
        case Rule::AbsImp: return MinProof::abs(to_min(p.formula()), to_min(p.kid(0)));
        default: throw MinError(std::string("rule ") + rule_name(p.rule()) + " is not minimal");
    }
}

MinContext to_min(const Context& gamma) {
    MinContext out;
    out.reserve(gamma.size());
    for (const auto& a : gamma) out.push_back(to_min(a));
    return out;
}

Formula from_min(const MinFormula& a) {
    if (a.is_atom()) return Formula::atom(a.name());
    return Formula::imp(from_min(a.lhs()), from_min(a.rhs()));
}

Proof from_min(const MinProof& p) {
    switch (p.kind()) {
        case MinProof::Kind::Ax: return Proof::ax(p.index());
        case MinProof::Kind::App: return Proof::app(from_min(p.fn()), from_min(p.arg()));
        case MinProof::Kind::Abs: return Proof::lam(from_min(p.dom()), from_min(p.body()));
    }
    throw MinError("unknown proof node");
}

// ---------------------------------------------------------------------------
// Kripke semantics

struct KripkeValue::Rep {
    bool atom;
    std::any payload;
    Fn fn;
};

KripkeValue KripkeValue::atom(std::any payload) {
    return KripkeValue(std::make_shared<const Rep>(Rep{true, std::move(payload), {}}));
}
KripkeValue KripkeValue::fun(Fn f) { return KripkeValue(std::make_shared<const Rep>(Rep{false, {}, std::move(f)})); }
bool KripkeValue::is_atom() const { return rep_->atom; }
const std::any& KripkeValue::payload() const {
    if (!is_atom()) throw MinError("forcing value is not atomic");
    return rep_->payload;
}
KripkeValue KripkeValue::apply(const World& w, const Le& h, const KripkeValue& x) const {
    if (is_atom()) throw MinError("forcing value is not a function");
    return rep_->fn(w, h, x);
}

KripkeValue mono_lift(const KripkeModel& k, const MinFormula& a, const World& w, const World& w2, const Le& h,
                      const KripkeValue& m) {
    if (a.is_atom()) return KripkeValue::atom(k.mono_atom(a.name(), w, w2, h, m.payload()));
    return KripkeValue::fun([k, h, m](const World& w3, const Le& h2, const KripkeValue& x) {
        return m.apply(w3, k.trans(h, h2), x);
    });
}

KripkeValue soundness_min(const MinProof& p, const MinContext& gamma, const std::vector<KripkeValue>& env,
                          const KripkeModel& k, const World& w) {
    if (env.size() != gamma.size()) throw MinError("environment does not match the context");
    switch (p.kind()) {
        case MinProof::Kind::Ax:
            if (p.index() >= env.size()) throw MinError("ax out of range");
            return env[env.size() - 1 - p.index()];
        case MinProof::Kind::App: {
            KripkeValue f = soundness_min(p.fn(), gamma, env, k, w);
            return f.apply(w, k.refl(w), soundness_min(p.arg(), gamma, env, k, w));
        }
        case MinProof::Kind::Abs: {
            MinProof body = p.body();
            MinContext ext = gamma;
            ext.push_back(p.dom());
            return KripkeValue::fun([body, gamma, ext, env, k, w](const World& w2, const Le& h, const KripkeValue& x) {
                std::vector<KripkeValue> lifted;
                lifted.reserve(env.size() + 1);
                for (std::size_t i = 0; i < env.size(); ++i) lifted.push_back(mono_lift(k, gamma[i], w, w2, h, env[i]));
                lifted.push_back(x);
                return soundness_min(body, ext, lifted, k, w2);
            });
        }
    }
    throw MinError("unknown proof node");
}

// ---------------------------------------------------------------------------
// Universal model

namespace {

const MinContext& world(const World& w) {
    if (const auto* g = std::any_cast<MinContext>(&w)) return *g;
    throw MinError("world of the universal model is not a context");
}

const Inclusion& incl(const Le& h) {
    if (const auto* i = std::any_cast<Inclusion>(&h)) return *i;
    throw MinError("ordering witness of the universal model is not an inclusion");
}

const MinProof& proof_payload(const std::any& m) {
    if (const auto* p = std::any_cast<MinProof>(&m)) return *p;
    throw MinError("atomic forcing in the universal model is not a proof");
}

}  // namespace

KripkeModel universal_model() {
    KripkeModel k;
    k.refl = [](const World& w) -> Le { return Inclusion::identity(world(w).size()); };
    k.trans = [](const Le& h, const Le& h2) -> Le { return incl(h2).after(incl(h)); };
    k.mono_atom = [](const std::string&, const World&, const World&, const Le& h, const std::any& m) -> std::any {
        return weaken_min(incl(h), proof_payload(m));
    };
    return k;
}

MinProof reify_min(const MinContext& gamma, const MinFormula& a, const KripkeValue& m) {
    if (a.is_atom()) return proof_payload(m.payload());
    MinContext ext = gamma;
    ext.push_back(a.lhs());
    KripkeValue x = reflect_min(ext, a.lhs(), MinProof::ax(0));
    KripkeValue r = m.apply(World(ext), Le(Inclusion::prefix(gamma.size(), 1)), x);
    return MinProof::abs(a.lhs(), reify_min(ext, a.rhs(), r));
}

KripkeValue reflect_min(const MinContext& gamma, const MinFormula& a, const MinProof& p) {
    if (a.is_atom()) return KripkeValue::atom(p);
    MinFormula dom = a.lhs();
    MinFormula cod = a.rhs();
    (void)gamma;
    return KripkeValue::fun([dom, cod, p](const World& w2, const Le& h, const KripkeValue& x) {
        const MinContext& g2 = world(w2);
        return reflect_min(g2, cod, MinProof::app(weaken_min(incl(h), p), reify_min(g2, dom, x)));
    });
}

std::vector<KripkeValue> init_min(const MinContext& gamma) {
    std::vector<KripkeValue> env;
    env.reserve(gamma.size());
    for (std::size_t i = 0; i < gamma.size(); ++i)
        env.push_back(reflect_min(gamma, gamma[i], MinProof::ax(gamma.size() - 1 - i)));
    return env;
}

MinProof normalize(const MinProof& p, const MinContext& gamma) {
    MinFormula a = check_min(p, gamma);
    KripkeValue v = soundness_min(p, gamma, init_min(gamma), universal_model(), World(gamma));
    return reify_min(gamma, a, v);
}

}  // namespace henkin::nbe
