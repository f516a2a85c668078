#include "henkin/kont.hpp"

#include <pthread.h>

#include <exception>
#include <optional>
#include <type_traits>

#include "henkin/text.hpp"

namespace henkin {

namespace {

void expect_formula(const Member& q, const Formula& want) {
    if (!alpha_equal(q.formula, want))
        throw ExtractionError("reify: evidence for " + to_string(q.formula) + " used at " + to_string(want));
}

void expect_shape(const SemValue& m, const Formula& a) {
    if (!shape_check(m, a)) throw ExtractionError("truth value does not have the shape of " + to_string(a));
}

// A value of ~~A, read as a computation in Kont(A).
Kont<SemValue> as_kont(const SemValue& nn) {
    return [nn](const KontArg<SemValue>& k) {
        SemValue neg = SemValue::imp([k](const SemValue& v) { return SemValue::bot(k(v)); });
        return nn.apply(neg).payload_as<BotInT>();
    };
}

// Every replay runs the consumer again inside the continuation of the
// previous run, so the native stack grows with the replay count.
constexpr std::size_t kReplayStack = std::size_t{1} << 30;

template <class F, class R = std::invoke_result_t<F&>>
R on_large_stack(F body) {
    struct Job {
        F* body;
        std::optional<R> out;
        std::exception_ptr error;
    } job{&body, std::nullopt, nullptr};
    auto entry = [](void* arg) -> void* {
        auto* j = static_cast<Job*>(arg);
        try {
            j->out.emplace((*j->body)());
        } catch (...) {
            j->error = std::current_exception();
        }
        return nullptr;
    };
    pthread_attr_t attr;
    pthread_attr_init(&attr);
    pthread_attr_setstacksize(&attr, kReplayStack);
    pthread_t tid;
    int rc = pthread_create(&tid, &attr, entry, &job);
    pthread_attr_destroy(&attr);
    if (rc != 0) return body();
    pthread_join(tid, nullptr);
    if (job.error) std::rethrow_exception(job.error);
    return std::move(*job.out);
}

}  // namespace

namespace detail {

void over_bound(const ReplayState& st) {
    std::string list;
    std::size_t shown = std::min<std::size_t>(st.demands.size(), 16);
    for (std::size_t j = 0; j < shown; ++j) list += (j ? ", " : "") + st.demands[j];
    if (shown < st.demands.size()) list += " and " + std::to_string(st.demands.size() - shown) + " more";
    throw ExtractionError("replay bound " + std::to_string(st.bound) + " exceeded; demands: " + list);
}

}  // namespace detail

Kont<SemValue> dns_and(Kont<SemValue> h1, Kont<SemValue> h2) {
    return [h1, h2](const KontArg<SemValue>& k) {
        return h1([h2, k](const SemValue& m1) {
            return h2([m1, k](const SemValue& m2) { return k(SemValue::pair(m1, m2)); });
        });
    };
}

SemValue KontEngine::efq_truth(const Formula& a, const Substitution& sigma, const BotInT& b) const {
    switch (a.connective()) {
        case Connective::Atom:
            return SemValue::atom(run_->efq(b, subst_formula(a, sigma)));
        case Connective::Bot:
            return SemValue::bot(b);
        case Connective::Imp: {
            SemValue rhs = efq_truth(a.as_imp().rhs, sigma, b);
            return SemValue::imp([rhs](const SemValue&) { return rhs; });
        }
        case Connective::Forall: {
            KontEngine self = *this;
            VarId x = a.bound_var();
            Formula body = a.body();
            return SemValue::forall([self, x, body, sigma, b](const Individual& d) {
                return self.efq_truth(body, sigma.with(x, as_term(d)), b);
            });
        }
        case Connective::And: {
            const auto& [lhs, rhs] = a.as_and();
            return SemValue::pair(efq_truth(lhs, sigma, b), efq_truth(rhs, sigma, b));
        }
        case Connective::Or:
            return SemValue::inj(1, efq_truth(a.as_or().lhs, sigma, b));
        case Connective::Exists: {
            Term e = Term::var(VarId::user("e0"));
            return SemValue::ex(e, efq_truth(a.body(), sigma.with(a.bound_var(), e), b));
        }
    }
    throw ExtractionError("efq_truth: unknown connective");
}

Kont<SemValue> KontEngine::dns_imp(const Formula& b, const Substitution& sigma,
                                   std::function<Kont<SemValue>(const SemValue&)> h) const {
    KontEngine self = *this;
    return [self, b, sigma, h](const KontArg<SemValue>& k) {
        return k(SemValue::imp([self, b, sigma, h, k](const SemValue& ma) {
            BotInT r = h(ma)([k](const SemValue& mb) { return k(SemValue::imp([mb](const SemValue&) { return mb; })); });
            return self.efq_truth(b, sigma, r);
        }));
    };
}

Member KontEngine::reify(const Formula& a, const Substitution& sigma, const SemValue& m) const {
    expect_shape(m, a);
    switch (a.connective()) {
        case Connective::Atom: {
            const Member& q = m.payload_as<Member>();
            expect_formula(q, subst_formula(a, sigma));
            return q;
        }
        case Connective::Bot:
            return run_->bot(m.payload_as<BotInT>());
        case Connective::Imp: {
            const auto& [lhs, rhs] = a.as_imp();
            return run_->ax_imp(subst_formula(a, sigma), kont_imp(lhs, rhs, sigma, m));
        }
        case Connective::Forall: {
            Member ax = run_->ax_forall(subst_formula(a, sigma));
            Term w = Term::var(ax.f.witness());
            return run_->app_imp(ax, reify(a.body(), sigma.with(a.bound_var(), w), m.at(w)));
        }
        case Connective::And: {
            const auto& [lhs, rhs] = a.as_and();
            return run_->pair(reify(lhs, sigma, m.fst()), reify(rhs, sigma, m.snd()));
        }
        case Connective::Or: {
            const auto& [lhs, rhs] = a.as_or();
            if (m.tag() == 1) return run_->inj(1, reify(lhs, sigma, m.inner()), subst_formula(rhs, sigma));
            return run_->inj(2, reify(rhs, sigma, m.inner()), subst_formula(lhs, sigma));
        }
        case Connective::Exists: {
            Term t = as_term(m.witness());
            return run_->exi(t, subst_formula(a, sigma), reify(a.body(), sigma.with(a.bound_var(), t), m.inner()));
        }
    }
    throw ExtractionError("reify: unknown connective");
}

Kont<SemValue> KontEngine::reflect(const Formula& a, const Substitution& sigma, const Member& q) const {
    KontEngine self = *this;
    switch (a.connective()) {
        case Connective::Atom:
            return kont_unit(SemValue::atom(q));
        case Connective::Bot:
            return [self, q](const KontArg<SemValue>&) { return self.run_->flush(q); };
        case Connective::Imp: {
            Formula lhs = a.as_imp().lhs;
            Formula rhs = a.as_imp().rhs;
            return dns_imp(rhs, sigma, [self, lhs, rhs, sigma, q](const SemValue& m) {
                return self.reflect(rhs, sigma, self.run_->app_imp(q, self.reify(lhs, sigma, m)));
            });
        }
        case Connective::Forall: {
            VarId x = a.bound_var();
            Formula body = a.body();
            auto fam = dns_forall<Term>(
                st_,
                [self, x, body, sigma, q](const Term& t) {
                    return self.reflect(body, sigma.with(x, t), self.run_->app_forall(q, t));
                },
                [](const Term& t) { return to_string(t); });
            return [fam](const KontArg<SemValue>& k) {
                return fam([k](const Family<Term>& f) {
                    return k(SemValue::forall([f](const Individual& d) { return f(as_term(d)); }));
                });
            };
        }
        case Connective::And: {
            const auto& [lhs, rhs] = a.as_and();
            Formula l = lhs, r = rhs;
            return [self, l, r, sigma, q](const KontArg<SemValue>& k) {
                Member q1 = self.run_->proj(1, q);
                Member q2 = self.run_->proj(2, q);
                return dns_and(self.reflect(l, sigma, q1), self.reflect(r, sigma, q2))(k);
            };
        }
        case Connective::Or: {
            Formula l = a.as_or().lhs;
            Formula r = a.as_or().rhs;
            return [self, l, r, sigma, q](const KontArg<SemValue>& k) {
                Extraction& run = *self.run_;
                Member c1 = run.ax_imp(Formula::neg(subst_formula(l, sigma)), self.kont_or(1, l, sigma, k));
                Member c2 = run.ax_imp(Formula::neg(subst_formula(r, sigma)), self.kont_or(2, r, sigma, k));
                return run.flush(run.cases(q, c1, c2));
            };
        }
        case Connective::Exists: {
            Formula ex = a;
            return [self, ex, sigma, q](const KontArg<SemValue>& k) {
                Extraction& run = *self.run_;
                Member ax = run.ax_exists(subst_formula(ex, sigma));
                Term w = Term::var(ax.f.witness());
                Member body = run.app_imp(ax, q);
                return self.reflect(ex.body(), sigma.with(ex.bound_var(), w), body)(
                    [k, w](const SemValue& m) { return k(SemValue::ex(w, m)); });
            };
        }
    }
    throw ExtractionError("reflect: unknown connective");
}

RelConsK KontEngine::kont_imp(const Formula& a, const Formula& b, const Substitution& sigma,
                              const SemValue& m) const {
    KontEngine self = *this;
    return [self, a, b, sigma, m](const Refutation& r) {
        Extraction& run = *self.run_;
        Member neg_b = run.pi2(r);
        return self.reflect(a, sigma, run.pi1(r))([self, b, sigma, m, neg_b](const SemValue& ma) {
            return self.run_->flush(self.run_->app_imp(neg_b, self.reify(b, sigma, m.apply(ma))));
        });
    };
}

RelConsK KontEngine::kont_or(int i, const Formula& ai, const Substitution& sigma,
                             const KontArg<SemValue>& k) const {
    KontEngine self = *this;
    return [self, i, ai, sigma, k](const Refutation& r) {
        return self.reflect(ai, sigma, self.run_->pi1(r))([i, k](const SemValue& m) {
            return k(SemValue::inj(i, m));
        });
    };
}

Kont<Family<Formula>> KontEngine::classic0() const {
    KontEngine self = *this;
    return dns_forall<Formula>(
        st_,
        [self](const Formula& a) {
            return self.dns_imp(a, Substitution(), [](const SemValue& nn) { return as_kont(nn); });
        },
        [](const Formula& a) { return to_string(a); });
}

Kont<std::vector<SemValue>> KontEngine::init0() const {
    KontEngine self = *this;
    std::size_t n = run_->theory().size();
    // Right-nested chain of reflections, one per member.
    return [self, n](const KontArg<std::vector<SemValue>>& k) {
        std::function<BotInT(std::size_t, std::vector<SemValue>)> go = [&](std::size_t i,
                                                                          std::vector<SemValue> acc) -> BotInT {
            if (i == n) return k(acc);
            Extraction& run = *self.run_;
            return self.reflect(run.theory().member(i), Substitution(), run.member_axiom(i))(
                [&go, i, acc](const SemValue& v) {
                    std::vector<SemValue> next = acc;
                    next.push_back(v);
                    return go(i + 1, std::move(next));
                });
        };
        return go(0, {});
    };
}

ModelBundle KontEngine::m0_bundle(Family<Formula> classic, std::vector<SemValue> init) const {
    ModelBundle m;
    m.name = "M0'";
    m.fun_interp = [](const std::string& f, const std::vector<Individual>& args) -> Individual {
        std::vector<Term> ts;
        ts.reserve(args.size());
        for (const auto& d : args) ts.push_back(as_term(d));
        return Term::app(f, std::move(ts));
    };
    m.classic = [classic](const Formula& a, const Assignment& sigma) {
        return classic(subst_formula(a, to_substitution(sigma)));
    };
    auto vals = std::make_shared<const std::vector<SemValue>>(std::move(init));
    m.theory_truth = [vals](std::size_t i, const Assignment& sigma) {
        if (!to_substitution(sigma).empty())
            throw ExtractionError("theory truth in M0 is only available at the identity assignment");
        if (i >= vals->size()) throw ExtractionError("theory member index out of range");
        return (*vals)[i];
    };
    return m;
}

Extracted complete_prime(const Theory& theory, const Formula& a0, const ValidityWitness& psi,
                         const ExtractOptions& opts) {
    check_extraction_input(theory, a0, psi);
    Extraction run(theory, a0, Discipline::ThreeClass, opts.trace);
    auto st = std::make_shared<ReplayState>();
    st->bound = opts.max_replays;
    st->run = &run;
    KontEngine engine(run, st);
    BotInT b = on_large_stack([&] {
        try {
            return engine.classic0()([&](const Family<Formula>& c) {
                return engine.init0()([&, c](const std::vector<SemValue>& vals) {
                    ModelBundle m0 = engine.m0_bundle(c, vals);
                    SemValue v = psi.run(m0, identity_assignment());
                    return run.flush(run.app_imp(run.ax0(), engine.reify(a0, Substitution(), v)));
                });
            });
        } catch (Demand<Formula>&) {
            throw ExtractionError("classical axiom demanded outside its replay frame");
        } catch (Demand<Term>&) {
            throw ExtractionError("universal instance demanded outside its replay frame");
        }
    });
    Extracted r = finish_extraction(run, b);
    r.replays = st->replays;
    return r;
}

}  // namespace henkin
