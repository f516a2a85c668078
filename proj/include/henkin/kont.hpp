// Completeness extraction with disjunction and existentials.
//
// Reflection now lands in the continuation monad
//   Kont(V) = (V -> T0,~A0 |- _|_) -> T0,~A0 |- _|_
// and the double-negation shift over a family (DNS forall) is realised by
// replaying the consumer: an unknown index aborts the run, the producer for
// that index is evaluated, and the consumer is restarted with a larger cache.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "henkin/core.hpp"

namespace henkin {

template <class V>
using KontArg = std::function<BotInT(const V&)>;
template <class V>
using Kont = std::function<BotInT(const KontArg<V>&)>;

template <class V>
Kont<V> kont_unit(V v) {
    return [v](const KontArg<V>& k) { return k(v); };
}

// Run-local replay bookkeeping shared by every DNS-forall frame of one run.
struct ReplayState {
    std::size_t bound = 1024;
    std::size_t replays = 0;
    std::uint64_t next_frame = 0;
    Extraction* run = nullptr;  // for REPLAY trace events
    std::vector<std::string> demands;
};

// Control token thrown by a lookup that misses its frame's cache. It does
// not derive from std::exception so generic handlers do not swallow it.
template <class Key>
struct Demand {
    std::uint64_t frame;
    Key key;
};

template <class Key>
using Family = std::function<SemValue(const Key&)>;

namespace detail {

template <class Key>
using Cache = std::map<Key, SemValue>;

[[noreturn]] void over_bound(const ReplayState& st);

// Lookups consult the branch's own answers first, then the latest answer
// learned anywhere in the frame. The fallback serves families captured by
// closures from earlier runs; resuming a branch restores its own answers.
template <class Key>
BotInT replay_from(const std::shared_ptr<ReplayState>& st, std::uint64_t frame,
                   const std::function<Kont<SemValue>(const Key&)>& h, const KontArg<Family<Key>>& k,
                   const Cache<Key>& branch, const std::shared_ptr<Cache<Key>>& learned,
                   const std::function<std::string(const Key&)>& show) {
    auto own = std::make_shared<const Cache<Key>>(branch);
    Family<Key> f = [own, learned, frame](const Key& i) -> SemValue {
        if (auto it = own->find(i); it != own->end()) return it->second;
        if (auto it = learned->find(i); it != learned->end()) return it->second;
        throw Demand<Key>{frame, i};
    };
    std::optional<Key> wanted;
    try {
        return k(f);
    } catch (Demand<Key>& d) {
        if (d.frame != frame) throw;
        wanted = d.key;
    }
    Key i = *wanted;
    st->demands.push_back(show(i));
    // A producer can itself demand from this frame; the demand then lands
    // at an outer replay level, so demands are bounded like replays.
    if (st->demands.size() > st->bound) over_bound(*st);
    return h(i)([st, frame, h, k, branch, learned, show, i](const SemValue& m) {
        if (st->replays >= st->bound) over_bound(*st);
        ++st->replays;
        if (st->run) st->run->emit("REPLAY " + std::to_string(st->replays));
        Cache<Key> next = branch;
        next.insert_or_assign(i, m);
        learned->insert_or_assign(i, m);
        return replay_from<Key>(st, frame, h, k, next, learned, show);
    });
}

}  // namespace detail

// DNS forall: (forall i. Kont(A i)) -> Kont(forall i. A i).
template <class Key>
Kont<Family<Key>> dns_forall(std::shared_ptr<ReplayState> st, std::function<Kont<SemValue>(const Key&)> h,
                             std::function<std::string(const Key&)> show) {
    return [st, h, show](const KontArg<Family<Key>>& k) {
        std::uint64_t frame = st->next_frame++;
        return detail::replay_from<Key>(st, frame, h, k, {}, std::make_shared<detail::Cache<Key>>(), show);
    };
}

// DNS and: Kont(A) /\ Kont(B) -> Kont(A /\ B).
Kont<SemValue> dns_and(Kont<SemValue> h1, Kont<SemValue> h2);

class KontEngine {
public:
    KontEngine(Extraction& run, std::shared_ptr<ReplayState> st) : run_(&run), st_(std::move(st)) {}

    Member reify(const Formula& a, const Substitution& sigma, const SemValue& m) const;
    Kont<SemValue> reflect(const Formula& a, const Substitution& sigma, const Member& q) const;
    RelConsK kont_imp(const Formula& a, const Formula& b, const Substitution& sigma, const SemValue& m) const;
    RelConsK kont_or(int i, const Formula& ai, const Substitution& sigma, const KontArg<SemValue>& k) const;

    // Ex falso on truth values; at an existential the witness is the user
    // variable e0.
    SemValue efq_truth(const Formula& a, const Substitution& sigma, const BotInT& b) const;
    // DNS implication: (A -> Kont(B)) -> Kont(A -> B) with B fixed.
    Kont<SemValue> dns_imp(const Formula& b, const Substitution& sigma,
                           std::function<Kont<SemValue>(const SemValue&)> h) const;

    // Kont of the family A |-> (~~A -> A), indexed by closed-over formulas.
    Kont<Family<Formula>> classic0() const;
    // Kont of the truth of every theory member (finite DNS-and chain).
    Kont<std::vector<SemValue>> init0() const;
    ModelBundle m0_bundle(Family<Formula> classic, std::vector<SemValue> init) const;

private:
    Extraction* run_;
    std::shared_ptr<ReplayState> st_;
};

Extracted complete_prime(const Theory& theory, const Formula& a0, const ValidityWitness& psi,
                         const ExtractOptions& opts = {});

}  // namespace henkin
