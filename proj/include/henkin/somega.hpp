// Membership in the Henkin extension S_omega of T0 + ~A0.
//
// A member of S_omega is (n, Gamma, f, p): f derives Gamma ⊂ S_n and p
// derives Gamma |- A. Subset derivations record every formula added along
// the enumeration together with its justification: a Henkin axiom with its
// witness, or an implication with a relative-consistency continuation.
#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "henkin/coding.hpp"
#include "henkin/proof.hpp"

namespace henkin {

class ExtractionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Gamma ⊂ T0 as the list of member indices (J_base / J_cons chain).
using JProof = std::vector<std::size_t>;

// Proof of T0-part, ~A0 |- _|_ with the T0-part given by g.
struct BotInT {
    JProof g;
    Proof p;
};

// Context of the shape base, ~A0, added_1, ..., added_k with the added
// formulas kept in strictly ascending order of their stage.
struct HenkinContext {
    struct Added {
        BigNat key;  // stage at which the formula enters
        Formula formula;
    };
    JProof base;
    std::vector<Added> added;
};

struct Refutation;
using RelConsK = std::function<BotInT(const Refutation&)>;

class SubsetProof {
public:
    enum class Kind : unsigned char { I0, ISn, IForall, IImp, IExists };

    static SubsetProof i0(JProof g);
    // k-fold I_S; nested runs are merged and k = 0 returns f.
    static SubsetProof isn(const BigNat& k, const SubsetProof& f);
    // The added formula enters at level(f) + 1; f must sit at the level of
    // the enumerated formula.
    static SubsetProof iforall(const SubsetProof& f, Formula axiom, VarId witness);
    static SubsetProof iexists(const SubsetProof& f, Formula axiom, VarId witness);
    static SubsetProof iimp(const SubsetProof& f, Formula imp, RelConsK k);

    Kind kind() const { return node_->kind; }
    const BigNat& level() const { return node_->level; }
    const JProof& g() const { return node_->g; }
    const BigNat& count() const { return node_->count; }
    const SubsetProof& inner() const { return *node_->inner; }
    const Formula& formula() const { return *node_->formula; }
    const VarId& witness() const { return *node_->witness; }
    const RelConsK& kont() const { return node_->k; }
    bool is_wrap() const { return kind() != Kind::I0 && kind() != Kind::ISn; }

    std::string str() const;

private:
    struct Node {
        Kind kind = Kind::I0;
        BigNat level;
        JProof g;
        BigNat count;
        std::shared_ptr<const SubsetProof> inner;
        std::optional<Formula> formula;
        std::optional<VarId> witness;
        RelConsK k;
    };
    explicit SubsetProof(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static SubsetProof wrap(Kind kind, const SubsetProof& f, Formula a, std::optional<VarId> w, RelConsK k);
    std::shared_ptr<const Node> node_;
};

// The triple handed to a relative-consistency continuation: f derives
// Gamma ⊂ S_l and p derives Gamma, h |- _|_.
struct Refutation {
    SubsetProof f;
    Proof p;
    Formula h;
};

// ~A0 ⊂ S_n in constant space.
SubsetProof inj(const BigNat& n);

// Context described by f (base from I0, one added entry per wrap node).
HenkinContext context_of(const SubsetProof& f);

HenkinContext henkin_union(const HenkinContext& a, const HenkinContext& b);
// side is 1 or 2: witness of side ⊂ a ∪ b over flattened contexts.
Inclusion incl_prime(int side, const HenkinContext& a, const HenkinContext& b);
SubsetProof hjoin(const SubsetProof& f1, const SubsetProof& f2);

// The context of a member is always context_of(f).
struct Member {
    SubsetProof f;
    Proof p;
    Formula formula;
    const BigNat& level() const { return f.level(); }
};

struct Shared {
    SubsetProof f;
    std::vector<Proof> proofs;
};

// Run-local state of one extraction: the theory, A0, the enumeration
// discipline, and the event trace. Lifted rules live here because they need
// ~A0 to flatten contexts.
class Extraction {
public:
    Extraction(Theory theory, Formula a0, Discipline d, bool trace);

    const Theory& theory() const { return theory_; }
    const Formula& a0() const { return a0_; }
    const Formula& neg_a0() const { return neg_a0_; }
    Discipline discipline() const { return discipline_; }

    Context flatten(const HenkinContext& c) const;
    Context flatten(const SubsetProof& f) const { return flatten(context_of(f)); }
    Context base_context(const JProof& g) const;

    void emit(std::string line);
    const std::vector<std::string>& trace() const { return trace_; }
    bool tracing() const { return tracing_; }

    Shared share(const Member& a, const Member& b);
    Shared share3(const Member& a, const Member& b, const Member& c);
    BotInT flush(const Member& q);

    Member ax0();
    Member ax_imp(const Formula& imp, RelConsK k);
    Member ax_forall(const Formula& all);
    Member ax_exists(const Formula& ex);
    Member bot(const BotInT& b);
    Member app_imp(const Member& q, const Member& r);
    Member app_forall(const Member& q, const Term& t);
    Member dn(const Member& q);
    Member pi1(const Refutation& r);
    Member pi2(const Refutation& r);
    Member pair(const Member& q1, const Member& q2);
    Member proj(int i, const Member& q);
    Member inj(int i, const Member& q, const Formula& other);
    Member cases(const Member& q, const Member& q1, const Member& q2);
    Member exi(const Term& t, const Formula& ex, const Member& q);

    // (0, (B_i, ~A0), I0([i]), ax 1)
    Member member_axiom(std::size_t i);
    // (0, (Gamma, ~A0), I0(g), efq A p)
    Member efq(const BotInT& b, const Formula& a);

    // T0-part |- A0 from T0-part, ~A0 |- _|_.
    Proof dnabs(const BotInT& b) const;

    // Checks the member's proof against its context (derived rules allowed).
    void validate(const Member& q) const;

private:
    Proof weak(const Inclusion& w, const Proof& p) const;

    Theory theory_;
    Formula a0_;
    Formula neg_a0_;
    Discipline discipline_;
    bool tracing_;
    std::vector<std::string> trace_;
};

}  // namespace henkin
