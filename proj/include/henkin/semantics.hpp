// Tarski semantics over possibly-exploding models.
//
// Truth is evidence-carrying: a SemValue for A is a tree shaped like A whose
// leaves are opaque payloads (atoms and _|_) and whose inner nodes are
// callables, pairs, tagged alternatives, or witness pairs. Individuals are
// type-erased.
#pragma once

#include <any>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "henkin/proof.hpp"
#include "henkin/syntax.hpp"

namespace henkin {

class SemanticError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Individual = std::any;

class SemValue {
public:
    enum class Kind : unsigned char { Atom, Bot, Imp, Forall, And, Or, Exists };
    using ImpFn = std::function<SemValue(const SemValue&)>;
    using ForallFn = std::function<SemValue(const Individual&)>;

    static SemValue atom(std::any payload);
    static SemValue bot(std::any payload);
    static SemValue imp(ImpFn f);
    static SemValue forall(ForallFn f);
    static SemValue pair(SemValue a, SemValue b);
    static SemValue inj(int tag, SemValue v);  // tag is 1 or 2
    static SemValue ex(Individual witness, SemValue v);

    Kind kind() const;
    const std::any& payload() const;
    SemValue apply(const SemValue& arg) const;
    SemValue at(const Individual& d) const;
    const SemValue& fst() const;
    const SemValue& snd() const;
    int tag() const;
    const SemValue& inner() const;  // Or, Exists
    const Individual& witness() const;

    template <class T>
    const T& payload_as() const {
        if (const T* p = std::any_cast<T>(&payload())) return *p;
        throw SemanticError("semantic payload has an unexpected type");
    }

    struct Rep;

private:
    explicit SemValue(std::shared_ptr<const Rep> r) : rep_(std::move(r)) {}
    std::shared_ptr<const Rep> rep_;
};

// Variable assignment: explicit bindings over an optional fallback.
class Assignment {
public:
    using Fallback = std::function<Individual(const VarId&)>;
    Assignment() = default;
    explicit Assignment(Fallback fb) : fallback_(std::move(fb)) {}

    Individual lookup(const VarId& x) const;
    Assignment with(const VarId& x, Individual d) const;
    const std::map<VarId, Individual>& bindings() const { return map_; }
    bool has_fallback() const { return static_cast<bool>(fallback_); }

private:
    std::map<VarId, Individual> map_;
    Fallback fallback_;
};

struct ModelBundle {
    std::string name;
    std::function<Individual(const std::string& fun, const std::vector<Individual>& args)> fun_interp;
    // Value of ~~A -> A at the given assignment.
    std::function<SemValue(const Formula& a, const Assignment& sigma)> classic;
    // Value of the i-th theory member at the given assignment.
    std::function<SemValue(std::size_t i, const Assignment& sigma)> theory_truth;
};

Individual eval_term(const Term& t, const Assignment& sigma, const ModelBundle& m);

// Structural agreement of v with A; callables are not probed.
bool shape_check(const SemValue& v, const Formula& a);

// p must be a primitive proof of gamma |- A; env holds values of gamma
// (rightmost last).
SemValue soundness_eval(const Proof& p, const Context& gamma, const std::vector<SemValue>& env,
                        const Assignment& sigma, const ModelBundle& m);

// A uniform proof of validity: a host function from models to truth of A.
struct ValidityWitness {
    std::string name;
    Formula formula = Formula::bot();
    std::function<SemValue(const ModelBundle&, const Assignment&)> run;
};

// Names: K (X -> Y -> X), K2 (X -> Y -> Y), W1 and W2 (X -> X -> X, first
// and second projection), I (X -> X).
ValidityWitness canonical_witness(const std::string& name);
std::vector<std::string> canonical_witness_names();

// Witness obtained by evaluating an object proof of theory |- a.
ValidityWitness validity_from_proof(const Theory& theory, const Formula& a, const Proof& p);

}  // namespace henkin
