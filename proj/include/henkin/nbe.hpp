// Normalization by evaluation for minimal implicational logic.
//
// Soundness is evaluation into an arbitrary Kripke model; completeness for
// the universal model (contexts ordered by inclusion) reads the value back
// as a beta-normal, eta-long proof.
#pragma once

#include <any>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "henkin/proof.hpp"
#include "henkin/syntax.hpp"

namespace henkin::nbe {

class MinError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MinFormula {
public:
    static MinFormula atom(std::string name);
    static MinFormula imp(MinFormula a, MinFormula b);

    bool is_atom() const;
    const std::string& name() const;
    const MinFormula& lhs() const;
    const MinFormula& rhs() const;
    std::string str() const;

    friend bool operator==(const MinFormula& a, const MinFormula& b);

private:
    struct Rep;
    explicit MinFormula(std::shared_ptr<const Rep> r) : rep_(std::move(r)) {}
    std::shared_ptr<const Rep> rep_;
};

using MinContext = std::vector<MinFormula>;

class MinProof {
public:
    enum class Kind : unsigned char { Ax, App, Abs };
    static MinProof ax(std::size_t i);
    static MinProof app(MinProof f, MinProof a);
    static MinProof abs(MinFormula dom, MinProof body);

    Kind kind() const;
    std::size_t index() const;
    const MinProof& fn() const;
    const MinProof& arg() const;
    const MinFormula& dom() const;
    const MinProof& body() const;
    std::string str() const;

    friend bool operator==(const MinProof& a, const MinProof& b);

private:
    struct Rep;
    explicit MinProof(std::shared_ptr<const Rep> r) : rep_(std::move(r)) {}
    std::shared_ptr<const Rep> rep_;
};

MinFormula check_min(const MinProof& p, const MinContext& gamma);
// p : gamma |- A and h : gamma ⊂ gamma'; result proves gamma' |- A.
MinProof weaken_min(const Inclusion& h, const MinProof& p);
std::size_t size(const MinProof& p);

// Conversions from and to the first-order syntax: atoms and -> only,
// proofs built from ax, app and lam.
MinFormula to_min(const Formula& a);
MinProof to_min(const Proof& p);
MinContext to_min(const Context& gamma);
Formula from_min(const MinFormula& a);
Proof from_min(const MinProof& p);

using World = std::any;
using Le = std::any;

class KripkeValue {
public:
    using Fn = std::function<KripkeValue(const World&, const Le&, const KripkeValue&)>;
    static KripkeValue atom(std::any payload);
    static KripkeValue fun(Fn f);

    bool is_atom() const;
    const std::any& payload() const;
    KripkeValue apply(const World& w, const Le& h, const KripkeValue& x) const;

private:
    struct Rep;
    explicit KripkeValue(std::shared_ptr<const Rep> r) : rep_(std::move(r)) {}
    std::shared_ptr<const Rep> rep_;
};

struct KripkeModel {
    std::function<Le(const World& w)> refl;
    // h : w <= w', h2 : w' <= w''.
    std::function<Le(const Le& h, const Le& h2)> trans;
    // Monotonicity of atomic forcing.
    std::function<std::any(const std::string& atom, const World& w, const World& w2, const Le& h,
                           const std::any& m)>
        mono_atom;
};

KripkeValue mono_lift(const KripkeModel& k, const MinFormula& a, const World& w, const World& w2, const Le& h,
                      const KripkeValue& m);
// env holds values of gamma, leftmost first.
KripkeValue soundness_min(const MinProof& p, const MinContext& gamma, const std::vector<KripkeValue>& env,
                          const KripkeModel& k, const World& w);

// Worlds are MinContext, ordering witnesses are Inclusion, atoms are proofs.
KripkeModel universal_model();
MinProof reify_min(const MinContext& gamma, const MinFormula& a, const KripkeValue& m);
KripkeValue reflect_min(const MinContext& gamma, const MinFormula& a, const MinProof& p);
std::vector<KripkeValue> init_min(const MinContext& gamma);

MinProof normalize(const MinProof& p, const MinContext& gamma);

}  // namespace henkin::nbe
