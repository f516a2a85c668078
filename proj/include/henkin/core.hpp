// Completeness extraction for the fragment _|_, ->, forall, /\.
//
// The syntactic model M0 has terms as individuals, members of S_omega as
// atom evidence and refutations of T0, ~A0 as _|_ evidence. Reification
// turns truth in M0 into membership in S_omega; reflection goes back.
#pragma once

#include <string>
#include <vector>

#include "henkin/semantics.hpp"
#include "henkin/somega.hpp"

namespace henkin {

struct ExtractOptions {
    bool trace = false;
    std::size_t max_replays = 1024;
};

struct Extracted {
    JProof members;                  // indices into the theory
    Context gamma;                   // the corresponding formulas
    Formula formula = Formula::bot();     // A0
    Proof proof = Proof::ax(0);           // with derived rules, as produced
    Proof primitive = Proof::ax(0);       // elaborated, kernel-checked
    std::vector<std::string> trace;
    std::size_t replays = 0;
};

Term as_term(const Individual& d);
Substitution to_substitution(const Assignment& sigma);
// Identity assignment over terms.
Assignment identity_assignment();

class CoreEngine {
public:
    explicit CoreEngine(Extraction& run) : run_(&run) {}

    Member reify(const Formula& a, const Substitution& sigma, const SemValue& m) const;
    SemValue reflect(const Formula& a, const Substitution& sigma, const Member& q) const;
    RelConsK kont_imp(const Formula& a, const Formula& b, const Substitution& sigma, const SemValue& m) const;

    // Value of ~~A -> A.
    SemValue classic0(const Formula& a, const Substitution& sigma) const;
    SemValue init0(std::size_t i) const;
    ModelBundle m0_bundle() const;

private:
    Extraction* run_;
};

// Theory and A0 must use user variables only; psi must be a witness for A0.
Extracted complete(const Theory& theory, const Formula& a0, const ValidityWitness& psi,
                   const ExtractOptions& opts = {});

// DNABS, elaboration, and kernel check shared by both engines.
Extracted finish_extraction(const Extraction& run, const BotInT& b);

void check_extraction_input(const Theory& theory, const Formula& a0, const ValidityWitness& psi);

}  // namespace henkin
