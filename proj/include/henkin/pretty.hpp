// Indented derivation trees, one sequent per line:
//
//   [rule] Gamma |- A
//     [rule] ...
//
// Weakening steps are folded away by default so each subproof is shown in
// the context it was built in.
#pragma once

#include <string>

#include "henkin/proof.hpp"

namespace henkin {

struct PrettyOptions {
    bool show_weak = false;
    std::size_t indent = 2;
};

std::string pretty(const Proof& p, const Context& gamma, PrettyOptions opts = {});

}  // namespace henkin
