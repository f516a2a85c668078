#include "henkin/pretty.hpp"

#include "henkin/checker.hpp"
#include "henkin/text.hpp"

namespace henkin {

namespace {

void render(const Proof& p, Context& gamma, std::size_t depth, const PrettyOptions& opts, std::string& out) {
    if (p.rule() == Rule::Weak && !opts.show_weak) {
        Context src = p.incl().source(gamma);
        render(p.kid(0), src, depth, opts, out);
        return;
    }
    Formula a = check_derived(p, gamma);
    out.append(depth * opts.indent, ' ');
    out += '[';
    out += rule_name(p.rule());
    out += "] ";
    if (!gamma.empty()) out += to_string(gamma) + ' ';
    out += "|- " + to_string(a) + '\n';

    switch (p.rule()) {
        case Rule::AbsImp:
        case Rule::Pi1:
        case Rule::Pi2:
        case Rule::Drinker:
        case Rule::HenkinEx:
            gamma.push_back(p.formula());
            render(p.kid(0), gamma, depth + 1, opts, out);
            gamma.pop_back();
            return;
        case Rule::Weak: {
            Context src = p.incl().source(gamma);
            render(p.kid(0), src, depth + 1, opts, out);
            return;
        }
        default:
            for (const auto& k : p.kids()) render(k, gamma, depth + 1, opts, out);
    }
}

}  // namespace

std::string pretty(const Proof& p, const Context& gamma, PrettyOptions opts) {
    std::string out;
    Context g = gamma;
    render(p, g, 0, opts, out);
    return out;
}

}  // namespace henkin
