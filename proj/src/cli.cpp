#include "henkin/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "henkin/checker.hpp"
#include "henkin/coding.hpp"
#include "henkin/core.hpp"
#include "henkin/elaborate.hpp"
#include "henkin/kont.hpp"
#include "henkin/nbe.hpp"
#include "henkin/pretty.hpp"
#include "henkin/text.hpp"

namespace henkin {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Theory load_theory(const RunConfig& cfg) {
    return cfg.theory_file ? parse_theory(slurp(*cfg.theory_file)) : Theory{};
}

Formula need_formula(const RunConfig& cfg) {
    if (!cfg.formula) throw UsageError(cfg.command + " needs --formula");
    return parse_formula(*cfg.formula);
}

Proof need_proof(const RunConfig& cfg) {
    if (!cfg.proof_file) throw UsageError(cfg.command + " needs --proof");
    return parse_proof(slurp(*cfg.proof_file));
}

std::string render(const Proof& p, const Context& gamma, const std::string& format) {
    if (format == "term") return to_string(p) + "\n";
    return pretty(p, gamma);
}

void sequent_line(std::ostream& out, const Context& gamma, const Formula& a) {
    out << "sequent: " << (gamma.empty() ? "" : to_string(gamma) + " ") << "|- " << to_string(a) << "\n";
}

// Kernel verdict for p at theory |- a; p may use derived rules.
std::string verdict_of(const Proof& p, const Context& gamma, const Formula& a) {
    try {
        Formula got = check_derived(p, gamma);
        if (!alpha_equal(got, a)) return "failed: proof concludes " + to_string(got);
        Proof prim = elaborate(p, gamma);
        got = check(prim, gamma);
        if (!alpha_equal(got, a)) return "failed: elaborated proof concludes " + to_string(got);
        return "ok";
    } catch (const std::exception& e) {
        return std::string("failed: ") + e.what();
    }
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
    Theory t = load_theory(cfg);
    Formula a = need_formula(cfg);
    Proof p = need_proof(cfg);
    sequent_line(out, t.members(), a);
    std::string v = verdict_of(p, t.members(), a);
    out << "verdict: " << v << "\n";
    return v == "ok" ? 0 : 1;
}

int report_extraction(const RunConfig& cfg, const Theory& t, const Formula& a, const ValidityWitness& w,
                      std::ostream& out) {
    ExtractOptions opts;
    opts.trace = cfg.trace;
    opts.max_replays = cfg.max_replays;
    Extracted r;
    try {
        r = cfg.engine == "kont" ? complete_prime(t, a, w, opts) : complete(t, a, w, opts);
    } catch (const ExtractionError& e) {
        out << "verdict: failed: " << e.what() << "\n";
        return 1;
    }
    out << "context: [" << to_string(r.gamma) << "]\n";
    out << "proof:\n" << render(r.proof, r.gamma, cfg.format);
    std::string v = verdict_of(r.proof, r.gamma, a);
    out << "verdict: " << v << "\n";
    if (cfg.engine == "kont") out << "replays: " << r.replays << "\n";
    if (cfg.trace) {
        out << "trace:\n";
        for (const auto& line : r.trace) out << "  " << line << "\n";
    }
    return v == "ok" ? 0 : 1;
}

int cmd_extract(const RunConfig& cfg, std::ostream& out) {
    Theory t = load_theory(cfg);
    if (cfg.witness && cfg.proof_file) throw UsageError("give either --witness or --proof, not both");
    if (cfg.witness) {
        ValidityWitness w = canonical_witness(*cfg.witness);
        Formula a = cfg.formula ? parse_formula(*cfg.formula) : w.formula;
        sequent_line(out, t.members(), a);
        return report_extraction(cfg, t, a, w, out);
    }
    Formula a = need_formula(cfg);
    Proof p = need_proof(cfg);
    sequent_line(out, t.members(), a);
    return report_extraction(cfg, t, a, validity_from_proof(t, a, p), out);
}

int cmd_roundtrip(const RunConfig& cfg, std::ostream& out) {
    Theory t = load_theory(cfg);
    Formula a = need_formula(cfg);
    Proof p = need_proof(cfg);
    sequent_line(out, t.members(), a);
    std::string v = verdict_of(p, t.members(), a);
    out << "input: " << v << "\n";
    if (v != "ok") return 1;
    return report_extraction(cfg, t, a, validity_from_proof(t, a, p), out);
}

int cmd_nbe(const RunConfig& cfg, std::ostream& out) {
    Theory t = load_theory(cfg);
    Formula a = need_formula(cfg);
    Proof p = need_proof(cfg);
    sequent_line(out, t.members(), a);
    nbe::MinContext gamma = nbe::to_min(t.members());
    nbe::MinProof mp = nbe::to_min(p);
    nbe::MinFormula ma = nbe::to_min(a);
    nbe::MinFormula got = nbe::check_min(mp, gamma);
    if (!(got == ma)) {
        out << "verdict: failed: input proves " << got.str() << "\n";
        return 1;
    }
    nbe::MinProof n = nbe::normalize(mp, gamma);
    out << "proof:\n" << render(nbe::from_min(n), t.members(), cfg.format);
    bool ok = nbe::check_min(n, gamma) == ma;
    out << "verdict: " << (ok ? "ok" : "failed") << "\n";
    return ok ? 0 : 1;
}

int cmd_info(const RunConfig& cfg, std::ostream& out) {
    if (cfg.formula) {
        Formula a = parse_formula(*cfg.formula);
        out << "formula: " << to_string(a) << "\n";
        out << "code: " << code(a) << "\n";
        for (auto [label, d] : {std::pair{"2-class", Discipline::TwoClass}, std::pair{"3-class", Discipline::ThreeClass}}) {
            out << "level (" << label << "): ";
            try {
                out << level_of(a, d).value << "\n";
            } catch (const SyntaxError&) {
                out << "none\n";
            }
        }
        out << "depth: " << depth(a) << "\n";
        out << "size: " << size(a) << "\n";
        return 0;
    }
    out << "witnesses:";
    for (const auto& n : canonical_witness_names()) out << " " << n << " (" << to_string(canonical_witness(n).formula) << ")";
    out << "\nengines: core kont\n";
    return 0;
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.engine != "core" && cfg.engine != "kont") throw UsageError("unknown engine " + cfg.engine);
        if (cfg.format != "tree" && cfg.format != "term") throw UsageError("unknown format " + cfg.format);
        if (cfg.command == "check") return cmd_check(cfg, out);
        if (cfg.command == "extract") return cmd_extract(cfg, out);
        if (cfg.command == "roundtrip") return cmd_roundtrip(cfg, out);
        if (cfg.command == "nbe") return cmd_nbe(cfg, out);
        if (cfg.command == "info") return cmd_info(cfg, out);
        throw UsageError("unknown command " + cfg.command);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace henkin
