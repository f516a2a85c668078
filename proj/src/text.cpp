#include "henkin/text.hpp"

#include <cctype>
#include <sstream>

namespace henkin {

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const Term& t) {
    if (t.is_var()) return t.as_var().str();
    const auto& f = t.as_app();
    std::string s = f.fun + "(";
    for (std::size_t i = 0; i < f.args.size(); ++i) {
        if (i) s += ", ";
        s += to_string(f.args[i]);
    }
    return s + ")";
}

namespace {

enum Prec { kTop = 0, kImp = 1, kOr = 2, kAnd = 3, kUnary = 4 };

std::string fmt(const Formula& a, int min_prec, bool rightmost);

std::string wrap(const std::string& s, bool paren) { return paren ? "(" + s + ")" : s; }

std::string fmt_binary(const Formula& l, const Formula& r, const char* op, int prec, int min_prec,
                       bool rightmost) {
    bool paren = min_prec > prec;
    bool right_end = paren || rightmost;
    return wrap(fmt(l, prec + 1, false) + op + fmt(r, prec, right_end), paren);
}

std::string fmt(const Formula& a, int min_prec, bool rightmost) {
    switch (a.connective()) {
        case Connective::Atom: {
            const auto& at = a.as_atom();
            if (at.args.empty()) return at.pred;
            std::string s = at.pred + "(";
            for (std::size_t i = 0; i < at.args.size(); ++i) {
                if (i) s += ", ";
                s += to_string(at.args[i]);
            }
            return s + ")";
        }
        case Connective::Bot:
            return "_|_";
        case Connective::Imp:
            if (a.is_negation()) return "~" + fmt(a.as_imp().lhs, kUnary, rightmost);
            return fmt_binary(a.as_imp().lhs, a.as_imp().rhs, " -> ", kImp, min_prec, rightmost);
        case Connective::Or:
            return fmt_binary(a.as_or().lhs, a.as_or().rhs, " \\/ ", kOr, min_prec, rightmost);
        case Connective::And:
            return fmt_binary(a.as_and().lhs, a.as_and().rhs, " /\\ ", kAnd, min_prec, rightmost);
        case Connective::Forall:
        case Connective::Exists: {
            const char* q = a.is(Connective::Forall) ? "forall " : "exists ";
            return wrap(q + a.bound_var().str() + ". " + fmt(a.body(), kTop, true), !rightmost);
        }
    }
    return "?";
}

}  // namespace

std::string to_string(const Formula& a) { return fmt(a, kTop, true); }

std::string to_string(const Context& gamma) {
    std::string s;
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        if (i) s += ", ";
        s += to_string(gamma[i]);
    }
    return s;
}

namespace {

std::string annot(const Formula& a) {
    if (a.is(Connective::Atom) && a.as_atom().args.empty()) return a.as_atom().pred;
    return "{" + to_string(a) + "}";
}

std::string annot(const Term& t) {
    if (t.is_var()) return t.as_var().str();
    return "{" + to_string(t) + "}";
}

void print_proof(const Proof& p, std::string& out) {
    out += '(';
    out += rule_name(p.rule());
    auto kids = [&] {
        for (const auto& k : p.kids()) {
            out += ' ';
            print_proof(k, out);
        }
    };
    switch (p.rule()) {
        case Rule::Ax:
            out += ' ' + std::to_string(p.index());
            break;
        case Rule::AppForall:
            out += ' ';
            print_proof(p.kid(0), out);
            out += ' ' + annot(p.term());
            break;
        case Rule::AbsImp:
        case Rule::Inj1:
        case Rule::Inj2:
        case Rule::Efq:
        case Rule::Pi1:
        case Rule::Pi2:
            out += ' ' + annot(p.formula());
            kids();
            break;
        case Rule::AbsForall:
            out += ' ' + p.var().str();
            if (p.binder()) out += ' ' + p.binder()->str();
            kids();
            break;
        case Rule::ExIntro:
            out += ' ' + annot(p.term()) + ' ' + annot(p.formula());
            kids();
            break;
        case Rule::Weak:
            out += " \"" + p.incl().str() + "\"";
            kids();
            break;
        case Rule::Drinker:
        case Rule::HenkinEx:
            out += ' ' + p.var().str() + ' ' + annot(p.formula());
            kids();
            break;
        default:
            kids();
            break;
    }
    out += ')';
}

}  // namespace

std::string to_string(const Proof& p) {
    std::string out;
    print_proof(p, out);
    return out;
}

// ---------------------------------------------------------------------------
// Formula parsing

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class FormulaParser {
public:
    FormulaParser(std::string_view text, ParseOptions opts, std::size_t base)
        : s_(text), opts_(opts), base_(base) {}

    Formula formula_eof() {
        Formula a = formula();
        expect_end();
        return a;
    }

    Term term_eof() {
        Term t = term();
        expect_end();
        return t;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, base_ + pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(std::string_view tok) {
        skip_ws();
        return s_.substr(pos_, tok.size()) == tok;
    }

    bool accept(std::string_view tok) {
        if (!peek(tok)) return false;
        pos_ += tok.size();
        return true;
    }

    void expect(std::string_view tok) {
        if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
    }

    void expect_end() {
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
    }

    bool peek_keyword(std::string_view kw) {
        skip_ws();
        if (s_.substr(pos_, kw.size()) != kw) return false;
        std::size_t end = pos_ + kw.size();
        return end >= s_.size() || !ident_char(s_[end]);
    }

    std::string ident() {
        skip_ws();
        if (pos_ >= s_.size() || !ident_start(s_[pos_])) fail("expected identifier");
        std::size_t start = pos_;
        while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
        std::string id(s_.substr(start, pos_ - start));
        if (id == "forall" || id == "exists") {
            pos_ = start;
            fail("keyword '" + id + "' used as identifier");
        }
        return id;
    }

    VarId variable() {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '#') {
            std::size_t start = pos_++;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ == start + 1) fail("expected digits after '#'");
            if (!opts_.allow_witnesses) {
                pos_ = start;
                fail("witness variables are not allowed in user input");
            }
            return VarId::witness(BigNat(std::string(s_.substr(start + 1, pos_ - start - 1))));
        }
        return VarId::user(ident());
    }

    std::vector<Term> args() {
        std::vector<Term> out;
        if (accept(")")) return out;
        out.push_back(term());
        while (accept(",")) out.push_back(term());
        expect(")");
        return out;
    }

    Term term() {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '#') return Term::var(variable());
        std::string id = ident();
        if (accept("(")) return Term::app(id, args());
        return Term::var(VarId::user(id));
    }

    Formula formula() {
        if (peek_keyword("forall") || peek_keyword("exists")) return quantified();
        Formula lhs = disjunction();
        if (accept("->")) return Formula::imp(lhs, formula());
        return lhs;
    }

    Formula quantified() {
        bool all = peek_keyword("forall");
        pos_ += 6;
        VarId x = variable();
        if (x.is_witness()) fail("binders must be user variables");
        expect(".");
        Formula body = formula();
        return all ? Formula::forall(x, body) : Formula::exists(x, body);
    }

    Formula disjunction() {
        Formula lhs = conjunction();
        if (accept("\\/")) return Formula::disj(lhs, disjunction());
        return lhs;
    }

    Formula conjunction() {
        Formula lhs = unary();
        if (accept("/\\")) return Formula::conj(lhs, conjunction());
        return lhs;
    }

    Formula unary() {
        if (accept("~")) return Formula::neg(unary());
        if (peek_keyword("forall") || peek_keyword("exists")) return quantified();
        if (accept("(")) {
            Formula a = formula();
            expect(")");
            return a;
        }
        if (accept("_|_")) return Formula::bot();
        std::string p = ident();
        if (accept("(")) return Formula::atom(p, args());
        return Formula::atom(p);
    }

    std::string_view s_;
    ParseOptions opts_;
    std::size_t base_;
    std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text, ParseOptions opts) { return FormulaParser(text, opts, 0).term_eof(); }

Formula parse_formula(std::string_view text, ParseOptions opts) {
    return FormulaParser(text, opts, 0).formula_eof();
}

Theory parse_theory(std::string_view text) {
    std::vector<Formula> members;
    std::size_t offset = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        std::size_t line_start = offset;
        offset += line.size() + 1;
        if (auto c = line.find('%'); c != std::string::npos) line.resize(c);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        members.push_back(FormulaParser(line, {}, line_start).formula_eof());
    }
    return Theory(std::move(members));
}

// ---------------------------------------------------------------------------
// Proof parsing

namespace {

struct Sexp {
    enum Kind { List, Atom, Block, String } kind;
    std::string text;
    std::vector<Sexp> items;
    std::size_t pos;
};

class SexpReader {
public:
    explicit SexpReader(std::string_view s) : s_(s) {}

    Sexp read_all() {
        Sexp e = read();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < s_.size()) {
            if (std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            else if (s_[pos_] == ';') {
                while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
            } else break;
        }
    }

    Sexp read() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        std::size_t start = pos_;
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Sexp e{Sexp::List, {}, {}, start};
            for (;;) {
                skip_ws();
                if (pos_ >= s_.size()) throw ParseError("unclosed '('", start);
                if (s_[pos_] == ')') {
                    ++pos_;
                    return e;
                }
                e.items.push_back(read());
            }
        }
        if (c == ')') throw ParseError("unexpected ')'", pos_);
        if (c == '{' || c == '"') {
            char close = c == '{' ? '}' : '"';
            std::size_t end = s_.find(close, pos_ + 1);
            if (end == std::string_view::npos) throw ParseError("unterminated block", start);
            pos_ = end + 1;
            return {c == '{' ? Sexp::Block : Sexp::String, std::string(s_.substr(start + 1, end - start - 1)), {},
                    start + 1};
        }
        while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) &&
               s_[pos_] != '(' && s_[pos_] != ')' && s_[pos_] != '{' && s_[pos_] != '"')
            ++pos_;
        return {Sexp::Atom, std::string(s_.substr(start, pos_ - start)), {}, start};
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

class ProofBuilder {
public:
    explicit ProofBuilder(ParseOptions opts) : opts_(opts) {}

    Proof build(const Sexp& e) {
        if (e.kind != Sexp::List || e.items.empty() || e.items[0].kind != Sexp::Atom)
            throw ParseError("expected a proof form '(rule ...)'", e.pos);
        const std::string& r = e.items[0].text;
        const auto& it = e.items;
        auto arity = [&](std::size_t n) {
            if (it.size() != n + 1)
                throw ParseError("'" + r + "' expects " + std::to_string(n) + " arguments", e.pos);
        };
        if (r == "ax") {
            arity(1);
            if (it[1].kind != Sexp::Atom || it[1].text.empty() ||
                it[1].text.find_first_not_of("0123456789") != std::string::npos)
                throw ParseError("'ax' expects a natural number", it[1].pos);
            return Proof::ax(std::stoul(it[1].text));
        }
        if (r == "dn") return arity(1), Proof::dn(build(it[1]));
        if (r == "app") return arity(2), Proof::app(build(it[1]), build(it[2]));
        if (r == "inst") return arity(2), Proof::inst(build(it[1]), term(it[2]));
        if (r == "lam") return arity(2), Proof::lam(formula(it[1]), build(it[2]));
        if (r == "gen") {
            if (it.size() == 3) return Proof::gen(var(it[1]), build(it[2]));
            arity(3);
            return Proof::gen(var(it[1]), build(it[3]), var(it[2]));
        }
        if (r == "pair") return arity(2), Proof::pair(build(it[1]), build(it[2]));
        if (r == "fst") return arity(1), Proof::fst(build(it[1]));
        if (r == "snd") return arity(1), Proof::snd(build(it[1]));
        if (r == "inl") return arity(2), Proof::inl(formula(it[1]), build(it[2]));
        if (r == "inr") return arity(2), Proof::inr(formula(it[1]), build(it[2]));
        if (r == "case") return arity(3), Proof::cases(build(it[1]), build(it[2]), build(it[3]));
        if (r == "exi") return arity(3), Proof::exi(term(it[1]), formula(it[2]), build(it[3]));
        if (r == "exe") return arity(2), Proof::exe(build(it[1]), build(it[2]));
        if (r == "weak") {
            arity(2);
            if (it[1].kind != Sexp::String) throw ParseError("'weak' expects a quoted step string", it[1].pos);
            try {
                return Proof::weak(Inclusion::parse(it[1].text), build(it[2]));
            } catch (const ProofError& err) {
                throw ParseError(err.what(), it[1].pos);
            }
        }
        if (r == "efq") return arity(2), Proof::efq(formula(it[1]), build(it[2]));
        if (r == "pi1") return arity(2), Proof::pi1(formula(it[1]), build(it[2]));
        if (r == "pi2") return arity(2), Proof::pi2(formula(it[1]), build(it[2]));
        if (r == "drinker") return arity(3), Proof::drinker(var(it[1]), formula(it[2]), build(it[3]));
        if (r == "henkin-ex") return arity(3), Proof::henkin_ex(var(it[1]), formula(it[2]), build(it[3]));
        throw ParseError("unknown proof rule '" + r + "'", e.pos);
    }

private:
    std::string_view payload(const Sexp& e, const char* what) {
        if (e.kind != Sexp::Atom && e.kind != Sexp::Block)
            throw ParseError(std::string("expected ") + what, e.pos);
        return e.text;
    }

    Formula formula(const Sexp& e) {
        return FormulaParser(payload(e, "a formula"), opts_, e.pos).formula_eof();
    }

    Term term(const Sexp& e) { return FormulaParser(payload(e, "a term"), opts_, e.pos).term_eof(); }

    VarId var(const Sexp& e) {
        Term t = term(e);
        if (!t.is_var()) throw ParseError("expected a variable", e.pos);
        return t.as_var();
    }

    ParseOptions opts_;
};

}  // namespace

Proof parse_proof(std::string_view text, ParseOptions opts) {
    Sexp e = SexpReader(text).read_all();
    return ProofBuilder(opts).build(e);
}

}  // namespace henkin
