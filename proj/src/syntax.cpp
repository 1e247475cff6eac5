#include "cjl/syntax.hpp"

#include <array>
#include <cctype>
#include <functional>
#include <sstream>
#include <utility>

namespace cjl {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::strong_ordering cmp_term(const Term& a, const Term& b);
std::strong_ordering cmp_formula(const Formula& a, const Formula& b);

std::strong_ordering cmp_term(const Term& a, const Term& b) {
    if (!a || !b) return static_cast<bool>(a) <=> static_cast<bool>(b);
    if (a.kind() != b.kind()) return a.kind() <=> b.kind();
    switch (a.kind()) {
        case TermKind::Constant:
        case TermKind::Variable:
            return a.name().compare(b.name()) <=> 0;
        case TermKind::App:
        case TermKind::Sum:
            if (auto c = cmp_term(a.left(), b.left()); c != 0) return c;
            return cmp_term(a.right(), b.right());
        case TermKind::Bang:
            return cmp_term(a.left(), b.left());
        case TermKind::Pair:
            if (auto c = cmp_term(a.left(), b.left()); c != 0) return c;
            return cmp_formula(a.formula(), b.formula());
    }
    return std::strong_ordering::equal;
}

std::strong_ordering cmp_formula(const Formula& a, const Formula& b) {
    if (!a || !b) return static_cast<bool>(a) <=> static_cast<bool>(b);
    if (a.kind() != b.kind()) return a.kind() <=> b.kind();
    switch (a.kind()) {
        case FormulaKind::Atom:
            return a.name().compare(b.name()) <=> 0;
        case FormulaKind::Neg:
        case FormulaKind::Box:
            return cmp_formula(a.inner(), b.inner());
        case FormulaKind::Just:
            if (auto c = cmp_term(a.term(), b.term()); c != 0) return c;
            return cmp_formula(a.inner(), b.inner());
        default:
            if (auto c = cmp_formula(a.left(), b.left()); c != 0) return c;
            return cmp_formula(a.right(), b.right());
    }
}

const std::string kEmpty;
const Term kNullTerm;
const Formula kNullFormula;

}  // namespace

// ---------------------------------------------------------------- dialects

std::string_view dialect_name(Dialect d) {
    switch (d) {
        case Dialect::LPCplus: return "LPCplus";
        case Dialect::LPCint: return "LPCint";
        case Dialect::LPCprime: return "LPCprime";
        case Dialect::LPCKplus: return "LPCKplus";
        case Dialect::J4Cplus: return "J4Cplus";
        case Dialect::JCplus: return "JCplus";
        case Dialect::L: return "L";
        case Dialect::JRC: return "JRC";
    }
    return "?";
}

std::optional<Dialect> dialect_from_name(std::string_view s) {
    static constexpr std::array all{Dialect::LPCplus, Dialect::LPCint,  Dialect::LPCprime,
                                    Dialect::LPCKplus, Dialect::J4Cplus, Dialect::JCplus,
                                    Dialect::L,        Dialect::JRC};
    for (auto d : all)
        if (dialect_name(d) == s) return d;
    return std::nullopt;
}

bool is_jrc(Dialect d) { return d == Dialect::JRC; }

// ------------------------------------------------------------------- terms

Term Term::constant(std::string name) {
    Term t;
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::Constant;
    n->hash = mix(std::hash<std::string>{}(name), 11);
    n->name = std::move(name);
    t.n_ = std::move(n);
    return t;
}

Term Term::variable(std::string name) {
    Term t;
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::Variable;
    n->hash = mix(std::hash<std::string>{}(name), 13);
    n->name = std::move(name);
    t.n_ = std::move(n);
    return t;
}

Term Term::app(Term l, Term r) {
    Term t;
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::App;
    n->hash = mix(mix(101, l.hash()), r.hash());
    n->size = 1 + l.size() + r.size();
    n->left = std::move(l);
    n->right = std::move(r);
    t.n_ = std::move(n);
    return t;
}

Term Term::sum(Term l, Term r) {
    Term t;
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::Sum;
    n->hash = mix(mix(103, l.hash()), r.hash());
    n->size = 1 + l.size() + r.size();
    n->left = std::move(l);
    n->right = std::move(r);
    t.n_ = std::move(n);
    return t;
}

Term Term::bang(Term inner) {
    Term t;
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::Bang;
    n->hash = mix(107, inner.hash());
    n->size = 1 + inner.size();
    n->left = std::move(inner);
    t.n_ = std::move(n);
    return t;
}

Term Term::pair(Term inner, Formula f) {
    Term t;
    auto n = std::make_shared<TermNode>();
    n->kind = TermKind::Pair;
    n->hash = mix(mix(109, inner.hash()), f.hash());
    n->size = 1 + inner.size() + f.size();
    n->left = std::move(inner);
    n->formula = std::move(f);
    t.n_ = std::move(n);
    return t;
}

TermKind Term::kind() const { return n_->kind; }
const std::string& Term::name() const { return n_ ? n_->name : kEmpty; }
const Term& Term::left() const { return n_ ? n_->left : kNullTerm; }
const Term& Term::right() const { return n_ ? n_->right : kNullTerm; }
const Formula& Term::formula() const { return n_ ? n_->formula : kNullFormula; }
std::size_t Term::hash() const { return n_ ? n_->hash : 0; }
std::size_t Term::size() const { return n_ ? n_->size : 0; }

bool operator==(const Term& a, const Term& b) {
    if (a.n_ == b.n_) return true;
    if (!a.n_ || !b.n_ || a.n_->hash != b.n_->hash) return false;
    return cmp_term(a, b) == 0;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (a.n_ == b.n_) return std::strong_ordering::equal;
    return cmp_term(a, b);
}

// ---------------------------------------------------------------- formulas

namespace {

std::shared_ptr<FormulaNode> formula_node(FormulaKind k, Formula l, Formula r) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = k;
    n->hash = mix(mix(static_cast<std::size_t>(k) * 131 + 17, l.hash()), r.hash());
    n->size = 1 + l.size() + r.size();
    n->left = std::move(l);
    n->right = std::move(r);
    return n;
}

}  // namespace

Formula Formula::atom(std::string name) {
    Formula f;
    auto n = std::make_shared<FormulaNode>();
    n->kind = FormulaKind::Atom;
    n->hash = mix(std::hash<std::string>{}(name), 5);
    n->name = std::move(name);
    f.n_ = std::move(n);
    return f;
}

Formula Formula::neg(Formula g) {
    Formula f;
    f.n_ = formula_node(FormulaKind::Neg, std::move(g), {});
    return f;
}
Formula Formula::conj(Formula l, Formula r) {
    Formula f;
    f.n_ = formula_node(FormulaKind::And, std::move(l), std::move(r));
    return f;
}
Formula Formula::mat_imp(Formula l, Formula r) {
    Formula f;
    f.n_ = formula_node(FormulaKind::MatImp, std::move(l), std::move(r));
    return f;
}
Formula Formula::cf(Formula l, Formula r) {
    Formula f;
    f.n_ = formula_node(FormulaKind::Cf, std::move(l), std::move(r));
    return f;
}
Formula Formula::rel_imp(Formula l, Formula r) {
    Formula f;
    f.n_ = formula_node(FormulaKind::RelImp, std::move(l), std::move(r));
    return f;
}
Formula Formula::rel_cf(Formula l, Formula r) {
    Formula f;
    f.n_ = formula_node(FormulaKind::RelCf, std::move(l), std::move(r));
    return f;
}
Formula Formula::box(Formula g) {
    Formula f;
    f.n_ = formula_node(FormulaKind::Box, std::move(g), {});
    return f;
}
Formula Formula::just(Term t, Formula g) {
    Formula f;
    auto n = formula_node(FormulaKind::Just, std::move(g), {});
    n->hash = mix(n->hash, t.hash());
    n->size += t.size();
    n->term = std::move(t);
    f.n_ = std::move(n);
    return f;
}

FormulaKind Formula::kind() const { return n_->kind; }
const std::string& Formula::name() const { return n_ ? n_->name : kEmpty; }
const Formula& Formula::left() const { return n_ ? n_->left : kNullFormula; }
const Formula& Formula::right() const { return n_ ? n_->right : kNullFormula; }
const Term& Formula::term() const { return n_ ? n_->term : kNullTerm; }
std::size_t Formula::hash() const { return n_ ? n_->hash : 0; }
std::size_t Formula::size() const { return n_ ? n_->size : 0; }

bool Formula::is_binary() const {
    if (!n_) return false;
    switch (n_->kind) {
        case FormulaKind::And:
        case FormulaKind::MatImp:
        case FormulaKind::Cf:
        case FormulaKind::RelImp:
        case FormulaKind::RelCf:
            return true;
        default:
            return false;
    }
}

bool operator==(const Formula& a, const Formula& b) {
    if (a.n_ == b.n_) return true;
    if (!a.n_ || !b.n_ || a.n_->hash != b.n_->hash) return false;
    return cmp_formula(a, b) == 0;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
    if (a.n_ == b.n_) return std::strong_ordering::equal;
    return cmp_formula(a, b);
}

// ----------------------------------------------------------- abbreviations

Formula falsum() {
    auto p = Formula::atom(std::string(kFalsumAtom));
    return Formula::conj(p, Formula::neg(p));
}
Formula verum() { return Formula::neg(falsum()); }
Formula disj(Formula a, Formula b) {
    return Formula::neg(Formula::conj(Formula::neg(std::move(a)), Formula::neg(std::move(b))));
}
Formula equiv(Formula a, Formula b) {
    return Formula::conj(Formula::mat_imp(a, b), Formula::mat_imp(b, a));
}
Formula cf_equiv(Formula a, Formula b) { return Formula::conj(Formula::cf(a, b), Formula::cf(b, a)); }
Formula fusion(Formula a, Formula b) {
    return Formula::neg(Formula::rel_imp(std::move(a), Formula::neg(std::move(b))));
}
Formula conj_all(const std::vector<Formula>& fs) {
    if (fs.empty()) return verum();
    Formula acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::conj(acc, fs[i]);
    return acc;
}
Formula jtb(Formula f, Term t) { return Formula::conj(f, Formula::just(std::move(t), f)); }
Formula nozick_k(Formula f, Term t) {
    auto tf = Formula::just(t, f);
    return conj_all({f, tf, Formula::cf(Formula::neg(f), Formula::neg(tf)), Formula::cf(f, tf)});
}

// ------------------------------------------------------------ lexical classes

bool is_variable_name(std::string_view s) {
    if (s.empty() || (s[0] != 'x' && s[0] != 'y' && s[0] != 'z')) return false;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

bool is_constant_name(std::string_view s) {
    if (s.empty() || s[0] != 'c') return false;
    if (s.size() == 1) return true;
    if (s[1] == '_') {
        if (s.size() == 2) return false;
        for (std::size_t i = 2; i < s.size(); ++i) {
            unsigned char ch = static_cast<unsigned char>(s[i]);
            if (!std::isalnum(ch) && ch != '_') return false;
        }
        return true;
    }
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

// ------------------------------------------------------------------- lexer

ParseError::ParseError(Kind kind, std::size_t pos, std::string token, const std::string& what)
    : std::runtime_error(what), kind_(kind), pos_(pos), token_(std::move(token)) {}

namespace {

enum class Tok {
    Ident, LParen, RParen, Tilde, Amp, Bar, At, Imp, Gt, Arrow, Leads, Eq, CfEq,
    Colon, Dot, Plus, Bang, Lt, Comma, BoxOp, Turnstile, PairClose, True, False, End
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

struct Alias {
    std::string_view utf8;
    Tok kind;
};

constexpr Alias kAliases[] = {
    {"\xC2\xAC", Tok::Tilde},          // ¬
    {"\xE2\x88\xBC", Tok::Tilde},      // ∼
    {"\xE2\x88\xA7", Tok::Amp},        // ∧
    {"\xE2\x88\xA8", Tok::Bar},        // ∨
    {"\xE2\x8A\x83", Tok::Imp},        // ⊃
    {"\xE2\x86\x92", Tok::Arrow},      // →
    {"\xE2\x87\x9D", Tok::Leads},      // ⇝
    {"\xE2\x89\xA1", Tok::Eq},         // ≡
    {"\xE2\x87\x94", Tok::CfEq},       // ⇔
    {"\xE2\x88\x98", Tok::At},         // ∘
    {"\xE2\x96\xA1", Tok::BoxOp},      // □
    {"\xC2\xB7", Tok::Dot},            // ·
    {"\xE2\x9F\xA8", Tok::Lt},         // ⟨
    {"\xE2\x9F\xA9", Tok::PairClose},  // ⟩
    {"\xE2\x8A\xA5", Tok::False},      // ⊥
    {"\xE2\x8A\xA4", Tok::True},       // ⊤
    {"\xE2\x8A\xA2", Tok::Turnstile},  // ⊢
};

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto push = [&](Tok k, std::size_t len) {
        out.push_back({k, std::string(s.substr(i, len)), i});
        i += len;
    };
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (std::isalpha(c) || c == '_') {
            std::size_t j = i + 1;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            std::string word(s.substr(i, j - i));
            Tok k = word == "true" ? Tok::True : word == "false" ? Tok::False : Tok::Ident;
            if (k == Tok::Ident && !std::islower(c))
                throw ParseError(ParseError::Kind::Lexical, i, word,
                                 "identifiers must start with a lowercase letter: '" + word + "'");
            out.push_back({k, word, i});
            i = j;
            continue;
        }
        auto rest = s.substr(i);
        auto starts = [&](std::string_view p) { return rest.substr(0, p.size()) == p; };
        if (starts("<=>")) { push(Tok::CfEq, 3); continue; }
        if (starts("|-")) { push(Tok::Turnstile, 2); continue; }
        if (starts("=>")) { push(Tok::Imp, 2); continue; }
        if (starts("==")) { push(Tok::Eq, 2); continue; }
        if (starts("->")) { push(Tok::Arrow, 2); continue; }
        if (starts("~>")) { push(Tok::Leads, 2); continue; }
        if (starts("[]")) { push(Tok::BoxOp, 2); continue; }
        switch (c) {
            case '(': push(Tok::LParen, 1); continue;
            case ')': push(Tok::RParen, 1); continue;
            case '~': push(Tok::Tilde, 1); continue;
            case '&': push(Tok::Amp, 1); continue;
            case '|': push(Tok::Bar, 1); continue;
            case '@': push(Tok::At, 1); continue;
            case '>': push(Tok::Gt, 1); continue;
            case ':': push(Tok::Colon, 1); continue;
            case '.': push(Tok::Dot, 1); continue;
            case '+': push(Tok::Plus, 1); continue;
            case '!': push(Tok::Bang, 1); continue;
            case '<': push(Tok::Lt, 1); continue;
            case ',': push(Tok::Comma, 1); continue;
            default: break;
        }
        bool matched = false;
        for (const auto& a : kAliases) {
            if (starts(a.utf8)) {
                push(a.kind, a.utf8.size());
                matched = true;
                break;
            }
        }
        if (matched) continue;
        std::size_t len = 1;
        if (c >= 0xC0) len = c >= 0xF0 ? 4 : c >= 0xE0 ? 3 : 2;
        throw ParseError(ParseError::Kind::Lexical, i, std::string(s.substr(i, len)),
                         "unexpected character '" + std::string(s.substr(i, len)) +
                             "' at position " + std::to_string(i));
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

// ------------------------------------------------------------------ parser

class Parser {
public:
    Parser(std::string_view text, Dialect d) : toks_(lex(text)), dialect_(d) {}

    Formula formula_only() {
        auto f = equivalence();
        expect_end();
        return f;
    }

    Term term_only() {
        auto t = term_sum();
        expect_end();
        return t;
    }

    Sequent sequent() {
        Sequent s;
        std::vector<Formula> list;
        list.push_back(equivalence());
        while (peek().kind == Tok::Comma) {
            advance();
            list.push_back(equivalence());
        }
        if (peek().kind == Tok::Turnstile) {
            advance();
            s.premises = std::move(list);
            s.goal = equivalence();
        } else {
            if (list.size() != 1) fail("expected '|-' after premise list");
            s.goal = list.front();
        }
        expect_end();
        return s;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& advance() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string& msg) const {
        const auto& t = peek();
        std::string tok = t.kind == Tok::End ? "<end>" : t.text;
        throw ParseError(ParseError::Kind::Grammar, t.pos, tok,
                         msg + " at position " + std::to_string(t.pos) + " near '" + tok + "'");
    }

    [[noreturn]] void dialect_fail(const Token& t, const std::string& what) const {
        throw ParseError(ParseError::Kind::Dialect, t.pos, t.text,
                         "dialect violation: " + what + " is not available in " +
                             std::string(dialect_name(dialect_)) + " (position " +
                             std::to_string(t.pos) + ")");
    }

    void expect(Tok k, const char* what) {
        if (peek().kind != k) fail(std::string("expected ") + what);
        advance();
    }

    void expect_end() {
        if (peek().kind != Tok::End) fail("unexpected trailing input");
    }

    bool jrc() const { return dialect_ == Dialect::JRC; }

    void require_jrc(const Token& t, const char* what) const {
        if (!jrc()) dialect_fail(t, what);
    }

    Formula equivalence() {
        auto l = conditional();
        while (peek().kind == Tok::Eq || peek().kind == Tok::CfEq) {
            const Token& op = advance();
            if (op.kind == Tok::Eq) require_lpc(op, "'=='");
            else require_lpc(op, "'<=>'");
            auto r = conditional();
            l = op.kind == Tok::Eq ? equiv(l, r) : cf_equiv(l, r);
        }
        return l;
    }

    Formula conditional() {
        auto l = disjunction();
        switch (peek().kind) {
            case Tok::Imp: {
                require_lpc(advance(), "'=>'");
                return Formula::mat_imp(l, conditional());
            }
            case Tok::Gt: {
                require_lpc(advance(), "'>'");
                return Formula::cf(l, conditional());
            }
            case Tok::Arrow: {
                require_jrc(advance(), "'->'");
                return Formula::rel_imp(l, conditional());
            }
            case Tok::Leads: {
                require_jrc(advance(), "'~>'");
                return Formula::rel_cf(l, conditional());
            }
            default:
                return l;
        }
    }

    Formula disjunction() {
        auto l = conjunction();
        while (peek().kind == Tok::Bar || peek().kind == Tok::At) {
            const Token& op = advance();
            if (op.kind == Tok::At) require_jrc(op, "'@'");
            auto r = conjunction();
            l = op.kind == Tok::Bar ? disj(l, r) : fusion(l, r);
        }
        return l;
    }

    Formula conjunction() {
        auto l = unary();
        while (peek().kind == Tok::Amp) {
            advance();
            l = Formula::conj(l, unary());
        }
        return l;
    }

    bool may_start_term() const {
        switch (peek().kind) {
            case Tok::Ident:
            case Tok::LParen:
            case Tok::Bang:
            case Tok::Lt:
                return true;
            default:
                return false;
        }
    }

    Formula unary() {
        switch (peek().kind) {
            case Tok::Tilde:
                advance();
                return Formula::neg(unary());
            case Tok::BoxOp: {
                const Token& op = advance();
                if (dialect_ != Dialect::L && dialect_ != Dialect::JRC) dialect_fail(op, "'[]'");
                return Formula::box(unary());
            }
            default:
                break;
        }
        if (may_start_term()) {
            std::size_t save = pos_;
            std::optional<Term> t;
            try {
                auto candidate = term_sum();
                if (peek().kind == Tok::Colon) t = candidate;
            } catch (const ParseError& e) {
                if (e.kind() == ParseError::Kind::Dialect) throw;
            }
            if (t) {
                advance();
                return Formula::just(*t, unary());
            }
            pos_ = save;
        }
        return primary();
    }

    Formula primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::True:
                advance();
                return verum();
            case Tok::False:
                advance();
                return falsum();
            case Tok::Ident:
                if (is_variable_name(t.text) || is_constant_name(t.text))
                    fail("'" + t.text + "' is a justification term, expected a formula");
                advance();
                return Formula::atom(t.text);
            case Tok::LParen: {
                advance();
                auto f = equivalence();
                expect(Tok::RParen, "')'");
                return f;
            }
            default:
                fail("expected a formula");
        }
    }

    Term term_sum() {
        auto l = term_app();
        while (peek().kind == Tok::Plus) {
            advance();
            l = Term::sum(l, term_app());
        }
        return l;
    }

    Term term_app() {
        auto l = term_prefix();
        while (peek().kind == Tok::Dot) {
            require_lpc(advance(), "application '.'");
            l = Term::app(l, term_prefix());
        }
        return l;
    }

    Term term_prefix() {
        if (peek().kind == Tok::Bang) {
            require_lpc(advance(), "'!'");
            return Term::bang(term_prefix());
        }
        return term_atom();
    }

    Term term_atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Ident:
                advance();
                if (is_constant_name(t.text)) {
                    require_lpc(t, "proof constant '" + t.text + "'");
                    return Term::constant(t.text);
                }
                return Term::variable(t.text);
            case Tok::LParen: {
                advance();
                auto inner = term_sum();
                expect(Tok::RParen, "')'");
                return inner;
            }
            case Tok::Lt: {
                const Token& open = advance();
                if (dialect_ != Dialect::LPCint) dialect_fail(open, "pair term '<t,phi>'");
                auto inner = term_sum();
                expect(Tok::Comma, "','");
                auto f = disjunction();
                if (peek().kind != Tok::Gt && peek().kind != Tok::PairClose) fail("expected '>'");
                advance();
                return Term::pair(inner, f);
            }
            default:
                fail("expected a term");
        }
    }

    void require_lpc(const Token& t, const std::string& what) const {
        if (jrc()) dialect_fail(t, what);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Dialect dialect_;
};

}  // namespace

Formula parse_formula(std::string_view text, Dialect d) { return Parser(text, d).formula_only(); }
Term parse_term(std::string_view text, Dialect d) { return Parser(text, d).term_only(); }
Sequent parse_sequent(std::string_view text, Dialect d) { return Parser(text, d).sequent(); }

// ----------------------------------------------------------------- printer

namespace {

// Precedence levels, weakest first.
enum Level { kEquiv = 0, kCond = 1, kDisj = 2, kConj = 3, kUnary = 4 };
enum TermLevel { kSum = 0, kApp = 1, kPrefix = 2 };

bool is_falsum(const Formula& f) {
    return f.is(FormulaKind::And) && f.left().is(FormulaKind::Atom) &&
           f.left().name() == kFalsumAtom && f.right().is(FormulaKind::Neg) &&
           f.right().inner() == f.left();
}

void print_term_at(std::ostream& os, const Term& t, int min_level);

void print_at(std::ostream& os, const Formula& f, int min_level) {
    int level = kUnary;
    std::ostringstream body;
    switch (f.kind()) {
        case FormulaKind::Atom:
            body << f.name();
            break;
        case FormulaKind::Neg: {
            const auto& g = f.inner();
            if (is_falsum(g)) {
                body << "true";
            } else if (g.is(FormulaKind::And) && g.left().is(FormulaKind::Neg) &&
                       g.right().is(FormulaKind::Neg)) {
                level = kDisj;
                print_at(body, g.left().inner(), kDisj);
                body << " | ";
                print_at(body, g.right().inner(), kConj);
            } else if (g.is(FormulaKind::RelImp) && g.right().is(FormulaKind::Neg)) {
                level = kDisj;
                print_at(body, g.left(), kDisj);
                body << " @ ";
                print_at(body, g.right().inner(), kConj);
            } else {
                body << "~";
                print_at(body, g, kUnary);
            }
            break;
        }
        case FormulaKind::And: {
            const auto& l = f.left();
            const auto& r = f.right();
            if (is_falsum(f)) {
                body << "false";
            } else if (l.is(FormulaKind::MatImp) && r.is(FormulaKind::MatImp) &&
                       l.left() == r.right() && l.right() == r.left()) {
                level = kEquiv;
                print_at(body, l.left(), kEquiv);
                body << " == ";
                print_at(body, l.right(), kCond);
            } else if (l.is(FormulaKind::Cf) && r.is(FormulaKind::Cf) && l.left() == r.right() &&
                       l.right() == r.left()) {
                level = kEquiv;
                print_at(body, l.left(), kEquiv);
                body << " <=> ";
                print_at(body, l.right(), kCond);
            } else {
                level = kConj;
                print_at(body, l, kConj);
                body << " & ";
                print_at(body, r, kUnary);
            }
            break;
        }
        case FormulaKind::MatImp:
        case FormulaKind::Cf:
        case FormulaKind::RelImp:
        case FormulaKind::RelCf: {
            level = kCond;
            const char* op = f.kind() == FormulaKind::MatImp ? " => "
                             : f.kind() == FormulaKind::Cf   ? " > "
                             : f.kind() == FormulaKind::RelImp ? " -> "
                                                               : " ~> ";
            print_at(body, f.left(), kDisj);
            body << op;
            print_at(body, f.right(), kCond);
            break;
        }
        case FormulaKind::Just:
            print_term_at(body, f.term(), kPrefix);
            body << ":";
            print_at(body, f.inner(), kUnary);
            break;
        case FormulaKind::Box:
            body << "[]";
            print_at(body, f.inner(), kUnary);
            break;
    }
    if (level < min_level) os << "(" << body.str() << ")";
    else os << body.str();
}

void print_term_at(std::ostream& os, const Term& t, int min_level) {
    int level = kPrefix;
    std::ostringstream body;
    switch (t.kind()) {
        case TermKind::Constant:
        case TermKind::Variable:
            body << t.name();
            break;
        case TermKind::App:
            level = kApp;
            print_term_at(body, t.left(), kApp);
            body << ".";
            print_term_at(body, t.right(), kPrefix);
            break;
        case TermKind::Sum:
            level = kSum;
            print_term_at(body, t.left(), kSum);
            body << "+";
            print_term_at(body, t.right(), kApp);
            break;
        case TermKind::Bang:
            body << "!";
            print_term_at(body, t.left(), kPrefix);
            break;
        case TermKind::Pair:
            body << "<";
            print_term_at(body, t.left(), kSum);
            body << ",";
            print_at(body, t.formula(), kDisj);
            body << ">";
            break;
    }
    if (level < min_level) os << "(" << body.str() << ")";
    else os << body.str();
}

}  // namespace

std::string print_formula(const Formula& f) {
    if (!f) return "";
    std::ostringstream os;
    print_at(os, f, kEquiv);
    return os.str();
}

std::string print_term(const Term& t) {
    if (!t) return "";
    std::ostringstream os;
    print_term_at(os, t, kSum);
    return os.str();
}

std::string print_sequent(const Sequent& s) {
    std::string out;
    for (std::size_t i = 0; i < s.premises.size(); ++i) {
        if (i) out += ", ";
        out += print_formula(s.premises[i]);
    }
    if (!s.premises.empty()) out += " |- ";
    return out + print_formula(s.goal);
}

// ---------------------------------------------------------- dialect checks

std::optional<std::string> dialect_violation(const Term& t, Dialect d) {
    switch (t.kind()) {
        case TermKind::Constant:
            if (d == Dialect::JRC) return "proof constant " + t.name();
            return std::nullopt;
        case TermKind::Variable:
            return std::nullopt;
        case TermKind::App:
            if (d == Dialect::JRC) return std::string("application term");
            [[fallthrough]];
        case TermKind::Sum:
            if (auto v = dialect_violation(t.left(), d)) return v;
            return dialect_violation(t.right(), d);
        case TermKind::Bang:
            if (d == Dialect::JRC) return std::string("'!' term");
            return dialect_violation(t.left(), d);
        case TermKind::Pair:
            if (d != Dialect::LPCint) return std::string("pair term");
            if (auto v = dialect_violation(t.left(), d)) return v;
            return dialect_violation(t.formula(), d);
    }
    return std::nullopt;
}

std::optional<std::string> dialect_violation(const Formula& f, Dialect d) {
    bool jrc = d == Dialect::JRC;
    switch (f.kind()) {
        case FormulaKind::Atom:
            return std::nullopt;
        case FormulaKind::Neg:
            return dialect_violation(f.inner(), d);
        case FormulaKind::Box:
            if (d != Dialect::L && !jrc) return std::string("box");
            return dialect_violation(f.inner(), d);
        case FormulaKind::Just:
            if (auto v = dialect_violation(f.term(), d)) return v;
            return dialect_violation(f.inner(), d);
        case FormulaKind::MatImp:
            if (jrc) return std::string("material implication");
            break;
        case FormulaKind::Cf:
            if (jrc) return std::string("counterfactual '>'");
            break;
        case FormulaKind::RelImp:
            if (!jrc) return std::string("relevant implication");
            break;
        case FormulaKind::RelCf:
            if (!jrc) return std::string("relevant counterfactual");
            break;
        case FormulaKind::And:
            break;
    }
    if (auto v = dialect_violation(f.left(), d)) return v;
    return dialect_violation(f.right(), d);
}

// ------------------------------------------------------- subformula tools

namespace {

void collect_sub(const Formula& f, FormulaSet& out) {
    if (!out.insert(f).second) return;
    switch (f.kind()) {
        case FormulaKind::Atom:
            return;
        case FormulaKind::Neg:
        case FormulaKind::Box:
        case FormulaKind::Just:
            collect_sub(f.inner(), out);
            return;
        default:
            collect_sub(f.left(), out);
            collect_sub(f.right(), out);
    }
}

void collect_atoms(const Formula& f, std::set<std::string>& out) {
    switch (f.kind()) {
        case FormulaKind::Atom:
            out.insert(f.name());
            return;
        case FormulaKind::Neg:
        case FormulaKind::Box:
        case FormulaKind::Just:
            collect_atoms(f.inner(), out);
            return;
        default:
            collect_atoms(f.left(), out);
            collect_atoms(f.right(), out);
    }
}

void collect_terms(const Formula& f, TermSet& out);

void collect_subterms(const Term& t, TermSet& out) {
    if (!out.insert(t).second) return;
    switch (t.kind()) {
        case TermKind::Constant:
        case TermKind::Variable:
            return;
        case TermKind::App:
        case TermKind::Sum:
            collect_subterms(t.left(), out);
            collect_subterms(t.right(), out);
            return;
        case TermKind::Bang:
            collect_subterms(t.left(), out);
            return;
        case TermKind::Pair:
            collect_subterms(t.left(), out);
            collect_terms(t.formula(), out);
            return;
    }
}

void collect_terms(const Formula& f, TermSet& out) {
    switch (f.kind()) {
        case FormulaKind::Atom:
            return;
        case FormulaKind::Just:
            collect_subterms(f.term(), out);
            collect_terms(f.inner(), out);
            return;
        case FormulaKind::Neg:
        case FormulaKind::Box:
            collect_terms(f.inner(), out);
            return;
        default:
            collect_terms(f.left(), out);
            collect_terms(f.right(), out);
    }
}

}  // namespace

FormulaSet subformulas(const Formula& f) {
    FormulaSet out;
    collect_sub(f, out);
    return out;
}

FormulaSet subformulas(const std::vector<Formula>& fs) {
    FormulaSet out;
    for (const auto& f : fs) collect_sub(f, out);
    return out;
}

std::set<std::string> atoms(const Formula& f) {
    std::set<std::string> out;
    collect_atoms(f, out);
    return out;
}

TermSet terms_of(const Formula& f) {
    TermSet out;
    collect_terms(f, out);
    return out;
}

TermSet subterms(const Term& t) {
    TermSet out;
    collect_subterms(t, out);
    return out;
}

}  // namespace cjl
