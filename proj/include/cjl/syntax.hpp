#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cjl {

enum class Dialect { LPCplus, LPCint, LPCprime, LPCKplus, J4Cplus, JCplus, L, JRC };

std::string_view dialect_name(Dialect d);
std::optional<Dialect> dialect_from_name(std::string_view s);
bool is_jrc(Dialect d);

enum class TermKind { Constant, Variable, App, Sum, Bang, Pair };
enum class FormulaKind { Atom, Neg, And, MatImp, Cf, RelImp, RelCf, Just, Box };

struct TermNode;
struct FormulaNode;
class Formula;

// Justification term. A null handle is the empty term.
class Term {
public:
    Term() = default;

    static Term constant(std::string name);
    static Term variable(std::string name);
    static Term app(Term l, Term r);
    static Term sum(Term l, Term r);
    static Term bang(Term t);
    static Term pair(Term t, Formula f);

    TermKind kind() const;
    const std::string& name() const;
    // App/Sum operands; Bang and Pair keep their inner term in left().
    const Term& left() const;
    const Term& right() const;
    const Formula& formula() const;

    std::size_t hash() const;
    std::size_t size() const;
    explicit operator bool() const { return static_cast<bool>(n_); }

    friend bool operator==(const Term& a, const Term& b);
    friend std::strong_ordering operator<=>(const Term& a, const Term& b);

private:
    std::shared_ptr<const TermNode> n_;
};

// Formula handle; immutable and cheap to copy.
class Formula {
public:
    Formula() = default;

    static Formula atom(std::string name);
    static Formula neg(Formula f);
    static Formula conj(Formula l, Formula r);
    static Formula mat_imp(Formula l, Formula r);
    static Formula cf(Formula l, Formula r);
    static Formula rel_imp(Formula l, Formula r);
    static Formula rel_cf(Formula l, Formula r);
    static Formula just(Term t, Formula f);
    static Formula box(Formula f);

    FormulaKind kind() const;
    const std::string& name() const;
    const Formula& left() const;
    const Formula& right() const;
    // Operand of Neg, Box and Just.
    const Formula& inner() const { return left(); }
    const Term& term() const;

    bool is(FormulaKind k) const { return n_ && kind() == k; }
    bool is_binary() const;
    std::size_t hash() const;
    std::size_t size() const;
    explicit operator bool() const { return static_cast<bool>(n_); }

    friend bool operator==(const Formula& a, const Formula& b);
    friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

private:
    std::shared_ptr<const FormulaNode> n_;
};

struct TermNode {
    TermKind kind;
    std::string name;
    Term left, right;
    Formula formula;
    std::size_t hash = 0;
    std::size_t size = 1;
};

struct FormulaNode {
    FormulaKind kind;
    std::string name;
    Formula left, right;
    Term term;
    std::size_t hash = 0;
    std::size_t size = 1;
};

struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return f.hash(); }
};
struct TermHash {
    std::size_t operator()(const Term& t) const { return t.hash(); }
};

using FormulaSet = std::set<Formula>;
using TermSet = std::set<Term>;

// Abbreviations.
inline constexpr std::string_view kFalsumAtom = "p0";
Formula falsum();
Formula verum();
Formula disj(Formula a, Formula b);
Formula equiv(Formula a, Formula b);
Formula cf_equiv(Formula a, Formula b);
Formula fusion(Formula a, Formula b);
// Left-nested conjunction; a single element is returned as is.
Formula conj_all(const std::vector<Formula>& fs);
// Justified true belief and the sensitivity/adherence knowledge macro.
Formula jtb(Formula f, Term t);
Formula nozick_k(Formula f, Term t);

struct Sequent {
    std::vector<Formula> premises;
    Formula goal;
};

class ParseError : public std::runtime_error {
public:
    enum class Kind { Lexical, Grammar, Dialect };
    ParseError(Kind kind, std::size_t pos, std::string token, const std::string& what);
    Kind kind() const { return kind_; }
    std::size_t position() const { return pos_; }
    const std::string& token() const { return token_; }

private:
    Kind kind_;
    std::size_t pos_;
    std::string token_;
};

Formula parse_formula(std::string_view text, Dialect d);
Term parse_term(std::string_view text, Dialect d);
// "A, B |- C" or a bare goal.
Sequent parse_sequent(std::string_view text, Dialect d);

std::string print_formula(const Formula& f);
std::string print_term(const Term& t);
std::string print_sequent(const Sequent& s);

// Returns a description of the first construct the dialect does not allow.
std::optional<std::string> dialect_violation(const Formula& f, Dialect d);
std::optional<std::string> dialect_violation(const Term& t, Dialect d);

FormulaSet subformulas(const Formula& f);
FormulaSet subformulas(const std::vector<Formula>& fs);
std::set<std::string> atoms(const Formula& f);
// Every term occurring in f, closed under subterms.
TermSet terms_of(const Formula& f);
TermSet subterms(const Term& t);

bool is_variable_name(std::string_view s);
bool is_constant_name(std::string_view s);

}  // namespace cjl
