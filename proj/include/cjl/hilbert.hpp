#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cjl/kripke.hpp"
#include "cjl/syntax.hpp"

namespace cjl {

// Metavariable bindings. Formula metavariables are template atoms, term
// metavariables are template variables.
struct Substitution {
    std::map<std::string, Formula> formulas;
    std::map<std::string, Term> terms;

    std::string str() const;
};

struct AxiomMatch {
    std::string scheme;
    Formula pattern;  // for scheme 1 the propositional skeleton of the instance
    Substitution subst;
};

// Scheme ids in match order: "1".."10", "4'", and "BK" "BT" "B4" "B5" for the box.
std::vector<std::string> schemes_for(Dialect d);
bool has_hilbert_system(Dialect d);
// Template of a fixed-shape scheme; throws for "1" and unknown ids.
Formula scheme_template(const std::string& id);
Formula instantiate(const Formula& pattern, const Substitution& s);
Term instantiate(const Term& pattern, const Substitution& s);

// Classical validity with every non-Boolean subformula opaque.
bool is_tautology(const Formula& f);
// Skeleton over atoms A1..An plus the bindings; nullopt above kMaxOpaque components.
inline constexpr int kMaxOpaque = 16;
std::optional<AxiomMatch> propositional_skeleton(const Formula& f);

std::optional<AxiomMatch> match_axiom(const Formula& f, Dialect d);
std::vector<AxiomMatch> all_axiom_matches(const Formula& f, Dialect d);

// Constant allotted to a scheme by an axiomatically appropriate specification.
std::string appropriate_constant(const std::string& scheme);
// c:f is in cs, and f is an axiom instance of the dialect.
bool cs_admits(const ConstantSpecification& cs, const std::string& c, const Formula& f, Dialect d);

enum class Step { Axiom, CS, MP, RCN, RCEA, Nec, Hyp, RCK, CC, PC };

// A citation is a line number or, for MP, an inline axiom instance of a scheme.
struct Citation {
    int line = 0;
    std::string scheme;

    static Citation to_line(int n) { return {n, {}}; }
    static Citation to_axiom(std::string id) { return {0, std::move(id)}; }
    bool is_axiom() const { return !scheme.empty(); }
};

struct Justification {
    Step step = Step::Hyp;
    std::string scheme;  // Axiom
    std::vector<Citation> refs;

    std::string str() const;
};

struct DerivationLine {
    Formula formula;
    Justification just;
    std::string note;
};

// Lines are numbered from 1 in order.
struct Derivation {
    std::vector<DerivationLine> lines;

    Derivation& add(Formula f, Justification j, std::string note = {});
    int size() const { return static_cast<int>(lines.size()); }
    const Formula& conclusion() const;
    std::string render() const;
    bool primitive() const;
    int count(Step s) const;
};

class DerivationSyntaxError : public std::runtime_error {
public:
    DerivationSyntaxError(int line, const std::string& what);
    int line() const { return line_; }

private:
    int line_;
};

// One step per line: "n. <formula> ; tag args", with '#' comments.
Derivation parse_derivation(std::string_view text, Dialect d);

struct CheckResult {
    bool ok = true;
    int line = 0;  // first failing line, 0 when the derivation as a whole is rejected
    std::string reason;
    std::vector<int> hypotheses;
    // A conditional or box introduction was applied to a line resting on hypotheses,
    // so the result holds as a derived rule, not as consequence from premises.
    bool rule_on_hypotheses = false;

    explicit operator bool() const { return ok; }
    std::string describe() const;
};

CheckResult check_derivation(const Derivation& d, Dialect dialect, const ConstantSpecification& cs = {});

// Replaces every macro step by its primitive expansion.
Derivation expand(const Derivation& d);

// ((phi > a) & (phi > b)) => (phi > (a & b)) in six lines.
Derivation derive_cc(const Formula& phi, const Formula& a, const Formula& b);
// Conjunctive closure for n >= 1 conjuncts, by iterating the two-conjunct case.
Derivation derive_cc_n(const Formula& phi, const std::vector<Formula>& psis);
// From the hypothesis (psi1 & .. & psin) => psi to
// ((phi > psi1) & .. & (phi > psin)) => (phi > psi); n = 0 is a single conditional introduction.
Derivation derive_rck(const Formula& phi, const std::vector<Formula>& psis, const Formula& psi);
// Theorem form of premise consequence: (psi1 & .. & psin) => goal.
Formula premise_implication(const std::vector<Formula>& premises, const Formula& goal);

class InternalizationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Internalized {
    Term term;
    Derivation derivation;  // ends in term:conclusion
};

Internalized internalize(const Derivation& d, const ConstantSpecification& cs);

int count_terms(const Term& t, TermKind k);

}  // namespace cjl
