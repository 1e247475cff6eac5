#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cjl/routley.hpp"

namespace cjl {

struct Label {
    int index = 0;
    bool sharp = false;

    Label bar() const { return {index, !sharp}; }
    bool is_root() const { return index == 0 && !sharp; }
    std::string str() const;
    friend auto operator<=>(const Label&, const Label&) = default;
};

enum class NodeKind { Signed, FormulaEdge, TermEdge, Ternary };

// phi,+x / phi,-x, x ->_phi y, x ->_t y, or r x y z.
struct NodeExpr {
    NodeKind kind = NodeKind::Signed;
    Formula formula;
    Term term;
    bool plus = true;
    Label x, y, z;

    static NodeExpr signed_f(Formula f, bool plus, Label x);
    static NodeExpr fedge(Label x, Formula phi, Label y);
    static NodeExpr tedge(Label x, Term t, Label y);
    static NodeExpr tern(Label x, Label y, Label z);

    std::string str() const;
    friend bool operator==(const NodeExpr& a, const NodeExpr& b);
    friend std::strong_ordering operator<=>(const NodeExpr& a, const NodeExpr& b);
};

enum class Rule {
    Root,
    TNeg, FNeg, TAnd, FAnd, TImp, FImp, TCf, FCf, FCf0, Cut, TJust, FJust, EdgeSum, Normality
};
std::string_view rule_name(Rule r);

struct TableauBudget {
    int max_fresh_labels = 12;
    long max_steps = 5000;
};

// Deliberate rule defects, for negative controls only.
struct RuleMutations {
    bool t_relcf_ignores_edge = false;  // T~> fires at every label
};

struct TraceLine {
    int number = 0;
    NodeExpr expr;
    Rule rule = Rule::Root;
    std::vector<int> premises;  // line numbers
    long step = 0;              // rule application that produced the line
};

struct ProofTree {
    std::vector<TraceLine> lines;
    std::vector<ProofTree> children;
    enum class End { Closed, Open, Exhausted, Split } end = End::Open;
    std::pair<int, int> clash{0, 0};  // line numbers of the complementary pair

    std::string render() const;
    // Rules of the lines in creation order, roots excluded.
    std::vector<Rule> rule_sequence() const;
    int line_count() const;
};

struct Branch {
    std::vector<NodeExpr> nodes;
    std::map<NodeExpr, int> where;
    int next_fresh = 1;
    std::set<std::string> applied;  // rule instance keys

    // Index of the new node, or -1 when already present.
    int add(const NodeExpr& n);
    bool contains(const NodeExpr& n) const { return where.count(n) > 0; }
    std::set<Label> labels() const;
    // Antecedents of conditionals signed on the branch.
    FormulaSet antecedents() const;
};

struct ProofResult {
    enum class Verdict { Closed, Open, Exhausted } verdict = Verdict::Exhausted;
    ProofTree tree;
    std::optional<Branch> open_branch;
    std::optional<RoutleyModel> model;
    int root_state = 0;
    long steps = 0;
    std::string budget_report;
};
std::string_view verdict_name(ProofResult::Verdict v);

// Throws std::invalid_argument on formulas outside the tableau language.
ProofResult prove(const std::vector<Formula>& premises, const Formula& goal, const TableauBudget& budget = {},
                  const RuleMutations& mutations = {});

// Throws std::invalid_argument unless the branch is open and complete.
std::pair<RoutleyModel, int> extract_model(const Branch& branch);
bool branch_complete(const Branch& branch);
bool branch_closed(const Branch& branch);

// Open: the model refutes the sequent and passes the JRC conditions.
// Closed: no countermodel up to size_bound. Exhausted: true.
bool verify_result(const ProofResult& r, const std::vector<Formula>& premises, const Formula& goal, int size_bound);

}  // namespace cjl
