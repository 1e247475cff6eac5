#include "cjl/tableau.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "cjl/falsifier.hpp"

namespace cjl {

std::string Label::str() const { return std::to_string(index) + (sharp ? "#" : ""); }

NodeExpr NodeExpr::signed_f(Formula f, bool plus, Label x) {
    NodeExpr n;
    n.kind = NodeKind::Signed;
    n.formula = std::move(f);
    n.plus = plus;
    n.x = x;
    return n;
}
NodeExpr NodeExpr::fedge(Label x, Formula phi, Label y) {
    NodeExpr n;
    n.kind = NodeKind::FormulaEdge;
    n.formula = std::move(phi);
    n.x = x;
    n.y = y;
    return n;
}
NodeExpr NodeExpr::tedge(Label x, Term t, Label y) {
    NodeExpr n;
    n.kind = NodeKind::TermEdge;
    n.term = std::move(t);
    n.x = x;
    n.y = y;
    return n;
}
NodeExpr NodeExpr::tern(Label x, Label y, Label z) {
    NodeExpr n;
    n.kind = NodeKind::Ternary;
    n.x = x;
    n.y = y;
    n.z = z;
    return n;
}

std::string NodeExpr::str() const {
    switch (kind) {
        case NodeKind::Signed: return print_formula(formula) + ", " + (plus ? "+" : "-") + x.str();
        case NodeKind::FormulaEdge: return x.str() + " ->[" + print_formula(formula) + "] " + y.str();
        case NodeKind::TermEdge: return x.str() + " ->[" + print_term(term) + "] " + y.str();
        case NodeKind::Ternary: return "r " + x.str() + " " + y.str() + " " + z.str();
    }
    return "?";
}

bool operator==(const NodeExpr& a, const NodeExpr& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const NodeExpr& a, const NodeExpr& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.x <=> b.x; c != 0) return c;
    switch (a.kind) {
        case NodeKind::Signed:
            if (auto c = a.plus <=> b.plus; c != 0) return c;
            return a.formula <=> b.formula;
        case NodeKind::FormulaEdge:
            if (auto c = a.y <=> b.y; c != 0) return c;
            return a.formula <=> b.formula;
        case NodeKind::TermEdge:
            if (auto c = a.y <=> b.y; c != 0) return c;
            return a.term <=> b.term;
        case NodeKind::Ternary:
            if (auto c = a.y <=> b.y; c != 0) return c;
            return a.z <=> b.z;
    }
    return std::strong_ordering::equal;
}

std::string_view rule_name(Rule r) {
    switch (r) {
        case Rule::Root: return "root";
        case Rule::TNeg: return "T~";
        case Rule::FNeg: return "F~";
        case Rule::TAnd: return "T&";
        case Rule::FAnd: return "F&";
        case Rule::TImp: return "T->";
        case Rule::FImp: return "F->";
        case Rule::TCf: return "T~>";
        case Rule::FCf: return "F~>";
        case Rule::FCf0: return "F~>0";
        case Rule::Cut: return "Cut";
        case Rule::TJust: return "T:";
        case Rule::FJust: return "F:";
        case Rule::EdgeSum: return "->+";
        case Rule::Normality: return "Norm";
    }
    return "?";
}

std::string_view verdict_name(ProofResult::Verdict v) {
    switch (v) {
        case ProofResult::Verdict::Closed: return "CLOSED";
        case ProofResult::Verdict::Open: return "OPEN";
        case ProofResult::Verdict::Exhausted: return "EXHAUSTED";
    }
    return "?";
}

// ------------------------------------------------------------------ branch

namespace {
std::vector<Label> labels_of(const NodeExpr& n) {
    switch (n.kind) {
        case NodeKind::Signed: return {n.x};
        case NodeKind::FormulaEdge:
        case NodeKind::TermEdge: return {n.x, n.y};
        case NodeKind::Ternary: return {n.x, n.y, n.z};
    }
    return {};
}

}  // namespace

int Branch::add(const NodeExpr& n) {
    auto [it, fresh] = where.emplace(n, static_cast<int>(nodes.size()));
    if (!fresh) return -1;
    nodes.push_back(n);
    for (const auto& l : labels_of(n))
        if (l.index >= next_fresh) next_fresh = l.index + 1;
    return it->second;
}

namespace {

bool is_cf_node(const NodeExpr& n) { return n.kind == NodeKind::Signed && n.formula.is(FormulaKind::RelCf); }

}  // namespace

std::set<Label> Branch::labels() const {
    std::set<Label> out;
    for (const auto& n : nodes)
        for (const auto& l : labels_of(n)) out.insert(l);
    return out;
}

FormulaSet Branch::antecedents() const {
    FormulaSet out;
    for (const auto& n : nodes)
        if (is_cf_node(n)) out.insert(n.formula.left());
    return out;
}

bool branch_closed(const Branch& b) {
    for (const auto& n : b.nodes)
        if (n.kind == NodeKind::Signed && n.plus && b.contains(NodeExpr::signed_f(n.formula, false, n.x))) return true;
    return false;
}

// ------------------------------------------------------------------ trees

namespace {

void render_tree(const ProofTree& t, int depth, std::ostringstream& out) {
    std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    for (const auto& l : t.lines) {
        out << pad << l.number << ". " << l.expr.str();
        if (l.rule != Rule::Root) {
            out << "  [" << rule_name(l.rule);
            for (std::size_t i = 0; i < l.premises.size(); ++i) out << (i ? "," : " ") << l.premises[i];
            out << "]";
        }
        out << "\n";
    }
    switch (t.end) {
        case ProofTree::End::Closed:
            out << pad << "closed (" << t.clash.first << ", " << t.clash.second << ")\n";
            break;
        case ProofTree::End::Open: out << pad << "open\n"; break;
        case ProofTree::End::Exhausted: out << pad << "budget exhausted\n"; break;
        case ProofTree::End::Split:
            for (std::size_t i = 0; i < t.children.size(); ++i) {
                out << pad << (i == 0 ? "left:" : "right:") << "\n";
                render_tree(t.children[i], depth + 1, out);
            }
            break;
    }
}

void collect_lines(const ProofTree& t, std::vector<const TraceLine*>& out) {
    for (const auto& l : t.lines) out.push_back(&l);
    for (const auto& c : t.children) collect_lines(c, out);
}

}  // namespace

std::string ProofTree::render() const {
    std::ostringstream out;
    render_tree(*this, 0, out);
    return out.str();
}

std::vector<Rule> ProofTree::rule_sequence() const {
    std::vector<const TraceLine*> all;
    collect_lines(*this, all);
    std::sort(all.begin(), all.end(), [](auto* a, auto* b) { return a->number < b->number; });
    std::vector<Rule> out;
    long last = 0;
    for (const auto* l : all)
        if (l->rule != Rule::Root && l->step != last) {
            out.push_back(l->rule);
            last = l->step;
        }
    return out;
}

int ProofTree::line_count() const {
    std::vector<const TraceLine*> all;
    collect_lines(*this, all);
    return static_cast<int>(all.size());
}

// --------------------------------------------------------------- scheduler

namespace {

struct Instance {
    Rule rule;
    int a = -1, b = -1;  // premise nodes
    Label lab;
    Formula phi;

    std::string key() const {
        std::string k(rule_name(rule));
        k += "|" + std::to_string(a) + "|" + std::to_string(b) + "|" + lab.str();
        if (phi) k += "|" + print_formula(phi);
        return k;
    }
    int tier() const {
        switch (rule) {
            case Rule::FAnd:
            case Rule::TImp:
            case Rule::Cut: return 2;
            case Rule::Normality: return 1;
            default: return 0;
        }
    }
};

// Incremental instance generation; replaying a node sequence reproduces the same keys.
struct Agenda {
    std::deque<Instance> tiers[3];
    std::set<std::string> scheduled;
    std::set<Label> seen_labels;
    FormulaSet seen_antecedents;
    RuleMutations mut;

    void push(const Instance& i) {
        if (scheduled.insert(i.key()).second) tiers[i.tier()].push_back(i);
    }

    std::optional<Instance> pop() {
        for (auto& q : tiers)
            if (!q.empty()) {
                Instance i = q.front();
                q.pop_front();
                return i;
            }
        return std::nullopt;
    }

    void on_node(const Branch& b, int i) {
        const NodeExpr& n = b.nodes[i];
        const int count = static_cast<int>(b.nodes.size());
        switch (n.kind) {
            case NodeKind::Signed: {
                const Formula& f = n.formula;
                switch (f.kind()) {
                    case FormulaKind::Neg: push({n.plus ? Rule::TNeg : Rule::FNeg, i, -1, {}, {}}); break;
                    case FormulaKind::And: push({n.plus ? Rule::TAnd : Rule::FAnd, i, -1, {}, {}}); break;
                    case FormulaKind::RelImp:
                        if (n.plus) {
                            for (int j = 0; j < count; ++j)
                                if (b.nodes[j].kind == NodeKind::Ternary && b.nodes[j].x == n.x)
                                    push({Rule::TImp, i, j, {}, {}});
                        } else {
                            push({Rule::FImp, i, -1, {}, {}});
                        }
                        break;
                    case FormulaKind::RelCf:
                        if (n.plus) {
                            if (mut.t_relcf_ignores_edge) {
                                for (const auto& l : seen_labels) push({Rule::TCf, i, -1, l, {}});
                            } else {
                                for (int j = 0; j < count; ++j)
                                    if (b.nodes[j].kind == NodeKind::FormulaEdge && b.nodes[j].x == n.x &&
                                        b.nodes[j].formula == f.left())
                                        push({Rule::TCf, i, j, {}, {}});
                            }
                        } else {
                            push({n.x.is_root() ? Rule::FCf0 : Rule::FCf, i, -1, {}, {}});
                        }
                        break;
                    case FormulaKind::Just:
                        if (n.plus) {
                            for (int j = 0; j < count; ++j)
                                if (b.nodes[j].kind == NodeKind::TermEdge && b.nodes[j].x == n.x &&
                                    b.nodes[j].term == f.term())
                                    push({Rule::TJust, i, j, {}, {}});
                        } else {
                            push({Rule::FJust, i, -1, {}, {}});
                        }
                        break;
                    default: break;
                }
                break;
            }
            case NodeKind::Ternary:
                for (int j = 0; j < count; ++j) {
                    const auto& m = b.nodes[j];
                    if (m.kind == NodeKind::Signed && m.plus && m.formula.is(FormulaKind::RelImp) && m.x == n.x)
                        push({Rule::TImp, j, i, {}, {}});
                }
                break;
            case NodeKind::FormulaEdge:
                if (!mut.t_relcf_ignores_edge)
                    for (int j = 0; j < count; ++j) {
                        const auto& m = b.nodes[j];
                        if (is_cf_node(m) && m.plus && m.x == n.x && m.formula.left() == n.formula)
                            push({Rule::TCf, j, i, {}, {}});
                    }
                break;
            case NodeKind::TermEdge:
                for (int j = 0; j < count; ++j) {
                    const auto& m = b.nodes[j];
                    if (m.kind == NodeKind::Signed && m.plus && m.formula.is(FormulaKind::Just) && m.x == n.x &&
                        m.formula.term() == n.term)
                        push({Rule::TJust, j, i, {}, {}});
                }
                if (n.term.kind() == TermKind::Sum) push({Rule::EdgeSum, i, -1, {}, {}});
                break;
        }
        for (const auto& l : labels_of(n)) {
            if (!seen_labels.insert(l).second) continue;
            push({Rule::Normality, -1, -1, l, {}});
            for (const auto& phi : seen_antecedents) push({Rule::Cut, -1, -1, l, phi});
            if (mut.t_relcf_ignores_edge)
                for (int j = 0; j < count; ++j)
                    if (is_cf_node(b.nodes[j]) && b.nodes[j].plus) push({Rule::TCf, j, -1, l, {}});
        }
        if (is_cf_node(n) && seen_antecedents.insert(n.formula.left()).second)
            for (const auto& l : seen_labels) push({Rule::Cut, -1, -1, l, n.formula.left()});
    }
};

struct Addition {
    NodeExpr node;
    std::vector<int> premises;  // node indices
};
using Child = std::vector<Addition>;

struct Work {
    Branch branch;
    Agenda agenda;
    std::vector<int> line_of;  // node index -> trace line
    bool closed = false;
};

class Prover {
public:
    Prover(const TableauBudget& b, const RuleMutations& m) : budget_(b), mut_(m) {}

    ProofResult run(const std::vector<Formula>& premises, const Formula& goal) {
        Work w;
        w.agenda.mut = mut_;
        ProofResult res;
        for (const auto& p : premises) insert(w, NodeExpr::signed_f(p, true, {}), Rule::Root, {}, res.tree);
        insert(w, NodeExpr::signed_f(goal, false, {}), Rule::Root, {}, res.tree);
        auto status = explore(std::move(w), res.tree, res);
        res.steps = steps_;
        if (status == Status::Closed) {
            res.verdict = ProofResult::Verdict::Closed;
        } else if (status == Status::Open) {
            res.verdict = ProofResult::Verdict::Open;
        } else {
            res.verdict = ProofResult::Verdict::Exhausted;
            std::ostringstream r;
            r << "steps " << steps_ << "/" << budget_.max_steps << ", fresh labels limit " << budget_.max_fresh_labels;
            if (label_limit_hit_) r << " (label limit reached)";
            if (steps_ >= budget_.max_steps) r << " (step limit reached)";
            res.budget_report = r.str();
        }
        return res;
    }

private:
    enum class Status { Closed, Open, Exhausted };

    void insert(Work& w, const NodeExpr& n, Rule rule, const std::vector<int>& premises, ProofTree& seg) {
        int i = w.branch.add(n);
        if (i < 0) return;
        TraceLine line{++line_no_, n, rule, {}, cur_step_};
        for (int p : premises) line.premises.push_back(w.line_of[p]);
        w.line_of.push_back(line.number);
        seg.lines.push_back(line);
        w.agenda.on_node(w.branch, i);
        if (!w.closed && n.kind == NodeKind::Signed) {
            auto other = NodeExpr::signed_f(n.formula, !n.plus, n.x);
            if (auto it = w.branch.where.find(other); it != w.branch.where.end()) {
                w.closed = true;
                seg.clash = {w.line_of[it->second], line.number};
            }
        }
    }

    std::optional<Label> fresh(Work& w) {
        int j = w.branch.next_fresh;
        if (j > budget_.max_fresh_labels) return std::nullopt;
        w.branch.next_fresh = j + 1;
        return Label{j, false};
    }

    // Empty optional: label budget exceeded.
    std::optional<std::vector<Child>> expand(Work& w, const Instance& ins) {
        const auto& nodes = w.branch.nodes;
        auto sig = [](Formula f, bool plus, Label x) { return NodeExpr::signed_f(std::move(f), plus, x); };
        std::vector<int> prem;
        if (ins.a >= 0) prem.push_back(ins.a);
        if (ins.b >= 0) prem.push_back(ins.b);
        auto one = [&](std::vector<NodeExpr> ns) {
            Child c;
            for (auto& n : ns) c.push_back({std::move(n), prem});
            return std::vector<Child>{c};
        };
        switch (ins.rule) {
            case Rule::TNeg:
            case Rule::FNeg: {
                const auto& n = nodes[ins.a];
                return one({sig(n.formula.inner(), !n.plus, n.x.bar())});
            }
            case Rule::TAnd: {
                const auto& n = nodes[ins.a];
                return one({sig(n.formula.left(), true, n.x), sig(n.formula.right(), true, n.x)});
            }
            case Rule::FAnd: {
                const auto& n = nodes[ins.a];
                return std::vector<Child>{Child{{sig(n.formula.left(), false, n.x), prem}},
                                          Child{{sig(n.formula.right(), false, n.x), prem}}};
            }
            case Rule::TImp: {
                const auto& n = nodes[ins.a];
                const auto& r = nodes[ins.b];
                return std::vector<Child>{Child{{sig(n.formula.left(), false, r.y), prem}},
                                          Child{{sig(n.formula.right(), true, r.z), prem}}};
            }
            case Rule::FImp: {
                const auto n = nodes[ins.a];
                auto j = fresh(w);
                if (!j) return std::nullopt;
                Label k = *j;
                if (!n.x.is_root()) {
                    auto kk = fresh(w);
                    if (!kk) return std::nullopt;
                    k = *kk;
                }
                return one({NodeExpr::tern(n.x, *j, k), sig(n.formula.left(), true, *j),
                            sig(n.formula.right(), false, k)});
            }
            case Rule::TCf: {
                const auto& n = nodes[ins.a];
                Label y = ins.b >= 0 ? nodes[ins.b].y : ins.lab;
                return one({sig(n.formula.right(), true, y)});
            }
            case Rule::FCf: {
                const auto n = nodes[ins.a];
                auto j = fresh(w);
                if (!j) return std::nullopt;
                return one({NodeExpr::fedge(n.x, n.formula.left(), *j), sig(n.formula.right(), false, *j)});
            }
            case Rule::FCf0: {
                const auto n = nodes[ins.a];
                auto j = fresh(w);
                if (!j) return std::nullopt;
                return one({NodeExpr::fedge(n.x, n.formula.left(), *j), sig(n.formula.left(), true, *j),
                            sig(n.formula.right(), false, *j)});
            }
            case Rule::Cut:
                return std::vector<Child>{
                    Child{{sig(ins.phi, false, ins.lab), {}}},
                    Child{{sig(ins.phi, true, ins.lab), {}}, {NodeExpr::fedge(ins.lab, ins.phi, ins.lab), {}}}};
            case Rule::TJust: {
                const auto& n = nodes[ins.a];
                return one({sig(n.formula.inner(), true, nodes[ins.b].y)});
            }
            case Rule::FJust: {
                const auto n = nodes[ins.a];
                auto j = fresh(w);
                if (!j) return std::nullopt;
                return one({NodeExpr::tedge(n.x, n.formula.term(), *j), sig(n.formula.inner(), false, *j)});
            }
            case Rule::EdgeSum: {
                const auto& n = nodes[ins.a];
                return one({NodeExpr::tedge(n.x, n.term.left(), n.y), NodeExpr::tedge(n.x, n.term.right(), n.y)});
            }
            case Rule::Normality: return one({NodeExpr::tern({}, ins.lab, ins.lab)});
            case Rule::Root: break;
        }
        return std::vector<Child>{};
    }

    bool adds_nothing(const Work& w, const Child& c) const {
        for (const auto& a : c)
            if (!w.branch.contains(a.node)) return false;
        return true;
    }

    void apply(Work& w, const Instance& ins, const Child& c, ProofTree& seg) {
        w.branch.applied.insert(ins.key());
        for (const auto& a : c) insert(w, a.node, ins.rule, a.premises, seg);
    }

    Status explore(Work w, ProofTree& seg, ProofResult& res) {
        while (true) {
            if (w.closed) {
                seg.end = ProofTree::End::Closed;
                return Status::Closed;
            }
            auto ins = w.agenda.pop();
            if (!ins) {
                seg.end = ProofTree::End::Open;
                auto [model, root] = extract_model(w.branch);
                res.open_branch = w.branch;
                res.model = std::move(model);
                res.root_state = root;
                return Status::Open;
            }
            if (steps_ >= budget_.max_steps) {
                seg.end = ProofTree::End::Exhausted;
                return Status::Exhausted;
            }
            cur_step_ = ++steps_;
            auto children = expand(w, *ins);
            if (!children) {
                label_limit_hit_ = true;
                seg.end = ProofTree::End::Exhausted;
                return Status::Exhausted;
            }
            if (children->size() == 1) {
                apply(w, *ins, children->front(), seg);
                continue;
            }
            // A child that adds nothing is the current branch; the other extends it and is redundant.
            const Child* stay = nullptr;
            for (const auto& c : *children)
                if (adds_nothing(w, c)) stay = &c;
            if (stay) {
                w.branch.applied.insert(ins->key());
                continue;
            }
            seg.end = ProofTree::End::Split;
            seg.children.resize(children->size());
            Status agg = Status::Closed;
            for (std::size_t k = 0; k < children->size(); ++k) {
                Work child = (k + 1 == children->size()) ? std::move(w) : w;
                apply(child, *ins, (*children)[k], seg.children[k]);
                Status s = explore(std::move(child), seg.children[k], res);
                if (s == Status::Open) {
                    seg.children.resize(k + 1);
                    return Status::Open;
                }
                if (s == Status::Exhausted) {
                    agg = Status::Exhausted;
                    if (steps_ >= budget_.max_steps) {
                        seg.children.resize(k + 1);
                        return agg;
                    }
                }
            }
            return agg;
        }
    }

    TableauBudget budget_;
    RuleMutations mut_;
    long steps_ = 0;
    long cur_step_ = 0;
    int line_no_ = 0;
    bool label_limit_hit_ = false;
};

void require_tableau_language(const Formula& f) {
    if (auto v = dialect_violation(f, Dialect::JRC)) throw std::invalid_argument(*v);
    for (const auto& g : subformulas(f))
        if (g.is(FormulaKind::Box)) throw std::invalid_argument("the tableau has no rules for the box");
}

}  // namespace

ProofResult prove(const std::vector<Formula>& premises, const Formula& goal, const TableauBudget& budget,
                  const RuleMutations& mutations) {
    if (budget.max_fresh_labels < 1 || budget.max_steps < 1) throw std::invalid_argument("budget must be positive");
    for (const auto& p : premises) require_tableau_language(p);
    require_tableau_language(goal);
    return Prover(budget, mutations).run(premises, goal);
}

bool branch_complete(const Branch& b) {
    Branch replay;
    Agenda ag;
    for (const auto& n : b.nodes) ag.on_node(replay, replay.add(n));
    for (const auto& q : ag.tiers)
        for (const auto& i : q)
            if (!b.applied.count(i.key())) return false;
    return true;
}

std::pair<RoutleyModel, int> extract_model(const Branch& b) {
    if (branch_closed(b)) throw std::invalid_argument("branch is closed");
    if (!branch_complete(b)) throw std::invalid_argument("branch is not complete");
    auto labels = b.labels();
    std::vector<Label> order(labels.begin(), labels.end());
    std::map<Label, int> idx;
    std::vector<std::string> names;
    for (const auto& l : order) {
        idx[l] = static_cast<int>(names.size());
        names.push_back("w" + std::to_string(l.index) + (l.sharp ? "s" : ""));
    }
    if (names.size() > static_cast<std::size_t>(kMaxStates)) throw std::invalid_argument("branch has too many labels");
    auto m = RoutleyModel::with_states(names, bit(idx.at(Label{})));
    for (const auto& l : order)
        if (auto it = idx.find(l.bar()); it != idx.end()) m.star[idx[l]] = it->second;
    const int n = m.size();
    for (const auto& phi : b.antecedents()) m.formula_rels[phi] = Relation(n, 0);
    for (const auto& node : b.nodes) {
        switch (node.kind) {
            case NodeKind::Ternary: m.add_ternary(idx[node.x], idx[node.y], idx[node.z]); break;
            case NodeKind::FormulaEdge: {
                auto& r = m.formula_rels[node.formula];
                if (r.empty()) r.assign(n, 0);
                r[idx[node.x]] |= bit(idx[node.y]);
                break;
            }
            case NodeKind::TermEdge: {
                auto& r = m.term_rels.rels[node.term];
                if (r.empty()) r.assign(n, 0);
                r[idx[node.x]] |= bit(idx[node.y]);
                break;
            }
            case NodeKind::Signed:
                if (node.plus && node.formula.is(FormulaKind::Atom)) m.valuation[node.formula.name()] |= bit(idx[node.x]);
                break;
        }
    }
    m.formula_rel_default = RelDefault::TruthsetAll;
    m.validate();
    return {m, idx.at(Label{})};
}

bool verify_result(const ProofResult& r, const std::vector<Formula>& premises, const Formula& goal, int size_bound) {
    switch (r.verdict) {
        case ProofResult::Verdict::Exhausted: return true;
        case ProofResult::Verdict::Open: {
            if (!r.model) return false;
            const auto& m = *r.model;
            if (!m.is_normal(r.root_state)) return false;
            RoutleyEvaluator ev(m);
            for (const auto& p : premises)
                if (!ev.eval(r.root_state, p)) return false;
            if (ev.eval(r.root_state, goal)) return false;
            std::vector<Formula> qs = premises;
            qs.push_back(goal);
            if (r.open_branch)
                for (const auto& n : r.open_branch->nodes)
                    if (n.kind == NodeKind::Signed || n.kind == NodeKind::FormulaEdge) qs.push_back(n.formula);
            return check_jrc_conditions(m, jrc_universe(m, qs)).ok();
        }
        case ProofResult::Verdict::Closed: return !find_jrc_countermodel(premises, goal, size_bound).has_value();
    }
    return false;
}

}  // namespace cjl
