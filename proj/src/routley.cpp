#include "cjl/routley.hpp"

#include <bit>
#include <stdexcept>

namespace cjl {

int RoutleyModel::state_index(std::string_view name) const {
    for (int i = 0; i < size(); ++i)
        if (states[i] == name) return i;
    throw ModelError("unknown state '" + std::string(name) + "'");
}

RoutleyModel RoutleyModel::with_states(std::vector<std::string> names, StateSet normal) {
    RoutleyModel m;
    m.states = std::move(names);
    m.normal = normal;
    int n = m.size();
    m.star.resize(n);
    for (int i = 0; i < n; ++i) m.star[i] = i;
    m.ternary.assign(static_cast<std::size_t>(n * n), 0);
    return m;
}

void RoutleyModel::set_normal_ternary() {
    for (int w = 0; w < size(); ++w)
        if (is_normal(w))
            for (int v = 0; v < size(); ++v) tern(w, v) = bit(v);
}

void RoutleyModel::validate() const {
    int n = size();
    if (n == 0) throw ModelError("model has no states");
    if (n > kMaxStates) throw ModelError("model exceeds 64 states");
    if (normal == 0 || !subset(normal, all())) throw ModelError("normal states must be a nonempty subset");
    if (static_cast<int>(star.size()) != n) throw ModelError("star size mismatch");
    for (int s : star)
        if (s < 0 || s >= n) throw ModelError("star maps outside the state set");
    if (ternary.size() != static_cast<std::size_t>(n * n)) throw ModelError("ternary size mismatch");
    for (auto row : ternary)
        if (!subset(row, all())) throw ModelError("ternary triple outside the state set");
    auto check = [&](const Relation& r, const std::string& what) {
        if (static_cast<int>(r.size()) != n) throw ModelError(what + ": wrong number of rows");
        for (auto row : r)
            if (!subset(row, all())) throw ModelError(what + ": pair outside the state set");
    };
    for (const auto& [f, r] : formula_rels) {
        check(r, "formula " + print_formula(f));
        if (auto v = dialect_violation(f, Dialect::JRC)) throw ModelError("formula key: " + *v);
    }
    for (const auto& [t, r] : term_rels.rels) check(r, "term " + print_term(t));
    for (const auto* d : {&term_rels.variable_default, &term_rels.constant_default, &term_rels.compound_default})
        if (*d) check(**d, "term default");
    for (const auto& [a, s] : valuation)
        if (!subset(s, all())) throw ModelError("valuation of " + a + " outside the state set");
}

RoutleyEvaluator::RoutleyEvaluator(const RoutleyModel& m) : m_(m) {}

StateSet RoutleyEvaluator::formula_succ(const Formula& phi, int w) {
    if (auto it = m_.formula_rels.find(phi); it != m_.formula_rels.end()) return it->second[w];
    switch (m_.formula_rel_default) {
        case RelDefault::TruthsetNormal: return truthset(phi) & m_.normal;
        case RelDefault::TruthsetAll: return truthset(phi);
        case RelDefault::Empty: return 0;
    }
    return 0;
}

StateSet RoutleyEvaluator::truthset(const Formula& f) {
    if (auto it = memo_.find(f); it != memo_.end()) return it->second;
    const int n = m_.size();
    StateSet out = 0;
    switch (f.kind()) {
        case FormulaKind::Atom:
            if (auto it = m_.valuation.find(f.name()); it != m_.valuation.end()) out = it->second;
            break;
        case FormulaKind::Neg: {
            StateSet inner = truthset(f.inner());
            for (int w = 0; w < n; ++w)
                if (!has(inner, m_.star[w])) out |= bit(w);
            break;
        }
        case FormulaKind::And:
            out = truthset(f.left()) & truthset(f.right());
            break;
        case FormulaKind::RelImp: {
            StateSet a = truthset(f.left()), b = truthset(f.right());
            for (int w = 0; w < n; ++w) {
                bool ok = true;
                for (int v = 0; v < n && ok; ++v)
                    if (has(a, v) && !subset(m_.tern(w, v), b)) ok = false;
                if (ok) out |= bit(w);
            }
            break;
        }
        case FormulaKind::RelCf: {
            StateSet b = truthset(f.right());
            for (int w = 0; w < n; ++w)
                if (subset(formula_succ(f.left(), w), b)) out |= bit(w);
            break;
        }
        case FormulaKind::Just: {
            StateSet body = truthset(f.inner());
            for (int w = 0; w < n; ++w)
                if (subset(term_succ(f.term(), w), body)) out |= bit(w);
            break;
        }
        case FormulaKind::Box:
            out = subset(m_.normal, truthset(f.inner())) ? m_.all() : 0;
            break;
        case FormulaKind::MatImp:
        case FormulaKind::Cf:
            throw std::invalid_argument("classical conditionals have no reading in a Routley model: " +
                                        print_formula(f));
    }
    memo_.emplace(f, out);
    return out;
}

bool RoutleyEvaluator::eval(int w, const Formula& f) {
    if (w < 0 || w >= m_.size()) throw ModelError("unknown state index " + std::to_string(w));
    return has(truthset(f), w);
}

bool eval_jrc(const RoutleyModel& m, int w, const Formula& f) { return RoutleyEvaluator(m).eval(w, f); }
bool eval_jrc(const RoutleyModel& m, std::string_view state, const Formula& f) {
    return eval_jrc(m, m.state_index(state), f);
}
StateSet truthset_jrc(const RoutleyModel& m, const Formula& f) { return RoutleyEvaluator(m).truthset(f); }

bool jrc_consequence(const RoutleyModel& m, const std::vector<Formula>& premises, const Formula& goal) {
    RoutleyEvaluator ev(m);
    StateSet hold = m.normal;
    for (const auto& p : premises) hold &= ev.truthset(p);
    return subset(hold, ev.truthset(goal));
}

bool jrc_valid_in_model(const RoutleyModel& m, const Formula& f) { return jrc_consequence(m, {}, f); }

FormulaSet jrc_universe(const RoutleyModel& m, const std::vector<Formula>& queries) {
    std::vector<Formula> seeds = queries;
    for (const auto& [f, r] : m.formula_rels) seeds.push_back(f);
    return subformulas(seeds);
}

ConditionReport check_jrc_conditions(const RoutleyModel& m, const FormulaSet& universe) {
    FormulaSet closed;
    for (const auto& f : universe)
        for (const auto& g : subformulas(f)) closed.insert(g);
    TermSet terms;
    for (const auto& [t, r] : m.term_rels.rels)
        for (const auto& s : subterms(t)) terms.insert(s);
    for (const auto& f : closed)
        for (const auto& t : terms_of(f)) terms.insert(t);

    RoutleyEvaluator ev(m);
    const int n = m.size();
    auto name = [&](int w) { return m.states[w]; };
    ConditionReport rep;

    ConditionResult star{"star", true, std::nullopt};
    for (int w = 0; w < n && star.passed; ++w)
        if (m.star[m.star[w]] != w) {
            star.passed = false;
            star.witness = Witness{w, {}, {}, {m.star[w], m.star[m.star[w]]},
                                   name(w) + "** = " + name(m.star[m.star[w]])};
        }
    rep.results.push_back(star);

    ConditionResult norm{"normality", true, std::nullopt};
    for (int w = 0; w < n && norm.passed; ++w) {
        if (!m.is_normal(w)) continue;
        for (int v = 0; v < n; ++v)
            if (m.tern(w, v) != bit(v)) {
                norm.passed = false;
                StateSet bad = m.tern(w, v) ^ bit(v);
                int u = std::countr_zero(bad);
                norm.witness = Witness{w, {}, {}, {v, u},
                                       "normal state " + name(w) + ": R " + name(w) + " " + name(v) + " " + name(u) +
                                           (has(m.tern(w, v), u) ? " holds with " : " fails with ") +
                                           (u == v ? "equal" : "distinct") + " last two states"};
                break;
            }
    }
    rep.results.push_back(norm);

    ConditionResult c1{"1", true, std::nullopt};
    for (int w = 0; w < n && c1.passed; ++w) {
        if (!m.is_normal(w)) continue;
        for (const auto& f : closed) {
            StateSet s = ev.formula_succ(f, w), ts = ev.truthset(f);
            if (!subset(s, ts)) {
                c1.passed = false;
                c1.witness = Witness{w, {f}, {}, {std::countr_zero(s & ~ts)},
                                     "R_" + print_formula(f) + "(" + name(w) + ") leaves the truth set"};
                break;
            }
        }
    }
    rep.results.push_back(c1);

    ConditionResult c2{"2", true, std::nullopt};
    for (int w = 0; w < n && c2.passed; ++w)
        for (const auto& f : closed)
            if (ev.eval(w, f) && !has(ev.formula_succ(f, w), w)) {
                c2.passed = false;
                c2.witness = Witness{w, {f}, {}, {},
                                     name(w) + " satisfies " + print_formula(f) + " but lacks the R_" +
                                         print_formula(f) + " loop"};
                break;
            }
    rep.results.push_back(c2);

    ConditionResult c3{"3", true, std::nullopt};
    for (const auto& t : terms) {
        if (t.kind() != TermKind::Sum || !c3.passed) continue;
        for (int w = 0; w < n; ++w) {
            StateSet st = ev.term_succ(t, w);
            StateSet both = ev.term_succ(t.left(), w) & ev.term_succ(t.right(), w);
            if (!subset(st, both)) {
                c3.passed = false;
                c3.witness = Witness{w, {}, {t}, {std::countr_zero(st & ~both)},
                                     "R_" + print_term(t) + "(" + name(w) + ") not within R_" +
                                         print_term(t.left()) + " ∩ R_" + print_term(t.right())};
                break;
            }
        }
    }
    rep.results.push_back(c3);

    rep.note = "formula quantifiers checked over " + std::to_string(closed.size()) + " formulas and " +
               std::to_string(terms.size()) + " terms in play";
    return rep;
}

}  // namespace cjl
