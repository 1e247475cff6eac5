#include "cjl/kripke.hpp"

#include <sstream>
#include <stdexcept>

namespace cjl {

std::string_view rel_default_name(RelDefault d) {
    switch (d) {
        case RelDefault::TruthsetNormal: return "truthset_normal";
        case RelDefault::TruthsetAll: return "truthset_all";
        case RelDefault::Empty: return "empty";
    }
    return "?";
}

std::optional<RelDefault> rel_default_from_name(std::string_view s) {
    for (auto d : {RelDefault::TruthsetNormal, RelDefault::TruthsetAll, RelDefault::Empty})
        if (rel_default_name(d) == s) return d;
    return std::nullopt;
}

// ------------------------------------------------------------ term relations

const Relation* TermRelations::find(const Term& t) const {
    if (auto it = rels.find(t); it != rels.end()) return &it->second;
    switch (t.kind()) {
        case TermKind::Variable: return variable_default ? &*variable_default : nullptr;
        case TermKind::Constant: return constant_default ? &*constant_default : nullptr;
        default: return compound_default ? &*compound_default : nullptr;
    }
}

StateSet TermRelations::succ(const Term& t, int w) const {
    const Relation* r = find(t);
    return r ? (*r)[w] : 0;
}

// ------------------------------------------------------------------- model

int KripkeModel::state_index(std::string_view name) const {
    for (int i = 0; i < size(); ++i)
        if (states[i] == name) return i;
    throw ModelError("unknown state '" + std::string(name) + "'");
}

namespace {

void check_relation(const Relation& r, int n, StateSet allowed_rows, StateSet allowed_cols,
                    const std::string& what) {
    if (static_cast<int>(r.size()) != n) throw ModelError(what + ": wrong number of rows");
    for (int w = 0; w < n; ++w) {
        if (r[w] == 0) continue;
        if (!has(allowed_rows, w) || !subset(r[w], allowed_cols))
            throw ModelError(what + ": pair outside the permitted domain");
    }
}

}  // namespace

void KripkeModel::validate() const {
    int n = size();
    if (n == 0) throw ModelError("model has no states");
    if (n > kMaxStates) throw ModelError("model exceeds 64 states");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (states[i] == states[j]) throw ModelError("duplicate state '" + states[i] + "'");
    if (normal == 0) throw ModelError("model has no normal states");
    if (!subset(normal, all())) throw ModelError("normal states outside the state set");
    if (static_cast<int>(valuation.size()) != n || static_cast<int>(nonnormal_valuation.size()) != n)
        throw ModelError("valuation size mismatch");
    for (const auto& [t, r] : term_rels.rels) check_relation(r, n, all(), all(), "term " + print_term(t));
    for (const auto* d : {&term_rels.variable_default, &term_rels.constant_default, &term_rels.compound_default})
        if (*d) check_relation(**d, n, all(), all(), "term default");
    for (const auto& [f, r] : formula_rels) {
        check_relation(r, n, normal, normal, "formula " + print_formula(f));
        if (auto v = dialect_violation(f, dialect)) throw ModelError("formula key: " + *v);
    }
    for (int w = 0; w < n; ++w) {
        if (is_normal(w) && !nonnormal_valuation[w].empty())
            throw ModelError("formula valuation given for normal state '" + states[w] + "'");
        if (!is_normal(w) && !valuation[w].empty())
            throw ModelError("atom valuation given for non-normal state '" + states[w] + "'");
        for (const auto& f : nonnormal_valuation[w])
            if (auto v = dialect_violation(f, dialect)) throw ModelError("valuation entry: " + *v);
    }
}

bool ConstantSpecification::contains(const std::string& c, const Formula& f) const {
    for (const auto& [name, g] : entries)
        if (name == c && g == f) return true;
    return false;
}

// --------------------------------------------------------------- evaluator

KripkeEvaluator::KripkeEvaluator(const KripkeModel& m) : m_(m) {}

StateSet KripkeEvaluator::term_succ(const Term& t, int w) const { return m_.term_rels.succ(t, w); }

StateSet KripkeEvaluator::formula_succ(const Formula& phi, int w) {
    if (!m_.is_normal(w)) return 0;
    if (auto it = m_.formula_rels.find(phi); it != m_.formula_rels.end()) return it->second[w];
    switch (m_.formula_rel_default) {
        case RelDefault::TruthsetNormal: return truthset(phi) & m_.normal;
        case RelDefault::TruthsetAll: return truthset(phi);
        case RelDefault::Empty: return 0;
    }
    return 0;
}

StateSet KripkeEvaluator::truthset(const Formula& f) {
    if (auto it = memo_.find(f); it != memo_.end()) return it->second;
    const int n = m_.size();
    const StateSet N = m_.normal;
    StateSet normal_part = 0;
    switch (f.kind()) {
        case FormulaKind::Atom:
            for (int w = 0; w < n; ++w)
                if (m_.is_normal(w) && m_.valuation[w].count(f.name())) normal_part |= bit(w);
            break;
        case FormulaKind::Neg:
            normal_part = N & ~truthset(f.inner());
            break;
        case FormulaKind::And:
            normal_part = N & truthset(f.left()) & truthset(f.right());
            break;
        case FormulaKind::MatImp:
            normal_part = N & (~truthset(f.left()) | truthset(f.right()));
            break;
        case FormulaKind::Cf: {
            StateSet rhs = truthset(f.right());
            for (int w = 0; w < n; ++w)
                if (m_.is_normal(w) && subset(formula_succ(f.left(), w), rhs)) normal_part |= bit(w);
            break;
        }
        case FormulaKind::Just: {
            StateSet body = truthset(f.inner());
            for (int w = 0; w < n; ++w)
                if (m_.is_normal(w) && subset(term_succ(f.term(), w), body)) normal_part |= bit(w);
            break;
        }
        case FormulaKind::Box:
            normal_part = subset(N, truthset(f.inner())) ? N : 0;
            break;
        case FormulaKind::RelImp:
        case FormulaKind::RelCf:
            throw std::invalid_argument("relevant connectives have no reading in this model: " +
                                        print_formula(f));
    }
    StateSet literal = 0;
    for (int w = 0; w < n; ++w)
        if (!m_.is_normal(w) && m_.nonnormal_valuation[w].count(f)) literal |= bit(w);
    StateSet result = normal_part | literal;
    memo_.emplace(f, result);
    return result;
}

bool KripkeEvaluator::eval(int w, const Formula& f) {
    if (w < 0 || w >= m_.size()) throw ModelError("unknown state index " + std::to_string(w));
    return has(truthset(f), w);
}

bool eval(const KripkeModel& m, int w, const Formula& f) { return KripkeEvaluator(m).eval(w, f); }

bool eval(const KripkeModel& m, std::string_view state, const Formula& f) {
    return eval(m, m.state_index(state), f);
}

StateSet truthset(const KripkeModel& m, const Formula& f) { return KripkeEvaluator(m).truthset(f); }

bool consequence(const KripkeModel& m, const std::vector<Formula>& premises, const Formula& goal) {
    KripkeEvaluator ev(m);
    StateSet hold = m.normal;
    for (const auto& p : premises) hold &= ev.truthset(p);
    return subset(hold, ev.truthset(goal));
}

bool valid_in_model(const KripkeModel& m, const Formula& f) { return consequence(m, {}, f); }

// --------------------------------------------------------------- profiles

std::string_view cond_id(Cond c) {
    switch (c) {
        case Cond::C1: return "1";
        case Cond::C2: return "2";
        case Cond::C3: return "3";
        case Cond::C4: return "4";
        case Cond::C5: return "5";
        case Cond::C5prime: return "5'";
        case Cond::C6: return "6";
        case Cond::C7: return "7";
        case Cond::C8: return "8";
        case Cond::C9: return "9";
    }
    return "?";
}

VariantProfile VariantProfile::for_dialect(Dialect d) {
    using C = Cond;
    VariantProfile p;
    p.dialect = d;
    switch (d) {
        case Dialect::LPCplus: p.conditions = {C::C1, C::C2, C::C3, C::C4, C::C5, C::C6, C::C7}; break;
        case Dialect::LPCint:
            p.conditions = {C::C1, C::C2, C::C3, C::C4, C::C5, C::C6, C::C7, C::C8};
            break;
        case Dialect::LPCprime:
            p.conditions = {C::C1, C::C2, C::C3, C::C4, C::C5prime, C::C6, C::C7};
            break;
        case Dialect::LPCKplus:
            p.conditions = {C::C1, C::C2, C::C3, C::C4, C::C5, C::C6, C::C7, C::C9};
            break;
        case Dialect::J4Cplus: p.conditions = {C::C1, C::C2, C::C3, C::C4, C::C5, C::C7}; break;
        case Dialect::JCplus: p.conditions = {C::C1, C::C2, C::C3, C::C4, C::C5}; break;
        case Dialect::L:
            p.conditions = {C::C1, C::C2, C::C3, C::C4, C::C5, C::C7};
            p.box_enabled = true;
            break;
        case Dialect::JRC: throw std::invalid_argument("JRC models use the Routley checker");
    }
    return p;
}

bool VariantProfile::has_condition(Cond c) const {
    for (auto x : conditions)
        if (x == c) return true;
    return false;
}

// ----------------------------------------------------------------- reports

bool ConditionReport::ok() const {
    for (const auto& r : results)
        if (!r.passed) return false;
    return true;
}

const ConditionResult* ConditionReport::find(std::string_view id) const {
    for (const auto& r : results)
        if (r.id == id) return &r;
    return nullptr;
}

std::string ConditionReport::describe() const {
    std::ostringstream os;
    for (const auto& r : results) {
        os << "condition " << r.id << ": " << (r.passed ? "pass" : "FAIL");
        if (r.witness) os << "  (" << r.witness->text << ")";
        os << "\n";
    }
    if (!note.empty()) os << "note: " << note << "\n";
    return os.str();
}

FormulaSet kripke_universe(const KripkeModel& m, const std::vector<Formula>& queries) {
    std::vector<Formula> seeds = queries;
    for (const auto& [f, r] : m.formula_rels) seeds.push_back(f);
    for (const auto& fs : m.nonnormal_valuation) seeds.insert(seeds.end(), fs.begin(), fs.end());
    return subformulas(seeds);
}

TermSet terms_in_play(const KripkeModel& m, const FormulaSet& universe, const ConstantSpecification& cs) {
    TermSet out;
    auto add = [&](const Term& t) {
        for (const auto& s : subterms(t)) out.insert(s);
    };
    for (const auto& [t, r] : m.term_rels.rels) add(t);
    for (const auto& f : universe)
        for (const auto& t : terms_of(f)) out.insert(t);
    for (const auto& [c, f] : cs.entries) {
        add(Term::constant(c));
        for (const auto& t : terms_of(f)) out.insert(t);
    }
    return out;
}

// -------------------------------------------------------------- conditions

namespace {

std::string names(const KripkeModel& m, StateSet s) {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < m.size(); ++i) {
        if (!has(s, i)) continue;
        if (!first) out += ",";
        out += m.states[i];
        first = false;
    }
    return out + "}";
}

int first_state(StateSet s) { return std::countr_zero(s); }

class Checker {
public:
    Checker(const KripkeModel& m, const FormulaSet& u, const TermSet& terms, const ConstantSpecification& cs)
        : m_(m), ev_(m), u_(u.begin(), u.end()), terms_(terms), cs_(cs) {}

    ConditionResult run(Cond c) {
        ConditionResult r;
        r.id = std::string(cond_id(c));
        std::optional<Witness> w;
        switch (c) {
            case Cond::C1: w = c1(); break;
            case Cond::C2: w = c2(); break;
            case Cond::C3: w = c3(); break;
            case Cond::C4: w = c4(); break;
            case Cond::C5: w = c5(); break;
            case Cond::C5prime: w = c5prime(); break;
            case Cond::C6: w = c6(); break;
            case Cond::C7: w = c7(); break;
            case Cond::C8: w = c8(); break;
            case Cond::C9: w = c9(); break;
        }
        r.passed = !w;
        r.witness = std::move(w);
        return r;
    }

    ConditionResult domain() {
        ConditionResult r;
        r.id = "domain";
        for (int w : normals())
            for (const auto& f : u_) {
                StateSet s = ev_.formula_succ(f, w);
                if (!subset(s, m_.normal)) {
                    r.passed = false;
                    r.witness = Witness{w, {f}, {}, {first_state(s & ~m_.normal)},
                                        "R_" + print_formula(f) + "(" + m_.states[w] + ") = " +
                                            names(m_, s) + " leaves the normal states"};
                    return r;
                }
            }
        return r;
    }

private:
    std::vector<int> normals() const {
        std::vector<int> out;
        for (int w = 0; w < m_.size(); ++w)
            if (m_.is_normal(w)) out.push_back(w);
        return out;
    }

    std::string at(int w) const { return m_.states[w]; }

    std::optional<Witness> c1() {
        for (int w : normals())
            for (const auto& f : u_) {
                StateSet s = ev_.formula_succ(f, w), ts = ev_.truthset(f);
                if (!subset(s, ts))
                    return Witness{w, {f}, {}, {first_state(s & ~ts)},
                                   "R_" + print_formula(f) + "(" + at(w) + ") = " + names(m_, s) +
                                       " not within truth set " + names(m_, ts)};
            }
        return std::nullopt;
    }

    std::optional<Witness> c2() {
        for (int w : normals())
            for (const auto& f : u_)
                if (ev_.eval(w, f) && !has(ev_.formula_succ(f, w), w))
                    return Witness{w, {f}, {}, {}, at(w) + " satisfies " + print_formula(f) + " but is not in R_" +
                                                       print_formula(f) + "(" + at(w) + ")"};
        return std::nullopt;
    }

    std::optional<Witness> c3() {
        for (int w : normals())
            for (const auto& [c, f] : cs_.entries) {
                StateSet s = ev_.term_succ(Term::constant(c), w), ts = ev_.truthset(f);
                if (!subset(s, ts))
                    return Witness{w, {f}, {Term::constant(c)}, {first_state(s & ~ts)},
                                   "R_" + c + "(" + at(w) + ") = " + names(m_, s) + " not within truth set of " +
                                       print_formula(f)};
            }
        return std::nullopt;
    }

    std::optional<Witness> c4() {
        for (const auto& t : terms_) {
            if (t.kind() != TermKind::Sum) continue;
            for (int w : normals()) {
                StateSet st = ev_.term_succ(t, w);
                StateSet both = ev_.term_succ(t.left(), w) & ev_.term_succ(t.right(), w);
                if (!subset(st, both))
                    return Witness{w, {}, {t, t.left(), t.right()}, {first_state(st & ~both)},
                                   "R_" + print_term(t) + "(" + at(w) + ") = " + names(m_, st) +
                                       " not within R_" + print_term(t.left()) + " ∩ R_" +
                                       print_term(t.right()) + " = " + names(m_, both)};
            }
        }
        return std::nullopt;
    }

    std::optional<Witness> c5() {
        for (const auto& t : terms_) {
            if (t.kind() != TermKind::App) continue;
            const Term& s = t.left();
            const Term& r = t.right();
            for (int w : normals()) {
                StateSet img = ev_.term_succ(t, w);
                if (img == 0) continue;
                for (const auto& phi : u_) {
                    if (!ev_.eval(w, Formula::just(r, phi))) continue;
                    for (const auto& psi : u_) {
                        if (!ev_.eval(w, Formula::just(s, Formula::cf(phi, psi)))) continue;
                        StateSet ts = ev_.truthset(psi);
                        if (!subset(img, ts))
                            return Witness{w, {phi, psi}, {t}, {first_state(img & ~ts)},
                                           at(w) + " satisfies " + print_term(s) + ":(" + print_formula(phi) +
                                               " > " + print_formula(psi) + ") and " + print_term(r) + ":" +
                                               print_formula(phi) + " but R_" + print_term(t) + " reaches " +
                                               m_.states[first_state(img & ~ts)] + " outside the truth set of " +
                                               print_formula(psi)};
                    }
                }
            }
        }
        return std::nullopt;
    }

    std::optional<Witness> c5prime() {
        for (const auto& t : terms_) {
            if (t.kind() != TermKind::App) continue;
            const Term& s = t.left();
            const Term& r = t.right();
            for (const auto& phi : u_)
                for (const auto& psi : u_) {
                    StateSet ts = ev_.truthset(psi);
                    auto a = Formula::just(s, Formula::cf(phi, psi));
                    auto b = Formula::just(r, phi);
                    for (int w : normals()) {
                        StateSet vs = ev_.formula_succ(a, w) & m_.normal;
                        for (int v = 0; v < m_.size(); ++v) {
                            if (!has(vs, v)) continue;
                            StateSet us = ev_.formula_succ(b, v) & m_.normal;
                            for (int u = 0; u < m_.size(); ++u) {
                                if (!has(us, u)) continue;
                                StateSet img = ev_.term_succ(t, u);
                                if (!subset(img, ts))
                                    return Witness{w, {phi, psi}, {t}, {v, u, first_state(img & ~ts)},
                                                   "chain " + at(w) + " -> " + at(v) + " -> " + at(u) + " -> " +
                                                       at(first_state(img & ~ts)) + " ends outside the truth set of " +
                                                       print_formula(psi)};
                            }
                        }
                    }
                }
        }
        return std::nullopt;
    }

    std::optional<Witness> c6() {
        for (const auto& t : terms_)
            for (int w : normals())
                if (!has(ev_.term_succ(t, w), w))
                    return Witness{w, {}, {t}, {}, at(w) + " is not R_" + print_term(t) + "-reflexive"};
        return std::nullopt;
    }

    std::optional<Witness> c7() {
        for (const auto& bt : terms_) {
            if (bt.kind() != TermKind::Bang) continue;
            const Term& t = bt.left();
            for (int w : normals()) {
                StateSet vs = ev_.term_succ(bt, w), direct = ev_.term_succ(t, w);
                for (int v = 0; v < m_.size(); ++v) {
                    if (!has(vs, v)) continue;
                    StateSet us = ev_.term_succ(t, v);
                    if (!subset(us, direct))
                        return Witness{w, {}, {bt, t}, {v, first_state(us & ~direct)},
                                       at(w) + " R_" + print_term(bt) + " " + at(v) + " R_" + print_term(t) + " " +
                                           at(first_state(us & ~direct)) + " without " + at(w) + " R_" +
                                           print_term(t) + " " + at(first_state(us & ~direct))};
                }
            }
        }
        return std::nullopt;
    }

    std::optional<Witness> c8() {
        for (const auto& pt : terms_) {
            if (pt.kind() != TermKind::Pair) continue;
            const Term& t = pt.left();
            const Formula& phi = pt.formula();
            for (int w : normals()) {
                StateSet img = ev_.term_succ(pt, w);
                if (img == 0) continue;
                for (const auto& psi : u_) {
                    if (!ev_.eval(w, Formula::just(t, psi))) continue;
                    StateSet ts = ev_.truthset(Formula::cf(phi, psi));
                    if (!subset(img, ts))
                        return Witness{w, {phi, psi}, {pt}, {first_state(img & ~ts)},
                                       at(w) + " satisfies " + print_term(t) + ":" + print_formula(psi) + " but R_" +
                                           print_term(pt) + " reaches " + at(first_state(img & ~ts)) +
                                           " outside the truth set of " + print_formula(Formula::cf(phi, psi))};
                }
            }
        }
        return std::nullopt;
    }

    std::optional<Witness> c9() {
        for (std::size_t i = 0; i < u_.size(); ++i)
            for (std::size_t j = i + 1; j < u_.size(); ++j) {
                const auto& a = u_[i];
                const auto& b = u_[j];
                if ((ev_.truthset(a) & m_.normal) != (ev_.truthset(b) & m_.normal)) continue;
                for (int w : normals())
                    if (ev_.formula_succ(a, w) != ev_.formula_succ(b, w))
                        return Witness{w, {a, b}, {}, {},
                                       print_formula(a) + " and " + print_formula(b) +
                                           " agree on normal states but R differs at " + at(w)};
            }
        return std::nullopt;
    }

    const KripkeModel& m_;
    KripkeEvaluator ev_;
    std::vector<Formula> u_;
    const TermSet& terms_;
    const ConstantSpecification& cs_;
};

}  // namespace

ConditionReport check_conditions(const KripkeModel& m, const VariantProfile& profile, const FormulaSet& universe,
                                 const ConstantSpecification& cs) {
    FormulaSet closed;
    for (const auto& f : universe)
        for (const auto& g : subformulas(f)) closed.insert(g);
    TermSet terms = terms_in_play(m, closed, cs);
    Checker ch(m, closed, terms, cs);
    ConditionReport rep;
    rep.results.push_back(ch.domain());
    for (auto c : profile.conditions) rep.results.push_back(ch.run(c));
    rep.note = "formula and term quantifiers checked over " + std::to_string(closed.size()) + " formulas and " +
               std::to_string(terms.size()) +
               " terms in play; passing is an under-approximation of the unrestricted conditions";
    return rep;
}

}  // namespace cjl
