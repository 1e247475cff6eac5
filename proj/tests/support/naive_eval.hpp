#pragma once

#include "cjl/kripke.hpp"
#include "cjl/routley.hpp"

// Direct transcription of the truth clauses, state by state, without memo
// tables or bitmask shortcuts. Exponential, so only for small formulas.
namespace cjl::naive {

inline bool kripke_holds(const KripkeModel& m, int w, const Formula& f);

inline bool kripke_rel(const KripkeModel& m, const Formula& phi, int w, int v) {
    if (!m.is_normal(w)) return false;
    auto it = m.formula_rels.find(phi);
    if (it != m.formula_rels.end()) return (it->second[w] >> v) & 1U;
    switch (m.formula_rel_default) {
        case RelDefault::TruthsetNormal: return m.is_normal(v) && kripke_holds(m, v, phi);
        case RelDefault::TruthsetAll: return kripke_holds(m, v, phi);
        case RelDefault::Empty: return false;
    }
    return false;
}

inline bool kripke_holds(const KripkeModel& m, int w, const Formula& f) {
    if (!m.is_normal(w)) return m.nonnormal_valuation[w].count(f) > 0;
    switch (f.kind()) {
        case FormulaKind::Atom: return m.valuation[w].count(f.name()) > 0;
        case FormulaKind::Neg: return !kripke_holds(m, w, f.inner());
        case FormulaKind::And: return kripke_holds(m, w, f.left()) && kripke_holds(m, w, f.right());
        case FormulaKind::MatImp: return !kripke_holds(m, w, f.left()) || kripke_holds(m, w, f.right());
        case FormulaKind::Cf:
            for (int v = 0; v < m.size(); ++v)
                if (kripke_rel(m, f.left(), w, v) && !kripke_holds(m, v, f.right())) return false;
            return true;
        case FormulaKind::Just:
            for (int v = 0; v < m.size(); ++v)
                if (((m.term_rels.succ(f.term(), w) >> v) & 1U) && !kripke_holds(m, v, f.inner())) return false;
            return true;
        case FormulaKind::Box:
            for (int v = 0; v < m.size(); ++v)
                if (m.is_normal(v) && !kripke_holds(m, v, f.inner())) return false;
            return true;
        default: return false;
    }
}

inline bool routley_holds(const RoutleyModel& m, int w, const Formula& f);

inline bool routley_rel(const RoutleyModel& m, const Formula& phi, int w, int v) {
    auto it = m.formula_rels.find(phi);
    if (it != m.formula_rels.end()) return (it->second[w] >> v) & 1U;
    switch (m.formula_rel_default) {
        case RelDefault::TruthsetNormal: return m.is_normal(v) && routley_holds(m, v, phi);
        case RelDefault::TruthsetAll: return routley_holds(m, v, phi);
        case RelDefault::Empty: return false;
    }
    return false;
}

inline bool routley_holds(const RoutleyModel& m, int w, const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::Atom: {
            auto it = m.valuation.find(f.name());
            return it != m.valuation.end() && ((it->second >> w) & 1U);
        }
        case FormulaKind::Neg: return !routley_holds(m, m.star[w], f.inner());
        case FormulaKind::And: return routley_holds(m, w, f.left()) && routley_holds(m, w, f.right());
        case FormulaKind::RelImp:
            for (int v = 0; v < m.size(); ++v)
                for (int u = 0; u < m.size(); ++u)
                    if (((m.tern(w, v) >> u) & 1U) && routley_holds(m, v, f.left()) &&
                        !routley_holds(m, u, f.right()))
                        return false;
            return true;
        case FormulaKind::RelCf:
            for (int v = 0; v < m.size(); ++v)
                if (routley_rel(m, f.left(), w, v) && !routley_holds(m, v, f.right())) return false;
            return true;
        case FormulaKind::Just:
            for (int v = 0; v < m.size(); ++v)
                if (((m.term_rels.succ(f.term(), w) >> v) & 1U) && !routley_holds(m, v, f.inner())) return false;
            return true;
        case FormulaKind::Box:
            for (int v = 0; v < m.size(); ++v)
                if (m.is_normal(v) && !routley_holds(m, v, f.inner())) return false;
            return true;
        default: return false;
    }
}

}  // namespace cjl::naive
