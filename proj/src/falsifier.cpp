#include "cjl/falsifier.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "cjl/tableau.hpp"

namespace cjl {

SearchSignature signature_of(const std::vector<Formula>& premises, const Formula& goal, Dialect d, int bound) {
    SearchSignature sig;
    sig.dialect = d;
    sig.bound = bound;
    std::vector<Formula> all = premises;
    all.push_back(goal);
    sig.universe = subformulas(all);
    for (const auto& f : sig.universe) {
        if (f.is(FormulaKind::Atom)) sig.atoms.insert(f.name());
        if (f.is(FormulaKind::Cf) || f.is(FormulaKind::RelCf)) sig.antecedents.insert(f.left());
        for (const auto& t : terms_of(f)) sig.terms.insert(t);
    }
    return sig;
}

// ------------------------------------------------------------------ Kripke

int kripke_space_bits(const SearchSignature& sig, int n, int nn) {
    long bits = static_cast<long>(sig.atoms.size()) * nn + static_cast<long>(sig.universe.size()) * (n - nn) +
                static_cast<long>(sig.terms.size()) * nn * n + static_cast<long>(sig.antecedents.size()) * nn * nn;
    return static_cast<int>(std::min<long>(bits, 1 << 20));
}

namespace {

std::vector<int> members(StateSet s, int n) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (has(s, i)) out.push_back(i);
    return out;
}

// Raw enumeration without condition filtering; the callback sees a reused model object.
void enumerate_kripke(const SearchSignature& sig, const std::function<bool(const KripkeModel&)>& visit) {
    if (sig.bound < 1) throw std::invalid_argument("bound must be at least 1");
    std::vector<std::string> atoms(sig.atoms.begin(), sig.atoms.end());
    std::vector<Formula> univ(sig.universe.begin(), sig.universe.end());
    std::vector<Term> terms(sig.terms.begin(), sig.terms.end());
    std::vector<Formula> ants(sig.antecedents.begin(), sig.antecedents.end());
    for (int n = 1; n <= sig.bound; ++n)
        for (int nn = 1; nn <= n; ++nn)
            if (int bits = kripke_space_bits(sig, n, nn); bits > kMaxSearchBits)
                throw SearchTooLarge("search space of 2^" + std::to_string(bits) + " candidates at " +
                                     std::to_string(n) + " states exceeds the 2^" + std::to_string(kMaxSearchBits) +
                                     " guard");
    for (int n = 1; n <= sig.bound; ++n) {
        for (StateSet rest = 0; rest < (StateSet{1} << (n - 1)); ++rest) {
            StateSet normal = 1 | (rest << 1);
            auto nv = members(normal, n);
            auto nnv = members(all_states(n) & ~normal, n);
            int nn = static_cast<int>(nv.size());
            int bits = kripke_space_bits(sig, n, nn);
            KripkeModel m;
            m.dialect = sig.dialect;
            for (int i = 0; i < n; ++i) m.states.push_back("w" + std::to_string(i));
            m.normal = normal;
            m.formula_rel_default = RelDefault::TruthsetNormal;
            for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
                std::uint64_t c = code;
                auto take = [&c] {
                    bool b = c & 1U;
                    c >>= 1;
                    return b;
                };
                m.valuation.assign(n, {});
                m.nonnormal_valuation.assign(n, {});
                for (int w : nv)
                    for (const auto& a : atoms)
                        if (take()) m.valuation[w].insert(a);
                for (int w : nnv)
                    for (const auto& f : univ)
                        if (take()) m.nonnormal_valuation[w].insert(f);
                m.term_rels.rels.clear();
                for (const auto& t : terms) {
                    Relation r(n, 0);
                    for (int w : nv)
                        for (int v = 0; v < n; ++v)
                            if (take()) r[w] |= bit(v);
                    m.term_rels.rels[t] = std::move(r);
                }
                m.formula_rels.clear();
                for (const auto& phi : ants) {
                    Relation r(n, 0);
                    for (int w : nv)
                        for (int v : nv)
                            if (take()) r[w] |= bit(v);
                    m.formula_rels[phi] = std::move(r);
                }
                if (!visit(m)) return;
            }
        }
    }
}

}  // namespace

void for_each_kripke_model(const SearchSignature& sig, const VariantProfile& profile, const ConstantSpecification& cs,
                           const std::function<bool(const KripkeModel&)>& visit) {
    enumerate_kripke(sig, [&](const KripkeModel& m) {
        if (!check_conditions(m, profile, sig.universe, cs).ok()) return true;
        return visit(m);
    });
}

std::optional<std::pair<KripkeModel, int>> find_kripke_countermodel(const std::vector<Formula>& premises,
                                                                    const Formula& goal, const VariantProfile& profile,
                                                                    int bound, const ConstantSpecification& cs) {
    auto sig = signature_of(premises, goal, profile.dialect, bound);
    std::optional<std::pair<KripkeModel, int>> found;
    enumerate_kripke(sig, [&](const KripkeModel& m) {
        KripkeEvaluator ev(m);
        if (ev.eval(0, goal)) return true;
        for (const auto& p : premises)
            if (!ev.eval(0, p)) return true;
        if (!check_conditions(m, profile, sig.universe, cs).ok()) return true;
        found.emplace(m, 0);
        return false;
    });
    return found;
}

// -------------------------------------------------------------------- JRC

namespace {

void involutions(int n, std::vector<int>& cur, std::vector<std::vector<int>>& out, int i = 0) {
    if (i == n) {
        out.push_back(cur);
        return;
    }
    if (cur[i] != -1) {
        involutions(n, cur, out, i + 1);
        return;
    }
    cur[i] = i;
    involutions(n, cur, out, i + 1);
    for (int j = i + 1; j < n; ++j) {
        if (cur[j] != -1) continue;
        cur[i] = j;
        cur[j] = i;
        involutions(n, cur, out, i + 1);
        cur[j] = -1;
    }
    cur[i] = -1;
}

class LabelSearch {
public:
    LabelSearch(const std::vector<Formula>& premises, const Formula& goal) : premises_(premises), goal_(goal) {
        std::vector<Formula> all = premises;
        all.push_back(goal);
        for (const auto& f : all) {
            if (auto v = dialect_violation(f, Dialect::JRC)) throw std::invalid_argument(*v);
        }
        auto us = subformulas(all);
        univ_.assign(us.begin(), us.end());
        std::stable_sort(univ_.begin(), univ_.end(), [](const Formula& a, const Formula& b) { return a.size() < b.size(); });
        for (std::size_t i = 0; i < univ_.size(); ++i) index_[univ_[i]] = static_cast<int>(i);
        need_.assign(univ_.size(), 0);
        for (const auto& p : premises) need_[index_[p]] |= 1;
        need_[index_[goal]] |= 2;
        TermSet ts;
        for (const auto& f : univ_)
            for (const auto& t : terms_of(f)) ts.insert(t);
        terms_.assign(ts.begin(), ts.end());
        std::stable_sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.size() < b.size(); });
        for (std::size_t i = 0; i < terms_.size(); ++i) term_index_[terms_[i]] = static_cast<int>(i);
    }

    std::optional<std::pair<RoutleyModel, int>> run(int bound) {
        for (int f : need_)
            if (f == 3) return std::nullopt;  // goal among premises
        for (n_ = 1; n_ <= bound; ++n_) {
            std::vector<std::vector<int>> stars;
            std::vector<int> cur(n_, -1);
            involutions(n_, cur, stars);
            for (StateSet rest = 0; rest < (StateSet{1} << (n_ - 1)); ++rest) {
                normal_ = 1 | (rest << 1);
                for (const auto& s : stars) {
                    star_ = s;
                    truth_.assign(univ_.size(), 0);
                    if (dfs(0)) return build();
                }
            }
        }
        return std::nullopt;
    }

private:
    StateSet all() const { return all_states(n_); }
    int idx(const Formula& f) const { return index_.at(f); }

    bool dfs(std::size_t i) {
        if (i == univ_.size()) return true;
        const Formula& f = univ_[i];
        StateSet fixed = 0, free = 0;
        switch (f.kind()) {
            case FormulaKind::Atom:
            case FormulaKind::Just:
            case FormulaKind::RelCf: free = all(); break;
            case FormulaKind::Neg: {
                StateSet in = truth_[idx(f.inner())];
                for (int w = 0; w < n_; ++w)
                    if (!has(in, star_[w])) fixed |= bit(w);
                break;
            }
            case FormulaKind::And: fixed = truth_[idx(f.left())] & truth_[idx(f.right())]; break;
            case FormulaKind::RelImp:
                if (subset(truth_[idx(f.left())], truth_[idx(f.right())])) fixed = normal_;
                free = all() & ~normal_;
                break;
            case FormulaKind::Box: fixed = subset(normal_, truth_[idx(f.inner())]) ? all() : 0; break;
            default: throw std::invalid_argument("classical conditionals are outside the JRC language");
        }
        // Enumerate subsets of the free states in increasing order.
        StateSet sub = 0;
        while (true) {
            truth_[i] = fixed | sub;
            if (admissible(i) && dfs(i + 1)) return true;
            if (sub == free) break;
            sub = (sub - free) & free;
        }
        truth_[i] = 0;
        return false;
    }

    bool admissible(std::size_t i) {
        if ((need_[i] & 1) && !has(truth_[i], 0)) return false;
        if ((need_[i] & 2) && has(truth_[i], 0)) return false;
        const Formula& f = univ_[i];
        switch (f.kind()) {
            case FormulaKind::Just: return terms_ok(i);
            case FormulaKind::RelCf: return cf_ok(i, f.left());
            case FormulaKind::RelImp: return imp_ok(i);
            default: return true;
        }
    }

    // Largest R_t(w) compatible with the decided justification formulas up to `upto`.
    std::vector<std::vector<StateSet>> term_rel(std::size_t upto) const {
        std::vector<std::vector<StateSet>> r(terms_.size(), std::vector<StateSet>(n_, all()));
        for (std::size_t j = 0; j <= upto; ++j) {
            const Formula& g = univ_[j];
            if (!g.is(FormulaKind::Just)) continue;
            int t = term_index_.at(g.term());
            for (int w = 0; w < n_; ++w)
                if (has(truth_[j], w)) r[t][w] &= truth_[idx(g.inner())];
        }
        for (std::size_t t = 0; t < terms_.size(); ++t)
            if (terms_[t].kind() == TermKind::Sum) {
                int a = term_index_.at(terms_[t].left()), b = term_index_.at(terms_[t].right());
                for (int w = 0; w < n_; ++w) r[t][w] &= r[a][w] & r[b][w];
            }
        return r;
    }

    bool terms_ok(std::size_t upto) const {
        auto r = term_rel(upto);
        for (std::size_t j = 0; j <= upto; ++j) {
            const Formula& g = univ_[j];
            if (!g.is(FormulaKind::Just)) continue;
            int t = term_index_.at(g.term());
            StateSet body = truth_[idx(g.inner())];
            for (int w = 0; w < n_; ++w)
                if (!has(truth_[j], w) && (r[t][w] & ~body) == 0) return false;
        }
        return true;
    }

    std::vector<StateSet> cf_rel(const Formula& phi, std::size_t upto) const {
        StateSet ts = truth_[idx(phi)];
        std::vector<StateSet> r(n_);
        for (int w = 0; w < n_; ++w) r[w] = has(normal_, w) ? ts : all();
        for (std::size_t j = 0; j <= upto; ++j) {
            const Formula& g = univ_[j];
            if (!g.is(FormulaKind::RelCf) || g.left() != phi) continue;
            for (int w = 0; w < n_; ++w)
                if (has(truth_[j], w)) r[w] &= truth_[idx(g.right())];
        }
        return r;
    }

    bool cf_ok(std::size_t upto, const Formula& phi) const {
        auto r = cf_rel(phi, upto);
        StateSet ts = truth_[idx(phi)];
        for (int w = 0; w < n_; ++w)
            if (has(ts, w) && !has(r[w], w)) return false;
        for (std::size_t j = 0; j <= upto; ++j) {
            const Formula& g = univ_[j];
            if (!g.is(FormulaKind::RelCf) || g.left() != phi) continue;
            for (int w = 0; w < n_; ++w)
                if (!has(truth_[j], w) && (r[w] & ~truth_[idx(g.right())]) == 0) return false;
        }
        return true;
    }

    // Allowed (v, u) pairs at a non-normal state w: rows indexed by v.
    std::vector<StateSet> tern_rows(int w, std::size_t upto) const {
        std::vector<StateSet> rows(n_, all());
        for (std::size_t j = 0; j <= upto; ++j) {
            const Formula& g = univ_[j];
            if (!g.is(FormulaKind::RelImp) || !has(truth_[j], w)) continue;
            StateSet a = truth_[idx(g.left())], b = truth_[idx(g.right())];
            for (int v = 0; v < n_; ++v)
                if (has(a, v)) rows[v] &= b;
        }
        return rows;
    }

    bool imp_ok(std::size_t upto) const {
        for (int w = 0; w < n_; ++w) {
            if (has(normal_, w)) continue;
            auto rows = tern_rows(w, upto);
            for (std::size_t j = 0; j <= upto; ++j) {
                const Formula& g = univ_[j];
                if (!g.is(FormulaKind::RelImp) || has(truth_[j], w)) continue;
                StateSet a = truth_[idx(g.left())], b = truth_[idx(g.right())];
                bool witnessed = false;
                for (int v = 0; v < n_ && !witnessed; ++v)
                    if (has(a, v) && (rows[v] & ~b) != 0) witnessed = true;
                if (!witnessed) return false;
            }
        }
        return true;
    }

    std::pair<RoutleyModel, int> build() const {
        std::vector<std::string> names;
        for (int i = 0; i < n_; ++i) names.push_back("w" + std::to_string(i));
        auto m = RoutleyModel::with_states(names, normal_);
        m.star = star_;
        m.set_normal_ternary();
        std::size_t last = univ_.size() - 1;
        for (int w = 0; w < n_; ++w) {
            if (has(normal_, w)) continue;
            auto rows = tern_rows(w, last);
            for (int v = 0; v < n_; ++v) m.tern(w, v) = rows[v];
        }
        auto tr = term_rel(last);
        for (std::size_t t = 0; t < terms_.size(); ++t) m.term_rels.rels[terms_[t]] = tr[t];
        for (std::size_t j = 0; j < univ_.size(); ++j) {
            const Formula& g = univ_[j];
            if (g.is(FormulaKind::RelCf) && !m.formula_rels.count(g.left()))
                m.formula_rels[g.left()] = cf_rel(g.left(), last);
            if (g.is(FormulaKind::Atom) && truth_[j]) m.valuation[g.name()] = truth_[j];
        }
        m.formula_rel_default = RelDefault::TruthsetAll;
        m.validate();

        RoutleyEvaluator ev(m);
        for (std::size_t j = 0; j < univ_.size(); ++j)
            if (ev.truthset(univ_[j]) != truth_[j])
                throw std::logic_error("labelling search built a model that disagrees on " + print_formula(univ_[j]));
        FormulaSet u(univ_.begin(), univ_.end());
        if (!check_jrc_conditions(m, u).ok()) throw std::logic_error("labelling search built a model failing conditions");
        return {m, 0};
    }

    std::vector<Formula> premises_;
    Formula goal_;
    std::vector<Formula> univ_;
    std::map<Formula, int> index_;
    std::vector<int> need_;  // 1: premise, 2: goal
    std::vector<Term> terms_;
    std::map<Term, int> term_index_;
    int n_ = 0;
    StateSet normal_ = 1;
    std::vector<int> star_;
    std::vector<StateSet> truth_;
};

}  // namespace

std::optional<std::pair<RoutleyModel, int>> find_jrc_countermodel(const std::vector<Formula>& premises,
                                                                  const Formula& goal, int bound) {
    if (bound < 1) throw std::invalid_argument("bound must be at least 1");
    return LabelSearch(premises, goal).run(bound);
}

std::optional<Countermodel> find_countermodel(const std::vector<Formula>& premises, const Formula& goal, Dialect d,
                                              int bound) {
    if (d == Dialect::JRC) {
        if (auto r = find_jrc_countermodel(premises, goal, bound)) return Countermodel{r->first, r->second};
        return std::nullopt;
    }
    if (auto r = find_kripke_countermodel(premises, goal, VariantProfile::for_dialect(d), bound))
        return Countermodel{r->first, r->second};
    return std::nullopt;
}

CrossCheckReport cross_check(const std::vector<Formula>& premises, const Formula& goal, const TableauBudget& budget,
                             int bound, const RuleMutations& mutations) {
    CrossCheckReport rep;
    auto res = prove(premises, goal, budget, mutations);
    rep.verdict = std::string(verdict_name(res.verdict));
    auto cm = find_jrc_countermodel(premises, goal, bound);
    rep.countermodel_found = cm.has_value();
    std::ostringstream d;
    switch (res.verdict) {
        case ProofResult::Verdict::Closed:
            if (cm) {
                rep.contradiction = true;
                d << "tableau closed but a " << cm->first.size() << "-state countermodel exists";
            }
            break;
        case ProofResult::Verdict::Open:
            rep.open_verified = verify_result(res, premises, goal, bound);
            if (!rep.open_verified) {
                rep.contradiction = true;
                d << "open branch induces a model that does not refute the sequent";
            }
            break;
        case ProofResult::Verdict::Exhausted:
            if (!cm) rep.inconclusive = true;
            d << res.budget_report;
            break;
    }
    rep.detail = d.str();
    return rep;
}

}  // namespace cjl
