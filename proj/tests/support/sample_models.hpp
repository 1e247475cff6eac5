#pragma once

#include <algorithm>
#include <optional>
#include <random>

#include "cjl/falsifier.hpp"
#include "cjl/kripke.hpp"

namespace cjl::testgen {

// Random members of the falsifier's candidate space (state 0 normal, rows only
// at normal states, overrides only for antecedents) that pass the profile.
// Relations are drawn bottom-up so that most draws satisfy the structural
// conditions; check_conditions still decides.
class ModelSampler {
public:
    ModelSampler(std::uint64_t seed, VariantProfile profile) : rng_(seed), profile_(std::move(profile)) {}

    std::optional<KripkeModel> sample(const SearchSignature& sig, int max_states, int attempts) {
        for (int i = 0; i < attempts; ++i) {
            ++draws;
            auto m = draw(sig, 1 + pick(max_states));
            if (check_conditions(m, profile_, sig.universe).ok()) return m;
        }
        return std::nullopt;
    }

    long draws = 0;

private:
    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
    bool coin() { return pick(2) == 0; }

    StateSet random_subset(StateSet within) {
        StateSet s = 0;
        for (int i = 0; i < 64 && (within >> i); ++i)
            if (has(within, i) && coin()) s |= bit(i);
        return s;
    }

    KripkeModel draw(const SearchSignature& sig, int n) {
        KripkeModel m;
        m.dialect = sig.dialect;
        for (int i = 0; i < n; ++i) m.states.push_back("w" + std::to_string(i));
        m.normal = 1 | (random_subset(all_states(n)) & ~StateSet{1});
        m.formula_rel_default = RelDefault::TruthsetNormal;
        m.valuation.assign(n, {});
        m.nonnormal_valuation.assign(n, {});
        for (int w = 0; w < n; ++w) {
            if (m.is_normal(w)) {
                for (const auto& a : sig.atoms)
                    if (coin()) m.valuation[w].insert(a);
            } else {
                for (const auto& f : sig.universe)
                    if (coin()) m.nonnormal_valuation[w].insert(f);
            }
        }

        bool reflexive = profile_.has_condition(Cond::C6);
        bool positive = profile_.has_condition(Cond::C7);
        std::vector<Term> terms(sig.terms.begin(), sig.terms.end());
        std::stable_sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.size() < b.size(); });
        for (const auto& t : terms) {
            Relation r(n, 0);
            for (int w = 0; w < n; ++w) {
                if (!m.is_normal(w)) continue;
                StateSet pool = m.all();
                if (t.kind() == TermKind::Sum)
                    pool = m.term_rels.succ(t.left(), w) & m.term_rels.succ(t.right(), w);
                if (t.kind() == TermKind::Bang && positive) {
                    StateSet inner = m.term_rels.succ(t.left(), w);
                    pool = 0;
                    for (int v = 0; v < n; ++v)
                        if (subset(m.term_rels.succ(t.left(), v), inner)) pool |= bit(v);
                }
                r[w] = random_subset(pool);
                if (reflexive) r[w] |= bit(w);
            }
            m.term_rels.rels[t] = std::move(r);
        }

        std::vector<Formula> ants(sig.antecedents.begin(), sig.antecedents.end());
        std::stable_sort(ants.begin(), ants.end(), [](const Formula& a, const Formula& b) { return a.size() < b.size(); });
        for (const auto& phi : ants) {
            if (pick(3) == 0) continue;
            StateSet ts = KripkeEvaluator(m).truthset(phi) & m.normal;
            Relation r(n, 0);
            for (int w = 0; w < n; ++w)
                if (m.is_normal(w)) r[w] = random_subset(ts) | (ts & bit(w));
            m.formula_rels[phi] = std::move(r);
        }
        return m;
    }

    std::mt19937_64 rng_;
    VariantProfile profile_;
};

}  // namespace cjl::testgen
