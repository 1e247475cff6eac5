#pragma once

#include <map>
#include <string>
#include <vector>

#include "cjl/kripke.hpp"

namespace cjl {

struct RoutleyModel {
    std::vector<std::string> states;
    StateSet normal = 0;
    std::vector<int> star;
    std::vector<StateSet> ternary;  // row w*n+v holds the u with R w v u
    std::map<Formula, Relation> formula_rels;
    RelDefault formula_rel_default = RelDefault::TruthsetAll;
    TermRelations term_rels;
    std::map<std::string, StateSet> valuation;

    int size() const { return static_cast<int>(states.size()); }
    StateSet all() const { return all_states(size()); }
    bool is_normal(int w) const { return has(normal, w); }
    int state_index(std::string_view name) const;

    // Sized, empty model with identity star.
    static RoutleyModel with_states(std::vector<std::string> names, StateSet normal);
    StateSet& tern(int w, int v) { return ternary[static_cast<std::size_t>(w * size() + v)]; }
    StateSet tern(int w, int v) const { return ternary[static_cast<std::size_t>(w * size() + v)]; }
    void add_ternary(int w, int v, int u) { tern(w, v) |= bit(u); }
    // Normal states get exactly the triples (w, v, v).
    void set_normal_ternary();

    // Structural checks only; star involution and normality are model conditions.
    void validate() const;
};

class RoutleyEvaluator {
public:
    explicit RoutleyEvaluator(const RoutleyModel& m);

    bool eval(int w, const Formula& f);
    StateSet truthset(const Formula& f);
    StateSet formula_succ(const Formula& phi, int w);
    StateSet term_succ(const Term& t, int w) const { return m_.term_rels.succ(t, w); }

private:
    const RoutleyModel& m_;
    std::map<Formula, StateSet> memo_;
};

bool eval_jrc(const RoutleyModel& m, int w, const Formula& f);
bool eval_jrc(const RoutleyModel& m, std::string_view state, const Formula& f);
StateSet truthset_jrc(const RoutleyModel& m, const Formula& f);
bool jrc_consequence(const RoutleyModel& m, const std::vector<Formula>& premises, const Formula& goal);
bool jrc_valid_in_model(const RoutleyModel& m, const Formula& f);

FormulaSet jrc_universe(const RoutleyModel& m, const std::vector<Formula>& queries);

// Ids: "star", "normality", "1", "2", "3".
ConditionReport check_jrc_conditions(const RoutleyModel& m, const FormulaSet& universe);

}  // namespace cjl
