#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cjl/syntax.hpp"

namespace cjl {

// Sets of states as bitmasks; models hold at most 64 states.
using StateSet = std::uint64_t;
using Relation = std::vector<StateSet>;  // successors per state
inline constexpr int kMaxStates = 64;

inline bool has(StateSet s, int i) { return (s >> i) & 1U; }
inline StateSet bit(int i) { return StateSet{1} << i; }
inline StateSet all_states(int n) { return n >= 64 ? ~StateSet{0} : (bit(n) - 1); }
inline bool subset(StateSet a, StateSet b) { return (a & ~b) == 0; }
inline int count(StateSet s) { return std::popcount(s); }

enum class RelDefault { TruthsetNormal, TruthsetAll, Empty };

std::string_view rel_default_name(RelDefault d);
std::optional<RelDefault> rel_default_from_name(std::string_view s);

class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// R_t for every term: explicit entries, then per-kind defaults, else empty.
struct TermRelations {
    std::map<Term, Relation> rels;
    std::optional<Relation> variable_default, constant_default, compound_default;

    StateSet succ(const Term& t, int w) const;
    const Relation* find(const Term& t) const;
    bool has_defaults() const { return variable_default || constant_default || compound_default; }
};

struct KripkeModel {
    Dialect dialect = Dialect::LPCplus;
    std::vector<std::string> states;
    StateSet normal = 0;
    TermRelations term_rels;
    std::map<Formula, Relation> formula_rels;  // explicit R_phi, normal x normal
    RelDefault formula_rel_default = RelDefault::TruthsetNormal;
    std::vector<std::set<std::string>> valuation;  // read at normal states
    std::vector<FormulaSet> nonnormal_valuation;   // read at non-normal states

    int size() const { return static_cast<int>(states.size()); }
    StateSet all() const { return all_states(size()); }
    bool is_normal(int w) const { return has(normal, w); }
    int state_index(std::string_view name) const;  // throws ModelError
    // Throws ModelError on a structural defect.
    void validate() const;
};

struct ConstantSpecification {
    enum class Mode { Explicit, Appropriate };
    Mode mode = Mode::Explicit;
    std::vector<std::pair<std::string, Formula>> entries;

    bool contains(const std::string& c, const Formula& f) const;
};

// One evaluation session; memo tables live as long as the object.
class KripkeEvaluator {
public:
    explicit KripkeEvaluator(const KripkeModel& m);

    bool eval(int w, const Formula& f);
    StateSet truthset(const Formula& f);
    StateSet formula_succ(const Formula& phi, int w);
    StateSet term_succ(const Term& t, int w) const;

private:
    const KripkeModel& m_;
    std::map<Formula, StateSet> memo_;
};

bool eval(const KripkeModel& m, int w, const Formula& f);
bool eval(const KripkeModel& m, std::string_view state, const Formula& f);
StateSet truthset(const KripkeModel& m, const Formula& f);
bool consequence(const KripkeModel& m, const std::vector<Formula>& premises, const Formula& goal);
bool valid_in_model(const KripkeModel& m, const Formula& f);

enum class Cond { C1, C2, C3, C4, C5, C5prime, C6, C7, C8, C9 };
std::string_view cond_id(Cond c);

struct VariantProfile {
    Dialect dialect = Dialect::LPCplus;
    std::vector<Cond> conditions;
    bool box_enabled = false;

    static VariantProfile for_dialect(Dialect d);
    bool has_condition(Cond c) const;
};

struct Witness {
    std::optional<int> state;
    std::vector<Formula> formulas;
    std::vector<Term> terms;
    std::vector<int> states;  // extra states (successors etc.)
    std::string text;
};

struct ConditionResult {
    std::string id;
    bool passed = true;
    std::optional<Witness> witness;
};

struct ConditionReport {
    std::vector<ConditionResult> results;
    std::string note;

    bool ok() const;
    const ConditionResult* find(std::string_view id) const;
    std::string describe() const;
};

// Subformula closure of queries, overridden formulas and non-normal valuation entries.
FormulaSet kripke_universe(const KripkeModel& m, const std::vector<Formula>& queries);

// Terms whose relations the condition checks range over.
TermSet terms_in_play(const KripkeModel& m, const FormulaSet& universe, const ConstantSpecification& cs);

ConditionReport check_conditions(const KripkeModel& m, const VariantProfile& profile,
                                 const FormulaSet& universe, const ConstantSpecification& cs = {});

}  // namespace cjl
