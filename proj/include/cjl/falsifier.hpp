#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cjl/kripke.hpp"
#include "cjl/model_io.hpp"
#include "cjl/routley.hpp"

namespace cjl {

// Raised when the enumeration space exceeds the guard.
class SearchTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kMaxSearchBits = 34;

struct SearchSignature {
    Dialect dialect = Dialect::LPCplus;
    std::set<std::string> atoms;
    TermSet terms;            // closed under subterms
    FormulaSet universe;      // subformulas of the sequent
    FormulaSet antecedents;   // conditional antecedents in the universe
    int bound = 1;
};

SearchSignature signature_of(const std::vector<Formula>& premises, const Formula& goal, Dialect d, int bound);

// Number of free bits in the Kripke space for n states with nn normal ones.
int kripke_space_bits(const SearchSignature& sig, int n, int nn);

// Visits every Kripke candidate up to sig.bound states in canonical order; state 0 is always normal.
// Only candidates passing the profile's conditions on sig.universe reach the callback; returning false stops.
// Throws SearchTooLarge when any layer needs more than kMaxSearchBits bits.
void for_each_kripke_model(const SearchSignature& sig, const VariantProfile& profile, const ConstantSpecification& cs,
                           const std::function<bool(const KripkeModel&)>& visit);

std::optional<std::pair<KripkeModel, int>> find_kripke_countermodel(const std::vector<Formula>& premises,
                                                                    const Formula& goal, const VariantProfile& profile,
                                                                    int bound, const ConstantSpecification& cs = {});

// Exact search over truth labellings of the subformula universe; relations are
// rebuilt from each labelling and the model is re-verified before it is returned.
std::optional<std::pair<RoutleyModel, int>> find_jrc_countermodel(const std::vector<Formula>& premises,
                                                                  const Formula& goal, int bound);

struct Countermodel {
    AnyModel model;
    int state = 0;
};
std::optional<Countermodel> find_countermodel(const std::vector<Formula>& premises, const Formula& goal, Dialect d,
                                              int bound);

struct TableauBudget;
struct RuleMutations;

struct CrossCheckReport {
    std::string verdict;  // CLOSED / OPEN / EXHAUSTED
    bool countermodel_found = false;
    bool open_verified = true;
    bool contradiction = false;
    bool inconclusive = false;
    std::string detail;
};

CrossCheckReport cross_check(const std::vector<Formula>& premises, const Formula& goal, const TableauBudget& budget,
                             int bound, const RuleMutations& mutations);

}  // namespace cjl
