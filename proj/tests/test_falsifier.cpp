#include "doctest.h"

#include <random>

#include "cjl/falsifier.hpp"
#include "support/gen.hpp"

using namespace cjl;

namespace {

Formula J(const char* s) { return parse_formula(s, Dialect::JRC); }
Formula K(const char* s) { return parse_formula(s, Dialect::LPCplus); }

// Raw enumeration of every Routley model with at most two states over the
// sequent's signature: stars, ternary rows, valuations, term relations and
// antecedent relations are all enumerated bit by bit.
bool raw_jrc_countermodel(const std::vector<Formula>& premises, const Formula& goal) {
    auto sig = signature_of(premises, goal, Dialect::JRC, 2);
    std::vector<std::string> atoms(sig.atoms.begin(), sig.atoms.end());
    std::vector<Term> terms(sig.terms.begin(), sig.terms.end());
    std::vector<Formula> ants(sig.antecedents.begin(), sig.antecedents.end());
    for (int n = 1; n <= 2; ++n) {
        for (StateSet normal : {StateSet{1}, StateSet{3}}) {
            if (!subset(normal, all_states(n))) continue;
            for (int swap = 0; swap < (n == 2 ? 2 : 1); ++swap) {
                int nonnormal = n - count(normal);
                int bits = nonnormal * n * n + static_cast<int>(atoms.size()) * n +
                           static_cast<int>(terms.size() + ants.size()) * n * n;
                for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
                    std::uint64_t c = code;
                    auto take = [&c] {
                        bool b = c & 1U;
                        c >>= 1;
                        return b;
                    };
                    auto m = RoutleyModel::with_states(n == 1 ? std::vector<std::string>{"a"}
                                                              : std::vector<std::string>{"a", "b"},
                                                       normal);
                    if (swap) m.star = {1, 0};
                    m.set_normal_ternary();
                    for (int w = 0; w < n; ++w)
                        if (!m.is_normal(w))
                            for (int v = 0; v < n; ++v)
                                for (int u = 0; u < n; ++u)
                                    if (take()) m.add_ternary(w, v, u);
                    for (const auto& a : atoms)
                        for (int w = 0; w < n; ++w)
                            if (take()) m.valuation[a] |= bit(w);
                    auto rel = [&] {
                        Relation r(n, 0);
                        for (int w = 0; w < n; ++w)
                            for (int v = 0; v < n; ++v)
                                if (take()) r[w] |= bit(v);
                        return r;
                    };
                    for (const auto& t : terms) m.term_rels.rels[t] = rel();
                    for (const auto& f : ants) m.formula_rels[f] = rel();
                    RoutleyEvaluator ev(m);
                    if (ev.eval(0, goal)) continue;
                    bool prem = true;
                    for (const auto& p : premises) prem = prem && ev.eval(0, p);
                    if (!prem) continue;
                    if (check_jrc_conditions(m, sig.universe).ok()) return true;
                }
            }
        }
    }
    return false;
}

}  // namespace

TEST_CASE("falsifier: justification is not closed under equivalence") {
    auto r = find_kripke_countermodel({}, K("x:p == x:(p & p)"), VariantProfile::for_dialect(Dialect::LPCplus), 2);
    REQUIRE(r.has_value());
    const auto& m = r->first;
    CHECK(m.size() == 2);
    CHECK(count(m.normal) == 1);
    CHECK_FALSE(eval(m, r->second, K("x:p == x:(p & p)")));
    auto rep = check_conditions(m, VariantProfile::for_dialect(Dialect::LPCplus),
                                kripke_universe(m, {K("x:p == x:(p & p)")}));
    CHECK(rep.ok());
}

TEST_CASE("falsifier: counterpossibles are vacuous in the relational family") {
    CHECK_FALSE(find_kripke_countermodel({}, K("false > p"), VariantProfile::for_dialect(Dialect::LPCplus), 3));
    CHECK_FALSE(find_kripke_countermodel({}, K("p > p"), VariantProfile::for_dialect(Dialect::LPCplus), 2));
}

TEST_CASE("falsifier: counterpossibles fail in the relevant system") {
    auto r = find_jrc_countermodel({}, J("(p & ~p) ~> q"), 3);
    REQUIRE(r.has_value());
    CHECK_FALSE(eval_jrc(r->first, r->second, J("(p & ~p) ~> q")));
    CHECK(check_jrc_conditions(r->first, jrc_universe(r->first, {J("(p & ~p) ~> q")})).ok());
    CHECK_FALSE(find_jrc_countermodel({}, J("p ~> p"), 3));
    CHECK_FALSE(find_jrc_countermodel({J("p"), J("p ~> q")}, J("q"), 3));
    CHECK_FALSE(find_jrc_countermodel({}, J("s:p ~> (s+t):p"), 3));
}

TEST_CASE("falsifier: smallest countermodel first") {
    auto r = find_jrc_countermodel({}, J("p"), 3);
    REQUIRE(r.has_value());
    CHECK(r->first.size() == 1);
    auto k = find_kripke_countermodel({}, K("p"), VariantProfile::for_dialect(Dialect::LPCplus), 3);
    REQUIRE(k.has_value());
    CHECK(k->first.size() == 1);
}

TEST_CASE("falsifier: labelling search agrees with raw enumeration") {
    testgen::Gen g(31, Dialect::JRC);
    g.allow_box = false;
    g.var_names = {"x"};
    int found = 0, none = 0;
    for (int i = 0; i < 40; ++i) {
        Formula goal = i % 2 ? Formula::rel_cf(g.formula(1), g.formula(1)) : g.formula(2);
        // Keep the raw space small enough to enumerate.
        auto sig = signature_of({}, goal, Dialect::JRC, 2);
        if (sig.antecedents.size() + sig.terms.size() > 2) continue;
        bool raw = raw_jrc_countermodel({}, goal);
        bool lab = find_jrc_countermodel({}, goal, 2).has_value();
        CHECK_MESSAGE(raw == lab, print_formula(goal));
        (raw ? found : none)++;
    }
    CHECK(found > 0);
    CHECK(none > 0);
}

TEST_CASE("falsifier: kripke enumeration visits only condition-passing models") {
    auto sig = signature_of({}, K("x:p > p"), Dialect::LPCplus, 2);
    auto prof = VariantProfile::for_dialect(Dialect::LPCplus);
    int seen = 0;
    for_each_kripke_model(sig, prof, {}, [&](const KripkeModel& m) {
        ++seen;
        CHECK(check_conditions(m, prof, sig.universe).ok());
        // Factivity follows from reflexive justification relations.
        CHECK(subset(m.normal, truthset(m, K("x:p > p"))));
        return true;
    });
    CHECK(seen > 0);
}

TEST_CASE("falsifier: guard against oversized spaces") {
    auto big = K("(x:(p & q) > y:(q > p)) > ((x.y):(p & q & r) > (x+y):(q > r))");
    CHECK_THROWS_AS(find_kripke_countermodel({}, big, VariantProfile::for_dialect(Dialect::LPCplus), 3),
                    SearchTooLarge);
}

TEST_CASE("falsifier: dispatch by dialect") {
    auto a = find_countermodel({}, J("(p & ~p) ~> q"), Dialect::JRC, 3);
    REQUIRE(a.has_value());
    CHECK(std::holds_alternative<RoutleyModel>(a->model));
    CHECK_FALSE(find_countermodel({}, K("false > p"), Dialect::LPCplus, 2).has_value());
}
