#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "cjl/corpus.hpp"
#include "cjl/falsifier.hpp"
#include "cjl/hilbert.hpp"
#include "cjl/model_io.hpp"
#include "cjl/tableau.hpp"
#include "support/gen.hpp"
#include "support/sample_models.hpp"
#include "support/sequents.hpp"

using namespace cjl;

namespace {

const std::string kFixtures = CJL_FIXTURE_DIR;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Formula J(const char* s) { return parse_formula(s, Dialect::JRC); }

template <class... A>
std::string fmt(const char* f, A... a) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, a...);
    return buf;
}

// ------------------------------------------------------------------ 1, 2

Outcome fixture_exactness() {
    auto rep = run_corpus(kFixtures);
    int total = 0, ok = rep.passed("truth", &total);
    std::set<std::string> covered;
    std::string first_fail;
    for (const auto& c : rep.checks) {
        if (c.kind != "truth") continue;
        covered.insert(c.case_name);
        if (!c.passed && first_fail.empty()) first_fail = c.case_name + ": " + c.query + " " + c.detail;
    }
    const std::set<std::string> models{"gettier", "mcginn", "aumann", "hyper_equiv", "hyper_cf_equiv",
                                       "rcea", "counterpossible", "counterpossible_variant", "sheep"};
    bool all = std::includes(covered.begin(), covered.end(), models.begin(), models.end());
    return {ok == total && total > 0 && all,
            fmt("%d/%d truth expectations over %zu models", ok, total, covered.size()) +
                (first_fail.empty() ? "" : "; first failure " + first_fail)};
}

Outcome condition_checking() {
    auto rep = run_corpus(kFixtures);
    int total = 0, ok = rep.passed("conditions", &total);
    std::set<std::string> checked;
    for (const auto& c : rep.checks)
        if (c.kind == "conditions" && c.passed) checked.insert(c.case_name);

    // Witnesses, re-verified from the raw relations.
    auto gettier = kripke_from_json(read_json_file(kFixtures + "/models/gettier.json"));
    std::vector<Formula> gq{parse_formula("(p | q) & (c.x):(p | q)", Dialect::L),
                            parse_formula("~(p | q) > ~(c.x):(p | q)", Dialect::L)};
    auto g6 = check_conditions(gettier, VariantProfile::for_dialect(Dialect::LPCplus), kripke_universe(gettier, gq));
    bool g_ok = false;
    if (const auto* r = g6.find("6"); r && !r->passed && r->witness && r->witness->state && !r->witness->terms.empty()) {
        int w = *r->witness->state;
        g_ok = gettier.is_normal(w) && !has(KripkeEvaluator(gettier).term_succ(r->witness->terms[0], w), w);
    }

    auto rcea = kripke_from_json(read_json_file(kFixtures + "/models/rcea.json"));
    std::vector<Formula> rq{parse_formula("p > q", Dialect::LPCKplus), parse_formula("p & p > q", Dialect::LPCKplus)};
    auto r9 = check_conditions(rcea, VariantProfile::for_dialect(Dialect::LPCKplus), kripke_universe(rcea, rq));
    bool r_ok = false;
    if (const auto* r = r9.find("9"); r && !r->passed && r->witness && r->witness->state && r->witness->formulas.size() == 2) {
        KripkeEvaluator ev(rcea);
        const auto& a = r->witness->formulas[0];
        const auto& b = r->witness->formulas[1];
        int w = *r->witness->state;
        r_ok = (ev.truthset(a) & rcea.normal) == (ev.truthset(b) & rcea.normal) &&
               ev.formula_succ(a, w) != ev.formula_succ(b, w);
    }
    return {ok == total && total > 0 && checked.size() == 9 && g_ok && r_ok,
            fmt("%d/%d condition expectations, %zu models covered; empty-term-relation witness %s; "
                "antecedent-equivalence witness %s",
                ok, total, checked.size(), g_ok ? "verified" : "wrong", r_ok ? "verified" : "wrong")};
}

// ------------------------------------------------------------------ 3

Outcome tableau() {
    std::vector<std::string> bad;
    auto run = [](const char* s) {
        auto q = parse_sequent(s, Dialect::JRC);
        return std::make_pair(q, prove(q.premises, q.goal));
    };
    {
        auto [s, r] = run("s:p ~> (s+t):p");
        auto seq = r.tree.rule_sequence();
        std::vector<Rule> want{Rule::FCf0, Rule::FJust, Rule::EdgeSum, Rule::TJust};
        auto sorted = [](std::vector<Rule> v) {
            std::sort(v.begin(), v.end());
            return v;
        };
        bool ok = r.verdict == ProofResult::Verdict::Closed && r.steps <= 20 && !seq.empty() &&
                  seq.front() == Rule::FCf0 && sorted(seq) == sorted(want);
        if (!ok) bad.push_back("worked example");
    }
    for (const char* c : {"p ~> p", "p, p ~> q |- q"})
        if (run(c).second.verdict != ProofResult::Verdict::Closed) bad.push_back(c);
    for (const char* o : {"(p & ~p) ~> q", "q ~> (p | ~p)", "p ~> (q ~> p)", "~p ~> (p ~> q)"}) {
        auto [s, r] = run(o);
        bool ok = r.verdict == ProofResult::Verdict::Open && r.model;
        if (ok) {
            const auto& m = *r.model;
            std::vector<Formula> qs = s.premises;
            qs.push_back(s.goal);
            for (const auto& n : r.open_branch->nodes)
                if (n.kind != NodeKind::TermEdge && n.kind != NodeKind::Ternary) qs.push_back(n.formula);
            ok = check_jrc_conditions(m, jrc_universe(m, qs)).ok() && m.is_normal(r.root_state) &&
                 !eval_jrc(m, r.root_state, s.goal);
            for (const auto& p : s.premises) ok = ok && eval_jrc(m, r.root_state, p);
        }
        if (!ok) bad.push_back(o);
    }
    std::string d = "worked example, 2 closed and 4 open sequents";
    for (const auto& b : bad) d += "; failed " + b;
    return {bad.empty(), d};
}

// ------------------------------------------------------------------ 4, 5

struct SuiteRun {
    int cases = 0, contradictions = 0, inconclusive = 0, closed = 0, open = 0, exhausted = 0;
    int sharing_checked = 0, sharing_violations = 0;
    std::string first_contradiction, first_violation;
};

const SuiteRun& suite_run() {
    static SuiteRun s = [] {
        SuiteRun r;
        for (const auto& c : testgen::jrc_suite(2024, 240)) {
            ++r.cases;
            auto rep = cross_check(c.premises, c.goal, TableauBudget{6, 500}, 3, {});
            if (rep.contradiction && r.contradictions++ == 0) r.first_contradiction = print_formula(c.goal);
            r.inconclusive += rep.inconclusive;
            r.closed += rep.verdict == "CLOSED";
            r.open += rep.verdict == "OPEN";
            r.exhausted += rep.verdict == "EXHAUSTED";
            if (rep.verdict == "CLOSED" && c.premises.empty() && c.goal.is(FormulaKind::RelCf)) {
                ++r.sharing_checked;
                auto a = atoms(c.goal.left()), b = atoms(c.goal.right());
                bool share = std::any_of(a.begin(), a.end(), [&](const auto& x) { return b.count(x) > 0; });
                if (!share && r.sharing_violations++ == 0) r.first_violation = print_formula(c.goal);
            }
        }
        return r;
    }();
    return s;
}

Outcome oracle_agreement() {
    const auto& r = suite_run();
    return {r.cases >= 200 && r.contradictions == 0,
            fmt("%d sequents: %d closed, %d open, %d exhausted; %d contradictions, %d inconclusive", r.cases,
                r.closed, r.open, r.exhausted, r.contradictions, r.inconclusive) +
                (r.first_contradiction.empty() ? "" : "; first " + r.first_contradiction)};
}

Outcome variable_sharing() {
    const auto& r = suite_run();
    return {r.sharing_checked > 0 && r.sharing_violations == 0,
            fmt("%d closed premise-free conditionals, %d violations", r.sharing_checked, r.sharing_violations) +
                (r.first_violation.empty() ? "" : "; first " + r.first_violation)};
}

// ------------------------------------------------------------------ 6

Outcome counterpossibles() {
    auto f = parse_formula("false > p", Dialect::LPCplus);
    auto profile = VariantProfile::for_dialect(Dialect::LPCplus);
    bool none = !find_kripke_countermodel({}, f, profile, 3).has_value();
    long models = 0, refuting = 0;
    for_each_kripke_model(signature_of({}, f, Dialect::LPCplus, 3), profile, {}, [&](const KripkeModel& m) {
        ++models;
        if (!subset(m.normal, truthset(m, f))) ++refuting;
        return true;
    });
    auto jrc = find_jrc_countermodel({}, J("(p & ~p) ~> q"), 3);
    bool jrc_ok = false;
    if (jrc) {
        const auto& [m, w] = *jrc;
        jrc_ok = m.is_normal(w) && !eval_jrc(m, w, J("(p & ~p) ~> q")) &&
                 check_jrc_conditions(m, jrc_universe(m, {J("(p & ~p) ~> q")})).ok();
    }
    return {none && models > 0 && refuting == 0 && jrc_ok,
            fmt("false > p: %s countermodel, %ld condition-passing models, %ld refute it; "
                "(p & ~p) ~> q: %s",
                none ? "no" : "a", models, refuting, jrc_ok ? "verified JRC countermodel" : "no verified countermodel")};
}

// ------------------------------------------------------------------ 7

ConstantSpecification appropriate() {
    ConstantSpecification cs;
    cs.mode = ConstantSpecification::Mode::Appropriate;
    return cs;
}

struct Mutant {
    Derivation d;
    int line;
};

std::vector<Mutant> mutants(const Derivation& base, Dialect dialect) {
    std::vector<Mutant> out;
    auto schemes = schemes_for(dialect);
    auto formula_at = [&](int n) { return base.lines[n - 1].formula; };
    for (int k = 1; k <= base.size(); ++k) {
        const auto& l = base.lines[k - 1];
        auto with = [&](Justification j) {
            Mutant m{base, k};
            m.d.lines[k - 1].just = std::move(j);
            out.push_back(std::move(m));
        };
        auto& refs = l.just.refs;
        if (l.just.step == Step::MP && refs.size() == 2 && !refs[0].is_axiom() && !refs[1].is_axiom() &&
            formula_at(refs[0].line) != formula_at(refs[1].line)) {
            auto j = l.just;
            std::swap(j.refs[0], j.refs[1]);
            with(j);
        }
        for (std::size_t i = 0; i < refs.size(); ++i) {
            if (refs[i].is_axiom()) {
                for (const auto& s : schemes) {
                    if (s == refs[i].scheme || s == "1") continue;
                    auto j = l.just;
                    j.refs[i].scheme = s;
                    // An inline citation still names a valid instance when the major premise also fits s.
                    auto major = Formula::mat_imp(formula_at(refs[0].line), l.formula);
                    bool fits = false;
                    for (const auto& m : all_axiom_matches(major, dialect)) fits = fits || m.scheme == s;
                    if (!fits) {
                        with(j);
                        break;
                    }
                }
                continue;
            }
            for (int delta : {-1, 1}) {
                int n = refs[i].line + delta;
                if (n < 1 || n >= k || formula_at(n) == formula_at(refs[i].line)) continue;
                auto j = l.just;
                j.refs[i].line = n;
                with(j);
            }
        }
        if (l.just.step == Step::Axiom) {
            int taken = 0;
            for (const auto& s : schemes) {
                if (s == l.just.scheme || taken == 2) continue;
                bool fits = false;
                for (const auto& m : all_axiom_matches(l.formula, dialect)) fits = fits || m.scheme == s;
                if (fits) continue;
                auto j = l.just;
                j.scheme = s;
                with(j);
                ++taken;
            }
        }
    }
    return out;
}

Formula skeleton_tautology(std::mt19937_64& rng) {
    auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
    std::function<Formula(int)> gen = [&](int depth) -> Formula {
        if (depth == 0 || pick(4) == 0) return Formula::atom("A" + std::to_string(1 + pick(3)));
        switch (pick(3)) {
            case 0: return Formula::neg(gen(depth - 1));
            case 1: return Formula::conj(gen(depth - 1), gen(depth - 1));
            default: return Formula::mat_imp(gen(depth - 1), gen(depth - 1));
        }
    };
    std::function<bool(const Formula&, int)> holds = [&](const Formula& f, int v) -> bool {
        switch (f.kind()) {
            case FormulaKind::Atom: return (v >> (f.name()[1] - '1')) & 1;
            case FormulaKind::Neg: return !holds(f.inner(), v);
            case FormulaKind::And: return holds(f.left(), v) && holds(f.right(), v);
            default: return !holds(f.left(), v) || holds(f.right(), v);
        }
    };
    for (;;) {
        Formula f = gen(4);
        bool taut = true;
        for (int v = 0; v < 8 && taut; ++v) taut = holds(f, v);
        if (taut && !f.is(FormulaKind::Atom)) return f;
    }
}

Formula random_instance(const std::string& scheme, testgen::Gen& g, int fdepth) {
    Substitution s;
    Formula tpl = scheme == "1" ? skeleton_tautology(g.rng) : scheme_template(scheme);
    for (const auto& a : atoms(tpl)) s.formulas[a] = g.formula(fdepth);
    for (const auto& t : terms_of(tpl))
        if (t.kind() == TermKind::Variable) s.terms[t.name()] = g.term(1);
    return instantiate(tpl, s);
}

// Theorems built from axiom and CS lines by conditional introduction, detachment
// through a conditional twin, and plain detachment on material implications.
Derivation random_theorem(std::uint64_t seed) {
    testgen::Gen g(seed, Dialect::LPCint);
    auto pick = [&](int n) { return g.pick(n); };
    auto schemes = schemes_for(Dialect::LPCint);
    Derivation d;
    using F = Formula;
    auto line = [&](F f, Step s, std::vector<Citation> refs = {}, std::string scheme = {}) {
        Justification j;
        j.step = s;
        j.refs = std::move(refs);
        j.scheme = std::move(scheme);
        d.add(std::move(f), j);
        return d.size();
    };
    auto at = [&](int n) { return d.lines[n - 1].formula; };
    auto L = [](int n) { return Citation::to_line(n); };
    auto fresh = [&] {
        auto s = schemes[pick(static_cast<int>(schemes.size()))];
        auto f = random_instance(s, g, 1);
        if (pick(2)) return line(f, Step::Axiom, {}, s);
        return line(F::just(Term::constant(appropriate_constant(s)), f), Step::CS);
    };
    int cur = fresh();
    int steps = 3 + pick(4);
    for (int i = 0; i < steps; ++i) {
        switch (pick(5)) {
            case 0: cur = fresh(); break;
            case 1: cur = line(F::cf(g.formula(1), at(cur)), Step::RCN, {L(cur)}); break;
            case 2: {
                // cur > other from other, then detach cur.
                int other = 1 + pick(d.size());
                int c = line(F::cf(at(cur), at(other)), Step::RCN, {L(other)});
                int m = line(F::mat_imp(at(c), F::mat_imp(at(cur), at(other))), Step::Axiom, {}, "4");
                int e = line(F::mat_imp(at(cur), at(other)), Step::MP, {L(c), L(m)});
                cur = line(at(other), Step::MP, {L(cur), L(e)});
                break;
            }
            case 3: {
                if (!at(cur).is(FormulaKind::Just)) {
                    cur = fresh();
                    break;
                }
                F fact = F::cf(at(cur), at(cur).inner());
                int c = line(fact, Step::Axiom, {}, "8");
                int m = line(F::mat_imp(fact, F::mat_imp(at(cur), at(cur).inner())), Step::Axiom, {}, "4");
                int e = line(F::mat_imp(at(cur), at(cur).inner()), Step::MP, {L(c), L(m)});
                cur = line(at(cur).inner(), Step::MP, {L(cur), L(e)});
                break;
            }
            default: {
                F b = g.formula(1);
                int a = line(F::mat_imp(at(cur), F::mat_imp(b, at(cur))), Step::Axiom, {}, "1");
                cur = line(F::mat_imp(b, at(cur)), Step::MP, {L(cur), L(a)});
                break;
            }
        }
    }
    // The conclusion is the last line.
    if (cur != d.size()) line(F::cf(g.formula(1), at(cur)), Step::RCN, {L(cur)});
    return d;
}

Outcome hilbert_kernel() {
    std::vector<std::string> issues;
    auto load = [](const char* name, Dialect d) {
        return parse_derivation(read_text(kFixtures + "/derivations/" + name), d);
    };
    auto cc = load("cc.txt", Dialect::LPCplus), rck = load("rck.txt", Dialect::LPCplus);
    auto detach = load("detach.txt", Dialect::LPCint);
    bool verbatim = check_derivation(cc, Dialect::LPCplus).ok && check_derivation(rck, Dialect::LPCplus).ok;
    if (!verbatim) issues.push_back("fixture derivations rejected");

    int mut_total = 0, mut_ok = 0;
    struct Base {
        const Derivation* d;
        Dialect dialect;
        ConstantSpecification cs;
    };
    for (const auto& b : {Base{&cc, Dialect::LPCplus, {}}, Base{&rck, Dialect::LPCplus, {}},
                          Base{&detach, Dialect::LPCint, appropriate()}}) {
        for (const auto& m : mutants(*b.d, b.dialect)) {
            ++mut_total;
            auto r = check_derivation(m.d, b.dialect, b.cs);
            if (!r.ok && r.line == m.line) ++mut_ok;
        }
    }
    if (mut_total < 20 || mut_ok != mut_total) issues.push_back("mutants");

    int generated = 0, internalized = 0, rechecked = 0, invariant = 0, mp_used = 0;
    std::string first_error;
    for (std::uint64_t seed = 1; generated < 10; ++seed) {
        auto d = random_theorem(seed);
        if (!check_derivation(d, Dialect::LPCint, appropriate()).ok) {
            issues.push_back("generator produced a rejected derivation");
            break;
        }
        ++generated;
        int mps = expand(d).count(Step::MP);
        mp_used += mps > 0;
        try {
            auto in = internalize(d, appropriate());
            ++internalized;
            if (check_derivation(in.derivation, Dialect::LPCint, appropriate()).ok &&
                in.derivation.conclusion() == Formula::just(in.term, d.conclusion()))
                ++rechecked;
            invariant += mps == count_terms(in.term, TermKind::App);
        } catch (const InternalizationError& e) {
            if (first_error.empty()) first_error = e.what();
        }
    }
    if (rechecked != generated) issues.push_back("internalization");
    if (invariant != generated) issues.push_back("MP count differs from application count");
    std::string d = fmt("fixtures %s; %d/%d mutants rejected at the mutated line; %d theorems (%d with detachment): "
                        "%d internalized, %d re-checked, MP = application count in %d",
                        verbatim ? "accepted" : "REJECTED", mut_ok, mut_total, generated, mp_used, internalized,
                        rechecked, invariant);
    for (const auto& i : issues) d += "; " + i;
    if (!first_error.empty()) d += "; first error: " + first_error;
    return {issues.empty(), d};
}

// ------------------------------------------------------------------ 8

Outcome semantic_soundness() {
    const Dialect dialects[] = {Dialect::LPCplus, Dialect::LPCint, Dialect::LPCprime, Dialect::LPCKplus,
                                Dialect::J4Cplus, Dialect::JCplus, Dialect::L};
    long instances = 0, evaluations = 0, failures = 0, short_samples = 0;
    std::map<std::string, long> failing;
    std::string first;
    for (Dialect dl : dialects) {
        auto profile = VariantProfile::for_dialect(dl);
        testgen::Gen g(static_cast<std::uint64_t>(dl) * 7919 + 1, dl);
        testgen::ModelSampler sampler(static_cast<std::uint64_t>(dl) + 11, profile);
        for (const auto& s : schemes_for(dl)) {
            for (int i = 0; i < 100; ++i) {
                ++instances;
                Formula f = random_instance(s, g, 1);
                auto sig = signature_of({}, f, dl, 3);
                for (int k = 0; k < 20; ++k) {
                    auto m = sampler.sample(sig, 3, 400);
                    if (!m) {
                        ++short_samples;
                        break;
                    }
                    ++evaluations;
                    if (subset(m->normal, truthset(*m, f))) continue;
                    ++failures;
                    std::string key = std::string(dialect_name(dl)) + " " + s;
                    if (failing[key]++ == 0 && first.empty()) first = key + ": " + print_formula(f);
                }
            }
        }
    }
    std::string d = fmt("%ld instances, %ld model evaluations, %ld failures, %ld instances short of 20 models",
                        instances, evaluations, failures, short_samples);
    if (!failing.empty()) {
        d += "; failing";
        for (const auto& [k, n] : failing) d += " [" + k + ": " + std::to_string(n) + "]";
        d += "; first " + first;
    }
    return {failures == 0 && short_samples == 0, d};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        Outcome (*run)();
    };
    const Criterion all[] = {
        {1, "fixture exactness", 1, fixture_exactness},
        {2, "condition checking", 1, condition_checking},
        {3, "tableau", 5, tableau},
        {4, "oracle agreement", 600, oracle_agreement},
        {5, "variable sharing", 600, variable_sharing},
        {6, "counterpossibles split", 60, counterpossibles},
        {7, "hilbert kernel", 5, hilbert_kernel},
        {8, "semantic soundness", 120, semantic_soundness},
    };
    int failed = 0;
    for (const auto& c : all) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = o.pass && s <= c.limit_s;
        if (o.pass && !pass) o.detail += fmt("; over the %.0f s limit", c.limit_s);
        failed += !pass;
        std::printf("%s %d %s: %s (%.2f s)\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), s);
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
