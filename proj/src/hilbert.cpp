#include "cjl/hilbert.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace cjl {

// ---------------------------------------------------------------- schemes

namespace {

Formula mv(const char* n) { return Formula::atom(n); }
Term tv(const char* n) { return Term::variable(n); }

const std::map<std::string, Formula>& templates() {
    static const std::map<std::string, Formula> t = [] {
        using F = Formula;
        Formula phi = mv("phi"), psi = mv("psi"), chi = mv("chi");
        Term s = tv("s"), t = tv("t");
        std::map<std::string, Formula> m;
        m["2"] = F::mat_imp(F::cf(phi, F::mat_imp(psi, chi)), F::mat_imp(F::cf(phi, psi), F::cf(phi, chi)));
        m["3"] = F::cf(phi, phi);
        m["4"] = F::mat_imp(F::cf(phi, psi), F::mat_imp(phi, psi));
        m["5"] = F::cf(F::conj(F::just(s, F::cf(phi, psi)), F::just(t, phi)), F::just(Term::app(s, t), psi));
        m["4'"] = F::cf(F::just(s, F::cf(phi, psi)), F::cf(F::just(t, phi), F::just(Term::app(s, t), psi)));
        m["6"] = F::cf(F::just(s, phi), F::just(Term::sum(s, t), phi));
        m["7"] = F::cf(F::just(t, phi), F::just(Term::sum(s, t), phi));
        m["8"] = F::cf(F::just(t, phi), phi);
        m["9"] = F::cf(F::just(t, phi), F::just(Term::bang(t), F::just(t, phi)));
        m["10"] = F::mat_imp(F::just(t, psi), F::just(Term::pair(t, phi), F::cf(phi, psi)));
        m["BK"] = F::mat_imp(F::box(F::mat_imp(phi, psi)), F::mat_imp(F::box(phi), F::box(psi)));
        m["BT"] = F::mat_imp(F::box(phi), phi);
        m["B4"] = F::mat_imp(F::box(phi), F::box(F::box(phi)));
        m["B5"] = F::mat_imp(F::neg(F::box(phi)), F::box(F::neg(F::box(phi))));
        return m;
    }();
    return t;
}

bool match_term(const Term& pat, const Term& t, Substitution& s);

bool match(const Formula& pat, const Formula& f, Substitution& s) {
    if (pat.kind() == FormulaKind::Atom) {
        auto [it, fresh] = s.formulas.emplace(pat.name(), f);
        return fresh || it->second == f;
    }
    if (pat.kind() != f.kind()) return false;
    switch (pat.kind()) {
        case FormulaKind::Neg:
        case FormulaKind::Box: return match(pat.inner(), f.inner(), s);
        case FormulaKind::Just: return match_term(pat.term(), f.term(), s) && match(pat.inner(), f.inner(), s);
        default: return match(pat.left(), f.left(), s) && match(pat.right(), f.right(), s);
    }
}

bool match_term(const Term& pat, const Term& t, Substitution& s) {
    if (pat.kind() == TermKind::Variable) {
        auto [it, fresh] = s.terms.emplace(pat.name(), t);
        return fresh || it->second == t;
    }
    if (pat.kind() != t.kind()) return false;
    switch (pat.kind()) {
        case TermKind::Bang: return match_term(pat.left(), t.left(), s);
        case TermKind::Pair: return match_term(pat.left(), t.left(), s) && match(pat.formula(), t.formula(), s);
        default: return match_term(pat.left(), t.left(), s) && match_term(pat.right(), t.right(), s);
    }
}

bool boolean(const Formula& f) {
    return f.is(FormulaKind::Neg) || f.is(FormulaKind::And) || f.is(FormulaKind::MatImp);
}

}  // namespace

std::string Substitution::str() const {
    std::string out;
    auto sep = [&out] {
        if (!out.empty()) out += ", ";
    };
    for (const auto& [k, v] : formulas) {
        sep();
        out += k + " := " + print_formula(v);
    }
    for (const auto& [k, v] : terms) {
        sep();
        out += k + " := " + print_term(v);
    }
    return "{" + out + "}";
}

std::vector<std::string> schemes_for(Dialect d) {
    switch (d) {
        case Dialect::LPCplus:
        case Dialect::LPCKplus: return {"1", "2", "3", "4", "5", "6", "7", "8", "9"};
        case Dialect::LPCint: return {"1", "2", "3", "4", "5", "6", "7", "8", "9", "10"};
        case Dialect::LPCprime: return {"1", "2", "3", "4", "4'", "6", "7", "8", "9"};
        case Dialect::J4Cplus: return {"1", "2", "3", "4", "5", "6", "7", "9"};
        case Dialect::JCplus: return {"1", "2", "3", "4", "5", "6", "7"};
        case Dialect::L: return {"1", "2", "3", "4", "5", "6", "7", "9", "BK", "BT", "B4", "B5"};
        case Dialect::JRC: return {};
    }
    return {};
}

bool has_hilbert_system(Dialect d) { return d != Dialect::JRC; }

Formula scheme_template(const std::string& id) {
    auto it = templates().find(id);
    if (it == templates().end()) throw std::invalid_argument("no fixed template for scheme '" + id + "'");
    return it->second;
}

Term instantiate(const Term& p, const Substitution& s) {
    switch (p.kind()) {
        case TermKind::Variable: {
            auto it = s.terms.find(p.name());
            return it == s.terms.end() ? p : it->second;
        }
        case TermKind::Constant: return p;
        case TermKind::App: return Term::app(instantiate(p.left(), s), instantiate(p.right(), s));
        case TermKind::Sum: return Term::sum(instantiate(p.left(), s), instantiate(p.right(), s));
        case TermKind::Bang: return Term::bang(instantiate(p.left(), s));
        case TermKind::Pair: return Term::pair(instantiate(p.left(), s), instantiate(p.formula(), s));
    }
    return p;
}

Formula instantiate(const Formula& p, const Substitution& s) {
    switch (p.kind()) {
        case FormulaKind::Atom: {
            auto it = s.formulas.find(p.name());
            return it == s.formulas.end() ? p : it->second;
        }
        case FormulaKind::Neg: return Formula::neg(instantiate(p.inner(), s));
        case FormulaKind::Box: return Formula::box(instantiate(p.inner(), s));
        case FormulaKind::Just: return Formula::just(instantiate(p.term(), s), instantiate(p.inner(), s));
        case FormulaKind::And: return Formula::conj(instantiate(p.left(), s), instantiate(p.right(), s));
        case FormulaKind::MatImp: return Formula::mat_imp(instantiate(p.left(), s), instantiate(p.right(), s));
        case FormulaKind::Cf: return Formula::cf(instantiate(p.left(), s), instantiate(p.right(), s));
        case FormulaKind::RelImp: return Formula::rel_imp(instantiate(p.left(), s), instantiate(p.right(), s));
        case FormulaKind::RelCf: return Formula::rel_cf(instantiate(p.left(), s), instantiate(p.right(), s));
    }
    return p;
}

std::optional<AxiomMatch> propositional_skeleton(const Formula& f) {
    std::map<Formula, std::string> names;
    AxiomMatch m{"1", {}, {}};
    bool overflow = false;
    std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
        if (!boolean(g)) {
            auto it = names.find(g);
            if (it == names.end()) {
                if (static_cast<int>(names.size()) >= kMaxOpaque) overflow = true;
                it = names.emplace(g, "A" + std::to_string(names.size() + 1)).first;
                m.subst.formulas[it->second] = g;
            }
            return Formula::atom(it->second);
        }
        if (g.is(FormulaKind::Neg)) return Formula::neg(go(g.inner()));
        if (g.is(FormulaKind::And)) return Formula::conj(go(g.left()), go(g.right()));
        return Formula::mat_imp(go(g.left()), go(g.right()));
    };
    m.pattern = go(f);
    if (overflow) return std::nullopt;
    return m;
}

namespace {

bool eval_skeleton(const Formula& f, const std::map<std::string, int>& idx, unsigned row) {
    switch (f.kind()) {
        case FormulaKind::Atom: return (row >> idx.at(f.name())) & 1U;
        case FormulaKind::Neg: return !eval_skeleton(f.inner(), idx, row);
        case FormulaKind::And: return eval_skeleton(f.left(), idx, row) && eval_skeleton(f.right(), idx, row);
        default: return !eval_skeleton(f.left(), idx, row) || eval_skeleton(f.right(), idx, row);
    }
}

bool skeleton_valid(const AxiomMatch& m) {
    std::map<std::string, int> idx;
    for (const auto& [k, v] : m.subst.formulas) idx.emplace(k, static_cast<int>(idx.size()));
    unsigned rows = 1U << idx.size();
    for (unsigned r = 0; r < rows; ++r)
        if (!eval_skeleton(m.pattern, idx, r)) return false;
    return true;
}

std::optional<AxiomMatch> match_scheme(const Formula& f, const std::string& id) {
    if (id == "1") {
        auto m = propositional_skeleton(f);
        if (m && skeleton_valid(*m)) return m;
        return std::nullopt;
    }
    AxiomMatch m{id, scheme_template(id), {}};
    if (match(m.pattern, f, m.subst)) return m;
    return std::nullopt;
}

}  // namespace

bool is_tautology(const Formula& f) { return match_scheme(f, "1").has_value(); }

std::vector<AxiomMatch> all_axiom_matches(const Formula& f, Dialect d) {
    std::vector<AxiomMatch> out;
    for (const auto& id : schemes_for(d))
        if (auto m = match_scheme(f, id)) out.push_back(std::move(*m));
    return out;
}

std::optional<AxiomMatch> match_axiom(const Formula& f, Dialect d) {
    for (const auto& id : schemes_for(d))
        if (auto m = match_scheme(f, id)) return m;
    return std::nullopt;
}

std::string appropriate_constant(const std::string& scheme) {
    std::string out = "c_ax";
    for (char ch : scheme) out += ch == '\'' ? 'p' : ch;
    return out;
}

bool cs_admits(const ConstantSpecification& cs, const std::string& c, const Formula& f, Dialect d) {
    auto ms = all_axiom_matches(f, d);
    if (ms.empty()) return false;
    if (cs.contains(c, f)) return true;
    if (cs.mode != ConstantSpecification::Mode::Appropriate) return false;
    return std::any_of(ms.begin(), ms.end(), [&](const AxiomMatch& m) { return appropriate_constant(m.scheme) == c; });
}

// ------------------------------------------------------------ derivations

std::string Justification::str() const {
    auto cite = [](const Citation& c) { return c.is_axiom() ? "ax" + c.scheme : std::to_string(c.line); };
    std::string head;
    switch (step) {
        case Step::Axiom: return "ax" + scheme;
        case Step::CS: return "cs";
        case Step::Hyp: return "hyp";
        case Step::CC: return "cc";
        case Step::MP: head = "mp"; break;
        case Step::RCN: head = "rcn"; break;
        case Step::RCEA: head = "rcea"; break;
        case Step::Nec: head = "nec"; break;
        case Step::RCK: head = "rck"; break;
        case Step::PC: head = "pc"; break;
    }
    for (const auto& r : refs) head += " " + cite(r);
    return head;
}

Derivation& Derivation::add(Formula f, Justification j, std::string note) {
    lines.push_back({std::move(f), std::move(j), std::move(note)});
    return *this;
}

const Formula& Derivation::conclusion() const {
    if (lines.empty()) throw std::invalid_argument("empty derivation");
    return lines.back().formula;
}

std::string Derivation::render() const {
    std::ostringstream out;
    for (int i = 0; i < size(); ++i) {
        const auto& l = lines[i];
        out << i + 1 << ". " << print_formula(l.formula) << " ; " << l.just.str();
        if (!l.note.empty()) out << "  # " << l.note;
        out << "\n";
    }
    return out.str();
}

bool Derivation::primitive() const {
    for (const auto& l : lines) {
        if (l.just.step == Step::RCK || l.just.step == Step::CC || l.just.step == Step::PC) return false;
        for (const auto& r : l.just.refs)
            if (r.is_axiom()) return false;
    }
    return true;
}

int Derivation::count(Step s) const {
    return static_cast<int>(std::count_if(lines.begin(), lines.end(), [s](const auto& l) { return l.just.step == s; }));
}

DerivationSyntaxError::DerivationSyntaxError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Derivation parse_derivation(std::string_view text, Dialect d) {
    Derivation out;
    std::istringstream in{std::string(text)};
    std::string raw;
    int physical = 0;
    while (std::getline(in, raw)) {
        ++physical;
        std::string note;
        if (auto h = raw.find('#'); h != std::string::npos) {
            note = trim(std::string_view(raw).substr(h + 1));
            raw.resize(h);
        }
        std::string line = trim(raw);
        if (line.empty()) continue;
        int n = out.size() + 1;
        auto dot = line.find('.');
        if (dot == std::string::npos || !all_digits(line.substr(0, dot)))
            throw DerivationSyntaxError(n, "expected 'n. <formula> ; <justification>'");
        if (std::stoi(line.substr(0, dot)) != n)
            throw DerivationSyntaxError(n, "lines must be numbered consecutively from 1 (source line " +
                                               std::to_string(physical) + ")");
        auto semi = line.rfind(';');
        if (semi == std::string::npos || semi < dot) throw DerivationSyntaxError(n, "missing ';' before the justification");
        Formula f;
        try {
            f = parse_formula(line.substr(dot + 1, semi - dot - 1), d);
        } catch (const ParseError& e) {
            throw DerivationSyntaxError(n, e.what());
        }
        std::istringstream js(line.substr(semi + 1));
        std::vector<std::string> tok;
        for (std::string w; js >> w;) tok.push_back(w);
        if (tok.empty()) throw DerivationSyntaxError(n, "missing justification");
        Justification j;
        const std::string& tag = tok[0];
        std::vector<std::string> args(tok.begin() + 1, tok.end());
        auto cite = [&](const std::string& a, bool axiom_ok) {
            if (all_digits(a)) return Citation::to_line(std::stoi(a));
            if (axiom_ok && a.size() > 2 && a.rfind("ax", 0) == 0) return Citation::to_axiom(a.substr(2));
            throw DerivationSyntaxError(n, "bad citation '" + a + "'");
        };
        auto arity = [&](std::size_t k) {
            if (args.size() != k)
                throw DerivationSyntaxError(n, "'" + tag + "' takes " + std::to_string(k) + " citation(s)");
        };
        if (tag.size() > 2 && tag.rfind("ax", 0) == 0) {
            arity(0);
            j.step = Step::Axiom;
            j.scheme = tag.substr(2);
        } else if (tag == "cs" || tag == "hyp" || tag == "cc") {
            arity(0);
            j.step = tag == "cs" ? Step::CS : tag == "hyp" ? Step::Hyp : Step::CC;
        } else if (tag == "mp") {
            arity(2);
            j.step = Step::MP;
            j.refs = {cite(args[0], false), cite(args[1], true)};
        } else if (tag == "rcn" || tag == "rcea" || tag == "nec" || tag == "rck") {
            arity(1);
            j.step = tag == "rcn" ? Step::RCN : tag == "rcea" ? Step::RCEA : tag == "nec" ? Step::Nec : Step::RCK;
            j.refs = {cite(args[0], false)};
        } else if (tag == "pc") {
            j.step = Step::PC;
            for (const auto& a : args) j.refs.push_back(cite(a, false));
        } else {
            throw DerivationSyntaxError(n, "unknown justification '" + tag + "'");
        }
        out.add(std::move(f), std::move(j), std::move(note));
    }
    if (out.lines.empty()) throw DerivationSyntaxError(0, "no derivation lines");
    return out;
}

// ----------------------------------------------------------- macro shapes

namespace {

struct RckShape {
    Formula phi;
    std::vector<Formula> psis;
    Formula psi;
};

std::vector<Formula> conj_spine(const Formula& f) {
    std::vector<Formula> out;
    Formula g = f;
    while (g.is(FormulaKind::And)) {
        out.push_back(g.right());
        g = g.left();
    }
    out.push_back(g);
    std::reverse(out.begin(), out.end());
    return out;
}

// ((phi > a1) & .. & (phi > an)) => (phi > rhs)
std::optional<RckShape> rck_shape(const Formula& f) {
    if (f.is(FormulaKind::Cf)) return RckShape{f.left(), {}, f.right()};
    if (!f.is(FormulaKind::MatImp) || !f.right().is(FormulaKind::Cf)) return std::nullopt;
    RckShape s{f.right().left(), {}, f.right().right()};
    for (const auto& e : conj_spine(f.left())) {
        if (!e.is(FormulaKind::Cf) || e.left() != s.phi) return std::nullopt;
        s.psis.push_back(e.right());
    }
    return s;
}

Formula curried(const std::vector<Formula>& premises, const Formula& goal) {
    Formula out = goal;
    for (auto it = premises.rbegin(); it != premises.rend(); ++it) out = Formula::mat_imp(*it, out);
    return out;
}

Justification J(Step s, std::vector<Citation> refs = {}, std::string scheme = {}) {
    Justification j;
    j.step = s;
    j.refs = std::move(refs);
    j.scheme = std::move(scheme);
    return j;
}
Citation L(int n) { return Citation::to_line(n); }

// Appends sub, mapping its hypothesis lines (in order) onto existing lines of out.
int splice(Derivation& out, const Derivation& sub, const std::vector<int>& hyp_targets, const std::string& note) {
    std::vector<int> map(sub.size() + 1, 0);
    std::size_t h = 0;
    bool first = true;
    for (int i = 0; i < sub.size(); ++i) {
        const auto& l = sub.lines[i];
        if (l.just.step == Step::Hyp) {
            if (h >= hyp_targets.size()) throw std::invalid_argument("expansion needs more hypotheses than cited");
            map[i + 1] = hyp_targets[h++];
            continue;
        }
        Justification j = l.just;
        for (auto& r : j.refs)
            if (!r.is_axiom()) r.line = map[r.line];
        out.add(l.formula, std::move(j), first ? note : l.note);
        first = false;
        map[i + 1] = out.size();
    }
    return out.size();
}

}  // namespace

Formula premise_implication(const std::vector<Formula>& premises, const Formula& goal) {
    if (premises.empty()) return goal;
    return Formula::mat_imp(conj_all(premises), goal);
}

Derivation derive_cc(const Formula& phi, const Formula& a, const Formula& b) {
    using F = Formula;
    Formula ab = F::conj(a, b);
    Formula x = F::mat_imp(a, F::mat_imp(b, ab));
    Formula bx = F::mat_imp(b, ab);
    Derivation d;
    d.add(x, J(Step::Axiom, {}, "1"));
    d.add(F::cf(phi, x), J(Step::RCN, {L(1)}));
    d.add(F::mat_imp(F::cf(phi, a), F::cf(phi, bx)), J(Step::MP, {L(2), Citation::to_axiom("2")}));
    d.add(F::mat_imp(F::cf(phi, bx), F::mat_imp(F::cf(phi, b), F::cf(phi, ab))), J(Step::Axiom, {}, "2"));
    d.add(F::mat_imp(F::cf(phi, a), F::mat_imp(F::cf(phi, b), F::cf(phi, ab))), J(Step::PC, {L(3), L(4)}));
    d.add(F::mat_imp(F::conj(F::cf(phi, a), F::cf(phi, b)), F::cf(phi, ab)), J(Step::PC, {L(5)}));
    return d;
}

Derivation derive_cc_n(const Formula& phi, const std::vector<Formula>& psis) {
    if (psis.empty()) throw std::invalid_argument("conjunctive closure needs at least one conjunct");
    using F = Formula;
    Derivation d;
    if (psis.size() == 1) {
        d.add(F::mat_imp(F::cf(phi, psis[0]), F::cf(phi, psis[0])), J(Step::Axiom, {}, "1"));
        return d;
    }
    d = derive_cc(phi, psis[0], psis[1]);
    std::vector<Formula> ants{F::cf(phi, psis[0]), F::cf(phi, psis[1])};
    Formula c = F::conj(psis[0], psis[1]);
    for (std::size_t k = 2; k < psis.size(); ++k) {
        int prev = d.size();
        splice(d, derive_cc(phi, c, psis[k]), {}, "");
        int lem = d.size();
        ants.push_back(F::cf(phi, psis[k]));
        c = F::conj(c, psis[k]);
        d.add(F::mat_imp(conj_all(ants), F::cf(phi, c)), J(Step::PC, {L(prev), L(lem)}));
    }
    return d;
}

Derivation derive_rck(const Formula& phi, const std::vector<Formula>& psis, const Formula& psi) {
    using F = Formula;
    Derivation d;
    if (psis.empty()) {
        d.add(psi, J(Step::Hyp));
        d.add(F::cf(phi, psi), J(Step::RCN, {L(1)}));
        return d;
    }
    Formula c = conj_all(psis);
    std::vector<Formula> ants;
    for (const auto& p : psis) ants.push_back(F::cf(phi, p));
    Formula a = conj_all(ants);
    d.add(F::mat_imp(c, psi), J(Step::Hyp));
    d.add(F::cf(phi, F::mat_imp(c, psi)), J(Step::RCN, {L(1)}));
    d.add(F::mat_imp(F::cf(phi, c), F::cf(phi, psi)), J(Step::MP, {L(2), Citation::to_axiom("2")}));
    d.add(F::mat_imp(a, F::cf(phi, c)), J(Step::CC));
    d.add(F::mat_imp(a, F::cf(phi, psi)), J(Step::PC, {L(3), L(4)}));
    return d;
}

Derivation expand(const Derivation& d) {
    Derivation out;
    std::vector<int> map(d.size() + 1, 0);
    for (int k = 1; k <= d.size(); ++k) {
        const auto& l = d.lines[k - 1];
        const Formula& f = l.formula;
        auto line_of = [&](const Citation& c) {
            if (c.is_axiom() || c.line < 1 || c.line >= k) throw std::invalid_argument("line " + std::to_string(k) + ": bad citation");
            return map[c.line];
        };
        switch (l.just.step) {
            case Step::MP:
                if (l.just.refs.size() == 2 && l.just.refs[1].is_axiom()) {
                    int minor = line_of(l.just.refs[0]);
                    out.add(Formula::mat_imp(d.lines[l.just.refs[0].line - 1].formula, f),
                            J(Step::Axiom, {}, l.just.refs[1].scheme), l.note);
                    out.add(f, J(Step::MP, {L(minor), L(out.size())}));
                    break;
                }
                [[fallthrough]];
            case Step::Axiom:
            case Step::CS:
            case Step::RCN:
            case Step::RCEA:
            case Step::Nec:
            case Step::Hyp: {
                Justification j = l.just;
                for (auto& r : j.refs) r.line = line_of(r);
                out.add(f, std::move(j), l.note);
                break;
            }
            case Step::PC: {
                std::vector<Formula> prem;
                std::vector<int> at;
                for (const auto& r : l.just.refs) {
                    at.push_back(line_of(r));
                    prem.push_back(d.lines[r.line - 1].formula);
                }
                Formula cur = curried(prem, f);
                out.add(cur, J(Step::Axiom, {}, "1"), l.note);
                for (std::size_t i = 0; i < prem.size(); ++i) {
                    cur = cur.right();
                    out.add(cur, J(Step::MP, {L(at[i]), L(out.size())}));
                }
                break;
            }
            case Step::CC: {
                auto s = rck_shape(f);
                if (!s || s->psis.empty() || conj_all(s->psis) != s->psi)
                    throw std::invalid_argument("line " + std::to_string(k) + ": not a conjunctive closure instance");
                splice(out, expand(derive_cc_n(s->phi, s->psis)), {}, l.note);
                break;
            }
            case Step::RCK: {
                auto s = rck_shape(f);
                if (!s || l.just.refs.size() != 1) throw std::invalid_argument("line " + std::to_string(k) + ": malformed rck");
                splice(out, expand(derive_rck(s->phi, s->psis, s->psi)), {line_of(l.just.refs[0])}, l.note);
                break;
            }
        }
        map[k] = out.size();
    }
    return out;
}

// ---------------------------------------------------------------- checker

std::string CheckResult::describe() const {
    if (ok) {
        std::string s = "ok";
        if (!hypotheses.empty()) {
            s += "; hypotheses at lines";
            for (int h : hypotheses) s += " " + std::to_string(h);
            if (rule_on_hypotheses) s += " (derived-rule reading)";
        }
        return s;
    }
    return "line " + std::to_string(line) + ": " + reason;
}

namespace {

CheckResult fail(int line, std::string reason) {
    CheckResult r;
    r.ok = false;
    r.line = line;
    r.reason = std::move(reason);
    return r;
}

bool in_dialect(const std::string& id, Dialect d) {
    auto ids = schemes_for(d);
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::optional<std::string> check_expansion(const Derivation& sub, const Formula& f, Dialect d,
                                           const ConstantSpecification& cs) {
    Derivation prim = expand(sub);
    if (prim.conclusion() != f) return "expansion does not end in this formula";
    auto r = check_derivation(prim, d, cs);
    if (!r.ok) return "expansion fails at its line " + std::to_string(r.line) + ": " + r.reason;
    return std::nullopt;
}

}  // namespace

CheckResult check_derivation(const Derivation& d, Dialect dialect, const ConstantSpecification& cs) {
    if (!has_hilbert_system(dialect)) return fail(0, std::string(dialect_name(dialect)) + " has no Hilbert system here");
    if (d.lines.empty()) return fail(0, "empty derivation");
    CheckResult res;
    std::vector<char> dep(d.size() + 1, 0);
    bool hyp_phase = true;
    for (int k = 1; k <= d.size(); ++k) {
        const auto& l = d.lines[k - 1];
        const Formula& f = l.formula;
        const auto& refs = l.just.refs;
        if (auto v = dialect_violation(f, dialect)) return fail(k, "dialect: " + *v);
        for (const auto& r : refs)
            if (!r.is_axiom() && (r.line < 1 || r.line >= k))
                return fail(k, "bad citation: line " + std::to_string(r.line) + " is not an earlier line");
        auto at = [&](std::size_t i) -> const Formula& { return d.lines[refs[i].line - 1].formula; };
        bool on_dep = std::any_of(refs.begin(), refs.end(), [&](const Citation& r) { return !r.is_axiom() && dep[r.line]; });
        if (l.just.step == Step::Hyp) {
            if (!hyp_phase) return fail(k, "hypotheses must precede derived lines");
            res.hypotheses.push_back(k);
            dep[k] = 1;
            continue;
        }
        hyp_phase = false;
        dep[k] = on_dep;
        switch (l.just.step) {
            case Step::Hyp: break;
            case Step::Axiom:
                if (!in_dialect(l.just.scheme, dialect))
                    return fail(k, "scheme " + l.just.scheme + " is not an axiom scheme of " +
                                       std::string(dialect_name(dialect)));
                if (!match_scheme(f, l.just.scheme)) return fail(k, "not an instance of scheme " + l.just.scheme);
                break;
            case Step::CS:
                if (!f.is(FormulaKind::Just) || f.term().kind() != TermKind::Constant)
                    return fail(k, "constant specification lines have the form c:phi");
                if (!match_axiom(f.inner(), dialect)) return fail(k, "justified formula is not an axiom instance");
                if (!cs_admits(cs, f.term().name(), f.inner(), dialect))
                    return fail(k, print_formula(f) + " is not in the constant specification");
                break;
            case Step::MP: {
                if (refs.size() != 2 || refs[0].is_axiom()) return fail(k, "mp cites a line and a conditional");
                Formula major = Formula::mat_imp(at(0), f);
                if (refs[1].is_axiom()) {
                    if (!in_dialect(refs[1].scheme, dialect))
                        return fail(k, "scheme " + refs[1].scheme + " is not an axiom scheme of " +
                                           std::string(dialect_name(dialect)));
                    if (!match_scheme(major, refs[1].scheme))
                        return fail(k, print_formula(major) + " is not an instance of scheme " + refs[1].scheme);
                } else if (at(1) != major) {
                    return fail(k, "line " + std::to_string(refs[1].line) + " is not line " +
                                       std::to_string(refs[0].line) + " => this line");
                }
                break;
            }
            case Step::RCN:
                if (refs.size() != 1) return fail(k, "rcn cites one line");
                if (!f.is(FormulaKind::Cf) || f.right() != at(0))
                    return fail(k, "not of the form phi > (line " + std::to_string(refs[0].line) + ")");
                res.rule_on_hypotheses |= on_dep;
                break;
            case Step::Nec:
                if (dialect != Dialect::L) return fail(k, "necessitation belongs to the box dialect only");
                if (refs.size() != 1) return fail(k, "nec cites one line");
                if (f != Formula::box(at(0))) return fail(k, "not the box of line " + std::to_string(refs[0].line));
                res.rule_on_hypotheses |= on_dep;
                break;
            case Step::RCEA: {
                if (dialect != Dialect::LPCKplus) return fail(k, "antecedent equivalence belongs to LPCKplus only");
                if (refs.size() != 1) return fail(k, "rcea cites one line");
                const Formula& e = at(0);
                bool shape = e.is(FormulaKind::And) && e.left().is(FormulaKind::MatImp) &&
                             e == equiv(e.left().left(), e.left().right());
                if (!shape) return fail(k, "line " + std::to_string(refs[0].line) + " is not a material equivalence");
                Formula a = e.left().left(), b = e.left().right();
                bool ok = f.is(FormulaKind::And) && f.left().is(FormulaKind::MatImp) &&
                          f.left().right().is(FormulaKind::Cf) &&
                          f == equiv(Formula::cf(a, f.left().right().right()), Formula::cf(b, f.left().right().right()));
                if (!ok) return fail(k, "not (a > chi) == (b > chi) for the cited equivalence");
                res.rule_on_hypotheses |= on_dep;
                break;
            }
            case Step::PC: {
                std::vector<Formula> prem;
                for (std::size_t i = 0; i < refs.size(); ++i) prem.push_back(at(i));
                if (!is_tautology(curried(prem, f))) return fail(k, "not a propositional consequence of the cited lines");
                break;
            }
            case Step::CC: {
                auto s = rck_shape(f);
                if (!s || s->psis.empty() || !f.is(FormulaKind::MatImp) || conj_all(s->psis) != s->psi)
                    return fail(k, "not a conjunctive closure instance");
                if (auto e = check_expansion(derive_cc_n(s->phi, s->psis), f, dialect, cs)) return fail(k, *e);
                break;
            }
            case Step::RCK: {
                if (refs.size() != 1) return fail(k, "rck cites one line");
                auto s = rck_shape(f);
                if (!s) return fail(k, "not of the form (phi > a1) & .. & (phi > an) => (phi > b)");
                Formula hyp = s->psis.empty() ? s->psi : Formula::mat_imp(conj_all(s->psis), s->psi);
                if (at(0) != hyp) return fail(k, "line " + std::to_string(refs[0].line) + " is not " + print_formula(hyp));
                Derivation sub = derive_rck(s->phi, s->psis, s->psi);
                if (auto e = check_expansion(sub, f, dialect, cs)) return fail(k, *e);
                res.rule_on_hypotheses |= on_dep;
                break;
            }
        }
    }
    return res;
}

// --------------------------------------------------------- internalization

int count_terms(const Term& t, TermKind k) {
    int n = t.kind() == k ? 1 : 0;
    switch (t.kind()) {
        case TermKind::App:
        case TermKind::Sum: return n + count_terms(t.left(), k) + count_terms(t.right(), k);
        case TermKind::Bang:
        case TermKind::Pair: return n + count_terms(t.left(), k);
        default: return n;
    }
}

namespace {

class Internalizer {
public:
    Internalizer(const Derivation& d, const ConstantSpecification& cs) : d_(d), cs_(cs), memo_(d.size() + 1) {}

    Internalized run() {
        auto [t, line] = go(d_.size());
        return {t, std::move(out_)};
    }

private:
    struct Done {
        Term term;
        int line = 0;
    };

    int emit(Formula f, Justification j, std::string note = {}) {
        out_.add(std::move(f), std::move(j), std::move(note));
        return out_.size();
    }

    std::string constant_for(const Formula& chi, int k) {
        for (const auto& [c, g] : cs_.entries)
            if (g == chi && cs_admits(cs_, c, g, Dialect::LPCint)) return c;
        if (cs_.mode == ConstantSpecification::Mode::Appropriate)
            if (auto m = match_axiom(chi, Dialect::LPCint)) return appropriate_constant(m->scheme);
        throw InternalizationError("line " + std::to_string(k) + ": the constant specification has no constant for " +
                                   print_formula(chi));
    }

    Done go(int k) {
        if (memo_[k]) return *memo_[k];
        const auto& l = d_.lines[k - 1];
        const Formula& chi = l.formula;
        using F = Formula;
        Done r;
        switch (l.just.step) {
            case Step::Axiom: {
                Term c = Term::constant(constant_for(chi, k));
                r = {c, emit(F::just(c, chi), J(Step::CS))};
                break;
            }
            case Step::CS: {
                Term c = chi.term();
                Term bc = Term::bang(c);
                Formula up = F::just(bc, chi);
                int a = emit(chi, J(Step::CS));
                int b = emit(F::cf(chi, up), J(Step::Axiom, {}, "9"));
                int m = emit(F::mat_imp(F::cf(chi, up), F::mat_imp(chi, up)), J(Step::Axiom, {}, "4"));
                int e = emit(F::mat_imp(chi, up), J(Step::MP, {L(b), L(m)}));
                r = {bc, emit(up, J(Step::MP, {L(a), L(e)}))};
                break;
            }
            case Step::RCN: {
                Done s = go(l.just.refs[0].line);
                Term p = Term::pair(s.term, chi.left());
                Formula psi = chi.right();
                int a = emit(F::mat_imp(F::just(s.term, psi), F::just(p, chi)), J(Step::Axiom, {}, "10"));
                r = {p, emit(F::just(p, chi), J(Step::MP, {L(s.line), L(a)}))};
                break;
            }
            case Step::MP: {
                const Formula& phi = d_.lines[l.just.refs[0].line - 1].formula;
                Formula cond = F::cf(phi, chi);
                int twin = 0;
                for (int i = 1; i < k && !twin; ++i)
                    if (d_.lines[i - 1].formula == cond) twin = i;
                if (!twin)
                    throw InternalizationError(
                        "line " + std::to_string(k) + ": modus ponens on a material implication has no application "
                        "principle; internalizing it needs an earlier line " + print_formula(cond));
                Done rr = go(twin);
                Done s = go(l.just.refs[0].line);
                Term rs = Term::app(rr.term, s.term);
                Formula left = F::conj(F::just(rr.term, cond), F::just(s.term, phi));
                Formula goal = F::just(rs, chi);
                int a = emit(F::cf(left, goal), J(Step::Axiom, {}, "5"), "application through the conditional twin");
                int b = emit(F::mat_imp(F::cf(left, goal), F::mat_imp(left, goal)), J(Step::Axiom, {}, "4"));
                int c = emit(F::mat_imp(left, goal), J(Step::MP, {L(a), L(b)}));
                Formula pair = F::mat_imp(left.left(), F::mat_imp(left.right(), left));
                int t1 = emit(pair, J(Step::Axiom, {}, "1"));
                int t2 = emit(pair.right(), J(Step::MP, {L(rr.line), L(t1)}));
                int t3 = emit(left, J(Step::MP, {L(s.line), L(t2)}));
                r = {rs, emit(goal, J(Step::MP, {L(t3), L(c)}))};
                break;
            }
            default:
                throw InternalizationError("line " + std::to_string(k) + ": step '" + l.just.str() +
                                           "' cannot be internalized");
        }
        memo_[k] = r;
        return r;
    }

    const Derivation& d_;
    const ConstantSpecification& cs_;
    std::vector<std::optional<Done>> memo_;
    Derivation out_;
};

}  // namespace

Internalized internalize(const Derivation& d, const ConstantSpecification& cs) {
    Derivation prim = expand(d);
    auto chk = check_derivation(prim, Dialect::LPCint, cs);
    if (!chk.ok) throw InternalizationError("derivation does not check in LPCint: " + chk.describe());
    if (!chk.hypotheses.empty()) throw InternalizationError("derivation rests on hypotheses");
    return Internalizer(prim, cs).run();
}

}  // namespace cjl
