#include "cjl/corpus.hpp"

#include <fstream>
#include <sstream>

#include "cjl/falsifier.hpp"
#include "cjl/hilbert.hpp"
#include "cjl/model_io.hpp"
#include "cjl/tableau.hpp"

namespace cjl {

bool CorpusReport::ok() const { return passed() == static_cast<int>(checks.size()); }

int CorpusReport::passed() const {
    int n = 0;
    for (const auto& c : checks) n += c.passed;
    return n;
}

int CorpusReport::passed(const std::string& kind, int* total) const {
    int n = 0, t = 0;
    for (const auto& c : checks)
        if (c.kind == kind) {
            ++t;
            n += c.passed;
        }
    if (total) *total = t;
    return n;
}

namespace {

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <class M>
std::string state_names(const M& m, StateSet s) {
    std::string out;
    for (int i = 0; i < m.size(); ++i)
        if (has(s, i)) out += (out.empty() ? "" : ",") + m.states[i];
    return "{" + out + "}";
}

template <class M>
StateSet states_of(const M& m, const json& names) {
    StateSet s = 0;
    for (const auto& n : names) s |= bit(m.state_index(n.get<std::string>()));
    return s;
}

class Runner {
public:
    Runner(std::string dir, CorpusReport& rep) : dir_(std::move(dir)), rep_(rep) {}

    void run_case(const json& c) {
        name_ = c.at("name").get<std::string>();
        if (c.contains("model")) return model_case(c);
        Dialect d = dialect_of(c.at("dialect"));
        if (c.contains("sequent")) return sequent_case(c, d);
        if (c.contains("derivation")) return derivation_case(c, d);
        throw std::runtime_error(name_ + ": case has no model, sequent or derivation");
    }

private:
    static Dialect dialect_of(const json& j) {
        auto d = dialect_from_name(j.get<std::string>());
        if (!d) throw std::runtime_error("unknown dialect " + j.dump());
        return *d;
    }

    void record(const std::string& kind, const std::string& query, const json& e, bool ok, std::string detail) {
        rep_.checks.push_back({name_, kind, query, e.value("note", ""), ok, std::move(detail)});
    }

    static std::string yes(bool b) { return b ? "true" : "false"; }

    void model_case(const json& c) {
        AnyModel any = model_from_json(read_json_file(dir_ + "/" + c.at("model").get<std::string>()));
        Dialect d = model_dialect(any);
        std::vector<Formula> queries;
        for (const auto& q : c.value("queries", json::array())) queries.push_back(parse_formula(q.get<std::string>(), d));
        for (const auto& e : c.at("expect")) {
            if (e.contains("conditions")) {
                conditions(any, e, queries);
                continue;
            }
            std::visit([&](const auto& m) { truth(m, d, e); }, any);
        }
    }

    template <class M>
    void truth(const M& m, Dialect d, const json& e) {
        constexpr bool jrc = std::is_same_v<M, RoutleyModel>;
        auto holds = [&](int w, const Formula& f) {
            if constexpr (jrc) return eval_jrc(m, w, f);
            else return eval(m, w, f);
        };
        auto set_of = [&](const Formula& f) {
            if constexpr (jrc) return truthset_jrc(m, f);
            else return truthset(m, f);
        };
        if (e.contains("eval")) {
            auto q = e.at("eval").get<std::string>();
            auto st = e.at("state").get<std::string>();
            bool got = holds(m.state_index(st), parse_formula(q, d));
            bool want = e.at("value").get<bool>();
            record("truth", q + " at " + st, e, got == want, "got " + yes(got) + ", expected " + yes(want));
        } else if (e.contains("valid")) {
            auto q = e.at("valid").get<std::string>();
            Formula f = parse_formula(q, d);
            bool got = subset(m.normal, set_of(f));
            bool want = e.at("value").get<bool>();
            record("truth", "valid " + q, e, got == want, "got " + yes(got) + ", expected " + yes(want));
        } else if (e.contains("truthset")) {
            auto q = e.at("truthset").get<std::string>();
            StateSet got = set_of(parse_formula(q, d)), want = states_of(m, e.at("states"));
            record("truth", "truth set of " + q, e, got == want,
                   "got " + state_names(m, got) + ", expected " + state_names(m, want));
        } else {
            throw std::runtime_error(name_ + ": unknown expectation " + e.dump());
        }
    }

    void conditions(const AnyModel& any, const json& e, const std::vector<Formula>& queries) {
        ConditionReport r;
        std::string profile = e.at("conditions").get<std::string>();
        if (const auto* k = std::get_if<KripkeModel>(&any)) {
            r = check_conditions(*k, VariantProfile::for_dialect(dialect_of(e.at("conditions"))),
                                 kripke_universe(*k, queries));
        } else {
            const auto& m = std::get<RoutleyModel>(any);
            r = check_jrc_conditions(m, jrc_universe(m, queries));
        }
        std::string query = "conditions of " + profile;
        if (e.contains("fails")) {
            auto id = e.at("fails").get<std::string>();
            const auto* res = r.find(id);
            bool ok = res && !res->passed && res->witness.has_value();
            std::string detail = res && res->witness ? res->witness->text : "condition " + id + " not flagged";
            if (ok && e.contains("witness")) {
                FormulaSet want, got(res->witness->formulas.begin(), res->witness->formulas.end());
                Dialect d = std::holds_alternative<KripkeModel>(any) ? std::get<KripkeModel>(any).dialect : Dialect::JRC;
                for (const auto& w : e.at("witness")) want.insert(parse_formula(w.get<std::string>(), d));
                ok = got == want;
                if (!ok) detail += " (unexpected witness formulas)";
            }
            record("conditions", query + " flags " + id, e, ok, detail);
        } else {
            bool want = e.value("ok", true);
            record("conditions", query, e, r.ok() == want, r.describe());
        }
    }

    void sequent_case(const json& c, Dialect d) {
        auto text = c.at("sequent").get<std::string>();
        Sequent s = parse_sequent(text, d);
        for (const auto& e : c.at("expect")) {
            if (e.contains("verdict")) {
                TableauBudget b;
                auto r = prove(s.premises, s.goal, b);
                std::string got(verdict_name(r.verdict));
                bool ok = got == e.at("verdict").get<std::string>();
                std::string detail = got + " in " + std::to_string(r.steps) + " steps";
                if (e.contains("max_steps")) ok = ok && r.steps <= e.at("max_steps").get<int>();
                if (ok && e.value("verify", false)) {
                    ok = verify_result(r, s.premises, s.goal, e.value("bound", 2));
                    detail += ok ? ", verified" : ", verification failed";
                }
                record("verdict", text, e, ok, detail);
            } else if (e.contains("countermodel")) {
                int bound = e.value("bound", 3);
                bool got = find_countermodel(s.premises, s.goal, d, bound).has_value();
                bool want = e.at("countermodel").get<bool>();
                record("countermodel", text + " up to " + std::to_string(bound) + " states", e, got == want,
                       std::string(got ? "countermodel found" : "no countermodel"));
            } else {
                throw std::runtime_error(name_ + ": unknown expectation " + e.dump());
            }
        }
    }

    void derivation_case(const json& c, Dialect d) {
        auto path = c.at("derivation").get<std::string>();
        auto der = parse_derivation(read_text(dir_ + "/" + path), d);
        ConstantSpecification cs;
        if (c.contains("cs")) cs = cs_from_json(c.at("cs"), d);
        auto r = check_derivation(der, d, cs);
        for (const auto& e : c.at("expect")) {
            bool want = e.at("check").get<bool>();
            record("derivation", path, e, r.ok == want, r.describe());
        }
    }

    std::string dir_;
    CorpusReport& rep_;
    std::string name_;
};

}  // namespace

CorpusReport run_corpus(const std::string& fixture_dir) {
    CorpusReport rep;
    json index = read_json_file(fixture_dir + "/corpus.json");
    Runner run(fixture_dir, rep);
    for (const auto& c : index.at("cases")) run.run_case(c);
    return rep;
}

}  // namespace cjl
