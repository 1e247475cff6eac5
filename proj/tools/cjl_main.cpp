#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cjl/corpus.hpp"
#include "cjl/falsifier.hpp"
#include "cjl/hilbert.hpp"
#include "cjl/model_io.hpp"
#include "cjl/tableau.hpp"

using namespace cjl;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kFail = 1, kInput = 2, kBudget = 3 };

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string dialect;
    std::string model;
    std::string state;
    int budget_labels = TableauBudget{}.max_fresh_labels;
    long budget_steps = TableauBudget{}.max_steps;
    int bound = 3;
    std::string cs;
    std::string format = "text";
    std::string fixtures = CJL_FIXTURE_DIR;
    bool trace = false;
    std::vector<std::string> args;
};

bool json_out(const Options& o) { return o.format == "json"; }

void emit(const Options& o, const json& j, const std::string& text) {
    if (json_out(o)) std::cout << j.dump(2) << "\n";
    else std::cout << text << (text.empty() || text.back() == '\n' ? "" : "\n");
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Bare fixture names resolve against the shipped models.
std::string resolve_model(const Options& o) {
    if (o.model.empty()) throw InputError("--model is required");
    if (fs::exists(o.model)) return o.model;
    for (auto p : {fs::path(o.fixtures) / "models" / o.model, fs::path(o.fixtures) / "models" / (o.model + ".json")})
        if (fs::exists(p)) return p.string();
    throw InputError("cannot read " + o.model);
}

Dialect dialect_or(const Options& o, Dialect fallback) {
    if (o.dialect.empty()) return fallback;
    auto d = dialect_from_name(o.dialect);
    if (!d) throw InputError("unknown dialect '" + o.dialect + "'");
    return *d;
}

const std::string& one_arg(const Options& o, const char* what) {
    if (o.args.size() != 1) throw InputError(std::string("expected one ") + what);
    return o.args.front();
}

ConstantSpecification load_cs(const Options& o, Dialect d) {
    if (o.cs.empty()) return {};
    return cs_from_json(read_json_file(o.cs), d);
}

json model_json(const AnyModel& m) {
    return std::visit([](const auto& x) { return to_json(x); }, m);
}

std::string state_name(const AnyModel& m, int i) {
    return std::visit([i](const auto& x) { return x.states.at(i); }, m);
}

int cmd_parse(const Options& o) {
    Dialect d = dialect_or(o, Dialect::LPCplus);
    auto f = parse_formula(one_arg(o, "formula"), d);
    auto printed = print_formula(f);
    emit(o, {{"dialect", std::string(dialect_name(d))}, {"formula", printed}}, printed);
    return kOk;
}

AnyModel load_model(const Options& o) {
    AnyModel m = model_from_json(read_json_file(resolve_model(o)));
    if (!o.dialect.empty() && dialect_or(o, model_dialect(m)) != model_dialect(m))
        throw InputError("model is " + std::string(dialect_name(model_dialect(m))) + ", not " + o.dialect);
    return m;
}

int cmd_eval(const Options& o) {
    AnyModel any = load_model(o);
    Formula f = parse_formula(one_arg(o, "formula"), model_dialect(any));
    std::visit(
        [&](const auto& m) {
            constexpr bool jrc = std::is_same_v<std::decay_t<decltype(m)>, RoutleyModel>;
            auto at = [&](int w) {
                if constexpr (jrc) return eval_jrc(m, w, f);
                else return eval(m, w, f);
            };
            if (!o.state.empty()) {
                bool v = at(m.state_index(o.state));
                emit(o, {{"state", o.state}, {"value", v}}, v ? "true" : "false");
                return;
            }
            json j = json::object();
            std::string text;
            for (int w = 0; w < m.size(); ++w) {
                bool v = at(w);
                j[m.states[w]] = v;
                text += m.states[w] + ": " + (v ? "true" : "false") + "\n";
            }
            emit(o, j, text);
        },
        any);
    return kOk;
}

json report_json(const ConditionReport& r) {
    json out = json::array();
    for (const auto& c : r.results) {
        json e{{"id", c.id}, {"passed", c.passed}};
        if (c.witness) e["witness"] = c.witness->text;
        out.push_back(e);
    }
    return {{"ok", r.ok()}, {"conditions", out}};
}

int cmd_check_model(const Options& o) {
    AnyModel any = model_from_json(read_json_file(resolve_model(o)));
    Dialect md = model_dialect(any);
    std::vector<Formula> queries;
    for (const auto& q : o.args) queries.push_back(parse_formula(q, md));
    ConditionReport r;
    if (const auto* k = std::get_if<KripkeModel>(&any)) {
        // --dialect picks the profile, so one model can be tried against several.
        Dialect profile = dialect_or(o, md);
        if (profile == Dialect::JRC) throw InputError("JRC is not a Kripke profile");
        r = check_conditions(*k, VariantProfile::for_dialect(profile), kripke_universe(*k, queries), load_cs(o, md));
    } else {
        if (dialect_or(o, md) != Dialect::JRC) throw InputError("Routley models only have the JRC profile");
        const auto& m = std::get<RoutleyModel>(any);
        r = check_jrc_conditions(m, jrc_universe(m, queries));
    }
    emit(o, report_json(r), (r.ok() ? "ok\n" : "violated\n") + r.describe());
    return kOk;
}

int cmd_prove(const Options& o) {
    if (dialect_or(o, Dialect::JRC) != Dialect::JRC) throw InputError("the tableau decides JRC sequents only");
    Sequent s = parse_sequent(one_arg(o, "sequent"), Dialect::JRC);
    TableauBudget b{o.budget_labels, o.budget_steps};
    ProofResult r;
    try {
        r = prove(s.premises, s.goal, b);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    std::string verdict(verdict_name(r.verdict));
    json j{{"verdict", verdict}, {"steps", r.steps}};
    std::string text = verdict + "\n";
    if (r.model) {
        j["countermodel"] = to_json(*r.model);
        j["state"] = r.model->states.at(r.root_state);
        text += "countermodel at " + r.model->states.at(r.root_state) + ":\n" + to_json(*r.model).dump(2) + "\n";
    }
    if (r.verdict == ProofResult::Verdict::Exhausted) {
        j["budget"] = r.budget_report;
        text += r.budget_report + "\n";
    }
    if (o.trace) {
        j["trace"] = r.tree.render();
        text += r.tree.render();
    }
    emit(o, j, text);
    return r.verdict == ProofResult::Verdict::Exhausted ? kBudget : kOk;
}

int cmd_falsify(const Options& o) {
    Dialect d = dialect_or(o, Dialect::JRC);
    Sequent s = parse_sequent(one_arg(o, "sequent"), d);
    std::optional<Countermodel> cm;
    if (d == Dialect::JRC || o.cs.empty()) {
        cm = find_countermodel(s.premises, s.goal, d, o.bound);
    } else if (auto k = find_kripke_countermodel(s.premises, s.goal, VariantProfile::for_dialect(d), o.bound,
                                                 load_cs(o, d))) {
        cm = Countermodel{k->first, k->second};
    }
    std::string bound = std::to_string(o.bound);
    if (!cm) {
        emit(o, {{"countermodel", nullptr}, {"bound", o.bound}}, "no countermodel up to " + bound + " states");
        return kOk;
    }
    auto mj = model_json(cm->model);
    auto st = state_name(cm->model, cm->state);
    emit(o, {{"countermodel", mj}, {"state", st}, {"bound", o.bound}}, "countermodel at " + st + ":\n" + mj.dump(2));
    return kOk;
}

Derivation load_derivation(const Options& o, Dialect d) {
    return parse_derivation(read_text(one_arg(o, "derivation file")), d);
}

int cmd_check_proof(const Options& o) {
    if (o.dialect.empty()) throw InputError("--dialect is required");
    Dialect d = dialect_or(o, Dialect::LPCplus);
    auto r = check_derivation(load_derivation(o, d), d, load_cs(o, d));
    emit(o,
         {{"ok", r.ok},
          {"line", r.line},
          {"reason", r.reason},
          {"hypotheses", r.hypotheses},
          {"rule_on_hypotheses", r.rule_on_hypotheses}},
         r.describe());
    return kOk;
}

int cmd_internalize(const Options& o) {
    Dialect d = dialect_or(o, Dialect::LPCint);
    if (d != Dialect::LPCint) throw InputError("internalization is defined for LPCint");
    auto cs = o.cs.empty() ? cs_from_json(json{{"mode", "appropriate"}}, d) : load_cs(o, d);
    auto in = internalize(load_derivation(o, d), cs);
    auto term = print_term(in.term);
    emit(o, {{"term", term}, {"derivation", in.derivation.render()}},
         "term: " + term + "\n" + in.derivation.render());
    return kOk;
}

int cmd_corpus(const Options& o) {
    auto rep = run_corpus(o.fixtures);
    json arr = json::array();
    std::string text;
    for (const auto& c : rep.checks) {
        arr.push_back({{"case", c.case_name},
                       {"kind", c.kind},
                       {"query", c.query},
                       {"note", c.note},
                       {"passed", c.passed},
                       {"detail", c.detail}});
        text += std::string(c.passed ? "PASS" : "FAIL") + "  " + c.case_name + "  " + c.query + "  (" + c.note + ")\n";
    }
    text += std::to_string(rep.passed()) + "/" + std::to_string(rep.checks.size()) + " expectations pass\n";
    emit(o, {{"checks", arr}, {"passed", rep.passed()}, {"total", rep.checks.size()}}, text);
    return rep.ok() ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conditional justification logic toolkit"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--dialect", o.dialect, "LPCplus, LPCint, LPCprime, LPCKplus, J4Cplus, JCplus, L or JRC");
    app.add_option("--model", o.model, "model JSON file");
    app.add_option("--state", o.state, "state name");
    app.add_option("--budget-labels", o.budget_labels, "tableau label budget");
    app.add_option("--budget-steps", o.budget_steps, "tableau step budget");
    app.add_option("--bound", o.bound, "largest model size searched");
    app.add_option("--cs", o.cs, "constant specification JSON file");
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--fixtures", o.fixtures, "fixture directory");
    app.add_flag("--trace", o.trace, "print the tableau");

    struct Cmd {
        const char* name;
        const char* help;
        const char* arg;
        int (*run)(const Options&);
    };
    const Cmd cmds[] = {
        {"parse", "parse and print a formula", "formula", cmd_parse},
        {"eval", "evaluate a formula in a model", "formula", cmd_eval},
        {"check-model", "check a model's frame conditions on a query universe", "queries", cmd_check_model},
        {"prove", "run the JRC tableau on a sequent", "sequent", cmd_prove},
        {"falsify", "search for a finite countermodel", "sequent", cmd_falsify},
        {"check-proof", "check a Hilbert derivation", "derivation", cmd_check_proof},
        {"internalize", "internalize an LPCint derivation", "derivation", cmd_internalize},
        {"corpus", "run every shipped fixture expectation", nullptr, cmd_corpus},
    };
    int (*chosen)(const Options&) = nullptr;
    for (const auto& c : cmds) {
        auto* sub = app.add_subcommand(c.name, c.help);
        sub->fallthrough();
        if (c.arg) sub->add_option(c.arg, o.args, c.arg);
        sub->callback([&chosen, run = c.run] { chosen = run; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInput;
    }
    try {
        return chosen(o);
    } catch (const SearchTooLarge& e) {
        std::cerr << "search too large: " << e.what() << "\n";
        return kBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    }
}
