#include "cjl/model_io.hpp"

#include <fstream>

namespace cjl {

namespace {

Dialect doc_dialect(const json& doc) {
    if (!doc.contains("dialect")) throw ModelError("model document lacks \"dialect\"");
    auto name = doc.at("dialect").get<std::string>();
    auto d = dialect_from_name(name);
    if (!d) throw ModelError("unknown dialect '" + name + "'");
    return *d;
}

std::vector<std::string> read_states(const json& doc) {
    if (!doc.contains("states") || !doc.at("states").is_array()) throw ModelError("model lacks \"states\"");
    auto s = doc.at("states").get<std::vector<std::string>>();
    if (s.size() > static_cast<std::size_t>(kMaxStates)) throw ModelError("model exceeds 64 states");
    return s;
}

template <class M>
StateSet read_set(const M& m, const json& arr) {
    StateSet s = 0;
    for (const auto& x : arr) s |= bit(m.state_index(x.template get<std::string>()));
    return s;
}

template <class M>
Relation read_relation(const M& m, const json& pairs) {
    Relation r(m.size(), 0);
    for (const auto& p : pairs) {
        if (!p.is_array() || p.size() != 2) throw ModelError("relation entries must be [from, to] pairs");
        r[m.state_index(p[0].template get<std::string>())] |= bit(m.state_index(p[1].template get<std::string>()));
    }
    return r;
}

template <class M>
json write_relation(const M& m, const Relation& r) {
    json out = json::array();
    for (int w = 0; w < m.size(); ++w)
        for (int v = 0; v < m.size(); ++v)
            if (has(r[w], v)) out.push_back({m.states[w], m.states[v]});
    return out;
}

template <class M>
json write_set(const M& m, StateSet s) {
    json out = json::array();
    for (int w = 0; w < m.size(); ++w)
        if (has(s, w)) out.push_back(m.states[w]);
    return out;
}

template <class M>
void read_terms(M& m, const json& doc, Dialect d) {
    if (doc.contains("term_rels"))
        for (const auto& [k, v] : doc.at("term_rels").items())
            m.term_rels.rels[parse_term(k, d)] = read_relation(m, v);
    if (doc.contains("term_defaults")) {
        const auto& td = doc.at("term_defaults");
        if (td.contains("variable")) m.term_rels.variable_default = read_relation(m, td.at("variable"));
        if (td.contains("constant")) m.term_rels.constant_default = read_relation(m, td.at("constant"));
        if (td.contains("compound")) m.term_rels.compound_default = read_relation(m, td.at("compound"));
    }
}

template <class M>
void write_terms(const M& m, json& doc) {
    json tr = json::object();
    for (const auto& [t, r] : m.term_rels.rels) tr[print_term(t)] = write_relation(m, r);
    doc["term_rels"] = tr;
    if (m.term_rels.has_defaults()) {
        json td = json::object();
        if (m.term_rels.variable_default) td["variable"] = write_relation(m, *m.term_rels.variable_default);
        if (m.term_rels.constant_default) td["constant"] = write_relation(m, *m.term_rels.constant_default);
        if (m.term_rels.compound_default) td["compound"] = write_relation(m, *m.term_rels.compound_default);
        doc["term_defaults"] = td;
    }
}

RelDefault read_default(const json& doc, RelDefault fallback) {
    if (!doc.contains("formula_rel_default")) return fallback;
    auto s = doc.at("formula_rel_default").get<std::string>();
    auto d = rel_default_from_name(s);
    if (!d) throw ModelError("unknown formula_rel_default '" + s + "'");
    return *d;
}

}  // namespace

KripkeModel kripke_from_json(const json& doc) {
    try {
        KripkeModel m;
        m.dialect = doc_dialect(doc);
        if (m.dialect == Dialect::JRC) throw ModelError("JRC documents describe Routley models");
        m.states = read_states(doc);
        int n = m.size();
        m.normal = doc.contains("normal") ? read_set(m, doc.at("normal")) : m.all();
        m.valuation.assign(n, {});
        m.nonnormal_valuation.assign(n, {});
        read_terms(m, doc, m.dialect);
        if (doc.contains("formula_rels"))
            for (const auto& [k, v] : doc.at("formula_rels").items())
                m.formula_rels[parse_formula(k, m.dialect)] = read_relation(m, v);
        m.formula_rel_default = read_default(doc, RelDefault::TruthsetNormal);
        if (doc.contains("valuation"))
            for (const auto& [k, v] : doc.at("valuation").items())
                for (const auto& a : v) m.valuation[m.state_index(k)].insert(a.get<std::string>());
        if (doc.contains("nonnormal_valuation"))
            for (const auto& [k, v] : doc.at("nonnormal_valuation").items())
                for (const auto& a : v)
                    m.nonnormal_valuation[m.state_index(k)].insert(parse_formula(a.get<std::string>(), m.dialect));
        m.validate();
        return m;
    } catch (const json::exception& e) {
        throw ModelError(std::string("malformed model document: ") + e.what());
    }
}

json to_json(const KripkeModel& m) {
    json doc;
    doc["dialect"] = std::string(dialect_name(m.dialect));
    doc["states"] = m.states;
    doc["normal"] = write_set(m, m.normal);
    write_terms(m, doc);
    json fr = json::object();
    for (const auto& [f, r] : m.formula_rels) fr[print_formula(f)] = write_relation(m, r);
    doc["formula_rels"] = fr;
    doc["formula_rel_default"] = std::string(rel_default_name(m.formula_rel_default));
    json val = json::object(), nn = json::object();
    for (int w = 0; w < m.size(); ++w) {
        if (m.is_normal(w)) {
            val[m.states[w]] = m.valuation[w];
        } else {
            json arr = json::array();
            for (const auto& f : m.nonnormal_valuation[w]) arr.push_back(print_formula(f));
            nn[m.states[w]] = arr;
        }
    }
    doc["valuation"] = val;
    doc["nonnormal_valuation"] = nn;
    return doc;
}

RoutleyModel routley_from_json(const json& doc) {
    try {
        if (doc_dialect(doc) != Dialect::JRC) throw ModelError("Routley models need dialect JRC");
        auto states = read_states(doc);
        RoutleyModel m = RoutleyModel::with_states(states, 0);
        m.normal = doc.contains("normal") ? read_set(m, doc.at("normal")) : m.all();
        if (doc.contains("star"))
            for (const auto& [k, v] : doc.at("star").items()) m.star[m.state_index(k)] = m.state_index(v.get<std::string>());
        if (doc.contains("ternary"))
            for (const auto& t : doc.at("ternary")) {
                if (!t.is_array() || t.size() != 3) throw ModelError("ternary entries must be triples");
                m.add_ternary(m.state_index(t[0].get<std::string>()), m.state_index(t[1].get<std::string>()),
                              m.state_index(t[2].get<std::string>()));
            }
        read_terms(m, doc, Dialect::JRC);
        if (doc.contains("formula_rels"))
            for (const auto& [k, v] : doc.at("formula_rels").items())
                m.formula_rels[parse_formula(k, Dialect::JRC)] = read_relation(m, v);
        m.formula_rel_default = read_default(doc, RelDefault::TruthsetAll);
        if (doc.contains("valuation"))
            for (const auto& [k, v] : doc.at("valuation").items()) {
                int w = m.state_index(k);
                for (const auto& a : v) m.valuation[a.get<std::string>()] |= bit(w);
            }
        m.validate();
        return m;
    } catch (const json::exception& e) {
        throw ModelError(std::string("malformed model document: ") + e.what());
    }
}

json to_json(const RoutleyModel& m) {
    json doc;
    doc["dialect"] = "JRC";
    doc["states"] = m.states;
    doc["normal"] = write_set(m, m.normal);
    json star = json::object();
    for (int w = 0; w < m.size(); ++w)
        if (m.star[w] != w) star[m.states[w]] = m.states[m.star[w]];
    doc["star"] = star;
    json tern = json::array();
    for (int w = 0; w < m.size(); ++w)
        for (int v = 0; v < m.size(); ++v)
            for (int u = 0; u < m.size(); ++u)
                if (has(m.tern(w, v), u)) tern.push_back({m.states[w], m.states[v], m.states[u]});
    doc["ternary"] = tern;
    write_terms(m, doc);
    json fr = json::object();
    for (const auto& [f, r] : m.formula_rels) fr[print_formula(f)] = write_relation(m, r);
    doc["formula_rels"] = fr;
    doc["formula_rel_default"] = std::string(rel_default_name(m.formula_rel_default));
    json val = json::object();
    for (int w = 0; w < m.size(); ++w) {
        json arr = json::array();
        for (const auto& [a, s] : m.valuation)
            if (has(s, w)) arr.push_back(a);
        val[m.states[w]] = arr;
    }
    doc["valuation"] = val;
    return doc;
}

AnyModel model_from_json(const json& doc) {
    if (doc_dialect(doc) == Dialect::JRC) return routley_from_json(doc);
    return kripke_from_json(doc);
}

Dialect model_dialect(const AnyModel& m) {
    if (std::holds_alternative<RoutleyModel>(m)) return Dialect::JRC;
    return std::get<KripkeModel>(m).dialect;
}

ConstantSpecification cs_from_json(const json& doc, Dialect d) {
    ConstantSpecification cs;
    try {
        if (doc.is_object()) {
            if (doc.value("mode", "") != "appropriate") throw ModelError("unknown CS mode");
            cs.mode = ConstantSpecification::Mode::Appropriate;
            return cs;
        }
        for (const auto& e : doc) {
            auto c = e.at("constant").get<std::string>();
            if (!is_constant_name(c)) throw ModelError("'" + c + "' is not a proof constant");
            cs.entries.emplace_back(c, parse_formula(e.at("formula").get<std::string>(), d));
        }
    } catch (const json::exception& e) {
        throw ModelError(std::string("malformed CS document: ") + e.what());
    }
    return cs;
}

json to_json(const ConstantSpecification& cs) {
    if (cs.mode == ConstantSpecification::Mode::Appropriate && cs.entries.empty()) return {{"mode", "appropriate"}};
    json out = json::array();
    for (const auto& [c, f] : cs.entries) out.push_back({{"constant", c}, {"formula", print_formula(f)}});
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ModelError("invalid JSON in '" + path + "': " + e.what());
    }
}

}  // namespace cjl
